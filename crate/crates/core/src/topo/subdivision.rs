//! Barycentric subdivision as an integral chain map and its dual on cochains.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{over_field, normalize_chain, CellComplex, IntChain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{apply, rank, sparse_from_dense, Field};

/// `sd X` together with the chain map `sd_n : C_n(X) → C_n(sd X)`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `chain_map[n][j]` is `sd` of the `j`-th `n`-simplex of `X`.
    pub chain_map: Vec<Vec<IntChain>>,
}

/// The vertices of `sd X` are the simplices of `X` (ordered by dimension, then
/// lexicographically) and its simplices are the strict flags. The chain map is
/// `sd(v) = b_v` and `sd(σ) = Σ_i (-1)^i b_σ * sd(∂_i σ)`.
pub fn barycentric_subdivision(x: &SimplicialComplex) -> Result<Subdivision> {
    let mut barycentre: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut names = Vec::new();
    for n in 0..=x.dimension() {
        for s in x.simplices(n) {
            barycentre.insert(s.clone(), names.len());
            names.push(format!("b[{}]", x.names(s).join(",")));
        }
    }
    // Maximal flags end at maximal simplices; build them by removing one vertex at a time.
    let mut flags = Vec::new();
    for top in x.maximal() {
        let mut stack = vec![(top.clone(), vec![barycentre[&top]])];
        while let Some((s, flag)) = stack.pop() {
            if s.len() == 1 {
                let mut f = flag;
                f.reverse();
                flags.push(f);
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let mut f = flag.clone();
                f.push(barycentre[&face]);
                stack.push((face, f));
            }
        }
    }
    let complex = SimplicialComplex::from_maximal(names, &flags)?;

    let mut chain_map: Vec<Vec<IntChain>> = Vec::new();
    for n in 0..=x.dimension() {
        let mut layer = Vec::new();
        for s in x.simplices(n) {
            let b = barycentre[s];
            if n == 0 {
                layer.push(vec![(complex.index_of(&[b]).expect("vertex"), 1)]);
                continue;
            }
            // b * τ for an increasing (n-1)-simplex τ of sd X: b has the largest
            // index, so moving it to the end costs n transpositions.
            let cone_sign = if n % 2 == 0 { 1 } else { -1 };
            let mut terms = Vec::new();
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let fi = x.index_of(&face).expect("faces are closed");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for &(t, c) in &chain_map[n - 1][fi] {
                    let mut cone = complex.simplices(n - 1)[t].clone();
                    cone.push(b);
                    let idx = complex.index_of(&cone).ok_or_else(|| Error::Input("cone is not a flag".into()))?;
                    terms.push((idx, sign * c * cone_sign));
                }
            }
            layer.push(normalize_chain(terms));
        }
        chain_map.push(layer);
    }
    Ok(Subdivision { complex, chain_map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionVerdict {
    pub degree: usize,
    pub field_char: u64,
    /// `∂ sd = sd ∂` in every degree.
    pub chain_map: bool,
    /// Largest `|coefficient|` of the dual matrix; integral entries give operator norm ≤ 1 for every prime.
    pub max_abs_entry: i64,
    pub norm_at_most_one: bool,
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
    /// Rank of `sd^* : H^n(sd X) → H^n(X)`.
    pub induced_rank: usize,
    pub isomorphism: bool,
}

impl SubdivisionVerdict {
    pub fn holds(&self) -> bool {
        self.chain_map && self.norm_at_most_one && self.isomorphism
    }
}

/// Builds `sd`, dualises it in degree `n`, bounds its norm on the Dirac basis
/// and checks it induces an isomorphism on `H^n`.
pub fn subdivision_norm_check(x: &SimplicialComplex, degree: usize, field_char: u64) -> Result<SubdivisionVerdict> {
    if degree > x.dimension() {
        return Err(Error::Input(format!("degree {degree} exceeds the dimension {}", x.dimension())));
    }
    let sd = barycentric_subdivision(x)?;
    let cx = x.to_cell_complex();
    let sx = sd.complex.to_cell_complex();
    let chain_map = (1..=x.dimension()).all(|n| {
        (0..cx.size(n)).all(|j| {
            let lhs = sx.boundary_of_chain(n, &sd.chain_map[n][j]);
            let pushed: IntChain = cx.boundary(n, j).iter().flat_map(|&(i, c)| sd.chain_map[n - 1][i].iter().map(move |&(t, d)| (t, c * d))).collect();
            lhs == normalize_chain(pushed)
        })
    });
    // Dual on the Dirac basis: (sd^* δ_τ)(σ) = coefficient of τ in sd σ.
    let max_abs_entry = sd.chain_map[degree].iter().flatten().map(|&(_, c)| c.abs()).max().unwrap_or(0);
    let dims_before = super::cellular_cohomology_dims(&cx, field_char)?;
    let dims_after = super::cellular_cohomology_dims(&sx, field_char)?;
    let induced_rank = over_field!(field_char, |f| induced_rank(f, &cx, &sx, &sd.chain_map[degree], degree));
    let target_dim = dims_before[degree];
    Ok(SubdivisionVerdict {
        degree,
        field_char,
        chain_map,
        max_abs_entry,
        norm_at_most_one: max_abs_entry <= 1,
        isomorphism: dims_before == dims_after && induced_rank == target_dim,
        dims_before,
        dims_after,
        induced_rank,
    })
}

fn induced_rank<F: Field>(field: &F, cx: &CellComplex, sx: &CellComplex, map: &[IntChain], n: usize) -> usize {
    let rows: Vec<_> = map.iter().map(|chain| super::int_row(field, chain)).collect();
    let source = sx.cohomology_data(field, n);
    let target = cx.cohomology_data(field, n);
    let base = rank(field, target.coboundaries.iter().map(|v| sparse_from_dense(field, v)));
    let images = source.classes.iter().map(|c| apply(field, &rows, c));
    let combined = rank(field, target.coboundaries.iter().cloned().chain(images).map(|v| sparse_from_dense(field, &v)));
    combined - base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::{builtin, cellular_cohomology_dims};

    fn simplicial(name: &str) -> SimplicialComplex {
        builtin(name).unwrap().simplicial().unwrap().clone()
    }

    #[test]
    fn single_edge() {
        let sd = barycentric_subdivision(&simplicial("edge")).unwrap();
        assert_eq!(sd.complex.simplices(1).len(), 2);
        let edge = &sd.chain_map[1][0];
        assert_eq!(edge.len(), 2);
        assert!(edge.iter().all(|&(_, c)| c.abs() == 1));
        let v = subdivision_norm_check(&simplicial("edge"), 1, 0).unwrap();
        assert!(v.holds());
        assert_eq!(v.max_abs_entry, 1);
    }

    #[test]
    fn circle_and_point() {
        let v = subdivision_norm_check(&simplicial("circle3"), 1, 0).unwrap();
        assert!(v.holds());
        assert_eq!((v.dims_before.clone(), v.dims_after.clone()), (vec![1, 1], vec![1, 1]));
        let p = subdivision_norm_check(&simplicial("point"), 0, 0).unwrap();
        assert!(p.holds());
        assert_eq!(p.induced_rank, 1);
        assert!(subdivision_norm_check(&simplicial("point"), 1, 0).is_err());
    }

    #[test]
    fn surfaces_keep_their_cohomology() {
        for name in ["sphere2", "torus"] {
            let x = simplicial(name);
            for n in 0..=2 {
                for ch in [0, 2] {
                    let v = subdivision_norm_check(&x, n, ch).unwrap();
                    assert!(v.holds(), "{name} degree {n} char {ch}: {v:?}");
                }
            }
        }
        let sd = barycentric_subdivision(&simplicial("sphere2")).unwrap();
        assert_eq!(sd.complex.simplices(2).len(), 24);
        assert_eq!(cellular_cohomology_dims(&sd.complex.to_cell_complex(), 0).unwrap(), vec![1, 0, 1]);
    }
}
