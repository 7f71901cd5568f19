//! The Mayer–Vietoris sequence of a cover by two subcomplexes, with explicit maps.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{over_field, CohomologyData, IntChain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{apply, rank, sparse_from_dense, Echelon, Field};

/// One term of `... → H^n(X) → H^n(A) ⊕ H^n(B) → H^n(A∩B) → H^{n+1}(X) → ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceNode {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// `rank_in + rank_out = dim` and the adjacent composite vanishes.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MayerVietorisVerdict {
    pub field_char: u64,
    pub nodes: Vec<SequenceNode>,
    pub exact: bool,
    pub alternating_sum: i64,
    pub dims_x: Vec<usize>,
    pub dims_intersection: Vec<usize>,
}

/// For each dimension and each simplex of `sub`, its index in `sup` and the
/// sign relating the two vertex orders.
fn inclusion(sub: &SimplicialComplex, sup: &SimplicialComplex) -> Result<Vec<IntChain>> {
    let position: BTreeMap<&str, usize> = sup.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    (0..=sub.dimension())
        .map(|n| {
            sub.simplices(n)
                .iter()
                .map(|s| {
                    let mut idx = sub
                        .names(s)
                        .iter()
                        .map(|v| position.get(v.as_str()).copied())
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::Input(format!("vertex of {:?} missing from the ambient complex", sub.names(s))))?;
                    let inversions = (0..idx.len())
                        .flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j)))
                        .filter(|&(i, j)| idx[i] > idx[j])
                        .count();
                    idx.sort_unstable();
                    let j = sup
                        .index_of(&idx)
                        .ok_or_else(|| Error::Input(format!("{:?} is not a simplex of the ambient complex", sub.names(s))))?;
                    Ok((j, if inversions % 2 == 0 { 1 } else { -1 }))
                })
                .collect()
        })
        .collect()
}

/// Checks `A, B ⊂ X` with `A ∪ B = X`, forms `A ∩ B`, and verifies exactness
/// of the long sequence at every term.
pub fn mayer_vietoris_check(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    field_char: u64,
) -> Result<MayerVietorisVerdict> {
    let ax = inclusion(a, x)?;
    let bx = inclusion(b, x)?;
    let mut hits = vec![vec![0u8; 0]; x.dimension() + 1];
    for (n, layer) in hits.iter_mut().enumerate() {
        *layer = vec![0; x.simplices(n).len()];
        for (&(j, _), bit) in ax.get(n).into_iter().flatten().map(|e| (e, 1u8)).chain(bx.get(n).into_iter().flatten().map(|e| (e, 2u8))) {
            layer[j] |= bit;
        }
        if let Some(missing) = layer.iter().position(|&h| h == 0) {
            return Err(Error::Input(format!("A ∪ B misses the simplex {:?}", x.names(&x.simplices(n)[missing]))));
        }
    }
    let shared: Vec<Vec<usize>> = (0..=x.dimension())
        .flat_map(|n| x.simplices(n).iter().zip(&hits[n]).filter(|(_, &h)| h == 3).map(|(s, _)| s.clone()))
        .collect();
    let c = x.induced(&shared)?;
    let ca = inclusion(&c, a)?;
    let cb = inclusion(&c, b)?;
    let top = x.dimension();
    let cells = [x.to_cell_complex(), a.to_cell_complex(), b.to_cell_complex(), c.to_cell_complex()];
    let verdict = over_field!(field_char, |f| sequence(f, field_char, &cells, [&ax, &bx, &ca, &cb], top));
    Ok(verdict)
}

fn restrict<F: Field>(field: &F, map: &[IntChain], n: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    map.get(n).map_or(Vec::new(), |layer| layer.iter().map(|&(j, s)| field.mul(&field.from_i64(s), &v[j])).collect())
}

fn extend<F: Field>(field: &F, map: &[IntChain], n: usize, len: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    if let Some(layer) = map.get(n) {
        for (i, &(j, s)) in layer.iter().enumerate() {
            out[j] = field.mul(&field.from_i64(s), &v[i]);
        }
    }
    out
}

type LinearMap<'a, E> = Box<dyn Fn(&[E]) -> Vec<E> + 'a>;

fn sequence<F: Field>(
    field: &F,
    field_char: u64,
    cells: &[super::CellComplex; 4],
    [ax, bx, ca, cb]: [&Vec<IntChain>; 4],
    top: usize,
) -> MayerVietorisVerdict {
    let [cx, ca_cells, cb_cells, cc] = cells;
    let pad = |v: &[F::Elem], before: usize, after: usize| -> Vec<F::Elem> {
        let mut out = vec![field.zero(); before];
        out.extend_from_slice(v);
        out.extend(std::iter::repeat(field.zero()).take(after));
        out
    };
    let mut spaces: Vec<(String, CohomologyData<F::Elem>)> = Vec::new();
    let mut maps: Vec<LinearMap<'_, F::Elem>> = Vec::new();
    for n in 0..=top {
        let (sa, sb) = (ca_cells.size(n), cb_cells.size(n));
        let da = ca_cells.cohomology_data(field, n);
        let db = cb_cells.cohomology_data(field, n);
        let sum = CohomologyData {
            coboundaries: da.coboundaries.iter().map(|v| pad(v, 0, sb)).chain(db.coboundaries.iter().map(|v| pad(v, sa, 0))).collect(),
            classes: da.classes.iter().map(|v| pad(v, 0, sb)).chain(db.classes.iter().map(|v| pad(v, sa, 0))).collect(),
        };
        spaces.push((format!("H^{n}(X)"), cx.cohomology_data(field, n)));
        spaces.push((format!("H^{n}(A)+H^{n}(B)"), sum));
        spaces.push((format!("H^{n}(A∩B)"), cc.cohomology_data(field, n)));

        maps.push(Box::new(move |v: &[F::Elem]| {
            let mut out = restrict(field, ax, n, v);
            out.extend(restrict(field, bx, n, v));
            out
        }));
        maps.push(Box::new(move |v: &[F::Elem]| {
            let (u, w) = v.split_at(sa);
            let ru = restrict(field, ca, n, u);
            let rw = restrict(field, cb, n, w);
            ru.iter().zip(&rw).map(|(p, q)| field.sub(p, q)).collect()
        }));
        let delta_a = ca_cells.coboundary_rows(field, n);
        let (a_len, x_next) = (sa, cx.size(n + 1));
        maps.push(Box::new(move |v: &[F::Elem]| {
            let lifted = extend(field, ca, n, a_len, v);
            let d = apply(field, &delta_a, &lifted);
            extend(field, ax, n + 1, x_next, &d)
        }));
    }
    // The last connecting map lands in H^{top+1}(X) = 0.
    maps.pop();

    let span_rank = |vectors: &mut dyn Iterator<Item = Vec<F::Elem>>| rank(field, vectors.map(|v| sparse_from_dense(field, &v)));
    let mut ranks = Vec::with_capacity(maps.len());
    for (k, map) in maps.iter().enumerate() {
        let target = &spaces[k + 1].1;
        let base = span_rank(&mut target.coboundaries.iter().cloned());
        let all = span_rank(&mut target.coboundaries.iter().cloned().chain(spaces[k].1.classes.iter().map(|c| map(c))));
        ranks.push(all - base);
    }
    let composite_vanishes = |k: usize| -> bool {
        // maps[k] then maps[k+1], landing in spaces[k+2].
        let Some(next) = maps.get(k + 1) else { return true };
        let mut ech = Echelon::new(field);
        for v in &spaces[k + 2].1.coboundaries {
            ech.insert(sparse_from_dense(field, v));
        }
        spaces[k].1.classes.iter().all(|c| ech.contains(sparse_from_dense(field, &next(&maps[k](c)))))
    };
    let mut nodes = Vec::new();
    for (k, (label, data)) in spaces.iter().enumerate() {
        let rank_in = if k == 0 { 0 } else { ranks[k - 1] };
        let rank_out = ranks.get(k).copied().unwrap_or(0);
        let dim = data.classes.len();
        let exact = rank_in + rank_out == dim && (k == 0 || composite_vanishes(k - 1));
        nodes.push(SequenceNode { label: label.clone(), dim, rank_in, rank_out, exact });
    }
    let alternating_sum = nodes.iter().enumerate().map(|(k, n)| if k % 2 == 0 { n.dim as i64 } else { -(n.dim as i64) }).sum();
    MayerVietorisVerdict {
        field_char,
        exact: nodes.iter().all(|n| n.exact),
        alternating_sum,
        dims_x: nodes.iter().step_by(3).map(|n| n.dim).collect(),
        dims_intersection: nodes.iter().skip(2).step_by(3).map(|n| n.dim).collect(),
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::{builtin, torus_grid, torus_square};

    fn simplicial(name: &str) -> SimplicialComplex {
        builtin(name).unwrap().simplicial().unwrap().clone()
    }

    fn names(x: &SimplicialComplex, simplices: &[Vec<usize>]) -> Vec<Vec<String>> {
        simplices.iter().map(|s| x.names(s)).collect()
    }

    #[test]
    fn wedge_of_circles() {
        let x = simplicial("wedge2");
        let a = x.subcomplex(&names(&x, &[vec![0, 1], vec![1, 2], vec![0, 2]])).unwrap();
        let b = x.subcomplex(&names(&x, &[vec![0, 3], vec![3, 4], vec![0, 4]])).unwrap();
        for ch in [0, 2, 3] {
            let v = mayer_vietoris_check(&x, &a, &b, ch).unwrap();
            assert!(v.exact, "{v:?}");
            assert_eq!(v.dims_x, vec![1, 2]);
            assert_eq!(v.dims_intersection, vec![1, 0]);
            assert_eq!(v.alternating_sum, 0);
        }
    }

    #[test]
    fn degenerate_cover() {
        let x = simplicial("sphere2");
        let v = mayer_vietoris_check(&x, &x, &x, 0).unwrap();
        assert!(v.exact);
        assert_eq!(v.dims_x, vec![1, 0, 1]);
    }

    #[test]
    fn torus_from_two_cylinders() {
        let x = torus_grid(4, 3).unwrap();
        let cylinder = |cols: [usize; 3]| {
            let simplices: Vec<Vec<usize>> =
                cols.iter().flat_map(|&i| (0..3).flat_map(move |j| torus_square(4, 3, i, j))).collect();
            x.subcomplex(&names(&x, &simplices)).unwrap()
        };
        let (a, b) = (cylinder([0, 1, 2]), cylinder([2, 3, 0]));
        for ch in [0, 2] {
            let v = mayer_vietoris_check(&x, &a, &b, ch).unwrap();
            assert!(v.exact, "{v:?}");
            assert_eq!(v.dims_x, vec![1, 2, 1]);
            assert_eq!(v.dims_intersection, vec![2, 2, 0]);
        }
    }

    #[test]
    fn rejects_non_covers() {
        let x = simplicial("wedge2");
        let a = x.subcomplex(&names(&x, &[vec![0, 1], vec![1, 2], vec![0, 2]])).unwrap();
        assert!(mayer_vietoris_check(&x, &a, &a, 0).is_err());
        let stranger = simplicial("sphere2");
        assert!(mayer_vietoris_check(&x, &stranger, &a, 0).is_err());
    }
}
