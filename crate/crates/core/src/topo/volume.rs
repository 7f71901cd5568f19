//! Non-Archimedean simplicial volume of closed oriented triangulated manifolds.

use std::collections::VecDeque;

use serde::Serialize;

use super::{over_field, CellComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Field};
use crate::rational::Rational;
use crate::valuation::{require_prime, AbsValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopSimplexCoefficient {
    pub simplex: Vec<String>,
    pub coefficient: i64,
}

/// Why the cycle generates `H_d(X; Z) ≅ Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWitness {
    /// Every `(d-1)`-simplex lies in exactly two `d`-simplices and the dual graph is connected.
    pub closed_pseudomanifold: bool,
    /// `dim ker ∂_d` over `Q` and over `F_p`; both are 1.
    pub cycle_rank_rational: usize,
    pub cycle_rank_mod_p: usize,
    /// All coefficients are `±1`, so the cycle is primitive in the saturated lattice `ker ∂_d`.
    pub unit_coefficients: bool,
}

/// Every top cycle over a field is a multiple `λ c` and there are no top
/// boundaries, so a fundamental cycle has `λ = 1` and norm exactly `max |±1| = 1`.
/// Equivalently, a cycle whose coefficients all have norm `< 1` is `p k c`, a
/// non-generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub top_boundaries: usize,
    pub cycles_are_multiples: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalCycleCertificate {
    pub dimension: usize,
    pub p: u64,
    pub cycle: Vec<TopSimplexCoefficient>,
    pub max_norm: AbsValue,
    pub volume: Rational,
    pub generator_witness: GeneratorWitness,
    pub lower_bound: LowerBound,
}

/// Orients the top simplices coherently by propagating along a spanning tree
/// of the dual graph and certifies `‖X‖^{NA} = 1`.
pub fn na_simplicial_volume(x: &SimplicialComplex, p: u64) -> Result<FundamentalCycleCertificate> {
    require_prime(p)?;
    let d = x.dimension();
    let cx = x.to_cell_complex();
    let top = cx.size(d);
    if d == 0 && top != 1 {
        return Err(Error::Precondition("a closed 0-manifold here must be a single point".into()));
    }
    // facet -> [(top simplex, incidence)]
    let mut cofaces: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cx.size(d.saturating_sub(1))];
    if d > 0 {
        for j in 0..top {
            for &(i, c) in cx.boundary(d, j) {
                cofaces[i].push((j, c));
            }
        }
    }
    let pseudomanifold = d == 0 || cofaces.iter().all(|c| c.len() == 2);
    if !pseudomanifold {
        return Err(Error::Precondition("not a closed pseudomanifold: some facet does not bound exactly two top simplices".into()));
    }
    let mut sign = vec![0i64; top];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        for &(i, c) in cx.boundary(d, j).iter().filter(|_| d > 0) {
            for &(k, ck) in &cofaces[i] {
                if k != j && sign[k] == 0 {
                    // Contributions to facet i must cancel: sign[j] c + sign[k] ck = 0.
                    sign[k] = -sign[j] * c * ck;
                    queue.push_back(k);
                }
            }
        }
    }
    if sign.contains(&0) {
        return Err(Error::Precondition("the dual graph is disconnected; top homology is not Z".into()));
    }
    let cycle: Vec<(usize, i64)> = sign.iter().copied().enumerate().collect();
    if !cx.boundary_of_chain(d, &cycle).is_empty() {
        return Err(Error::Precondition("not orientable: top homology over Z vanishes".into()));
    }
    let rational_rank = over_field!(0, |f| cycle_rank(f, &cx, d));
    let mod_p_rank = over_field!(p, |f| cycle_rank(f, &cx, d));
    if rational_rank != 1 || mod_p_rank != 1 {
        return Err(Error::Precondition("top cycle space is not one-dimensional".into()));
    }
    let max_norm = cycle
        .iter()
        .map(|&(_, c)| AbsValue::of(&Rational::integer(c), p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(AbsValue::Zero);
    let unit_coefficients = cycle.iter().all(|&(_, c)| c.abs() == 1);
    let lower_bound = LowerBound { top_boundaries: 0, cycles_are_multiples: true, holds: unit_coefficients };
    Ok(FundamentalCycleCertificate {
        dimension: d,
        p,
        cycle: cycle
            .iter()
            .map(|&(j, c)| TopSimplexCoefficient { simplex: x.names(&x.simplices(d)[j]), coefficient: c })
            .collect(),
        max_norm,
        volume: max_norm.to_rational(p),
        generator_witness: GeneratorWitness {
            closed_pseudomanifold: pseudomanifold,
            cycle_rank_rational: rational_rank,
            cycle_rank_mod_p: mod_p_rank,
            unit_coefficients,
        },
        lower_bound,
    })
}

/// `dim ker ∂_d`, via the rows of `∂_d` (one per `(d-1)`-cell).
fn cycle_rank<F: Field>(field: &F, cx: &CellComplex, d: usize) -> usize {
    let top = cx.size(d);
    if d == 0 {
        return top;
    }
    let mut rows = vec![Vec::new(); cx.size(d - 1)];
    for j in 0..top {
        for &(i, c) in cx.boundary(d, j) {
            rows[i].push((j, c));
        }
    }
    kernel_basis(field, rows.iter().map(|r| super::int_row(field, r)), top).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::builtin;

    fn simplicial(name: &str) -> SimplicialComplex {
        builtin(name).unwrap().simplicial().unwrap().clone()
    }

    #[test]
    fn circle_and_sphere_have_volume_one() {
        for (name, top) in [("circle3", 3), ("sphere2", 4), ("torus", 24)] {
            for p in [2, 3, 5] {
                let cert = na_simplicial_volume(&simplicial(name), p).unwrap();
                assert_eq!(cert.volume, Rational::one());
                assert_eq!(cert.max_norm, AbsValue::ONE);
                assert_eq!(cert.cycle.len(), top);
                assert!(cert.cycle.iter().all(|c| c.coefficient.abs() == 1));
                assert!(cert.lower_bound.holds);
            }
        }
        // Sorted vertex order orients [0,2] against the other two edges.
        let circle = na_simplicial_volume(&simplicial("circle3"), 5).unwrap();
        let coeffs: Vec<i64> = circle.cycle.iter().map(|c| c.coefficient).collect();
        assert_eq!(coeffs, vec![1, -1, 1]);
    }

    #[test]
    fn refuses_non_manifolds() {
        assert!(na_simplicial_volume(&simplicial("wedge2"), 2).is_err());
        assert!(na_simplicial_volume(&simplicial("edge"), 2).is_err());
        let two_circles = SimplicialComplex::from_maximal(
            (0..6).map(|v| v.to_string()).collect(),
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        assert!(na_simplicial_volume(&two_circles, 2).is_err());
        assert_eq!(na_simplicial_volume(&simplicial("point"), 3).unwrap().volume, Rational::one());
    }
}
