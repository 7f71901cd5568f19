//! Dimensions of the cohomology of the bar complex by exact elimination.

use serde::Serialize;

use super::{checked_power, tuple_at, tuple_index};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{extend_basis, kernel_basis, sparse_from_entries, Echelon, Field, PrimeField, Rationals, SparseVec};
use crate::rational::Rational;
use crate::valuation::is_prime;

/// Default cap on `|G|^{n+1}`, enough for `|G| ≤ 12` up to degree 3.
pub const DEFAULT_BUDGET: usize = 20_736;

/// Representatives are only extracted when `|G|^n` is at most this.
const REPRESENTATIVE_SPACE_LIMIT: usize = 512;
const MAX_REPRESENTATIVES: usize = 4;

/// One nonzero value of a representative cocycle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleValue {
    pub tuple: Vec<String>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologySummary {
    pub degree: usize,
    pub field_char: u64,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// Cocycles whose classes are independent in cohomology (possibly fewer than the dimension).
    pub sample_representatives: Vec<Vec<TupleValue>>,
}

/// Rows of the matrix of `δ^k : C^k → C^{k+1}`, one per `(k+1)`-tuple.
fn coboundary_rows<F: Field>(field: &F, group: &FiniteGroup, k: usize) -> Result<Vec<SparseVec<F::Elem>>> {
    let n = group.order();
    let rows = checked_power(n, k + 1)?;
    if k == 0 {
        return Ok(vec![Vec::new(); rows]);
    }
    let one = field.one();
    let minus = field.neg(&one);
    let sign = |odd: bool| if odd { minus.clone() } else { one.clone() };
    let mut face = vec![0usize; k];
    Ok((0..rows)
        .map(|r| {
            let t = tuple_at(n, k + 1, r);
            let mut entries = Vec::with_capacity(k + 2);
            entries.push((tuple_index(n, &t[1..]), one.clone()));
            for i in 0..k {
                face[..i].copy_from_slice(&t[..i]);
                face[i] = group.mul(t[i], t[i + 1]);
                face[i + 1..].copy_from_slice(&t[i + 2..]);
                entries.push((tuple_index(n, &face), sign(i % 2 == 0)));
            }
            entries.push((tuple_index(n, &t[..k]), sign(k % 2 == 0)));
            sparse_from_entries(field, entries)
        })
        .collect())
}

fn rank_of<F: Field>(field: &F, rows: Vec<SparseVec<F::Elem>>) -> usize {
    let mut ech = Echelon::new(field);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

fn summary<F: Field>(
    field: &F,
    group: &FiniteGroup,
    field_char: u64,
    degree: usize,
    to_rational: impl Fn(&F::Elem) -> Rational,
) -> Result<CohomologySummary> {
    let dim_cochains = checked_power(group.order(), degree)?;
    let rows_n = coboundary_rows(field, group, degree)?;
    let rank_n = rank_of(field, rows_n.clone());
    let rank_prev = if degree == 0 { 0 } else { rank_of(field, coboundary_rows(field, group, degree - 1)?) };
    let dim_cocycles = dim_cochains - rank_n;
    let dim_cohomology = dim_cocycles
        .checked_sub(rank_prev)
        .ok_or_else(|| Error::Precondition("coboundaries exceed cocycles; δ∘δ ≠ 0".into()))?;
    let mut sample_representatives = Vec::new();
    if dim_cohomology > 0 && dim_cochains <= REPRESENTATIVE_SPACE_LIMIT {
        let cocycles = kernel_basis(field, rows_n, dim_cochains);
        let mut images = Vec::new();
        if degree > 0 {
            let prev = coboundary_rows(field, group, degree - 1)?;
            let mut columns = vec![vec![field.zero(); dim_cochains]; checked_power(group.order(), degree - 1)?];
            for (r, row) in prev.iter().enumerate() {
                for (c, v) in row {
                    columns[*c][r] = v.clone();
                }
            }
            images = columns;
        }
        let n = group.order();
        for rep in extend_basis(field, &images, &cocycles).into_iter().take(MAX_REPRESENTATIVES) {
            let listing = rep
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| TupleValue {
                    tuple: tuple_at(n, degree, i).into_iter().map(|g| group.name(g).to_string()).collect(),
                    value: to_rational(v),
                })
                .collect();
            sample_representatives.push(listing);
        }
    }
    Ok(CohomologySummary {
        degree,
        field_char,
        dim_cochains,
        dim_cocycles,
        dim_coboundaries: rank_prev,
        dim_cohomology,
        sample_representatives,
    })
}

/// `dim H^n(G; K)` with trivial coefficients, `K = Q` or `F_p`, under [`DEFAULT_BUDGET`].
pub fn cohomology_dim(group: &FiniteGroup, field_char: u64, degree: usize) -> Result<CohomologySummary> {
    cohomology_dim_with_budget(group, field_char, degree, DEFAULT_BUDGET)
}

/// As [`cohomology_dim`], refusing when `|G|^{n+1}` exceeds `budget`.
pub fn cohomology_dim_with_budget(
    group: &FiniteGroup,
    field_char: u64,
    degree: usize,
    budget: usize,
) -> Result<CohomologySummary> {
    let size = checked_power(group.order(), degree + 1)?;
    if size > budget {
        return Err(Error::Budget(format!(
            "|G|^(n+1) = {size} exceeds the enumeration budget {budget}"
        )));
    }
    match field_char {
        0 => summary(&Rationals, group, 0, degree, |x: &Rational| x.clone()),
        p if is_prime(p) && p < (1 << 31) => {
            summary(&PrimeField::new(p), group, p, degree, |x: &u64| Rational::integer(*x))
        }
        other => Err(Error::Domain(format!("characteristic must be 0 or a prime, got {other}"))),
    }
}
