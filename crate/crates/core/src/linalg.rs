//! Exact linear algebra over `Q` and `F_p`.
//!
//! Rows are sparse (`(column, value)` pairs, strictly increasing columns, no
//! zero entries). Elimination is deterministic: a row's pivot is its first
//! nonzero column, rows are consumed in the order given.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::rational::Rational;

/// A field whose elements we can compute with exactly.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip().expect("pivot is nonzero")
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::integer(n)
    }
}

/// The prime field `F_p`, elements as residues in `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime (not checked here; callers validate).
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 31).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a rational with denominator prime to `p`; `None` otherwise.
    pub fn reduce(&self, x: &Rational) -> Option<u64> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let p = BigInt::from(self.p);
        let num = x.numer().mod_floor(&p).to_u64()?;
        let den = x.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(self.mul(&num, &self.inv(&den)))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "pivot is nonzero");
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = *a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

pub type SparseVec<E> = Vec<(usize, E)>;

/// Collapses `(column, value)` pairs in any order into a canonical sparse vector.
pub fn sparse_from_entries<F: Field>(field: &F, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseVec<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (c, v) in entries {
        let slot = acc.entry(c).or_insert_with(|| field.zero());
        *slot = field.add(slot, &v);
    }
    acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
}

pub fn sparse_from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(field: &F, sparse: &[(usize, F::Elem)], len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (c, v) in sparse {
        out[*c] = v.clone();
    }
    out
}

/// `a - factor * b` on sparse vectors.
fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], factor: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// An incrementally built row-echelon basis.
///
/// Each stored row is keyed by its leading column and normalised so that the
/// leading entry is one.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    pivots: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Echelon { field, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Residual of `row` after eliminating every pivot column.
    pub fn reduce(&self, mut row: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut i = 0;
        while i < row.len() {
            let (c, v) = row[i].clone();
            match self.pivots.get(&c) {
                Some(pivot) => row = axpy(self.field, &row, &v, pivot),
                None => i += 1,
            }
        }
        row
    }

    pub fn contains(&self, row: SparseVec<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span; returns whether it was independent.
    pub fn insert(&mut self, row: SparseVec<F::Elem>) -> bool {
        let residual = self.reduce(row);
        let Some((lead, lead_val)) = residual.first().cloned() else {
            return false;
        };
        let scale = self.field.inv(&lead_val);
        let normalised = residual
            .into_iter()
            .map(|(c, v)| (c, self.field.mul(&v, &scale)))
            .collect();
        self.pivots.insert(lead, normalised);
        true
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut ech = Echelon::new(field);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Reduced row-echelon form of a dense matrix with `ncols` columns.
/// Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// A basis of `{x : A x = 0}` where `A` has the given sparse rows and `ncols` columns.
pub fn kernel_basis<F: Field>(
    field: &F,
    rows: impl IntoIterator<Item = SparseVec<F::Elem>>,
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(field);
    for row in rows {
        ech.insert(row);
    }
    let dense: Vec<Vec<F::Elem>> = ech
        .pivots
        .values()
        .map(|r| dense_from_sparse(field, r, ncols))
        .collect();
    let (reduced, pivots) = rref(field, dense, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `Σ c_i vectors[i] = target`, if any.
pub fn solve_combination<F: Field>(field: &F, vectors: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let len = target.len();
    let k = vectors.len();
    // Augmented system: one row per coordinate, columns = vectors then target.
    let rows: Vec<Vec<F::Elem>> = (0..len)
        .map(|i| {
            let mut row: Vec<F::Elem> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(field, rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut coeffs = vec![field.zero(); k];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        coeffs[pc] = row[k].clone();
    }
    Some(coeffs)
}

/// Greedily picks vectors of `candidates` that extend `span(base)`, returning
/// the chosen candidates (a basis of a complement of `span(base)` inside
/// `span(base ∪ candidates)`).
pub fn extend_basis<F: Field>(field: &F, base: &[Vec<F::Elem>], candidates: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(field);
    for b in base {
        ech.insert(sparse_from_dense(field, b));
    }
    candidates
        .iter()
        .filter(|c| ech.insert(sparse_from_dense(field, c)))
        .cloned()
        .collect()
}

/// Matrix-vector product with `A` given by sparse rows.
pub fn apply<F: Field>(field: &F, rows: &[SparseVec<F::Elem>], x: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|row| {
            row.iter()
                .fold(field.zero(), |acc, (c, v)| field.add(&acc, &field.mul(v, &x[*c])))
        })
        .collect()
}
