//! Bar-resolution cochains of finite groups with trivial one-dimensional
//! coefficients, over `Q` (normed `p`-adically) or `F_p`.

pub mod dims;
pub mod h1b;
pub mod homogeneous;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::PrimeField;
use crate::rational::Rational;
use crate::valuation::{is_prime, AbsValue};

pub use dims::{cohomology_dim, cohomology_dim_with_budget, CohomologySummary, DEFAULT_BUDGET};
pub use h1b::{h1b_dimension, AbelianInvariants};
pub use homogeneous::{contracting_homotopy, HomogeneousCochain};

/// Index of a tuple `(g_1, ..., g_k)` in `G^k`, `g_1` most significant.
pub(crate) fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

/// Inverse of [`tuple_index`].
pub(crate) fn tuple_at(order: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    out
}

pub(crate) fn checked_power(order: usize, k: usize) -> Result<usize> {
    u32::try_from(k)
        .ok()
        .and_then(|k| order.checked_pow(k))
        .ok_or_else(|| Error::Budget(format!("|G|^{k} overflows")))
}

/// An inhomogeneous `n`-cochain `G^n → K`. Degree 0 is a single scalar.
///
/// In characteristic `p` the values are stored as integers in `0..p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    field_char: u64,
    values: Vec<Rational>,
}

impl Cochain {
    /// Checks the length and reduces modulo `p` in positive characteristic.
    pub fn new(group: Arc<FiniteGroup>, degree: usize, field_char: u64, values: Vec<Rational>) -> Result<Self> {
        if field_char != 0 && !is_prime(field_char) {
            return Err(Error::Domain(format!("characteristic must be 0 or prime, got {field_char}")));
        }
        let expected = checked_power(group.order(), degree)?;
        if values.len() != expected {
            return Err(Error::Input(format!(
                "a degree-{degree} cochain on a group of order {} has {expected} values, got {}",
                group.order(),
                values.len()
            )));
        }
        let values = if field_char == 0 {
            values
        } else {
            let f = PrimeField::new(field_char);
            values
                .iter()
                .map(|v| {
                    f.reduce(v).map(Rational::integer).ok_or_else(|| {
                        Error::Domain(format!("{v} has no reduction mod {field_char}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        Ok(Cochain { group, degree, field_char, values })
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        degree: usize,
        field_char: u64,
        mut f: impl FnMut(&[usize]) -> Rational,
    ) -> Result<Self> {
        let n = group.order();
        let len = checked_power(n, degree)?;
        let values = (0..len).map(|i| f(&tuple_at(n, degree, i))).collect();
        Self::new(group, degree, field_char, values)
    }

    pub fn zero(group: Arc<FiniteGroup>, degree: usize, field_char: u64) -> Result<Self> {
        Self::from_fn(group, degree, field_char, |_| Rational::zero())
    }

    pub fn constant(group: Arc<FiniteGroup>, degree: usize, field_char: u64, c: Rational) -> Result<Self> {
        Self::from_fn(group, degree, field_char, |_| c.clone())
    }

    /// The cochain with value `value` at `tuple` and zero elsewhere.
    pub fn dirac(group: Arc<FiniteGroup>, field_char: u64, tuple: &[usize], value: Rational) -> Result<Self> {
        if tuple.iter().any(|&g| g >= group.order()) {
            return Err(Error::Input("tuple entry out of range".into()));
        }
        let t = tuple.to_vec();
        Self::from_fn(group, t.len(), field_char, move |x| if x == t.as_slice() { value.clone() } else { Rational::zero() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field_char(&self) -> u64 {
        self.field_char
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        assert_eq!(tuple.len(), self.degree, "tuple length must equal the degree");
        &self.values[tuple_index(self.group.order(), tuple)]
    }

    /// `(tuple, value)` pairs in index order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        let n = self.group.order();
        self.values.iter().enumerate().map(move |(i, v)| (tuple_at(n, self.degree, i), v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    fn compatible(&self, other: &Cochain) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Input("cochains live on different groups".into()));
        }
        if self.degree != other.degree || self.field_char != other.field_char {
            return Err(Error::Input("cochains differ in degree or characteristic".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Cochain::new(self.group.clone(), self.degree, self.field_char, values)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Cochain::new(self.group.clone(), self.degree, self.field_char, values)
    }

    pub fn scale(&self, c: &Rational) -> Result<Cochain> {
        let values = self.values.iter().map(|a| a * c).collect();
        Cochain::new(self.group.clone(), self.degree, self.field_char, values)
    }

    /// The inhomogeneous coboundary with trivial action:
    /// `δf(g_1..g_{n+1}) = f(g_2..g_{n+1}) + Σ_{i=1}^{n} (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n)`,
    /// and `δ v = 0` in degree 0.
    pub fn coboundary(&self) -> Result<Cochain> {
        let g = &self.group;
        let n = self.degree;
        if n == 0 {
            return Cochain::zero(g.clone(), 1, self.field_char);
        }
        Cochain::from_fn(g.clone(), n + 1, self.field_char, |t| {
            let mut face = vec![0usize; n];
            let mut acc = self.get(&t[1..]).clone();
            for i in 0..n {
                face[..i].copy_from_slice(&t[..i]);
                face[i] = g.mul(t[i], t[i + 1]);
                face[i + 1..].copy_from_slice(&t[i + 2..]);
                let term = self.values[tuple_index(g.order(), &face)].clone();
                if i % 2 == 0 {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            let last = self.get(&t[..n]);
            if n % 2 == 0 {
                acc -= last;
            } else {
                acc += last;
            }
            acc
        })
    }

    /// `max |f(x)|_p` over all tuples, exactly. Characteristic 0 only.
    pub fn sup_norm(&self, p: u64) -> Result<AbsValue> {
        if self.field_char != 0 {
            return Err(Error::Precondition("sup norms are taken on characteristic-0 cochains".into()));
        }
        let mut best = AbsValue::Zero;
        for v in &self.values {
            best = best.max(AbsValue::of(v, p)?);
        }
        Ok(best)
    }
}
