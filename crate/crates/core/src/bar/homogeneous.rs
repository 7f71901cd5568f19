//! Homogeneous cochains `G^{n+1} → K`, the conversion to the inhomogeneous
//! bar model, and the averaging homotopy.

use std::sync::Arc;

use super::{checked_power, tuple_at, tuple_index, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::Rational;
use crate::valuation::{padic_valuation_u64, AbsValue};

/// A homogeneous `n`-cochain: a function of `n + 1` group elements.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousCochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    values: Vec<Rational>,
}

impl HomogeneousCochain {
    pub fn new(group: Arc<FiniteGroup>, degree: usize, values: Vec<Rational>) -> Result<Self> {
        let expected = checked_power(group.order(), degree + 1)?;
        if values.len() != expected {
            return Err(Error::Input(format!(
                "a homogeneous degree-{degree} cochain has {expected} values, got {}",
                values.len()
            )));
        }
        Ok(HomogeneousCochain { group, degree, values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, degree: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Result<Self> {
        let n = group.order();
        let len = checked_power(n, degree + 1)?;
        let values = (0..len).map(|i| f(&tuple_at(n, degree + 1, i))).collect();
        Self::new(group, degree, values)
    }

    /// Indicator of the diagonal orbit of `tuple`; these span the invariant cochains.
    pub fn orbit_indicator(group: Arc<FiniteGroup>, tuple: &[usize]) -> Result<Self> {
        let degree = tuple.len().checked_sub(1).ok_or_else(|| Error::Input("empty tuple".into()))?;
        let n = group.order();
        let mut values = vec![Rational::zero(); checked_power(n, degree + 1)?];
        let mut moved = tuple.to_vec();
        for g in group.elements() {
            for (m, &t) in moved.iter_mut().zip(tuple) {
                *m = group.mul(g, t);
            }
            values[tuple_index(n, &moved)] = Rational::one();
        }
        Self::new(group, degree, values)
    }

    /// One representative tuple per diagonal orbit (the one with first entry the identity).
    pub fn orbit_representatives(group: &FiniteGroup, degree: usize) -> Result<Vec<Vec<usize>>> {
        let n = group.order();
        let len = checked_power(n, degree)?;
        Ok((0..len)
            .map(|i| {
                let mut t = vec![group.identity()];
                t.extend(tuple_at(n, degree, i));
                t
            })
            .collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        &self.values[tuple_index(self.group.order(), tuple)]
    }

    /// Invariance under the diagonal left action `F(g g_0, ..., g g_n) = F(g_0, ..., g_n)`.
    pub fn is_invariant(&self) -> bool {
        let n = self.group.order();
        let mut moved = vec![0; self.degree + 1];
        (0..self.values.len()).all(|i| {
            let t = tuple_at(n, self.degree + 1, i);
            self.group.elements().all(|g| {
                for (m, &x) in moved.iter_mut().zip(&t) {
                    *m = self.group.mul(g, x);
                }
                self.values[tuple_index(n, &moved)] == self.values[i]
            })
        })
    }

    fn require_invariant(&self) -> Result<()> {
        if self.is_invariant() {
            Ok(())
        } else {
            Err(Error::Precondition("homogeneous cochain is not invariant under the diagonal action".into()))
        }
    }

    /// `δF(g_0..g_{n+1}) = Σ_i (-1)^i F(g_0, .., ĝ_i, .., g_{n+1})`.
    pub fn coboundary(&self) -> Result<HomogeneousCochain> {
        let n = self.degree;
        HomogeneousCochain::from_fn(self.group.clone(), n + 1, |t| {
            let mut acc = Rational::zero();
            let mut face = Vec::with_capacity(n + 1);
            for i in 0..t.len() {
                face.clear();
                face.extend(t[..i].iter().chain(&t[i + 1..]));
                let v = self.get(&face);
                if i % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            acc
        })
    }

    /// `f(g_1, ..., g_n) = F(1, g_1, g_1 g_2, ..., g_1 ⋯ g_n)`; rejects non-invariant input.
    pub fn to_inhomogeneous(&self) -> Result<Cochain> {
        self.require_invariant()?;
        let g = &self.group;
        Cochain::from_fn(g.clone(), self.degree, 0, |t| {
            let mut partial = g.identity();
            let mut args = vec![partial];
            for &x in t {
                partial = g.mul(partial, x);
                args.push(partial);
            }
            self.get(&args).clone()
        })
    }

    /// `F(g_0, ..., g_n) = f(g_0^{-1} g_1, ..., g_{n-1}^{-1} g_n)`, always invariant.
    pub fn from_inhomogeneous(f: &Cochain) -> Result<HomogeneousCochain> {
        if f.field_char() != 0 {
            return Err(Error::Precondition("homogeneous cochains are kept in characteristic 0".into()));
        }
        let g = f.group().clone();
        let gg = g.clone();
        HomogeneousCochain::from_fn(g, f.degree(), move |t| {
            let args: Vec<usize> = t.windows(2).map(|w| gg.mul(gg.inv(w[0]), w[1])).collect();
            f.get(&args).clone()
        })
    }

    pub fn sup_norm(&self, p: u64) -> Result<AbsValue> {
        let mut best = AbsValue::Zero;
        for v in &self.values {
            best = best.max(AbsValue::of(v, p)?);
        }
        Ok(best)
    }

    pub fn sub(&self, other: &HomogeneousCochain) -> Result<HomogeneousCochain> {
        if self.group != other.group || self.degree != other.degree {
            return Err(Error::Input("homogeneous cochains differ in group or degree".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        HomogeneousCochain::new(self.group.clone(), self.degree, values)
    }
}

/// Result of applying the averaging homotopy `j`.
#[derive(Clone, Debug, PartialEq)]
pub enum Contracted {
    /// `j` of a degree-0 cochain: the mean, an element of the augmentation term `K`.
    Scalar(Rational),
    Cochain(HomogeneousCochain),
}

impl Contracted {
    /// `δ` from the augmented complex: a scalar goes to the constant function.
    fn coboundary(&self, group: &Arc<FiniteGroup>) -> Result<HomogeneousCochain> {
        match self {
            Contracted::Scalar(c) => HomogeneousCochain::from_fn(group.clone(), 0, |_| c.clone()),
            Contracted::Cochain(h) => h.coboundary(),
        }
    }
}

fn average(f: &HomogeneousCochain) -> Result<Contracted> {
    let g = &f.group;
    let inv_n = Rational::frac(1, g.order() as i64);
    if f.degree == 0 {
        return Ok(Contracted::Scalar(&f.values.iter().sum::<Rational>() * &inv_n));
    }
    HomogeneousCochain::from_fn(g.clone(), f.degree - 1, |t| {
        let mut args = vec![0; t.len() + 1];
        args[1..].copy_from_slice(t);
        let mut acc = Rational::zero();
        for x in g.elements() {
            args[0] = x;
            acc += f.get(&args);
        }
        &acc * &inv_n
    })
    .map(Contracted::Cochain)
}

/// `(jF)(g_1, ..., g_n) = (1/|G|) Σ_g F(g, g_1, ..., g_n)` on invariant cochains.
///
/// Degree 0 lands in the augmentation term. The `p`-adic bound
/// `‖jF‖_∞ ≤ |G|_p^{-1} ‖F‖_∞` is checked on the way out.
pub fn contracting_homotopy(f: &HomogeneousCochain, p: u64) -> Result<Contracted> {
    f.require_invariant()?;
    let out = average(f)?;
    let bound = f.sup_norm(p)?.mul(AbsValue::Pow(padic_valuation_u64(f.group.order() as u64, p)? as i64));
    let got = match &out {
        Contracted::Scalar(c) => AbsValue::of(c, p)?,
        Contracted::Cochain(h) => h.sup_norm(p)?,
    };
    if got > bound {
        return Err(Error::Precondition(format!("homotopy norm bound violated: {got} > {bound}")));
    }
    Ok(out)
}

/// Checks `δj F + j δF = F` exactly for an invariant homogeneous cochain.
pub fn homotopy_identity_holds(f: &HomogeneousCochain, p: u64) -> Result<bool> {
    let dj = contracting_homotopy(f, p)?.coboundary(&f.group)?;
    let jd = match contracting_homotopy(&f.coboundary()?, p)? {
        Contracted::Cochain(h) => h,
        Contracted::Scalar(_) => unreachable!("coboundaries have positive degree"),
    };
    Ok(dj.values.iter().zip(&jd.values).zip(&f.values).all(|((a, b), c)| &(a + b) == c))
}
