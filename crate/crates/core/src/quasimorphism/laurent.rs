//! The defect group of `F_p((X))`: principal parts `Σ_{d ≥ 1} c_d X^{-d}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::valuation::{require_prime, AbsValue};

/// Largest truncation `p^N` enumerated by [`laurent_section_check`].
pub const LAURENT_LIMIT: u64 = 1 << 12;

/// A principal part, `coefficients[d] = c_d` for the monomial `X^{-d}`, `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentTail {
    p: u64,
    coefficients: BTreeMap<u32, u64>,
}

impl LaurentTail {
    pub fn new(p: u64, coefficients: BTreeMap<u32, u64>) -> Result<Self> {
        require_prime(p)?;
        if coefficients.contains_key(&0) {
            return Err(Error::Input("principal parts have only negative degrees".into()));
        }
        if let Some(c) = coefficients.values().find(|&&c| c >= p) {
            return Err(Error::Input(format!("coefficient {c} is not reduced mod {p}")));
        }
        let coefficients = coefficients.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(LaurentTail { p, coefficients })
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, BTreeMap::new())
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, u64> {
        &self.coefficients
    }

    /// Coefficient-wise; there are no carries.
    pub fn add(&self, other: &LaurentTail) -> Result<LaurentTail> {
        if self.p != other.p {
            return Err(Error::Input("principal parts over different primes".into()));
        }
        let mut out = self.coefficients.clone();
        for (&d, &c) in &other.coefficients {
            *out.entry(d).or_insert(0) = (out.get(&d).copied().unwrap_or(0) + c) % self.p;
        }
        Self::new(self.p, out)
    }

    /// All `p^N` principal parts supported in degrees `1..=N`.
    pub fn truncation(p: u64, depth: u32) -> Result<Vec<LaurentTail>> {
        require_prime(p)?;
        let count = p
            .checked_pow(depth)
            .filter(|&c| c <= LAURENT_LIMIT)
            .ok_or_else(|| Error::Budget(format!("{p}^{depth} principal parts exceed {LAURENT_LIMIT}")))?;
        (0..count)
            .map(|mut code| {
                let mut coefficients = BTreeMap::new();
                for d in 1..=depth {
                    coefficients.insert(d, code % p);
                    code /= p;
                }
                Self::new(p, coefficients)
            })
            .collect()
    }
}

/// A Laurent polynomial over `F_p`, normed by `|X| = 1/p`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentScalar {
    coefficients: BTreeMap<i64, u64>,
}

impl LaurentScalar {
    pub fn norm(&self) -> AbsValue {
        match self.coefficients.keys().next() {
            None => AbsValue::Zero,
            Some(&d) => AbsValue::Pow(-d),
        }
    }

    fn combine(&self, other: &LaurentScalar, p: u64, sign: u64) -> LaurentScalar {
        let mut out = self.coefficients.clone();
        for (&d, &c) in &other.coefficients {
            let v = (out.get(&d).copied().unwrap_or(0) + sign * c) % p;
            if v == 0 {
                out.remove(&d);
            } else {
                out.insert(d, v);
            }
        }
        LaurentScalar { coefficients: out }
    }
}

/// The canonical section: a principal part read as a Laurent polynomial.
pub fn laurent_section(x: &LaurentTail) -> LaurentScalar {
    LaurentScalar { coefficients: x.coefficients.iter().map(|(&d, &c)| (-(d as i64), c)).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentVerdict {
    pub p: u64,
    pub depth: u32,
    pub pairs_checked: u64,
    pub defect: AbsValue,
    pub homomorphism: bool,
}

/// Exhaustive defect of the canonical section on the `p^N`-element truncation.
pub fn laurent_section_check(depth: u32, p: u64) -> Result<LaurentVerdict> {
    let elements = LaurentTail::truncation(p, depth)?;
    let mut defect = AbsValue::Zero;
    let mut pairs_checked = 0u64;
    for x in &elements {
        for y in &elements {
            let sum = laurent_section(&x.add(y)?);
            let parts = laurent_section(x).combine(&laurent_section(y), p, 1);
            defect = defect.max(sum.combine(&parts, p, p - 1).norm());
            pairs_checked += 1;
        }
    }
    Ok(LaurentVerdict { p, depth, pairs_checked, defect, homomorphism: defect.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = laurent_section_check(2, 2).unwrap();
        assert_eq!((v.pairs_checked, v.defect, v.homomorphism), (16, AbsValue::Zero, true));
        assert!(laurent_section_check(1, 3).unwrap().homomorphism);
        let degenerate = laurent_section_check(0, 5).unwrap();
        assert_eq!(degenerate.pairs_checked, 1);
        assert!(laurent_section_check(20, 2).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = LaurentTail::new(3, BTreeMap::from([(1, 2), (3, 1)])).unwrap();
        let b = LaurentTail::new(3, BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(a.add(&b).unwrap().coefficients(), &BTreeMap::from([(3, 1)]));
        assert_eq!(laurent_section(&a).norm(), AbsValue::Pow(3));
        assert!(LaurentTail::new(3, BTreeMap::from([(0, 1)])).is_err());
        assert!(LaurentTail::new(3, BTreeMap::from([(1, 3)])).is_err());
        assert_eq!(LaurentTail::truncation(2, 3).unwrap().len(), 8);
    }
}
