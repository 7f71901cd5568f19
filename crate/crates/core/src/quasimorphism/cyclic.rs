//! Defects of quasimorphisms on `Z/p^N` without enumerating all pairs.
//!
//! Write `f = F / D` with integer `F`. Every value `δF(x, y)` is an integer
//! combination of `F(0)` and the `δF(j, 1)`, and conversely
//! (`F(k) - kF(1) = -Σ_{j<k} δF(j, 1)` telescopes), so the two sets generate
//! the same ideal of `Z_(p)` and the maximal norm is attained among the
//! `p^N + 1` values `δF(0, 0)` and `δF(j, 1)`.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::table::Defect;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valuation::{padic_valuation, require_prime, AbsValue};

/// Largest `p^N` scanned by [`cyclic_defect`].
pub const CYCLIC_LIMIT: u64 = 1 << 26;

/// A quasimorphism on `Z/p^N` evaluated on demand.
pub trait CyclicQm {
    fn prime(&self) -> u64;
    fn depth(&self) -> u32;
    /// A common denominator `D` of all values.
    fn denominator(&self) -> BigInt;
    /// `D · f(k)` for `0 ≤ k < p^N`; must be an integer.
    fn scaled_value(&self, k: u64) -> BigInt;

    fn value(&self, k: u64) -> Rational {
        Rational::new(self.scaled_value(k), self.denominator()).expect("denominator is nonzero")
    }
}

/// `ι` on `Z/p^N`: `k ↦ k / p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardSection {
    pub p: u64,
    pub depth: u32,
}

impl CyclicQm for StandardSection {
    fn prime(&self) -> u64 {
        self.p
    }

    fn depth(&self) -> u32 {
        self.depth
    }

    fn denominator(&self) -> BigInt {
        BigInt::from(self.p).pow(self.depth)
    }

    fn scaled_value(&self, k: u64) -> BigInt {
        BigInt::from(k)
    }
}

/// `D(f)` in `O(p^N)` evaluations.
pub fn cyclic_defect(f: &impl CyclicQm) -> Result<Defect> {
    let p = f.prime();
    require_prime(p)?;
    let m = p
        .checked_pow(f.depth())
        .filter(|&m| m <= CYCLIC_LIMIT)
        .ok_or_else(|| Error::Budget(format!("Z/{p}^{} exceeds the scan limit {CYCLIC_LIMIT}", f.depth())))?;
    let denominator = f.denominator();
    if denominator.is_zero() {
        return Err(Error::Input("zero common denominator".into()));
    }
    let d_val = padic_valuation(&denominator, p)? as i64;

    let mut best: Option<(u32, (usize, usize))> = None;
    let mut consider = |value: BigInt, at: (usize, usize)| -> Result<()> {
        if !value.is_zero() {
            let v = padic_valuation(&value, p)?;
            if best.map_or(true, |(b, _)| v < b) {
                best = Some((v, at));
            }
        }
        Ok(())
    };
    let f0 = f.scaled_value(0);
    let f1 = f.scaled_value(1 % m);
    consider(f0.clone(), (0, 0))?;
    let mut current = f0.clone();
    for j in 0..m {
        let next = if j + 1 == m { f0.clone() } else { f.scaled_value(j + 1) };
        consider(&current + &f1 - &next, (j as usize, 1 % m as usize))?;
        current = next;
    }
    Ok(match best {
        None => Defect { norm: AbsValue::Zero, witness: None },
        Some((v, at)) => Defect { norm: AbsValue::Pow(d_val - v as i64), witness: Some(at) },
    })
}
