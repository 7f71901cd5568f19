//! The Prüfer group `Z(p^∞) = Z[1/p]/Z`, the defect group of `Q_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valuation::{padic_valuation, require_prime};

/// `Σ_{i=1}^{N} a_{-i} p^{-i} mod 1`, stored as `digits[i-1] = a_{-i}` with
/// trailing zero digits removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PruferElement {
    p: u64,
    digits: Vec<u64>,
}

impl PruferElement {
    pub fn new(p: u64, mut digits: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::Input(format!("digit {d} is not below {p}")));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(PruferElement { p, digits })
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// `m / p^depth mod 1`; any integer `m` is accepted.
    pub fn from_fraction(p: u64, m: &BigInt, depth: u32) -> Result<Self> {
        require_prime(p)?;
        let modulus = BigInt::from(p).pow(depth);
        let mut rest = m.mod_floor(&modulus);
        let mut digits = vec![0u64; depth as usize];
        let base = BigInt::from(p);
        for slot in digits.iter_mut().rev() {
            let (q, r) = rest.div_rem(&base);
            *slot = u64::try_from(r).expect("digit below p");
            rest = q;
        }
        Self::new(p, digits)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Number of significant digits: the element has order `p^depth`.
    pub fn depth(&self) -> u32 {
        self.digits.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// `m` with `self = m / p^depth`, `0 ≤ m < p^depth`.
    pub fn numerator(&self) -> BigInt {
        self.digits.iter().fold(BigInt::zero(), |acc, &d| acc * self.p + d)
    }

    fn numerator_at(&self, depth: u32) -> BigInt {
        self.numerator() * BigInt::from(self.p).pow(depth - self.depth())
    }

    pub fn add(&self, other: &PruferElement) -> Result<PruferElement> {
        if self.p != other.p {
            return Err(Error::Input(format!("cannot add Z({}^∞) and Z({}^∞) elements", self.p, other.p)));
        }
        let depth = self.depth().max(other.depth());
        Self::from_fraction(self.p, &(self.numerator_at(depth) + other.numerator_at(depth)), depth)
    }

    pub fn neg(&self) -> PruferElement {
        Self::from_fraction(self.p, &-self.numerator(), self.depth()).expect("prime already checked")
    }
}

impl fmt::Display for PruferElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}^{}", self.numerator(), self.p, self.depth())
        }
    }
}

/// The section `ι`: the digit expansion read as a rational in `[0, 1)`.
pub fn standard_section(x: &PruferElement) -> Rational {
    Rational::new(x.numerator(), BigInt::from(x.p).pow(x.depth())).expect("nonzero denominator")
}

/// The canonical projection `π : Q → Z(p^∞)`, `x ↦ x mod Z_(p)`.
///
/// Writes `x = a / (p^k b)` with `p ∤ b` and returns `a b^{-1} mod p^k` over `p^k`.
pub fn project_to_prufer(x: &Rational, p: u64) -> Result<PruferElement> {
    require_prime(p)?;
    let k = padic_valuation(x.denom(), p)?;
    if k == 0 {
        return PruferElement::zero(p);
    }
    let pk = BigInt::from(p).pow(k);
    let unit = x.denom() / &pk;
    let inverse = unit.mod_floor(&pk).modinv(&pk).expect("unit is prime to p");
    let result = PruferElement::from_fraction(p, &(x.numer() * inverse), k)?;
    let rest = x - &standard_section(&result);
    assert!(
        padic_valuation(rest.denom(), p)? == 0,
        "projection of {x} left a p-adic fractional part"
    );
    Ok(result)
}

/// Elements of the subgroup `Z/p^N ⊂ Z(p^∞)` in the order `k / p^N`, `k = 0..p^N`.
pub fn truncation_element(p: u64, depth: u32, k: u64) -> Result<PruferElement> {
    PruferElement::from_fraction(p, &BigInt::from(k), depth)
}
