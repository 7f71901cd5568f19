//! p-adic valuations and absolute values on exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

/// Prime factorisation by trial division, ascending primes with multiplicities.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest `k` with `p^k | n`. The valuation of zero is `+∞` and is rejected.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    require_prime(p)?;
    if n.is_zero() {
        return Err(Error::Domain("p-adic valuation of 0 is +infinity".into()));
    }
    Ok(valuation_unchecked(n, p))
}

/// Machine-integer convenience wrapper around [`padic_valuation`].
pub fn padic_valuation_u64(n: u64, p: u64) -> Result<u32> {
    padic_valuation(&BigInt::from(n), p)
}

fn valuation_unchecked(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut k = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// `ν_p(x)` for a rational `x`; `None` stands for `+∞` (i.e. `x = 0`).
pub fn rational_valuation(x: &Rational, p: u64) -> Result<Option<i64>> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(None);
    }
    let num = valuation_unchecked(x.numer(), p) as i64;
    let den = valuation_unchecked(x.denom(), p) as i64;
    Ok(Some(num - den))
}

/// The p-adic absolute value `|x|_p` as an exact rational (`0` or a power of `p`).
pub fn padic_norm(x: &Rational, p: u64) -> Result<Rational> {
    Ok(AbsValue::of(x, p)?.to_rational(p))
}

/// A value of the p-adic absolute value: either `0` or `p^k` for an integer `k`.
///
/// The prime is implicit; values for different primes must not be compared.
/// The derived order is the numeric one (`Zero` sorts below every power).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AbsValue {
    Zero,
    /// `p^k`.
    Pow(i64),
}

impl AbsValue {
    pub const ONE: AbsValue = AbsValue::Pow(0);

    pub fn of(x: &Rational, p: u64) -> Result<Self> {
        Ok(match rational_valuation(x, p)? {
            None => AbsValue::Zero,
            Some(v) => AbsValue::Pow(-v),
        })
    }

    pub fn to_rational(self, p: u64) -> Rational {
        match self {
            AbsValue::Zero => Rational::zero(),
            AbsValue::Pow(k) => Rational::integer(p as i64)
                .pow(k as i32)
                .expect("p is nonzero"),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, AbsValue::Zero)
    }

    /// `|xy| = |x| |y|`.
    pub fn mul(self, other: AbsValue) -> AbsValue {
        match (self, other) {
            (AbsValue::Pow(a), AbsValue::Pow(b)) => AbsValue::Pow(a + b),
            _ => AbsValue::Zero,
        }
    }

    pub fn render(self, p: u64) -> String {
        self.to_rational(p).to_string()
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Zero => write!(f, "0"),
            AbsValue::Pow(k) => write!(f, "p^{k}"),
        }
    }
}

/// `ν_2(u^e - 1)` for odd `u ≥ 3` and `e ≥ 1`, computed by the lifting-the-exponent
/// lemma: when `ν_2(u - 1) = 1` and `e` is even the answer is `ν_2(u + 1) + ν_2(e)`,
/// otherwise `ν_2(u - 1) + ν_2(e)`.
pub fn lte_nu2(u: &BigInt, e: u64) -> Result<u32> {
    if u.is_even() {
        return Err(Error::Domain(format!("LTE needs an odd base, got {u}")));
    }
    if u < &BigInt::from(3) {
        return Err(Error::Domain(format!("LTE needs a base >= 3, got {u}")));
    }
    if e == 0 {
        return Err(Error::Domain("LTE needs a positive exponent".into()));
    }
    let nu_e = e.trailing_zeros();
    let below = valuation_unchecked(&(u - BigInt::one()), 2);
    if below == 1 && e % 2 == 0 {
        Ok(valuation_unchecked(&(u + BigInt::one()), 2) + nu_e)
    } else {
        Ok(below + nu_e)
    }
}
