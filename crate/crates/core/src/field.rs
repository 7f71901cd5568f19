//! Field descriptors, the characteristic trichotomy, and extended norms.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::valuation::is_prime;

/// The data of a non-Archimedean valued field that every computation here
/// depends on. Serialised as a flat record.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub label: String,
    /// `0` or a prime `p`.
    #[serde(rename = "char")]
    pub char_field: u64,
    /// Characteristic of the residue field: `0` or a prime.
    pub residue_char: u64,
    pub spherically_complete: bool,
    pub discretely_valued: bool,
}

/// Which of the three characteristic regimes a field falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "case", content = "p", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trichotomy {
    /// `char K = p > 0` (so the residue field has characteristic `p` too).
    CharP(u64),
    /// `char K = char r = 0`.
    EqualCharZero,
    /// `char K = 0`, `char r = p > 0`; the norm is normalised so `|p| = 1/p`.
    Mixed(u64),
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trichotomy::CharP(p) => write!(f, "CHAR_P({p})"),
            Trichotomy::EqualCharZero => write!(f, "EQUAL_CHAR_ZERO"),
            Trichotomy::Mixed(p) => write!(f, "MIXED({p})"),
        }
    }
}

impl FieldDescriptor {
    /// Checks the descriptor invariants.
    pub fn validate(&self) -> Result<()> {
        for (name, c) in [("char", self.char_field), ("residue_char", self.residue_char)] {
            if c != 0 && !is_prime(c) {
                return Err(Error::Descriptor(format!(
                    "{}: {name} must be 0 or prime, got {c}",
                    self.label
                )));
            }
        }
        if self.char_field != 0 && self.residue_char != self.char_field {
            return Err(Error::Descriptor(format!(
                "{}: char {} forces residue characteristic {}, got {}",
                self.label, self.char_field, self.char_field, self.residue_char
            )));
        }
        Ok(())
    }

    pub fn classify(&self) -> Result<Trichotomy> {
        self.validate()?;
        Ok(match (self.char_field, self.residue_char) {
            (0, 0) => Trichotomy::EqualCharZero,
            (0, p) => Trichotomy::Mixed(p),
            (p, _) => Trichotomy::CharP(p),
        })
    }

    /// `Q_p` with the p-adic norm.
    pub fn q_p(p: u64) -> Result<Self> {
        Self::built_in(format!("Qp:{p}"), 0, p)
    }

    /// `F_p((X))` with the X-adic norm.
    pub fn fp_laurent(p: u64) -> Result<Self> {
        Self::built_in(format!("Fp_laurent:{p}"), p, p)
    }

    pub fn trivial_q() -> Self {
        FieldDescriptor {
            label: "trivial:Q".into(),
            char_field: 0,
            residue_char: 0,
            spherically_complete: true,
            discretely_valued: true,
        }
    }

    /// `F_p` with the trivial norm.
    pub fn trivial_fp(p: u64) -> Result<Self> {
        Self::built_in(format!("trivial:Fp:{p}"), p, p)
    }

    fn built_in(label: String, char_field: u64, residue_char: u64) -> Result<Self> {
        let fd = FieldDescriptor {
            label,
            char_field,
            residue_char,
            spherically_complete: true,
            discretely_valued: true,
        };
        fd.validate()?;
        Ok(fd)
    }

    /// Resolves a registry label: `Qp:<p>`, `Fp_laurent:<p>`, `trivial:Q`, `trivial:Fp:<p>`.
    pub fn from_label(label: &str) -> Result<Self> {
        let prime = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .ok()
                .filter(|p| is_prime(*p))
                .ok_or_else(|| Error::Descriptor(format!("bad prime {s:?} in field label {label:?}")))
        };
        match label.split(':').collect::<Vec<_>>().as_slice() {
            ["Qp", p] => Self::q_p(prime(p)?),
            ["Fp_laurent", p] => Self::fp_laurent(prime(p)?),
            ["trivial", "Q"] => Ok(Self::trivial_q()),
            ["trivial", "Fp", p] => Self::trivial_fp(prime(p)?),
            _ => Err(Error::Descriptor(format!("unknown field label {label:?}"))),
        }
    }
}

/// An amenability norm: `p^k`, `1`, or `∞`. Stored by exponent, never as a float.
#[derive(Clone, Copy, Debug)]
pub enum ExtendedNorm {
    Finite { exponent: u32, base: u64 },
    One,
    Infinity,
}

impl ExtendedNorm {
    pub fn finite(exponent: u32, base: u64) -> Self {
        ExtendedNorm::Finite { exponent, base }
    }

    /// `(exponent, base)` for finite norms, with `One` as exponent 0.
    fn key(&self) -> Option<u32> {
        match self {
            ExtendedNorm::Finite { exponent, .. } => Some(*exponent),
            ExtendedNorm::One => Some(0),
            ExtendedNorm::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedNorm::Infinity)
    }

    pub fn is_one(&self) -> bool {
        self.key() == Some(0)
    }

    pub fn exponent(&self) -> Option<u32> {
        self.key()
    }

    /// The norm as an integer, `None` for infinity.
    pub fn value(&self) -> Option<BigInt> {
        match self {
            ExtendedNorm::Finite { exponent, base } => Some(Pow::pow(BigInt::from(*base), *exponent)),
            ExtendedNorm::One => Some(BigInt::from(1)),
            ExtendedNorm::Infinity => None,
        }
    }

    /// Product of norms over the same prime; `∞` absorbs.
    pub fn checked_mul(&self, other: &ExtendedNorm) -> Result<ExtendedNorm> {
        use ExtendedNorm::*;
        Ok(match (self, other) {
            (Infinity, _) | (_, Infinity) => Infinity,
            (One, x) | (x, One) => *x,
            (Finite { exponent: a, base: p }, Finite { exponent: b, base: q }) => {
                if p != q {
                    return Err(Error::Domain(format!("norms over different primes {p} and {q}")));
                }
                Finite { exponent: a + b, base: *p }
            }
        })
    }
}

impl PartialEq for ExtendedNorm {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                ExtendedNorm::Finite { exponent: a, base: p },
                ExtendedNorm::Finite { exponent: b, base: q },
            ) if *a > 0 && *b > 0 => a == b && p == q,
            _ => self.key() == other.key(),
        }
    }
}

impl Eq for ExtendedNorm {}

impl PartialOrd for ExtendedNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if let (
            ExtendedNorm::Finite { exponent: a, base: p },
            ExtendedNorm::Finite { exponent: b, base: q },
        ) = (self, other)
        {
            if *a > 0 && *b > 0 && p != q {
                return None;
            }
        }
        Some(match (self.key(), other.key()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        })
    }
}

impl fmt::Display for ExtendedNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "infinity"),
        }
    }
}

/// JSON: a number when it fits in `u64`, otherwise a decimal string; `"infinity"` for ∞.
impl Serialize for ExtendedNorm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.value() {
            None => serializer.serialize_str("infinity"),
            Some(v) => match v.to_u64() {
                Some(small) => serializer.serialize_u64(small),
                None => serializer.collect_str(&v),
            },
        }
    }
}
