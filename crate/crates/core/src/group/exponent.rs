//! `p`-exponent values: the sup of `ν_p` over a group's finite order data.

use std::fmt;

use serde::{Serialize, Serializer};

/// Either a finite exponent `k` (norm `p^k`) or divergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExponentValue {
    Finite(u64),
    Diverges,
}

impl ExponentValue {
    pub fn add(self, other: ExponentValue) -> ExponentValue {
        match (self, other) {
            (ExponentValue::Finite(a), ExponentValue::Finite(b)) => ExponentValue::Finite(a + b),
            _ => ExponentValue::Diverges,
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(k) => write!(f, "{k}"),
            ExponentValue::Diverges => write!(f, "diverges"),
        }
    }
}

impl Serialize for ExponentValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExponentValue::Finite(k) => s.serialize_u64(*k),
            ExponentValue::Diverges => s.serialize_str("diverges"),
        }
    }
}

/// An exponent together with whether it is exact. An uncertified finite value
/// is a lower bound; uncertified divergence does not occur (divergence is only
/// reported when proved).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PExponent {
    pub value: ExponentValue,
    pub certified: bool,
}

impl PExponent {
    pub fn certified(k: u64) -> Self {
        PExponent { value: ExponentValue::Finite(k), certified: true }
    }

    pub fn lower_bound(k: u64) -> Self {
        PExponent { value: ExponentValue::Finite(k), certified: false }
    }

    pub fn diverges() -> Self {
        PExponent { value: ExponentValue::Diverges, certified: true }
    }

    pub fn finite(&self) -> Option<u64> {
        match self.value {
            ExponentValue::Finite(k) => Some(k),
            ExponentValue::Diverges => None,
        }
    }

    pub fn is_certified_divergent(&self) -> bool {
        self.certified && self.value == ExponentValue::Diverges
    }

    /// Exponent of an extension: the sum. A proved divergence on either side
    /// is conclusive; otherwise the sum is exact only if both parts are.
    pub fn sum(self, other: PExponent) -> PExponent {
        if self.is_certified_divergent() || other.is_certified_divergent() {
            return PExponent::diverges();
        }
        PExponent { value: self.value.add(other.value), certified: self.certified && other.certified }
    }

    /// Exponent of a union or inverse limit: the sup. A proved divergence is
    /// conclusive; otherwise exact only if every part is and `exhaustive` holds.
    pub fn sup(parts: impl IntoIterator<Item = PExponent>, exhaustive: bool) -> PExponent {
        let mut value = ExponentValue::Finite(0);
        let mut certified = exhaustive;
        for part in parts {
            if part.is_certified_divergent() {
                return PExponent::diverges();
            }
            value = value.max(part.value);
            certified &= part.certified;
        }
        PExponent { value, certified }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.certified {
            write!(f, "{}", self.value)
        } else {
            write!(f, ">= {}", self.value)
        }
    }
}
