//! First bounded cohomology of finitely generated abelian groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;

/// `Z^rank × Z/d_1 × ... × Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianInvariants {
    pub rank: u64,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(rank: u64, torsion: Vec<u64>) -> Result<Self> {
        let inv = AbelianInvariants { rank, torsion };
        inv.validate()?;
        Ok(inv)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.torsion.iter().find(|&&d| d < 2) {
            return Err(Error::Input(format!("torsion orders must be at least 2, got {d}")));
        }
        Ok(())
    }
}

/// `dim H^1_b(A; K)`: homomorphisms `A → K` are bounded, so this is `dim Hom(A, K)`.
/// Over characteristic 0 only the free part contributes; over characteristic `p`
/// each cyclic factor of order divisible by `p` adds one.
pub fn h1b_dimension(group: &AbelianInvariants, field: &FieldDescriptor) -> Result<u64> {
    group.validate()?;
    field.validate()?;
    let p = field.char_field;
    let torsion = if p == 0 { 0 } else { group.torsion.iter().filter(|&&d| d % p == 0).count() as u64 };
    Ok(group.rank + torsion)
}
