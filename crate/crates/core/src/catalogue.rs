//! The table of named families and their amenability norms over `Q_p`.

use serde::Serialize;

use crate::amenability::{amenability_norm, Reason};
use crate::error::Result;
use crate::field::{ExtendedNorm, FieldDescriptor};
use crate::group::{Family, GroupDescriptor};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogueRow {
    pub family: String,
    pub params: String,
    pub prime: u64,
    pub norm: ExtendedNorm,
    pub certified: bool,
    /// The argument that produces the value.
    pub theorem_tag: String,
    pub reason: Reason,
}

/// `(family, prime, justification)` rows, in output order.
fn entries() -> Vec<(Family, u64, &'static str)> {
    vec![
        (Family::GlChain { n: 2, ell: 3, a: 3 }, 2, "lifting_the_exponent_gl2"),
        (Family::GlChain { n: 2, ell: 3, a: 3 }, 3, "defining_characteristic_unbounded"),
        (Family::GlChain { n: 2, ell: 3, a: 2 }, 2, "lifting_the_exponent_even_power"),
        (Family::PslChain { n: 2, ell: 3, a: 3 }, 2, "lifting_the_exponent_psl2"),
        (Family::SzChain { a: 3 }, 3, "suzuki_order_residues"),
        (Family::SzChain { a: 3 }, 2, "defining_characteristic_unbounded"),
        (Family::TreeFix { d: 3 }, 3, "tree_ball_factorial_valuation"),
        (Family::TreeFix { d: 3 }, 2, "tree_ball_unbounded_levels"),
        (Family::TreeFix { d: 3 }, 5, "tree_ball_coprime"),
        (Family::Prufer { p: 2 }, 2, "prufer_unbounded_cyclic_subgroups"),
        (Family::Prufer { p: 2 }, 3, "prufer_coprime"),
        (Family::ZEll { ell: 3 }, 3, "pro_ell_unbounded_index"),
        (Family::ZEll { ell: 3 }, 2, "pro_ell_coprime"),
        (Family::QEll { ell: 3 }, 3, "pro_ell_unbounded_index"),
        (Family::QEll { ell: 3 }, 5, "pro_ell_coprime"),
    ]
}

/// Regenerates the catalogue. `depth` only matters for uncertified sampling.
pub fn catalogue(depth: u32) -> Result<Vec<CatalogueRow>> {
    entries()
        .into_iter()
        .map(|(family, prime, tag)| {
            let verdict = amenability_norm(&GroupDescriptor::family(family.clone()), &FieldDescriptor::q_p(prime)?, depth)?;
            Ok(CatalogueRow {
                family: family.tag().to_string(),
                params: family.params_string(),
                prime,
                norm: verdict.norm,
                certified: verdict.certified,
                theorem_tag: tag.to_string(),
                reason: verdict.reason,
            })
        })
        .collect()
}
