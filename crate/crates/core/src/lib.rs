//! Exact non-Archimedean arithmetic for amenability norms of totally
//! disconnected groups, bounded cohomology of finite groups and finite
//! complexes, and quasimorphisms into local fields.

pub mod amenability;
pub mod bar;
pub mod catalogue;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod quasimorphism;
pub mod rational;
pub mod topo;
pub mod valuation;

pub use amenability::{amenability_norm, finite_group_norm, simplicity_obstruction, AmenabilityVerdict};
pub use bar::{cohomology_dim, h1b_dimension, AbelianInvariants, Cochain, CohomologySummary};
pub use catalogue::{catalogue, CatalogueRow};
pub use error::{Error, Result};
pub use field::{ExtendedNorm, FieldDescriptor, Trichotomy};
pub use group::{Family, FiniteGroup, GroupDescriptor, PExponent};
pub use quasimorphism::{project_to_prufer, standard_section, PruferElement, QmTable};
pub use rational::Rational;
pub use topo::{CellComplex, Complex, SimplicialComplex};
pub use valuation::{lte_nu2, padic_norm, padic_valuation, AbsValue};
