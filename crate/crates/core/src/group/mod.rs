//! Finite groups, named families, and the descriptor algebra.

pub mod descriptor;
pub mod exponent;
pub mod family;
pub mod finite;

pub use descriptor::{GroupDescriptor, GroupKind, OrderStream, Stabilization, StreamFormula};
pub use exponent::{ExponentValue, PExponent};
pub use family::{family_order, tree_ball_order, Family, LieType};
pub use finite::FiniteGroup;
