//! Exact wedge classes over a declared exponent basis.

mod basis;
mod realize;
mod wedge;

pub use basis::{parse_rational, Exponent, ExponentBasis, RationalVector};
pub use realize::{lattice_class, realizability_check, ComponentSpec, RealizabilityVerdict, SeparationReport};
pub use wedge::{wedge, WedgeElement};
