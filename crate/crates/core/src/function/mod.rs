//! Value types for strips, sphere points, exponential sums and their quotients.

mod expsum;
mod grid;
mod meromorphic;
mod sphere;
mod strip;

pub use expsum::{ExponentialSum, Term, FREQUENCY_MERGE_TOL};
pub(crate) use grid::{check_inside, grid_axes, progression, sampled_band};
pub use grid::{modulus_of_continuity, sup_spherical_diff, GridSpec, SupEstimate};
pub use meromorphic::{MeromorphicAP, MAX_CANCEL_ORDER, VANISHING_TOL};
pub use sphere::{spherical_distance, ExtendedComplex};
pub use strip::Strip;
