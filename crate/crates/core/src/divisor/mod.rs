//! Divisors as finite point charges: algebra, smoothing, matching, lattices.

mod algebra;
mod convolution;
mod lattice;
mod matching;
mod transform;

pub use algebra::Divisor;
pub use convolution::{convolution_track, convolve, positive_part_identity_check, BumpFunction};
pub use lattice::{lattice_divisor, LatticeDivisorSpec};
pub use matching::{sequence_ap_bottleneck, sequence_ap_check};
pub use transform::{transform_strip, PiecewiseLinear};
