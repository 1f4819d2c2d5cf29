//! Zeros and poles of exponential-sum quotients via the argument principle.

mod analysis;
mod locate;
mod rect;
mod winding;

pub use analysis::{bounded_off_poles, count_in_unit_rectangle, divisor_of, inf_off_zeros, separation_distance};
pub use locate::{locate_zeros, RootList};
pub use rect::Rectangle;
pub use winding::{count_zeros, count_zeros_detailed, ZeroCount, BOUNDARY_PERTURBATION, BOUNDARY_ZERO_TOL};
