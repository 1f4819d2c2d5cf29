//! Meromorphic almost periodic functions on horizontal strips.
//!
//! Functions are quotients of finite exponential sums `Σ cₖ e^{iλₖz}`. The
//! crate estimates almost-period sets under the chordal metric, locates
//! zeros and poles with the argument principle, works with divisors as
//! point charges, and decides wedge classes of lattice divisors exactly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod almost_period;
pub mod cohomology;
pub mod divisor;
pub mod error;
pub mod expr;
pub mod function;
pub mod report;
pub mod zeros;

pub use error::{Error, Result};
pub use function::{ExponentialSum, ExtendedComplex, GridSpec, MeromorphicAP, Strip};
