//! ε-almost periods: sampled membership, window scans with a relative-density
//! estimate, Diophantine helpers for locating candidate shifts, and the
//! translate-clustering probe.

mod bochner;
mod diophantine;
mod scan;

pub use bochner::{bochner_probe, translate_distance_matrix, TranslateCluster};
pub use diophantine::{continued_fraction_convergents, dist_to_nearest_integer, simultaneous_approximation};
pub use scan::{
    almost_period_defect, is_almost_period, max_gap, scan_almost_periods, scan_track_almost_periods, ScanMetric,
    ScanReport,
};
