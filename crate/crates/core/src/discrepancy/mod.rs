//! The discrepancy `delta_k(n) = F_k(n) - alpha_k n`, handled as exact
//! pairs `(F_k(n), n)` and rendered to floats only for output.

mod affine;
mod extrema;
mod probes;
mod scans;

pub use affine::{compare, delta, delta_u64, scaled_to_f64, AlphaRenderer, ExactAffine};
pub use extrema::{
    certify_bounds, extrema_table, last_position_below, Certification, ExtremaTable,
};
pub use probes::{
    delta_by_decomp, divergence_probe_general, divergence_probe_k5, least_squares_slope,
    ln_biguint, log_bound_k5, DriftRow, GeneralProbe, K5Probe,
};
pub use scans::{
    additivity_defect, additivity_scan, cloitre_scan, fractal_points, second_iterate_scan,
    second_iterate_value, write_fractal_csv, AdditivityReport, CloitreReport, FloorOracle,
    FractalPoint, SecondIterateReport, Witness, FLOOR_CAP_BITS, SECOND_ITERATE_LIMIT,
};
