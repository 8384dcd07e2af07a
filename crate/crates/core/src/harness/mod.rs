//! Reproducible numerical checks of the composite-derivative and
//! approximation-rate estimates, with JSON/CSV reports.
//!
//! None of the estimates checked here come with explicit constants except the
//! derivative estimate, so most checks measure ratios and fitted slopes rather
//! than asserting a fixed bound.

mod checks;
pub mod corpus;
mod exponents;
mod random;
mod rate;
mod report;

pub use checks::{
    image_box, lemma_sweep, verify_composite_bound, verify_lemma, CompositeRecord, LemmaRecord, BOX_MARGIN,
    LEMMA_SLACK,
};
pub use exponents::{select_exponents, ExponentSelector, BOUNDARY_WINDOW};
pub use random::{
    random_cases, random_expression, run_oracle, within_oracle_tolerance, OracleCase, OracleRecord, ORACLE_ABS_TOL,
    ORACLE_REL_TOL, ORACLE_SMALL,
};
pub use rate::{
    favard_sweep, favard_sweeps, log_log_slope, top_half_growth, verify_rate, FavardReport, RateConfig, RateReport, RunStatus,
    USABLE_GAP,
};
pub use report::{
    favard_csv, rate_csv, report_stem, to_json, write_favard_report, write_json, write_rate_report,
};
