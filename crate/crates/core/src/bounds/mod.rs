//! Right-hand sides of the bounds, verdicts against computed mean values and σ, and the suite
//! that runs them.
//!
//! Constant-free inequalities are asserted. Statements with an unspecified implied constant are
//! reported with their measured ratio and tracked in a golden file.

mod arith_reports;
pub mod criteria;
mod harness;
mod report;
mod rhs;
mod suite;

pub use arith_reports::{
    cor1_report, euler_ratio_check, exact_sums_check, hall_report, lipschitz_report, prop2_report, prop3_report,
    thm1_report, thm2_rhs, twist_report, wintner_trend, ELLIOTT_EXPONENT,
};
pub use harness::{
    constants_check, cor1p_harness, eq101_harness, oracle_harness, prop31_harness, prop81_harness, region_invariants,
    thm5_harness, HarnessConfig,
};
pub use report::{BoundReport, GoldenDiff, Verdict};
pub use rhs::{
    cor1_rhs, hall_rhs, hall_rhs_region, prime_product, prop31_rhs, prop81_lower, thm1_rhs, thm5_rhs, PrimeProduct,
    PRODUCT_PRIME_LIMIT,
};
pub use suite::{annotate, verify_suite, GoldenEntry, GoldenFile, Profile, SuiteConfig, SuiteOutcome, DEFAULT_GOLDEN};
