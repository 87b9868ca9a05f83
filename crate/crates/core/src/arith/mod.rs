//! Multiplicative functions on n ≤ x: sieve, partial sums, Euler products and the Halász functionals.

mod halasz;
mod links;
mod mult;
mod sieve;
mod sums;

pub use halasz::{halasz_functionals, halasz_functionals_at, HalaszFunctionals, PrimeTable};
pub use links::{chi_from_f, prime_distance, prop3_decompose, twist_check, Prop3Record, TwistRecord};
pub use mult::MultiplicativeSpec;
pub use sieve::{build_sieve, build_sieve_with_budget, sieve_bytes, SieveTable, DEFAULT_BUDGET, MAX_LIMIT};
pub use sums::{euler_f, euler_factor, partial_sums, theta, weighted_sum};
