//! The integral equation uσ(u) = ∫₀^u σ(t)χ(u−t) dt and functionals of its solutions.

mod chi;
mod constructions;
mod functionals;
mod laplace;
mod rho;
mod series;
mod solver;

pub use chi::{sample_region, ChiRepr, ChiSpec};
pub use constructions::{construction_10b, construction_10b_with_step, nondecay_10a, TenbRecord, CONSTRUCTION_STEP};
pub use functionals::{damped_j, functionals, functionals_with_range, m0, minimize_j, mt, Functionals, Y_RANGE};
pub use laplace::{chi_kernel_laplace, laplace, LaplaceResult};
pub use rho::rho_alpha;
pub use series::{sigma_series, sigma_series_oracle, SeriesSolution, ORACLE_STEP};
pub use solver::{march, solve_sigma, SigmaSolution};
