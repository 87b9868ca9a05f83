//! Numerical laboratory for decay of mean values of multiplicative functions.
//!
//! * [`region`]: convex subsets of the unit disc and their constants κ, ν, λ, C(D), c, c′.
//! * [`volterra`]: the delay convolution equation uσ(u) = (σ∗χ)(u) and its functionals.
//! * [`arith`]: sieve-based evaluation of multiplicative functions and Halász functionals.
//! * [`bounds`]: right-hand sides of the mean-value inequalities and the verification suite.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod numeric;
pub mod region;
pub mod volterra;

pub use error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
