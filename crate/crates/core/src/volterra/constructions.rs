//! Explicit χ for which |σ(u)| does not decay faster than the bounds allow.

use super::chi::ChiSpec;
use super::solver::{solve_sigma, SigmaSolution};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Grid used by the constructions.
pub const CONSTRUCTION_STEP: f64 = 1.0 / 128.0;

#[derive(Debug, Clone, Serialize)]
pub struct TenbRecord {
    pub u: f64,
    pub sigma: SigmaSolution,
    pub sigma_hat: SigmaSolution,
    /// σ̂(u) − σ(u).
    pub lhs: Complex64,
    /// ∫_{u/2}^u |σ(u−t)|/t dt.
    pub middle: f64,
    /// (1/u)∫₀^{u/2} |σ(v)| dv.
    pub rhs: f64,
    /// |lhs − middle| within 10·(est_error of both solves) + 1e−9.
    pub equality_holds: bool,
    pub inequality_holds: bool,
}

fn trapezoid(vals: impl Iterator<Item = f64>, h: f64) -> f64 {
    let v: Vec<f64> = vals.collect();
    if v.len() < 2 {
        return 0.0;
    }
    h * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[v.len() - 1]))
}

/// χ = 1 on [0,1], i on (1, u/2], 0 beyond; χ̂ agrees with it except on (u/2, u], where it
/// points along conj σ(u − t). Only one of the tᵢ can exceed u/2, so σ̂(u) − σ(u) equals the
/// middle integral exactly.
pub fn construction_10b(u: f64) -> Result<TenbRecord> {
    construction_10b_with_step(u, CONSTRUCTION_STEP)
}

pub fn construction_10b_with_step(u: f64, h: f64) -> Result<TenbRecord> {
    if !(u >= 8.0) {
        return Err(Error::Invalid(format!("construction needs u >= 8, got {u}")));
    }
    let chi = ChiSpec::tenb(u)?;
    let sigma = solve_sigma(&chi, u, h)?;
    let half = sigma.index(u / 2.0);
    if ((half as f64) * h - u / 2.0).abs() > 1e-9 {
        return Err(Error::Invalid("u/2 must be a grid point".into()));
    }
    // sample j at t = u/2 + jh needs σ(u/2 − jh)
    let samples: Vec<Complex64> = (0..=half)
        .map(|j| {
            let s = sigma.values[half - j];
            if s.norm() > 0.0 {
                s.conj() / s.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    let chi_hat = chi.patched(u / 2.0, h, samples)?;
    let sigma_hat = solve_sigma(&chi_hat, u, h)?;
    let lhs = sigma_hat.last() - sigma.last();
    let middle = trapezoid((half..=2 * half).map(|k| sigma.values[2 * half - k].norm() / (k as f64 * h)), h);
    let rhs = trapezoid((0..=half).map(|k| sigma.values[k].norm()), h) / u;
    let tol = 10.0 * (sigma.est_error + sigma_hat.est_error) + 1e-9;
    Ok(TenbRecord {
        u,
        lhs,
        middle,
        rhs,
        equality_holds: (lhs - middle).norm() <= tol,
        inequality_holds: middle > rhs,
        sigma,
        sigma_hat,
    })
}

/// max |σ(u)| over [U/2, U] for χ(t) = e^{iαt}.
pub fn nondecay_10a(alpha: f64, u_max: f64) -> Result<f64> {
    if !(u_max >= 50.0) {
        return Err(Error::Invalid(format!("nondecay needs U >= 50, got {u_max}")));
    }
    let h = 1.0 / 64.0;
    let u_max = (u_max / h).round() * h;
    let s = solve_sigma(&ChiSpec::rotation(alpha)?, u_max, h)?;
    let lo = s.index(u_max / 2.0);
    Ok(s.values[lo..].iter().map(|v| v.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tenb_twenty() {
        let r = construction_10b(20.0).unwrap();
        assert!(r.lhs.re > 0.0);
        assert!((r.lhs - r.middle).norm() < 1e-4, "{} vs {}", r.lhs, r.middle);
        assert!(r.middle > r.rhs);
        assert!(r.equality_holds && r.inequality_holds);
    }

    #[test]
    fn rotation_zero_is_all_one() {
        assert_eq!(nondecay_10a(0.0, 50.0).unwrap(), 1.0);
    }
}
