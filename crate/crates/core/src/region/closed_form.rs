//! Reduced formulas for h̄ on three families, used to cross-check the generic quadrature.

use super::hbar::ray_angle;
use super::{ConvexRegion, RegionKind};
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, DEFAULT_TOL};
use num_complex::Complex64;
use std::f64::consts::PI;

fn chord_integral(alpha: f64, from: f64) -> Result<f64> {
    let q = integrate(
        |t| (Complex64::from_polar(1.0, t) - alpha).norm(),
        from,
        PI,
        &[],
        DEFAULT_TOL,
    )?;
    Ok(q.value)
}

/// h̄(α) from the per-family formulas: odd roots of unity, discs and sectors.
pub fn hbar_closed_form(region: &ConvexRegion, alpha: f64) -> Result<f64> {
    match region.kind() {
        RegionKind::RootsOfUnity { m } if m % 2 == 1 => {
            let m = *m as usize;
            let mf = m as f64;
            let half = (m - 1) / 2;
            // δ_j = θ_j − β_j with e^{iθ_j} − α along e^{iβ_j}
            let delta: Vec<f64> = (1..=half + 1)
                .map(|j| {
                    let beta = PI * (2 * j - 1) as f64 / mf;
                    ray_angle(alpha, beta) - beta
                })
                .collect();
            let cos_sum: f64 = delta[..half].iter().map(|d| d.cos()).sum();
            let mut weighted = delta[0];
            for j in 1..=half {
                weighted += (delta[j] - delta[j - 1]) * (2.0 * PI * j as f64 / mf).cos();
            }
            Ok(alpha + ((PI / mf).sin() * (1.0 + 2.0 * cos_sum) - alpha * weighted) / PI)
        }
        RegionKind::Disc { r } => Ok(r * (alpha + chord_integral(alpha, 0.0)? / PI)),
        RegionKind::Sector { phi } => {
            let phi = *phi;
            let t0 = ray_angle(alpha, phi / 2.0);
            let t1 = ray_angle(alpha, phi);
            if !(t0 <= t1 + 1e-15) {
                return Err(Error::NonConvergence(format!("transition angles out of order: {t0} > {t1}")));
            }
            let i = t0 + (t1 - t0) * phi.cos();
            let s = t0.sin() + (t1 - phi).sin() - (t0 - phi).sin() - alpha * i + chord_integral(alpha, t1)?;
            Ok(alpha + s / PI)
        }
        _ => Err(Error::NotApplicable(format!("no closed form for {}", region.label()))),
    }
}
