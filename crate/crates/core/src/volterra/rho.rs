//! ρ_α from the delay equation uρ′(u) = −(1−α)ρ(u−1), ρ = 1 on [0, 1].

use super::solver::SigmaSolution;
use crate::error::{Error, Result};
use num_complex::Complex64;

fn integrate(alpha: Complex64, n: usize, per_unit: usize) -> Vec<Complex64> {
    let h = 1.0 / per_unit as f64;
    let k = Complex64::new(1.0, 0.0) - alpha;
    let one = Complex64::new(1.0, 0.0);
    let mut rho = vec![one; n + 1];
    // derivative history; at u = 1 this is the right derivative
    let mut d = vec![Complex64::new(0.0, 0.0); n + 1];
    let deriv = |u: f64, delayed: Complex64| -k * delayed / u;
    if per_unit <= n {
        d[per_unit] = deriv(1.0, one);
    }
    for j in per_unit..n {
        let u = j as f64 * h;
        // RK4 with a right side that only sees the delayed past: the stages are the
        // delayed values at u − 1, u − 1 + h/2 and u − 1 + h
        let i = j - per_unit;
        let lo = rho[i];
        let hi = rho[i + 1];
        // ρ′ jumps at u = 1, where the cell to the left needs the left derivative 0
        let d_hi = if i + 1 == per_unit { Complex64::new(0.0, 0.0) } else { d[i + 1] };
        let mid = (lo + hi) * 0.5 + (d[i] - d_hi) * (h / 8.0);
        let k1 = deriv(u, lo);
        let k23 = deriv(u + 0.5 * h, mid);
        let k4 = deriv(u + h, hi);
        rho[j + 1] = rho[j] + (k1 + k23 * 4.0 + k4) * (h / 6.0);
        d[j + 1] = k4;
    }
    rho
}

/// ρ_α on the grid {0, h, …, U}; needs 1/h to be an integer so the delay lands on grid points.
pub fn rho_alpha(alpha: Complex64, u_max: f64, h: f64) -> Result<SigmaSolution> {
    if !(alpha.re < 1.0) {
        return Err(Error::Invalid(format!("rho_alpha needs Re alpha < 1, got {alpha}")));
    }
    if !(u_max >= 1.0) || !(h > 0.0 && h <= 1.0 / 64.0) {
        return Err(Error::Invalid(format!("rho_alpha needs U >= 1 and h <= 1/64, got U={u_max}, h={h}")));
    }
    let per_unit = (1.0 / h).round() as usize;
    let n = (u_max / h).round() as usize;
    if (per_unit as f64 * h - 1.0).abs() > 1e-12 || (n as f64 * h - u_max).abs() > 1e-9 * u_max {
        return Err(Error::Invalid("rho_alpha needs 1/h and U/h to be integers".into()));
    }
    let values = integrate(alpha, n, per_unit);
    let est_error = if per_unit % 2 == 0 && n % 2 == 0 {
        let coarse = integrate(alpha, n / 2, per_unit / 2);
        // fourth order: ρ_h − ρ_{2h} ≈ 15·(ρ − ρ_h)
        (values[n] - coarse[n / 2]).norm() / 15.0
    } else {
        0.0
    };
    Ok(SigmaSolution { h, values, est_error })
}
