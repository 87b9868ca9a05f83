//! Product-trapezoid marching for uσ(u) = ∫₀^u σ(t)χ(u−t) dt.
//!
//! σ is taken piecewise linear on the grid and the products with χ are integrated
//! exactly cell by cell (five-point Gauss–Legendre between the breakpoints of χ), so
//! jumps of χ off the grid do not cost accuracy.

use super::chi::ChiSpec;
use crate::error::{Error, Result};
use crate::numeric::quad::{GL5_NODES, GL5_WEIGHTS};
use num_complex::Complex64;
use serde::Serialize;

/// σ on the grid {0, h, …, U}.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaSolution {
    pub h: f64,
    pub values: Vec<Complex64>,
    /// Estimated error at u = U from a step-doubling comparison.
    pub est_error: f64,
}

impl SigmaSolution {
    pub fn u_max(&self) -> f64 {
        self.h * (self.values.len() - 1) as f64
    }

    pub fn u(&self, k: usize) -> f64 {
        self.h * k as f64
    }

    /// Index of the grid point nearest to `u`.
    pub fn index(&self, u: f64) -> usize {
        ((u / self.h).round() as usize).min(self.values.len() - 1)
    }

    /// Linear interpolation between grid values.
    pub fn at(&self, u: f64) -> Complex64 {
        let x = (u / self.h).clamp(0.0, (self.values.len() - 1) as f64);
        let k = (x.floor() as usize).min(self.values.len().saturating_sub(2));
        let f = x - k as f64;
        self.values[k] * (1.0 - f) + self.values[k + 1] * f
    }

    pub fn last(&self) -> Complex64 {
        *self.values.last().unwrap()
    }
}

/// Cell moments `(a_m, b_m)` for m = 1..=n of a function g on cells [(m−1)h, mh]:
/// a_m = ∫₀¹ τ g((m−1+τ)h) dτ and b_m = ∫₀¹ (1−τ) g((m−1+τ)h) dτ.
/// `kinks` must be sorted; g is integrated piece by piece between them.
pub(crate) fn cell_moments<G: Fn(f64) -> Complex64>(g: G, kinks: &[f64], h: f64, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut next = 0usize;
    let mut cuts: Vec<f64> = Vec::new();
    for m in 1..=n {
        let t0 = (m - 1) as f64 * h;
        let t1 = m as f64 * h;
        cuts.clear();
        cuts.push(0.0);
        while next < kinks.len() && kinks[next] <= t0 {
            next += 1;
        }
        let mut j = next;
        while j < kinks.len() && kinks[j] < t1 {
            cuts.push((kinks[j] - t0) / h);
            j += 1;
        }
        cuts.push(1.0);
        let (mut sa, mut sb) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for w in cuts.windows(2) {
            let (p, q) = (w[0], w[1]);
            if q <= p {
                continue;
            }
            let c = 0.5 * (p + q);
            let r = 0.5 * (q - p);
            for (x, wt) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
                let tau = c + r * x;
                let gv = g(t0 + tau * h) * (wt * r);
                sa += gv * tau;
                sb += gv * (1.0 - tau);
            }
        }
        a[m] = sa;
        b[m] = sb;
    }
    (a, b)
}

fn check_grid(u_max: f64, h: f64) -> Result<usize> {
    if !(h > 0.0 && h <= 1.0 / 64.0) {
        return Err(Error::Invalid(format!("step h must lie in (0, 1/64], got {h}")));
    }
    if !(u_max >= 1.0) {
        return Err(Error::Invalid(format!("U must be at least 1, got {u_max}")));
    }
    let n = (u_max / h).round();
    if (n * h - u_max).abs() > 1e-9 * u_max {
        return Err(Error::Invalid(format!("U/h must be an integer, got {}", u_max / h)));
    }
    Ok(n as usize)
}

/// Marches the equation and returns σ on the grid, without an error estimate.
pub fn march(chi: &ChiSpec, u_max: f64, h: f64) -> Result<Vec<Complex64>> {
    let n = (u_max / h).round() as usize;
    let kinks = chi.kinks(u_max + h);
    let (a, b) = cell_moments(|t| chi.eval(t), &kinks, h, n + 1);
    // weight of σ_i in the equation at u_k is h·w_{k−i}
    let w: Vec<Complex64> = (0..=n).map(|m| if m == 0 { b[1] } else { a[m] + b[m + 1] }).collect();
    let one = Complex64::new(1.0, 0.0);
    let mut sigma = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let u = k as f64 * h;
        if u <= 1.0 + 1e-12 {
            sigma.push(one);
            continue;
        }
        let mut acc = a[k] * sigma[0];
        for i in 1..k {
            acc += w[k - i] * sigma[i];
        }
        sigma.push(acc * h / (u - h * b[1].re));
    }
    Ok(sigma)
}

/// Solves uσ(u) = (σ∗χ)(u) with σ = 1 on [0, 1], on the grid of step `h` up to `u_max`.
pub fn solve_sigma(chi: &ChiSpec, u_max: f64, h: f64) -> Result<SigmaSolution> {
    let n = check_grid(u_max, h)?;
    let values = march(chi, u_max, h)?;
    // Step-doubling: σ_h − σ_{2h} ≈ 3·(σ − σ_h) for a second-order scheme.
    let half = n / 2;
    let coarse = march(chi, 2.0 * h * half as f64, 2.0 * h)?;
    let est_error = (values[2 * half] - coarse[half]).norm() / 3.0;
    if !est_error.is_finite() {
        return Err(Error::NonConvergence("sigma march produced non-finite values".into()));
    }
    Ok(SigmaSolution { h, values, est_error })
}
