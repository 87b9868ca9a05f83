//! σ = Σ (−1)ⁿ/n! · Iₙ with Iₙ = K ∗ Iₙ₋₁ and K(t) = (1 − χ(t))/t.
//!
//! Independent of the marching solver: it never solves for σ, only convolves.

use super::chi::ChiSpec;
use super::solver::cell_moments;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Grid used by [`sigma_series_oracle`].
pub const ORACLE_STEP: f64 = 1.0 / 4096.0;

#[derive(Debug, Clone)]
pub struct SeriesSolution {
    pub h: f64,
    /// σ on the grid {0, h, …}.
    pub sigma: Vec<Complex64>,
    /// Iₙ(u) at the last grid point, n = 0, 1, ….
    pub terms: Vec<Complex64>,
    /// |I_{n_max}(u)| / n_max! at the last grid point.
    pub truncation: f64,
}

fn convolve(planner: &mut FftPlanner<f64>, x: &[Complex64], y: &[Complex64], len: usize) -> Vec<Complex64> {
    let size = (x.len() + y.len()).next_power_of_two();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fx = x.to_vec();
    fx.resize(size, Complex64::new(0.0, 0.0));
    let mut fy = y.to_vec();
    fy.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut fx);
    fwd.process(&mut fy);
    for (p, q) in fx.iter_mut().zip(&fy) {
        *p *= q;
    }
    inv.process(&mut fx);
    let scale = 1.0 / size as f64;
    fx.truncate(len);
    fx.iter().map(|v| v * scale).collect()
}

/// Series solution on [0, u] with grid step `h`.
pub fn sigma_series(chi: &ChiSpec, u: f64, n_max: usize, h: f64) -> Result<SeriesSolution> {
    if n_max < 1 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let n = (u / h).ceil() as usize;
    let kinks = chi.kinks(u + h);
    let kernel = |t: f64| if t <= 1.0 { Complex64::new(0.0, 0.0) } else { (Complex64::new(1.0, 0.0) - chi.eval(t)) / t };
    let (a, b) = cell_moments(kernel, &kinks, h, n + 1);
    // Iₙ[k] = h·Σ_{m=1}^{k} (a_m·I[k−m] + b_m·I[k−m+1])
    let mut a_seq = a[..=n].to_vec();
    a_seq[0] = Complex64::new(0.0, 0.0);
    // b shifted so that index m−1 pairs with I[k−m+1]
    let b_seq: Vec<Complex64> = (0..=n).map(|m| b[m + 1]).collect();

    let mut planner = FftPlanner::new();
    let mut term = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut sigma = term.clone();
    let mut terms = vec![Complex64::new(1.0, 0.0)];
    let mut factorial = 1.0;
    let mut truncation = 0.0;
    for k in 1..=n_max {
        factorial *= k as f64;
        let ca = convolve(&mut planner, &a_seq, &term, n + 1);
        let cb = convolve(&mut planner, &b_seq, &term, n + 1);
        let mut next = vec![Complex64::new(0.0, 0.0); n + 1];
        for i in 1..=n {
            // the convolution also picks up b_{i+1}·I[0], which lies outside [0, u_i]
            next[i] = (ca[i] + cb[i] - b[i + 1] * term[0]) * h;
        }
        // Iₖ vanishes identically below u = k since each tᵢ > 1.
        for (i, v) in next.iter_mut().enumerate() {
            if (i as f64) * h <= k as f64 {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for (s, v) in sigma.iter_mut().zip(&next) {
            *s += v * (sign / factorial);
        }
        truncation = next[n].norm() / factorial;
        terms.push(next[n]);
        term = next;
        if (k as f64) >= u {
            truncation = 0.0;
            break;
        }
    }
    if truncation > 1e-8 {
        return Err(Error::NonConvergence(format!("series truncation estimate {truncation:e} above 1e-8")));
    }
    Ok(SeriesSolution { h, sigma, terms, truncation })
}

/// σ(u) from the series on the default fine grid.
pub fn sigma_series_oracle(chi: &ChiSpec, u: f64, n_max: usize) -> Result<Complex64> {
    let s = sigma_series(chi, u, n_max, ORACLE_STEP)?;
    let k = (u / ORACLE_STEP).round() as usize;
    Ok(s.sigma[k.min(s.sigma.len() - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volterra::solve_sigma;

    #[test]
    fn all_one_has_no_terms() {
        let s = sigma_series(&ChiSpec::all_one(), 4.0, 30, 1.0 / 256.0).unwrap();
        assert!(s.terms[1..].iter().all(|t| t.norm() == 0.0));
        assert!(s.sigma.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn dickman_at_two() {
        let s = sigma_series(&ChiSpec::indicator_01(), 2.0, 30, 1.0 / 2048.0).unwrap();
        assert!((s.terms[1].re - 2f64.ln()).abs() < 1e-7);
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[2].norm(), 0.0);
        assert!((s.sigma[4096].re - (1.0 - 2f64.ln())).abs() < 1e-7);
    }

    #[test]
    fn agrees_with_marching() {
        let chi = ChiSpec::piecewise(
            vec![1.0, 1.7, 3.2],
            vec![Complex64::new(0.1, 0.8), Complex64::new(-0.5, -0.4), Complex64::new(0.9, 0.0)],
        )
        .unwrap();
        let m = solve_sigma(&chi, 5.0, 1.0 / 1024.0).unwrap();
        let s = sigma_series(&chi, 5.0, 30, 1.0 / 4096.0).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..m.values.len() {
            worst = worst.max((m.values[k] - s.sigma[4 * k]).norm());
        }
        assert!(worst < 1e-5, "{worst}");
    }
}
