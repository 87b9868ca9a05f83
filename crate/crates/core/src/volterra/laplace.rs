//! Laplace transforms of gridded functions and of the kernel (1 − χ(v))/v.

use super::chi::{ChiSpec, Piece};
use crate::error::{Error, Result};
use crate::numeric::quad::gl5_complex;
use crate::numeric::special::{e1, e1_diff};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct LaplaceResult {
    pub value: Complex64,
    /// Bound on the neglected ∫_U^∞, assuming |f| stays below its maximum over the last tenth of the grid.
    pub tail: f64,
}

/// ∫_{−1}^{1} ξⁿ e^{−zξ} dξ for n = 0, 1, 2.
fn moments(z: Complex64) -> [Complex64; 3] {
    if z.norm() < 1.0 {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        let mut coef = Complex64::new(1.0, 0.0);
        for j in 0..40 {
            for (n, o) in out.iter_mut().enumerate() {
                if (n + j) % 2 == 0 {
                    *o += coef * (2.0 / (n + j + 1) as f64);
                }
            }
            coef *= -z / (j + 1) as f64;
        }
        return out;
    }
    let (em, ep) = ((-z).exp(), z.exp());
    let sh = (ep - em) * 0.5;
    let ch = (ep + em) * 0.5;
    let m0 = sh * 2.0 / z;
    let m1 = -(z * ch - sh) * 2.0 / (z * z);
    let m2 = ((z * z + 2.0) * sh - z * ch * 2.0) * 2.0 / (z * z * z);
    [m0, m1, m2]
}

/// Filon–Simpson transform ∫₀^U f(t)e^{−st} dt of samples `f` at spacing `h`: f is taken
/// piecewise quadratic on pairs of cells and each piece is integrated exactly against e^{−st}.
pub fn laplace(f: &[Complex64], h: f64, s: Complex64) -> Result<LaplaceResult> {
    if f.len() < 3 {
        return Err(Error::Invalid("laplace needs at least three samples".into()));
    }
    if !(s.re > 0.0) {
        return Err(Error::Invalid("laplace needs Re s > 0".into()));
    }
    let [m0, m1, m2] = moments(s * h);
    // weights for f(−h), f(0), f(h) on [−h, h] with e^{−sx}
    let w_left = (m2 - m1) * 0.5 * h;
    let w_mid = (m0 - m2) * h;
    let w_right = (m2 + m1) * 0.5 * h;
    let n = f.len() - 1;
    let pairs = n / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..pairs {
        let c = (2 * j + 1) as f64 * h;
        let piece = w_left * f[2 * j] + w_mid * f[2 * j + 1] + w_right * f[2 * j + 2];
        acc += piece * (-s * c).exp();
    }
    if n % 2 == 1 {
        // last cell: linear interpolation, exact against the exponential
        let c = (n as f64 - 0.5) * h;
        let [l0, l1, _] = moments(s * h * 0.5);
        let wl = (l0 - l1) * 0.25 * h;
        let wr = (l0 + l1) * 0.25 * h;
        acc += (wl * f[n - 1] + wr * f[n]) * (-s * c).exp();
    }
    let u = n as f64 * h;
    let tail_level = f[n - n / 10..].iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(LaplaceResult { value: acc, tail: tail_level * (-s.re * u).exp() / s.re })
}

/// 𝓛((1 − χ(v))/v, s) = ∫₁^∞ (1 − χ(v))e^{−sv}/v dv in closed form.
pub fn chi_kernel_laplace(chi: &ChiSpec, s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Invalid("kernel transform needs Re s > 0".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    for p in chi.pieces(f64::INFINITY) {
        acc += match p {
            Piece::Const { a, b, c } if b.is_infinite() => (one - c) * e1(s * a),
            Piece::Const { a, b, c } => (one - c) * e1_diff(a, b, s),
            Piece::Twist { a, b, alpha } => {
                let shifted = s - Complex64::new(0.0, alpha);
                if b.is_infinite() {
                    e1(s * a) - e1(shifted * a)
                } else {
                    e1_diff(a, b, s) - e1_diff(a, b, shifted)
                }
            }
            Piece::Sampled { a, b } => {
                let cells = ((b - a) * 64.0).ceil().max(1.0) as usize;
                let dx = (b - a) / cells as f64;
                (0..cells)
                    .map(|i| {
                        let lo = a + dx * i as f64;
                        gl5_complex(|v| (one - chi.eval(v)) * (-s * v).exp() / v, lo, lo + dx)
                    })
                    .sum()
            }
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_function() {
        let h = 1.0 / 64.0;
        let f = vec![Complex64::new(1.0, 0.0); (200.0 / h) as usize + 1];
        let r = laplace(&f, h, Complex64::new(1.0, 0.0)).unwrap();
        assert!((r.value - 1.0).norm() < 1e-10, "{}", r.value);
        assert!(r.tail < 1e-80);
    }

    #[test]
    fn odd_length_uses_linear_cell() {
        let h = 0.01;
        let f: Vec<Complex64> = (0..=1001).map(|k| Complex64::new(k as f64 * h, 0.0)).collect();
        let r = laplace(&f, h, Complex64::new(2.0, 1.0)).unwrap();
        let s = Complex64::new(2.0, 1.0);
        let u = 1001.0 * h;
        let exact = (1.0 - (-s * u).exp() * (s * u + 1.0)) / (s * s);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn moments_branches_agree() {
        let z = Complex64::new(0.6, 0.79);
        let a = moments(z);
        let (em, ep) = ((-z).exp(), z.exp());
        let sh = (ep - em) * 0.5;
        let ch = (ep + em) * 0.5;
        let b0 = sh * 2.0 / z;
        let b1 = -(z * ch - sh) * 2.0 / (z * z);
        let b2 = ((z * z + 2.0) * sh - z * ch * 2.0) * 2.0 / (z * z * z);
        assert!((a[0] - b0).norm() < 1e-14);
        assert!((a[1] - b1).norm() < 1e-14);
        assert!((a[2] - b2).norm() < 1e-13);
    }

    #[test]
    fn dickman_kernel_is_e1() {
        let v = chi_kernel_laplace(&ChiSpec::indicator_01(), Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 0.219_383_934_395_520_3).abs() < 1e-15);
    }
}
