//! Exponential integrals in the right half-plane.

use crate::EULER_GAMMA;
use num_complex::Complex64;

const SERIES_RADIUS: f64 = 4.0;

/// Entire function Ein(z) = ∫₀^z (1 − e^{−w})/w dw = Σ_{k≥1} (−1)^{k+1} z^k / (k·k!).
pub fn ein(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        ein_series(z)
    } else {
        Complex64::new(EULER_GAMMA, 0.0) + z.ln() + e1_cf(z)
    }
}

/// E₁(z) = ∫_z^∞ e^{−w}/w dw, principal branch, for Re z ≥ 0 and z ≠ 0.
pub fn e1(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        -Complex64::new(EULER_GAMMA, 0.0) - z.ln() + ein_series(z)
    } else {
        e1_cf(z)
    }
}

/// Real E₁(x) for x > 0.
pub fn e1_real(x: f64) -> f64 {
    e1(Complex64::new(x, 0.0)).re
}

/// ∫_a^b e^{−s v}/v dv for 0 < a ≤ b and Re s ≥ 0; finite also at s = 0.
pub fn e1_diff(a: f64, b: f64, s: Complex64) -> Complex64 {
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    let log_ratio = Complex64::new((b / a).ln(), 0.0);
    if s.norm() * b < SERIES_RADIUS {
        log_ratio - (ein_series(s * b) - ein_series(s * a))
    } else {
        e1(s * a) - e1(s * b)
    }
}

/// Cin(x) = ∫₀^x (1 − cos t)/t dt.
pub fn cin(x: f64) -> f64 {
    ein(Complex64::new(0.0, x)).re
}

/// Sine integral Si(x).
pub fn si(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let v = e1(Complex64::new(0.0, ax)).im + std::f64::consts::FRAC_PI_2;
    v.copysign(x)
}

fn ein_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        term *= -z / k as f64;
        let add = -term / k as f64;
        acc += add;
        if add.norm() <= 1e-17 * acc.norm().max(1e-300) {
            break;
        }
    }
    acc
}

/// Modified Lentz evaluation of E₁(z) = e^{−z}/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + …))))).
fn e1_cf(z: Complex64) -> Complex64 {
    let tiny = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    // Even form: E1(z) = e^{-z} / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - …))).
    let mut b = z + one;
    let mut f = b;
    if f.norm() < tiny {
        f = Complex64::new(tiny, 0.0);
    }
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..5000 {
        let an = -((n * n) as f64);
        b += 2.0;
        d = b + d * an;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = one / d;
        let delta = c * d;
        f *= delta;
        if (delta - one).norm() < 1e-16 {
            break;
        }
    }
    (-z).exp() / f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_reference_values() {
        // E1(1) = 0.219383934395520273677163775460...
        assert!((e1_real(1.0) - 0.219_383_934_395_520_3).abs() < 1e-15);
        // E1(5) = 0.001148295591275325...
        assert!((e1_real(5.0) - 0.001_148_295_591_275_325_8).abs() < 1e-17);
        // E1(0.01) = 4.037929576538113...
        assert!((e1_real(0.01) - 4.037_929_576_538_114).abs() < 1e-13);
    }

    #[test]
    fn si_and_cin_reference_values() {
        // Si(pi) = 1.851937051982466170361...
        assert!((si(std::f64::consts::PI) - 1.851_937_051_982_466).abs() < 1e-14);
        // Si(10) = 1.658347594218874...
        assert!((si(10.0) - 1.658_347_594_218_874).abs() < 1e-13);
        // Cin(1) = 0.239811742000564725943865...
        assert!((cin(1.0) - 0.239_811_742_000_564_7).abs() < 1e-15);
        // Si(100) = 1.562225466889056...
        assert!((si(100.0) - 1.562_225_466_889_056).abs() < 1e-13);
    }

    #[test]
    fn branches_agree_at_switch_radius() {
        for &arg in &[0.0, 0.5, 1.0, 1.5707963] {
            let z = Complex64::from_polar(SERIES_RADIUS, arg);
            let a = -Complex64::new(EULER_GAMMA, 0.0) - z.ln() + ein_series(z);
            let b = e1_cf(z);
            assert!((a - b).norm() < 1e-13, "arg {arg}: {a} vs {b}");
        }
    }

    #[test]
    fn e1_diff_at_zero_is_log() {
        let v = e1_diff(2.0, 6.0, Complex64::new(0.0, 0.0));
        assert!((v.re - 3f64.ln()).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }
}
