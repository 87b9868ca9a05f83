use super::ConvexRegion;
use crate::error::Result;
use crate::numeric::quad::{integrate, DEFAULT_TOL};
use crate::numeric::search::bisect;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Quadrature-level slack when comparing h̄(1) with 1.
const HBAR_SLACK: f64 = 1e-11;

/// Angle θ with e^{iθ} − a pointing along e^{iβ}, for 0 ≤ a < 1 (the forward ray from a).
pub(crate) fn ray_angle(a: f64, beta: f64) -> f64 {
    beta - (a * beta.sin()).clamp(-1.0, 1.0).asin()
}

/// max over δ ∈ D of Re((1 − δ)z).
pub(crate) fn max_re_one_minus_delta(region: &ConvexRegion, z: Complex64) -> f64 {
    let nz = z.norm();
    if nz == 0.0 {
        return 0.0;
    }
    z.re + nz * region.support(-(-z).arg())
}

/// θ-positions in (0, 2π) where the h̄ integrand inherits a kink of the support function.
fn theta_kinks(region: &ConvexRegion, alpha: f64) -> Vec<f64> {
    region
        .kink_directions()
        .into_iter()
        .map(|psi| (-ray_angle(alpha, -psi)).rem_euclid(TAU))
        .collect()
}

/// h̄(α) = (1/2π) ∫₀^{2π} max_{δ∈D} Re((1−δ)(α − e^{−iθ})) dθ.
pub fn hbar(region: &ConvexRegion, alpha: f64) -> Result<f64> {
    let f = |theta: f64| {
        let z = Complex64::new(alpha - theta.cos(), theta.sin());
        max_re_one_minus_delta(region, z)
    };
    let q = integrate(f, 0.0, TAU, &theta_kinks(region, alpha.min(1.0 - 1e-15)), DEFAULT_TOL)?;
    Ok(q.value / TAU)
}

/// Largest α ∈ [0, 1] with h̄(α) ≤ 1.
pub fn kappa(region: &ConvexRegion) -> Result<f64> {
    if hbar(region, 1.0)? <= 1.0 + HBAR_SLACK {
        return Ok(1.0);
    }
    if hbar(region, 0.0)? >= 1.0 {
        return Ok(0.0);
    }
    let mut err = None;
    let root = bisect(
        |a| match hbar(region, a) {
            Ok(v) => v - 1.0,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        },
        0.0,
        1.0,
        1e-13,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(root.expect("h̄ − 1 changes sign on [0, 1]"))
}

/// ν = max over δ ∈ D of (1 − Re δ) = 1 + h_D(π).
pub fn nu(region: &ConvexRegion) -> f64 {
    1.0 + region.support(std::f64::consts::PI)
}

/// Perimeter of D from its geometry (independent of h̄).
pub fn lambda(region: &ConvexRegion) -> f64 {
    region.perimeter()
}

/// The explicit lower bound for κ obtained from convexity of h̄.
pub fn kappa_lower_bound(region: &ConvexRegion) -> Result<f64> {
    let h0 = hbar(region, 0.0)?;
    let h1 = hbar(region, 1.0)?;
    if h1 <= 1.0 + HBAR_SLACK {
        return Ok(1.0);
    }
    Ok(((1.0 - h0) / (h1 - h0)).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ray_angle_hits_circle_along_direction() {
        for &a in &[0.0, 0.3, 0.9] {
            for &b in &[0.2, 1.0, 2.5, -1.7] {
                let th = ray_angle(a, b);
                let d = Complex64::from_polar(1.0, th) - a;
                assert!((d.arg() - b).abs() < 1e-12 || (d.arg() - b).abs() > TAU - 1e-12);
            }
        }
    }

    #[test]
    fn trivial_values() {
        assert!(hbar(&ConvexRegion::point_one(), 0.4).unwrap().abs() < 1e-14);
        assert!((hbar(&ConvexRegion::full_disc(), 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((hbar(&ConvexRegion::segment01(), 0.0).unwrap() - 1.0 / PI).abs() < 1e-12);
        assert!((hbar(&ConvexRegion::segment01(), 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&ConvexRegion::segment01()).unwrap(), 1.0);
        let k = kappa(&ConvexRegion::segment_pm1()).unwrap();
        assert!((k - 0.328_674_163_20).abs() < 1e-9, "{k}");
        let k5 = kappa(&ConvexRegion::roots_of_unity(5).unwrap()).unwrap();
        assert!((k5 - 0.063565).abs() < 1e-5);
        let kd = kappa(&ConvexRegion::disc(0.5).unwrap()).unwrap();
        assert!((kd - 0.822168).abs() < 1e-5);
        assert_eq!(kappa(&ConvexRegion::full_disc()).unwrap(), 0.0);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&ConvexRegion::segment_pm1()), 2.0);
        assert_eq!(nu(&ConvexRegion::segment01()), 1.0);
        assert!((nu(&ConvexRegion::disc(0.3).unwrap()) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn kappa_lower_bound_examples() {
        assert!((kappa_lower_bound(&ConvexRegion::segment01()).unwrap() - 1.0).abs() < 1e-12);
        assert!(kappa_lower_bound(&ConvexRegion::full_disc()).unwrap().abs() < 1e-11);
    }
}
