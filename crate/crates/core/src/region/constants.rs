use super::hbar::{hbar, kappa, kappa_lower_bound, lambda, nu, ray_angle};
use super::ConvexRegion;
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, DEFAULT_TOL};
use crate::numeric::search::bisect;
use crate::EULER_GAMMA;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Below this x the min(0, w)/x integrands are O(x) and contribute nothing measurable.
const X_CUTOFF: f64 = 1e-6;
const SCAN_POINTS: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct RegionConstants {
    pub hbar0: f64,
    pub hbar1: f64,
    pub kappa: f64,
    pub nu: f64,
    pub lambda: f64,
    #[serde(rename = "cD")]
    pub c_d: f64,
    /// The two ε-branches of the minimum defining C(D), before adding −κνγ.
    pub c_d_branches: [f64; 2],
    /// `None` when κν = 1, where the factor is infinite.
    pub c: Option<f64>,
    pub c_prime: Option<f64>,
    pub kappa_lb: f64,
}

/// w_ε(x) = 1 − κ − max_{δ∈D} Re δ(e^{εix} − κ).
fn w(region: &ConvexRegion, kappa: f64, eps: f64, x: f64) -> f64 {
    let big_w = Complex64::from_polar(1.0, eps * x) - kappa;
    1.0 - kappa - big_w.norm() * region.support(-big_w.arg())
}

/// Breakpoints of min(0, w_ε) on (X_CUTOFF, 2π): support kinks and sign changes of w.
fn w_breaks(region: &ConvexRegion, kappa: f64, eps: f64, hi: f64) -> Vec<f64> {
    let k = kappa.min(1.0 - 1e-15);
    let mut breaks: Vec<f64> = region
        .kink_directions()
        .into_iter()
        .map(|psi| (eps * ray_angle(k, -psi)).rem_euclid(TAU))
        .filter(|&x| x > X_CUTOFF && x < hi)
        .collect();
    let step = (hi - X_CUTOFF) / SCAN_POINTS as f64;
    let f = |x: f64| w(region, kappa, eps, x);
    let mut prev_x = X_CUTOFF;
    let mut prev = f(prev_x);
    for i in 1..=SCAN_POINTS {
        let x = if i == SCAN_POINTS { hi } else { X_CUTOFF + step * i as f64 };
        let cur = f(x);
        if (prev < 0.0) != (cur < 0.0) {
            if let Some(r) = bisect(f, prev_x, x, 1e-15) {
                breaks.push(r);
            }
        }
        prev_x = x;
        prev = cur;
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks
}

/// ∫ min(0, w_ε(x))/x dx over (0, 2π], one ε-branch.
fn c_branch(region: &ConvexRegion, kappa: f64, eps: f64) -> Result<f64> {
    let breaks = w_breaks(region, kappa, eps, TAU);
    let q = integrate(|x| w(region, kappa, eps, x).min(0.0) / x, X_CUTOFF, TAU, &breaks, DEFAULT_TOL)?;
    Ok(q.value)
}

/// C(D) = −κνγ + min over ε = ±1 of ∫₀^{2π} min(0, w_ε(x))/x dx, with both branches.
pub fn c_of_d(region: &ConvexRegion, kappa: f64, nu: f64) -> Result<(f64, [f64; 2])> {
    let plus = c_branch(region, kappa, 1.0)?;
    let minus = c_branch(region, kappa, -1.0)?;
    Ok((-kappa * nu * EULER_GAMMA + plus.min(minus), [plus, minus]))
}

/// ((2 − κν)/(1 − κν))·e^γ, or `None` when κν = 1 to within 1e−9.
pub fn c_from_kappa_nu(kappa: f64, nu: f64) -> Option<f64> {
    let kn = kappa * nu;
    if (kn - 1.0).abs() <= 1e-9 {
        None
    } else {
        Some((2.0 - kn) / (1.0 - kn) * EULER_GAMMA.exp())
    }
}

fn c_prime(region: &ConvexRegion, kappa: f64, c: f64) -> Result<f64> {
    let breaks = w_breaks(region, kappa, 1.0, PI);
    let q = integrate(
        |t| w(region, kappa, 1.0, t).min(0.0) / (t * (TAU - t)),
        X_CUTOFF,
        PI,
        &breaks,
        DEFAULT_TOL,
    )?;
    Ok(c * (-TAU * q.value).exp())
}

pub fn region_constants(region: &ConvexRegion) -> Result<RegionConstants> {
    let hbar0 = hbar(region, 0.0)?;
    let hbar1 = hbar(region, 1.0)?;
    let kappa = kappa(region)?;
    let nu = nu(region);
    let (c_d, c_d_branches) = c_of_d(region, kappa, nu)?;
    let c = c_from_kappa_nu(kappa, nu);
    let c_prime = match (region.symmetric(), c) {
        (true, Some(c)) => Some(c_prime(region, kappa, c)?),
        _ => None,
    };
    let out = RegionConstants {
        hbar0,
        hbar1,
        kappa,
        nu,
        lambda: lambda(region),
        c_d,
        c_d_branches,
        c,
        c_prime,
        kappa_lb: kappa_lower_bound(region)?,
    };
    if !(out.kappa * out.nu <= 1.0 + 1e-10) {
        return Err(Error::NonConvergence(format!(
            "{}: kappa*nu = {} exceeds 1",
            region.label(),
            out.kappa * out.nu
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_pm1_c() {
        let k = region_constants(&ConvexRegion::segment_pm1()).unwrap();
        assert!((k.c.unwrap() - 6.978982).abs() < 2e-4);
        assert!((k.c_d_branches[0] - k.c_d_branches[1]).abs() < 1e-10);
    }

    #[test]
    fn segment01_is_the_infinite_case() {
        let k = region_constants(&ConvexRegion::segment01()).unwrap();
        assert!(k.c.is_none());
        assert!(k.c_prime.is_none());
        assert!((k.c_d + EULER_GAMMA).abs() < 1e-12);
    }

    #[test]
    fn roots6_c() {
        let k = region_constants(&ConvexRegion::roots_of_unity(6).unwrap()).unwrap();
        // κ(6) = 0.0445955 from the root of h̄ = 1, hence c = 3.736556.
        assert!((k.c.unwrap() - 3.736_556).abs() < 2e-6, "{:?}", k.c);
    }
}
