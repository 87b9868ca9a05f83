//! Right-hand sides of the mean-value and integral-equation bounds.

use crate::arith::build_sieve;
use crate::error::{Error, Result};
use crate::numeric::special::e1_real;
use crate::numeric::sum::pairwise_sum;
use crate::region::{ConvexRegion, RegionConstants};
use crate::volterra::{mt, ChiSpec, Y_RANGE};
use crate::EULER_GAMMA;
use std::sync::OnceLock;

/// Prime bound for the product Π(1 + 2/(p(p−1))).
pub const PRODUCT_PRIME_LIMIT: u64 = 1_000_000;
/// Largest admissible value of κν before the e^{γ−M₀} branch is used.
const KAPPA_NU_ONE: f64 = 1e-9;

/// L·(log(e^γ/L) + 12/7) for 0 < L ≤ e^γ.
pub fn thm1_rhs(l: f64) -> Result<f64> {
    if !(l > 0.0 && l <= EULER_GAMMA.exp() * (1.0 + 1e-15)) {
        return Err(Error::Invalid(format!("L must lie in (0, e^gamma], got {l}")));
    }
    Ok(l * ((EULER_GAMMA.exp() / l).ln() + 12.0 / 7.0))
}

/// Π_{p ≤ 10⁶}(1 + 2/(p(p−1))) and a certified upper bound on the factor from larger primes.
#[derive(Debug, Clone, Copy)]
pub struct PrimeProduct {
    pub value: f64,
    pub tail_factor: f64,
}

pub fn prime_product() -> PrimeProduct {
    static P: OnceLock<PrimeProduct> = OnceLock::new();
    *P.get_or_init(|| {
        let sieve = build_sieve(PRODUCT_PRIME_LIMIT).expect("small sieve");
        let logs: Vec<f64> = sieve
            .primes()
            .iter()
            .map(|&p| {
                let p = p as f64;
                (2.0 / (p * (p - 1.0))).ln_1p()
            })
            .collect();
        // Σ_{n>N} 2/(n(n−1)) = 2/N dominates the sum over primes p > N
        PrimeProduct { value: pairwise_sum(&logs).exp(), tail_factor: (2.0 / PRODUCT_PRIME_LIMIT as f64).exp() }
    })
}

/// (M + 12/7)e^{γ−M} for completely multiplicative f, P·(M + 4/7)e^{γ−M} otherwise.
pub fn cor1_rhs(m: f64, completely_multiplicative: bool) -> f64 {
    if completely_multiplicative {
        (m + 12.0 / 7.0) * (EULER_GAMMA - m).exp()
    } else {
        prime_product().value * (m + 4.0 / 7.0) * (EULER_GAMMA - m).exp()
    }
}

/// exp(−κ(D)·Σ_{p≤x}(1 − Re f(p))/p).
pub fn hall_rhs(kappa: f64, sum: f64) -> Result<f64> {
    if !(sum >= 0.0) {
        return Err(Error::Invalid(format!("the prime sum must be nonnegative, got {sum}")));
    }
    Ok((-kappa * sum).exp())
}

pub fn hall_rhs_region(region: &ConvexRegion, sum: f64) -> Result<f64> {
    hall_rhs(crate::region::kappa(region)?, sum)
}

fn is_unit_branch(c: &RegionConstants) -> bool {
    c.c.is_none() || (c.kappa * c.nu - 1.0).abs() <= KAPPA_NU_ONE
}

/// Upper bound for |σ(u)| when χ takes values in D:
/// ((2−κν)/(1−κν))·exp(−κM₀ − C + γ(1−κν)) − (κν/(1−κν))·exp(−M₀/ν − C/(κν)),
/// or e^{γ−M₀} when κν = 1.
pub fn thm5_rhs(c: &RegionConstants, m0: f64) -> Result<f64> {
    if !(m0 >= -1e-12) {
        return Err(Error::Invalid(format!("M0 must be nonnegative, got {m0}")));
    }
    if is_unit_branch(c) {
        return Ok((EULER_GAMMA - m0).exp());
    }
    let kn = c.kappa * c.nu;
    let main = (2.0 - kn) / (1.0 - kn) * (-c.kappa * m0 - c.c_d + EULER_GAMMA * (1.0 - kn)).exp();
    let second = kn / (1.0 - kn) * (-m0 / c.nu - c.c_d / kn).exp();
    Ok(main - second)
}

/// max(0, κM₀ − κν log(tu) + (1−κν)E₁(tu) + C(D)), a lower bound for M(t).
pub fn prop81_lower(c: &RegionConstants, m0: f64, t: f64, u: f64) -> f64 {
    let kn = c.kappa * c.nu;
    let tu = t * u;
    (c.kappa * m0 - kn * tu.ln() + (1.0 - kn) * e1_real(tu) + c.c_d).max(0.0)
}

/// Grid in s = tu for the integral bound: [S_LO, S_HI], POINTS_PER_DECADE points per decade.
const S_LO: f64 = 1e-8;
const S_HI: f64 = 1e5;
const POINTS_PER_DECADE: usize = 16;

/// The integral upper bound for |σ(u)|,
/// (1/u)∫₀^∞ (1 − e^{−2tu})/t · e^{−M(t)}/t dt = ∫₀^∞ (1 − e^{−2s})/s² · e^{−M(s/u)} ds,
/// by Simpson's rule in log s. The two tails are bounded above: e^{−M} ≤ e^γ s below S_LO
/// (since M ≥ E₁(s) ≥ −log s − γ) and e^{−M} ≤ 1 above S_HI.
pub fn prop31_rhs(chi: &ChiSpec, u: f64) -> Result<f64> {
    if !(u >= 1.0) {
        return Err(Error::Invalid(format!("the integral bound needs u >= 1, got {u}")));
    }
    let decades = (S_HI / S_LO).log10().round() as usize;
    let n = decades * POINTS_PER_DECADE; // even
    let dl = (S_HI / S_LO).ln() / n as f64;
    let vals: Vec<f64> = (0..=n)
        .map(|k| {
            let s = S_LO * (k as f64 * dl).exp();
            let m = mt(chi, u, s / u, Y_RANGE)?;
            // ds = s d(log s)
            Ok(-(-2.0 * s).exp_m1() / s * (-m).exp())
        })
        .collect::<Result<_>>()?;
    let weighted: Vec<f64> = vals
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            w * v
        })
        .collect();
    let body = pairwise_sum(&weighted) * dl / 3.0;
    Ok(body + 2.0 * EULER_GAMMA.exp() * S_LO + 1.0 / S_HI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::region_constants;

    #[test]
    fn thm1_values() {
        assert!((thm1_rhs(1.0).unwrap() - 2.291_501_379_2).abs() < 1e-9);
        assert!((thm1_rhs(EULER_GAMMA.exp()).unwrap() - 3.053_267_002_3).abs() < 1e-9);
        assert!(thm1_rhs(0.0).is_err());
        assert!(thm1_rhs(2.0).is_err());
    }

    #[test]
    fn cor1_values() {
        assert!((cor1_rhs(0.0, true) - 3.053_267_002_3).abs() < 1e-9);
        let p = prime_product();
        assert!(p.value.ln() >= 8.0 / 7.0, "{}", p.value);
        assert!(p.tail_factor - 1.0 < 3e-6);
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let v = cor1_rhs(k as f64 * 0.1, true);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn hall_values() {
        assert_eq!(hall_rhs(0.3, 0.0).unwrap(), 1.0);
        let v = hall_rhs_region(&ConvexRegion::segment_pm1(), 1.0).unwrap();
        assert!((v - (-0.328_674_163_20f64).exp()).abs() < 1e-9, "{v}");
        assert!(hall_rhs(0.3, -1.0).is_err());
    }

    #[test]
    fn thm5_branches() {
        let seg = region_constants(&ConvexRegion::segment01()).unwrap();
        assert!((thm5_rhs(&seg, 0.0).unwrap() - EULER_GAMMA.exp()).abs() < 1e-12);
        let disc = region_constants(&ConvexRegion::disc(0.7).unwrap()).unwrap();
        assert!(thm5_rhs(&disc, 0.0).unwrap() >= 1.0);
        for c in [disc, region_constants(&ConvexRegion::roots_of_unity(3).unwrap()).unwrap()] {
            let mut prev = f64::INFINITY;
            for k in 0..=200 {
                let v = thm5_rhs(&c, k as f64 * 0.1).unwrap();
                assert!(v <= prev && v >= 0.0, "M0 = {}", k as f64 * 0.1);
                prev = v;
            }
        }
    }

    #[test]
    fn integral_bound_for_all_one() {
        // χ ≡ 1: M(t) = E₁(tu) and σ ≡ 1, so the bound must be at least 1
        let v = prop31_rhs(&ChiSpec::all_one(), 2.0).unwrap();
        assert!(v >= 1.0 && v.is_finite(), "{v}");
    }
}
