//! Bridges between a multiplicative f and the continuous model: χ_f, the Θ·g decomposition and twists.

use super::mult::MultiplicativeSpec;
use super::sieve::SieveTable;
use super::sums::{partial_sums, theta, weighted_sum};
use crate::error::{Error, Result};
use crate::numeric::sum::pairwise_sum;
use crate::volterra::ChiSpec;
use num_complex::Complex64;
use serde::Serialize;

fn y_power(y: u64, u: f64) -> u64 {
    ((y as f64).powf(u) * (1.0 + 1e-12)).floor() as u64
}

/// χ_f(v) = ϑ(y^v)^{−1} Σ_{p≤y^v} f(p) log p for 1 < v ≤ u, piecewise constant with a break at
/// each log p/log y.
pub fn chi_from_f(f: &MultiplicativeSpec, y: u64, sieve: &SieveTable, u: f64) -> Result<ChiSpec> {
    if y < 2 || !(u >= 1.0) {
        return Err(Error::Invalid(format!("chi_from_f needs y >= 2 and u >= 1, got y={y}, u={u}")));
    }
    let top = y_power(y, u);
    if top > sieve.limit() {
        return Err(Error::Invalid(format!("y^u = {top} exceeds the sieve limit {}", sieve.limit())));
    }
    let one = Complex64::new(1.0, 0.0);
    if let Some(&p) = sieve.primes_upto(y).iter().find(|&&p| f.at_prime_power(p as u64, 1) != one) {
        return Err(Error::Precondition(format!("f({p}) != 1 although {p} <= y")));
    }
    let log_y = (y as f64).ln();
    let mut weight = sieve.theta_cheb(y);
    let mut acc = Complex64::new(weight, 0.0);
    let mut breaks = vec![1.0];
    let mut values = vec![one];
    for &p in sieve.primes_upto(top).iter().skip(sieve.primes_upto(y).len()) {
        let lp = (p as f64).ln();
        weight += lp;
        acc += f.at_prime_power(p as u64, 1) * lp;
        let mut v = acc / weight;
        if v.norm() > 1.0 {
            v /= v.norm();
        }
        breaks.push(lp / log_y);
        values.push(v);
    }
    ChiSpec::piecewise(breaks, values)
}

/// Σ_{y<p≤y^u} (1 − Re f(p))/p.
pub fn prime_distance(f: &MultiplicativeSpec, y: u64, sieve: &SieveTable, u: f64) -> Result<f64> {
    let top = y_power(y, u);
    if top > sieve.limit() {
        return Err(Error::Invalid(format!("y^u = {top} exceeds the sieve limit")));
    }
    let terms: Vec<f64> = sieve
        .primes_upto(top)
        .iter()
        .filter(|&&p| p as u64 > y)
        .map(|&p| (1.0 - f.at_prime_power(p as u64, 1).re) / p as f64)
        .collect();
    Ok(pairwise_sum(&terms))
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop3Record {
    pub x: u64,
    pub y: u64,
    pub theta_y: Complex64,
    pub mean_f: Complex64,
    pub mean_g: Complex64,
    pub residual: f64,
}

/// Compares (1/x)Σf with Θ(f, y)·(1/x)Σg, where g agrees with f above y and is 1 below.
pub fn prop3_decompose(f: &MultiplicativeSpec, sieve: &SieveTable, y: u64) -> Result<Prop3Record> {
    let x = sieve.limit();
    if y < 2 || y * y > x {
        return Err(Error::Invalid(format!("need 2 <= y <= sqrt(x), got y={y}, x={x}")));
    }
    let g = f.trivial_below(y);
    let theta_y = theta(f, sieve, y, 40)?;
    let mean_f = partial_sums(f, sieve, &[x])?[0] / x as f64;
    let mean_g = partial_sums(&g, sieve, &[x])?[0] / x as f64;
    Ok(Prop3Record { x, y, theta_y, mean_f, mean_g, residual: (mean_f - theta_y * mean_g).norm() })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistRecord {
    pub x: u64,
    pub alpha: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// (log(e+|α|)/log x)·exp(Σ_{p≤x}|1−f(p)|/p).
    pub envelope: f64,
}

/// Σ_{n≤x} f(n)n^{iα} against x^{iα}/(1+iα)·Σ_{n≤x} f(n).
pub fn twist_check(f: &MultiplicativeSpec, sieve: &SieveTable, alpha: f64) -> Result<TwistRecord> {
    let x = sieve.limit();
    let log_x = (x as f64).ln();
    if !(alpha.abs() <= log_x) {
        return Err(Error::Invalid(format!("|alpha| must not exceed log x = {log_x}")));
    }
    let lhs = weighted_sum(f, sieve, x, |n| Complex64::from_polar(1.0, alpha * (n as f64).ln()));
    let total = partial_sums(f, sieve, &[x])?[0];
    let rhs = Complex64::from_polar(1.0, alpha * log_x) / Complex64::new(1.0, alpha) * total;
    let dist: Vec<f64> = sieve
        .primes()
        .iter()
        .map(|&p| (Complex64::new(1.0, 0.0) - f.at_prime_power(p as u64, 1)).norm() / p as f64)
        .collect();
    let envelope = (std::f64::consts::E + alpha.abs()).ln() / log_x * pairwise_sum(&dist).exp();
    let residual = (lhs - rhs).norm() / x as f64;
    Ok(TwistRecord { x, alpha, lhs, rhs, residual, envelope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    #[test]
    fn chi_of_one_is_one() {
        let s = build_sieve(10_000).unwrap();
        let chi = chi_from_f(&MultiplicativeSpec::one(), 100, &s, 2.0).unwrap();
        for v in [1.0, 1.3, 1.77, 2.0] {
            assert!((chi.eval(v) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn chi_with_sign_change() {
        let s = build_sieve(10_000).unwrap();
        let chi = chi_from_f(&MultiplicativeSpec::minus_one_above(100), 100, &s, 2.0).unwrap();
        let expect = 2.0 * s.theta_cheb(100) / s.theta_cheb(10_000) - 1.0;
        assert!((chi.eval(2.0).re - expect).abs() < 1e-2);
        assert!((chi.eval(2.0).re + 1.0).abs() < 0.1);
        assert!(chi_from_f(&MultiplicativeSpec::moebius(), 100, &s, 2.0).is_err());
    }

    #[test]
    fn trivial_decomposition_for_one() {
        let s = build_sieve(10_000).unwrap();
        let r = prop3_decompose(&MultiplicativeSpec::one(), &s, 10).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn untwisted_is_exact() {
        let s = build_sieve(10_000).unwrap();
        assert_eq!(twist_check(&MultiplicativeSpec::moebius(), &s, 0.0).unwrap().residual, 0.0);
    }
}
