use super::mult::MultiplicativeSpec;
use super::sieve::SieveTable;
use crate::error::{Error, Result};
use crate::numeric::sum::{pairwise_map, pairwise_sum_complex};
use num_complex::Complex64;
use rayon::prelude::*;

const LN_1E30: f64 = 69.077_552_789_821_37;

/// Block length for partial sums; S(c) is the running total of pairwise block sums.
const BLOCK: u64 = 1 << 16;

/// S(c) = Σ_{n≤c} f(n) at each checkpoint. The summation order depends only on c, so S(c) is
/// bit-identical whichever other checkpoints are requested.
pub fn partial_sums(f: &MultiplicativeSpec, sieve: &SieveTable, checkpoints: &[u64]) -> Result<Vec<Complex64>> {
    if let Some(&c) = checkpoints.iter().find(|&&c| c > sieve.limit()) {
        return Err(Error::Invalid(format!("checkpoint {c} beyond the sieve limit {}", sieve.limit())));
    }
    let top = checkpoints.iter().copied().max().unwrap_or(0);
    let term = |n: usize| f.eval(sieve, n as u64);
    let full = (top / BLOCK) as usize;
    let blocks: Vec<Complex64> = (0..full)
        .into_par_iter()
        .map(|b| pairwise_map(b * BLOCK as usize + 1, (b + 1) * BLOCK as usize + 1, &term))
        .collect();
    let mut prefix = Vec::with_capacity(full + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    for b in &blocks {
        let last = *prefix.last().unwrap();
        prefix.push(last + b);
    }
    Ok(checkpoints
        .iter()
        .map(|&c| {
            let k = (c / BLOCK) as usize;
            prefix[k] + pairwise_map(k * BLOCK as usize + 1, c as usize + 1, &term)
        })
        .collect())
}

/// Σ_{n≤x} f(n)·w(n) summed pairwise.
pub fn weighted_sum<W: Fn(u64) -> Complex64 + Sync>(f: &MultiplicativeSpec, sieve: &SieveTable, x: u64, w: W) -> Complex64 {
    pairwise_map(1, x as usize + 1, &|n: usize| f.eval(sieve, n as u64) * w(n as u64))
}

/// Σ_{k≥0} f(pᵏ)p^{−ks}; geometric in closed form for completely multiplicative f, else the
/// series up to k = max(kmax, K) with p^{−K} < 10^{−30}.
pub fn euler_factor(f: &MultiplicativeSpec, p: u64, s: Complex64, kmax: u32) -> Complex64 {
    let z = if s == Complex64::new(1.0, 0.0) { Complex64::new(1.0 / p as f64, 0.0) } else { (-s * (p as f64).ln()).exp() };
    let one = Complex64::new(1.0, 0.0);
    if f.is_complete() {
        return one / (one - f.at_prime_power(p, 1) * z);
    }
    let k_full = (LN_1E30 / (p as f64).ln()).ceil() as u32;
    let mut acc = one;
    let mut zk = one;
    for k in 1..=kmax.max(k_full) {
        zk *= z;
        acc += f.at_prime_power(p, k) * zk;
    }
    acc
}

fn check_kmax(kmax: u32) -> Result<()> {
    if kmax < 20 {
        return Err(Error::Invalid(format!("kmax must be at least 20, got {kmax}")));
    }
    Ok(())
}

/// Θ(f, x) = Π_{p≤x} (Σ_k f(pᵏ)/pᵏ)(1 − 1/p).
pub fn theta(f: &MultiplicativeSpec, sieve: &SieveTable, x: u64, kmax: u32) -> Result<Complex64> {
    check_kmax(kmax)?;
    if x > sieve.limit() {
        return Err(Error::Invalid(format!("x = {x} beyond the sieve limit")));
    }
    let s = Complex64::new(1.0, 0.0);
    let mut prod = Complex64::new(1.0, 0.0);
    for &p in sieve.primes_upto(x) {
        let p = p as u64;
        let q = 1.0 - 1.0 / p as f64;
        prod *= if f.is_complete() {
            // exactly 1 whenever f(p) = 1
            q / (1.0 - f.at_prime_power(p, 1) / p as f64)
        } else {
            euler_factor(f, p, s, kmax) * q
        };
    }
    Ok(prod)
}

/// F(s) = Π_{p≤x} Σ_k f(pᵏ)p^{−ks}.
pub fn euler_f(f: &MultiplicativeSpec, sieve: &SieveTable, x: u64, s: Complex64, kmax: u32) -> Result<Complex64> {
    check_kmax(kmax)?;
    if !(s.re >= 1.0) {
        return Err(Error::Invalid(format!("F(s) needs Re s >= 1, got {s}")));
    }
    if x > sieve.limit() {
        return Err(Error::Invalid(format!("x = {x} beyond the sieve limit")));
    }
    let logs: Vec<Complex64> = sieve.primes_upto(x).iter().map(|&p| euler_factor(f, p as u64, s, kmax).ln()).collect();
    Ok(pairwise_sum_complex(&logs).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    #[test]
    fn small_partial_sums() {
        let s = build_sieve(1000).unwrap();
        let one = partial_sums(&MultiplicativeSpec::one(), &s, &[10, 1000, 1]).unwrap();
        assert_eq!(one, vec![Complex64::new(10.0, 0.0), Complex64::new(1000.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(partial_sums(&MultiplicativeSpec::moebius(), &s, &[10]).unwrap()[0].re, -1.0);
        assert_eq!(partial_sums(&MultiplicativeSpec::liouville(), &s, &[10]).unwrap()[0].re, 0.0);
        assert!(partial_sums(&MultiplicativeSpec::one(), &s, &[1001]).is_err());
    }

    #[test]
    fn theta_closed_products() {
        let s = build_sieve(1000).unwrap();
        assert!((theta(&MultiplicativeSpec::one(), &s, 1000, 20).unwrap() - 1.0).norm() < 1e-13);
        let mu = theta(&MultiplicativeSpec::moebius(), &s, 100, 20).unwrap();
        let direct: f64 = s.primes_upto(100).iter().map(|&p| (1.0 - 1.0 / p as f64).powi(2)).product();
        assert!((mu.re - direct).abs() < 1e-12 && mu.im == 0.0);
        let la = theta(&MultiplicativeSpec::liouville(), &s, 1000, 20).unwrap();
        let direct: f64 = s.primes().iter().map(|&p| (1.0 - 1.0 / p as f64) / (1.0 + 1.0 / p as f64)).product();
        assert!((la.re - direct).abs() < 1e-12);
        assert!(theta(&MultiplicativeSpec::one(), &s, 1000, 5).is_err());
    }
}
