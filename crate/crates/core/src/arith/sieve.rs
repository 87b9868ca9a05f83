use crate::error::{Error, Result};

/// Largest supported limit.
pub const MAX_LIMIT: u64 = 100_000_000;
/// Memory allowed for a sieve unless the caller says otherwise.
pub const DEFAULT_BUDGET: usize = 1 << 30;

/// Smallest prime factors of every n ≤ limit.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u32,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Bytes a sieve up to `x` needs.
pub fn sieve_bytes(x: u64) -> usize {
    let prime_guess = if x < 17 { 8 } else { (1.26 * x as f64 / (x as f64).ln()) as usize };
    4 * (x as usize + 1) + 4 * prime_guess
}

pub fn build_sieve(x: u64) -> Result<SieveTable> {
    build_sieve_with_budget(x, DEFAULT_BUDGET)
}

/// Linear sieve: each composite is crossed out once, by its least prime factor.
pub fn build_sieve_with_budget(x: u64, budget: usize) -> Result<SieveTable> {
    if !(2..=MAX_LIMIT).contains(&x) {
        return Err(Error::Invalid(format!("sieve limit must lie in [2, {MAX_LIMIT}], got {x}")));
    }
    let required = sieve_bytes(x);
    if required > budget {
        return Err(Error::Memory { required: required as u64, budget: budget as u64 });
    }
    let n = x as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::with_capacity(required / 4 - (n + 1));
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si || p as usize * i > n {
                break;
            }
            spf[p as usize * i] = p;
        }
    }
    Ok(SieveTable { limit: x as u32, spf, primes })
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes up to `y`.
    pub fn primes_upto(&self, y: u64) -> &[u32] {
        let k = self.primes.partition_point(|&p| (p as u64) <= y);
        &self.primes[..k]
    }

    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Prime factorisation of 2 ≤ n ≤ limit as (p, exponent) pairs in increasing p.
    pub fn factor(&self, mut n: u64) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize];
            let mut k = 0;
            while n % p as u64 == 0 {
                n /= p as u64;
                k += 1;
            }
            out.push((p, k));
        }
        out
    }

    /// ϑ(y) = Σ_{p≤y} log p, summed exactly over the sieve's primes.
    pub fn theta_cheb(&self, y: u64) -> f64 {
        let logs: Vec<f64> = self.primes_upto(y).iter().map(|&p| (p as f64).ln()).collect();
        crate::numeric::sum::pairwise_sum(&logs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let s = build_sieve(10).unwrap();
        let spf: Vec<u32> = (2..=10).map(|n| s.spf(n)).collect();
        assert_eq!(spf, vec![2, 3, 2, 5, 2, 7, 2, 3, 2]);
        assert_eq!(s.primes(), &[2, 3, 5, 7]);
    }

    #[test]
    fn prime_counts() {
        let s = build_sieve(1_000_000).unwrap();
        assert_eq!(s.primes_upto(100).len(), 25);
        assert_eq!(s.primes().len(), 78_498);
        assert_eq!(s.factor(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn budget_and_range() {
        match build_sieve_with_budget(1_000_000, 1000) {
            Err(Error::Memory { required, budget }) => {
                assert!(required > 4_000_000);
                assert_eq!(budget, 1000);
            }
            other => panic!("{other:?}"),
        }
        assert!(build_sieve(1).is_err());
        assert!(build_sieve(MAX_LIMIT + 1).is_err());
    }
}
