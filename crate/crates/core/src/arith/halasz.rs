//! The y-scans behind M(x, T) and L(x, T).

use super::mult::MultiplicativeSpec;
use super::sieve::SieveTable;
use crate::error::{Error, Result};
use crate::numeric::search::golden_min;
use crate::numeric::sum::{pairwise_sum, pairwise_sum_complex};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct HalaszFunctionals {
    pub x: u64,
    pub t: f64,
    /// min_{|y|≤2T} Σ_{p≤x} (1 − Re f(p)p^{−iy})/p.
    pub m: f64,
    pub y_min: f64,
    /// max_{|y|≤2T} |F(1+iy)| / log x.
    pub l: f64,
    pub y0: f64,
    pub spacing: f64,
    /// F(1+iy) on the scanned grid.
    pub f_at: Vec<(f64, Complex64)>,
}

/// Per-prime data for repeated evaluation at many y.
pub struct PrimeTable {
    log_p: Vec<f64>,
    inv_p: Vec<f64>,
    /// f(pᵏ) for k = 1..; a single entry when f is completely multiplicative.
    powers: Vec<Vec<Complex64>>,
    complete: bool,
}

impl PrimeTable {
    pub fn new(f: &MultiplicativeSpec, sieve: &SieveTable, x: u64) -> Self {
        let primes = sieve.primes_upto(x);
        let complete = f.is_complete();
        let powers = primes
            .iter()
            .map(|&p| {
                let p = p as u64;
                if complete {
                    vec![f.at_prime_power(p, 1)]
                } else {
                    // p^{−k} below 1e−17 is invisible next to the leading terms
                    let k = (39.0 / (p as f64).ln()).ceil() as u32;
                    (1..=k.max(1)).map(|j| f.at_prime_power(p, j)).collect()
                }
            })
            .collect();
        PrimeTable {
            log_p: primes.iter().map(|&p| (p as f64).ln()).collect(),
            inv_p: primes.iter().map(|&p| 1.0 / p as f64).collect(),
            powers,
            complete,
        }
    }

    /// Σ_{p≤x} (1 − Re f(p)p^{−iy})/p.
    pub fn distance(&self, y: f64) -> f64 {
        let terms: Vec<f64> = (0..self.log_p.len())
            .map(|i| (1.0 - (self.powers[i][0] * Complex64::from_polar(1.0, -y * self.log_p[i])).re) * self.inv_p[i])
            .collect();
        pairwise_sum(&terms)
    }

    /// log F(1+iy).
    pub fn log_f(&self, y: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let terms: Vec<Complex64> = (0..self.log_p.len())
            .map(|i| {
                let z = Complex64::from_polar(self.inv_p[i], -y * self.log_p[i]);
                let factor = if self.complete {
                    one / (one - self.powers[i][0] * z)
                } else {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for c in self.powers[i].iter().rev() {
                        acc = (acc + c) * z;
                    }
                    one + acc
                };
                factor.ln()
            })
            .collect();
        pairwise_sum_complex(&terms)
    }
}

struct Scan {
    m: (f64, f64),
    l: (f64, f64),
    f_at: Vec<(f64, Complex64)>,
    coarse: bool,
}

fn scan(table: &PrimeTable, t: f64, spacing: f64) -> Scan {
    let half = 2.0 * t;
    let n = (half / spacing).ceil() as i64;
    let step = half / n as f64;
    let grid: Vec<f64> = (-n..=n).map(|k| k as f64 * step).collect();
    let evals: Vec<(f64, Complex64)> = grid.par_iter().map(|&y| (table.distance(y), table.log_f(y))).collect();
    let mut best_m = 0;
    let mut best_l = 0;
    for i in 0..evals.len() {
        if evals[i].0 < evals[best_m].0 {
            best_m = i;
        }
        if evals[i].1.re > evals[best_l].1.re {
            best_l = i;
        }
    }
    let refine = |i: usize, g: &dyn Fn(f64) -> f64| -> ((f64, f64), bool) {
        let (lo, hi) = ((grid[i] - step).max(-half), (grid[i] + step).min(half));
        let (y, v) = golden_min(g, lo, hi, 1e-9);
        let edge = 1e-3 * step;
        let stuck = ((y - lo).abs() < edge && lo > -half) || ((hi - y).abs() < edge && hi < half);
        (if v < g(grid[i]) { (y, v) } else { (grid[i], g(grid[i])) }, stuck)
    };
    let (m, stuck_m) = refine(best_m, &|y| table.distance(y));
    let (l, stuck_l) = refine(best_l, &|y| -table.log_f(y).re);
    Scan {
        m,
        l: (l.0, -l.1),
        f_at: grid.iter().zip(&evals).map(|(&y, e)| (y, e.1.exp())).collect(),
        coarse: stuck_m || stuck_l,
    }
}

pub fn halasz_functionals(f: &MultiplicativeSpec, sieve: &SieveTable, t: f64) -> Result<HalaszFunctionals> {
    halasz_functionals_at(f, sieve, sieve.limit(), t)
}

/// Scans y ∈ [−2T, 2T] with spacing min(0.01, 1/(4 log x)) and refines both extrema.
pub fn halasz_functionals_at(f: &MultiplicativeSpec, sieve: &SieveTable, x: u64, t: f64) -> Result<HalaszFunctionals> {
    if !(t >= 1.0) {
        return Err(Error::Invalid(format!("T must be at least 1, got {t}")));
    }
    if x > sieve.limit() || x < 3 {
        return Err(Error::Invalid(format!("x = {x} outside [3, sieve limit]")));
    }
    let log_x = (x as f64).ln();
    let table = PrimeTable::new(f, sieve, x);
    let mut spacing = (0.01f64).min(1.0 / (4.0 * log_x));
    for _ in 0..2 {
        let s = scan(&table, t, spacing);
        if !s.coarse {
            return Ok(HalaszFunctionals {
                x,
                t,
                m: s.m.1,
                y_min: s.m.0,
                l: s.l.1.exp() / log_x,
                y0: s.l.0,
                spacing,
                f_at: s.f_at,
            });
        }
        spacing /= 2.0;
    }
    Err(Error::NonConvergence("y-grid too coarse even after halving".into()))
}
