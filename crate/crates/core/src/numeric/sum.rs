//! Fixed-order pairwise summation.
//!
//! The reduction tree depends only on the slice length, so a parallel evaluation
//! that follows the same tree produces bit-identical results.

use num_complex::Complex64;

const LEAF: usize = 256;
const PAR_MIN: usize = 1 << 16;

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= LEAF {
        let mut acc = Complex64::new(0.0, 0.0);
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

/// Same tree as [`pairwise_sum_complex`], with large halves evaluated on the rayon pool.
pub fn par_pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() < PAR_MIN {
        return pairwise_sum_complex(xs);
    }
    let mid = xs.len() / 2;
    let (a, b) = rayon::join(|| par_pairwise_sum_complex(&xs[..mid]), || par_pairwise_sum_complex(&xs[mid..]));
    a + b
}

/// Pairwise sum of `f(i)` for `i` in `lo..hi`, without materialising the terms.
pub fn pairwise_map<F: Fn(usize) -> Complex64 + Sync>(lo: usize, hi: usize, f: &F) -> Complex64 {
    let n = hi.saturating_sub(lo);
    if n <= LEAF {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += f(i);
        }
        return acc;
    }
    let mid = lo + n / 2;
    if n >= PAR_MIN {
        let (a, b) = rayon::join(|| pairwise_map(lo, mid, f), || pairwise_map(mid, hi, f));
        a + b
    } else {
        pairwise_map(lo, mid, f) + pairwise_map(mid, hi, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_exact_integers() {
        let xs: Vec<f64> = (1..=10_000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 50_005_000.0);
    }

    #[test]
    fn parallel_is_bit_identical() {
        let xs: Vec<Complex64> = (0..300_000)
            .map(|i| Complex64::new((i as f64).sin() / 3.0, (i as f64 * 0.7).cos() / 7.0))
            .collect();
        let a = pairwise_sum_complex(&xs);
        let b = par_pairwise_sum_complex(&xs);
        let c = pairwise_map(0, xs.len(), &|i| xs[i]);
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
        assert_eq!(a.re.to_bits(), c.re.to_bits());
        assert_eq!(a.im.to_bits(), c.im.to_bits());
    }
}
