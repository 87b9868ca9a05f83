//! Adaptive Simpson quadrature with forced breakpoints, plus fixed Gauss–Legendre rules.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Absolute tolerance used by the geometric integrals.
pub const DEFAULT_TOL: f64 = 1e-11;

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 8;

/// Five-point Gauss–Legendre nodes on [-1, 1].
pub const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];

/// Five-point Gauss–Legendre weights on [-1, 1].
pub const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_1,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Simpson<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    evals: usize,
    error: f64,
    failed: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn step(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || depth >= MAX_DEPTH || (m - a) <= f64::EPSILON * m.abs() {
            if delta.abs() > 15.0 * tol {
                self.failed = true;
            }
            self.error += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        self.step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
            + self.step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, splitting first at every
/// breakpoint strictly inside the interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<Quadrature> {
    if b <= a {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let mut nodes = Vec::with_capacity(breaks.len() + 2);
    nodes.push(a);
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    inner.dedup();
    nodes.extend(inner);
    nodes.push(b);

    let total = b - a;
    let mut s = Simpson { f: &f, evals: 0, error: 0.0, failed: false };
    let mut parts = Vec::new();
    for w in nodes.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let panel = (hi - lo) / INITIAL_PANELS as f64;
        let ptol = tol * (hi - lo) / total / INITIAL_PANELS as f64;
        for i in 0..INITIAL_PANELS {
            let pa = lo + panel * i as f64;
            let pb = if i + 1 == INITIAL_PANELS { hi } else { lo + panel * (i + 1) as f64 };
            let fa = f(pa);
            let fb = f(pb);
            let fm = f(0.5 * (pa + pb));
            s.evals += 3;
            let whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
            parts.push(s.step(pa, pb, fa, fm, fb, whole, ptol, 0));
        }
    }
    let value = super::sum::pairwise_sum(&parts);
    if s.failed && s.error > tol {
        return Err(Error::Quadrature { estimate: s.error, tolerance: tol });
    }
    Ok(Quadrature { value, error: s.error, evaluations: s.evals })
}

/// Gauss–Legendre 5-point rule for a complex integrand on `[a, b]`.
pub fn gl5_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64) -> Complex64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += f(c + r * x) * *w;
    }
    acc * r
}

/// Gauss–Legendre 5-point rule for a real integrand on `[a, b]`.
pub fn gl5<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += f(c + r * x) * w;
    }
    acc * r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, &[], 1e-12).unwrap();
        assert!((q.value - 0.0).abs() < 1e-13);
    }

    #[test]
    fn kink_registration() {
        let f = |x: f64| (x - 0.3).abs();
        let exact = 0.5 * 0.09 + 0.5 * 0.49;
        let q = integrate(f, 0.0, 1.0, &[0.3], 1e-12).unwrap();
        assert!((q.value - exact).abs() < 1e-14);
        assert!(q.evaluations < 200);
    }

    #[test]
    fn smooth_oscillatory() {
        let q = integrate(|x| (10.0 * x).cos(), 0.0, std::f64::consts::PI, &[], 1e-11).unwrap();
        assert!((q.value - (10.0 * std::f64::consts::PI).sin() / 10.0).abs() < 1e-11);
    }

    #[test]
    fn gl5_exact_to_degree_nine() {
        let v = gl5(|x| x.powi(9) + x.powi(8), -1.0, 1.0);
        assert!((v - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn non_convergence_is_reported() {
        let r = integrate(|x| if x > 0.0 { 1.0 / x.sqrt().sqrt() } else { 0.0 }, 0.0, 1.0, &[], 1e-15);
        match r {
            Err(Error::Quadrature { estimate, .. }) => assert!(estimate > 1e-15),
            other => panic!("expected a quadrature error, got {other:?}"),
        }
    }
}
