//! M₀, M(u) and M(t): the integrals of (1 − Re χ(v)e^{−ivy})e^{−tv}/v that control |σ(u)|.

use super::chi::{ChiSpec, Piece};
use crate::error::{Error, Result};
use crate::numeric::quad::GL5_NODES;
use crate::numeric::quad::GL5_WEIGHTS;
use crate::numeric::search::golden_min;
use crate::numeric::special::{e1_diff, e1_real, ein};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Default half-width of the y range searched for the minimum.
pub const Y_RANGE: f64 = 64.0;
const DOUBLINGS: usize = 4;
const REFINE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Functionals {
    pub m0: f64,
    pub m: f64,
    pub y_star: f64,
}

/// J_t(y) = ∫₀^u (1 − Re χ(v)e^{−ivy}) e^{−tv}/v dv, piece by piece in closed form.
pub fn damped_j(chi: &ChiSpec, u: f64, t: f64, y: f64) -> f64 {
    let s = Complex64::new(t, y);
    let tc = Complex64::new(t, 0.0);
    let mut acc = (ein(s) - ein(tc)).re;
    if u <= 1.0 {
        // only part of [0, 1]: subtract the piece beyond u
        return acc - (e1_diff(u, 1.0, tc) - e1_diff(u, 1.0, s)).re;
    }
    for p in chi.pieces(u) {
        acc += match p {
            Piece::Const { a, b, c } => e1_diff(a, b, tc).re - (c * e1_diff(a, b, s)).re,
            Piece::Twist { a, b, alpha } => (e1_diff(a, b, tc) - e1_diff(a, b, s - Complex64::new(0.0, alpha))).re,
            Piece::Sampled { a, b } => sampled(chi, a, b, t, y),
        };
    }
    acc
}

fn sampled(chi: &ChiSpec, a: f64, b: f64, t: f64, y: f64) -> f64 {
    let mut cuts = vec![a];
    cuts.extend(chi.kinks(b).into_iter().filter(|&k| k > a && k < b));
    cuts.push(b);
    let f = |v: f64| (1.0 - (chi.eval(v) * Complex64::from_polar(1.0, -v * y)).re) * (-t * v).exp() / v;
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let cells = ((w[1] - w[0]) * 64.0 * (1.0 + y.abs() / 16.0)).ceil().max(1.0) as usize;
        let dx = (w[1] - w[0]) / cells as f64;
        for i in 0..cells {
            let c = w[0] + dx * (i as f64 + 0.5);
            acc += GL5_NODES.iter().zip(GL5_WEIGHTS.iter()).map(|(x, wt)| wt * f(c + 0.5 * dx * x)).sum::<f64>() * 0.5 * dx;
        }
    }
    acc
}

/// M₀(u) = J₀(0) = ∫₀^u (1 − Re χ(v))/v dv.
pub fn m0(chi: &ChiSpec, u: f64) -> f64 {
    damped_j(chi, u, 0.0, 0.0)
}

/// Minimises y ↦ J_t(y) over [−y_max, y_max] (doubled on boundary hits); returns (y*, J_t(y*)).
pub fn minimize_j(chi: &ChiSpec, u: f64, t: f64, y_max: f64) -> Result<(f64, f64)> {
    let step = PI / (4.0 * u.max(1.0));
    let mut range = y_max;
    for _ in 0..=DOUBLINGS {
        let n = (range / step).ceil() as i64;
        let mut best = (0.0, f64::INFINITY);
        for k in -n..=n {
            let y = k as f64 * step;
            let v = damped_j(chi, u, t, y);
            if v < best.1 {
                best = (y, v);
            }
        }
        if best.0.abs() >= (n as f64 - 0.5) * step {
            range *= 2.0;
            continue;
        }
        let (y, v) = golden_min(|y| damped_j(chi, u, t, y), best.0 - step, best.0 + step, REFINE_TOL);
        return Ok(if v < best.1 { (y, v) } else { best });
    }
    Err(Error::NonConvergence(format!("minimum over y still at the edge of ±{range}")))
}

pub fn functionals(chi: &ChiSpec, u: f64) -> Result<Functionals> {
    functionals_with_range(chi, u, Y_RANGE)
}

pub fn functionals_with_range(chi: &ChiSpec, u: f64, y_max: f64) -> Result<Functionals> {
    if !(u >= 1.0) {
        return Err(Error::Invalid(format!("functionals need u >= 1, got {u}")));
    }
    let (y_star, m) = minimize_j(chi, u, 0.0, y_max)?;
    Ok(Functionals { m0: m0(chi, u), m, y_star })
}

/// M(t) = ∫_u^∞ e^{−tv}/v dv + min_y J_t(y).
pub fn mt(chi: &ChiSpec, u: f64, t: f64, y_max: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Invalid(format!("M(t) needs t > 0, got {t}")));
    }
    Ok(e1_real(t * u) + minimize_j(chi, u, t, y_max)?.1)
}
