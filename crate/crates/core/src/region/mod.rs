//! Closed convex subsets of the unit disc containing 1, described by their support functions.

mod closed_form;
mod constants;
mod hbar;

pub use closed_form::hbar_closed_form;
pub use constants::{c_from_kappa_nu, c_of_d, region_constants, RegionConstants};
pub use hbar::{hbar, kappa, kappa_lower_bound, lambda, nu};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Parametrised family of a region. Serialises as e.g. `{"kind":"disc","r":0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionKind {
    Segment01,
    SegmentPm1,
    RootsOfUnity { m: u32 },
    Disc { r: f64 },
    Sector { phi: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    FullDisc,
    PointOne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexRegion {
    kind: RegionKind,
    /// Hull vertices in counter-clockwise order, for polygonal kinds.
    hull: Vec<Complex64>,
    symmetric: bool,
}

impl ConvexRegion {
    pub fn new(kind: RegionKind) -> Result<Self> {
        let (hull, symmetric) = match &kind {
            RegionKind::Segment01 => (vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], true),
            RegionKind::SegmentPm1 => (vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)], true),
            RegionKind::PointOne => (vec![Complex64::new(1.0, 0.0)], true),
            RegionKind::FullDisc => (Vec::new(), true),
            RegionKind::RootsOfUnity { m } => {
                if *m < 2 {
                    return Err(Error::Invalid(format!("roots_of_unity needs m >= 2, got {m}")));
                }
                let pts = (0..*m).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / *m as f64)).collect();
                (pts, true)
            }
            RegionKind::Disc { r } => {
                if !(*r > 0.0 && *r <= 1.0) {
                    return Err(Error::Invalid(format!("disc radius must lie in (0, 1], got {r}")));
                }
                (Vec::new(), true)
            }
            RegionKind::Sector { phi } => {
                if !(*phi > 0.0 && *phi <= PI) {
                    return Err(Error::Invalid(format!("sector angle must lie in (0, pi], got {phi}")));
                }
                (Vec::new(), true)
            }
            RegionKind::Polygon { vertices } => {
                let pts: Vec<Complex64> = vertices.iter().map(|v| Complex64::new(v[0], v[1])).collect();
                if pts.iter().any(|p| !p.re.is_finite() || !p.im.is_finite() || p.norm() > 1.0 + 1e-12) {
                    return Err(Error::Invalid("polygon vertices must lie in the closed unit disc".into()));
                }
                let hull = convex_hull(&pts);
                if hull.is_empty() {
                    return Err(Error::Invalid("polygon needs at least one vertex".into()));
                }
                (hull, false)
            }
        };
        let mut region = ConvexRegion { kind, hull, symmetric };
        if let RegionKind::Polygon { .. } = region.kind {
            if !contains_one(&region.hull) {
                return Err(Error::Invalid("region must contain the point 1".into()));
            }
            region.symmetric = (0..64).all(|i| {
                let psi = TAU * i as f64 / 64.0 + 0.1;
                (region.support(psi) - region.support(-psi)).abs() <= 1e-12
            });
        }
        Ok(region)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(serde_json::from_str(text)?)
    }

    pub fn segment01() -> Self {
        Self::new(RegionKind::Segment01).unwrap()
    }
    pub fn segment_pm1() -> Self {
        Self::new(RegionKind::SegmentPm1).unwrap()
    }
    pub fn roots_of_unity(m: u32) -> Result<Self> {
        Self::new(RegionKind::RootsOfUnity { m })
    }
    pub fn disc(r: f64) -> Result<Self> {
        Self::new(RegionKind::Disc { r })
    }
    pub fn sector(phi: f64) -> Result<Self> {
        Self::new(RegionKind::Sector { phi })
    }
    pub fn polygon(vertices: &[[f64; 2]]) -> Result<Self> {
        Self::new(RegionKind::Polygon { vertices: vertices.to_vec() })
    }
    pub fn full_disc() -> Self {
        Self::new(RegionKind::FullDisc).unwrap()
    }
    pub fn point_one() -> Self {
        Self::new(RegionKind::PointOne).unwrap()
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Vertices of the hull for polygonal kinds; empty otherwise.
    pub fn vertices(&self) -> &[Complex64] {
        &self.hull
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.kind).expect("region kinds serialise")
    }

    /// Short stable label used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            RegionKind::Segment01 => "segment01".into(),
            RegionKind::SegmentPm1 => "segment_pm1".into(),
            RegionKind::RootsOfUnity { m } => format!("roots_of_unity({m})"),
            RegionKind::Disc { r } => format!("disc({r})"),
            RegionKind::Sector { phi } => format!("sector({phi})"),
            RegionKind::Polygon { .. } => format!("polygon({})", self.hull.len()),
            RegionKind::FullDisc => "full_disc".into(),
            RegionKind::PointOne => "point_one".into(),
        }
    }

    /// h_D(ψ) = max over δ ∈ D of Re(δ e^{−iψ}).
    pub fn support(&self, psi: f64) -> f64 {
        match &self.kind {
            RegionKind::Disc { r } => (1.0 - r) * psi.cos() + r,
            RegionKind::FullDisc => 1.0,
            RegionKind::Sector { phi } => {
                let p = wrap_pi(psi).abs();
                if p >= *phi {
                    1.0
                } else {
                    p.cos().max((phi - p).cos())
                }
            }
            RegionKind::RootsOfUnity { m } => {
                let step = TAU / *m as f64;
                let k = (psi / step).round();
                (psi - k * step).cos()
            }
            _ => {
                let (c, s) = (psi.cos(), psi.sin());
                self.hull.iter().map(|v| v.re * c + v.im * s).fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    /// Directions ψ in (−π, π] where the support function fails to be smooth.
    pub fn kink_directions(&self) -> Vec<f64> {
        match &self.kind {
            RegionKind::Disc { .. } | RegionKind::FullDisc | RegionKind::PointOne => Vec::new(),
            RegionKind::Sector { phi } => {
                let mut v = vec![phi / 2.0, -phi / 2.0];
                if *phi < PI {
                    v.push(*phi);
                    v.push(-phi);
                }
                v
            }
            RegionKind::RootsOfUnity { m } => {
                (0..*m).map(|k| wrap_pi(PI * (2 * k + 1) as f64 / *m as f64)).collect()
            }
            _ => {
                let n = self.hull.len();
                if n < 2 {
                    return Vec::new();
                }
                let mut dirs = Vec::with_capacity(n);
                for i in 0..n {
                    let a = self.hull[i];
                    let b = self.hull[(i + 1) % n];
                    let e = b - a;
                    // outward normal of a counter-clockwise edge
                    dirs.push(Complex64::new(e.im, -e.re).arg());
                }
                dirs
            }
        }
    }

    /// Perimeter of D computed from its geometric description.
    pub fn perimeter(&self) -> f64 {
        match &self.kind {
            RegionKind::Disc { r } => TAU * r,
            RegionKind::FullDisc => TAU,
            RegionKind::Sector { phi } => {
                let chord = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, *phi)).norm();
                2.0 * chord + 2.0 * (PI - phi)
            }
            _ => {
                let n = self.hull.len();
                if n < 2 {
                    return 0.0;
                }
                if n == 2 {
                    return 2.0 * (self.hull[1] - self.hull[0]).norm();
                }
                (0..n).map(|i| (self.hull[(i + 1) % n] - self.hull[i]).norm()).sum()
            }
        }
    }

    /// Deterministic finite subset of D (boundary and interior points).
    pub fn sample_points(&self) -> Vec<Complex64> {
        match &self.kind {
            RegionKind::Disc { r } => {
                let c = 1.0 - r;
                let mut v = vec![Complex64::new(1.0, 0.0), Complex64::new(c, 0.0)];
                for k in 1..8 {
                    v.push(Complex64::new(c, 0.0) + Complex64::from_polar(*r, TAU * k as f64 / 8.0));
                }
                v
            }
            RegionKind::FullDisc => {
                let mut v = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
                for k in 1..8 {
                    v.push(Complex64::from_polar(1.0, TAU * k as f64 / 8.0));
                }
                v
            }
            RegionKind::Sector { phi } => {
                let mut v = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
                for k in 0..=4 {
                    let t = phi + (PI - phi) * k as f64 / 4.0;
                    v.push(Complex64::from_polar(1.0, t));
                    if k > 0 && k < 4 {
                        v.push(Complex64::from_polar(1.0, -t));
                    }
                }
                if *phi < PI {
                    v.push(Complex64::from_polar(1.0, -phi));
                }
                v
            }
            _ => {
                let mut v = self.hull.clone();
                let n = v.len();
                if n >= 2 {
                    let centroid = v.iter().sum::<Complex64>() / n as f64;
                    v.push(centroid);
                    for i in 0..n {
                        v.push(0.5 * (self.hull[i] + self.hull[(i + 1) % n]));
                    }
                }
                v
            }
        }
    }

    /// True when the point lies in D up to `tol`, tested against the support function.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        (0..256).all(|i| {
            let psi = TAU * i as f64 / 256.0;
            let v = z.re * psi.cos() + z.im * psi.sin();
            v <= self.support(psi) + tol
        }) && z.norm() <= 1.0 + tol
    }
}

/// Reduces an angle to (−π, π].
pub fn wrap_pi(x: f64) -> f64 {
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    y
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    pts.dedup_by(|a, b| (*a - *b).norm() < 1e-15);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-15 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-15 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn contains_one(hull: &[Complex64]) -> bool {
    let one = Complex64::new(1.0, 0.0);
    match hull.len() {
        0 => false,
        1 => (hull[0] - one).norm() <= 1e-12,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let ab = b - a;
            let t = ((one - a) * ab.conj()).re / ab.norm_sqr();
            (-1e-12..=1.0 + 1e-12).contains(&t) && (a + ab * t - one).norm() <= 1e-12
        }
        n => (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], one) >= -1e-12),
    }
}
