use crate::error::{Error, Result};
use crate::region::{ConvexRegion, RegionKind};
use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};
use std::f64::consts::TAU;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Values of χ beyond t = 1.
#[derive(Debug, Clone, PartialEq)]
pub enum ChiRepr {
    /// `values[i]` on `(breaks[i], breaks[i+1]]`; the last value continues to infinity.
    Piecewise { breaks: Vec<f64>, values: Vec<Complex64> },
    /// χ(t) = e^{iαt}.
    Rotation { alpha: f64 },
    /// Linear interpolation of `values` at `start + j·step` on `(start, start + (n−1)·step]`,
    /// `base` elsewhere.
    Patched { base: Box<ChiRepr>, start: f64, step: f64, values: Vec<Complex64> },
}

/// A measurable χ: [0, ∞) → unit disc with χ = 1 on [0, 1].
#[derive(Debug, Clone)]
pub struct ChiSpec {
    repr: ChiRepr,
    region_tag: Option<ConvexRegion>,
    source: Value,
}

/// A maximal interval on which χ is constant or a pure rotation.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Piece {
    Const { a: f64, b: f64, c: Complex64 },
    Twist { a: f64, b: f64, alpha: f64 },
    Sampled { a: f64, b: f64 },
}

impl ChiRepr {
    fn eval(&self, t: f64) -> Complex64 {
        match self {
            ChiRepr::Piecewise { breaks, values } => {
                let i = breaks.partition_point(|&b| b < t);
                values[i.saturating_sub(1)]
            }
            ChiRepr::Rotation { alpha } => Complex64::from_polar(1.0, alpha * t),
            ChiRepr::Patched { base, start, step, values } => {
                let end = start + step * (values.len() - 1) as f64;
                if t > *start && t <= end {
                    let x = (t - start) / step;
                    let j = (x.floor() as usize).min(values.len() - 2);
                    let f = x - j as f64;
                    values[j] * (1.0 - f) + values[j + 1] * f
                } else {
                    base.eval(t)
                }
            }
        }
    }

    fn kinks(&self, upto: f64, out: &mut Vec<f64>) {
        match self {
            ChiRepr::Piecewise { breaks, .. } => out.extend(breaks.iter().copied().filter(|&b| b <= upto)),
            ChiRepr::Rotation { .. } => out.push(1.0),
            ChiRepr::Patched { base, start, step, values } => {
                base.kinks(upto, out);
                for j in 0..values.len() {
                    let t = start + step * j as f64;
                    if t > upto {
                        break;
                    }
                    out.push(t);
                }
            }
        }
    }

    fn pieces(&self, lo: f64, hi: f64, out: &mut Vec<Piece>) {
        if hi <= lo {
            return;
        }
        match self {
            ChiRepr::Piecewise { breaks, values } => {
                for (i, &b0) in breaks.iter().enumerate() {
                    let b1 = breaks.get(i + 1).copied().unwrap_or(f64::INFINITY);
                    let (a, b) = (b0.max(lo), b1.min(hi));
                    if b > a {
                        out.push(Piece::Const { a, b, c: values[i] });
                    }
                }
            }
            ChiRepr::Rotation { alpha } => out.push(Piece::Twist { a: lo, b: hi, alpha: *alpha }),
            ChiRepr::Patched { base, start, step, values } => {
                let end = start + step * (values.len() - 1) as f64;
                base.pieces(lo, hi.min(*start), out);
                let (a, b) = (lo.max(*start), hi.min(end));
                if b > a {
                    out.push(Piece::Sampled { a, b });
                }
                base.pieces(lo.max(end), hi, out);
            }
        }
    }

    fn values_bounded(&self) -> bool {
        let ok = |v: &Complex64| v.norm() <= 1.0 + 1e-12 && v.re.is_finite() && v.im.is_finite();
        match self {
            ChiRepr::Piecewise { values, .. } => values.iter().all(ok),
            ChiRepr::Rotation { alpha } => alpha.is_finite(),
            ChiRepr::Patched { base, values, .. } => values.iter().all(ok) && base.values_bounded(),
        }
    }
}

impl ChiSpec {
    fn build(repr: ChiRepr, source: Value) -> Result<Self> {
        if let ChiRepr::Piecewise { breaks, values } = &repr {
            if breaks.is_empty() || breaks[0] != 1.0 || breaks.len() != values.len() {
                return Err(Error::Invalid(
                    "piecewise chi needs breaks starting at 1 and one value per break".into(),
                ));
            }
            if breaks.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::Invalid("piecewise chi breaks must increase".into()));
            }
        }
        if let ChiRepr::Patched { start, step, values, .. } = &repr {
            if *start < 1.0 || !(*step > 0.0) || values.len() < 2 {
                return Err(Error::Invalid("patch must start at or after 1 with two or more samples".into()));
            }
        }
        if !repr.values_bounded() {
            return Err(Error::Invalid("chi values must lie in the closed unit disc".into()));
        }
        Ok(ChiSpec { repr, region_tag: None, source })
    }

    pub fn piecewise(breaks: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        let source = json!({"piecewise": {
            "breaks": breaks,
            "values": values.iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
        }});
        Self::build(ChiRepr::Piecewise { breaks, values }, source)
    }

    pub fn all_one() -> Self {
        Self::build(ChiRepr::Piecewise { breaks: vec![1.0], values: vec![ONE] }, json!({"preset": "all_one"})).unwrap()
    }

    /// χ = 0 beyond 1; σ is then the Dickman function.
    pub fn indicator_01() -> Self {
        Self::build(
            ChiRepr::Piecewise { breaks: vec![1.0], values: vec![Complex64::new(0.0, 0.0)] },
            json!({"preset": "dickman"}),
        )
        .unwrap()
    }

    /// χ = α beyond 1; σ is then ρ_α.
    pub fn rho_step(alpha: Complex64) -> Result<Self> {
        if !(alpha.re < 1.0) {
            return Err(Error::Invalid(format!("rho_step needs Re alpha < 1, got {alpha}")));
        }
        Self::build(
            ChiRepr::Piecewise { breaks: vec![1.0], values: vec![alpha] },
            json!({"preset": "rho_step", "alpha": [alpha.re, alpha.im]}),
        )
    }

    /// χ(t) = e^{iαt} beyond 1.
    pub fn rotation(alpha: f64) -> Result<Self> {
        Self::build(ChiRepr::Rotation { alpha }, json!({"preset": "rotation", "alpha": alpha}))
    }

    /// 1 on [0, 1], i on (1, u/2], 0 beyond.
    pub fn tenb(u: f64) -> Result<Self> {
        if !(u > 2.0) {
            return Err(Error::Invalid(format!("tenb needs u > 2, got {u}")));
        }
        Self::build(
            ChiRepr::Piecewise {
                breaks: vec![1.0, u / 2.0],
                values: vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
            },
            json!({"preset": "tenb", "u": u}),
        )
    }

    /// Replaces χ on `(start, start + (n−1)·step]` by the linear interpolant of `values`.
    pub fn patched(&self, start: f64, step: f64, values: Vec<Complex64>) -> Result<Self> {
        let source = json!({"patched": {"base": self.source, "start": start, "step": step, "samples": values.len()}});
        let mut out = Self::build(
            ChiRepr::Patched { base: Box::new(self.repr.clone()), start, step, values },
            source,
        )?;
        out.region_tag = None;
        Ok(out)
    }

    /// Attaches a region and verifies that every value of χ lies in it.
    pub fn with_region(mut self, region: ConvexRegion) -> Result<Self> {
        let values: Vec<Complex64> = match &self.repr {
            ChiRepr::Piecewise { values, .. } => values.clone(),
            ChiRepr::Patched { values, .. } => values.clone(),
            ChiRepr::Rotation { .. } => {
                return Err(Error::Invalid("a rotation covers the whole unit circle; no proper region tag".into()))
            }
        };
        let mut all = values;
        all.push(ONE);
        for v in &all {
            for i in 0..256 {
                let psi = TAU * i as f64 / 256.0;
                if v.re * psi.cos() + v.im * psi.sin() > region.support(psi) + 1e-12 {
                    return Err(Error::Invalid(format!("chi value {v} lies outside {}", region.label())));
                }
            }
        }
        if let Value::Object(map) = &mut self.source {
            map.insert("region".into(), serde_json::from_str(&region.to_json()).unwrap());
        }
        self.region_tag = Some(region);
        Ok(self)
    }

    pub fn region_tag(&self) -> Option<&ConvexRegion> {
        self.region_tag.as_ref()
    }

    pub fn repr(&self) -> &ChiRepr {
        &self.repr
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if t <= 1.0 {
            ONE
        } else {
            self.repr.eval(t)
        }
    }

    /// Sorted points in [1, upto] where χ may jump or lose smoothness (always includes 1).
    pub fn kinks(&self, upto: f64) -> Vec<f64> {
        let mut out = vec![1.0];
        self.repr.kinks(upto, &mut out);
        out.retain(|&t| t >= 1.0 && t <= upto);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    pub(crate) fn pieces(&self, hi: f64) -> Vec<Piece> {
        let mut out = Vec::new();
        self.repr.pieces(1.0, hi, &mut out);
        out
    }

    /// The spec as JSON, in the same format accepted by [`ChiSpec::from_json`].
    pub fn to_json(&self) -> Value {
        self.source.clone()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(&serde_json::from_str(text)?)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let complex = |x: &Value| -> Result<Complex64> {
            match x {
                Value::Array(a) if a.len() == 2 => Ok(Complex64::new(
                    a[0].as_f64().ok_or_else(|| Error::Invalid("complex re".into()))?,
                    a[1].as_f64().ok_or_else(|| Error::Invalid("complex im".into()))?,
                )),
                Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap(), 0.0)),
                _ => Err(Error::Invalid(format!("expected [re, im], got {x}"))),
            }
        };
        let spec = if let Some(p) = v.get("piecewise") {
            let breaks: Vec<f64> = serde_json::from_value(p.get("breaks").cloned().unwrap_or(Value::Null))?;
            let values = p
                .get("values")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Invalid("piecewise.values missing".into()))?
                .iter()
                .map(complex)
                .collect::<Result<Vec<_>>>()?;
            Self::piecewise(breaks, values)?
        } else {
            let preset = v
                .get("preset")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Invalid("chi spec needs \"preset\" or \"piecewise\"".into()))?;
            let num = |key: &str| {
                v.get(key)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| Error::Invalid(format!("preset {preset} needs numeric \"{key}\"")))
            };
            match preset {
                "all_one" => Self::all_one(),
                "dickman" | "indicator_01" => Self::indicator_01(),
                "rho_step" => Self::rho_step(complex(
                    v.get("alpha").ok_or_else(|| Error::Invalid("rho_step needs alpha".into()))?,
                )?)?,
                "rotation" => Self::rotation(num("alpha")?)?,
                "tenb" => Self::tenb(num("u")?)?,
                other => return Err(Error::Invalid(format!("unknown chi preset {other:?}"))),
            }
        };
        match v.get("region") {
            Some(r) => spec.with_region(ConvexRegion::new(serde_json::from_value::<RegionKind>(r.clone())?)?),
            None => Ok(spec),
        }
    }

    /// Random piecewise-constant χ with `segments` pieces on [1, end]; values drawn from
    /// `region` when given, else uniformly from the unit disc.
    pub fn random_piecewise<R: Rng>(rng: &mut R, segments: usize, end: f64, region: Option<&ConvexRegion>) -> Result<Self> {
        let mut cuts: Vec<f64> = (1..segments).map(|_| rng.gen_range(1.0..end)).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut breaks = vec![1.0];
        breaks.extend(cuts);
        breaks.dedup();
        let values = (0..breaks.len())
            .map(|_| match region {
                Some(r) => sample_region(rng, r),
                None => uniform_disc(rng, Complex64::new(0.0, 0.0), 1.0),
            })
            .collect();
        let chi = Self::piecewise(breaks, values)?;
        match region {
            Some(r) => chi.with_region(r.clone()),
            None => Ok(chi),
        }
    }
}

fn uniform_disc<R: Rng>(rng: &mut R, centre: Complex64, r: f64) -> Complex64 {
    let rad = r * rng.gen::<f64>().sqrt();
    let v = centre + Complex64::from_polar(rad, TAU * rng.gen::<f64>());
    if v.norm() > 1.0 {
        v / v.norm()
    } else {
        v
    }
}

/// A random point of D.
pub fn sample_region<R: Rng>(rng: &mut R, region: &ConvexRegion) -> Complex64 {
    match region.kind() {
        RegionKind::Disc { r } => {
            // shrink slightly so rounding never leaves the disc
            uniform_disc(rng, Complex64::new(1.0 - r, 0.0), r * (1.0 - 1e-13))
        }
        RegionKind::FullDisc => uniform_disc(rng, Complex64::new(0.0, 0.0), 1.0),
        RegionKind::Sector { .. } => {
            let pts = region.sample_points();
            dirichlet_combination(rng, &pts)
        }
        _ => dirichlet_combination(rng, region.vertices()),
    }
}

fn dirichlet_combination<R: Rng>(rng: &mut R, pts: &[Complex64]) -> Complex64 {
    let w: Vec<f64> = pts.iter().map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    let v = pts.iter().zip(&w).map(|(p, wi)| p * wi).sum::<Complex64>() / total;
    if v.norm() > 1.0 {
        v / v.norm()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn piecewise_eval_convention() {
        let chi = ChiSpec::piecewise(
            vec![1.0, 2.5, 4.0],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.5, 0.5), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        assert_eq!(chi.eval(0.3), ONE);
        assert_eq!(chi.eval(1.0), ONE);
        assert_eq!(chi.eval(2.5), Complex64::new(0.0, 1.0));
        assert_eq!(chi.eval(2.6), Complex64::new(0.5, 0.5));
        assert_eq!(chi.eval(100.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_formats() {
        let a = ChiSpec::from_json(r#"{"preset":"rho_step","alpha":[0.0,1.0]}"#).unwrap();
        assert_eq!(a.eval(3.0), Complex64::new(0.0, 1.0));
        let b = ChiSpec::from_json(r#"{"piecewise":{"breaks":[1,2.5,4],"values":[[0,1],[0.5,0.5],[0,0]]}}"#).unwrap();
        assert_eq!(b.eval(3.0), Complex64::new(0.5, 0.5));
        let c = ChiSpec::from_value(&b.to_json()).unwrap();
        assert_eq!(c.repr(), b.repr());
        assert!(ChiSpec::from_json(r#"{"preset":"nope"}"#).is_err());
        assert!(ChiSpec::from_json(r#"{"piecewise":{"breaks":[1,2],"values":[[2,0],[0,0]]}}"#).is_err());
    }

    #[test]
    fn region_membership_enforced() {
        let d = ConvexRegion::disc(0.7).unwrap();
        assert!(ChiSpec::rho_step(Complex64::new(-0.3, 0.0)).unwrap().with_region(d.clone()).is_ok());
        assert!(ChiSpec::rho_step(Complex64::new(-0.5, 0.0)).unwrap().with_region(d).is_err());
    }

    #[test]
    fn random_values_stay_in_region() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in [ConvexRegion::disc(0.7).unwrap(), ConvexRegion::roots_of_unity(3).unwrap()] {
            for _ in 0..200 {
                let chi = ChiSpec::random_piecewise(&mut rng, 4, 5.0, Some(&r)).unwrap();
                assert!(chi.region_tag().is_some());
            }
        }
    }

    #[test]
    fn patched_interpolates() {
        let base = ChiSpec::tenb(10.0).unwrap();
        let p = base.patched(5.0, 0.5, vec![ONE, Complex64::new(0.0, 1.0), ONE]).unwrap();
        assert_eq!(p.eval(4.0), Complex64::new(0.0, 1.0));
        assert!((p.eval(5.25) - Complex64::new(0.5, 0.5)).norm() < 1e-15);
        assert_eq!(p.eval(6.5), Complex64::new(0.0, 0.0));
        assert!(p.kinks(10.0).contains(&5.5));
    }
}
