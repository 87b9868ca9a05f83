//! Hard assertions for the constant-free integral-equation bounds, run over seeded random χ.

use super::report::BoundReport;
use super::rhs::{cor1_rhs, prop31_rhs, prop81_lower, thm5_rhs};
use crate::error::Result;
use crate::region::{c_of_d, hbar, hbar_closed_form, kappa_lower_bound, lambda, nu, ConvexRegion, RegionConstants};
use crate::volterra::{construction_10b, functionals, m0, mt, sigma_series, solve_sigma, ChiSpec, Y_RANGE};
use crate::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::TAU;

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub cases: usize,
    pub us: Vec<f64>,
    pub h: f64,
    pub segments: usize,
    pub seed: u64,
}

impl HarnessConfig {
    fn u_max(&self) -> f64 {
        self.us.iter().copied().fold(1.0, f64::max)
    }

    fn chi(&self, case: usize, region: Option<&ConvexRegion>) -> Result<ChiSpec> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(case as u64));
        ChiSpec::random_piecewise(&mut rng, self.segments, self.u_max(), region)
    }
}

/// One evaluated (χ, u) case of an inequality lhs ≤ rhs + tol.
struct Case {
    lhs: f64,
    rhs: f64,
    tol: f64,
    context: Value,
}

impl Case {
    fn margin(&self) -> f64 {
        self.rhs + self.tol - self.lhs
    }
}

/// One report per u for the worst case, plus one per failing case.
fn aggregate(name: &str, header: Value, us: &[f64], cases: Vec<Vec<Case>>) -> Vec<BoundReport> {
    let mut out = Vec::new();
    for (k, &u) in us.iter().enumerate() {
        let column: Vec<&Case> = cases.iter().map(|c| &c[k]).collect();
        let failures: Vec<&&Case> = column.iter().filter(|c| !(c.margin() >= 0.0)).collect();
        let worst = column
            .iter()
            .min_by(|a, b| a.margin().partial_cmp(&b.margin()).unwrap_or(std::cmp::Ordering::Less))
            .expect("at least one case");
        let mut ctx = header.clone();
        ctx["u"] = json!(u);
        ctx["cases"] = json!(column.len());
        ctx["failures"] = json!(failures.len());
        ctx["worst"] = worst.context.clone();
        out.push(BoundReport::asserted(name, worst.lhs, worst.rhs, worst.tol, ctx));
        for f in failures {
            let mut ctx = header.clone();
            ctx["u"] = json!(u);
            ctx["case"] = f.context.clone();
            out.push(BoundReport::asserted(name, f.lhs, f.rhs, f.tol, ctx));
        }
    }
    out
}

/// Checks that supplied constants belong to the region: κν ≤ 1, h̄(κ) = 1 when κ < 1, ν and
/// C(D) recomputed from the supplied κ.
pub fn constants_check(region: &ConvexRegion, c: &RegionConstants) -> Result<BoundReport> {
    let hk = hbar(region, c.kappa.min(1.0))?;
    let hbar_ok = if c.kappa < 1.0 { (hk - 1.0).abs() <= 1e-9 } else { hk <= 1.0 + 1e-9 };
    let nu_ok = (nu(region) - c.nu).abs() <= 1e-12;
    let (cd, _) = c_of_d(region, c.kappa, c.nu)?;
    let cd_ok = (cd - c.c_d).abs() <= 1e-9;
    let ok = hbar_ok && nu_ok && cd_ok && c.kappa * c.nu <= 1.0 + 1e-12;
    Ok(BoundReport::check(
        "thm5_constants",
        ok,
        json!({"region": region.label(), "kappa": c.kappa, "nu": c.nu, "cD": c.c_d, "hbar_at_kappa": hk,
               "cD_recomputed": cd}),
    ))
}

/// |σ(u)| ≤ thm5_rhs(M₀(u)) for random χ with values in the region; also covers κν = 1.
pub fn thm5_harness(region: &ConvexRegion, c: &RegionConstants, cfg: &HarnessConfig) -> Result<Vec<BoundReport>> {
    let mut out = vec![constants_check(region, c)?];
    let cases = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let chi = cfg.chi(i, Some(region))?;
            let sol = solve_sigma(&chi, cfg.u_max(), cfg.h)?;
            cfg.us
                .iter()
                .map(|&u| {
                    let m = m0(&chi, u);
                    Ok(Case {
                        lhs: sol.at(u).norm(),
                        rhs: thm5_rhs(c, m.max(0.0))?,
                        tol: 1e-9 + 10.0 * sol.est_error,
                        context: json!({"seed": cfg.seed + i as u64, "chi": chi.to_json(), "M0": m}),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let header = json!({"region": region.label(), "kappa": c.kappa, "h": cfg.h});
    out.extend(aggregate("thm5", header, &cfg.us, cases));
    Ok(out)
}

/// |σ(u)| ≤ (M + 12/7)e^{γ−M} with M the minimum over y; region-tagged χ also get thm5_rhs ≥ 0.
pub fn cor1p_harness(region: Option<(&ConvexRegion, &RegionConstants)>, cfg: &HarnessConfig) -> Result<Vec<BoundReport>> {
    let cases = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let chi = cfg.chi(i, region.map(|r| r.0))?;
            let sol = solve_sigma(&chi, cfg.u_max(), cfg.h)?;
            cfg.us
                .iter()
                .map(|&u| {
                    let fun = functionals(&chi, u)?;
                    let thm5 = match region {
                        Some((_, c)) => Some(thm5_rhs(c, fun.m0.max(0.0))?),
                        None => None,
                    };
                    // a negative Theorem 5 value would make both bounds inconsistent
                    let consistent = thm5.map_or(true, |v| v >= 0.0);
                    Ok(Case {
                        lhs: if consistent { sol.at(u).norm() } else { f64::INFINITY },
                        rhs: cor1_rhs(fun.m, true),
                        tol: 1e-9 + 10.0 * sol.est_error,
                        context: json!({"seed": cfg.seed + i as u64, "chi": chi.to_json(), "M": fun.m,
                                        "y_star": fun.y_star, "thm5_rhs": thm5}),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let label = region.map_or("unit disc".to_string(), |r| r.0.label());
    Ok(aggregate("cor1_prime", json!({"region": label, "h": cfg.h}), &cfg.us, cases))
}

/// |σ(u)| ≤ ∫₀^∞ (1 − e^{−2s})/s² · e^{−M(s/u)} ds.
pub fn prop31_harness(cfg: &HarnessConfig) -> Result<Vec<BoundReport>> {
    let cases = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let chi = cfg.chi(i, None)?;
            let sol = solve_sigma(&chi, cfg.u_max(), cfg.h)?;
            cfg.us
                .iter()
                .map(|&u| {
                    Ok(Case {
                        lhs: sol.at(u).norm(),
                        rhs: prop31_rhs(&chi, u)?,
                        tol: 1e-9 + 10.0 * sol.est_error,
                        context: json!({"seed": cfg.seed + i as u64, "chi": chi.to_json()}),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate("prop31", json!({"h": cfg.h}), &cfg.us, cases))
}

/// Lower bound for M(t) on a log-spaced t grid, for χ with values in the region.
pub fn prop81_harness(region: &ConvexRegion, c: &RegionConstants, cfg: &HarnessConfig, ts: &[f64]) -> Result<Vec<BoundReport>> {
    let cases = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let chi = cfg.chi(i, Some(region))?;
            cfg.us
                .iter()
                .map(|&u| {
                    let m = m0(&chi, u);
                    // the worst t over the grid stands for this (χ, u)
                    let mut worst: Option<Case> = None;
                    for &t in ts {
                        let lower = prop81_lower(c, m, t, u);
                        let value = mt(&chi, u, t, Y_RANGE)?;
                        let case = Case {
                            lhs: lower,
                            rhs: value,
                            tol: 1e-7,
                            context: json!({"seed": cfg.seed + i as u64, "chi": chi.to_json(), "t": t, "M0": m}),
                        };
                        if worst.as_ref().map_or(true, |w| case.margin() < w.margin()) {
                            worst = Some(case);
                        }
                    }
                    worst.ok_or_else(|| Error::Invalid("empty t grid".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let header = json!({"region": region.label(), "t_grid": ts});
    Ok(aggregate("prop81", header, &cfg.us, cases))
}

/// The construction with χ = i on (1, u/2]: the middle integral equals σ̂(u) − σ(u) and
/// exceeds (1/u)∫₀^{u/2}|σ|.
pub fn eq101_harness(us: &[f64]) -> Result<Vec<BoundReport>> {
    let records = us.par_iter().map(|&u| construction_10b(u)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for r in records {
        let tol = 10.0 * (r.sigma.est_error + r.sigma_hat.est_error) + 1e-9;
        let ctx = json!({"u": r.u, "h": r.sigma.h});
        out.push(BoundReport::asserted("eq101_identity", (r.lhs - r.middle).norm(), 0.0, tol, ctx.clone()));
        out.push(BoundReport::asserted("eq101_inequality", r.rhs, r.middle, 1e-9, ctx));
    }
    Ok(out)
}

/// Structural facts about κ, ν, λ and h̄ for each region.
pub fn region_invariants(regions: &[ConvexRegion]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for region in regions {
        let c = crate::region::region_constants(region)?;
        let h0 = hbar(region, 0.0)?;
        let lb = kappa_lower_bound(region)?;
        let mut ok = c.kappa * c.nu <= 1.0 + 1e-10 && c.kappa >= lb - 1e-10;
        ok &= (lambda(region) - TAU * h0).abs() <= 1e-8;
        if c.kappa < 1.0 {
            ok &= (hbar(region, c.kappa)? - 1.0).abs() <= 1e-9;
        }
        let mut closed_gap: f64 = 0.0;
        for a in [0.0, 0.5 * c.kappa, c.kappa] {
            match hbar_closed_form(region, a) {
                Ok(v) => closed_gap = closed_gap.max((v - hbar(region, a)?).abs()),
                Err(Error::NotApplicable(_)) => {}
                Err(e) => return Err(e),
            }
        }
        ok &= closed_gap <= 1e-9;
        out.push(BoundReport::check(
            "region_invariants",
            ok,
            json!({"region": region.label(), "kappa": c.kappa, "kappa_lb": lb, "nu": c.nu,
                   "lambda": c.lambda, "hbar0": h0, "closed_form_gap": closed_gap}),
        ));
    }
    Ok(out)
}

/// sup_{u≤U}|marching − series| ≤ 1e−4 for random χ, and σ(2) = 1 − log 2 for the Dickman χ.
pub fn oracle_harness(cfg: &HarnessConfig) -> Result<Vec<BoundReport>> {
    let u = cfg.u_max();
    let gaps = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let chi = cfg.chi(i, None)?;
            let m = solve_sigma(&chi, u, cfg.h)?;
            let s = sigma_series(&chi, u, 30, cfg.h)?;
            Ok(m.values.iter().zip(&s.sigma).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = gaps.iter().copied().fold(0.0, f64::max);
    let mut out = vec![BoundReport::asserted(
        "oracle_equivalence",
        worst,
        1e-4,
        0.0,
        json!({"cases": cfg.cases, "seed": cfg.seed, "u": u, "h": cfg.h}),
    )];
    let dickman = solve_sigma(&ChiSpec::indicator_01(), 3.0, cfg.h)?;
    let d2 = dickman.at(2.0);
    out.push(BoundReport::asserted(
        "dickman_two",
        (d2.re - (1.0 - 2f64.ln())).abs() + d2.im.abs(),
        1e-6,
        0.0,
        json!({"h": cfg.h}),
    ));
    let one = solve_sigma(&ChiSpec::all_one(), u, cfg.h)?;
    let exact = one.values.iter().all(|v| v.re == 1.0 && v.im == 0.0);
    out.push(BoundReport::check("all_one_exact", exact, json!({"u": u, "h": cfg.h})));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::region_constants;

    fn small() -> HarnessConfig {
        HarnessConfig { cases: 4, us: vec![2.0, 4.0], h: 1.0 / 128.0, segments: 4, seed: 7 }
    }

    #[test]
    fn thm5_holds_and_tampering_is_caught() {
        let d = ConvexRegion::disc(0.7).unwrap();
        let c = region_constants(&d).unwrap();
        let good = thm5_harness(&d, &c, &small()).unwrap();
        assert!(good.iter().all(|r| !r.failed()), "{good:?}");
        let mut bad = c.clone();
        bad.kappa += 1e-3;
        let reps = thm5_harness(&d, &bad, &small()).unwrap();
        assert!(reps.iter().any(|r| r.failed() && r.name == "thm5_constants"));
    }

    #[test]
    fn unit_branch() {
        let s = ConvexRegion::segment01();
        let c = region_constants(&s).unwrap();
        let reps = thm5_harness(&s, &c, &small()).unwrap();
        assert!(reps.iter().all(|r| !r.failed()), "{reps:?}");
    }

    #[test]
    fn identity_of_the_construction() {
        let reps = eq101_harness(&[20.0]).unwrap();
        assert!(reps.iter().all(|r| !r.failed()), "{reps:?}");
    }
}
