//! The verification suite: every assertable check, the report-only envelopes, and the golden file.

use super::arith_reports::{
    cor1_report, euler_ratio_check, exact_sums_check, hall_report, lipschitz_report, prop2_report, prop3_report,
    thm1_report, thm2_rhs, twist_report, wintner_trend,
};
use super::criteria::{self, prefixed};
use super::harness::{
    cor1p_harness, eq101_harness, oracle_harness, prop31_harness, prop81_harness, region_invariants, thm5_harness,
    HarnessConfig,
};
use super::report::{BoundReport, GoldenDiff, Verdict};
use super::rhs::prime_product;
use crate::arith::{build_sieve, MultiplicativeSpec};
use crate::error::{Error, Result};
use crate::region::{region_constants, ConvexRegion};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Golden file shipped with the crate.
pub const DEFAULT_GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/envelopes.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::Invalid(format!("unknown profile {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub profile: Profile,
    pub seed: u64,
    pub golden: PathBuf,
    /// Rewrite the golden file from this run instead of comparing against it.
    pub bless: bool,
}

impl SuiteConfig {
    pub fn new(profile: Profile) -> Self {
        SuiteConfig { profile, seed: 1, golden: PathBuf::from(DEFAULT_GOLDEN), bless: false }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub lhs: f64,
    pub rhs_main: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GoldenFile {
    pub entries: BTreeMap<String, GoldenEntry>,
}

impl GoldenFile {
    pub fn load(path: &Path) -> std::result::Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        serde_json::from_str(&text).map_err(|e| e.to_string())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

fn same(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

/// Attaches golden comparisons to every report. Never changes a verdict.
pub fn annotate(reports: &mut [BoundReport], golden: &std::result::Result<GoldenFile, String>) {
    for r in reports.iter_mut() {
        r.golden = Some(match golden {
            Err(_) => GoldenDiff { status: "unreadable".into(), stored_lhs: None, stored_rhs: None },
            Ok(g) => match g.entries.get(&r.golden_key()) {
                None => GoldenDiff { status: "missing".into(), stored_lhs: None, stored_rhs: None },
                Some(e) => {
                    let ok = same(e.lhs, r.lhs) && same(e.rhs_main, r.rhs_main);
                    GoldenDiff {
                        status: if ok { "match" } else { "drift" }.into(),
                        stored_lhs: Some(e.lhs),
                        stored_rhs: Some(e.rhs_main),
                    }
                }
            },
        });
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<BoundReport>,
}

impl SuiteOutcome {
    pub fn failures(&self) -> Vec<&BoundReport> {
        self.reports.iter().filter(|r| r.failed()).collect()
    }

    /// 0 when no assertable check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures().is_empty() {
            0
        } else {
            1
        }
    }

    /// One JSON object per line, LF terminated.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&r.to_json_line());
            s.push('\n');
        }
        s
    }

    pub fn summary(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for r in &self.reports {
            let k = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::ReportOnly => "report_only",
            };
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }
}

struct Sizes {
    thm5: HarnessConfig,
    cor1p: HarnessConfig,
    prop31: HarnessConfig,
    prop81: HarnessConfig,
    oracle: HarnessConfig,
    eq101: Vec<f64>,
    x: u64,
    prop2: (u64, f64),
    wintner: Vec<u64>,
}

fn sizes(profile: Profile, seed: u64) -> Sizes {
    let cfg = |cases: usize, us: Vec<f64>, h: f64, salt: u64| HarnessConfig {
        cases,
        us,
        h,
        segments: 6,
        seed: seed.wrapping_mul(1_000_003).wrapping_add(salt * 10_007),
    };
    match profile {
        Profile::Quick => Sizes {
            thm5: cfg(24, vec![2.0, 5.0, 10.0], 1.0 / 64.0, 1),
            cor1p: cfg(8, vec![2.0, 5.0, 10.0], 1.0 / 64.0, 2),
            prop31: cfg(2, vec![2.0], 1.0 / 64.0, 3),
            prop81: cfg(4, vec![2.0, 5.0], 1.0 / 64.0, 4),
            oracle: cfg(4, vec![5.0], 1.0 / 1024.0, 5),
            eq101: vec![20.0],
            x: 100_000,
            prop2: (40, 3.0),
            wintner: vec![1_000, 10_000, 100_000],
        },
        Profile::Full => Sizes {
            thm5: cfg(200, vec![2.0, 5.0, 10.0], 1.0 / 128.0, 1),
            cor1p: cfg(50, vec![2.0, 5.0, 10.0], 1.0 / 128.0, 2),
            prop31: cfg(10, vec![2.0, 3.0], 1.0 / 128.0, 3),
            prop81: cfg(20, vec![2.0, 5.0, 10.0], 1.0 / 128.0, 4),
            oracle: cfg(10, vec![5.0], 1.0 / 1024.0, 5),
            eq101: vec![20.0, 40.0, 80.0],
            x: 1_000_000,
            prop2: (100, 3.0),
            wintner: vec![10_000, 100_000, 1_000_000],
        },
    }
}

/// log-spaced t from 10⁻³ to 10².
fn t_grid() -> Vec<f64> {
    (0..=10).map(|k| 10f64.powf(-3.0 + 0.5 * k as f64)).collect()
}

fn harnesses(sz: &Sizes) -> Result<Vec<BoundReport>> {
    let disc = ConvexRegion::disc(0.7)?;
    let roots = ConvexRegion::roots_of_unity(3)?;
    let seg = ConvexRegion::segment01();
    let mut out = Vec::new();
    out.extend(region_invariants(&[
        ConvexRegion::segment_pm1(),
        roots.clone(),
        ConvexRegion::roots_of_unity(4)?,
        ConvexRegion::roots_of_unity(5)?,
        ConvexRegion::disc(0.5)?,
        disc.clone(),
        ConvexRegion::sector(std::f64::consts::FRAC_PI_2)?,
        seg.clone(),
    ])?);
    for region in [&disc, &roots, &seg] {
        let c = region_constants(region)?;
        out.extend(thm5_harness(region, &c, &sz.thm5)?);
    }
    out.extend(cor1p_harness(None, &sz.cor1p)?);
    let dc = region_constants(&disc)?;
    out.extend(cor1p_harness(Some((&disc, &dc)), &sz.cor1p)?);
    out.extend(prop31_harness(&sz.prop31)?);
    let ts = t_grid();
    for region in [&disc, &roots] {
        let c = region_constants(region)?;
        out.extend(prop81_harness(region, &c, &sz.prop81, &ts)?);
    }
    out.extend(eq101_harness(&sz.eq101)?);
    out.extend(oracle_harness(&sz.oracle)?);
    Ok(out)
}

fn arithmetic(sz: &Sizes, seed: u64) -> Result<Vec<BoundReport>> {
    let sieve = build_sieve(sz.x)?;
    let disc = ConvexRegion::disc(0.7)?;
    let roots = ConvexRegion::roots_of_unity(3)?;
    let liouville = MultiplicativeSpec::liouville();
    let p = prime_product();
    let mut out = vec![
        exact_sums_check(&sieve)?,
        euler_ratio_check(&liouville, &sieve, 0.0, 0.02)?,
        // log P ≥ 8/7; the golden file keeps P itself as rhs_main
        BoundReport::asserted("prime_product", (8.0f64 / 7.0).exp(), p.value, 0.0, json!({"tail_factor": p.tail_factor})),
        thm1_report(&liouville, &sieve, None)?,
        cor1_report(&liouville, &sieve, None)?,
        cor1_report(&MultiplicativeSpec::moebius(), &sieve, None)?,
        hall_report(&MultiplicativeSpec::random_in_region(&disc, seed), &sieve, &disc)?,
        thm2_rhs(&MultiplicativeSpec::one(), &sieve, &disc)?,
        thm2_rhs(&MultiplicativeSpec::random_in_region(&ConvexRegion::segment01(), seed), &sieve, &ConvexRegion::segment01())?,
        thm2_rhs(&MultiplicativeSpec::random_in_region(&roots, seed), &sieve, &roots)?,
        prop2_report(&MultiplicativeSpec::minus_one_above(sz.prop2.0), &sieve, sz.prop2.0, sz.prop2.1)?,
        prop3_report(&MultiplicativeSpec::moebius(), &sieve, 10)?,
        prop3_report(&liouville, &sieve, 100)?,
        twist_report(&MultiplicativeSpec::one(), &sieve, 1.0)?,
        twist_report(&MultiplicativeSpec::moebius(), &sieve, 1.0)?,
        wintner_trend(&sieve, &sz.wintner)?,
    ];
    out.extend(lipschitz_report(&MultiplicativeSpec::nt_power(3.0), &sieve, &[10])?);
    out.extend(lipschitz_report(&liouville, &sieve, &[10, 100])?);
    Ok(out)
}

fn run_profile(profile: Profile, seed: u64) -> Result<Vec<BoundReport>> {
    let sz = sizes(profile, seed);
    let mut reports = harnesses(&sz)?;
    reports.extend(arithmetic(&sz, seed)?);
    if profile == Profile::Full {
        reports = prefixed("criterion_7", reports);
        reports.extend(criteria::criterion_1()?);
        reports.extend(criteria::criterion_2()?);
        reports.extend(criteria::criterion_3()?);
        reports.extend(criteria::criterion_4()?);
        reports.extend(criteria::criterion_5()?);
        reports.extend(criteria::criterion_6()?);
        reports.extend(criteria::criterion_8()?);
        reports.extend(criteria::criterion_9()?);
        reports.extend(criteria::criterion_10()?);
        let a = run_profile(Profile::Quick, seed)?;
        let b = run_profile(Profile::Quick, seed)?;
        let lines = |r: &[BoundReport]| r.iter().map(|x| x.to_json_line()).collect::<Vec<_>>();
        reports.push(BoundReport::check(
            "criterion_11/determinism",
            lines(&a) == lines(&b),
            json!({"profile": "quick", "seed": seed, "entries": a.len()}),
        ));
    }
    Ok(reports)
}

/// Runs the suite. Reports keep a fixed order: harness by harness, cases sorted by seed.
pub fn verify_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut reports = run_profile(config.profile, config.seed)?;
    if config.bless {
        let mut g = match GoldenFile::load(&config.golden) {
            Ok(g) => g,
            Err(_) => GoldenFile::default(),
        };
        for r in &reports {
            g.entries.insert(r.golden_key(), GoldenEntry { lhs: r.lhs, rhs_main: r.rhs_main });
        }
        g.save(&config.golden)?;
    }
    annotate(&mut reports, &GoldenFile::load(&config.golden));
    Ok(SuiteOutcome { reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(name: &str, lhs: f64) -> BoundReport {
        BoundReport::report_only(name, lhs, 1.0, json!({"x": 1}))
    }

    #[test]
    fn golden_annotation() {
        let mut g = GoldenFile::default();
        let a = report("a", 0.5);
        g.entries.insert(a.golden_key(), GoldenEntry { lhs: 0.5, rhs_main: 1.0 });
        let mut reps = vec![a, report("b", 0.2)];
        annotate(&mut reps, &Ok(g.clone()));
        assert_eq!(reps[0].golden.as_ref().unwrap().status, "match");
        assert_eq!(reps[1].golden.as_ref().unwrap().status, "missing");
        g.entries.values_mut().for_each(|e| e.lhs = 0.6);
        annotate(&mut reps, &Ok(g));
        assert_eq!(reps[0].golden.as_ref().unwrap().status, "drift");
        annotate(&mut reps, &Err("bad".into()));
        assert!(reps.iter().all(|r| r.golden.as_ref().unwrap().status == "unreadable" && !r.failed()));
    }

    #[test]
    fn golden_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let mut g = GoldenFile::default();
        g.entries.insert("k".into(), GoldenEntry { lhs: 1.0, rhs_main: 2.0 });
        g.save(&path).unwrap();
        assert_eq!(GoldenFile::load(&path).unwrap().entries["k"].rhs_main, 2.0);
        std::fs::write(&path, "{not json").unwrap();
        assert!(GoldenFile::load(&path).is_err());
    }
}
