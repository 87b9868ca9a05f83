mod output;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use halasz::arith::{build_sieve, partial_sums, MultiplicativeSpec};
use halasz::bounds::{
    cor1_report, hall_report, lipschitz_report, thm1_report, thm2_rhs, verify_suite, BoundReport, Profile, SuiteConfig,
    DEFAULT_GOLDEN,
};
use halasz::region::{region_constants, ConvexRegion};
use halasz::volterra::{functionals, rho_alpha, solve_sigma, ChiSpec};
use num_complex::Complex64;
use output::{emit, Cell, Format, Table};
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "halasz", version, about = "Mean values of multiplicative functions and the delay integral equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// κ, ν, λ, C(D), c and c′ for a family of regions.
    RegionTable(RegionTableArgs),
    /// Solve uσ(u) = ∫₀^u σ(t)χ(u−t) dt on a grid.
    SigmaSolve(SigmaArgs),
    /// Solve uρ′(u) = −(1−α)ρ(u−1) with ρ = 1 on [0, 1].
    Rho(RhoArgs),
    /// Partial sums of a multiplicative function at decade checkpoints.
    MeanValue(MeanArgs),
    /// Bound reports for a multiplicative function.
    BoundsReport(BoundsArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Roots,
    Disc,
    Sector,
    Custom,
}

#[derive(Args)]
struct RegionTableArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Family parameters: m for roots, r for discs, φ in radians for sectors.
    #[arg(long = "param", value_delimiter = ',')]
    params: Vec<f64>,
    /// Region JSON (file path or inline) for the custom family; a single region or an array.
    #[arg(long)]
    spec: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SigmaArgs {
    /// χ spec JSON (file path or inline), e.g. {"preset":"dickman"}.
    #[arg(long)]
    spec: String,
    #[arg(long = "U", default_value_t = 10.0)]
    u_max: f64,
    #[arg(long, default_value_t = 1.0 / 256.0)]
    h: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct RhoArgs {
    /// α as "re" or "re,im".
    #[arg(long, default_value = "0")]
    alpha: String,
    #[arg(long = "U", default_value_t = 10.0)]
    u_max: f64,
    #[arg(long, default_value_t = 1.0 / 256.0)]
    h: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct MeanArgs {
    /// f spec JSON (file path or inline), e.g. {"preset":"liouville"}.
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 1_000_000)]
    x: u64,
    /// Seed for random presets that do not carry one.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 1_000_000)]
    x: u64,
    /// Twist range for L and M (default log x).
    #[arg(long = "T")]
    t: Option<f64>,
    /// Region containing every f(p), for the Hall-type reports.
    #[arg(long)]
    region: Option<String>,
    /// Values of w for the variation reports.
    #[arg(long, value_delimiter = ',', default_value = "10,100")]
    w: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    profile: String,
    /// JSON-lines report file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = DEFAULT_GOLDEN)]
    golden: PathBuf,
    /// Rewrite the golden file from this run.
    #[arg(long)]
    bless: bool,
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    Ok(serde_json::from_str(&text).map_err(halasz::Error::from)?)
}

fn multiplicative(arg: &str, seed: u64) -> Result<(MultiplicativeSpec, Value)> {
    let mut v = read_json(arg)?;
    if v.get("preset").and_then(Value::as_str) == Some("random_in_region") && v.get("seed").is_none() {
        v["seed"] = json!(seed);
    }
    Ok((MultiplicativeSpec::from_value(&v)?, v))
}

fn region_table(a: &RegionTableArgs) -> Result<Table> {
    let (regions, params): (Vec<ConvexRegion>, Vec<Cell>) = match a.family {
        Family::Roots => {
            let ms: Vec<u32> = if a.params.is_empty() {
                (2..=10).collect()
            } else {
                a.params.iter().map(|&m| m as u32).collect()
            };
            let rs = ms
                .iter()
                .map(|&m| if m == 2 { Ok(ConvexRegion::segment_pm1()) } else { ConvexRegion::roots_of_unity(m) })
                .collect::<halasz::Result<_>>()?;
            (rs, ms.iter().map(|&m| Cell::Int(m as u64)).collect())
        }
        Family::Disc => {
            let rs = if a.params.is_empty() {
                vec![PI / (PI + 4.0), 0.45, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]
            } else {
                a.params.clone()
            };
            (rs.iter().map(|&r| ConvexRegion::disc(r)).collect::<halasz::Result<_>>()?, rs.iter().map(|&r| Cell::Num(r)).collect())
        }
        Family::Sector => {
            let ps = if a.params.is_empty() {
                [0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 5.0 / 6.0, 0.9, 0.99].iter().map(|q| q * PI).collect()
            } else {
                a.params.clone()
            };
            (ps.iter().map(|&p| ConvexRegion::sector(p)).collect::<halasz::Result<_>>()?, ps.iter().map(|&p| Cell::Num(p)).collect())
        }
        Family::Custom => {
            let spec = a.spec.as_deref().ok_or_else(|| halasz::Error::Invalid("--family custom needs --spec".into()))?;
            let v = read_json(spec)?;
            let items = match v {
                Value::Array(items) => items,
                other => vec![other],
            };
            let rs = items
                .iter()
                .map(|i| ConvexRegion::new(serde_json::from_value(i.clone()).map_err(halasz::Error::from)?))
                .collect::<halasz::Result<Vec<_>>>()?;
            let labels = rs.iter().map(|r| Cell::Text(r.label())).collect();
            (rs, labels)
        }
    };
    let mut rows = Vec::new();
    for (region, p) in regions.iter().zip(params) {
        let c = region_constants(region)?;
        let opt = |v: Option<f64>| v.map_or(Cell::Text(String::new()), Cell::Num);
        rows.push(vec![
            p,
            Cell::Num(c.kappa),
            Cell::Num(c.nu),
            Cell::Num(c.lambda),
            Cell::Num(c.c_d),
            opt(c.c),
            opt(c.c_prime),
        ]);
    }
    let family = match a.family {
        Family::Roots => "roots",
        Family::Disc => "disc",
        Family::Sector => "sector",
        Family::Custom => "custom",
    };
    Ok(Table {
        command: "region-table",
        config: json!({"family": family, "params": a.params, "spec": a.spec, "format": a.out.format.name()}),
        tolerance: json!({"kappa_bisection": 1e-13, "quadrature": 1e-11}),
        columns: vec!["param", "kappa", "nu", "lambda", "cD", "c", "c_prime"],
        rows,
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".functionals.json");
    PathBuf::from(s)
}

fn sigma_solve(a: &SigmaArgs) -> Result<()> {
    let spec = read_json(&a.spec)?;
    let chi = ChiSpec::from_value(&spec)?;
    let sol = solve_sigma(&chi, a.u_max, a.h)?;
    let f = functionals(&chi, a.u_max)?;
    let rows = sol
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| vec![Cell::Num(sol.u(k)), Cell::Num(v.re), Cell::Num(v.im), Cell::Num(v.norm())])
        .collect();
    let config = json!({"spec": spec, "U": a.u_max, "h": a.h, "format": a.out.format.name()});
    let table = Table {
        command: "sigma-solve",
        config: config.clone(),
        tolerance: json!({"est_error": sol.est_error}),
        columns: vec!["u", "re_sigma", "im_sigma", "abs_sigma"],
        rows,
    };
    emit(a.out.out.as_deref(), &table.render(a.out.format))?;
    let last = sol.last();
    let side = json!({
        "version": halasz::VERSION,
        "config": config,
        "U": a.u_max,
        "M0": f.m0,
        "M": f.m,
        "y_star": f.y_star,
        "sigma_U": [last.re, last.im],
        "u_abs_sigma": a.u_max * last.norm(),
        "est_error": sol.est_error,
    });
    let text = serde_json::to_string_pretty(&side)? + "\n";
    match &a.out.out {
        Some(p) => std::fs::write(sidecar_path(p), text)?,
        None => eprint!("{text}"),
    }
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| halasz::Error::Invalid(format!("bad number {t:?} in alpha")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(halasz::Error::Invalid(format!("alpha must be \"re\" or \"re,im\", got {s:?}")).into()),
    }
}

fn rho(a: &RhoArgs) -> Result<Table> {
    let alpha = parse_complex(&a.alpha)?;
    let sol = rho_alpha(alpha, a.u_max, a.h)?;
    let rows = sol
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| vec![Cell::Num(sol.u(k)), Cell::Num(v.re), Cell::Num(v.im), Cell::Num(v.norm())])
        .collect();
    Ok(Table {
        command: "rho",
        config: json!({"alpha": [alpha.re, alpha.im], "U": a.u_max, "h": a.h, "format": a.out.format.name()}),
        tolerance: json!({"est_error": sol.est_error}),
        columns: vec!["u", "re_rho", "im_rho", "abs_rho"],
        rows,
    })
}

fn mean_value(a: &MeanArgs) -> Result<Table> {
    let (f, spec) = multiplicative(&a.spec, a.seed)?;
    let sieve = build_sieve(a.x)?;
    let mut xs: Vec<u64> = std::iter::successors(Some(10u64), |&c| c.checked_mul(10)).take_while(|&c| c < a.x).collect();
    xs.push(a.x);
    let sums = partial_sums(&f, &sieve, &xs)?;
    let rows = xs
        .iter()
        .zip(&sums)
        .map(|(&x, s)| vec![Cell::Int(x), Cell::Num(s.re), Cell::Num(s.im), Cell::Num(s.norm() / x as f64)])
        .collect();
    Ok(Table {
        command: "mean-value",
        config: json!({"spec": spec, "x": a.x, "seed": a.seed, "format": a.out.format.name()}),
        tolerance: json!({"summation": "pairwise, fixed blocks"}),
        columns: vec!["x", "re_S", "im_S", "abs_mean"],
        rows,
    })
}

fn bounds_report(a: &BoundsArgs) -> Result<Table> {
    let (f, spec) = multiplicative(&a.spec, a.seed)?;
    let sieve = build_sieve(a.x)?;
    let mut reports: Vec<BoundReport> = vec![thm1_report(&f, &sieve, a.t)?, cor1_report(&f, &sieve, a.t)?];
    reports.extend(lipschitz_report(&f, &sieve, &a.w)?);
    let region_spec = match &a.region {
        Some(r) => {
            let v = read_json(r)?;
            let region = ConvexRegion::new(serde_json::from_value(v.clone()).map_err(halasz::Error::from)?)?;
            reports.push(hall_report(&f, &sieve, &region)?);
            reports.push(thm2_rhs(&f, &sieve, &region)?);
            v
        }
        None => Value::Null,
    };
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.name.clone()),
                Cell::Num(r.lhs),
                Cell::Num(r.rhs_main),
                Cell::Num(r.slack),
                Cell::Num(r.ratio()),
                Cell::Text(serde_json::to_value(r.verdict).unwrap().as_str().unwrap_or("").to_string()),
            ]
        })
        .collect();
    Ok(Table {
        command: "bounds-report",
        config: json!({"spec": spec, "x": a.x, "T": a.t, "region": region_spec, "w": a.w, "seed": a.seed,
                       "format": a.out.format.name()}),
        tolerance: json!({"report_only": "measured ratio lhs/rhs_main"}),
        columns: vec!["name", "lhs", "rhs_main", "slack", "ratio", "verdict"],
        rows,
    })
}

fn verify(a: &VerifyArgs) -> Result<u8> {
    let profile: Profile = a.profile.parse()?;
    let config = SuiteConfig { profile, seed: a.seed, golden: a.golden.clone(), bless: a.bless };
    let outcome = verify_suite(&config)?;
    let header = json!({
        "halasz": halasz::VERSION,
        "command": "verify",
        "config": {"profile": profile, "seed": a.seed, "golden": a.golden, "bless": a.bless},
        "tolerance": {"assertable": "1e-9 plus 10 times the solver error estimate unless stated per entry"},
    });
    let text = format!("{header}\n{}", outcome.to_json_lines());
    emit(a.out.as_deref(), &text)?;
    let summary = outcome.summary();
    eprintln!("{}", serde_json::to_string(&summary)?);
    for r in outcome.failures() {
        eprintln!("FAIL {} lhs={} rhs={} {}", r.name, r.lhs, r.rhs_main, r.fingerprint);
    }
    Ok(outcome.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::RegionTable(a) => {
            let t = region_table(&a)?;
            emit(a.out.out.as_deref(), &t.render(a.out.format))?;
        }
        Command::SigmaSolve(a) => sigma_solve(&a)?,
        Command::Rho(a) => {
            let t = rho(&a)?;
            emit(a.out.out.as_deref(), &t.render(a.out.format))?;
        }
        Command::MeanValue(a) => {
            let t = mean_value(&a)?;
            emit(a.out.out.as_deref(), &t.render(a.out.format))?;
        }
        Command::BoundsReport(a) => {
            let t = bounds_report(&a)?;
            emit(a.out.out.as_deref(), &t.render(a.out.format))?;
        }
        Command::Verify(a) => return verify(&a),
    }
    Ok(0)
}

/// 3 for numeric non-convergence, 2 for everything else that stops a run.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<halasz::Error>() {
        Some(err) if err.is_numeric() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
