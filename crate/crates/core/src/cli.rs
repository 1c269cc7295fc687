//! Command-line front end: parameter sweeps written as CSV, and the verification suites.
//!
//! Flags override the config file, which overrides the built-in defaults.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::family::{FChoice, FamilyKind, FamilySpec};
use crate::fock::{check_algebra, FockSpace};
use crate::measure::{verify_moments, weight, MomentProblem};
use crate::optics::{dual_route, pnd_table, snr_ratio, stats_series};
use crate::states::{check_kernel_properties, label_continuity_check, Sector, StateSpec};
use crate::thermal::{husimi_trace, p_normalization, partition_function, thermal_stats, ThermalSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Width of the PND window above `p`.
const PND_SPAN: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Stats,
    Pnd,
    Weight,
    Snr,
    Thermal,
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "gpahcs", about = "Photon-added coherent-state statistics and checks")]
pub struct Cli {
    pub task: Task,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub m: Option<u64>,
    /// Comma-separated list of added-quanta counts.
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<u64>>,
    /// `const:c` or `sqrtlinear`.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub zmin: Option<f64>,
    #[arg(long)]
    pub zmax: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// `|z|` for the number distribution.
    #[arg(long)]
    pub z: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub tol: Option<f64>,
}

impl ValueEnum for FamilyKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[
            FamilyKind::Hermite,
            FamilyKind::Laguerre,
            FamilyKind::Jacobi,
            FamilyKind::Hypergeometric,
        ]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        let v = clap::builder::PossibleValue::new(self.name());
        Some(match self {
            FamilyKind::Hypergeometric => v.alias("hypergeom"),
            _ => v,
        })
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    family: FamilySection,
    #[serde(default)]
    state: StateSection,
    #[serde(default)]
    run: RunSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySection {
    kind: Option<FamilyKind>,
    alpha: Option<f64>,
    beta: Option<f64>,
    mu: Option<f64>,
    f: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateSection {
    m: Option<u64>,
    p: Option<Vec<u64>>,
    zmin: Option<f64>,
    zmax: Option<f64>,
    steps: Option<usize>,
    z: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    task: Option<Task>,
    beta: Option<Vec<f64>>,
    out: Option<PathBuf>,
    tol: Option<f64>,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub family: FamilySpec,
    pub f: FChoice,
    pub m: u64,
    pub p: Vec<u64>,
    pub zmin: f64,
    pub zmax: f64,
    pub steps: usize,
    pub z: f64,
    pub betas: Vec<f64>,
    pub out: Option<PathBuf>,
    pub tol: f64,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::domain(msg)
}

impl RunConfig {
    /// Merges flags over the config file (if any) over defaults, then validates.
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file: FileConfig = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                toml::from_str(&text).map_err(|e| usage(format!("bad config: {e}")))?
            }
            None => FileConfig::default(),
        };
        if let Some(t) = file.run.task {
            if t != cli.task {
                return Err(usage(format!(
                    "config names task {t:?} but the command line asks for {:?}",
                    cli.task
                )));
            }
        }
        let kind = cli.family.or(file.family.kind).unwrap_or(FamilyKind::Hermite);
        let mu = cli.mu.or(file.family.mu);
        let family = match kind {
            FamilyKind::Hermite => FamilySpec::hermite(),
            FamilyKind::Laguerre => FamilySpec::laguerre(file.family.alpha.unwrap_or(0.0)),
            k => match (mu, file.family.alpha, file.family.beta) {
                (Some(mu), _, _) => FamilySpec::with_mu(k, mu)?,
                (None, Some(a), Some(b)) if k == FamilyKind::Jacobi => FamilySpec::jacobi(a, b)?,
                (None, Some(a), Some(b)) => FamilySpec::hypergeometric(a, b)?,
                _ => FamilySpec::with_mu(k, 2.0)?,
            },
        };
        let f: FChoice = cli
            .f
            .as_deref()
            .or(file.family.f.as_deref())
            .unwrap_or("const:1")
            .parse()?;
        let m = cli.m.or(file.state.m).unwrap_or(2);
        f.validate(&family, m)?;
        let p = cli.p.clone().or(file.state.p).unwrap_or_else(|| vec![0, 1, 2, 3]);
        let betas = match cli.beta {
            Some(b) => vec![b],
            None => file.run.beta.unwrap_or_else(|| vec![0.5, 1.0, 2.0]),
        };
        let cfg = RunConfig {
            task: cli.task,
            family,
            f,
            m,
            p,
            zmin: cli.zmin.or(file.state.zmin).unwrap_or(0.01),
            zmax: cli.zmax.or(file.state.zmax).unwrap_or(8.0),
            steps: cli.steps.or(file.state.steps).unwrap_or(200),
            z: cli.z.or(file.state.z).unwrap_or(3.0),
            betas,
            out: cli.out.clone().or(file.run.out),
            tol: cli.tol.or(file.run.tol).unwrap_or(1e-9),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.p.is_empty() {
            return Err(usage("p list must not be empty"));
        }
        if self.steps == 0 {
            return Err(usage("steps must be positive"));
        }
        if !(self.zmin >= 0.0 && self.zmax >= self.zmin && self.zmax.is_finite()) {
            return Err(usage(format!("bad |z| range [{}, {}]", self.zmin, self.zmax)));
        }
        if !(self.z >= 0.0 && self.z.is_finite()) {
            return Err(usage(format!("bad |z| = {}", self.z)));
        }
        if self.betas.is_empty() || self.betas.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
            return Err(usage("β values must be positive"));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(usage(format!("tolerance {} outside (0, 1e-2]", self.tol)));
        }
        Ok(())
    }

    /// `steps` points from `zmin` to `zmax`, both ends included.
    pub fn z_grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.zmin];
        }
        let h = (self.zmax - self.zmin) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.zmin + h * k as f64).collect()
    }

    fn sector(&self, p: u64) -> Result<Sector> {
        Sector::new(self.family, self.f, self.m, p)
    }

    fn state(&self, p: u64, r: f64) -> Result<StateSpec> {
        StateSpec::new(Complex64::new(r, 0.0), self.m, p, self.family, self.f)
    }
}

/// `%.12g`-style rendering.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{exp}")
    }
}

/// CSV text with a header row and LF line endings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Evaluates `f` on every `(p, point)` pair in parallel; rows come back in grid order.
fn sweep<T: Sync>(
    cfg: &RunConfig,
    points: &[T],
    f: impl Fn(u64, &T) -> Result<Vec<String>> + Sync,
) -> Result<Vec<Vec<String>>> {
    let jobs: Vec<(u64, &T)> = cfg
        .p
        .iter()
        .flat_map(|&p| points.iter().map(move |t| (p, t)))
        .collect();
    jobs.par_iter().map(|(p, t)| f(*p, t)).collect()
}

fn task_stats(cfg: &RunConfig) -> Result<Table> {
    let rows = sweep(cfg, &cfg.z_grid(), |p, &r| {
        let s = stats_series(&cfg.state(p, r)?)?;
        Ok(vec![fmt_num(r), p.to_string(), fmt_num(s.mandel_q), fmt_num(s.g2)])
    })?;
    Ok(Table {
        header: vec!["abs_z", "p", "Q", "g2"],
        rows,
    })
}

fn task_pnd(cfg: &RunConfig) -> Result<Table> {
    let mut rows = Vec::new();
    for &p in &cfg.p {
        let t = pnd_table(&cfg.state(p, cfg.z)?, p + PND_SPAN)?;
        for n in p..=p + PND_SPAN {
            rows.push(vec![n.to_string(), p.to_string(), fmt_num(t[n as usize])]);
        }
    }
    Ok(Table {
        header: vec!["n", "p", "P_n"],
        rows,
    })
}

fn task_weight(cfg: &RunConfig) -> Result<Table> {
    let xs: Vec<f64> = cfg.z_grid().iter().map(|r| r * r).filter(|x| *x > 0.0).collect();
    let rows = sweep(cfg, &xs, |p, &x| {
        Ok(vec![fmt_num(x), p.to_string(), fmt_num(weight(&cfg.sector(p)?, x)?)])
    })?;
    Ok(Table {
        header: vec!["x", "p", "omega"],
        rows,
    })
}

fn task_snr(cfg: &RunConfig) -> Result<Table> {
    let rs: Vec<f64> = cfg.z_grid().into_iter().filter(|r| *r > 0.0).collect();
    let rows = sweep(cfg, &rs, |p, &r| {
        Ok(vec![fmt_num(r), p.to_string(), fmt_num(snr_ratio(&cfg.state(p, r)?)?)])
    })?;
    Ok(Table {
        header: vec!["abs_z", "p", "snr_ratio"],
        rows,
    })
}

fn task_thermal(cfg: &RunConfig) -> Result<Table> {
    let rows = sweep(cfg, &cfg.betas, |p, &beta| {
        let t = ThermalSpec::new(beta, cfg.sector(p)?)?;
        let s = thermal_stats(&t);
        Ok([
            beta,
            p as f64,
            partition_function(&t),
            t.nbar(),
            s.direct.mean,
            s.direct.mean2,
            s.direct.g2,
            s.direct.q,
            s.closed.mean,
            s.closed.g2,
            s.closed.q,
            s.q_discrepancy,
        ]
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 1 { p.to_string() } else { fmt_num(*v) })
        .collect())
    })?;
    Ok(Table {
        header: vec![
            "beta",
            "p",
            "Z",
            "nbar",
            "mean",
            "mean2",
            "g2",
            "Q",
            "mean_closed",
            "g2_closed",
            "Q_closed",
            "Q_discrepancy",
        ],
        rows,
    })
}

/// One verification suite result.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub passed: bool,
    pub max_error: f64,
    pub detail: String,
}

fn suite(suite: &'static str, r: Result<(bool, f64, String)>) -> SuiteResult {
    match r {
        Ok((passed, max_error, detail)) => SuiteResult {
            suite,
            passed,
            max_error,
            detail,
        },
        Err(e) => SuiteResult {
            suite,
            passed: false,
            max_error: f64::NAN,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs every check on the configured sector.
pub fn run_verify(cfg: &RunConfig) -> Vec<SuiteResult> {
    let ps: Vec<u64> = cfg.p.iter().copied().filter(|&p| p <= 3).collect();
    let ps = if ps.is_empty() { vec![cfg.p[0]] } else { ps };
    let mut out = Vec::new();

    out.push(suite(
        "algebra",
        (|| {
            let rep = check_algebra(&FockSpace::new(cfg.family, cfg.m, 50)?)?;
            Ok((rep.passed(1e-10), rep.max_deviation(), "D=50".into()))
        })(),
    ));

    out.push(suite(
        "moments",
        (|| {
            let mut worst: f64 = 0.0;
            let mut ok = true;
            for &p in &ps {
                let rep = verify_moments(&MomentProblem::new(cfg.sector(p)?)?, 8)?;
                ok &= rep.passed(1e-6);
                worst = worst.max(rep.max_rel_error);
            }
            Ok((ok, worst, format!("n<=8 p={ps:?}")))
        })(),
    ));

    out.push(suite(
        "kernel",
        (|| {
            let pairs = [
                (Complex64::new(0.4, 0.3), Complex64::new(-0.2, 0.9)),
                (Complex64::new(1.1, -0.5), Complex64::new(0.7, 0.2)),
            ];
            let mut worst: f64 = 0.0;
            let mut ok = true;
            for &p in &ps {
                let rep = check_kernel_properties(&cfg.sector(p)?, &pairs)?;
                ok &= rep.passed(1e-12, 1e-6);
                worst = worst.max(rep.idempotence);
            }
            Ok((ok, worst, "idempotence residual".into()))
        })(),
    ));

    out.push(suite(
        "continuity",
        (|| {
            let deltas: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
            let spec = StateSpec::new(Complex64::new(0.8, 0.3), cfg.m, ps[0], cfg.family, cfg.f)?;
            let rep = label_continuity_check(&spec, &deltas)?;
            let worst = rep.slopes.iter().map(|s| (s - 2.0).abs()).fold(0.0, f64::max);
            Ok((rep.quadratic(0.05), worst, "slope deviation from 2".into()))
        })(),
    ));

    out.push(suite(
        "dual_route",
        (|| {
            let grid = cfg.z_grid();
            let mut worst: f64 = 0.0;
            let mut skipped = 0;
            for &p in &cfg.p {
                if cfg.m + p == 0 {
                    skipped += 1;
                    continue;
                }
                for &r in grid.iter().step_by((grid.len() / 25).max(1)) {
                    worst = worst.max(dual_route(&cfg.state(p, r)?)?.max_rel_error());
                }
            }
            Ok((worst < cfg.tol, worst, format!("{skipped} sectors without closed form")))
        })(),
    ));

    out.push(suite(
        "thermal",
        (|| {
            let t = ThermalSpec::new(cfg.betas[0], cfg.sector(ps[0])?)?;
            let trace = (husimi_trace(&t)? - 1.0).abs();
            let norm = (p_normalization(&t)? - 1.0).abs();
            let s = thermal_stats(&t);
            let identity = (s.direct.mean * (s.direct.g2 - 1.0) - s.direct.q).abs();
            let worst = trace.max(norm);
            Ok((
                worst < 1e-6 && identity < 1e-10,
                worst,
                format!("Q discrepancy vs printed closed form {}", fmt_num(s.q_discrepancy)),
            ))
        })(),
    ));
    out
}

fn verify_table(results: &[SuiteResult]) -> Table {
    Table {
        header: vec!["suite", "status", "max_error", "detail"],
        rows: results
            .iter()
            .map(|r| {
                vec![
                    r.suite.to_string(),
                    if r.passed { "pass" } else { "fail" }.to_string(),
                    fmt_num(r.max_error),
                    r.detail.replace(',', ";"),
                ]
            })
            .collect(),
    }
}

/// Runs the task; returns the CSV text and whether every check passed.
pub fn run(cfg: &RunConfig) -> Result<(String, bool)> {
    let (table, ok) = match cfg.task {
        Task::Stats => (task_stats(cfg)?, true),
        Task::Pnd => (task_pnd(cfg)?, true),
        Task::Weight => (task_weight(cfg)?, true),
        Task::Snr => (task_snr(cfg)?, true),
        Task::Thermal => (task_thermal(cfg)?, true),
        Task::Verify => {
            let results = run_verify(cfg);
            let ok = results.iter().all(|r| r.passed);
            (verify_table(&results), ok)
        }
    };
    Ok((table.to_csv(), ok))
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("gpahcs: {e}");
            return EXIT_USAGE;
        }
    };
    let (csv, ok) = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gpahcs: {e}");
            return EXIT_FAILURE;
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                eprintln!("gpahcs: cannot write {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        }
        None => print!("{csv}"),
    }
    if ok {
        EXIT_OK
    } else {
        let mut msg = String::new();
        for line in csv.lines().filter(|l| l.contains(",fail,")) {
            let _ = writeln!(msg, "FAILED {line}");
        }
        eprint!("{msg}");
        EXIT_FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gpahcs").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(-2.5e-9), "-2.5e-9");
        assert_eq!(fmt_num(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_num(f64::NAN), "NaN");
    }

    #[test]
    fn defaults_and_flags() {
        let c = RunConfig::resolve(&cli(&["stats"])).unwrap();
        assert_eq!(c.family, FamilySpec::hermite());
        assert_eq!(c.z_grid().len(), 200);
        assert_eq!(c.z_grid()[199], 8.0);
        let c = RunConfig::resolve(&cli(&["pnd", "--family", "hypergeom", "--mu", "3", "--p", "1,2", "--f", "sqrtlinear"])).unwrap();
        assert_eq!(c.family.kind(), FamilyKind::Hypergeometric);
        assert_eq!(c.p, vec![1, 2]);
        assert_eq!(c.f, FChoice::SqrtLinear);
        assert!(RunConfig::resolve(&cli(&["stats", "--f", "sqrtlinear"])).is_err());
        assert!(RunConfig::resolve(&cli(&["stats", "--tol", "0.5"])).is_err());
    }

    #[test]
    fn weight_column_is_flat_for_hermite_p0() {
        let c = RunConfig::resolve(&cli(&["weight", "--p", "0", "--f", "const:0.5", "--steps", "7"])).unwrap();
        let (csv, ok) = run(&c).unwrap();
        assert!(ok);
        for line in csv.lines().skip(1) {
            let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            assert!((v - 0.25 / std::f64::consts::PI).abs() < 1e-11);
        }
    }

    #[test]
    fn pnd_at_origin_is_a_delta() {
        let c = RunConfig::resolve(&cli(&["pnd", "--p", "2", "--z", "0"])).unwrap();
        let (csv, _) = run(&c).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,p,P_n");
        assert_eq!(lines[1], "2,2,1");
        assert!(lines[2..].iter().all(|l| l.ends_with(",0")));
    }
}
