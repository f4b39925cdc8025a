//! `kahler-lab <noun> <verb>` front end.
//!
//! Every command builds one report, wraps it as
//! `{"schema": "1", "command": …, "report": …}` and writes it to `--out` or
//! stdout. The process exits 0 when the report passes, 1 when it contains a
//! failed verdict and 2 on errors.

mod examples;
mod identities;

pub use examples::{
    cubic_expected_positive, seed_ratio, verify_cubic, verify_example, verify_family1, verify_ht, verify_a6,
    Criterion, ExampleParams, ExampleReport, EXAMPLE_NAMES,
};
pub use identities::{
    check_fixture, check_tensor, identity_suite, instance_seed, Check, FixtureReport, InstanceReport, SuiteOptions,
    SuiteReport, BERGER_TOL, SCALAR_BOUND_SLACK, MAXIMIZER_SLACK, MC_SIGMAS, POLARIZATION_TOL, SCALAR_INVARIANCE_TOL,
    SKEW_TOL,
};

use crate::comparison::{calibration_gate, compare, CompareOptions, TheoremId};
use crate::error::{Error, Result};
use crate::profile::{builtin, classify, write_csv, Grid, ProfileSpec, RadialProfile, Target, Verdict};
use crate::surface::{
    threshold_hsc, threshold_ricci, BlowupSurfaceMetric, ChartPoint, FdOptions, ThresholdOptions,
};
use crate::tensor::{extremize_over_sphere, Functional, Mode, SphereOptions, TensorJson};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

pub const SCHEMA: &str = "1";

/// Agreement required between the closed-form and finite-difference surface engines.
pub const ENGINE_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "kahler-lab", version, about = "Curvature checks for Kähler metrics")]
pub struct RunConfig {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true, env = "KAHLER_LAB_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output file (default: stdout).
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebraic curvature tensors.
    Tensor {
        #[command(subcommand)]
        verb: TensorCmd,
    },
    /// U(m)-invariant metrics.
    Metric {
        #[command(subcommand)]
        verb: MetricCmd,
    },
    /// Comparison checks along radial geodesics of a model metric.
    Compare(CompareArgs),
    /// The blow-up surface metric.
    Surface {
        #[command(subcommand)]
        verb: SurfaceCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum TensorCmd {
    /// Identity suite on random tensors, or symmetry check of a tensor file.
    Check {
        #[arg(long, short = 'n', default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
        /// Tensor JSON file to check instead of random tensors.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// Builtin profile name.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub builtin: Option<String>,
    /// Profile spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long)]
    pub grid_min: Option<f64>,
    #[arg(long)]
    pub grid_max: Option<f64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
}

impl ProfileArgs {
    pub fn build(&self) -> Result<RadialProfile> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return ProfileSpec::from_json(&text)?.build();
        }
        let name = self.builtin.as_deref().ok_or_else(|| Error::Parse("--builtin or --spec is required".into()))?;
        let mut params = BTreeMap::new();
        for (k, v) in [("a", self.a), ("lambda", self.lambda), ("scale", self.scale)] {
            if let Some(v) = v {
                params.insert(k.to_string(), v);
            }
        }
        let grid = if self.grid_min.is_some() || self.grid_max.is_some() || self.grid_n.is_some() {
            let d = Grid::default();
            Some(Grid::new(
                self.grid_min.unwrap_or(d.min),
                self.grid_max.unwrap_or(d.max),
                self.grid_n.unwrap_or(d.n),
            )?)
        } else {
            None
        };
        builtin(name, &params, self.m, grid)
    }
}

#[derive(Debug, Subcommand)]
pub enum MetricCmd {
    /// Curvature components A, B, C on the profile grid.
    Show(ProfileArgs),
    /// Sign classification against a positivity target.
    Classify {
        #[command(flatten)]
        profile: ProfileArgs,
        /// bisectional+, orthogonal-bisectional+ or orthogonal-bisectional+ricci+ (or i, ii, iii).
        #[arg(long)]
        target: String,
    },
    /// Verify one of the example constructions.
    VerifyExample {
        /// family1, cubic, sec8-a6 or ht-perturb.
        name: String,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        strength: Option<f64>,
    },
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// 1.2i, 1.2ii, 1.3, 1.5, index, volume or diameter.
    #[arg(long)]
    pub theorem: String,
    /// Builtin model name.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub model: Option<String>,
    /// Profile spec JSON file for the model.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Model parameter `a`.
    #[arg(long)]
    pub a: Option<f64>,
    /// Comparison constant; certified from the model when absent.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 30)]
    pub points: usize,
    #[arg(long, default_value_t = crate::comparison::COMPARISON_TOL)]
    pub tolerance: f64,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// λ-thresholds of positive Ricci and holomorphic sectional curvature.
    Thresholds {
        #[arg(long, default_value_t = 1e3)]
        a_max: f64,
        #[arg(long, default_value_t = 512)]
        nodes: usize,
        #[arg(long, default_value_t = 0.05)]
        lo: f64,
        #[arg(long, default_value_t = 4.0)]
        hi: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Curvature at the affine point `(a, 0)`, or at infinity with `--infinity`.
    Probe {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        #[arg(long)]
        infinity: bool,
    },
}

/// A finished report: its JSON body, optional CSV body and pass state.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub command: String,
    pub report: serde_json::Value,
    pub csv: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(command: &str, report: &T, passed: bool) -> Result<Self> {
        Ok(Self { command: command.into(), report: serde_json::to_value(report)?, csv: None, passed })
    }

    /// Versioned JSON document.
    pub fn to_json(&self) -> Result<String> {
        let doc = json!({ "schema": SCHEMA, "command": self.command, "report": self.report });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::Parse(format!("csv output is not available for '{}'", self.command))),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

fn tensor_check(n: usize, mc_samples: usize, fixture: Option<&PathBuf>, seed: u64) -> Result<Outcome> {
    let opts = SuiteOptions { count: n, seed, mc_samples, sphere: SphereOptions::default().with_seed(seed) };
    match fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let json: TensorJson = serde_json::from_str(&text)?;
            let r = check_fixture(&json, &opts)?;
            Outcome::new("tensor check", &r, r.passed)
        }
        None => {
            let r = identity_suite(&opts)?;
            Outcome::new("tensor check", &r, r.passed)
        }
    }
}

fn metric(verb: &MetricCmd, seed: u64) -> Result<(Outcome, Format)> {
    match verb {
        MetricCmd::Show(args) => {
            let p = args.build()?;
            let rows = p.sample();
            let mut o = Outcome::new(
                "metric show",
                &json!({ "profile": p.name(), "m": p.m(), "representation": p.representation(), "rows": rows }),
                true,
            )?;
            o.csv = Some(csv_string(|b| write_csv(b, p.m(), &rows))?);
            Ok((o, Format::Csv))
        }
        MetricCmd::Classify { profile, target } => {
            let p = profile.build()?;
            let r = classify(&p, Target::parse(target)?)?;
            Ok((Outcome::new("metric classify", &r, r.verdict == Verdict::Pass)?, Format::Json))
        }
        MetricCmd::VerifyExample { name, a, lambda, m, strength } => {
            let params = ExampleParams { a: *a, lambda: *lambda, m: *m, strength: *strength, seed };
            let r = verify_example(name, &params)?;
            Ok((Outcome::new("metric verify-example", &r, r.verdict == Verdict::Pass)?, Format::Json))
        }
    }
}

fn compare_cmd(args: &CompareArgs) -> Result<Outcome> {
    let theorem = TheoremId::parse(&args.theorem)?;
    let calibration = calibration_gate(args.m)?;
    let profile = ProfileArgs {
        builtin: args.model.clone(),
        spec: args.spec.clone(),
        m: args.m,
        a: args.a,
        lambda: None,
        scale: None,
        grid_min: None,
        grid_max: None,
        grid_n: None,
    }
    .build()?;
    let opts = CompareOptions {
        lambda: args.lambda,
        points: args.points,
        tolerance: args.tolerance,
        ..Default::default()
    };
    let r = compare(&profile, theorem, &opts)?;
    let mut csv = String::from("ell,lhs,rhs\n");
    for ((l, a), b) in r.grid.iter().zip(&r.lhs).zip(&r.rhs) {
        csv.push_str(&format!("{l},{a},{b}\n"));
    }
    let passed = r.verdict == Verdict::Pass;
    let mut o = Outcome::new("compare", &json!({ "calibration": calibration, "comparison": r }), passed)?;
    o.csv = Some(csv);
    Ok(o)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub lambda: f64,
    pub point: ChartPoint,
    pub metric: [f64; 2],
    /// Unitary components `(R₁₁₁₁, R₁₁₂₂, R₂₂₂₂)` from the closed form.
    pub closed_form: (f64, f64, f64),
    pub ricci_unitary: [f64; 2],
    pub ricci_min: f64,
    pub h_min: f64,
    /// `|x₁|²` of a unit direction attaining `h_min`.
    pub h_argmin: f64,
    /// `H` minimum of the numeric tensor from the sphere extremizer.
    pub h_min_numeric: f64,
    pub numeric_unitary: (f64, f64, f64),
    /// Largest entry-wise difference between the engines.
    pub engine_difference: f64,
    pub symmetry_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

pub fn surface_probe(lambda: f64, point: ChartPoint, seed: u64) -> Result<ProbeReport> {
    let metric = BlowupSurfaceMetric::new(lambda)?;
    let cf = metric.curvature_closed_form(point)?;
    let num = metric.curvature_numeric(point, &FdOptions::default())?;
    let engine_difference =
        cf.tensor().table().iter().zip(num.unitary.table()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let (h_min, h_argmin) = cf.h_min();
    let sphere = SphereOptions::default().with_seed(seed);
    let h_min_numeric = extremize_over_sphere(&num.unitary, Functional::HolomorphicSectional, Mode::Min, &sphere).value;
    let u = &num.unitary;
    Ok(ProbeReport {
        lambda,
        point,
        metric: cf.g,
        closed_form: cf.unitary_components(),
        ricci_unitary: cf.ricci_unitary(),
        ricci_min: cf.ricci_min().0,
        h_min,
        h_argmin,
        h_min_numeric,
        numeric_unitary: (u.get(0, 0, 0, 0).re, u.get(0, 0, 1, 1).re, u.get(1, 1, 1, 1).re),
        engine_difference,
        symmetry_residual: num.symmetry_residual,
        tolerance: ENGINE_AGREEMENT_TOL,
        verdict: if engine_difference <= ENGINE_AGREEMENT_TOL { Verdict::Pass } else { Verdict::Fail },
    })
}

fn surface(verb: &SurfaceCmd, seed: u64) -> Result<Outcome> {
    match *verb {
        SurfaceCmd::Thresholds { a_max, nodes, lo, hi, tol } => {
            let opts = ThresholdOptions { a_max, nodes, lo, hi, tol };
            let ricci = threshold_ricci(&opts)?;
            let hsc = threshold_hsc(&opts)?;
            let passed = ricci.large_a.holds && hsc.large_a.holds;
            Outcome::new("surface thresholds", &json!({ "ricci": ricci, "hsc": hsc }), passed)
        }
        SurfaceCmd::Probe { lambda, a, infinity } => {
            let p = if infinity { ChartPoint::infinity() } else { ChartPoint::affine(a) };
            let r = surface_probe(lambda, p, seed)?;
            Outcome::new("surface probe", &r, r.verdict == Verdict::Pass)
        }
    }
}

/// Run a parsed command; returns the outcome and its default output format.
pub fn execute(cfg: &RunConfig) -> Result<(Outcome, Format)> {
    let run = || -> Result<(Outcome, Format)> {
        match &cfg.command {
            Command::Tensor { verb: TensorCmd::Check { n, mc_samples, fixture } } => {
                Ok((tensor_check(*n, *mc_samples, fixture.as_ref(), cfg.seed)?, Format::Json))
            }
            Command::Metric { verb } => metric(verb, cfg.seed),
            Command::Compare(args) => Ok((compare_cmd(args)?, Format::Json)),
            Command::Surface { verb } => Ok((surface(verb, cfg.seed)?, Format::Json)),
        }
    };
    match cfg.jobs {
        Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("--jobs {j}: {e}")))?
            .install(run),
        _ => run(),
    }
}

/// Execute, render and write; the error path prints to stderr.
pub fn run(cfg: &RunConfig) -> ExitCode {
    let result = execute(cfg).and_then(|(outcome, default)| {
        let text = outcome.render(cfg.format.unwrap_or(default))?;
        match &cfg.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
            None => match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            },
        }
        Ok(outcome)
    });
    match result {
        Ok(o) => {
            if !o.passed {
                eprintln!("{}: report contains a failed verdict", o.command);
                if let Some(seeds) = o.report.get("failing_seeds").and_then(|s| s.as_array()) {
                    if !seeds.is_empty() {
                        let list: Vec<String> = seeds.iter().map(|s| s.to_string()).collect();
                        eprintln!("failing instance seeds: {}", list.join(", "));
                    }
                }
                if let Some(v) = o.report.get("violations").and_then(|s| s.as_array()) {
                    for x in v {
                        eprintln!("violation: {x}");
                    }
                }
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
