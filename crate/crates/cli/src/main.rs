//! `teichwp` — verification CLI for hyperbolic-weighted differential norms,
//! Schwarzian calculus, the harmonic-Beltrami projection kernel, and
//! Weil-Petersson pairings on the unit disk.
//!
//! Exit codes: 0 all checks/inequalities pass, 1 at least one check fails,
//! 2 usage, configuration, or input-file errors.
//!
//! Worker-thread count is taken from `RAYON_NUM_THREADS` when the binary is
//! built with the (default) `parallel` feature; results are bitwise
//! independent of it.

mod config;
mod files;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use teichwp::diff::HarmonicBeltrami;
use teichwp::project::MomentVector;
use teichwp::verify::{self, CheckOutcome};
use teichwp::{annulus, project, quad, wp};

use config::{resolve, FlagOverrides};
use files::{CoeffFile, KIND_HARMONIC};
use report::Report;

const EXIT_PASS: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "teichwp",
    version,
    about = "Numerical checks for weighted norms, Schwarzians and Beltrami projections on the disk",
    after_help = "Set RAYON_NUM_THREADS to control the worker pool (parallel builds only);\n\
                  all outputs are bitwise independent of the thread count."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full registered check suite and write a JSON report.
    Verify(VerifyArgs),
    /// Project disk Beltrami data onto its harmonic part.
    Project(ProjectArgs),
    /// Tabulate annulus sup-norm bound trials as CSV.
    AnnulusBound(BoundArgs),
    /// Emit the quadrature nodes and weights of a rule as CSV.
    Nodes(NodesArgs),
    /// Assemble the Weil-Petersson Gram matrix of harmonic coefficient files.
    Gram(GramArgs),
}

/// Numeric options shared by subcommands; unset values fall back to the
/// `--config` file, then to built-in defaults (64 x 256 rule, degree 32,
/// tol scale 1, seed 42).
#[derive(Args, Debug, Clone, Copy)]
struct CommonOpts {
    /// Radial quadrature points.
    #[arg(long)]
    nr: Option<usize>,
    /// Angular quadrature points.
    #[arg(long)]
    ntheta: Option<usize>,
    /// Series truncation degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Multiplier applied to every deviation tolerance.
    #[arg(long)]
    tol_scale: Option<f64>,
    /// Base seed for all randomized trials.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the per-check trial counts.
    #[arg(long)]
    trials: Option<usize>,
}

impl CommonOpts {
    fn overrides(&self) -> FlagOverrides {
        FlagOverrides {
            n_radial: self.nr,
            n_angular: self.ntheta,
            degree: self.degree,
            tol_scale: self.tol_scale,
            seed: self.seed,
            trials: self.trials,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// JSON config file with the same keys as the numeric flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report output path.
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
    /// Run only the named check (repeatable); default is the full registry.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Record wall-clock runtimes in the report (makes reruns differ).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ProjectArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// JSON config file with the same keys as the numeric flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input: harmonic coefficient JSON, or CSV samples `index,re,im` taken
    /// at the nodes of the configured rule (see `teichwp nodes`).
    #[arg(long)]
    input: PathBuf,
    /// Output coefficient file.
    #[arg(long, default_value = "projection.json")]
    out: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// JSON config file with the same keys as the numeric flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Outer radius of the data annulus (> 1).
    #[arg(long)]
    r: f64,
    /// Outer radius of the evaluation annulus (1 < t < r).
    #[arg(long)]
    t: f64,
    /// Output CSV table.
    #[arg(long, default_value = "bound_table.csv")]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DomainArg {
    Disk,
    Annulus,
}

#[derive(Args)]
struct NodesArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// JSON config file with the same keys as the numeric flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Integration region.
    #[arg(long, value_enum, default_value_t = DomainArg::Disk)]
    domain: DomainArg,
    /// Outer radius: 1 for the unit disk (default), > 1 for an annulus.
    #[arg(long)]
    radius: Option<f64>,
    /// Output CSV.
    #[arg(long, default_value = "nodes.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct GramArgs {
    /// Harmonic coefficient files forming the basis (repeatable, >= 1).
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    /// Output CSV of entries `i,j,re,im`.
    #[arg(long, default_value = "gram.csv")]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Project(args) => cmd_project(args),
        Cmd::AnnulusBound(args) => cmd_annulus_bound(args),
        Cmd::Nodes(args) => cmd_nodes(args),
        Cmd::Gram(args) => cmd_gram(args),
    }
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let resolved = resolve(args.config.as_deref(), args.common.overrides())?;
    let cfg = resolved.to_verify_config();
    cfg.validate().map_err(anyhow::Error::from)?;

    let names: Vec<&'static str> = {
        let registry = verify::registry();
        if args.checks.is_empty() {
            registry.iter().map(|d| d.name).collect()
        } else {
            let mut names = Vec::with_capacity(args.checks.len());
            for want in &args.checks {
                match registry.iter().find(|d| d.name == want.as_str()) {
                    Some(d) => names.push(d.name),
                    None => bail!("unknown check {want:?}; run `teichwp verify --help`"),
                }
            }
            names
        }
    };

    let mut outcomes: Vec<CheckOutcome> = Vec::with_capacity(names.len());
    let mut runtimes: Vec<u64> = Vec::with_capacity(names.len());
    for name in names {
        let started = Instant::now();
        let outcome = verify::run_named(name, &cfg).map_err(anyhow::Error::from)?;
        runtimes.push(started.elapsed().as_millis() as u64);
        print_outcome(&outcome, args.timings.then(|| *runtimes.last().unwrap()));
        outcomes.push(outcome);
    }

    let report = Report::from_outcomes(
        "verify",
        resolved,
        &outcomes,
        args.timings.then_some(runtimes.as_slice()),
    );
    report.write(&args.out)?;

    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!(
        "verify: {passed}/{} checks passed, report written to {}",
        outcomes.len(),
        args.out.display()
    );
    Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn print_outcome(o: &CheckOutcome, runtime_ms: Option<u64>) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    let timing = runtime_ms.map_or(String::new(), |ms| format!("  [{ms} ms]"));
    println!(
        "{status}  {:<34} value={:<13} bound={:<13} tol={}{timing}",
        o.name,
        format!("{:.6e}", o.value),
        format!("{:.6e}", o.bound),
        format!("{:.1e}", o.tol),
    );
}

// ---------------------------------------------------------------------------
// project

fn cmd_project(args: ProjectArgs) -> Result<i32> {
    let resolved = resolve(args.config.as_deref(), args.common.overrides())?;
    let rule = quad::disk_rule(resolved.n_radial, resolved.n_angular, 1.0)
        .map_err(anyhow::Error::from)?;

    let is_csv = args
        .input
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let samples: Vec<Complex64> = if is_csv {
        files::read_values_csv(&args.input, rule.len())?
    } else {
        let mu = files::read_coeff_file(&args.input)?
            .to_harmonic()
            .with_context(|| format!("{}", args.input.display()))?;
        rule.nodes().iter().map(|&z| mu.eval(z)).collect()
    };

    let degree = resolved.degree;
    let moments = sample_moments(&rule, &samples, degree)?;
    let projection = HarmonicBeltrami::new(
        project::k_series_from_moments(&moments).coeffs().to_vec(),
    );

    let harmonic_moments = project::moments_of_harmonic(&projection, degree);
    let residual_sup = (0..=degree)
        .map(|n| (moments.value(n) - harmonic_moments.value(n)).norm())
        .fold(0.0f64, f64::max);
    let node_sup = samples.iter().map(|v| v.norm()).fold(0.0f64, f64::max);

    files::write_coeff_file(
        &args.out,
        &CoeffFile::from_complex(KIND_HARMONIC, 0, projection.coeffs()),
    )?;

    println!(
        "project: {} values on a {}x{} rule, degree {degree}",
        samples.len(),
        resolved.n_radial,
        resolved.n_angular
    );
    println!("node sup |input|      = {node_sup:.6e}");
    println!("residual moment sup   = {residual_sup:.6e}");
    println!("projection written to {}", args.out.display());
    Ok(EXIT_PASS)
}

/// Moments `M_n = integral of z^n * nu(z)` from samples at the rule nodes.
fn sample_moments(
    rule: &quad::QuadratureRule,
    samples: &[Complex64],
    degree: usize,
) -> Result<MomentVector> {
    let mut values = Vec::with_capacity(degree + 1);
    let mut scaled = samples.to_vec();
    for n in 0..=degree {
        if n > 0 {
            for (s, &z) in scaled.iter_mut().zip(rule.nodes()) {
                *s *= z;
            }
        }
        values.push(quad::integrate_samples(rule, &scaled).map_err(anyhow::Error::from)?);
    }
    Ok(MomentVector::new(values))
}

// ---------------------------------------------------------------------------
// annulus-bound

fn cmd_annulus_bound(args: BoundArgs) -> Result<i32> {
    let resolved = resolve(args.config.as_deref(), args.common.overrides())?;
    let trials = resolved.trials.unwrap_or(200);
    let constant = annulus::sup_bound_constant(args.r, args.t).map_err(anyhow::Error::from)?;
    let rows = verify::bound_trials(
        args.r,
        args.t,
        trials,
        resolved.seed,
        resolved.n_radial,
        resolved.n_angular,
    )
    .map_err(anyhow::Error::from)?;

    let mut w = csv::Writer::from_path(&args.out)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    w.write_record(["trial", "sup", "norm", "bound", "ratio"])?;
    for row in &rows {
        w.write_record([
            row.trial.to_string(),
            row.sup.to_string(),
            row.norm.to_string(),
            row.bound.to_string(),
            row.ratio.to_string(),
        ])?;
    }
    w.flush()?;

    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    let ok = max_ratio <= 1.0;
    println!(
        "annulus-bound: r={} t={} C={constant:.6e} trials={trials} max_ratio={max_ratio:.6e} -> {}",
        args.r,
        args.t,
        if ok { "PASS" } else { "FAIL" }
    );
    println!("table written to {}", args.out.display());
    Ok(if ok { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

// ---------------------------------------------------------------------------
// nodes

fn cmd_nodes(args: NodesArgs) -> Result<i32> {
    let resolved = resolve(args.config.as_deref(), args.common.overrides())?;
    let rule = match args.domain {
        DomainArg::Disk => {
            let radius = args.radius.unwrap_or(1.0);
            quad::disk_rule(resolved.n_radial, resolved.n_angular, radius)
                .map_err(anyhow::Error::from)?
        }
        DomainArg::Annulus => {
            let radius = args
                .radius
                .context("--domain annulus requires --radius > 1")?;
            quad::annulus_rule(radius, resolved.n_radial, resolved.n_angular)
                .map_err(anyhow::Error::from)?
        }
    };
    files::write_nodes_csv(&args.out, &rule)?;
    println!(
        "nodes: {} nodes ({}x{}) written to {}",
        rule.len(),
        resolved.n_radial,
        resolved.n_angular,
        args.out.display()
    );
    Ok(EXIT_PASS)
}

// ---------------------------------------------------------------------------
// gram

fn cmd_gram(args: GramArgs) -> Result<i32> {
    let mut basis = Vec::with_capacity(args.input.len());
    for path in &args.input {
        let mu = files::read_coeff_file(path)?
            .to_harmonic()
            .with_context(|| format!("{}", path.display()))?;
        basis.push(mu);
    }
    let gram = wp::wp_gram_exact(&basis);

    let mut w = csv::Writer::from_path(&args.out)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    w.write_record(["i", "j", "re", "im"])?;
    for i in 0..gram.dim() {
        for j in 0..gram.dim() {
            let g = gram.entry(i, j);
            w.write_record([
                i.to_string(),
                j.to_string(),
                g.re.to_string(),
                g.im.to_string(),
            ])?;
        }
    }
    w.flush()?;

    println!(
        "gram: dim={} hermitian_defect={:.6e} min_eigenvalue={:.6e}",
        gram.dim(),
        gram.hermitian_defect(),
        gram.min_eigenvalue()
    );
    println!("matrix written to {}", args.out.display());
    Ok(EXIT_PASS)
}
