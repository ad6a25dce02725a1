use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use conelaw::fields::{FieldSpec, SlopeMode};
use conelaw::report::{self, Format, RunConfig};
use conelaw::{Error, Result};

/// Check homogeneity, superadditivity and concavity of a catalog field.
#[derive(Debug, Parser)]
#[command(name = "conelaw", version)]
struct Cli {
    /// Catalog field: f0, f0-multi, bekenstein, photon, linear, boundary-phi.
    #[arg(long)]
    field: String,
    /// Scale parameter of the f0 fields.
    #[arg(long)]
    c: Option<f64>,
    /// Tail slope of f0: tangent or paper-squared.
    #[arg(long = "slope-mode")]
    slope_mode: Option<String>,
    /// Dimension of f0-multi.
    #[arg(long)]
    dim: Option<usize>,
    /// Charge of the bekenstein field.
    #[arg(long = "Q")]
    q: Option<f64>,
    /// Comma-separated coefficients of the linear field.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    coeffs: Option<Vec<f64>>,
    /// Comma-separated checks: H, Sp, SpStrict, Cc, CcStrict, liminf, chain, ratio, support.
    #[arg(long, default_value = "H,Sp,Cc,liminf")]
    properties: String,
    #[arg(long, default_value_t = report::DEFAULT_SAMPLES)]
    samples: usize,
    /// Overridden by the CONELAW_SEED environment variable.
    #[arg(long, default_value_t = report::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = report::DEFAULT_TOL)]
    tol: f64,
    /// Relative step for first derivatives.
    #[arg(long = "fd-step")]
    fd_step: Option<f64>,
    /// Relative step for second derivatives.
    #[arg(long = "hessian-step")]
    hessian_step: Option<f64>,
    /// Liminf shell radii: `a:b` (decades), `a:b:n`, or a comma list.
    #[arg(long, default_value = "1e-1:1e-6")]
    radii: String,
    /// Deduce the third property from the first two measured ones.
    #[arg(long)]
    deduce: bool,
    /// Search for a witness against H, Sp or Cc.
    #[arg(long)]
    falsify: Option<String>,
    /// Expectation overrides, e.g. `Cc=false,liminf=true`.
    #[arg(long)]
    expect: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json, csv or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let spec = FieldSpec {
        name: cli.field.clone(),
        c: cli.c,
        slope_mode: cli.slope_mode.as_deref().map(str::parse::<SlopeMode>).transpose()?,
        dim: cli.dim,
        q: cli.q,
        coeffs: cli.coeffs.clone(),
    };
    let seed = match std::env::var("CONELAW_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("CONELAW_SEED `{s}` is not an unsigned integer")))?,
        Err(_) => cli.seed,
    };
    let mut cfg = RunConfig::for_field(spec)?.with_seed(seed);
    cfg.properties = report::parse_checks(&cli.properties)?;
    cfg.sample.count = cli.samples;
    cfg.tol = cli.tol;
    if let Some(s) = cli.fd_step {
        cfg.fd_step = s;
    }
    if let Some(s) = cli.hessian_step {
        cfg.hessian_step = s;
    }
    cfg.radii = report::parse_radii(&cli.radii)?;
    cfg.deduce = cli.deduce;
    cfg.falsify = cli.falsify.as_deref().map(report::parse_property).transpose()?;
    if let Some(e) = &cli.expect {
        cfg.expect = report::parse_expectations(e)?;
    }
    cfg.output = cli.out.clone();
    cfg.format = cli.format.parse::<Format>()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Usage(format!("cannot start {n} threads: {e}")))?;
    }
    let cfg = config(cli)?;
    let report = report::run_suite(&cfg)?;
    let bytes = report::emit_report(&report, cfg.format)?;
    match &cfg.output {
        Some(path) => report::write_output(path, &bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("conelaw: {e}");
            ExitCode::from(2)
        }
    }
}
