//! Suite orchestration and serialized reports.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checkers::{
    self, chain::DEFAULT_N_MAX, liminf::default_radii, one_dim::log_grid, HessianReport, LiminfEstimate,
    RatioReport, ScalingTable, Status, TheoremReport, Verdict, Witness,
};
use crate::domain::{sample_region, RegionDescriptor, SampleConfig};
use crate::error::{Error, Result};
use crate::falsifier::{falsify, SearchBudget};
use crate::fields::{resolve, FieldSpec, ScalarField};
use crate::property::PropertyId;

/// A check the suite can run, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Check {
    H,
    Sp,
    SpStrict,
    Cc,
    CcStrict,
    #[serde(rename = "liminf")]
    Liminf,
    #[serde(rename = "chain")]
    Chain,
    #[serde(rename = "ratio")]
    Ratio,
    #[serde(rename = "support")]
    Support,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::H,
        Check::Sp,
        Check::SpStrict,
        Check::Cc,
        Check::CcStrict,
        Check::Liminf,
        Check::Chain,
        Check::Ratio,
        Check::Support,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::H => "H",
            Check::Sp => "Sp",
            Check::SpStrict => "SpStrict",
            Check::Cc => "Cc",
            Check::CcStrict => "CcStrict",
            Check::Liminf => "liminf",
            Check::Chain => "chain",
            Check::Ratio => "ratio",
            Check::Support => "support",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.as_str()).collect();
                Error::Usage(format!("unknown property `{s}`; valid: {}", names.join(", ")))
            })
    }
}

/// Comma-separated checks, duplicates dropped.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let c: Check = part.parse()?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("no properties given".into()));
    }
    Ok(out)
}

/// A property name as accepted by `--falsify` and `--expect`; `liminf` is
/// an alias of `LiminfOK`.
pub fn parse_property(s: &str) -> Result<PropertyId> {
    if s.trim().eq_ignore_ascii_case("liminf") {
        return Ok(PropertyId::LiminfOK);
    }
    s.trim().parse()
}

/// An expectation supplied by the caller instead of the field's declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectOverride {
    pub property: PropertyId,
    pub holds: bool,
}

/// `Cc=false,H=true`.
pub fn parse_expectations(s: &str) -> Result<Vec<ExpectOverride>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expectation `{part}` is not of the form NAME=true|false")))?;
            let holds = match value.trim().to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => true,
                "false" | "no" | "0" => false,
                other => return Err(Error::Usage(format!("expectation value `{other}` is not a boolean"))),
            };
            Ok(ExpectOverride {
                property: parse_property(name)?,
                holds,
            })
        })
        .collect()
}

/// Radii as `a:b` (decades from `a` down to `b`), `a:b:n` (`n` geometric
/// steps) or a comma list.
pub fn parse_radii(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Usage(format!("cannot parse radii `{s}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let radii: Vec<f64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (a, b) = (num(parts[0])?, num(parts.get(1).ok_or_else(bad)?)?);
        if !(a > 0.0 && b > 0.0 && a > b) || parts.len() > 3 {
            return Err(bad());
        }
        let n = match parts.get(2) {
            Some(t) => t.trim().parse::<usize>().map_err(|_| bad())?,
            None => ((a / b).log10().round() as usize + 1).max(2),
        };
        if n < 2 {
            return Err(bad());
        }
        let (la, lb) = (a.ln(), b.ln());
        (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) || radii.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::Usage(format!("radii `{s}` must be positive and strictly decreasing")));
    }
    Ok(radii)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Format {
    #[default]
    Json,
    CsvWitnesses,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" | "csv-witnesses" => Ok(Format::CsvWitnesses),
            "text" | "human" => Ok(Format::Text),
            _ => Err(Error::Usage(format!("unknown format `{s}`; valid: json, csv, text"))),
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_HESSIAN_POINTS: usize = 100;
pub const DEFAULT_SAMPLES_PER_SHELL: usize = 2000;
pub const DEFAULT_RATIO_GRID: usize = 200;
pub const SCALING_LAMBDA: f64 = std::f64::consts::SQRT_2;
pub const SCALING_K_MAX: usize = 8;

/// Everything that determines a run. Reports embed it verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub properties: Vec<Check>,
    pub sample: SampleConfig,
    pub tol: f64,
    /// Relative step for first derivatives.
    pub fd_step: f64,
    /// Relative step for second derivatives.
    pub hessian_step: f64,
    pub hessian_points: usize,
    pub radii: Vec<f64>,
    pub samples_per_shell: usize,
    pub n_max: u32,
    pub deduce: bool,
    pub falsify: Option<PropertyId>,
    pub budget: SearchBudget,
    pub expect: Vec<ExpectOverride>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Defaults for a catalog field, sampling over its preferred range.
    pub fn for_field(field: FieldSpec) -> Result<Self> {
        let f = resolve(&field)?;
        Ok(RunConfig {
            field,
            properties: vec![Check::H, Check::Sp, Check::Cc, Check::Liminf],
            sample: SampleConfig::new(DEFAULT_SEED, DEFAULT_SAMPLES, f.sampling_range()),
            tol: DEFAULT_TOL,
            fd_step: crate::numdiff::FIRST_DERIVATIVE_STEP,
            hessian_step: crate::numdiff::SECOND_DERIVATIVE_STEP,
            hessian_points: DEFAULT_HESSIAN_POINTS,
            radii: default_radii(),
            samples_per_shell: DEFAULT_SAMPLES_PER_SHELL,
            n_max: DEFAULT_N_MAX,
            deduce: false,
            falsify: None,
            budget: SearchBudget::default().with_seed(DEFAULT_SEED),
            expect: Vec::new(),
            output: None,
            format: Format::Json,
        })
    }

    /// Use `seed` for sampling and for the falsifier.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sample.seed = seed;
        self.budget.seed = seed;
        self
    }

    fn expected(&self, f: &ScalarField, p: PropertyId) -> (Option<bool>, Source) {
        match self.expect.iter().rev().find(|e| e.property == p) {
            Some(e) => (Some(e.holds), Source::Override),
            None => (f.declared().expected(p), Source::Declared),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Declared,
    Override,
    Deduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Match,
    Mismatch,
    /// No expectation to compare against.
    Unchecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationCheck {
    pub property: PropertyId,
    pub expected: Option<bool>,
    pub observed: Option<bool>,
    pub source: Source,
    pub outcome: Outcome,
}

impl ExpectationCheck {
    fn new(property: PropertyId, expected: Option<bool>, observed: Option<bool>, source: Source) -> Self {
        let outcome = match expected {
            None => Outcome::Unchecked,
            Some(e) if observed == Some(e) => Outcome::Match,
            Some(_) => Outcome::Mismatch,
        };
        ExpectationCheck {
            property,
            expected,
            observed,
            source,
            outcome,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub region: RegionDescriptor,
    pub verdicts: Vec<Verdict>,
    pub liminf: Option<LiminfEstimate>,
    pub hessian: Option<HessianReport>,
    pub ratio: Option<RatioReport>,
    pub scaling: Option<ScalingTable>,
    pub theorem: Option<TheoremReport>,
    pub expectations: Vec<ExpectationCheck>,
    pub witnesses: Vec<Witness>,
    /// Excluded from determinism comparisons.
    pub wall_clock_seconds: f64,
}

impl Report {
    /// 0 when every expectation matched, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.expectations.iter().any(|e| e.outcome == Outcome::Mismatch) {
            1
        } else {
            0
        }
    }

    pub fn verdict(&self, p: PropertyId) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.property == p)
    }
}

fn require_1d(f: &ScalarField, check: Check) -> Result<()> {
    if f.dimension() != 1 {
        return Err(Error::Usage(format!(
            "`{check}` needs a one-dimensional field; `{}` has dimension {}",
            f.name(),
            f.dimension()
        )));
    }
    Ok(())
}

fn scaling_table(f: &ScalarField, sample: &SampleConfig, tol: f64) -> Result<Option<ScalingTable>> {
    let probe = sample_region(f.region(), &sample.clone().with_count(64))?;
    let u = probe.iter().find(|u| f.region().contains_coords(u.scaled(SCALING_LAMBDA).coords()));
    u.map(|u| checkers::check_irrational_scaling(f, SCALING_LAMBDA, u, SCALING_K_MAX, tol))
        .transpose()
}

/// Run the configured checks and assemble a report.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = resolve(&cfg.field)?;
    if !(cfg.tol.is_finite() && cfg.tol >= 0.0) {
        return Err(Error::Usage(format!("tolerance must be finite and nonnegative, got {}", cfg.tol)));
    }
    for (name, step) in [("fd-step", cfg.fd_step), ("hessian-step", cfg.hessian_step)] {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Usage(format!("{name} must be positive, got {step}")));
        }
    }
    let tol = cfg.tol;
    let sample = &cfg.sample;
    let mut report = Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        region: f.region().descriptor(),
        verdicts: Vec::new(),
        liminf: None,
        hessian: None,
        ratio: None,
        scaling: None,
        theorem: None,
        expectations: Vec::new(),
        witnesses: Vec::new(),
        wall_clock_seconds: 0.0,
    };
    let mut chain: Option<Vec<Verdict>> = None;
    let liminf = |f: &ScalarField| estimate(f, cfg);

    for &check in &cfg.properties {
        match check {
            Check::H => report.verdicts.push(checkers::check_homogeneity(
                &f,
                sample,
                &checkers::DEFAULT_HOMOGENEITY_LAMBDAS,
                tol,
            )?),
            Check::Sp => report.verdicts.push(checkers::check_superadditivity(&f, sample, tol, false)?),
            Check::SpStrict => report.verdicts.push(checkers::check_superadditivity(&f, sample, tol, true)?),
            Check::Cc => report.verdicts.push(checkers::check_concavity(
                &f,
                sample,
                &checkers::DEFAULT_CONCAVITY_LAMBDAS,
                tol,
            )?),
            Check::CcStrict => {
                let pts = sample_region(f.region(), &sample.clone().with_count(cfg.hessian_points))?;
                let h = checkers::check_concavity_hessian(&f, &pts, cfg.hessian_step)?;
                let strict = h.strict.clone().unwrap_or_else(|| {
                    let mut v = Verdict {
                        property: PropertyId::CcStrict,
                        ..h.necessary.clone()
                    };
                    v.status = Status::Inconclusive;
                    v
                });
                report.verdicts.push(strict);
                report.hessian = Some(h);
            }
            Check::Liminf => report.liminf = Some(liminf(&f)?),
            Check::Chain => {
                let vs = checkers::check_homogeneity_chain(&f, sample, cfg.n_max, tol)?;
                report.verdicts.extend(vs.iter().cloned());
                chain = Some(vs);
                report.scaling = scaling_table(&f, sample, tol)?;
            }
            Check::Ratio => {
                require_1d(&f, check)?;
                let (lo, hi) = sample.coord_range;
                let r = checkers::check_ratio_constancy_1d(&f, &log_grid(lo, hi, DEFAULT_RATIO_GRID), tol)?;
                report.verdicts.push(r.verdict.clone());
                report.ratio = Some(r);
            }
            Check::Support => {
                require_1d(&f, check)?;
                let (lo, hi) = sample.coord_range;
                let x0 = (lo * hi).sqrt();
                report.verdicts.push(checkers::one_dim::check_support_line_1d_with_step(
                    &f,
                    x0,
                    sample,
                    tol,
                    cfg.fd_step,
                )?);
            }
        }
    }
    let direct = report.verdicts.len();

    if let Some(p) = cfg.falsify {
        report.verdicts.push(falsify(&f, p, &cfg.budget, tol)?);
    }

    if cfg.deduce {
        let core: Vec<&Verdict> = report.verdicts[..direct]
            .iter()
            .filter(|v| {
                matches!(
                    v.property,
                    PropertyId::H | PropertyId::Sp | PropertyId::SpStrict | PropertyId::Cc | PropertyId::CcStrict
                )
            })
            .collect();
        let mut pair = None;
        'outer: for (i, a) in core.iter().enumerate() {
            for b in &core[i + 1..] {
                if core_of(a.property) != core_of(b.property) {
                    pair = Some((*a, *b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = pair else {
            return Err(Error::Usage("--deduce needs verdicts on two of H, Sp, Cc".into()));
        };
        if report.liminf.is_none() {
            report.liminf = Some(liminf(&f)?);
        }
        let lim = report.liminf.as_ref().expect("liminf computed above");
        let mut theorem = checkers::deduce_third_property(a, b, lim)?;
        if theorem.rule == checkers::TheoremRule::SpCcLiminfImpliesH {
            let evidence = match chain.take() {
                Some(vs) => vs,
                None => checkers::check_homogeneity_chain(&f, sample, cfg.n_max, tol)?,
            };
            theorem = theorem.with_chain_evidence(evidence);
        }
        report.theorem = Some(theorem);
    }

    report.expectations = expectations(cfg, &f, &report);
    report.witnesses = report.verdicts.iter().filter_map(|v| v.witness.clone()).collect();
    report.wall_clock_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

fn estimate(f: &ScalarField, cfg: &RunConfig) -> Result<LiminfEstimate> {
    checkers::estimate_apex_liminf(f, &cfg.radii, cfg.samples_per_shell, cfg.sample.seed, cfg.tol)
}

fn core_of(p: PropertyId) -> PropertyId {
    match p {
        PropertyId::SpStrict => PropertyId::Sp,
        PropertyId::CcStrict => PropertyId::Cc,
        other => other,
    }
}

fn expectations(cfg: &RunConfig, f: &ScalarField, report: &Report) -> Vec<ExpectationCheck> {
    let mut out = Vec::new();
    for v in &report.verdicts {
        let (expected, source) = cfg.expected(f, v.property);
        out.push(ExpectationCheck::new(v.property, expected, v.status.holds(), source));
    }
    if let Some(l) = &report.liminf {
        let (expected, source) = cfg.expected(f, PropertyId::LiminfOK);
        out.push(ExpectationCheck::new(PropertyId::LiminfOK, expected, l.holds(), source));
    }
    if let Some(d) = report.theorem.as_ref().and_then(|t| t.deduced) {
        // deduction must agree with any direct measurement of the same property
        for v in report.verdicts.iter().filter(|v| v.property == d.property) {
            out.push(ExpectationCheck::new(d.property, Some(d.expected), v.status.holds(), Source::Deduced));
        }
    }
    out
}

/// Serialize a report. JSON round-trips losslessly.
pub fn emit_report(r: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(r)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::CsvWitnesses => witnesses_csv(&r.witnesses),
        Format::Text => Ok(text(r).into_bytes()),
    }
}

/// Write `bytes` to `path`, reporting the path on failure.
pub fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(";")
}

/// CSV rows: property, points (coordinates `;`-joined, points `|`-joined),
/// lambda, values, violation.
pub fn witnesses_csv(ws: &[Witness]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["property", "points", "lambda", "values", "violation"])?;
    for wit in ws {
        let points = wit.points.iter().map(|p| join(p.coords())).collect::<Vec<_>>().join("|");
        let lambda = wit.lambda.map(|l| format!("{l:?}")).unwrap_or_default();
        w.write_record([
            wit.property.as_str(),
            &points,
            &lambda,
            &join(&wit.values),
            &format!("{:?}", wit.violation),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Io {
        path: PathBuf::from("<csv buffer>"),
        source: e.into_error(),
    })
}

fn status_mark(s: Status) -> &'static str {
    match s {
        Status::Satisfied => "holds",
        Status::SatisfiedUpToBudget => "no witness found",
        Status::Falsified => "FAILS",
        Status::Inconclusive => "inconclusive",
    }
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "conelaw {}: field `{}`", r.version, r.config.field.name);
    for v in &r.verdicts {
        let _ = writeln!(
            s,
            "  {:<14} {:<17} samples {:>7} (skipped {}), worst slack {:.3e} [{:?}]",
            v.property.as_str(),
            status_mark(v.status),
            v.samples_checked,
            v.samples_skipped,
            v.worst_margin,
            v.method,
        );
        if let Some(w) = &v.witness {
            let pts: Vec<String> = w.points.iter().map(|p| p.to_string()).collect();
            let lambda = w.lambda.map(|l| format!(", λ = {l}")).unwrap_or_default();
            let _ = writeln!(s, "      witness {}{lambda}: violation {:.6e}", pts.join(" "), w.violation);
        }
    }
    if let Some(l) = &r.liminf {
        let _ = writeln!(s, "  liminf at the apex: {:?}", l.classification);
        for (radius, inf) in l.radii.iter().zip(&l.shell_infima) {
            match inf {
                Some(v) => {
                    let _ = writeln!(s, "      r = {radius:.1e}: min {v:.6}");
                }
                None => {
                    let _ = writeln!(s, "      r = {radius:.1e}: empty shell");
                }
            }
        }
    }
    if let Some(t) = &r.scaling {
        let _ = writeln!(s, "  scaling by convergents of {}:", t.lambda);
        for row in &t.rows {
            let _ = writeln!(
                s,
                "      k={} {}/{}: homogeneity {:.3e}, limit {:.3e}",
                row.k, row.p, row.q, row.homogeneity_residual, row.limit_residual
            );
        }
    }
    if let Some(t) = &r.theorem {
        let _ = writeln!(s, "  deduction: {}", t.narrative());
    }
    let mismatches: Vec<_> = r
        .expectations
        .iter()
        .filter(|e| e.outcome == Outcome::Mismatch)
        .map(|e| e.property.as_str())
        .collect();
    if mismatches.is_empty() {
        let _ = writeln!(s, "  all expectations met");
    } else {
        let _ = writeln!(s, "  expectation mismatch: {}", mismatches.join(", "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str, props: &str) -> RunConfig {
        let mut cfg = RunConfig::for_field(FieldSpec::named(name)).unwrap();
        cfg.properties = parse_checks(props).unwrap();
        cfg.sample.count = 1000;
        cfg.samples_per_shell = 200;
        cfg.budget.random_probes = 256;
        cfg.budget.refine_iterations = 100;
        cfg
    }

    #[test]
    fn radii_forms() {
        let r = parse_radii("1e-1:1e-6").unwrap();
        assert_eq!(r.len(), 6);
        assert!((r[5] - 1e-6).abs() < 1e-18);
        assert_eq!(parse_radii("1:0.01:3").unwrap().len(), 3);
        assert_eq!(parse_radii("0.5,0.25").unwrap(), vec![0.5, 0.25]);
        assert!(parse_radii("0.1,0.2").is_err());
        assert!(parse_radii("x").is_err());
    }

    #[test]
    fn check_names() {
        assert_eq!(parse_checks("h, Sp,cc,liminf,Sp").unwrap(), vec![Check::H, Check::Sp, Check::Cc, Check::Liminf]);
        let err = parse_checks("Q").unwrap_err().to_string();
        assert!(err.contains("valid: H, Sp"));
    }

    #[test]
    fn expectation_overrides() {
        let e = parse_expectations("Cc=false, liminf=true").unwrap();
        assert_eq!(e[0], ExpectOverride { property: PropertyId::Cc, holds: false });
        assert_eq!(e[1].property, PropertyId::LiminfOK);
        assert!(parse_expectations("Cc").is_err());
    }

    #[test]
    fn photon_deduces_superadditivity() {
        let mut cfg = quick("photon", "H,Cc");
        cfg.deduce = true;
        let r = run_suite(&cfg).unwrap();
        let t = r.theorem.as_ref().unwrap();
        assert_eq!(t.rule, checkers::TheoremRule::HCcImpliesSp);
        assert_eq!(r.exit_code(), 0);
        let text = String::from_utf8(emit_report(&r, Format::Text).unwrap()).unwrap();
        assert!(text.contains("H ∧ Cc ⇒ Sp"));
    }

    #[test]
    fn wrong_expectation_exits_one() {
        let mut cfg = quick("photon", "H");
        cfg.expect = parse_expectations("H=false").unwrap();
        assert_eq!(run_suite(&cfg).unwrap().exit_code(), 1);
    }

    #[test]
    fn deduce_without_two_properties_is_usage() {
        let mut cfg = quick("photon", "H,liminf");
        cfg.deduce = true;
        assert!(matches!(run_suite(&cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn empty_report_has_empty_verdicts() {
        let mut cfg = quick("linear", "liminf");
        cfg.radii = vec![0.1];
        let r = run_suite(&cfg).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(v["verdicts"], serde_json::json!([]));
    }

    #[test]
    fn f0_homogeneity_witness_row() {
        let f = crate::fields::make_f0(1.0, crate::fields::SlopeMode::Tangent).unwrap();
        let v = checkers::check_homogeneity_points(&f, &[crate::domain::Point::from([1.0])], &[2.0], 1e-9).unwrap();
        let csv = String::from_utf8(witnesses_csv(&[v.witness.unwrap()]).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "property,points,lambda,values,violation");
        let violation: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
        assert!((violation - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn ratio_needs_one_dimension() {
        let cfg = quick("photon", "ratio");
        assert!(matches!(run_suite(&cfg), Err(Error::Usage(_))));
    }
}
