//! One-dimensional checks: support lines and the ratio `f(x)/x`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verdict::{reduce, CheckMethod, Evaluation, Sample, Status, Verdict, Witness, WitnessKind};
use crate::domain::{sample_region, Point, SampleConfig};
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::numdiff;
use crate::property::PropertyId;

fn require_1d(f: &ScalarField) -> Result<()> {
    if f.dimension() != 1 {
        return Err(Error::contract(format!(
            "`{}` is {}-dimensional; this check needs one dimension",
            f.name(),
            f.dimension()
        )));
    }
    Ok(())
}

/// Concavity via the line through `(x0, f(x0))` with the central-difference
/// slope at `x0`: every sampled `f(x)` must lie on or below it.
pub fn check_support_line_1d(f: &ScalarField, x0: f64, cfg: &SampleConfig, tol: f64) -> Result<Verdict> {
    check_support_line_1d_with_step(f, x0, cfg, tol, numdiff::FIRST_DERIVATIVE_STEP)
}

/// [`check_support_line_1d`] with an explicit relative difference step.
pub fn check_support_line_1d_with_step(
    f: &ScalarField,
    x0: f64,
    cfg: &SampleConfig,
    tol: f64,
    fd_step: f64,
) -> Result<Verdict> {
    require_1d(f)?;
    let anchor = Point::new(vec![x0])?;
    let method = CheckMethod::SupportLine;
    let Some(anchor_value) = f.eval_in_region(&anchor) else {
        return Err(Error::contract(format!("support-line anchor {x0} is outside the region")));
    };
    let slope = numdiff::first(|p: &Point| f.eval_in_region(p), &anchor, 0, fd_step);
    let Some(slope) = slope.filter(|s| s.is_finite()) else {
        return Ok(Verdict::inconclusive(PropertyId::Cc, method, tol));
    };
    let xs = sample_region(f.region(), cfg)?;
    let outcomes: Vec<Option<Sample>> = xs
        .into_par_iter()
        .map(|x| {
            let fx = f.eval_in_region(&x)?;
            let line = anchor_value + slope * (x.coords()[0] - x0);
            Some(Sample {
                points: vec![x],
                lambda: None,
                eval: Evaluation::new(line - fx, vec![fx, line]),
            })
        })
        .collect();
    let kind = WitnessKind::SupportLine {
        anchor: x0,
        anchor_value,
        slope,
    };
    Ok(reduce(PropertyId::Cc, method, kind, tol, false, outcomes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub verdict: Verdict,
    /// Fraction of consecutive grid steps along which `f(x)/x` does not decrease.
    pub nondecreasing_fraction: f64,
    /// Fraction of consecutive grid steps along which `f(x)/x` does not increase.
    pub nonincreasing_fraction: f64,
    /// `(x, f(x)/x)` for every evaluable grid point, in grid order.
    pub ratios: Vec<(f64, f64)>,
}

/// `n` log-spaced points spanning `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
        }
    }
}

/// Whether `h(x) = f(x)/x` is constant on `grid`.
///
/// On the positive half-line superadditivity is equivalent to `h` being
/// nondecreasing, so the monotone fractions are reported alongside.
pub fn check_ratio_constancy_1d(f: &ScalarField, grid: &[f64], tol: f64) -> Result<RatioReport> {
    require_1d(f)?;
    let mut ratios = Vec::with_capacity(grid.len());
    let mut skipped = 0;
    for &x in grid {
        let h = Point::new(vec![x]).ok().and_then(|p| f.eval_in_region(&p)).map(|v| v / x);
        match h {
            Some(h) if h.is_finite() => ratios.push((x, h)),
            _ => skipped += 1,
        }
    }
    let mut verdict = Verdict::inconclusive(PropertyId::RatioConstant, CheckMethod::RatioGrid, tol);
    verdict.samples_checked = ratios.len();
    verdict.samples_skipped = skipped;
    if ratios.len() < 2 {
        return Ok(RatioReport {
            verdict,
            nondecreasing_fraction: 0.0,
            nonincreasing_fraction: 0.0,
            ratios,
        });
    }

    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let steps = sorted.len() - 1;
    let up = sorted.windows(2).filter(|w| w[1].1 >= w[0].1).count();
    let down = sorted.windows(2).filter(|w| w[1].1 <= w[0].1).count();

    let (mut lo, mut hi) = (0, 0);
    for (i, r) in ratios.iter().enumerate() {
        if r.1 < ratios[lo].1 {
            lo = i;
        }
        if r.1 > ratios[hi].1 {
            hi = i;
        }
    }
    let mean = ratios.iter().map(|r| r.1).sum::<f64>() / ratios.len() as f64;
    let scale = 1.0 + mean.abs();
    let spread = ratios[hi].1 - ratios[lo].1;
    verdict.worst_margin = -spread / scale;
    verdict.max_abs_margin = spread / scale;
    if spread > tol * scale {
        verdict.status = Status::Falsified;
        let (a, b) = if ratios[lo].0 <= ratios[hi].0 { (lo, hi) } else { (hi, lo) };
        verdict.witness = Some(Witness {
            property: PropertyId::RatioConstant,
            kind: WitnessKind::Ratio,
            points: vec![Point::from_raw(vec![ratios[a].0]), Point::from_raw(vec![ratios[b].0])],
            lambda: None,
            values: vec![ratios[a].1, ratios[b].1],
            violation: spread,
            threshold: tol * scale,
        });
    } else if skipped as f64 > super::verdict::MAX_SKIP_FRACTION * grid.len() as f64 {
        verdict.status = Status::Inconclusive;
    } else {
        verdict.status = Status::Satisfied;
    }
    Ok(RatioReport {
        verdict,
        nondecreasing_fraction: up as f64 / steps as f64,
        nonincreasing_fraction: down as f64 / steps as f64,
        ratios,
    })
}
