use serde::{Deserialize, Serialize};

use crate::domain::Point;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::property::PropertyId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Satisfied,
    Falsified,
    Inconclusive,
    /// No witness found within a search budget. Not a proof.
    SatisfiedUpToBudget,
}

impl Status {
    /// `Some(true)` for the satisfied states, `Some(false)` for falsified.
    pub fn holds(self) -> Option<bool> {
        match self {
            Status::Satisfied | Status::SatisfiedUpToBudget => Some(true),
            Status::Falsified => Some(false),
            Status::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckMethod {
    Sampling,
    FiniteDifference,
    SupportLine,
    RatioGrid,
    PatternSearch,
}

/// How a witness is re-evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WitnessKind {
    /// The defining inequality of the witness property.
    #[default]
    Inequality,
    /// Central second difference along `axis` exceeds its noise floor.
    SecondDerivative { axis: usize, step: f64 },
    /// `(f_xy)^2 - f_xx f_yy` is not below minus its noise floor.
    Determinant { step: f64 },
    /// The field rises above the line `anchor_value + slope (x - anchor)`.
    SupportLine { anchor: f64, anchor_value: f64, slope: f64 },
    /// `|f(b)/b - f(a)/a|` for the two witness points.
    Ratio,
}

impl WitnessKind {
    fn is_inequality(&self) -> bool {
        matches!(self, WitnessKind::Inequality)
    }
}

/// Concrete evidence that an inequality fails.
///
/// The witness is a violation when `violation > threshold`; for strict
/// properties the threshold is negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub property: PropertyId,
    #[serde(default, skip_serializing_if = "WitnessKind::is_inequality")]
    pub kind: WitnessKind,
    pub points: Vec<Point>,
    pub lambda: Option<f64>,
    #[serde(with = "crate::serde_ext::reals")]
    pub values: Vec<f64>,
    #[serde(with = "crate::serde_ext::real")]
    pub violation: f64,
    pub threshold: f64,
}

impl Witness {
    /// Recompute the violation from the points, `lambda` and `f`.
    pub fn recompute(&self, f: &ScalarField) -> Result<f64> {
        let gone = || Error::contract(format!("{} witness is not evaluable inside the region", self.property));
        match self.kind {
            WitnessKind::Inequality => evaluate(f, self.property, &self.points, self.lambda)
                .map(|e| -e.margin)
                .ok_or_else(gone),
            WitnessKind::SecondDerivative { axis, step } => {
                let p = self.points.first().ok_or_else(gone)?;
                crate::numdiff::second(|q: &Point| f.eval_in_region(q), p, axis, step)
                    .map(|(d, _)| d)
                    .ok_or_else(gone)
            }
            WitnessKind::Determinant { step } => {
                let p = self.points.first().ok_or_else(gone)?;
                super::hessian::determinant_at(f, p, step).map(|(d, _)| d).ok_or_else(gone)
            }
            WitnessKind::SupportLine {
                anchor,
                anchor_value,
                slope,
            } => {
                let p = self.points.first().ok_or_else(gone)?;
                let fx = f.eval_in_region(p).ok_or_else(gone)?;
                Ok(fx - (anchor_value + slope * (p.coords()[0] - anchor)))
            }
            WitnessKind::Ratio => {
                let [a, b] = self.points.as_slice() else {
                    return Err(gone());
                };
                let ha = f.eval_in_region(a).ok_or_else(gone)? / a.coords()[0];
                let hb = f.eval_in_region(b).ok_or_else(gone)? / b.coords()[0];
                Ok((hb - ha).abs())
            }
        }
    }

    /// Whether the recomputed violation matches the stored one to 1e-12
    /// relative and still exceeds the threshold.
    pub fn revalidate(&self, f: &ScalarField) -> Result<bool> {
        let v = self.recompute(f)?;
        let agrees = v == self.violation || (v - self.violation).abs() <= 1e-12 * v.abs().max(self.violation.abs());
        Ok(agrees && v > self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: PropertyId,
    pub method: CheckMethod,
    pub status: Status,
    #[serde(rename = "samples")]
    pub samples_checked: usize,
    pub samples_skipped: usize,
    /// Most negative normalized slack observed (`margin / scale`).
    #[serde(with = "crate::serde_ext::real")]
    pub worst_margin: f64,
    /// Largest finite `|margin / scale|` observed.
    pub max_abs_margin: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub(crate) fn inconclusive(property: PropertyId, method: CheckMethod, tol: f64) -> Self {
        Verdict {
            property,
            method,
            status: Status::Inconclusive,
            samples_checked: 0,
            samples_skipped: 0,
            worst_margin: 0.0,
            max_abs_margin: 0.0,
            tolerance: tol,
            witness: None,
        }
    }

    pub fn is_satisfied(&self) -> bool {
        matches!(self.status, Status::Satisfied | Status::SatisfiedUpToBudget)
    }

    pub fn is_falsified(&self) -> bool {
        self.status == Status::Falsified
    }
}

/// One evaluated instance of an inequality. `margin >= 0` means it holds.
#[derive(Debug, Clone)]
pub(crate) struct Evaluation {
    pub margin: f64,
    pub scale: f64,
    pub values: Vec<f64>,
}

impl Evaluation {
    pub(crate) fn new(margin: f64, values: Vec<f64>) -> Self {
        let scale = 1.0 + values.iter().filter(|v| v.is_finite()).fold(0.0_f64, |m, v| m.max(v.abs()));
        Evaluation { margin, scale, values }
    }

    pub fn slack(&self) -> f64 {
        self.margin / self.scale
    }
}

/// `lhs - rhs`, with anything `>= -inf` holding.
fn excess(lhs: f64, rhs: f64) -> f64 {
    if rhs == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        lhs - rhs
    }
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

/// Evaluate the inequality behind `property` at the given arguments.
///
/// `None` when a derived argument leaves the region or the field is
/// undefined there.
pub(crate) fn evaluate(f: &ScalarField, property: PropertyId, points: &[Point], lambda: Option<f64>) -> Option<Evaluation> {
    use PropertyId::*;
    match property {
        H | Chain28 => {
            let [x] = points else { return None };
            let l = lambda?;
            let fx = f.eval_in_region(x)?;
            let fl = f.eval_in_region(&x.scaled(l))?;
            let rhs = l * fx;
            let mut e = Evaluation::new(-gap(fl, rhs), vec![fl, fx]);
            e.scale = 1.0 + if rhs.is_finite() { rhs.abs() } else { 0.0 };
            Some(e)
        }
        Sp | SpStrict => {
            let [x1, x2] = points else { return None };
            let f1 = f.eval_in_region(x1)?;
            let f2 = f.eval_in_region(x2)?;
            let fs = f.eval_in_region(&x1.add(x2))?;
            Some(Evaluation::new(excess(fs, f1 + f2), vec![fs, f1, f2]))
        }
        Cc => {
            let [x, y] = points else { return None };
            let l = lambda?;
            let fx = f.eval_in_region(x)?;
            let fy = f.eval_in_region(y)?;
            let fz = f.eval_in_region(&x.convex_combination(y, l))?;
            Some(Evaluation::new(excess(fz, l * fx + (1.0 - l) * fy), vec![fz, fx, fy]))
        }
        Chain23 => {
            let [x] = points else { return None };
            let l = lambda?;
            let fx = f.eval_in_region(x)?;
            let fl = f.eval_in_region(&x.scaled(l))?;
            let rhs = l * fx;
            Some(Evaluation::new(excess(fl, rhs), vec![fl, rhs]))
        }
        Chain27 => {
            let [w] = points else { return None };
            let n = lambda?;
            let fw = f.eval_in_region(w)?;
            let fq = f.eval_in_region(&w.scaled(1.0 / n))?;
            let rhs = n * fq;
            Some(Evaluation::new(-gap(fw, rhs), vec![fw, rhs]))
        }
        _ => None,
    }
}

/// An evaluated sample, ready for reduction.
pub(crate) struct Sample {
    pub points: Vec<Point>,
    pub lambda: Option<f64>,
    pub eval: Evaluation,
}

/// Checks with more skipped than evaluated samples are inconclusive.
pub const MAX_SKIP_FRACTION: f64 = 0.5;

/// Ordered reduction of per-sample outcomes into a verdict.
///
/// Ties on the worst slack resolve to the lowest sample index, so the
/// verdict does not depend on how the samples were evaluated.
pub(crate) fn reduce(
    property: PropertyId,
    method: CheckMethod,
    kind: WitnessKind,
    tol: f64,
    strict: bool,
    outcomes: Vec<Option<Sample>>,
) -> Verdict {
    let total = outcomes.len();
    let mut checked = 0usize;
    let mut worst: Option<(f64, Sample)> = None;
    let mut max_abs = 0.0_f64;
    for s in outcomes.into_iter().flatten() {
        checked += 1;
        let slack = s.eval.slack();
        if slack.is_finite() {
            max_abs = max_abs.max(slack.abs());
        }
        if worst.as_ref().is_none_or(|(w, _)| slack < *w) {
            worst = Some((slack, s));
        }
    }
    let skipped = total - checked;
    let mut verdict = Verdict {
        property,
        method,
        status: Status::Satisfied,
        samples_checked: checked,
        samples_skipped: skipped,
        worst_margin: worst.as_ref().map_or(0.0, |(w, _)| *w),
        max_abs_margin: max_abs,
        tolerance: tol,
        witness: None,
    };
    let Some((slack, sample)) = worst else {
        verdict.status = Status::Inconclusive;
        return verdict;
    };
    let failed = if strict { slack < tol } else { slack < -tol };
    if failed {
        verdict.status = Status::Falsified;
        let scale = sample.eval.scale;
        verdict.witness = Some(Witness {
            property,
            kind,
            points: sample.points,
            lambda: sample.lambda,
            values: sample.eval.values,
            violation: -sample.eval.margin,
            threshold: if strict { -tol * scale } else { tol * scale },
        });
    } else if skipped as f64 > MAX_SKIP_FRACTION * total as f64 {
        verdict.status = Status::Inconclusive;
    }
    verdict
}
