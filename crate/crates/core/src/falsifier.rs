//! Witness search: seeded random probes, then a compass pattern search that
//! maximizes the violation of the chosen inequality.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkers::{evaluate, CheckMethod, Evaluation, Status, Verdict, Witness, WitnessKind};
use crate::domain::{batch_rng, sample_region, Point, SampleConfig, BATCH_SIZE};
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::property::PropertyId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub random_probes: usize,
    pub refine_iterations: usize,
    pub refine_shrink: f64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            random_probes: 4096,
            refine_iterations: 500,
            refine_shrink: 0.5,
            seed: 42,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.random_probes == 0 || self.refine_iterations == 0 {
            return Err(Error::contract("search budget counts must be positive"));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::contract(format!(
                "refine_shrink must lie in (0, 1), got {}",
                self.refine_shrink
            )));
        }
        Ok(())
    }
}

/// Range of `λ` for homogeneity probes.
pub const HOMOGENEITY_LAMBDA_RANGE: (f64, f64) = (1e-3, 1e3);
/// Range of `λ` for concavity probes; the endpoints give trivial equality.
pub const CONCAVITY_LAMBDA_RANGE: (f64, f64) = (0.01, 0.99);
/// Initial relative step of the pattern search.
pub const INITIAL_STEP: f64 = 0.25;
/// Pattern search stops once the step falls below this.
pub const MIN_STEP: f64 = 1e-12;

const AUX_STREAM: usize = 1 << 22;

/// A search state: the witness arguments flattened, with `λ` last when the
/// property has one.
#[derive(Debug, Clone)]
struct Candidate {
    points: Vec<Point>,
    lambda: Option<f64>,
}

struct Scored {
    cand: Candidate,
    eval: Evaluation,
}

impl Scored {
    fn violation(&self) -> f64 {
        -self.eval.margin
    }
}

fn arity(property: PropertyId) -> Result<(usize, bool)> {
    match property {
        PropertyId::H => Ok((1, true)),
        PropertyId::Sp => Ok((2, false)),
        PropertyId::Cc => Ok((2, true)),
        other => Err(Error::contract(format!("falsify supports H, Sp and Cc, got {other}"))),
    }
}

fn lambda_range(property: PropertyId) -> (f64, f64) {
    if property == PropertyId::H {
        HOMOGENEITY_LAMBDA_RANGE
    } else {
        CONCAVITY_LAMBDA_RANGE
    }
}

fn score(f: &ScalarField, property: PropertyId, cand: Candidate) -> Option<Scored> {
    let eval = evaluate(f, property, &cand.points, cand.lambda)?;
    if eval.margin.is_nan() {
        return None;
    }
    Some(Scored { cand, eval })
}

fn draw_lambda(rng: &mut impl Rng, property: PropertyId) -> f64 {
    let (lo, hi) = lambda_range(property);
    if property == PropertyId::H {
        rng.random_range(lo.ln()..hi.ln()).exp()
    } else {
        rng.random_range(lo..hi)
    }
}

fn probes(f: &ScalarField, property: PropertyId, budget: &SearchBudget) -> Result<Vec<Candidate>> {
    let (n_points, has_lambda) = arity(property)?;
    let cfg = SampleConfig::new(budget.seed, budget.random_probes * n_points, f.sampling_range());
    let xs = sample_region(f.region(), &cfg)?;
    let mut rng = batch_rng(budget.seed, AUX_STREAM);
    let mut out: Vec<Candidate> = xs
        .chunks(n_points)
        .map(|pts| Candidate {
            points: pts.to_vec(),
            lambda: has_lambda.then(|| draw_lambda(&mut rng, property)),
        })
        .collect();
    out.extend(corner_probes(f, n_points, has_lambda, property, &mut rng));
    Ok(out)
}

/// Corners of the sampling box, where random probes almost never land.
fn corner_probes(
    f: &ScalarField,
    n_points: usize,
    has_lambda: bool,
    property: PropertyId,
    rng: &mut impl Rng,
) -> Vec<Candidate> {
    let d = f.dimension();
    let bits = d * n_points;
    if bits > MAX_CORNER_BITS {
        return Vec::new();
    }
    let (lo, hi) = f.sampling_range();
    let signs: Vec<f64> = f.region().orthant().axis_signs().iter().map(|s| s.value()).collect();
    let mut out = Vec::new();
    for mask in 0..1usize << bits {
        let coord = |k: usize| if mask >> k & 1 == 1 { hi } else { lo };
        let points: Option<Vec<Point>> = (0..n_points)
            .map(|p| {
                let x = Point::new((0..d).map(|i| coord(p * d + i) * signs[i]).collect::<Vec<_>>()).ok()?;
                f.region().contains(&x).ok()?.then_some(x)
            })
            .collect();
        let Some(points) = points else { continue };
        for _ in 0..if has_lambda { CORNER_LAMBDAS } else { 1 } {
            out.push(Candidate {
                points: points.clone(),
                lambda: has_lambda.then(|| draw_lambda(rng, property)),
            });
        }
    }
    out
}

/// Corner probes are skipped when a witness has more coordinates than this.
const MAX_CORNER_BITS: usize = 8;
/// `λ` draws per corner.
const CORNER_LAMBDAS: usize = 4;

/// Moves of the compass search: each coordinate and `λ`, up then down.
fn neighbours(c: &Candidate, step: f64, property: PropertyId, range: (f64, f64)) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (pi, p) in c.points.iter().enumerate() {
        for (i, &x) in p.coords().iter().enumerate() {
            for dir in [1.0, -1.0] {
                let mag = (x.abs() * (1.0 + dir * step)).clamp(range.0, range.1);
                if mag == x.abs() {
                    continue;
                }
                let mut next = c.clone();
                next.points[pi] = p.with_coord(i, mag.copysign(x));
                out.push(next);
            }
        }
    }
    if let Some(l) = c.lambda {
        let (lo, hi) = lambda_range(property);
        for dir in [1.0, -1.0] {
            let moved = if property == PropertyId::H {
                l * (1.0 + dir * step)
            } else {
                l + dir * step * 0.5
            };
            let moved = moved.clamp(lo, hi);
            if moved != l {
                let mut next = c.clone();
                next.lambda = Some(moved);
                out.push(next);
            }
        }
    }
    out
}

/// Improvements smaller than this fraction of the scale are rounding noise.
const MIN_GAIN: f64 = 1e-12;

fn pattern_search(f: &ScalarField, property: PropertyId, start: Scored, budget: &SearchBudget) -> Scored {
    let range = f.sampling_range();
    let mut best = start;
    let mut step = INITIAL_STEP;
    for _ in 0..budget.refine_iterations {
        if step < MIN_STEP {
            break;
        }
        let mut improved: Option<Scored> = None;
        for cand in neighbours(&best.cand, step, property, range) {
            let Some(s) = score(f, property, cand) else { continue };
            let bar = improved.as_ref().map_or(best.violation() + MIN_GAIN * best.eval.scale, Scored::violation);
            if s.violation() > bar {
                improved = Some(s);
            }
        }
        match improved {
            Some(s) => best = s,
            None => step *= budget.refine_shrink,
        }
    }
    best
}

fn witness(property: PropertyId, s: Scored, threshold: f64) -> Witness {
    Witness {
        property,
        kind: WitnessKind::Inequality,
        points: s.cand.points,
        lambda: s.cand.lambda,
        values: s.eval.values,
        violation: -s.eval.margin,
        threshold,
    }
}

/// Search for a violation of `property` in `{H, Sp, Cc}`.
///
/// Probes run in parallel batches and the best one (lowest index on ties) is
/// refined sequentially. Finding nothing yields `SatisfiedUpToBudget`.
pub fn falsify(f: &ScalarField, property: PropertyId, budget: &SearchBudget, tol: f64) -> Result<Verdict> {
    budget.validate()?;
    let cands = probes(f, property, budget)?;
    let scored: Vec<Option<Scored>> = cands
        .into_par_iter()
        .with_min_len(BATCH_SIZE)
        .map(|c| score(f, property, c))
        .collect();
    let total = scored.len();
    let mut best: Option<Scored> = None;
    let mut checked = 0;
    for s in scored.into_iter().flatten() {
        checked += 1;
        if best.as_ref().is_none_or(|b| s.violation() > b.violation()) {
            best = Some(s);
        }
    }
    let mut verdict = Verdict::inconclusive(property, CheckMethod::PatternSearch, tol);
    verdict.samples_checked = checked;
    verdict.samples_skipped = total - checked;
    let Some(best) = best else {
        return Ok(verdict);
    };
    let best = pattern_search(f, property, best, budget);
    let scale = best.eval.scale;
    verdict.worst_margin = best.eval.slack();
    verdict.max_abs_margin = best.eval.slack().abs();
    if best.violation() > tol * scale {
        verdict.status = Status::Falsified;
        verdict.witness = Some(witness(property, best, tol * scale));
    } else {
        verdict.status = Status::SatisfiedUpToBudget;
    }
    Ok(verdict)
}

/// Pattern search started from an existing witness; never returns a
/// smaller violation than the input.
pub fn refine_witness(f: &ScalarField, property: PropertyId, w: &Witness, budget: &SearchBudget) -> Result<Witness> {
    budget.validate()?;
    arity(property)?;
    if w.property != property || w.kind != WitnessKind::Inequality {
        return Err(Error::contract(format!("cannot refine a {} witness as {property}", w.property)));
    }
    let cand = Candidate {
        points: w.points.clone(),
        lambda: w.lambda,
    };
    let start = score(f, property, cand)
        .ok_or_else(|| Error::contract("witness to refine is outside the region"))?;
    let rel_tol = w.threshold / start.eval.scale;
    let best = pattern_search(f, property, start, budget);
    let threshold = rel_tol * best.eval.scale;
    Ok(witness(property, best, threshold))
}
