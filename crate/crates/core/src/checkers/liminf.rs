//! Sampled estimate of `liminf f(x)` as `x` approaches the apex of the cone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::sample_shell;
use crate::error::{Error, Result};
use crate::fields::ScalarField;

/// Shells are `SHELL_INNER_RATIO * r < |x| <= r`.
pub const SHELL_INNER_RATIO: f64 = 0.9;
/// Factor applied to a radius whose shell came back empty, once.
pub const RETRY_SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiminfClass {
    BoundedBelowByZero,
    NegativeFinite,
    DivergesToNegInfinity,
    Inconclusive,
}

impl LiminfClass {
    /// Whether the apex condition `liminf >= 0` holds.
    pub fn holds(self) -> Option<bool> {
        match self {
            LiminfClass::BoundedBelowByZero => Some(true),
            LiminfClass::NegativeFinite | LiminfClass::DivergesToNegInfinity => Some(false),
            LiminfClass::Inconclusive => None,
        }
    }
}

/// Fixed constants of the classification heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiminfThresholds {
    /// Divergence needs the innermost infimum below this value.
    pub divergence_floor: f64,
    /// Divergence needs the innermost decrement to be at least this
    /// fraction of the mean decrement.
    pub persistence: f64,
    /// A negative sequence has settled when its last decrement is at most
    /// `stability * max(1, |infimum|)`.
    pub stability: f64,
    /// Negative infima vanish, so the liminf is zero, when each of the last
    /// two magnitudes is at most this fraction of the one before.
    pub vanishing: f64,
}

pub const THRESHOLDS: LiminfThresholds = LiminfThresholds {
    divergence_floor: -1.0,
    persistence: 0.5,
    stability: 0.05,
    vanishing: 0.5,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiminfEstimate {
    pub radii: Vec<f64>,
    /// Smallest sampled value per shell; `None` when the shell stayed empty.
    #[serde(rename = "infima", with = "crate::serde_ext::optional_reals")]
    pub shell_infima: Vec<Option<f64>>,
    pub shell_samples: Vec<usize>,
    /// Shells that were resampled at `RETRY_SHRINK * r` after coming back empty.
    pub retried: Vec<bool>,
    pub classification: LiminfClass,
    pub tolerance: f64,
    pub thresholds: LiminfThresholds,
}

impl LiminfEstimate {
    pub fn holds(&self) -> Option<bool> {
        self.classification.holds()
    }

    /// Infimum of the shell at `radius`, if it was sampled.
    pub fn infimum_at(&self, radius: f64) -> Option<f64> {
        let i = self.radii.iter().position(|r| *r == radius)?;
        self.shell_infima[i]
    }
}

/// Radii `10^-1, ..., 10^-6`.
pub fn default_radii() -> Vec<f64> {
    (1..=6).map(|k| 10f64.powi(-k)).collect()
}

fn shell_seed(seed: u64, shell: usize, attempt: u64) -> u64 {
    seed ^ (((shell as u64) << 8 | attempt) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn shell_infimum(f: &ScalarField, radius: f64, count: usize, seed: u64) -> (Option<f64>, usize) {
    let pts = sample_shell(f.region(), radius, SHELL_INNER_RATIO, count, seed);
    let values: Vec<f64> = pts.iter().filter_map(|p| f.eval_in_region(p)).collect();
    let inf = values.iter().copied().reduce(f64::min);
    (inf, values.len())
}

/// Sample shells of decreasing radius and classify the infima.
pub fn estimate_apex_liminf(
    f: &ScalarField,
    radii: &[f64],
    samples_per_shell: usize,
    seed: u64,
    tol: f64,
) -> Result<LiminfEstimate> {
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::contract("liminf radii must be a nonempty list of positive reals"));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::contract("liminf radii must be strictly decreasing"));
    }
    if samples_per_shell == 0 {
        return Err(Error::contract("samples_per_shell must be positive"));
    }
    let shells: Vec<(Option<f64>, usize, bool)> = radii
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            let (inf, n) = shell_infimum(f, r, samples_per_shell, shell_seed(seed, i, 0));
            if n > 0 {
                return (inf, n, false);
            }
            let (inf, n) = shell_infimum(f, r * RETRY_SHRINK, samples_per_shell, shell_seed(seed, i, 1));
            (inf, n, true)
        })
        .collect();
    let shell_infima: Vec<Option<f64>> = shells.iter().map(|s| s.0).collect();
    let classification = classify(&shell_infima, tol);
    Ok(LiminfEstimate {
        radii: radii.to_vec(),
        shell_infima,
        shell_samples: shells.iter().map(|s| s.1).collect(),
        retried: shells.iter().map(|s| s.2).collect(),
        classification,
        tolerance: tol,
        thresholds: THRESHOLDS,
    })
}

/// Classify shell infima ordered from the outermost shell inward.
pub fn classify(infima: &[Option<f64>], tol: f64) -> LiminfClass {
    if infima.iter().flatten().any(|v| *v == f64::NEG_INFINITY) {
        return LiminfClass::DivergesToNegInfinity;
    }
    let Some(known) = infima.iter().copied().collect::<Option<Vec<f64>>>() else {
        return LiminfClass::Inconclusive;
    };
    if known.iter().all(|v| *v >= -tol) {
        return LiminfClass::BoundedBelowByZero;
    }
    let last = known[known.len() - 1];
    if known.len() < 2 {
        return LiminfClass::Inconclusive;
    }
    let t = THRESHOLDS;
    if known.len() >= 3
        && known[known.len() - 3..]
            .windows(2)
            .all(|w| w[0] < 0.0 && w[1] <= 0.0 && w[1].abs() <= t.vanishing * w[0].abs())
    {
        return LiminfClass::BoundedBelowByZero;
    }
    let steps: Vec<f64> = known.windows(2).map(|w| w[0] - w[1]).collect();
    let final_step = steps[steps.len() - 1];
    let mean_step = (known[0] - last) / steps.len() as f64;
    if last < t.divergence_floor && mean_step > 0.0 && final_step >= t.persistence * mean_step {
        return LiminfClass::DivergesToNegInfinity;
    }
    if last < -tol && final_step.abs() <= t.stability * last.abs().max(1.0) {
        return LiminfClass::NegativeFinite;
    }
    LiminfClass::Inconclusive
}
