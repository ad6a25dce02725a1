//! The chain of inequalities that lifts superadditivity and concavity to
//! homogeneity: `f(λx) >= λ f(x)` on `(0, 1]`, integer splitting
//! `f(w) = n f(w/n)`, rational scaling, and the irrational limit.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verdict::{evaluate, reduce, CheckMethod, Sample, Verdict, WitnessKind};
use crate::cf::convergents;
use crate::domain::{batch_rng, sample_region, Point, SampleConfig};
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::property::PropertyId;

/// Deterministic part of the `λ` draws for the `(0, 1]` inequality.
pub const CHAIN_LAMBDAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.0];
pub const DEFAULT_N_MAX: u32 = 12;

const AUX_STREAM: usize = 1 << 21;

/// Coprime pairs `(m, n)` with `1 <= m, n <= n_max` and `m != n`.
pub fn coprime_pairs(n_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n_max {
            if m != n && m.gcd(&n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

fn sample_at(f: &ScalarField, property: PropertyId, x: &Point, lambda: f64) -> Option<Sample> {
    let points = vec![x.clone()];
    let eval = evaluate(f, property, &points, Some(lambda))?;
    Some(Sample {
        points,
        lambda: Some(lambda),
        eval,
    })
}

/// `|f(w) - n f(w/n)|` at a single point.
pub fn chain27_residual(f: &ScalarField, w: &Point, n: u32) -> Option<f64> {
    evaluate(f, PropertyId::Chain27, std::slice::from_ref(w), Some(n as f64)).map(|e| -e.margin)
}

/// Verdicts for the three rational steps of the chain, in order.
///
/// Even samples of the first step use [`CHAIN_LAMBDAS`], odd samples draw
/// `λ` uniformly from `(0, 1]`. The integer and rational steps cycle through
/// `n = 2..=n_max` and the coprime pairs respectively.
pub fn check_homogeneity_chain(f: &ScalarField, cfg: &SampleConfig, n_max: u32, tol: f64) -> Result<Vec<Verdict>> {
    if n_max < 2 {
        return Err(Error::contract(format!("n_max must be at least 2, got {n_max}")));
    }
    let xs = sample_region(f.region(), cfg)?;
    let mut rng = batch_rng(cfg.seed, AUX_STREAM);
    let lambdas: Vec<f64> = (0..xs.len())
        .map(|i| {
            let r: f64 = 1.0 - rng.random::<f64>();
            if i % 2 == 0 {
                CHAIN_LAMBDAS[(i / 2) % CHAIN_LAMBDAS.len()]
            } else {
                r
            }
        })
        .collect();

    let kind = WitnessKind::Inequality;
    let c23: Vec<Option<Sample>> = xs
        .par_iter()
        .zip(lambdas.par_iter())
        .map(|(x, l)| sample_at(f, PropertyId::Chain23, x, *l))
        .collect();
    let ns = n_max - 1;
    let c27: Vec<Option<Sample>> = xs
        .par_iter()
        .enumerate()
        .map(|(i, x)| sample_at(f, PropertyId::Chain27, x, (2 + i as u32 % ns) as f64))
        .collect();
    let pairs = coprime_pairs(n_max);
    let c28: Vec<Option<Sample>> = xs
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let (m, n) = pairs[i % pairs.len()];
            sample_at(f, PropertyId::Chain28, x, m as f64 / n as f64)
        })
        .collect();
    Ok(vec![
        reduce(PropertyId::Chain23, CheckMethod::Sampling, kind, tol, false, c23),
        reduce(PropertyId::Chain27, CheckMethod::Sampling, kind, tol, false, c27),
        reduce(PropertyId::Chain28, CheckMethod::Sampling, kind, tol, false, c28),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub k: usize,
    pub p: u64,
    pub q: u64,
    pub ratio: f64,
    /// `|f(r u) - r f(u)|` with `r = p/q`.
    pub homogeneity_residual: f64,
    /// `|f(r u) - f(λ u)|`.
    pub limit_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingTable {
    pub lambda: f64,
    pub u: Point,
    pub rows: Vec<ScalingRow>,
    /// Convergents whose scaled point left the region.
    pub skipped: usize,
    /// Limit residuals strictly decrease along the table.
    pub decreasing: bool,
    /// Decreasing, and every homogeneity residual is within `tol * (1 + |r f(u)|)`.
    pub converges: bool,
}

/// Approach `f(λu)` through the convergents `p_k/q_k` of `λ`.
pub fn check_irrational_scaling(f: &ScalarField, lambda: f64, u: &Point, k_max: usize, tol: f64) -> Result<ScalingTable> {
    let fu = f
        .eval_in_region(u)
        .ok_or_else(|| Error::contract(format!("u = {u} is outside the region of `{}`", f.name())))?;
    let target = f
        .eval_in_region(&u.scaled(lambda))
        .ok_or_else(|| Error::contract(format!("λu is outside the region of `{}` for λ = {lambda}", f.name())))?;
    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut homogeneous = true;
    for c in convergents(lambda, k_max)? {
        let (Some(p), Some(q)) = (c.p.to_u64(), c.q.to_u64()) else {
            skipped += 1;
            continue;
        };
        let r = p as f64 / q as f64;
        let Some(fr) = f.eval_in_region(&u.scaled(r)) else {
            skipped += 1;
            continue;
        };
        let h = (fr - r * fu).abs();
        homogeneous &= h <= tol * (1.0 + (r * fu).abs());
        rows.push(ScalingRow {
            k: c.k,
            p,
            q,
            ratio: r,
            homogeneity_residual: h,
            limit_residual: (fr - target).abs(),
        });
    }
    let decreasing = rows.windows(2).all(|w| w[1].limit_residual < w[0].limit_residual);
    Ok(ScalingTable {
        lambda,
        u: u.clone(),
        converges: decreasing && homogeneous && !rows.is_empty(),
        decreasing,
        rows,
        skipped,
    })
}
