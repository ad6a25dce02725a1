//! Open convex cone domains, constrained subregions, and seeded samplers.
//!
//! Every domain is an axis-aligned open orthant `{p : sign_i * p_i > 0}`,
//! optionally cut down by an opaque predicate. Boundaries (and the apex at
//! the origin) never belong to a region.
//!
//! Sampling draws each coordinate magnitude independently from
//! `SampleConfig::coord_range` and rejects candidates that fail the region
//! predicate. Points are produced in fixed-size batches, each driven by its
//! own ChaCha stream, so a parallel run yields exactly the sequential
//! sequence.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in `R^d`.
///
/// Construction through [`Point::new`] rejects non-finite coordinates. The
/// `From<[f64; N]>` conversion is unchecked and meant for literals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(Error::contract("a point needs at least one coordinate"));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::contract(format!("non-finite coordinate {bad}")));
        }
        Ok(Point(coords))
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, lambda: f64) -> Point {
        Point(self.0.iter().map(|c| lambda * c).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn convex_combination(&self, other: &Point, lambda: f64) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
                .collect(),
        )
    }

    pub(crate) fn with_coord(&self, i: usize, value: f64) -> Point {
        let mut c = self.0.clone();
        c[i] = value;
        Point(c)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(coords: [f64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum AxisSign {
    Positive,
    Negative,
}

impl AxisSign {
    pub fn value(self) -> f64 {
        match self {
            AxisSign::Positive => 1.0,
            AxisSign::Negative => -1.0,
        }
    }
}

impl From<AxisSign> for i8 {
    fn from(s: AxisSign) -> i8 {
        match s {
            AxisSign::Positive => 1,
            AxisSign::Negative => -1,
        }
    }
}

impl TryFrom<i8> for AxisSign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(AxisSign::Positive),
            -1 => Ok(AxisSign::Negative),
            other => Err(format!("axis sign must be +1 or -1, got {other}")),
        }
    }
}

/// Open orthant `{p : sign_i * p_i > 0 for all i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthantCone {
    axis_signs: Vec<AxisSign>,
}

impl OrthantCone {
    pub fn new(axis_signs: Vec<AxisSign>) -> Result<Self> {
        if axis_signs.is_empty() {
            return Err(Error::contract("cone dimension must be positive"));
        }
        Ok(OrthantCone { axis_signs })
    }

    /// The positive orthant `R_+^d`.
    pub fn positive(dimension: usize) -> Result<Self> {
        Self::new(vec![AxisSign::Positive; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.axis_signs.len()
    }

    pub fn axis_signs(&self) -> &[AxisSign] {
        &self.axis_signs
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        check_dim(self.dimension(), p)?;
        Ok(self.contains_coords(p.coords()))
    }

    fn contains_coords(&self, c: &[f64]) -> bool {
        self.axis_signs
            .iter()
            .zip(c)
            .all(|(s, x)| x.is_finite() && s.value() * x > 0.0)
    }
}

fn check_dim(expected: usize, p: &Point) -> Result<()> {
    if p.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: p.dim(),
        });
    }
    Ok(())
}

pub type Predicate = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A named membership predicate layered on top of a cone.
#[derive(Clone)]
pub struct Constraint {
    name: String,
    predicate: Arc<Predicate>,
}

impl Constraint {
    pub fn new(name: impl Into<String>, predicate: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Self {
        Constraint {
            name: name.into(),
            predicate: Arc::new(predicate),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn holds(&self, coords: &[f64]) -> bool {
        (self.predicate)(coords)
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Constraint").field(&self.name).finish()
    }
}

/// An open cone, optionally restricted by a constraint.
#[derive(Debug, Clone)]
pub struct Region {
    cone: OrthantCone,
    constraint: Option<Constraint>,
    additively_closed: bool,
}

impl Region {
    pub fn cone(cone: OrthantCone) -> Self {
        Region {
            cone,
            constraint: None,
            additively_closed: true,
        }
    }

    /// A subregion of `cone`. `additively_closed` is a declaration: the
    /// pair sampler spot-checks it and reports a violation as an error.
    pub fn constrained(cone: OrthantCone, constraint: Constraint, additively_closed: bool) -> Self {
        Region {
            cone,
            constraint: Some(constraint),
            additively_closed,
        }
    }

    pub fn positive_orthant(dimension: usize) -> Result<Self> {
        Ok(Self::cone(OrthantCone::positive(dimension)?))
    }

    /// The physical Kerr-Newman region in `(M, J)` coordinates:
    /// `M > 0, J > 0, M^2 > (J/M)^2 + Q^2`.
    ///
    /// Additively closed for `Q = 0`. For `Q > 0` the pair sampler filters
    /// sums instead.
    pub fn kerr_newman(q: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::contract(format!("charge must be finite and nonnegative, got {q}")));
        }
        let constraint = Constraint::new("kerr-newman", move |c: &[f64]| {
            let (m, j) = (c[0], c[1]);
            let a = j / m;
            m * m > a * a + q * q
        });
        Ok(Self::constrained(OrthantCone::positive(2)?, constraint, q == 0.0))
    }

    pub fn dimension(&self) -> usize {
        self.cone.dimension()
    }

    pub fn orthant(&self) -> &OrthantCone {
        &self.cone
    }

    pub fn constraint(&self) -> Option<&Constraint> {
        self.constraint.as_ref()
    }

    pub fn is_additively_closed(&self) -> bool {
        self.additively_closed
    }

    pub fn is_cone(&self) -> bool {
        self.constraint.is_none()
    }

    /// Strict membership. Errors only on a dimension mismatch.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        check_dim(self.dimension(), p)?;
        Ok(self.contains_coords(p.coords()))
    }

    pub(crate) fn contains_coords(&self, c: &[f64]) -> bool {
        self.cone.contains_coords(c) && self.constraint.as_ref().is_none_or(|k| k.holds(c))
    }

    pub fn descriptor(&self) -> RegionDescriptor {
        RegionDescriptor {
            dimension: self.dimension(),
            axis_signs: self.cone.axis_signs.clone(),
            constraint: self.constraint.as_ref().map(|c| c.name.clone()),
        }
    }

    fn draw_candidate(&self, rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> Point {
        let (lo, hi) = cfg.coord_range;
        let coords = self
            .cone
            .axis_signs
            .iter()
            .map(|s| {
                let magnitude = match cfg.scale_distribution {
                    ScaleDistribution::LogUniform => rng.random_range(lo.ln()..hi.ln()).exp(),
                    ScaleDistribution::Uniform => rng.random_range(lo..hi),
                };
                s.value() * magnitude
            })
            .collect();
        Point(coords)
    }
}

/// Serializable description of a region; the predicate travels by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDescriptor {
    pub dimension: usize,
    pub axis_signs: Vec<AxisSign>,
    pub constraint: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ScaleDistribution {
    #[default]
    LogUniform,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub coord_range: (f64, f64),
    pub scale_distribution: ScaleDistribution,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize, coord_range: (f64, f64)) -> Self {
        SampleConfig {
            seed,
            count,
            coord_range,
            scale_distribution: ScaleDistribution::LogUniform,
        }
    }

    pub fn with_distribution(mut self, d: ScaleDistribution) -> Self {
        self.scale_distribution = d;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.coord_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return Err(Error::contract(format!(
                "coord_range must satisfy 0 < r_min < r_max, got ({lo}, {hi})"
            )));
        }
        Ok(())
    }
}

/// Points per independently seeded batch.
pub const BATCH_SIZE: usize = 1024;
/// Candidates drawn before the acceptance rate is judged.
pub const THIN_PROBE: usize = 10_000;
/// Minimum acceptance rate over a probe batch.
pub const MIN_ACCEPTANCE: f64 = 1e-3;

pub(crate) fn batch_rng(seed: u64, batch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch as u64);
    rng
}

fn batch_sizes(count: usize) -> Vec<usize> {
    (0..count.div_ceil(BATCH_SIZE))
        .map(|b| BATCH_SIZE.min(count - b * BATCH_SIZE))
        .collect()
}

struct Acceptance {
    accepted: usize,
    attempts: usize,
}

impl Acceptance {
    fn record(&mut self, ok: bool) -> Result<()> {
        self.attempts += 1;
        if ok {
            self.accepted += 1;
        }
        if self.attempts >= THIN_PROBE && (self.accepted as f64) < MIN_ACCEPTANCE * self.attempts as f64 {
            return Err(Error::RegionTooThin {
                accepted: self.accepted,
                attempts: self.attempts,
            });
        }
        Ok(())
    }
}

/// Exactly `cfg.count` members of `region`, deterministic in `cfg`.
pub fn sample_region(region: &Region, cfg: &SampleConfig) -> Result<Vec<Point>> {
    cfg.validate()?;
    let batches: Vec<Result<Vec<Point>>> = batch_sizes(cfg.count)
        .into_par_iter()
        .enumerate()
        .map(|(b, size)| {
            let mut rng = batch_rng(cfg.seed, b);
            let mut acc = Acceptance { accepted: 0, attempts: 0 };
            let mut out = Vec::with_capacity(size);
            while out.len() < size {
                let p = region.draw_candidate(&mut rng, cfg);
                let ok = region.contains_coords(p.coords());
                acc.record(ok)?;
                if ok {
                    out.push(p);
                }
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::with_capacity(cfg.count);
    for batch in batches {
        points.extend(batch?);
    }
    Ok(points)
}

/// Pairs `(x1, x2)` with `x1`, `x2` and `x1 + x2` all members.
///
/// Sums are always re-checked. A failing sum on a region declared
/// additively closed is an error; otherwise the pair is rejected.
pub fn sample_pairs_additive(region: &Region, cfg: &SampleConfig) -> Result<Vec<(Point, Point)>> {
    cfg.validate()?;
    let batches: Vec<Result<Vec<(Point, Point)>>> = batch_sizes(cfg.count)
        .into_par_iter()
        .enumerate()
        .map(|(b, size)| {
            let mut rng = batch_rng(cfg.seed, b);
            let mut acc = Acceptance { accepted: 0, attempts: 0 };
            let mut out = Vec::with_capacity(size);
            while out.len() < size {
                let x1 = region.draw_candidate(&mut rng, cfg);
                let x2 = region.draw_candidate(&mut rng, cfg);
                let members = region.contains_coords(x1.coords()) && region.contains_coords(x2.coords());
                let ok = members && {
                    let sum_ok = region.contains_coords(x1.add(&x2).coords());
                    if !sum_ok && region.additively_closed {
                        return Err(Error::NotAdditivelyClosed {
                            left: x1.0,
                            right: x2.0,
                        });
                    }
                    sum_ok
                };
                acc.record(ok)?;
                if ok {
                    out.push((x1, x2));
                }
            }
            Ok(out)
        })
        .collect();
    let mut pairs = Vec::with_capacity(cfg.count);
    for batch in batches {
        pairs.extend(batch?);
    }
    Ok(pairs)
}

/// Smallest per-coordinate fraction used to build shell directions.
const SHELL_DIRECTION_FLOOR: f64 = 1e-12;

/// Members with `inner_ratio * r < |x| <= r`.
///
/// Directions are drawn with log-uniform coordinate magnitudes so that
/// near-axis directions, where thin constrained regions live close to the
/// apex, are reachable. Returns fewer than `count` points when the budget of
/// `64 * count` candidates runs out.
pub fn sample_shell(region: &Region, radius: f64, inner_ratio: f64, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 64 * count.max(1);
    let floor = SHELL_DIRECTION_FLOOR.ln();
    let mut out = Vec::with_capacity(count);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let dir: Vec<f64> = region
            .cone
            .axis_signs
            .iter()
            .map(|s| s.value() * rng.random_range(floor..0.0).exp())
            .collect();
        let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        let rho = radius * (inner_ratio + (1.0 - inner_ratio) * (1.0 - rng.random::<f64>()));
        let p = Point(dir.iter().map(|c| rho * c / norm).collect());
        let n = p.norm();
        if n > inner_ratio * radius && n <= radius && region.contains_coords(p.coords()) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed_cone() -> Region {
        Region::cone(OrthantCone::new(vec![AxisSign::Negative, AxisSign::Positive]).unwrap())
    }

    #[test]
    fn orthant_membership_is_strict() {
        let r = mixed_cone();
        assert!(r.contains(&Point::from([-1.0, 2.0])).unwrap());
        assert!(!r.contains(&Point::from([0.0, 2.0])).unwrap());
        assert!(!r.contains(&Point::from([0.0, 0.0])).unwrap());
        assert!(!r.contains(&Point::from([1.0, 2.0])).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let r = mixed_cone();
        assert!(matches!(
            r.contains(&Point::from([1.0])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn kerr_newman_membership() {
        let r = Region::kerr_newman(0.0).unwrap();
        assert!(r.contains(&Point::from([1.0, 0.5])).unwrap());
        assert!(!r.contains(&Point::from([1.0, 2.0])).unwrap());
        // boundary M^2 = J
        assert!(!r.contains(&Point::from([2.0, 4.0])).unwrap());
    }

    #[test]
    fn point_rejects_nan() {
        assert!(Point::new(vec![1.0, f64::NAN]).is_err());
        assert!(Point::new(Vec::<f64>::new()).is_err());
    }

    #[test]
    fn zero_count_is_empty() {
        let r = Region::positive_orthant(3).unwrap();
        let cfg = SampleConfig::new(7, 0, (1e-3, 1e3));
        assert!(sample_region(&r, &cfg).unwrap().is_empty());
        assert!(sample_pairs_additive(&r, &cfg).unwrap().is_empty());
    }

    #[test]
    fn bad_range_rejected() {
        let r = Region::positive_orthant(1).unwrap();
        assert!(sample_region(&r, &SampleConfig::new(1, 5, (2.0, 1.0))).is_err());
        assert!(sample_region(&r, &SampleConfig::new(1, 5, (0.0, 1.0))).is_err());
    }

    #[test]
    fn thin_region_detected() {
        let needle = Constraint::new("needle", |c: &[f64]| (c[0] - 1.0).abs() < 1e-9);
        let r = Region::constrained(OrthantCone::positive(1).unwrap(), needle, false);
        let err = sample_region(&r, &SampleConfig::new(1, 10, (1e-3, 1e3))).unwrap_err();
        assert!(matches!(err, Error::RegionTooThin { .. }));
    }

    #[test]
    fn false_additive_closure_declaration_is_caught() {
        let bounded = Constraint::new("below-one", |c: &[f64]| c[0] < 1.0);
        let r = Region::constrained(OrthantCone::positive(1).unwrap(), bounded.clone(), true);
        let cfg = SampleConfig::new(3, 100, (0.1, 1.0)).with_distribution(ScaleDistribution::Uniform);
        assert!(matches!(
            sample_pairs_additive(&r, &cfg),
            Err(Error::NotAdditivelyClosed { .. })
        ));

        // the same predicate without the declaration simply filters
        let r = Region::constrained(OrthantCone::positive(1).unwrap(), bounded, false);
        let pairs = sample_pairs_additive(&r, &cfg).unwrap();
        assert_eq!(pairs.len(), 100);
        assert!(pairs.iter().all(|(a, b)| a.coords()[0] + b.coords()[0] < 1.0));
    }

    #[test]
    fn kerr_newman_pair_sum() {
        let r = Region::kerr_newman(0.0).unwrap();
        let x = Point::from([1.0, 0.5]);
        assert!(r.contains(&x.add(&x)).unwrap());
        assert_eq!(x.add(&x), Point::from([2.0, 1.0]));
    }

    #[test]
    fn shell_points_lie_in_shell() {
        let r = Region::kerr_newman(0.0).unwrap();
        let pts = sample_shell(&r, 1e-4, 0.9, 50, 11);
        assert!(!pts.is_empty());
        for p in &pts {
            let n = p.norm();
            assert!(n > 0.9e-4 && n <= 1e-4);
            assert!(r.contains(p).unwrap());
        }
    }

    #[test]
    fn batches_cover_count() {
        assert_eq!(batch_sizes(0), Vec::<usize>::new());
        assert_eq!(batch_sizes(1024), vec![1024]);
        assert_eq!(batch_sizes(2500), vec![1024, 1024, 452]);
    }
}
