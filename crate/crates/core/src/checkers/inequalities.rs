//! Sampled checks of homogeneity, superadditivity and concavity, and their
//! sign-flipped duals.

use rand::Rng;
use rayon::prelude::*;

use super::verdict::{evaluate, reduce, CheckMethod, Sample, Verdict, WitnessKind};
use crate::domain::{batch_rng, sample_pairs_additive, sample_region, Point, SampleConfig};
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::property::PropertyId;

pub const DEFAULT_HOMOGENEITY_LAMBDAS: [f64; 8] = [
    0.1,
    0.5,
    std::f64::consts::SQRT_2,
    1.5,
    2.0,
    3.0,
    std::f64::consts::PI,
    10.0,
];

/// Fixed part of the concavity mixing weights; odd samples draw `λ` at random.
pub const DEFAULT_CONCAVITY_LAMBDAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

/// Stream offset separating auxiliary draws from point sampling.
const AUX_STREAM: usize = 1 << 20;

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::contract(format!("tolerance must be finite and nonnegative, got {tol}")));
    }
    Ok(())
}

fn sample_one(f: &ScalarField, property: PropertyId, points: Vec<Point>, lambda: Option<f64>) -> Option<Sample> {
    let eval = evaluate(f, property, &points, lambda)?;
    Some(Sample { points, lambda, eval })
}

/// `f(λx) = λ f(x)` with `λ` cycling through `lambdas`.
///
/// Samples whose scaled point leaves the region are skipped and counted.
pub fn check_homogeneity(f: &ScalarField, cfg: &SampleConfig, lambdas: &[f64], tol: f64) -> Result<Verdict> {
    check_tol(tol)?;
    if lambdas.is_empty() || lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::contract("homogeneity needs a nonempty list of positive lambdas"));
    }
    let xs = sample_region(f.region(), cfg)?;
    check_homogeneity_points(f, &xs, lambdas, tol)
}

/// [`check_homogeneity`] on caller-supplied points.
pub fn check_homogeneity_points(f: &ScalarField, xs: &[Point], lambdas: &[f64], tol: f64) -> Result<Verdict> {
    check_tol(tol)?;
    if lambdas.is_empty() {
        return Err(Error::contract("homogeneity needs at least one lambda"));
    }
    let outcomes = xs
        .par_iter()
        .enumerate()
        .map(|(i, x)| sample_one(f, PropertyId::H, vec![x.clone()], Some(lambdas[i % lambdas.len()])))
        .collect();
    Ok(reduce(PropertyId::H, CheckMethod::Sampling, WitnessKind::Inequality, tol, false, outcomes))
}

/// `f(x1 + x2) >= f(x1) + f(x2)` on sampled additive pairs.
///
/// In strict mode every pair must clear `tol * scale`.
pub fn check_superadditivity(f: &ScalarField, cfg: &SampleConfig, tol: f64, strict: bool) -> Result<Verdict> {
    check_tol(tol)?;
    let pairs = sample_pairs_additive(f.region(), cfg)?;
    check_superadditivity_pairs(f, &pairs, tol, strict)
}

pub fn check_superadditivity_pairs(f: &ScalarField, pairs: &[(Point, Point)], tol: f64, strict: bool) -> Result<Verdict> {
    check_tol(tol)?;
    let property = if strict { PropertyId::SpStrict } else { PropertyId::Sp };
    let outcomes = pairs
        .par_iter()
        .map(|(a, b)| sample_one(f, property, vec![a.clone(), b.clone()], None))
        .collect();
    Ok(reduce(property, CheckMethod::Sampling, WitnessKind::Inequality, tol, strict, outcomes))
}

/// A concavity test case `(x, y, λ)`.
pub type Triple = (Point, Point, f64);

/// Triples for [`check_concavity`]: consecutive sampled points paired up,
/// `λ` from `lambdas` on even indices and uniform on `(0, 1)` on odd ones.
pub fn concavity_triples(f: &ScalarField, cfg: &SampleConfig, lambdas: &[f64]) -> Result<Vec<Triple>> {
    if lambdas.is_empty() || lambdas.iter().any(|l| !(*l > 0.0 && *l < 1.0)) {
        return Err(Error::contract("concavity lambdas must lie in (0, 1)"));
    }
    let pts = sample_region(f.region(), &cfg.clone().with_count(2 * cfg.count))?;
    let mut rng = batch_rng(cfg.seed, AUX_STREAM);
    Ok(pts
        .chunks_exact(2)
        .enumerate()
        .map(|(i, pair)| {
            let lambda = if i % 2 == 0 {
                lambdas[(i / 2) % lambdas.len()]
            } else {
                // (0, 1): exclude the endpoint 0
                1.0 - rng.random::<f64>()
            };
            let lambda = if lambda >= 1.0 { 0.5 } else { lambda };
            (pair[0].clone(), pair[1].clone(), lambda)
        })
        .collect())
}

/// `f(λx + (1-λ)y) >= λ f(x) + (1-λ) f(y)` on `cfg.count` sampled triples.
///
/// Combinations that leave a non-convex constrained region are skipped.
pub fn check_concavity(f: &ScalarField, cfg: &SampleConfig, lambdas: &[f64], tol: f64) -> Result<Verdict> {
    check_tol(tol)?;
    let triples = concavity_triples(f, cfg, lambdas)?;
    check_concavity_triples(f, &triples, tol)
}

pub fn check_concavity_triples(f: &ScalarField, triples: &[Triple], tol: f64) -> Result<Verdict> {
    check_tol(tol)?;
    let outcomes = triples
        .par_iter()
        .map(|(x, y, l)| sample_one(f, PropertyId::Cc, vec![x.clone(), y.clone()], Some(*l)))
        .collect();
    Ok(reduce(PropertyId::Cc, CheckMethod::Sampling, WitnessKind::Inequality, tol, false, outcomes))
}

/// `f(x1 + x2) <= f(x1) + f(x2)`, checked as superadditivity of `-f`.
///
/// A witness, if any, refers to the inequality for `-f`.
pub fn check_subadditivity(f: &ScalarField, cfg: &SampleConfig, tol: f64) -> Result<Verdict> {
    let mut v = check_superadditivity(&f.negated(), cfg, tol, false)?;
    v.property = PropertyId::S;
    Ok(v)
}

/// Convexity, checked as concavity of `-f`.
pub fn check_convexity(f: &ScalarField, cfg: &SampleConfig, lambdas: &[f64], tol: f64) -> Result<Verdict> {
    let mut v = check_concavity(&f.negated(), cfg, lambdas, tol)?;
    v.property = PropertyId::Cv;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::Status;
    use crate::fields::{make_bh_entropy, make_f0, make_linear, make_photon_entropy, SlopeMode};

    fn cfg(count: usize) -> SampleConfig {
        SampleConfig::new(42, count, (1e-3, 1e3))
    }

    #[test]
    fn photon_homogeneity_single_case() {
        let f = make_photon_entropy();
        let v = check_homogeneity_points(&f, &[Point::from([1.0, 1.0])], &[3.0], 1e-12).unwrap();
        assert_eq!(v.status, Status::Satisfied);
        assert_eq!(v.worst_margin, 0.0);
    }

    #[test]
    fn f0_homogeneity_fails_at_two() {
        let f = make_f0(1.0, SlopeMode::Tangent).unwrap();
        let v = check_homogeneity_points(&f, &[Point::from([1.0])], &[2.0], 1e-9).unwrap();
        assert_eq!(v.status, Status::Falsified);
        let w = v.witness.unwrap();
        assert!((w.violation - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(w.revalidate(&f).unwrap());
    }

    #[test]
    fn identity_scaling_has_zero_margin() {
        for f in [
            make_photon_entropy(),
            make_f0(1.0, SlopeMode::Tangent).unwrap(),
            make_bh_entropy(0.0).unwrap(),
        ] {
            let v = check_homogeneity(&f, &cfg(500), &[1.0], 0.0).unwrap();
            assert_eq!(v.worst_margin, 0.0, "{}", f.name());
            assert_eq!(v.max_abs_margin, 0.0);
            assert_eq!(v.status, Status::Satisfied);
        }
    }

    #[test]
    fn linear_is_exactly_homogeneous_on_integers() {
        let f = make_linear(vec![3.0]).unwrap();
        let v = check_homogeneity(&f, &cfg(1000), &[2.0, 4.0, 0.5], 0.0).unwrap();
        assert_eq!(v.status, Status::Satisfied);
    }

    #[test]
    fn superadditivity_examples() {
        let f0 = make_f0(1.0, SlopeMode::Tangent).unwrap();
        let small = (Point::from([0.5]), Point::from([0.5]));
        let mixed = (Point::from([1.5]), Point::from([1.0]));
        let v = check_superadditivity_pairs(&f0, &[small, mixed], 1e-9, false).unwrap();
        assert_eq!(v.status, Status::Satisfied);

        let bh = make_bh_entropy(0.0).unwrap();
        let x = Point::from([1.0, 0.5]);
        let v = check_superadditivity_pairs(&bh, &[(x.clone(), x)], 1e-9, true).unwrap();
        assert_eq!(v.status, Status::Satisfied);
        // S(2,1) - 2 S(1,0.5)
        let margin = v.worst_margin * (1.0 + 49.46650);
        assert!((margin - 26.02).abs() < 0.01, "{margin}");

        let ph = make_photon_entropy();
        let x = Point::from([1.0, 1.0]);
        let pair = [(x.clone(), x)];
        assert_eq!(check_superadditivity_pairs(&ph, &pair, 1e-9, false).unwrap().status, Status::Satisfied);
        let strict = check_superadditivity_pairs(&ph, &pair, 1e-9, true).unwrap();
        assert_eq!(strict.status, Status::Falsified);
        assert!(strict.witness.unwrap().revalidate(&ph).unwrap());
    }

    #[test]
    fn concavity_examples() {
        let f0 = make_f0(1.0, SlopeMode::Tangent).unwrap();
        let t = [(Point::from([1.0]), Point::from([4.0]), 0.5)];
        assert_eq!(check_concavity_triples(&f0, &t, 1e-9).unwrap().status, Status::Satisfied);

        let ph = make_photon_entropy();
        let t = [(Point::from([1.0, 1.0]), Point::from([16.0, 16.0]), 0.5)];
        let v = check_concavity_triples(&ph, &t, 1e-12).unwrap();
        assert_eq!(v.status, Status::Satisfied);
        assert!(v.max_abs_margin < 1e-15);
    }

    #[test]
    fn bekenstein_concavity_fails_on_samples() {
        let bh = make_bh_entropy(0.0).unwrap();
        let v = check_concavity(&bh, &cfg(2000), &DEFAULT_CONCAVITY_LAMBDAS, 1e-9).unwrap();
        assert_eq!(v.status, Status::Falsified);
        assert!(v.witness.unwrap().revalidate(&bh).unwrap());
    }

    #[test]
    fn empty_samples_are_inconclusive() {
        let f = make_photon_entropy();
        assert_eq!(check_superadditivity_pairs(&f, &[], 1e-9, false).unwrap().status, Status::Inconclusive);
        assert_eq!(check_concavity(&f, &cfg(0), &[0.5], 1e-9).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn invalid_lambdas_rejected() {
        let f = make_photon_entropy();
        assert!(check_homogeneity(&f, &cfg(10), &[], 1e-9).is_err());
        assert!(check_homogeneity(&f, &cfg(10), &[-1.0], 1e-9).is_err());
        assert!(check_concavity(&f, &cfg(10), &[1.0], 1e-9).is_err());
    }

    #[test]
    fn down_scaling_skips_on_kerr_newman() {
        let bh = make_bh_entropy(0.0).unwrap();
        let v = check_homogeneity(&bh, &cfg(2000), &[0.01], 1e-9).unwrap();
        assert!(v.samples_skipped > 0);
        // whatever survives still exposes the failure
        assert_eq!(v.status, Status::Falsified);
    }

    #[test]
    fn duals_match_negation() {
        let f0 = make_f0(1.0, SlopeMode::Tangent).unwrap();
        let c = cfg(3000);
        let s = check_subadditivity(&f0, &c, 1e-9).unwrap();
        assert_eq!(s.property, PropertyId::S);
        assert_eq!(s.status, Status::Falsified);
        let cv = check_convexity(&f0, &c, &DEFAULT_CONCAVITY_LAMBDAS, 1e-9).unwrap();
        assert_eq!(cv.status, Status::Falsified);
        let lin = make_linear(vec![2.0]).unwrap();
        assert_eq!(check_subadditivity(&lin, &c, 1e-9).unwrap().status, Status::Satisfied);
    }
}
