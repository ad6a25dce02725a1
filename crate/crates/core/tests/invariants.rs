//! Property-based checks of the sampling, checker and witness invariants.

use proptest::prelude::*;

use conelaw::checkers::{
    chain27_residual, check_concavity_triples, check_homogeneity_points, check_subadditivity,
    check_superadditivity, check_superadditivity_pairs, Status, Verdict,
};
use conelaw::domain::{sample_pairs_additive, sample_region, AxisSign, OrthantCone};
use conelaw::falsifier::{falsify, refine_witness, SearchBudget};
use conelaw::fields::{make_bh_entropy, make_f0, make_linear, make_photon_entropy, ScalarField, SlopeMode};
use conelaw::numdiff;
use conelaw::{Point, PropertyId, Region, SampleConfig};

fn coord() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

fn signs(d: usize) -> impl Strategy<Value = Vec<AxisSign>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { AxisSign::Positive } else { AxisSign::Negative }), d)
}

fn catalog() -> Vec<ScalarField> {
    vec![
        make_f0(1.0, SlopeMode::Tangent).unwrap(),
        make_bh_entropy(0.0).unwrap(),
        make_photon_entropy(),
        make_linear(vec![2.0, 0.5]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthant_cones_are_closed_under_scaling_and_addition(
        s in signs(3),
        a in prop::collection::vec(coord(), 3),
        b in prop::collection::vec(coord(), 3),
        l in coord(),
    ) {
        let region = Region::cone(OrthantCone::new(s.clone()).unwrap());
        let x = Point::new(a.iter().zip(&s).map(|(v, s)| v * s.value()).collect::<Vec<_>>()).unwrap();
        let y = Point::new(b.iter().zip(&s).map(|(v, s)| v * s.value()).collect::<Vec<_>>()).unwrap();
        prop_assert!(region.contains(&x).unwrap());
        prop_assert!(region.contains(&x.scaled(l)).unwrap());
        prop_assert!(region.contains(&x.add(&y)).unwrap());
    }

    #[test]
    fn kerr_newman_is_additively_closed(m1 in 0.01f64..10.0, m2 in 0.01f64..10.0, f1 in 0.0f64..0.999, f2 in 0.0f64..0.999) {
        // J = f M^2 keeps the point inside for Q = 0
        let region = Region::kerr_newman(0.0).unwrap();
        let x = Point::from([m1, f1 * m1 * m1 + 1e-300]);
        let y = Point::from([m2, f2 * m2 * m2 + 1e-300]);
        prop_assert!(region.contains(&x).unwrap() && region.contains(&y).unwrap());
        prop_assert!(region.contains(&x.add(&y)).unwrap());
    }

    #[test]
    fn sampled_points_are_members(seed in any::<u64>(), q in 0.0f64..0.5) {
        let region = Region::kerr_newman(q).unwrap();
        let cfg = SampleConfig::new(seed, 300, (1e-2, 1e2));
        for p in sample_region(&region, &cfg).unwrap() {
            prop_assert!(region.contains(&p).unwrap());
        }
    }

    #[test]
    fn identity_scaling_and_unit_split_are_exact(seed in any::<u64>()) {
        for f in catalog() {
            let xs = sample_region(f.region(), &SampleConfig::new(seed, 50, f.sampling_range())).unwrap();
            let v = check_homogeneity_points(&f, &xs, &[1.0], 0.0).unwrap();
            prop_assert_eq!(v.status, Status::Satisfied);
            prop_assert_eq!(v.max_abs_margin, 0.0);
            for x in &xs {
                prop_assert_eq!(chain27_residual(&f, x, 1), Some(0.0));
            }
        }
    }

    #[test]
    fn larger_tolerance_never_creates_failures(seed in any::<u64>(), t1 in 0.0f64..1e-3, k in 1.0f64..1e3) {
        let t2 = t1 * k;
        for f in catalog() {
            let cfg = SampleConfig::new(seed, 200, f.sampling_range());
            let pairs = sample_pairs_additive(f.region(), &cfg).unwrap();
            let a = check_superadditivity_pairs(&f, &pairs, t1, false).unwrap();
            let b = check_superadditivity_pairs(&f, &pairs, t2, false).unwrap();
            prop_assert!(!(a.status == Status::Satisfied && b.status == Status::Falsified));
            let xs = sample_region(f.region(), &cfg).unwrap();
            let triples: Vec<_> = xs.chunks(2).map(|c| (c[0].clone(), c[1].clone(), 0.3)).collect();
            let a = check_concavity_triples(&f, &triples, t1).unwrap();
            let b = check_concavity_triples(&f, &triples, t2).unwrap();
            prop_assert!(!(a.status == Status::Satisfied && b.status == Status::Falsified));
        }
    }

    #[test]
    fn gradients_match_finite_differences(m in 0.05f64..20.0, frac in 0.0f64..0.9, e in coord(), v in coord()) {
        let cases = [
            (make_bh_entropy(0.0).unwrap(), Point::from([m, frac * m * m + 1e-9])),
            (make_photon_entropy(), Point::from([e, v])),
            (make_f0(1.0, SlopeMode::Tangent).unwrap(), Point::from([e])),
        ];
        for (f, p) in cases {
            let g = f.gradient(&p).unwrap().unwrap();
            for (i, gi) in g.iter().enumerate() {
                let Some(fd) = numdiff::first(|q: &Point| f.try_eval(q), &p, i, numdiff::FIRST_DERIVATIVE_STEP) else {
                    continue;
                };
                prop_assert!((fd - gi).abs() <= 1e-5 * gi.abs().max(1.0), "{} at {p}: fd {fd} vs {gi}", f.name());
            }
        }
    }

    #[test]
    fn checks_are_deterministic(seed in any::<u64>()) {
        let f = make_bh_entropy(0.0).unwrap();
        let cfg = SampleConfig::new(seed, 2000, f.sampling_range());
        let a = check_superadditivity(&f, &cfg, 1e-9, true).unwrap();
        let b = check_superadditivity(&f, &cfg, 1e-9, true).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn subadditivity_is_superadditivity_of_the_negation(seed in any::<u64>()) {
        for f in catalog() {
            let cfg = SampleConfig::new(seed, 300, f.sampling_range());
            let s = check_subadditivity(&f, &cfg, 1e-9).unwrap();
            let sp = check_superadditivity(&f.negated(), &cfg, 1e-9, false).unwrap();
            prop_assert_eq!(s.property, PropertyId::S);
            prop_assert_eq!(Verdict { property: PropertyId::Sp, ..s }, sp);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn falsified_witnesses_revalidate_and_refine_monotonically(seed in any::<u64>()) {
        let budget = SearchBudget { random_probes: 256, refine_iterations: 60, ..SearchBudget::default() }.with_seed(seed);
        let cases = [
            (make_bh_entropy(0.0).unwrap(), PropertyId::Cc),
            (make_f0(1.0, SlopeMode::Tangent).unwrap(), PropertyId::H),
            (make_f0(3.0, SlopeMode::PaperSquared).unwrap(), PropertyId::Cc),
        ];
        for (f, p) in cases {
            let v = falsify(&f, p, &budget, 1e-9).unwrap();
            prop_assert_eq!(v.status, Status::Falsified);
            let w = v.witness.unwrap();
            prop_assert!(w.revalidate(&f).unwrap());
            prop_assert!(w.points.iter().all(|x| f.region().contains(x).unwrap()));
            let r = refine_witness(&f, p, &w, &budget).unwrap();
            prop_assert!(r.violation >= w.violation);
            prop_assert!(r.revalidate(&f).unwrap());
        }
    }
}

#[test]
fn kerr_newman_is_not_closed_under_down_scaling() {
    let region = Region::kerr_newman(0.0).unwrap();
    let x = Point::from([1.0, 0.9]);
    assert!(region.contains(&x).unwrap());
    assert!(!region.contains(&x.scaled(0.5)).unwrap());
}
