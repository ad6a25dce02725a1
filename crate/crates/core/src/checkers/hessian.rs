//! Second-derivative diagnostics for concavity.
//!
//! A twice differentiable concave function has nonpositive second
//! derivatives along every axis, and in two dimensions strict concavity needs
//! `f_xx f_yy - f_xy^2 > 0`. We report `D = f_xy^2 - f_xx f_yy`, so strict
//! concavity requires `D < 0` and `D = 0` marks a degenerate direction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verdict::{CheckMethod, Status, Verdict, Witness, WitnessKind};
use crate::domain::Point;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::numdiff;
use crate::property::PropertyId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianPoint {
    pub point: Point,
    pub value: f64,
    /// `f_ii`, `None` where the stencil leaves the region.
    pub diagonal: Vec<Option<f64>>,
    pub diagonal_noise: Vec<Option<f64>>,
    /// `f_01` for two-dimensional fields.
    pub mixed: Option<f64>,
    /// `f_01^2 - f_00 f_11` for two-dimensional fields.
    pub determinant: Option<f64>,
    pub determinant_noise: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianReport {
    /// Necessary condition for concavity: every `f_ii <= 0` up to noise.
    pub necessary: Verdict,
    /// Necessary condition for strict concavity (dimensions 1 and 2).
    pub strict: Option<Verdict>,
    pub points: Vec<HessianPoint>,
    pub skipped: usize,
    pub fd_step: f64,
}

/// `(D, noise)` at `p` for a two-dimensional field.
pub(crate) fn determinant_at(f: &ScalarField, p: &Point, step: f64) -> Option<(f64, f64)> {
    let g = |q: &Point| f.eval_in_region(q);
    let (a, na) = numdiff::second(g, p, 0, step)?;
    let (b, nb) = numdiff::second(g, p, 1, step)?;
    let (m, nm) = numdiff::mixed(g, p, 0, 1, step)?;
    Some(determinant(a, na, b, nb, m, nm))
}

fn determinant(a: f64, na: f64, b: f64, nb: f64, m: f64, nm: f64) -> (f64, f64) {
    let d = m * m - a * b;
    let noise = 2.0 * m.abs() * nm + a.abs() * nb + b.abs() * na + na * nb + nm * nm;
    (d, noise)
}

fn diagnose(f: &ScalarField, p: &Point, step: f64) -> Option<HessianPoint> {
    let value = f.eval_in_region(p)?;
    let g = |q: &Point| f.eval_in_region(q);
    let dim = p.dim();
    let diag: Vec<Option<(f64, f64)>> = (0..dim).map(|i| numdiff::second(g, p, i, step)).collect();
    if diag.iter().all(Option::is_none) {
        return None;
    }
    let (mut mixed, mut det, mut det_noise) = (None, None, None);
    if dim == 2 {
        if let (Some((a, na)), Some((b, nb)), Some((m, nm))) = (diag[0], diag[1], numdiff::mixed(g, p, 0, 1, step)) {
            let (d, n) = determinant(a, na, b, nb, m, nm);
            mixed = Some(m);
            det = Some(d);
            det_noise = Some(n);
        }
    }
    Some(HessianPoint {
        point: p.clone(),
        value,
        diagonal: diag.iter().map(|d| d.map(|x| x.0)).collect(),
        diagonal_noise: diag.iter().map(|d| d.map(|x| x.1)).collect(),
        mixed,
        determinant: det,
        determinant_noise: det_noise,
    })
}

/// Per-point second derivatives with concavity verdicts.
///
/// Points whose stencils leave the region along every axis are skipped.
pub fn check_concavity_hessian(f: &ScalarField, points: &[Point], fd_step: f64) -> Result<HessianReport> {
    if !(fd_step.is_finite() && fd_step > 0.0) {
        return Err(Error::contract(format!("fd_step must be positive, got {fd_step}")));
    }
    let diagnosed: Vec<Option<HessianPoint>> = points.par_iter().map(|p| diagnose(f, p, fd_step)).collect();
    let skipped = diagnosed.iter().filter(|d| d.is_none()).count();
    let rows: Vec<HessianPoint> = diagnosed.into_iter().flatten().collect();

    let necessary = necessary_verdict(&rows, fd_step);
    let strict = match f.dimension() {
        // a positive diagonal already rules out strict concavity
        _ if necessary.is_falsified() => {
            let mut v = necessary.clone();
            v.property = PropertyId::CcStrict;
            if let Some(w) = v.witness.as_mut() {
                w.property = PropertyId::CcStrict;
            }
            Some(v)
        }
        1 => Some(strict_verdict_1d(&rows, fd_step)),
        2 => Some(strict_verdict_2d(&rows, fd_step)),
        _ => None,
    };
    Ok(HessianReport {
        necessary,
        strict,
        points: rows,
        skipped,
        fd_step,
    })
}

fn base(property: PropertyId, checked: usize) -> Verdict {
    let mut v = Verdict::inconclusive(property, CheckMethod::FiniteDifference, 0.0);
    v.samples_checked = checked;
    v
}

fn necessary_verdict(rows: &[HessianPoint], step: f64) -> Verdict {
    let mut v = base(PropertyId::Cc, rows.len());
    if rows.is_empty() {
        return v;
    }
    let mut worst: Option<(f64, &HessianPoint, usize, f64, f64)> = None;
    let mut min_margin = f64::INFINITY;
    let mut max_abs = 0.0_f64;
    for row in rows {
        for (axis, (d, n)) in row.diagonal.iter().zip(&row.diagonal_noise).enumerate() {
            let (Some(d), Some(n)) = (d, n) else { continue };
            min_margin = min_margin.min(-d);
            max_abs = max_abs.max(d.abs());
            let excess = d - n;
            if worst.as_ref().is_none_or(|w| excess > w.0) {
                worst = Some((excess, row, axis, *d, *n));
            }
        }
    }
    v.worst_margin = min_margin;
    v.max_abs_margin = max_abs;
    v.status = Status::Satisfied;
    if let Some((excess, row, axis, d, n)) = worst {
        if excess > 0.0 {
            v.status = Status::Falsified;
            v.witness = Some(Witness {
                property: PropertyId::Cc,
                kind: WitnessKind::SecondDerivative { axis, step },
                points: vec![row.point.clone()],
                lambda: None,
                values: vec![d, row.value],
                violation: d,
                threshold: n,
            });
        }
    }
    v
}

fn strict_verdict_1d(rows: &[HessianPoint], step: f64) -> Verdict {
    let mut v = base(PropertyId::CcStrict, 0);
    let mut worst: Option<(f64, &HessianPoint, f64, f64)> = None;
    for row in rows {
        let (Some(d), Some(n)) = (row.diagonal[0], row.diagonal_noise[0]) else { continue };
        v.samples_checked += 1;
        v.max_abs_margin = v.max_abs_margin.max(d.abs());
        let excess = d + n;
        if worst.as_ref().is_none_or(|w| excess > w.0) {
            worst = Some((excess, row, d, n));
        }
    }
    finish_strict(v, worst, |row, d, n| Witness {
        property: PropertyId::CcStrict,
        kind: WitnessKind::SecondDerivative { axis: 0, step },
        points: vec![row.point.clone()],
        lambda: None,
        values: vec![d, row.value],
        violation: d,
        threshold: -n,
    })
}

fn strict_verdict_2d(rows: &[HessianPoint], step: f64) -> Verdict {
    let mut v = base(PropertyId::CcStrict, 0);
    let mut worst: Option<(f64, &HessianPoint, f64, f64)> = None;
    for row in rows {
        let (Some(d), Some(n)) = (row.determinant, row.determinant_noise) else { continue };
        v.samples_checked += 1;
        v.max_abs_margin = v.max_abs_margin.max(d.abs());
        let excess = d + n;
        if worst.as_ref().is_none_or(|w| excess > w.0) {
            worst = Some((excess, row, d, n));
        }
    }
    finish_strict(v, worst, |row, d, n| Witness {
        property: PropertyId::CcStrict,
        kind: WitnessKind::Determinant { step },
        points: vec![row.point.clone()],
        lambda: None,
        values: vec![d, row.value],
        violation: d,
        threshold: -n,
    })
}

fn finish_strict(
    mut v: Verdict,
    worst: Option<(f64, &HessianPoint, f64, f64)>,
    witness: impl Fn(&HessianPoint, f64, f64) -> Witness,
) -> Verdict {
    let Some((excess, row, d, n)) = worst else {
        return v;
    };
    v.worst_margin = -excess;
    // strict needs the quantity strictly below minus its noise floor
    if excess > 0.0 {
        v.status = Status::Falsified;
        v.witness = Some(witness(row, d, n));
    } else {
        v.status = Status::Satisfied;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_bh_entropy, make_linear, make_photon_entropy};
    use std::f64::consts::PI;

    #[test]
    fn bekenstein_near_zero_spin() {
        let f = make_bh_entropy(0.0).unwrap();
        let r = check_concavity_hessian(&f, &[Point::from([1.0, 1e-6])], numdiff::SECOND_DERIVATIVE_STEP).unwrap();
        let smm = r.points[0].diagonal[0].unwrap();
        assert!((smm - 8.0 * PI).abs() < 0.01, "{smm}");
        assert_eq!(r.necessary.status, Status::Falsified);
        assert!(r.necessary.witness.as_ref().unwrap().revalidate(&f).unwrap());
    }

    #[test]
    fn photon_is_degenerate_at_unit_point() {
        let f = make_photon_entropy();
        let r = check_concavity_hessian(&f, &[Point::from([1.0, 1.0])], numdiff::SECOND_DERIVATIVE_STEP).unwrap();
        let row = &r.points[0];
        assert!((row.diagonal[0].unwrap() + 3.0 / 16.0).abs() < 1e-6);
        assert!((row.diagonal[1].unwrap() + 3.0 / 16.0).abs() < 1e-6);
        assert!((row.mixed.unwrap() - 3.0 / 16.0).abs() < 1e-6);
        assert!(row.determinant.unwrap().abs() < 1e-6);
        assert_eq!(r.necessary.status, Status::Satisfied);
        let strict = r.strict.unwrap();
        assert_eq!(strict.status, Status::Falsified);
        assert!(strict.witness.unwrap().revalidate(&f).unwrap());
    }

    #[test]
    fn linear_second_derivatives_vanish() {
        let f = make_linear(vec![1.0, 2.0]).unwrap();
        let pts = [Point::from([1.0, 1.0]), Point::from([300.0, 0.02])];
        let r = check_concavity_hessian(&f, &pts, numdiff::SECOND_DERIVATIVE_STEP).unwrap();
        assert_eq!(r.necessary.status, Status::Satisfied);
        for row in &r.points {
            for (d, n) in row.diagonal.iter().zip(&row.diagonal_noise) {
                assert!(d.unwrap().abs() <= n.unwrap());
            }
        }
    }

    #[test]
    fn points_outside_are_skipped() {
        let f = make_bh_entropy(0.0).unwrap();
        let r = check_concavity_hessian(&f, &[Point::from([1.0, 5.0])], 1e-4).unwrap();
        assert_eq!(r.skipped, 1);
        assert_eq!(r.necessary.status, Status::Inconclusive);
    }

    #[test]
    fn rejects_bad_step() {
        let f = make_photon_entropy();
        assert!(check_concavity_hessian(&f, &[], 0.0).is_err());
    }
}
