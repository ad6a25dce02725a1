//! Scalar fields on regions and the built-in catalog.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::{Constraint, OrthantCone, Point, Region};
use crate::error::{Error, Result};
use crate::property::PropertyId;

pub type EvalFn = dyn Fn(&[f64]) -> Option<f64> + Send + Sync;
pub type GradFn = dyn Fn(&[f64]) -> Option<Vec<f64>> + Send + Sync;

/// Expected truth values, where known.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredProperties {
    pub h: Option<bool>,
    pub sp: Option<bool>,
    pub sp_strict: Option<bool>,
    pub cc: Option<bool>,
    pub cc_strict: Option<bool>,
    pub liminf_ok: Option<bool>,
}

impl DeclaredProperties {
    pub fn expected(&self, p: PropertyId) -> Option<bool> {
        match p {
            PropertyId::H => self.h,
            PropertyId::Sp => self.sp,
            PropertyId::SpStrict => self.sp_strict,
            PropertyId::Cc => self.cc,
            PropertyId::CcStrict => self.cc_strict,
            PropertyId::LiminfOK => self.liminf_ok,
            // The identities of the homogeneity chain and the constant ratio
            // hold exactly when the field is homogeneous.
            PropertyId::Chain23 | PropertyId::Chain27 | PropertyId::Chain28 | PropertyId::RatioConstant => self.h,
            PropertyId::S | PropertyId::Cv => None,
        }
    }

    pub fn set(&mut self, p: PropertyId, value: bool) -> Result<()> {
        let slot = match p {
            PropertyId::H => &mut self.h,
            PropertyId::Sp => &mut self.sp,
            PropertyId::SpStrict => &mut self.sp_strict,
            PropertyId::Cc => &mut self.cc,
            PropertyId::CcStrict => &mut self.cc_strict,
            PropertyId::LiminfOK => &mut self.liminf_ok,
            other => return Err(Error::Usage(format!("cannot declare an expectation for {other}"))),
        };
        *slot = Some(value);
        Ok(())
    }
}

/// A named real-valued function on a region.
///
/// The evaluator returns `None` outside the function's domain. Values are
/// finite or `-inf`; `NaN` and `+inf` are reported as domain errors.
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    region: Region,
    eval: Arc<EvalFn>,
    grad: Option<Arc<GradFn>>,
    declared: DeclaredProperties,
    open_domain: bool,
    sampling_range: (f64, f64),
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("name", &self.name)
            .field("region", &self.region)
            .field("has_gradient", &self.grad.is_some())
            .field("declared", &self.declared)
            .field("open_domain", &self.open_domain)
            .finish()
    }
}

/// Coordinate magnitudes used when a caller does not choose a range.
pub const DEFAULT_SAMPLING_RANGE: (f64, f64) = (1e-3, 1e3);

impl ScalarField {
    pub fn new(
        name: impl Into<String>,
        region: Region,
        eval: impl Fn(&[f64]) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            name: name.into(),
            region,
            eval: Arc::new(eval),
            grad: None,
            declared: DeclaredProperties::default(),
            open_domain: true,
            sampling_range: DEFAULT_SAMPLING_RANGE,
        }
    }

    pub fn with_gradient(mut self, grad: impl Fn(&[f64]) -> Option<Vec<f64>> + Send + Sync + 'static) -> Self {
        self.grad = Some(Arc::new(grad));
        self
    }

    pub fn with_declared(mut self, declared: DeclaredProperties) -> Self {
        self.declared = declared;
        self
    }

    pub fn with_sampling_range(mut self, range: (f64, f64)) -> Self {
        self.sampling_range = range;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn dimension(&self) -> usize {
        self.region.dimension()
    }

    pub fn declared(&self) -> &DeclaredProperties {
        &self.declared
    }

    pub fn declared_mut(&mut self) -> &mut DeclaredProperties {
        &mut self.declared
    }

    /// False for fixtures defined on a closed set; those never enter deduction.
    pub fn has_open_domain(&self) -> bool {
        self.open_domain
    }

    pub fn sampling_range(&self) -> (f64, f64) {
        self.sampling_range
    }

    pub fn has_gradient(&self) -> bool {
        self.grad.is_some()
    }

    pub fn eval(&self, p: &Point) -> Result<f64> {
        if p.dim() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: p.dim(),
            });
        }
        self.try_eval(p).ok_or_else(|| Error::Domain {
            field: self.name.clone(),
            point: p.coords().to_vec(),
        })
    }

    /// Evaluation without error construction; `None` outside the domain.
    pub fn try_eval(&self, p: &Point) -> Option<f64> {
        if p.dim() != self.dimension() || !p.is_finite() {
            return None;
        }
        (self.eval)(p.coords()).filter(|v| !v.is_nan() && *v != f64::INFINITY)
    }

    /// Evaluation restricted to region members.
    pub(crate) fn eval_in_region(&self, p: &Point) -> Option<f64> {
        if self.region.contains_coords(p.coords()) {
            self.try_eval(p)
        } else {
            None
        }
    }

    /// Closed-form gradient, when the field provides one.
    pub fn gradient(&self, p: &Point) -> Option<Result<Vec<f64>>> {
        let g = self.grad.as_ref()?;
        Some(g(p.coords()).ok_or_else(|| Error::Domain {
            field: self.name.clone(),
            point: p.coords().to_vec(),
        }))
    }

    /// `-f` on the same region. Declared properties do not carry over.
    pub fn negated(&self) -> ScalarField {
        let inner = Arc::clone(&self.eval);
        let mut out = ScalarField::new(format!("-{}", self.name), self.region.clone(), move |c: &[f64]| {
            inner(c).map(|v| -v)
        });
        if let Some(g) = &self.grad {
            let g = Arc::clone(g);
            out = out.with_gradient(move |c: &[f64]| g(c).map(|v| v.into_iter().map(|x| -x).collect()));
        }
        out.open_domain = self.open_domain;
        out.sampling_range = self.sampling_range;
        out
    }
}

/// Slope of the linear tail of the counterexample beyond `2/c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SlopeMode {
    /// `c/2`, the derivative of `log(cx)` at `2/c`.
    #[default]
    Tangent,
    /// `(c/2)^2`.
    PaperSquared,
}

impl SlopeMode {
    pub fn slope(self, c: f64) -> f64 {
        match self {
            SlopeMode::Tangent => c / 2.0,
            SlopeMode::PaperSquared => (c / 2.0) * (c / 2.0),
        }
    }
}

impl std::str::FromStr for SlopeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tangent" => Ok(SlopeMode::Tangent),
            "paper-squared" | "papersquared" | "squared" => Ok(SlopeMode::PaperSquared),
            _ => Err(Error::Usage(format!("unknown slope mode `{s}`; valid: tangent, paper-squared"))),
        }
    }
}

fn check_c(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::contract(format!("c must satisfy 0 < c < inf, got {c}")));
    }
    Ok(())
}

/// The one-dimensional counterexample profile, without region bookkeeping.
///
/// `log(cx)` on `(0, 2/c]`, then `log 2 + m (x - 2/c)` beyond, with the
/// split half-open so the two pieces never overlap.
pub fn f0_value(c: f64, slope: f64, x: f64) -> Option<f64> {
    if x.is_nan() || x <= 0.0 {
        return None;
    }
    let knee = 2.0 / c;
    Some(if x <= knee {
        (c * x).ln()
    } else {
        std::f64::consts::LN_2 + slope * (x - knee)
    })
}

fn f0_derivative(c: f64, slope: f64, x: f64) -> Option<f64> {
    if x.is_nan() || x <= 0.0 {
        return None;
    }
    Some(if x <= 2.0 / c { 1.0 / x } else { slope })
}

fn f0_declared(c: f64, mode: SlopeMode) -> DeclaredProperties {
    match mode {
        SlopeMode::Tangent => DeclaredProperties {
            h: Some(false),
            sp: Some(true),
            sp_strict: None,
            cc: Some(true),
            cc_strict: Some(false),
            liminf_ok: Some(false),
        },
        // The tail bends upward exactly when (c/2)^2 > c/2.
        SlopeMode::PaperSquared => DeclaredProperties {
            h: Some(false),
            sp: None,
            sp_strict: None,
            cc: Some(c <= 2.0),
            cc_strict: Some(false),
            liminf_ok: Some(false),
        },
    }
}

fn centred_range(c: f64) -> (f64, f64) {
    let knee = 2.0 / c;
    (knee * 1e-3, knee * 1e3)
}

/// The logarithm-then-linear counterexample on `R_+`.
pub fn make_f0(c: f64, slope_mode: SlopeMode) -> Result<ScalarField> {
    check_c(c)?;
    let m = slope_mode.slope(c);
    Ok(ScalarField::new("f0", Region::positive_orthant(1)?, move |x: &[f64]| f0_value(c, m, x[0]))
        .with_gradient(move |x: &[f64]| f0_derivative(c, m, x[0]).map(|d| vec![d]))
        .with_declared(f0_declared(c, slope_mode))
        .with_sampling_range(centred_range(c)))
}

/// `sum_i f0(x_i)` on `R_+^d`, tangent slope.
pub fn make_f0_multi(c: f64, d: usize) -> Result<ScalarField> {
    check_c(c)?;
    if d == 0 {
        return Err(Error::contract("dimension must be at least 1"));
    }
    let m = SlopeMode::Tangent.slope(c);
    Ok(ScalarField::new("f0-multi", Region::positive_orthant(d)?, move |x: &[f64]| {
        x.iter().map(|&xi| f0_value(c, m, xi)).sum()
    })
    .with_gradient(move |x: &[f64]| x.iter().map(|&xi| f0_derivative(c, m, xi)).collect())
    .with_declared(f0_declared(c, SlopeMode::Tangent))
    .with_sampling_range(centred_range(c)))
}

/// Black-hole entropy `pi (2M^2 + 2M sqrt(M^2 - (J/M)^2 - Q^2) - Q^2)` on the
/// physical Kerr-Newman region.
pub fn make_bh_entropy(q: f64) -> Result<ScalarField> {
    let region = Region::kerr_newman(q)?;
    let pi = std::f64::consts::PI;
    let q2 = q * q;
    let radicand = move |m: f64, j: f64| {
        let a = j / m;
        m * m - a * a - q2
    };
    let eval = move |x: &[f64]| {
        let (m, j) = (x[0], x[1]);
        if !(m > 0.0 && j > 0.0) {
            return None;
        }
        let r = radicand(m, j);
        (r > 0.0).then(|| pi * (2.0 * m * m + 2.0 * m * r.sqrt() - q2))
    };
    let grad = move |x: &[f64]| {
        let (m, j) = (x[0], x[1]);
        if !(m > 0.0 && j > 0.0) {
            return None;
        }
        let r = radicand(m, j);
        if r <= 0.0 {
            return None;
        }
        let s = r.sqrt();
        let dr_dm = 2.0 * m + 2.0 * j * j / (m * m * m);
        let dr_dj = -2.0 * j / (m * m);
        Some(vec![pi * (4.0 * m + 2.0 * s + m * dr_dm / s), pi * m * dr_dj / s])
    };
    Ok(ScalarField::new("bekenstein", region, eval)
        .with_gradient(grad)
        .with_declared(DeclaredProperties {
            h: Some(false),
            sp: Some(true),
            sp_strict: Some(true),
            cc: Some(false),
            cc_strict: Some(false),
            // with charge the region stays away from the apex
            liminf_ok: (q == 0.0).then_some(true),
        }))
}

/// Photon-gas entropy `E^(3/4) V^(1/4)` on `R_+ x R_+`.
pub fn make_photon_entropy() -> ScalarField {
    let region = Region::positive_orthant(2).expect("dimension 2 is positive");
    ScalarField::new("photon", region, |x: &[f64]| {
        let (e, v) = (x[0], x[1]);
        // e (v/e)^(1/4) is exact on the diagonal, unlike e^(3/4) v^(1/4)
        (e >= 0.0 && v >= 0.0).then(|| if e == 0.0 { 0.0 } else { e * (v / e).powf(0.25) })
    })
    .with_gradient(|x: &[f64]| {
        let (e, v) = (x[0], x[1]);
        (e > 0.0 && v > 0.0).then(|| vec![0.75 * (v / e).powf(0.25), 0.25 * (e / v).powf(0.75)])
    })
    .with_declared(DeclaredProperties {
        h: Some(true),
        sp: Some(true),
        sp_strict: Some(false),
        cc: Some(true),
        cc_strict: Some(false),
        liminf_ok: Some(true),
    })
}

/// `sum_i c_i x_i` on the positive orthant.
pub fn make_linear(coeffs: Vec<f64>) -> Result<ScalarField> {
    let cone = OrthantCone::positive(coeffs.len())?;
    make_linear_on(coeffs, cone)
}

/// `sum_i c_i x_i` on an arbitrary orthant.
pub fn make_linear_on(coeffs: Vec<f64>, cone: OrthantCone) -> Result<ScalarField> {
    if coeffs.len() != cone.dimension() {
        return Err(Error::DimensionMismatch {
            expected: cone.dimension(),
            got: coeffs.len(),
        });
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::contract("linear coefficients must be finite"));
    }
    let grad = coeffs.clone();
    Ok(ScalarField::new("linear", Region::cone(cone), move |x: &[f64]| {
        Some(coeffs.iter().zip(x).map(|(c, xi)| c * xi).sum())
    })
    .with_gradient(move |_| Some(grad.clone()))
    .with_declared(DeclaredProperties {
        h: Some(true),
        sp: Some(true),
        sp_strict: Some(false),
        cc: Some(true),
        cc_strict: Some(false),
        liminf_ok: Some(true),
    }))
}

/// `phi = 0` on `[0, 1)`, `phi(1) = 1`.
///
/// Convex on the closed interval but discontinuous at 1. Evaluation accepts
/// all of `[0, 1]`; the attached region is the open-cone part `(0, 1]`. The
/// field is flagged as closed-domain and is never used for deduction.
pub fn make_boundary_phi() -> ScalarField {
    let cone = OrthantCone::positive(1).expect("dimension 1 is positive");
    let region = Region::constrained(cone, Constraint::new("unit-interval", |x: &[f64]| x[0] <= 1.0), false);
    let mut f = ScalarField::new("boundary-phi", region, |x: &[f64]| {
        let t = x[0];
        if !(0.0..=1.0).contains(&t) {
            None
        } else if t == 1.0 {
            Some(1.0)
        } else {
            Some(0.0)
        }
    })
    .with_declared(DeclaredProperties {
        h: Some(false),
        cc: Some(false),
        ..Default::default()
    })
    .with_sampling_range((1e-3, 1.0));
    f.open_domain = false;
    f
}

/// Names accepted by [`resolve`].
pub const CATALOG: [&str; 6] = ["f0", "f0-multi", "bekenstein", "photon", "linear", "boundary-phi"];

/// A catalog field by name, with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_mode: Option<SlopeMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
}

impl FieldSpec {
    pub fn named(name: impl Into<String>) -> Self {
        FieldSpec {
            name: name.into(),
            c: None,
            slope_mode: None,
            dim: None,
            q: None,
            coeffs: None,
        }
    }
}

pub fn resolve(spec: &FieldSpec) -> Result<ScalarField> {
    let c = spec.c.unwrap_or(1.0);
    match spec.name.as_str() {
        "f0" => make_f0(c, spec.slope_mode.unwrap_or_default()),
        "f0-multi" => make_f0_multi(c, spec.dim.unwrap_or(2)),
        "bekenstein" => make_bh_entropy(spec.q.unwrap_or(0.0)),
        "photon" => Ok(make_photon_entropy()),
        "linear" => make_linear(spec.coeffs.clone().unwrap_or_else(|| vec![1.0])),
        "boundary-phi" => Ok(make_boundary_phi()),
        other => Err(Error::Usage(format!(
            "unknown field `{other}`; valid: {}",
            CATALOG.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn at(f: &ScalarField, c: &[f64]) -> f64 {
        f.eval(&Point::new(c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn f0_values() {
        let f = make_f0(1.0, SlopeMode::Tangent).unwrap();
        assert_eq!(at(&f, &[1.0]), 0.0);
        assert!((at(&f, &[2.0]) - LN_2).abs() < 1e-15);
        assert!((at(&f, &[4.0]) - (1.0 + LN_2)).abs() < 1e-15);
        assert!((at(&f, &[0.5]) + LN_2).abs() < 1e-15);
    }

    #[test]
    fn f0_rejects_bad_c() {
        assert!(make_f0(0.0, SlopeMode::Tangent).is_err());
        assert!(make_f0(-1.0, SlopeMode::Tangent).is_err());
        assert!(make_f0(f64::INFINITY, SlopeMode::Tangent).is_err());
    }

    #[test]
    fn f0_is_continuous_at_the_knee() {
        for c in [0.5, 1.0, 2.0, 3.0, 17.0] {
            for mode in [SlopeMode::Tangent, SlopeMode::PaperSquared] {
                let f = make_f0(c, mode).unwrap();
                let knee = 2.0 / c;
                let left = at(&f, &[knee]);
                let right = at(&f, &[knee * (1.0 + 1e-15)]);
                assert!((left - LN_2).abs() < 1e-12);
                assert!((right - LN_2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tangent_mode_is_c1_at_the_knee() {
        for c in [0.5, 1.0, 2.0, 3.0] {
            let f = make_f0(c, SlopeMode::Tangent).unwrap();
            let g = |p: &Point| f.try_eval(p);
            let knee = Point::from([2.0 / c]);
            let h = 1e-8 * (2.0 / c).max(1.0);
            let left = crate::numdiff::one_sided(g, &knee, 0, h, -1.0).unwrap();
            let right = crate::numdiff::one_sided(g, &knee, 0, h, 1.0).unwrap();
            assert!((left - c / 2.0).abs() < 1e-6, "c={c} left={left}");
            assert!((right - c / 2.0).abs() < 1e-6, "c={c} right={right}");
        }
    }

    #[test]
    fn paper_squared_has_a_kink_except_at_two() {
        for c in [0.5, 1.0, 3.0] {
            let f = make_f0(c, SlopeMode::PaperSquared).unwrap();
            let g = |p: &Point| f.try_eval(p);
            let knee = Point::from([2.0 / c]);
            let h = 1e-7 * (2.0 / c).max(1.0);
            let left = crate::numdiff::one_sided(g, &knee, 0, h, -1.0).unwrap();
            let right = crate::numdiff::one_sided(g, &knee, 0, h, 1.0).unwrap();
            let jump = (right - left).abs();
            assert!((jump - (c / 2.0 - (c / 2.0).powi(2)).abs()).abs() < 1e-3, "c={c} jump={jump}");
        }
        let t = make_f0(2.0, SlopeMode::Tangent).unwrap();
        let s = make_f0(2.0, SlopeMode::PaperSquared).unwrap();
        for x in [0.1, 1.0, 1.5, 7.0, 300.0] {
            assert_eq!(at(&t, &[x]), at(&s, &[x]));
        }
    }

    #[test]
    fn f0_multi_values() {
        let f = make_f0_multi(1.0, 2).unwrap();
        assert_eq!(at(&f, &[1.0, 1.0]), 0.0);
        assert!((at(&f, &[2.0, 4.0]) - 2.386294).abs() < 1e-6);
        let f3 = make_f0_multi(1.0, 3).unwrap();
        assert_eq!(at(&f3, &[1.0, 1.0, 1.0]), 0.0);
        assert!(make_f0_multi(1.0, 0).is_err());
    }

    #[test]
    fn bekenstein_values() {
        let f = make_bh_entropy(0.0).unwrap();
        let oracle = |m: f64, j: f64| PI * (2.0 * m * m + 2.0 * m * (m * m - (j / m) * (j / m)).sqrt());
        assert!((at(&f, &[1.0, 0.5]) / (PI * (2.0 + 3f64.sqrt())) - 1.0).abs() < 1e-12);
        assert!((at(&f, &[1.0, 0.5]) - 11.724583).abs() < 1e-6);
        assert!((at(&f, &[2.0, 1.0]) / oracle(2.0, 1.0) - 1.0).abs() < 1e-12);
        assert!((at(&f, &[2.0, 1.0]) - 49.467413).abs() < 1e-6);
        assert!((at(&f, &[1.0, 1e-9]) - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn bekenstein_domain_error_exactly_at_and_beyond_the_edge() {
        for q in [0.0, 0.3] {
            let f = make_bh_entropy(q).unwrap();
            for m in [0.5_f64, 1.0, 2.0] {
                // J at the edge: M^2 = (J/M)^2 + Q^2  =>  J = M sqrt(M^2 - Q^2)
                let edge = m * (m * m - q * q).sqrt();
                for j in [edge, edge * 1.01, edge * 3.0] {
                    let p = Point::from([m, j]);
                    assert!(matches!(f.eval(&p), Err(Error::Domain { .. })), "q={q} m={m} j={j}");
                }
                assert!(f.eval(&Point::from([m, edge * 0.99])).is_ok());
            }
        }
    }

    #[test]
    fn photon_values() {
        let f = make_photon_entropy();
        assert!((at(&f, &[1.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!((at(&f, &[16.0, 1.0]) - 8.0).abs() < 1e-12);
        assert!((at(&f, &[1.0, 16.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn linear_values() {
        assert_eq!(at(&make_linear(vec![3.0]).unwrap(), &[2.0]), 6.0);
        assert_eq!(at(&make_linear(vec![1.0, 2.0]).unwrap(), &[1.0, 1.0]), 3.0);
        assert_eq!(at(&make_linear(vec![0.0]).unwrap(), &[123.0]), 0.0);
        assert!(make_linear(vec![]).is_err());
    }

    #[test]
    fn boundary_phi_values() {
        let f = make_boundary_phi();
        assert_eq!(at(&f, &[0.5]), 0.0);
        assert_eq!(at(&f, &[1.0]), 1.0);
        assert_eq!(at(&f, &[0.0]), 0.0);
        assert!(f.eval(&Point::from([1.5])).is_err());
        assert!(f.eval(&Point::from([-0.1])).is_err());
        assert!(!f.has_open_domain());
    }

    #[test]
    fn eval_rejects_wrong_dimension() {
        let f = make_photon_entropy();
        assert!(matches!(
            f.eval(&Point::from([1.0])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn negation_flips_values_and_gradient() {
        let f = make_photon_entropy();
        let g = f.negated();
        let p = Point::from([16.0, 1.0]);
        assert_eq!(g.eval(&p).unwrap(), -f.eval(&p).unwrap());
        let gf = f.gradient(&p).unwrap().unwrap();
        let gg = g.gradient(&p).unwrap().unwrap();
        assert_eq!(gg, gf.iter().map(|v| -v).collect::<Vec<_>>());
    }

    #[test]
    fn resolve_catalog_names() {
        for name in CATALOG {
            assert_eq!(resolve(&FieldSpec::named(name)).unwrap().name(), name);
        }
        assert!(matches!(resolve(&FieldSpec::named("nope")), Err(Error::Usage(_))));
    }
}
