//! Central finite differences with relative per-coordinate steps.
//!
//! The step along coordinate `i` is `rel * |x_i|` (or `rel` at zero). Every
//! stencil evaluation goes through a closure returning `None` outside the
//! domain, and a derivative is reported only when its whole stencil is
//! defined.

use crate::domain::Point;

/// Default relative step for first derivatives (about `eps^(1/3)`).
pub const FIRST_DERIVATIVE_STEP: f64 = 1e-5;
/// Default relative step for second derivatives (about `eps^(1/4)`).
pub const SECOND_DERIVATIVE_STEP: f64 = 1e-4;

pub fn step_for(x: f64, rel: f64) -> f64 {
    if x == 0.0 {
        rel
    } else {
        rel * x.abs()
    }
}

fn shifted(p: &Point, i: usize, h: f64) -> Point {
    p.with_coord(i, p.coords()[i] + h)
}

pub fn first<F>(f: F, p: &Point, i: usize, rel: f64) -> Option<f64>
where
    F: Fn(&Point) -> Option<f64>,
{
    let h = step_for(p.coords()[i], rel);
    let fp = f(&shifted(p, i, h))?;
    let fm = f(&shifted(p, i, -h))?;
    Some((fp - fm) / (2.0 * h))
}

/// One-sided first difference; `direction` is `+1.0` or `-1.0`.
pub fn one_sided(f: impl Fn(&Point) -> Option<f64>, p: &Point, i: usize, h: f64, direction: f64) -> Option<f64> {
    let f0 = f(p)?;
    let f1 = f(&shifted(p, i, direction * h))?;
    Some((f1 - f0) / (direction * h))
}

/// Second derivative along `i`, with a rounding-noise bound for the value.
pub fn second<F>(f: F, p: &Point, i: usize, rel: f64) -> Option<(f64, f64)>
where
    F: Fn(&Point) -> Option<f64>,
{
    let h = step_for(p.coords()[i], rel);
    let f0 = f(p)?;
    let fp = f(&shifted(p, i, h))?;
    let fm = f(&shifted(p, i, -h))?;
    let value = (fp - 2.0 * f0 + fm) / (h * h);
    let mag = f0.abs().max(fp.abs()).max(fm.abs());
    Some((value, rounding_noise(mag, h * h)))
}

/// Mixed partial `d^2 f / dx_i dx_j` from the four-point stencil.
pub fn mixed<F>(f: F, p: &Point, i: usize, j: usize, rel: f64) -> Option<(f64, f64)>
where
    F: Fn(&Point) -> Option<f64>,
{
    let hi = step_for(p.coords()[i], rel);
    let hj = step_for(p.coords()[j], rel);
    let at = |si: f64, sj: f64| f(&shifted(&shifted(p, i, si * hi), j, sj * hj));
    let fpp = at(1.0, 1.0)?;
    let fpm = at(1.0, -1.0)?;
    let fmp = at(-1.0, 1.0)?;
    let fmm = at(-1.0, -1.0)?;
    let value = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
    let mag = fpp.abs().max(fpm.abs()).max(fmp.abs()).max(fmm.abs());
    Some((value, rounding_noise(mag, hi * hj)))
}

/// Generous bound on cancellation error for a stencil of a few terms.
fn rounding_noise(magnitude: f64, denom: f64) -> f64 {
    16.0 * f64::EPSILON * magnitude.max(f64::MIN_POSITIVE) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(p: &Point) -> Option<f64> {
        let x = p.coords()[0];
        Some(x * x * x)
    }

    #[test]
    fn derivatives_of_a_cubic() {
        let p = Point::from([2.0]);
        let d1 = first(cubic, &p, 0, FIRST_DERIVATIVE_STEP).unwrap();
        assert!((d1 - 12.0).abs() < 1e-8);
        let (d2, noise) = second(cubic, &p, 0, SECOND_DERIVATIVE_STEP).unwrap();
        assert!((d2 - 12.0).abs() < 1e-5, "{d2}");
        assert!(noise < 1e-5);
    }

    #[test]
    fn mixed_partial_of_product() {
        let f = |p: &Point| Some(p.coords()[0] * p.coords()[1] * p.coords()[1]);
        let p = Point::from([1.5, 2.0]);
        let (m, _) = mixed(f, &p, 0, 1, SECOND_DERIVATIVE_STEP).unwrap();
        assert!((m - 4.0).abs() < 1e-6);
    }

    #[test]
    fn stencil_outside_domain_gives_none() {
        let f = |p: &Point| (p.coords()[0] > 1.0).then(|| p.coords()[0].ln());
        assert!(second(f, &Point::from([1.0]), 0, 1e-4).is_none());
    }

    #[test]
    fn one_sided_slopes() {
        let f = |p: &Point| Some(p.coords()[0].abs());
        let p = Point::from([0.0]);
        assert!((one_sided(f, &p, 0, 1e-6, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((one_sided(f, &p, 0, 1e-6, -1.0).unwrap() + 1.0).abs() < 1e-12);
    }
}
