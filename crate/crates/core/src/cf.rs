//! Continued-fraction convergents with exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Expansion stops once a denominator would exceed this bound.
pub const MAX_DENOMINATOR: u64 = 100_000_000;

/// `p/q`, the `k`-th truncation of the expansion (`k = 0` is `a_0 / 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub k: usize,
    #[serde(with = "bigint_text")]
    pub p: BigInt,
    #[serde(with = "bigint_text")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> f64 {
        match (self.p.to_f64(), self.q.to_f64()) {
            (Some(p), Some(q)) => p / q,
            _ => f64::NAN,
        }
    }
}

mod bigint_text {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The exact value of a positive finite double as `num / den`.
fn exact_ratio(x: f64) -> (BigInt, BigInt) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exponent) = if biased == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), biased - 1075)
    };
    let m = BigInt::from(mantissa);
    if exponent >= 0 {
        (m << exponent as usize, BigInt::one())
    } else {
        (m, BigInt::one() << (-exponent) as usize)
    }
}

/// Up to `k_max` convergents of `lambda`.
///
/// The expansion is that of the double-precision value itself, so it
/// terminates when the remainder is exactly zero. It is also cut before the
/// first denominator above [`MAX_DENOMINATOR`].
pub fn convergents(lambda: f64, k_max: usize) -> Result<Vec<Convergent>> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::contract(format!("lambda must be positive and finite, got {lambda}")));
    }
    if k_max == 0 {
        return Err(Error::contract("k_max must be at least 1"));
    }
    let cap = BigInt::from(MAX_DENOMINATOR);
    let (mut num, mut den) = exact_ratio(lambda);
    // p_{-2}, p_{-1} and q_{-2}, q_{-1}
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::new();
    while out.len() < k_max && !den.is_zero() {
        let (a, rem) = num.div_rem(&den);
        let p = &a * &p1 + &p0;
        let q = &a * &q1 + &q0;
        if q > cap {
            break;
        }
        out.push(Convergent {
            k: out.len(),
            p: p.clone(),
            q: q.clone(),
        });
        (p0, p1) = (p1, p);
        (q0, q1) = (q1, q);
        (num, den) = (den, rem);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(cs: &[Convergent]) -> Vec<(i64, i64)> {
        cs.iter().map(|c| (c.p.to_i64().unwrap(), c.q.to_i64().unwrap())).collect()
    }

    #[test]
    fn sqrt2_starts_with_the_pell_fractions() {
        let cs = convergents(2f64.sqrt(), 5).unwrap();
        assert_eq!(pairs(&cs), vec![(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]);
    }

    #[test]
    fn integers_and_short_fractions_terminate() {
        assert_eq!(pairs(&convergents(2.0, 10).unwrap()), vec![(2, 1)]);
        let cs = convergents(0.5, 10).unwrap();
        assert_eq!(pairs(&cs), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn exact_ratio_is_exact() {
        let (n, d) = exact_ratio(0.1);
        // 0.1 is stored as 0x1.999999999999ap-4
        assert_eq!(d, BigInt::one() << 56usize);
        assert_eq!(n, BigInt::from(0x1999999999999au64));
        let (n, d) = exact_ratio(6.0);
        assert_eq!(n, BigInt::from(6) * d);
    }

    #[test]
    fn denominators_are_capped() {
        let cs = convergents(std::f64::consts::PI, 100).unwrap();
        assert!(cs.iter().all(|c| c.q <= BigInt::from(MAX_DENOMINATOR)));
        assert_eq!(pairs(&cs[..4]), vec![(3, 1), (22, 7), (333, 106), (355, 113)]);
    }

    #[test]
    fn bad_input_is_a_contract_error() {
        assert!(convergents(0.0, 3).is_err());
        assert!(convergents(-1.0, 3).is_err());
        assert!(convergents(f64::NAN, 3).is_err());
        assert!(convergents(1.5, 0).is_err());
    }

    #[test]
    fn convergents_serialize_as_text() {
        let c = &convergents(1.5, 2).unwrap()[1];
        let s = serde_json::to_string(c).unwrap();
        assert_eq!(s, r#"{"k":1,"p":"3","q":"2"}"#);
        assert_eq!(&serde_json::from_str::<Convergent>(&s).unwrap(), c);
    }
}
