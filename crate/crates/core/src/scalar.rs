//! Exact rational scalars.
//!
//! Values are `BigRational`, which is always kept in lowest terms with a
//! positive denominator. The text form is `p/q`, or `p` for integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> ExactScalar {
    ExactScalar::zero()
}

pub fn one() -> ExactScalar {
    ExactScalar::one()
}

pub fn factorial(n: usize) -> ExactScalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn to_text(x: &ExactScalar) -> String {
    x.to_string()
}

pub fn parse(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let bad = || Error::Serde(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(x: &ExactScalar) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer();
    i64::try_from(n).ok()
}

pub fn sign_of(x: &ExactScalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pm_one(negative: bool) -> ExactScalar {
    if negative {
        -one()
    } else {
        one()
    }
}

/// Serde adapter writing scalars as `"p/q"` strings.
pub mod text {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<ExactScalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod text_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        xs: &[ExactScalar],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(to_text).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<ExactScalar>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for (p, q) in [(1, 2), (-3, 4), (6, 3), (0, 5), (-1, 720)] {
            let x = frac(p, q);
            assert_eq!(parse(&to_text(&x)).unwrap(), x);
        }
        assert_eq!(to_text(&frac(-2, 4)), "-1/2");
        assert_eq!(to_text(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(factorial(6), int(720));
    }
}
