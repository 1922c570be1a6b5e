//! Truncated univariate power series over exact rationals.
//!
//! A series of order `N` stores the coefficients of `z^0 .. z^N`. Binary
//! operations truncate to the smaller order of their arguments.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSeries {
    #[serde(with = "scalar::text_vec")]
    coefficients: Vec<ExactScalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Mul,
    Div,
    Exp,
    Log,
    Compose,
}

impl FormalSeries {
    /// Builds a series of order `order`, padding or truncating `coefficients`.
    pub fn new(mut coefficients: Vec<ExactScalar>, order: usize) -> Self {
        coefficients.resize(order + 1, ExactScalar::zero());
        Self { coefficients }
    }

    pub fn from_ints(coefficients: &[i64], order: usize) -> Self {
        Self::new(
            coefficients.iter().map(|&c| scalar::int(c)).collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![ExactScalar::one()], order)
    }

    /// The series `z` (zero when `order == 0`).
    pub fn variable(order: usize) -> Self {
        Self::new(vec![ExactScalar::zero(), ExactScalar::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coefficients
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coefficients[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect(), n)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![ExactScalar::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coefficients: out }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let b0 = other.coeff(0);
        if b0.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let inv0 = ExactScalar::one() / &b0;
        let mut q: Vec<ExactScalar> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeff(k);
            for j in 1..=k {
                acc -= other.coeff(j) * &q[k - j];
            }
            q.push(acc * &inv0);
        }
        Ok(Self { coefficients: q })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::DomainViolation(
                "exp needs a zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut b = vec![ExactScalar::one()];
        for m in 1..=n {
            let mut acc = ExactScalar::zero();
            for k in 1..=m {
                acc += scalar::int(k as i64) * self.coeff(k) * &b[m - k];
            }
            b.push(acc / scalar::int(m as i64));
        }
        Ok(Self { coefficients: b })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::DomainViolation("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut b = vec![ExactScalar::zero()];
        for m in 1..=n {
            let mut acc = scalar::int(m as i64) * self.coeff(m);
            for k in 1..m {
                acc -= scalar::int(k as i64) * &b[k] * self.coeff(m - k);
            }
            b.push(acc / scalar::int(m as i64));
        }
        Ok(Self { coefficients: b })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::DomainViolation(
                "compose needs inner constant term 0".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for k in (0..=n).rev() {
            acc = acc.mul(&inner);
            acc.coefficients[0] += self.coeff(k);
        }
        Ok(acc)
    }
}

pub fn series_arith(
    op: SeriesOp,
    a: &FormalSeries,
    b: Option<&FormalSeries>,
) -> Result<FormalSeries> {
    let need_b = || b.ok_or_else(|| Error::DomainViolation(format!("{op:?} needs two operands")));
    match op {
        SeriesOp::Mul => Ok(a.mul(need_b()?)),
        SeriesOp::Div => a.div(need_b()?),
        SeriesOp::Exp => a.exp(),
        SeriesOp::Log => a.log(),
        SeriesOp::Compose => a.compose(need_b()?),
    }
}

/// `(e^z - 1)/z` truncated at `order`.
fn exp_quotient(order: usize) -> FormalSeries {
    let mut c = Vec::with_capacity(order + 1);
    for k in 0..=order {
        c.push(ExactScalar::one() / scalar::factorial(k + 1));
    }
    FormalSeries::new(c, order)
}

/// The series `z/(e^z - 1)` of order `order`.
pub fn l_series(order: usize) -> FormalSeries {
    FormalSeries::one(order)
        .div(&exp_quotient(order))
        .expect("constant term of (e^z-1)/z is 1")
}

/// The series `log(z/(e^z - 1))` of order `order`.
pub fn t_series(order: usize) -> FormalSeries {
    l_series(order)
        .log()
        .expect("z/(e^z-1) has constant term 1")
}

/// `[l_0, .., l_N]`, the coefficients of `z/(e^z - 1)`.
pub fn l_coefficients(order: usize) -> Vec<ExactScalar> {
    l_series(order).coefficients
}

/// `[t_1, .., t_N]`, the coefficients of `log(z/(e^z - 1))`; `t_0 = 0` is omitted.
pub fn t_coefficients(order: usize) -> Vec<ExactScalar> {
    if order == 0 {
        return Vec::new();
    }
    t_series(order).coefficients[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    /// Bernoulli numbers from `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
    fn bernoulli(n: usize) -> Vec<ExactScalar> {
        let mut b = vec![int(1)];
        for m in 1..=n {
            let mut acc = ExactScalar::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += int(scalar::binomial(m as i64 + 1, k as i64)) * bk;
            }
            b.push(-acc / int(m as i64 + 1));
        }
        b
    }

    fn to_f64(x: &ExactScalar) -> f64 {
        use num_traits::ToPrimitive;
        x.to_f64().unwrap()
    }

    #[test]
    fn mul_and_div_examples() {
        let a = FormalSeries::from_ints(&[1, 1], 2);
        let b = FormalSeries::from_ints(&[1, -1], 2);
        assert_eq!(a.mul(&b), FormalSeries::from_ints(&[1, 0, -1], 2));
        let geo = FormalSeries::one(3)
            .div(&FormalSeries::from_ints(&[1, -1], 3))
            .unwrap();
        assert_eq!(geo, FormalSeries::from_ints(&[1, 1, 1, 1], 3));
    }

    #[test]
    fn exp_of_log_one_plus_z() {
        let a = FormalSeries::from_ints(&[1, 1], 5);
        let back = a.log().unwrap().exp().unwrap();
        assert_eq!(back, a);
        // log(1+z) = z - z^2/2 + z^3/3 - ...
        let l = a.log().unwrap();
        assert_eq!(l.coeff(3), frac(1, 3));
        assert_eq!(l.coeff(4), frac(-1, 4));
    }

    #[test]
    fn domain_errors() {
        let a = FormalSeries::from_ints(&[2, 1], 3);
        assert!(matches!(a.log(), Err(Error::DomainViolation(_))));
        assert!(matches!(a.exp(), Err(Error::DomainViolation(_))));
        assert_eq!(
            FormalSeries::one(3).div(&FormalSeries::variable(3)),
            Err(Error::NonInvertibleConstantTerm)
        );
        assert!(a.compose(&a).is_err());
        assert!(series_arith(SeriesOp::Mul, &a, None).is_err());
    }

    #[test]
    fn mismatched_orders_use_minimum() {
        let a = FormalSeries::from_ints(&[1, 2, 3, 4], 3);
        let b = FormalSeries::from_ints(&[1, 1], 1);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b), FormalSeries::from_ints(&[2, 3], 1));
    }

    #[test]
    fn compose_geometric_with_z_squared() {
        // 1/(1-w) at w = z^2
        let geo = FormalSeries::one(4)
            .div(&FormalSeries::from_ints(&[1, -1], 4))
            .unwrap();
        let inner = FormalSeries::from_ints(&[0, 0, 1], 4);
        assert_eq!(
            geo.compose(&inner).unwrap(),
            FormalSeries::from_ints(&[1, 0, 1, 0, 1], 4)
        );
    }

    #[test]
    fn l_coefficient_examples() {
        assert_eq!(l_coefficients(0), vec![int(1)]);
        assert_eq!(
            l_coefficients(4),
            vec![int(1), frac(-1, 2), frac(1, 12), int(0), frac(-1, 720)]
        );
        assert_eq!(l_coefficients(6)[6], frac(1, 30240));
    }

    #[test]
    fn l_matches_bernoulli_recurrence() {
        for n in 0..=12 {
            let b = bernoulli(n);
            let expected: Vec<_> = b
                .iter()
                .enumerate()
                .map(|(k, bk)| bk / scalar::factorial(k))
                .collect();
            assert_eq!(l_coefficients(n), expected, "order {n}");
        }
    }

    #[test]
    fn t_coefficient_examples() {
        assert_eq!(t_coefficients(1), vec![frac(-1, 2)]);
        assert_eq!(
            t_coefficients(4),
            vec![frac(-1, 2), frac(-1, 24), int(0), frac(1, 2880)]
        );
    }

    #[test]
    fn t_numeric_cross_check() {
        let z = 0.1f64;
        let exact = (z / (z.exp() - 1.0)).ln();
        let t = t_coefficients(12);
        let approx: f64 = t
            .iter()
            .enumerate()
            .map(|(i, c)| to_f64(c) * z.powi(i as i32 + 1))
            .sum();
        assert!((exact - approx).abs() < 1e-14, "{exact} vs {approx}");
    }

    #[test]
    fn t_exponentiates_back() {
        let n = 8;
        let mut c = vec![ExactScalar::zero()];
        c.extend(t_coefficients(n));
        let t = FormalSeries::new(c, n);
        let prod = t.exp().unwrap().mul(&exp_quotient(n));
        assert_eq!(prod, FormalSeries::one(n));
    }

    #[test]
    fn odd_coefficients_vanish() {
        let l = l_coefficients(9);
        for k in [3, 5, 7, 9] {
            assert!(l[k].is_zero());
        }
        let t = t_coefficients(7);
        assert!(t[2].is_zero() && t[4].is_zero() && t[6].is_zero());
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(cs in proptest::collection::vec(-5i64..=5, 1..7)) {
            let mut c = vec![1i64];
            c.extend(cs);
            let n = c.len() - 1;
            let a = FormalSeries::from_ints(&c, n);
            prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
        }

        #[test]
        fn div_inverts_mul(a in proptest::collection::vec(-4i64..=4, 4), b in proptest::collection::vec(-4i64..=4, 3)) {
            let mut bb = vec![1i64];
            bb.extend(b);
            let a = FormalSeries::from_ints(&a, 3);
            let b = FormalSeries::from_ints(&bb, 3);
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        }
    }
}
