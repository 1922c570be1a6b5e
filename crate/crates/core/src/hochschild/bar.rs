use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyalg::{wedge, Exponent, ExteriorElement, ExteriorKind, LaurentPoly};
use crate::scalar::{self, ExactScalar};

/// One generator `x^left [x^{s_1} | .. | x^{s_i}] x^right` of the reduced bar
/// resolution.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarKey {
    pub left: Exponent,
    pub slots: Vec<Exponent>,
    pub right: Exponent,
}

/// A formal sum of bar generators of one tensor length over `k[x_1..x_n]`.
///
/// In resolution form the outer coefficient lives in `A (x) A` (left and
/// right monomials). After tensoring down with `A` the right monomial is
/// always trivial and the left one is the coefficient `a_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarChain {
    nvars: usize,
    length: usize,
    terms: BTreeMap<BarKey, ExactScalar>,
}

pub(crate) fn add_exp(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn is_constant(e: &[i64]) -> bool {
    e.iter().all(|&x| x == 0)
}

fn check_monomial(nvars: usize, e: &[i64]) -> Result<()> {
    if e.len() != nvars {
        return Err(Error::ContextMismatch(format!(
            "exponent {e:?} in {nvars} variables"
        )));
    }
    if e.iter().any(|&x| x < 0) {
        return Err(Error::DomainViolation(format!(
            "{e:?} is not a polynomial exponent"
        )));
    }
    Ok(())
}

impl BarChain {
    pub fn zero(nvars: usize, length: usize) -> Self {
        Self {
            nvars,
            length,
            terms: BTreeMap::new(),
        }
    }

    /// `c * x^left [slots] x^right`. A constant slot gives zero (reduced complex).
    pub fn generator(
        left: Exponent,
        slots: Vec<Exponent>,
        right: Exponent,
        c: ExactScalar,
    ) -> Result<Self> {
        let nvars = left.len();
        check_monomial(nvars, &left)?;
        check_monomial(nvars, &right)?;
        for s in &slots {
            check_monomial(nvars, s)?;
        }
        let mut out = Self::zero(nvars, slots.len());
        if slots.iter().all(|s| !is_constant(s)) {
            out.add_term(BarKey { left, slots, right }, c);
        }
        Ok(out)
    }

    /// `a_0 (a_1 (x) .. (x) a_i)` with monomials `a_0 = x^coefficient`.
    pub fn hochschild(coefficient: Exponent, slots: Vec<Exponent>, c: ExactScalar) -> Result<Self> {
        let right = vec![0; coefficient.len()];
        Self::generator(coefficient, slots, right, c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn terms(&self) -> &BTreeMap<BarKey, ExactScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: BarKey, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(key.clone())
            .or_insert_with(ExactScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.length != other.length {
            return Err(Error::DegreeMismatch(format!(
                "bar chains of length {} and {} in {} and {} variables",
                self.length, other.length, self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.nvars, self.length);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    /// Total polynomial degree when all terms share one, `None` otherwise
    /// (and for the zero chain).
    pub fn internal_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|k| {
            k.left.iter().sum::<i64>()
                + k.right.iter().sum::<i64>()
                + k.slots.iter().flatten().sum::<i64>()
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Tensors down to `A (x)_{A (x) A} A`: the right coefficient moves to the left.
    pub fn collapse(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.length);
        for (k, c) in &self.terms {
            let key = BarKey {
                left: add_exp(&k.left, &k.right),
                slots: k.slots.clone(),
                right: vec![0; self.nvars],
            };
            out.add_term(key, c.clone());
        }
        out
    }
}

impl fmt::Display for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mono = |e: &Exponent| LaurentPoly::monomial(e.clone(), scalar::one()).to_string();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.slots.iter().map(mono).collect();
                let right = if is_constant(&k.right) {
                    String::new()
                } else {
                    mono(&k.right)
                };
                format!("{c}*{}[{}]{right}", mono(&k.left), slots.join("|"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The bar differential
/// `d[a_1|..|a_i] = a_1[a_2|..] + sum_j (-1)^j [..|a_j a_{j+1}|..] + (-1)^i [..|a_{i-1}] a_i`.
pub fn bar_differential(c: &BarChain) -> Result<BarChain> {
    let i = c.length;
    if i == 0 {
        return Err(Error::DegreeMismatch(
            "the bar differential needs tensor length at least 1".into(),
        ));
    }
    let mut out = BarChain::zero(c.nvars, i - 1);
    for (k, x) in &c.terms {
        let s = &k.slots;
        out.add_term(
            BarKey {
                left: add_exp(&k.left, &s[0]),
                slots: s[1..].to_vec(),
                right: k.right.clone(),
            },
            x.clone(),
        );
        for j in 1..i {
            let mut slots = s[..j - 1].to_vec();
            slots.push(add_exp(&s[j - 1], &s[j]));
            slots.extend_from_slice(&s[j + 1..]);
            let key = BarKey {
                left: k.left.clone(),
                slots,
                right: k.right.clone(),
            };
            out.add_term(key, x * scalar::pm_one(j % 2 == 1));
        }
        let key = BarKey {
            left: k.left.clone(),
            slots: s[..i - 1].to_vec(),
            right: add_exp(&k.right, &s[i - 1]),
        };
        out.add_term(key, x * scalar::pm_one(i % 2 == 1));
    }
    Ok(out)
}

/// The Hochschild boundary on `A (x) Abar^{(x) i}`.
pub fn hochschild_boundary(c: &BarChain) -> Result<BarChain> {
    Ok(bar_differential(&c.collapse())?.collapse())
}

/// `d(x^e)` as a 1-form.
pub(crate) fn exterior_d(e: &[i64]) -> ExteriorElement {
    let n = e.len();
    let mut out = ExteriorElement::zero(ExteriorKind::Form, n, n);
    for j in 0..n {
        if e[j] > 0 {
            let mut e2 = e.to_vec();
            e2[j] -= 1;
            out.add_component(vec![j], LaurentPoly::monomial(e2, scalar::int(e[j])));
        }
    }
    out
}

/// `a_0 (a_1 (x) .. (x) a_i) -> a_0 da_1 ^ .. ^ da_i`.
pub fn hkr_chain(c: &BarChain) -> Result<ExteriorElement> {
    let n = c.nvars;
    let mut out = ExteriorElement::zero(ExteriorKind::Form, n, n);
    for (k, x) in &c.collapse().terms {
        let mut acc = ExteriorElement::scalar(
            ExteriorKind::Form,
            n,
            LaurentPoly::monomial(k.left.clone(), x.clone()),
        );
        for s in &k.slots {
            acc = wedge(&acc, &exterior_d(s))?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> Exponent {
        v.to_vec()
    }

    #[test]
    fn differential_of_two_slots() {
        // d[x|y] = x[y] - [xy] + [x]y
        let c = BarChain::generator(
            e(&[0, 0]),
            vec![e(&[1, 0]), e(&[0, 1])],
            e(&[0, 0]),
            scalar::one(),
        )
        .unwrap();
        let d = bar_differential(&c).unwrap();
        let mut want =
            BarChain::generator(e(&[1, 0]), vec![e(&[0, 1])], e(&[0, 0]), scalar::one()).unwrap();
        want = want
            .sub(
                &BarChain::generator(e(&[0, 0]), vec![e(&[1, 1])], e(&[0, 0]), scalar::one())
                    .unwrap(),
            )
            .unwrap();
        want = want
            .add(
                &BarChain::generator(e(&[0, 0]), vec![e(&[1, 0])], e(&[0, 1]), scalar::one())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn differential_of_one_slot() {
        let c = BarChain::generator(e(&[0]), vec![e(&[1])], e(&[0]), scalar::one()).unwrap();
        let d = bar_differential(&c).unwrap();
        assert_eq!(d.terms().len(), 2);
        assert!(bar_differential(&d).is_err());
        assert!(d.collapse().is_zero());
    }

    #[test]
    fn constant_slot_is_zero() {
        let c = BarChain::hochschild(e(&[1]), vec![e(&[0])], scalar::one()).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn hkr_chain_examples() {
        let c = BarChain::hochschild(e(&[1, 0]), vec![e(&[0, 1])], scalar::one()).unwrap();
        let w = hkr_chain(&c).unwrap();
        assert_eq!(
            w.component(&[1]),
            LaurentPoly::monomial(e(&[1, 0]), scalar::one())
        );
        let c = BarChain::hochschild(e(&[0]), vec![e(&[1]), e(&[1])], scalar::one()).unwrap();
        assert!(hkr_chain(&c).unwrap().is_zero());
    }
}
