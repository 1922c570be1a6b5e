use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hochschild::bar::{add_exp, is_constant, BarChain, BarKey};
use crate::hochschild::koszul::permutations;
use crate::hochschild::{monomials_up_to, slot_tuples};
use crate::polyalg::sparse::{self, SparseVec};
use crate::polyalg::{sort_sign, Exponent, ExteriorElement, ExteriorKind, LaurentPoly};
use crate::scalar::{self, ExactScalar};

/// A reduced Hochschild cochain `Abar^{(x) i} -> A`, stored by its values on
/// all tuples of nonconstant monomials of total degree at most `cap`.
///
/// Truncating by total input degree is compatible with the differential, so
/// the truncated cochains form a quotient complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildCochain {
    nvars: usize,
    degree: usize,
    cap: i64,
    values: BTreeMap<Vec<Exponent>, LaurentPoly>,
}

impl HochschildCochain {
    pub fn zero(nvars: usize, degree: usize, cap: i64) -> Self {
        Self {
            nvars,
            degree,
            cap,
            values: BTreeMap::new(),
        }
    }

    /// Tabulates `f` on every tuple within the cap.
    pub fn from_fn(
        nvars: usize,
        degree: usize,
        cap: i64,
        f: impl Fn(&[Exponent]) -> LaurentPoly,
    ) -> Self {
        let mut out = Self::zero(nvars, degree, cap);
        for t in slot_tuples(nvars, degree, cap) {
            let v = f(&t);
            if !v.is_zero() {
                out.values.insert(t, v);
            }
        }
        out
    }

    /// The degree-0 cochain given by an element of `A`.
    pub fn function(p: &LaurentPoly, cap: i64) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::DomainViolation(format!("{p} is not a polynomial")));
        }
        Ok(Self::from_fn(p.nvars(), 0, cap, |_| p.clone()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn values(&self) -> &BTreeMap<Vec<Exponent>, LaurentPoly> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `f(x^{t_1} (x) .. (x) x^{t_i})`.
    pub fn eval(&self, tuple: &[Exponent]) -> Result<LaurentPoly> {
        if tuple.len() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} arguments for a cochain of degree {}",
                tuple.len(),
                self.degree
            )));
        }
        if tuple.iter().any(|t| is_constant(t)) {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let total: i64 = tuple.iter().flatten().sum();
        if total > self.cap {
            return Err(Error::RankExceeded(format!(
                "input degree {total} is above the cap {}",
                self.cap
            )));
        }
        Ok(self
            .values
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.nvars)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree || self.cap != other.cap {
            return Err(Error::DegreeMismatch("cochains of different shape".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, v) in &other.values {
            let s = &out.eval(t)? + v;
            if s.is_zero() {
                out.values.remove(t);
            } else {
                out.values.insert(t.clone(), s);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.nvars, self.degree, self.cap);
        if !c.is_zero() {
            out.values = self
                .values
                .iter()
                .map(|(t, v)| (t.clone(), v.scale(c)))
                .collect();
        }
        out
    }

    /// The same cochain with a lower cap.
    pub fn truncate(&self, cap: i64) -> Result<Self> {
        if cap > self.cap {
            return Err(Error::RankExceeded(format!(
                "cannot raise the cap from {} to {cap}",
                self.cap
            )));
        }
        let values = self
            .values
            .iter()
            .filter(|(t, _)| t.iter().flatten().sum::<i64>() <= cap);
        Ok(Self {
            nvars: self.nvars,
            degree: self.degree,
            cap,
            values: values.map(|(t, v)| (t.clone(), v.clone())).collect(),
        })
    }

    /// `(df)(a_1..a_{i+1}) = a_1 f(a_2..) + sum_j (-1)^j f(..a_j a_{j+1}..) + (-1)^{i+1} f(..a_i) a_{i+1}`,
    /// which is `f o d` for the bar differential.
    pub fn differential(&self) -> Self {
        let i = self.degree;
        let n = self.nvars;
        HochschildCochain::from_fn(n, i + 1, self.cap, |t| {
            let mono = |e: &Exponent| LaurentPoly::monomial(e.clone(), scalar::one());
            let ev = |s: &[Exponent]| self.eval(s).expect("within the cap");
            let mut acc = &mono(&t[0]) * &ev(&t[1..]);
            for j in 1..=i {
                let mut s = t[..j - 1].to_vec();
                s.push(add_exp(&t[j - 1], &t[j]));
                s.extend_from_slice(&t[j + 1..]);
                let v = ev(&s);
                acc = if j % 2 == 1 { &acc - &v } else { &acc + &v };
            }
            let last = &ev(&t[..i]) * &mono(&t[i]);
            if (i + 1) % 2 == 1 {
                &acc - &last
            } else {
                &acc + &last
            }
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// A cochain `g` with `dg = self`, or `None` when there is none within the cap.
    pub fn coboundary_preimage(&self) -> Result<Option<HochschildCochain>> {
        if self.degree == 0 {
            return Ok(self.is_zero().then(|| self.clone()));
        }
        let weights: Vec<Exponent> = self.weights();
        let mut coords = Coordinates::default();
        let target = coords.vector(self);
        let src: Vec<(Vec<Exponent>, Exponent)> = weights
            .iter()
            .flat_map(|w| weight_basis(self.nvars, self.degree - 1, self.cap, w))
            .collect();
        let columns: Vec<SparseVec> = src
            .iter()
            .map(|(t, out)| {
                let g = basis_cochain(self.nvars, self.cap, t, out);
                coords.vector(&g.differential())
            })
            .collect();
        let Some(x) = sparse::solve(&columns, &target) else {
            return Ok(None);
        };
        let mut g = HochschildCochain::zero(self.nvars, self.degree - 1, self.cap);
        for (j, c) in x {
            let (t, out) = &src[j];
            g = g.add(&basis_cochain(self.nvars, self.cap, t, out).scale(&c))?;
        }
        Ok(Some(g))
    }

    pub fn is_coboundary(&self) -> Result<bool> {
        Ok(self.coboundary_preimage()?.is_some())
    }

    /// Weights `output - input` that occur.
    pub fn weights(&self) -> Vec<Exponent> {
        let mut out: Vec<Exponent> = Vec::new();
        for (t, v) in &self.values {
            let input = t.iter().fold(vec![0; self.nvars], |a, e| add_exp(&a, e));
            for (e, _) in v.terms() {
                let w: Exponent = e.iter().zip(&input).map(|(a, b)| a - b).collect();
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }
}

/// Interns `(tuple, output monomial)` pairs as vector coordinates.
#[derive(Default)]
struct Coordinates {
    index: HashMap<(Vec<Exponent>, Exponent), usize>,
}

impl Coordinates {
    fn vector(&mut self, f: &HochschildCochain) -> SparseVec {
        let mut v = SparseVec::new();
        for (t, p) in &f.values {
            for (e, c) in p.terms() {
                let n = self.index.len();
                let k = *self.index.entry((t.clone(), e.clone())).or_insert(n);
                v.insert(k, c.clone());
            }
        }
        v
    }
}

/// The cochain sending `tuple` to `x^out` and every other tuple to zero.
fn basis_cochain(nvars: usize, cap: i64, tuple: &[Exponent], out: &Exponent) -> HochschildCochain {
    let mut f = HochschildCochain::zero(nvars, tuple.len(), cap);
    f.values.insert(
        tuple.to_vec(),
        LaurentPoly::monomial(out.clone(), scalar::one()),
    );
    f
}

/// Basis of the truncated cochains of degree `i` and weight `w`: one per
/// tuple whose output monomial `input + w` is a polynomial.
pub fn weight_basis(nvars: usize, i: usize, cap: i64, w: &[i64]) -> Vec<(Vec<Exponent>, Exponent)> {
    slot_tuples(nvars, i, cap)
        .into_iter()
        .filter_map(|t| {
            let input = t.iter().fold(vec![0; nvars], |a, e| add_exp(&a, e));
            let out = add_exp(&input, w);
            out.iter().all(|&x| x >= 0).then_some((t, out))
        })
        .collect()
}

/// `dim` of the truncated cohomology in degree `i` and weight `w`.
pub fn cohomology_dim(nvars: usize, i: usize, cap: i64, w: &[i64]) -> usize {
    let rank_of = |deg: usize| -> usize {
        let mut coords = Coordinates::default();
        let cols = weight_basis(nvars, deg, cap, w)
            .iter()
            .map(|(t, out)| coords.vector(&basis_cochain(nvars, cap, t, out).differential()))
            .collect::<Vec<_>>();
        sparse::rank(cols)
    };
    let dim = weight_basis(nvars, i, cap, w).len();
    let out_rank = rank_of(i);
    let in_rank = if i == 0 { 0 } else { rank_of(i - 1) };
    dim - out_rank - in_rank
}

/// `dim (Lambda^i T)_w`: the number of `x^m d_S` with `|S| = i` and `m - e_S = w`.
pub fn polyvector_dim(nvars: usize, i: usize, w: &[i64]) -> usize {
    crate::cech::subsets(nvars, i)
        .iter()
        .filter(|s| (0..nvars).all(|j| w[j] + i64::from(s.contains(&j)) >= 0))
        .count()
}

/// `a_1 (x) .. (x) a_i -> sum_S p_S sum_sigma sgn(sigma) d_{s_sigma(1)} a_1 .. d_{s_sigma(i)} a_i`.
pub fn hkr_cochain(p: &ExteriorElement, cap: i64) -> Result<HochschildCochain> {
    if p.kind() != ExteriorKind::Polyvector {
        return Err(Error::ContextMismatch(
            "the HKR cochain is defined for polyvectors".into(),
        ));
    }
    let degs = p.degrees();
    if degs.len() > 1 {
        return Err(Error::DegreeMismatch(format!(
            "polyvector mixes exterior degrees {degs:?}"
        )));
    }
    let i = degs.first().copied().unwrap_or(0);
    let n = p.nvars();
    if p.components().values().any(|c| !c.is_polynomial()) {
        return Err(Error::DomainViolation(
            "polyvector coefficients must be polynomials".into(),
        ));
    }
    let perms = permutations(i);
    Ok(HochschildCochain::from_fn(n, i, cap, |t| {
        let mut acc = LaurentPoly::zero(n);
        for (s, c) in p.components() {
            for perm in &perms {
                let mut term = c.clone();
                for (k, &pk) in perm.iter().enumerate() {
                    term = &term
                        * &LaurentPoly::monomial(t[k].clone(), scalar::one()).derivative(s[pk]);
                }
                acc = if sort_sign(perm) {
                    &acc - &term
                } else {
                    &acc + &term
                };
            }
        }
        acc
    }))
}

/// `(f u g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})`, with the smaller cap.
pub fn cup_product(f: &HochschildCochain, g: &HochschildCochain) -> Result<HochschildCochain> {
    if f.nvars != g.nvars {
        return Err(Error::ContextMismatch(
            "cochains in different numbers of variables".into(),
        ));
    }
    let cap = f.cap.min(g.cap);
    let p = f.degree;
    Ok(HochschildCochain::from_fn(
        f.nvars,
        p + g.degree,
        cap,
        |t| {
            let a = f.eval(&t[..p]).expect("within the cap");
            if a.is_zero() {
                return a;
            }
            &a * &g.eval(&t[p..]).expect("within the cap")
        },
    ))
}

/// `f` applied to the first `deg f` slots of a Hochschild chain, the value
/// multiplied into the coefficient `a_0`.
pub fn action_d(f: &HochschildCochain, c: &BarChain) -> Result<BarChain> {
    let p = f.degree;
    if p > c.length() {
        return Err(Error::DegreeMismatch(format!(
            "cochain of degree {p} on a chain of length {}",
            c.length()
        )));
    }
    if f.nvars != c.nvars() {
        return Err(Error::ContextMismatch(
            "cochain and chain in different numbers of variables".into(),
        ));
    }
    let mut out = BarChain::zero(c.nvars(), c.length() - p);
    for (k, x) in c.collapse().terms() {
        let v = f.eval(&k.slots[..p])?;
        for (e, y) in v.terms() {
            let key = BarKey {
                left: add_exp(&k.left, e),
                slots: k.slots[p..].to_vec(),
                right: k.right.clone(),
            };
            out.add_term(key, x * y);
        }
    }
    Ok(out)
}

/// `eps(D(f, c))`: the constant term of the full contraction.
pub fn pairing(f: &HochschildCochain, c: &BarChain) -> Result<ExactScalar> {
    if f.degree != c.length() {
        return Err(Error::DegreeMismatch(format!(
            "cochain of degree {} against a chain of length {}",
            f.degree,
            c.length()
        )));
    }
    let full = action_d(f, c)?;
    Ok(full
        .terms()
        .iter()
        .filter(|(k, _)| is_constant(&k.left))
        .map(|(_, x)| x.clone())
        .sum())
}

/// The `A`-valued contraction of a cochain with a chain of the same length.
pub fn contraction(f: &HochschildCochain, c: &BarChain) -> Result<LaurentPoly> {
    if f.degree != c.length() {
        return Err(Error::DegreeMismatch(format!(
            "cochain of degree {} against a chain of length {}",
            f.degree,
            c.length()
        )));
    }
    let full = action_d(f, c)?;
    LaurentPoly::from_terms(
        c.nvars(),
        full.terms()
            .iter()
            .map(|(k, x)| (k.left.clone(), x.clone())),
    )
}

/// All `x^m d_S` with `|S| = i` and `|m| <= max_coefficient_degree`.
pub fn polyvector_basis(
    nvars: usize,
    i: usize,
    max_coefficient_degree: i64,
) -> Vec<ExteriorElement> {
    let mut out = Vec::new();
    for m in monomials_up_to(nvars, 0, max_coefficient_degree) {
        for s in crate::cech::subsets(nvars, i) {
            let c = LaurentPoly::monomial(m.clone(), scalar::one());
            out.push(
                ExteriorElement::basis(ExteriorKind::Polyvector, nvars, &s, c)
                    .expect("valid generators"),
            );
        }
    }
    out
}
