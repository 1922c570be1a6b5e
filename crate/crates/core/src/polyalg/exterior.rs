//! Graded exterior algebra over Laurent polynomials.
//!
//! Basis elements are strictly increasing generator lists. Contraction of a
//! polyvector into a form uses the left convention in which the front vector
//! is contracted first, so `(d1^d2) _| (e1^e2^rest) = rest` and the pairing
//! of `d_S` with `e_S` is `+1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::LaurentPoly;
use crate::scalar::{self, ExactScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExteriorKind {
    Form,
    Polyvector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorElement {
    kind: ExteriorKind,
    nvars: usize,
    ngens: usize,
    components: BTreeMap<Vec<usize>, LaurentPoly>,
}

/// `(c) d/dx0^d/dx1 + ..` for polyvectors, `(c) dx0^dx1 + ..` for forms.
impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let prefix = match self.kind {
            ExteriorKind::Polyvector => "d/dx",
            ExteriorKind::Form => "dx",
        };
        let terms: Vec<String> = self
            .components
            .iter()
            .map(|(s, p)| {
                let gens: Vec<String> = s.iter().map(|j| format!("{prefix}{j}")).collect();
                match gens.is_empty() {
                    true => format!("({p})"),
                    false => format!("({p}) {}", gens.join("^")),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Sign of the permutation sorting the concatenation `a ++ b` of two sorted
/// lists, or `None` when they overlap.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<bool> {
    let mut neg = false;
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            return None;
        }
        // every element of b before position j is smaller than x
        if j % 2 == 1 {
            neg = !neg;
        }
    }
    Some(neg)
}

pub fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Sign of the permutation taking `s` to `t ++ (s \ t)`; `t` must be a sublist of `s`.
pub fn extract_sign(s: &[usize], t: &[usize]) -> bool {
    let rest: Vec<usize> = s.iter().copied().filter(|x| !t.contains(x)).collect();
    merge_sign(t, &rest).expect("disjoint by construction")
}

/// Sign of the permutation that sorts `v` (which must have distinct entries).
pub fn sort_sign(v: &[usize]) -> bool {
    let mut neg = false;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                neg = !neg;
            }
        }
    }
    neg
}

impl ExteriorElement {
    pub fn zero(kind: ExteriorKind, nvars: usize, ngens: usize) -> Self {
        Self {
            kind,
            nvars,
            ngens,
            components: BTreeMap::new(),
        }
    }

    /// `c * g_{s_1} ^ ... ^ g_{s_k}` for an arbitrary (unsorted) generator list.
    pub fn basis(kind: ExteriorKind, ngens: usize, gens: &[usize], c: LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(kind, c.nvars(), ngens);
        if gens.iter().any(|&g| g >= ngens) {
            return Err(Error::DimensionMismatch(format!(
                "generator out of range in {gens:?}"
            )));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(out);
        }
        let c = if sort_sign(gens) { -&c } else { c };
        out.add_component(sorted, c);
        Ok(out)
    }

    pub fn scalar(kind: ExteriorKind, ngens: usize, c: LaurentPoly) -> Self {
        let mut out = Self::zero(kind, c.nvars(), ngens);
        out.add_component(Vec::new(), c);
        out
    }

    pub fn kind(&self) -> ExteriorKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, LaurentPoly> {
        &self.components
    }

    pub fn component(&self, s: &[usize]) -> LaurentPoly {
        self.components
            .get(s)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Exterior degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.keys().map(Vec::len).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn add_component(&mut self, s: Vec<usize>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self
            .components
            .entry(s.clone())
            .or_insert_with(|| LaurentPoly::zero(c.nvars()));
        *e = &*e + &c;
        if e.is_zero() {
            self.components.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, c) in &other.components {
            out.add_component(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.kind, self.nvars, self.ngens);
        for (s, p) in &self.components {
            out.add_component(s.clone(), p.scale(c));
        }
        out
    }

    /// The homogeneous part of exterior degree `k`.
    pub fn part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.kind, self.nvars, self.ngens);
        for (s, p) in &self.components {
            if s.len() == k {
                out.add_component(s.clone(), p.clone());
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.nvars != other.nvars || self.ngens != other.ngens {
            return Err(Error::ContextMismatch(
                "exterior elements live in different algebras".into(),
            ));
        }
        Ok(())
    }
}

pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    a.check(b)?;
    let mut out = ExteriorElement::zero(a.kind, a.nvars, a.ngens);
    for (s, p) in &a.components {
        for (t, q) in &b.components {
            if let Some(neg) = merge_sign(s, t) {
                let c = p * q;
                out.add_component(merge(s, t), if neg { -&c } else { c });
            }
        }
    }
    Ok(out)
}

/// Interior product of a polyvector into a form.
pub fn contract(v: &ExteriorElement, w: &ExteriorElement) -> Result<ExteriorElement> {
    if v.kind != ExteriorKind::Polyvector || w.kind != ExteriorKind::Form {
        return Err(Error::ContextMismatch(
            "contract needs a polyvector and a form".into(),
        ));
    }
    if v.nvars != w.nvars || v.ngens != w.ngens {
        return Err(Error::ContextMismatch(
            "contract operands live in different algebras".into(),
        ));
    }
    let (vmax, wmin) = (
        v.components.keys().map(Vec::len).max().unwrap_or(0),
        w.components
            .keys()
            .map(Vec::len)
            .min()
            .unwrap_or(usize::MAX),
    );
    if !v.is_zero() && !w.is_zero() && vmax > wmin {
        return Err(Error::DegreeMismatch(format!(
            "polyvector degree {vmax} exceeds form degree {wmin}"
        )));
    }
    let mut out = ExteriorElement::zero(ExteriorKind::Form, w.nvars, w.ngens);
    for (t, p) in &v.components {
        for (s, q) in &w.components {
            if !t.iter().all(|x| s.contains(x)) {
                continue;
            }
            let rest: Vec<usize> = s.iter().copied().filter(|x| !t.contains(x)).collect();
            let c = p * q;
            out.add_component(rest, if extract_sign(s, t) { -&c } else { c });
        }
    }
    Ok(out)
}

/// `(-1)^{i(i-1)/2}`, the sign by which the bar involution scales degree `i`.
pub fn bar_sign(i: usize) -> ExactScalar {
    scalar::pm_one((i * i.saturating_sub(1) / 2) % 2 == 1)
}

/// Scales the degree-`i` part by `(-1)^{i(i-1)/2}`.
pub fn involution_bar(c: &ExteriorElement) -> ExteriorElement {
    let mut out = ExteriorElement::zero(c.kind, c.nvars, c.ngens);
    for (s, p) in &c.components {
        out.add_component(s.clone(), p.scale(&bar_sign(s.len())));
    }
    out
}

/// Coefficient of `d_S` against `e_S` under the canonical pairing, summed over `S`.
pub fn canonical_pairing(v: &ExteriorElement, w: &ExteriorElement) -> Result<LaurentPoly> {
    let c = contract(v, w)?;
    let mut acc = LaurentPoly::zero(w.nvars);
    for (s, p) in c.components() {
        if s.is_empty() {
            acc = &acc + p;
        }
    }
    Ok(acc)
}

impl ExteriorElement {
    /// True when every coefficient is zero; convenience for tests.
    pub fn all_zero(&self) -> bool {
        self.components.values().all(LaurentPoly::is_zero)
    }

    pub fn scalar_part(&self) -> ExactScalar {
        self.components
            .get(&Vec::new())
            .map(|p| p.coeff(&vec![0; self.nvars]))
            .unwrap_or_else(ExactScalar::zero)
    }
}
