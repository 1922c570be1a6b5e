use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cech::Sheaf;
use crate::error::{Error, Result};
use crate::polyalg::LaurentPoly;
use crate::scalar::{self, ExactScalar};

/// A Čech cochain: one coefficient vector per strictly increasing chart
/// tuple, written in the frame of the tuple's first chart. Missing tuples
/// are zero.
#[derive(Clone, Debug)]
pub struct CechCochain {
    sheaf: Sheaf,
    degree: usize,
    components: BTreeMap<Vec<usize>, Vec<LaurentPoly>>,
}

impl PartialEq for CechCochain {
    fn eq(&self, other: &Self) -> bool {
        self.sheaf.same_data(&other.sheaf)
            && self.degree == other.degree
            && self.components == other.components
    }
}

impl CechCochain {
    pub fn zero(sheaf: &Sheaf, degree: usize) -> Self {
        Self {
            sheaf: sheaf.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn sheaf(&self) -> &Sheaf {
        &self.sheaf
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Vec<LaurentPoly>> {
        &self.components
    }

    pub fn component(&self, tuple: &[usize]) -> Option<&Vec<LaurentPoly>> {
        self.components.get(tuple)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn zero_vec(&self) -> Vec<LaurentPoly> {
        vec![LaurentPoly::zero(self.sheaf.variety().nvars()); self.sheaf.rank()]
    }

    /// Adds `v` to the component on `tuple`, checking shape and regularity.
    pub fn add_component(&mut self, tuple: Vec<usize>, v: Vec<LaurentPoly>) -> Result<()> {
        if tuple.len() != self.degree + 1 || tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DomainViolation(format!(
                "{tuple:?} is not an increasing {}-tuple",
                self.degree + 1
            )));
        }
        if tuple
            .iter()
            .any(|&c| c >= self.sheaf.variety().chart_count())
        {
            return Err(Error::DomainViolation(format!(
                "chart out of range in {tuple:?}"
            )));
        }
        if v.len() != self.sheaf.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for rank {}",
                v.len(),
                self.sheaf.rank()
            )));
        }
        for (a, p) in v.iter().enumerate() {
            for (e, _) in p.terms() {
                if !self.sheaf.variety().is_regular(e, &tuple) {
                    return Err(Error::DomainViolation(format!(
                        "coefficient {a} on {tuple:?} is not regular there"
                    )));
                }
            }
        }
        self.add_unchecked(tuple, v);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, tuple: Vec<usize>, v: Vec<LaurentPoly>) {
        if v.iter().all(LaurentPoly::is_zero) {
            return;
        }
        let zero = self.zero_vec();
        let slot = self.components.entry(tuple.clone()).or_insert(zero);
        for (s, x) in slot.iter_mut().zip(&v) {
            if !x.is_zero() {
                *s = &*s + x;
            }
        }
        if slot.iter().all(LaurentPoly::is_zero) {
            self.components.remove(&tuple);
        }
    }

    /// Adds `c * X^e` to entry `frame` on `tuple` without checks.
    pub(crate) fn add_term(&mut self, tuple: &[usize], frame: usize, e: Vec<i64>, c: ExactScalar) {
        let mut v = self.zero_vec();
        v[frame] = LaurentPoly::monomial(e, c);
        self.add_unchecked(tuple.to_vec(), v);
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, v) in &other.components {
            out.add_unchecked(t.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sheaf, self.degree);
        }
        let components = self
            .components
            .iter()
            .map(|(t, v)| (t.clone(), v.iter().map(|p| p.scale(c)).collect()))
            .collect();
        Self {
            sheaf: self.sheaf.clone(),
            degree: self.degree,
            components,
        }
    }

    /// Reinterprets the cochain as valued in an identical sheaf with another label.
    pub fn relabel(&self, sheaf: &Sheaf) -> Result<Self> {
        if !self.sheaf.same_data(sheaf) {
            return Err(Error::SheafMismatch(format!(
                "{} is not {}",
                self.sheaf, sheaf
            )));
        }
        Ok(Self {
            sheaf: sheaf.clone(),
            degree: self.degree,
            components: self.components.clone(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.sheaf.same_data(&other.sheaf) {
            return Err(Error::SheafMismatch(format!(
                "{} vs {}",
                self.sheaf, other.sheaf
            )));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "degree {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// The Čech differential `(d s)_{i_0..i_{q+1}} = sum_k (-1)^k s_{..^i_k..}`.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero(&self.sheaf, self.degree + 1);
        let n = self.sheaf.variety().chart_count();
        for (t, v) in &self.components {
            for extra in 0..n {
                if t.contains(&extra) {
                    continue;
                }
                let pos = t.iter().filter(|&&c| c < extra).count();
                let mut big = t.clone();
                big.insert(pos, extra);
                let sign = scalar::pm_one(pos % 2 == 1);
                let w = if pos == 0 {
                    self.sheaf.convert(extra, t[0], v)
                } else {
                    v.clone()
                };
                out.add_unchecked(big, w.iter().map(|p| p.scale(&sign)).collect());
            }
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// Number of monomial terms over all components.
    pub fn total_terms(&self) -> usize {
        self.components
            .values()
            .flatten()
            .map(LaurentPoly::len)
            .sum()
    }

    /// The weights `exponent + frame weight` carried by the terms, sorted.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for (t, v) in &self.components {
            for (a, p) in v.iter().enumerate() {
                for (e, _) in p.terms() {
                    out.push(
                        e.iter()
                            .zip(self.sheaf.weight(t[0], a))
                            .map(|(x, y)| x + y)
                            .collect(),
                    );
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// A frame-constant bilinear map `A (x) B -> C`, the same in every chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub left_rank: usize,
    pub right_rank: usize,
    pub out_rank: usize,
    /// `(out, left, right, coefficient)`.
    pub entries: Vec<(usize, usize, usize, ExactScalar)>,
}

impl Pairing {
    /// `A (x) B -> A (x) B`, index `i * rank(B) + j`.
    pub fn tensor(ra: usize, rb: usize) -> Self {
        let mut entries = Vec::with_capacity(ra * rb);
        for i in 0..ra {
            for j in 0..rb {
                entries.push((i * rb + j, i, j, scalar::one()));
            }
        }
        Self {
            left_rank: ra,
            right_rank: rb,
            out_rank: ra * rb,
            entries,
        }
    }

    /// Composition `Hom(F, G) (x) Hom(E, F) -> Hom(E, G)`.
    pub fn compose(rg: usize, rf: usize, re: usize) -> Self {
        let mut entries = Vec::new();
        for g in 0..rg {
            for f in 0..rf {
                for e in 0..re {
                    entries.push((g * re + e, g * rf + f, f * re + e, scalar::one()));
                }
            }
        }
        Self {
            left_rank: rg * rf,
            right_rank: rf * re,
            out_rank: rg * re,
            entries,
        }
    }

    /// Wedge `Omega^p (x) Omega^q -> Omega^{p+q}` for a cotangent frame of size `n`.
    pub fn wedge(n: usize, p: usize, q: usize) -> Self {
        let entries = crate::cech::wedge_index(n, p, q)
            .into_iter()
            .map(|(o, i, j, neg)| (o, i, j, scalar::pm_one(neg)))
            .collect();
        Self {
            left_rank: binom(n, p),
            right_rank: binom(n, q),
            out_rank: binom(n, p + q),
            entries,
        }
    }

    pub fn scalar_left(rb: usize) -> Self {
        let entries = (0..rb).map(|j| (j, 0, j, scalar::one())).collect();
        Self {
            left_rank: 1,
            right_rank: rb,
            out_rank: rb,
            entries,
        }
    }

    pub fn apply(&self, a: &[LaurentPoly], b: &[LaurentPoly], nvars: usize) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(nvars); self.out_rank];
        for (o, i, j, c) in &self.entries {
            if a[*i].is_zero() || b[*j].is_zero() {
                continue;
            }
            out[*o] = &out[*o] + &(&a[*i] * &b[*j]).scale(c);
        }
        out
    }
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    usize::try_from(scalar::binomial(n as i64, k as i64)).expect("nonnegative")
}

/// Čech cup product `(a u b)_{i_0..i_{p+q}} = mu(a_{i_0..i_p}, b_{i_p..i_{p+q}})`,
/// with `b` first rewritten in the frame of `i_0`. No extra sign is inserted.
pub fn cup(a: &CechCochain, b: &CechCochain, mu: &Pairing, out: &Sheaf) -> Result<CechCochain> {
    if a.sheaf.rank() != mu.left_rank
        || b.sheaf.rank() != mu.right_rank
        || out.rank() != mu.out_rank
    {
        return Err(Error::CoefficientMismatch(format!(
            "pairing {}x{}->{} applied to {} x {} -> {}",
            mu.left_rank,
            mu.right_rank,
            mu.out_rank,
            a.sheaf.rank(),
            b.sheaf.rank(),
            out.rank()
        )));
    }
    if a.sheaf.variety() != b.sheaf.variety() || out.variety() != a.sheaf.variety() {
        return Err(Error::CoefficientMismatch(
            "cochains live on different varieties".into(),
        ));
    }
    let nv = out.variety().nvars();
    let mut res = CechCochain::zero(out, a.degree + b.degree);
    for (ta, va) in &a.components {
        let last = *ta.last().expect("nonempty tuple");
        for (tb, vb) in b.components.range(vec![last]..vec![last + 1]) {
            let mut t = ta.clone();
            t.extend_from_slice(&tb[1..]);
            let vb = b.sheaf.convert(ta[0], last, vb);
            res.add_unchecked(t, mu.apply(va, &vb, nv));
        }
    }
    Ok(res)
}

/// A frame-constant linear map between sheaves, given per chart.
#[derive(Clone, Debug)]
pub struct BundleMap {
    pub source: Sheaf,
    pub target: Sheaf,
    /// `matrices[c]` sends chart-`c` source coefficients to target coefficients.
    pub matrices: Vec<crate::polyalg::ExactMatrix>,
}

impl BundleMap {
    /// Checks weight compatibility and `m^{(c)} M^E_{cd} = M^F_{cd} m^{(d)}`.
    pub fn new(
        source: &Sheaf,
        target: &Sheaf,
        matrices: Vec<crate::polyalg::ExactMatrix>,
    ) -> Result<Self> {
        let v = source.variety();
        if v != target.variety() || matrices.len() != v.chart_count() {
            return Err(Error::SheafMismatch(
                "bundle map data does not match the variety".into(),
            ));
        }
        for (c, m) in matrices.iter().enumerate() {
            if m.rows() != target.rank() || m.cols() != source.rank() {
                return Err(Error::DimensionMismatch(
                    "bundle map matrix has wrong shape".into(),
                ));
            }
            for t in 0..m.rows() {
                for s in 0..m.cols() {
                    if !m.get(t, s).is_zero() && target.weight(c, t) != source.weight(c, s) {
                        return Err(Error::SheafMismatch(format!(
                            "map mixes frame weights on chart {c}"
                        )));
                    }
                }
            }
        }
        for c in 0..v.chart_count() {
            for d in 0..v.chart_count() {
                let l = matrices[c].mul(source.scalar_transition(c, d))?;
                let r = target.scalar_transition(c, d).mul(&matrices[d])?;
                if l != r {
                    return Err(Error::SheafMismatch(format!(
                        "map is not compatible with transition {c}{d}"
                    )));
                }
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrices,
        })
    }

    /// The same matrix on every chart.
    pub fn constant(
        source: &Sheaf,
        target: &Sheaf,
        m: crate::polyalg::ExactMatrix,
    ) -> Result<Self> {
        Self::new(source, target, vec![m; source.variety().chart_count()])
    }

    pub fn apply(&self, c: &CechCochain) -> Result<CechCochain> {
        if !c.sheaf.same_data(&self.source) {
            return Err(Error::SheafMismatch(format!(
                "map from {} applied to {}",
                self.source, c.sheaf
            )));
        }
        apply_frame_map(c, &self.target, |chart| &self.matrices[chart])
    }
}

/// Applies chart-wise scalar matrices to every component (in the frame of its first chart).
pub(crate) fn apply_frame_map<'a>(
    c: &CechCochain,
    target: &Sheaf,
    m: impl Fn(usize) -> &'a crate::polyalg::ExactMatrix,
) -> Result<CechCochain> {
    let nv = target.variety().nvars();
    let mut out = CechCochain::zero(target, c.degree);
    for (t, v) in &c.components {
        let mat = m(t[0]);
        if mat.cols() != v.len() || mat.rows() != target.rank() {
            return Err(Error::DimensionMismatch("frame map has wrong shape".into()));
        }
        let mut w = vec![LaurentPoly::zero(nv); target.rank()];
        for (i, wi) in w.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let x = mat.get(i, j);
                if !x.is_zero() && !vj.is_zero() {
                    *wi = &*wi + &vj.scale(x);
                }
            }
        }
        out.add_unchecked(t.clone(), w);
    }
    Ok(out)
}

/// A sparse frame-constant map given by `(out, in, coefficient)` triples, identical on all charts.
#[derive(Clone, Debug)]
pub struct FrameMap {
    pub in_rank: usize,
    pub out_rank: usize,
    pub entries: Vec<(usize, usize, ExactScalar)>,
}

impl FrameMap {
    pub fn apply(&self, c: &CechCochain, target: &Sheaf) -> Result<CechCochain> {
        if c.sheaf.rank() != self.in_rank || target.rank() != self.out_rank {
            return Err(Error::CoefficientMismatch(format!(
                "frame map {}->{} applied to rank {} into rank {}",
                self.in_rank,
                self.out_rank,
                c.sheaf.rank(),
                target.rank()
            )));
        }
        let nv = target.variety().nvars();
        let mut out = CechCochain::zero(target, c.degree);
        for (t, v) in &c.components {
            let mut w = vec![LaurentPoly::zero(nv); self.out_rank];
            for (o, i, x) in &self.entries {
                if !v[*i].is_zero() {
                    w[*o] = &w[*o] + &v[*i].scale(x);
                }
            }
            out.add_unchecked(t.clone(), w);
        }
        Ok(out)
    }

    pub fn compose(&self, first: &FrameMap) -> FrameMap {
        let mut by_out: BTreeMap<usize, Vec<(usize, &ExactScalar)>> = BTreeMap::new();
        for (m, i, y) in &first.entries {
            by_out.entry(*m).or_default().push((*i, y));
        }
        let mut acc: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for (o, m, x) in &self.entries {
            for (i, y) in by_out.get(m).into_iter().flatten() {
                *acc.entry((*o, *i)).or_insert_with(ExactScalar::zero) += x * *y;
            }
        }
        FrameMap {
            in_rank: first.in_rank,
            out_rank: self.out_rank,
            entries: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((o, i), v)| (o, i, v))
                .collect(),
        }
    }
}
