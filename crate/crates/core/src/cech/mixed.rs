use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cech::{cup, omega, CechCochain, CechComplex, Pairing, Sheaf, Variety};
use crate::error::{Error, Result};
use crate::polyalg::sparse::SparseVec;
use crate::polyalg::{bar_sign, ExactMatrix, LaurentPoly};
use crate::scalar::{self, ExactScalar};

/// The sheaves `Omega^p` of a variety together with their Čech complexes.
pub struct Forms {
    variety: Variety,
    omega: Vec<Sheaf>,
    complexes: Vec<CechComplex>,
}

impl Forms {
    pub fn new(v: &Variety) -> Arc<Self> {
        let omega: Vec<Sheaf> = (0..=v.dim())
            .map(|p| omega(v, p).expect("p <= dim"))
            .collect();
        let complexes = omega.iter().map(CechComplex::new).collect();
        Arc::new(Self {
            variety: v.clone(),
            omega,
            complexes,
        })
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn dim(&self) -> usize {
        self.variety.dim()
    }

    pub fn omega(&self, p: usize) -> &Sheaf {
        &self.omega[p]
    }

    pub fn complex(&self, p: usize) -> &CechComplex {
        &self.complexes[p]
    }

    pub fn wedge_pairing(&self, p: usize, q: usize) -> Pairing {
        Pairing::wedge(self.dim(), p, q)
    }
}

/// An element of `sum_{p,q} H^q(X, Omega^p)`, stored through cocycle representatives.
#[derive(Clone)]
pub struct MixedClass {
    forms: Arc<Forms>,
    components: BTreeMap<(usize, usize), CechCochain>,
}

impl std::fmt::Debug for MixedClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.components.iter().map(|(k, v)| (k, v.total_terms())))
            .finish()
    }
}

impl MixedClass {
    pub fn zero(forms: &Arc<Forms>) -> Self {
        Self {
            forms: forms.clone(),
            components: BTreeMap::new(),
        }
    }

    /// The unit: the constant function 1 on every chart.
    pub fn one(forms: &Arc<Forms>) -> Self {
        Self::scalar(forms, &scalar::one())
    }

    pub fn scalar(forms: &Arc<Forms>, c: &ExactScalar) -> Self {
        let v = forms.variety();
        let mut unit = CechCochain::zero(forms.omega(0), 0);
        for ch in 0..v.chart_count() {
            unit.add_unchecked(vec![ch], vec![LaurentPoly::constant(v.nvars(), c.clone())]);
        }
        Self::from_component(forms, 0, unit).expect("unit is a cocycle")
    }

    /// Wraps an `Omega^p`-valued cocycle.
    pub fn from_component(forms: &Arc<Forms>, p: usize, c: CechCochain) -> Result<Self> {
        if p > forms.dim() || !c.sheaf().same_data(forms.omega(p)) {
            return Err(Error::SheafMismatch(format!(
                "{} is not Omega^{p}",
                c.sheaf()
            )));
        }
        let mut out = Self::zero(forms);
        let c = c.relabel(forms.omega(p))?;
        if !c.is_zero() {
            out.components.insert((p, c.degree()), c);
        }
        Ok(out)
    }

    pub fn forms(&self) -> &Arc<Forms> {
        &self.forms
    }

    pub fn variety(&self) -> &Variety {
        self.forms.variety()
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), CechCochain> {
        &self.components
    }

    pub fn component(&self, p: usize, q: usize) -> CechCochain {
        self.components
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| CechCochain::zero(self.forms.omega(p.min(self.forms.dim())), q))
    }

    /// The `(p, p)` part.
    pub fn diagonal(&self, p: usize) -> Self {
        self.select(|a, b| a == p && b == p)
    }

    pub fn select(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            forms: self.forms.clone(),
            components: self
                .components
                .iter()
                .filter(|((p, q), _)| keep(*p, *q))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn top(&self) -> CechCochain {
        let n = self.forms.dim();
        self.component(n, n)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.forms.variety() != other.forms.variety() {
            return Err(Error::SheafMismatch(
                "classes on different varieties".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, v) in &other.components {
            let merged = match out.components.get(k) {
                Some(a) => a.add(v)?,
                None => v.clone(),
            };
            if merged.is_zero() {
                out.components.remove(k);
            } else {
                out.components.insert(*k, merged);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let components = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.components
                .iter()
                .map(|(k, v)| (*k, v.scale(c)))
                .collect()
        };
        Self {
            forms: self.forms.clone(),
            components,
        }
    }

    /// Cup product with the wedge pairing on coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.forms.dim();
        let maxq = self.variety().max_cech_degree();
        let mut out = Self::zero(&self.forms);
        for ((p1, q1), a) in &self.components {
            for ((p2, q2), b) in &other.components {
                if p1 + p2 > n || q1 + q2 > maxq {
                    continue;
                }
                let target = self.forms.omega(p1 + p2);
                let c = cup(a, b, &self.forms.wedge_pairing(*p1, *p2), target)?;
                out = out.add(&Self::from_component(&self.forms, p1 + p2, c)?)?;
            }
        }
        Ok(out)
    }

    /// Scales `Omega^p` by `(-1)^{p(p-1)/2}`.
    pub fn bar(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|((p, q), v)| ((*p, *q), v.scale(&bar_sign(*p))))
            .collect();
        Self {
            forms: self.forms.clone(),
            components,
        }
    }

    /// `exp(self)`; the `(0, 0)` part must vanish so the series terminates.
    pub fn exp(&self) -> Result<Self> {
        if self.components.contains_key(&(0, 0)) {
            return Err(Error::DomainViolation(
                "exp needs a class without (0,0) part".into(),
            ));
        }
        let mut acc = Self::one(&self.forms);
        let mut power = Self::one(&self.forms);
        for k in 1..=self.forms.dim() {
            power = power
                .mul(self)?
                .scale(&(ExactScalar::one() / scalar::int(k as i64)));
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Inverse of a class whose `(0, 0)` part is a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term()?;
        if c0.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let unit = Self::scalar(&self.forms, &c0);
        let nil = self.sub(&unit)?.scale(&(ExactScalar::one() / &c0));
        // (c0 (1 + nil))^{-1} = c0^{-1} sum (-nil)^k
        let mut acc = Self::one(&self.forms);
        let mut power = Self::one(&self.forms);
        for _ in 1..=self.forms.dim() {
            power = power.mul(&nil)?.scale(&-scalar::one());
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&(ExactScalar::one() / c0)))
    }

    /// The constant value of the `(0, 0)` component (which must be constant).
    pub fn constant_term(&self) -> Result<ExactScalar> {
        let Some(c) = self.components.get(&(0, 0)) else {
            return Ok(ExactScalar::zero());
        };
        let nv = self.variety().nvars();
        let mut value: Option<ExactScalar> = None;
        for ch in 0..self.variety().chart_count() {
            let x = c
                .component(&[ch])
                .map(|v| v[0].clone())
                .unwrap_or_else(|| LaurentPoly::zero(nv));
            let k = x.coeff(&vec![0; nv]);
            if x != LaurentPoly::constant(nv, k.clone()) || value.as_ref().is_some_and(|v| *v != k)
            {
                return Err(Error::DomainViolation(
                    "(0,0) component is not a constant".into(),
                ));
            }
            value = Some(k);
        }
        Ok(value.unwrap_or_else(ExactScalar::zero))
    }

    /// Whether every component of `self - other` is a coboundary.
    pub fn cohomologous(&self, other: &Self) -> Result<bool> {
        let diff = self.sub(other)?;
        for ((p, _), c) in &diff.components {
            if !self.forms.complex(*p).is_coboundary(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_cocycle(&self) -> bool {
        self.components.values().all(CechCochain::is_cocycle)
    }
}

/// The normalized integration functional on `H^{dim}(X, omega)`.
///
/// It is a linear form on the weight-zero part of `C^{dim}(omega)` that kills
/// coboundaries and takes the value 1 on a chosen generator.
#[derive(Clone)]
pub struct Integrator {
    forms: Arc<Forms>,
    basis: Vec<(usize, usize)>,
    functional: SparseVec,
}

impl Integrator {
    pub fn new(forms: &Arc<Forms>, generator: &CechCochain) -> Result<Self> {
        let n = forms.dim();
        let cx = forms.complex(n);
        if generator.degree() != n || !generator.sheaf().same_data(forms.omega(n)) {
            return Err(Error::NotTopDegree(format!(
                "generator has degree {} in {}",
                generator.degree(),
                generator.sheaf()
            )));
        }
        let zero_w = vec![0i64; forms.variety().nvars()];
        let basis = cx.basis(n, &zero_w);
        let (_, _, cols) = cx.delta(n - 1, &zero_w);
        let mut rows = Vec::new();
        for c in &cols {
            let mut row = vec![ExactScalar::zero(); basis.len()];
            for (i, x) in c {
                row[*i] = x.clone();
            }
            rows.push(row);
        }
        let candidates = if rows.is_empty() {
            let id = ExactMatrix::identity(basis.len());
            (0..basis.len()).map(|i| id.row(i).to_vec()).collect()
        } else {
            ExactMatrix::from_rows(rows)?.kernel()
        };
        let g = cx.decompose(&cx.weight_part(generator, &zero_w)?)?;
        let g = g.get(&zero_w).map(|(_, v)| v.clone()).unwrap_or_default();
        for lam in candidates {
            let val: ExactScalar = g.iter().map(|(i, x)| x * &lam[*i]).sum();
            if !val.is_zero() {
                let functional = lam
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x / &val))
                    .collect();
                return Ok(Self {
                    forms: forms.clone(),
                    basis,
                    functional,
                });
            }
        }
        Err(Error::DomainViolation(
            "generator is zero in top cohomology".into(),
        ))
    }

    pub fn forms(&self) -> &Arc<Forms> {
        &self.forms
    }

    /// Integral of a top-degree cocycle with values in the canonical sheaf.
    pub fn integrate(&self, c: &CechCochain) -> Result<ExactScalar> {
        let n = self.forms.dim();
        if c.degree() != n || !c.sheaf().same_data(self.forms.omega(n)) {
            return Err(Error::NotTopDegree(format!(
                "degree {} class in {}",
                c.degree(),
                c.sheaf()
            )));
        }
        if !c.is_cocycle() {
            return Err(Error::DomainViolation("integrand is not a cocycle".into()));
        }
        let zero_w = vec![0i64; self.forms.variety().nvars()];
        let parts = self.forms.complex(n).decompose(c)?;
        let Some((basis, v)) = parts.get(&zero_w) else {
            return Ok(ExactScalar::zero());
        };
        debug_assert_eq!(basis, &self.basis);
        Ok(v.iter()
            .filter_map(|(i, x)| self.functional.get(i).map(|l| x * l))
            .sum())
    }

    /// Integral of the `(dim, dim)` component.
    pub fn integrate_mixed(&self, m: &MixedClass) -> Result<ExactScalar> {
        self.integrate(&m.top())
    }
}
