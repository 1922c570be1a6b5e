use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cech::{
    cotangent, cotangent_frame, euler_characteristic, hom, omega, subsets, tensor, CechCochain,
    Forms, Integrator, MixedClass, Pairing, Sheaf, Variety,
};
use crate::charclass::ext::{trace_map, ExtClass};
use crate::error::{Error, Result};
use crate::polyalg::{merge, merge_sign, LaurentPoly};
use crate::ratseries::t_coefficients;
use crate::scalar::{self, ExactScalar};

/// `d` of a Laurent function in the coordinates of chart `c`, as coefficients
/// on the cotangent frame of that chart.
pub fn chart_differential(v: &Variety, c: usize, p: &LaurentPoly) -> Vec<LaurentPoly> {
    cotangent_frame(v, c)
        .into_iter()
        .map(|(f, j)| {
            let pole = v.pole(c, f);
            let mut out = LaurentPoly::zero(v.nvars());
            for (e, x) in p.terms() {
                if e[j] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                e2[pole] += 1;
                out.add_term(e2, x * scalar::int(e[j]));
            }
            out
        })
        .collect()
}

/// The Atiyah class of `E` as a class in `Ext^1(E, E (x) Omega^1)`.
///
/// Each chart carries the trivial connection of its frame. On `U_cd` the
/// difference of the two connections is `G_cd d(G_dc)`, differentiated in the
/// coordinates of chart `c` and written in the frame of `c`.
pub fn atiyah_cocycle(e: &Sheaf) -> Result<ExtClass> {
    let v = e.variety();
    let n = v.dim();
    let r = e.rank();
    let omega1 = cotangent(v);
    let target = tensor(e, &omega1)?;
    let hom = hom(e, &target)?;
    let mut c = CechCochain::zero(&hom, 1);
    for pair in v.tuples(1) {
        let (a, b) = (pair[0], pair[1]);
        let g_ab = e.transition(a, b);
        let g_ba = e.transition(b, a);
        let dg: Vec<Vec<Vec<LaurentPoly>>> = g_ba
            .iter()
            .map(|row| row.iter().map(|x| chart_differential(v, a, x)).collect())
            .collect();
        let mut vec = vec![LaurentPoly::zero(v.nvars()); hom.rank()];
        for x in 0..r {
            for k in 0..r {
                if g_ab[x][k].is_zero() {
                    continue;
                }
                for y in 0..r {
                    for (j, form) in dg[k][y].iter().enumerate() {
                        if !form.is_zero() {
                            let idx = (x * n + j) * r + y;
                            vec[idx] = &vec[idx] + &(&g_ab[x][k] * form);
                        }
                    }
                }
            }
        }
        c.add_component(pair, vec)?;
    }
    ExtClass::new(e, &target, c)
}

/// Pairing `Hom(E, E (x) Omega^1) (x) Hom(E, E (x) Omega^k) -> Hom(E, E (x) Omega^{k+1})`:
/// compose, then wedge the new form in front.
fn power_step(r: usize, n: usize, k: usize) -> Pairing {
    let sk = subsets(n, k);
    let sk1 = subsets(n, k + 1);
    let pos: std::collections::HashMap<&Vec<usize>, usize> =
        sk1.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let (nk, nk1) = (sk.len(), sk1.len());
    let mut entries = Vec::new();
    for j in 0..n {
        for (si, s) in sk.iter().enumerate() {
            let Some(neg) = merge_sign(&[j], s) else {
                continue;
            };
            let u = pos[&merge(&[j], s)];
            let sign = scalar::pm_one(neg);
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        entries.push((
                            (a * nk1 + u) * r + c,
                            (a * n + j) * r + b,
                            (b * nk + si) * r + c,
                            sign.clone(),
                        ));
                    }
                }
            }
        }
    }
    Pairing {
        left_rank: r * n * r,
        right_rank: r * nk * r,
        out_rank: r * nk1 * r,
        entries,
    }
}

/// `at^k(E)` in `Ext^k(E, E (x) Omega^k)`: the `k`-fold composite of the Atiyah
/// class followed by the product of the form factors.
pub fn at_power(e: &Sheaf, k: usize) -> Result<ExtClass> {
    let v = e.variety();
    let n = v.dim();
    if k > n {
        return Err(Error::DegreeMismatch(format!(
            "at^{k} on a variety of dimension {n}"
        )));
    }
    let at = atiyah_cocycle(e)?;
    at_power_from(&at, e, k)
}

pub(crate) fn at_power_from(at: &ExtClass, e: &Sheaf, k: usize) -> Result<ExtClass> {
    Ok(at_powers(at, e, k)?.pop().expect("at least the identity"))
}

/// `[at^0, .., at^k]`.
pub(crate) fn at_powers(at: &ExtClass, e: &Sheaf, k: usize) -> Result<Vec<ExtClass>> {
    let v = e.variety();
    let n = v.dim();
    let r = e.rank();
    let unit = crate::cech::FrameMap {
        in_rank: r,
        out_rank: r,
        entries: (0..r).map(|a| (a, a, scalar::one())).collect(),
    };
    let mut out = vec![ExtClass::identity(e).map_target(&unit, &tensor(e, &omega(v, 0)?)?)?];
    for i in 0..k {
        let target = tensor(e, &omega(v, i + 1)?)?;
        let hom = hom(e, &target)?;
        let c = crate::cech::cup(
            at.representative(),
            out[i].representative(),
            &power_step(r, n, i),
            &hom,
        )?;
        out.push(ExtClass::new(e, &target, c)?);
    }
    Ok(out)
}

/// Everything attached to one variety: forms, the hyperplane classes and the
/// normalized integral.
pub struct Geometry {
    variety: Variety,
    forms: Arc<Forms>,
    hyperplanes: Vec<MixedClass>,
    integrator: Integrator,
    todd: OnceLock<MixedClass>,
}

impl Geometry {
    pub fn new(v: &Variety) -> Result<Self> {
        let forms = Forms::new(v);
        let mut hyperplanes = Vec::new();
        for f in 0..v.factors().len() {
            let mut d = vec![0; v.factors().len()];
            d[f] = 1;
            let o = crate::cech::line_bundle(v, &d)?;
            let tr = trace_class(&at_power(&o, 1)?, &forms, 1)?;
            hyperplanes.push(tr);
        }
        let mut gen = MixedClass::one(&forms);
        for (f, &nf) in v.factors().iter().enumerate() {
            for _ in 0..nf {
                gen = gen.mul(&hyperplanes[f])?;
            }
        }
        let integrator = Integrator::new(&forms, &gen.top())?;
        Ok(Self {
            variety: v.clone(),
            forms,
            hyperplanes,
            integrator,
            todd: OnceLock::new(),
        })
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn forms(&self) -> &Arc<Forms> {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        self.variety.dim()
    }

    /// `c_1(O(e_f))`, the hyperplane class of factor `f`.
    pub fn hyperplane(&self, f: usize) -> &MixedClass {
        &self.hyperplanes[f]
    }

    pub fn integrator(&self) -> &Integrator {
        &self.integrator
    }

    /// `∫` of the top component.
    pub fn integrate(&self, m: &MixedClass) -> Result<ExactScalar> {
        self.integrator.integrate_mixed(m)
    }

    /// `ch(E) = Tr sum_i at^i(E) / i!`.
    pub fn chern_character(&self, e: &Sheaf) -> Result<MixedClass> {
        let at = atiyah_cocycle(e)?;
        let powers = at_powers(&at, e, self.dim())?;
        let mut out = MixedClass::scalar(&self.forms, &scalar::int(e.rank() as i64));
        for (i, p) in powers.iter().enumerate().skip(1) {
            let tr = trace_class(p, &self.forms, i)?;
            out = out.add(&tr.scale(&(ExactScalar::one() / scalar::factorial(i))))?;
        }
        Ok(out)
    }

    /// `td = exp(sum_i t_i i! ch_i(Omega^1))`.
    pub fn todd_class(&self) -> Result<MixedClass> {
        if let Some(t) = self.todd.get() {
            return Ok(t.clone());
        }
        let n = self.dim();
        let ch = self.chern_character(&cotangent(&self.variety))?;
        let t = t_coefficients(n);
        let mut arg = MixedClass::zero(&self.forms);
        for i in 1..=n {
            let w = &t[i - 1] * scalar::factorial(i);
            if !w.is_zero() {
                arg = arg.add(&ch.diagonal(i).scale(&w))?;
            }
        }
        let td = arg.exp()?;
        let _ = self.todd.set(td.clone());
        Ok(td)
    }

    /// `prod_f h_f^{a_f}` for an exponent vector with `a_f <= n_f`.
    pub fn hyperplane_monomial(&self, a: &[usize]) -> Result<MixedClass> {
        let mut out = MixedClass::one(&self.forms);
        for (f, (&k, &nf)) in a.iter().zip(self.variety.factors()).enumerate() {
            if k > nf {
                return Err(Error::RankExceeded(format!(
                    "h_{f}^{k} on a factor of dimension {nf}"
                )));
            }
            for _ in 0..k {
                out = out.mul(&self.hyperplanes[f])?;
            }
        }
        Ok(out)
    }

    /// `(p, a, ∫ m_p h^a)` for every `p` and every hyperplane monomial `h^a`
    /// of complementary degree. On a product of projective spaces these
    /// numbers determine the diagonal part of `m` in cohomology.
    pub fn intersection_numbers(
        &self,
        m: &MixedClass,
    ) -> Result<Vec<(usize, Vec<usize>, ExactScalar)>> {
        let n = self.dim();
        let mut out = Vec::new();
        for p in 0..=n {
            let part = m.diagonal(p);
            for a in bounded_compositions(self.variety.factors(), n - p) {
                let x = self.integrate(&part.mul(&self.hyperplane_monomial(&a)?)?)?;
                out.push((p, a, x));
            }
        }
        Ok(out)
    }

    /// Riemann–Roch for `E`: both sides computed independently.
    pub fn hrr_verify(&self, e: &Sheaf) -> Result<HrrReport> {
        if e.variety() != &self.variety {
            return Err(Error::SheafMismatch(format!(
                "{e} lives on another variety"
            )));
        }
        let chi = euler_characteristic(e)?;
        let rr = self.integrate(&self.chern_character(e)?.mul(&self.todd_class()?)?)?;
        let chi_q = scalar::int(chi);
        Ok(HrrReport {
            variety: self.variety.to_string(),
            sheaf: e.label().to_string(),
            equal: chi_q == rr,
            chi_cohomology: chi_q,
            chi_rr: rr,
        })
    }
}

/// `Tr` of a class `E -> E (x) Omega^k`, as an element of `H^q(Omega^k)`.
pub fn trace_class(f: &ExtClass, forms: &Arc<Forms>, k: usize) -> Result<MixedClass> {
    let r = f.source().rank();
    let nk = forms.omega(k).rank();
    if f.target().rank() != r * nk {
        return Err(Error::SheafMismatch(format!(
            "{} is not {} (x) Omega^{k}",
            f.target(),
            f.source()
        )));
    }
    let c = trace_map(r, nk).apply(f.representative(), forms.omega(k))?;
    MixedClass::from_component(forms, k, c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HrrReport {
    pub variety: String,
    pub sheaf: String,
    #[serde(with = "crate::scalar::text")]
    pub chi_cohomology: ExactScalar,
    #[serde(with = "crate::scalar::text")]
    pub chi_rr: ExactScalar,
    pub equal: bool,
}


/// Vectors `a` with `a_f <= bounds_f` and `sum a = total`, in lexicographic order.
fn bounded_compositions(bounds: &[usize], total: usize) -> Vec<Vec<usize>> {
    match bounds.split_first() {
        None => {
            if total == 0 {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        Some((&b, rest)) => (0..=b.min(total))
            .flat_map(|k| {
                bounded_compositions(rest, total - k)
                    .into_iter()
                    .map(move |mut t| {
                        t.insert(0, k);
                        t
                    })
            })
            .collect(),
    }
}
