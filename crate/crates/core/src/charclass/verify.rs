use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use num_traits::Zero;

use crate::cech::{
    cotangent, direct_sum, tensor, BundleMap, CechCochain, FrameMap, MixedClass, Sheaf,
    WindowOptions,
};
use crate::charclass::classes::{atiyah_cocycle, Geometry};
use crate::charclass::ext::{permute_factors, swap_map, wedge_class, ExtClass};
use crate::charclass::lop::{adjoint, forms_times_cotangent, l_operator_with, Carried, LComponent};
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Success,
    Failure,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub p: usize,
    pub degree: usize,
    pub status: Status,
    pub dim_target: usize,
}

/// Outcome of one identity check, one entry per component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub identity: String,
    pub variety: String,
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.status != Status::Failure)
    }

    pub fn non_vacuous(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.status == Status::Success)
            .count()
    }
}

/// Decides whether `class` vanishes and records the size of its group.
struct Checker {
    opts: WindowOptions,
    components: Vec<ComponentReport>,
    witness: BTreeMap<String, serde_json::Value>,
}

impl Checker {
    fn new() -> Self {
        Self {
            opts: WindowOptions::default(),
            components: Vec::new(),
            witness: BTreeMap::new(),
        }
    }

    fn check(&mut self, p: usize, class: &ExtClass) -> Result<()> {
        let degree = class.degree();
        let dim_target = class.group_dim(self.opts)?;
        let key = format!("p={p},degree={degree}");
        let status = match class.homotopy()? {
            Some(h) => {
                self.witness
                    .insert(key, json!({ "homotopy_terms": h.total_terms() }));
                if dim_target == 0 {
                    Status::Vacuous
                } else {
                    Status::Success
                }
            }
            None => {
                let c = class.representative();
                self.witness.insert(
                    key,
                    json!({ "class_terms": c.total_terms(), "weights": c.weights() }),
                );
                Status::Failure
            }
        };
        self.components.push(ComponentReport {
            p,
            degree,
            status,
            dim_target,
        });
        Ok(())
    }

    fn finish(self, identity: &str, g: &Geometry) -> Report {
        Report {
            identity: identity.to_string(),
            variety: g.variety().to_string(),
            components: self.components,
            witness: if self.witness.is_empty() {
                None
            } else {
                Some(json!(self.witness))
            },
        }
    }
}

/// `(swap - id) o at(Omega^1)` is zero in `Ext^1(Omega^1, Omega^1 (x) Omega^1)`.
pub fn verify_at_symmetry(g: &Geometry) -> Result<Report> {
    let o1 = cotangent(g.variety());
    let n = o1.rank();
    let at = atiyah_cocycle(&o1)?;
    let target = at.target().clone();
    let diff = at.map_target(&swap_map(n, n), &target)?.sub(&at)?;
    let mut ck = Checker::new();
    ck.check(1, &diff)?;
    Ok(ck.finish("at-symmetry", g))
}

/// The symmetrization over the three `Omega^1` factors of
/// `(at(Omega^1) (x) id) o at(Omega^1)` is zero in `Ext^2`.
pub fn verify_at_jacobi(g: &Geometry) -> Result<Report> {
    let o1 = cotangent(g.variety());
    let n = o1.rank();
    let at = atiyah_cocycle(&o1)?;
    let composite = at.tensor_identity_right(&o1)?.compose(&at)?;
    let target = composite.target().clone();
    let mut sym = ExtClass::zero(&o1, &target, 2)?;
    for perm in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        sym = sym.add(&composite.map_target(&permute_factors(n, &perm), &target)?)?;
    }
    let mut ck = Checker::new();
    ck.check(1, &sym)?;
    Ok(ck.finish("at-jacobi", g))
}

/// `c /\ f` where `c` is the `(k, k)` part of a mixed class.
fn wedge_part(g: &Geometry, m: &MixedClass, k: usize, f: &ExtClass, j: usize) -> Result<ExtClass> {
    let target = forms_times_cotangent(g, k + j)?;
    let c: CechCochain = m.component(k, k);
    wedge_class(&c, k, f, j, &target)
}

/// `Omega^j -> Omega^{j+k}`, wedge with the `(k, k)` part of `m` in front.
fn wedge_operator(g: &Geometry, m: &MixedClass, k: usize, j: usize) -> Result<ExtClass> {
    let id = ExtClass::identity(g.forms().omega(j));
    let c = m.component(k, k);
    wedge_class(&c, k, &id, j, g.forms().omega(j + k))
}

/// For each `p`, `sum_n l_n (td /\ . (x) id) o L^n` on `Omega^p`, a class in
/// `Ext^{N+1-p}(Omega^p, omega (x) Omega^1)`, is zero.
pub fn verify_td_annihilation(g: &Geometry) -> Result<Report> {
    let dim = g.dim();
    let td = g.todd_class()?;
    let ls = l_operator_with(g, false)?;
    let o1 = cotangent(g.variety());
    let mut ck = Checker::new();
    for p in 1..=dim {
        let target = tensor(g.forms().omega(dim), &o1)?;
        let mut total = ExtClass::zero(g.forms().omega(p), &target, dim + 1 - p)?;
        for lc in ls.iter().filter(|c| c.p == p) {
            let j = p + lc.n - 1;
            let term = wedge_part(g, &td, dim - j, &lc.class, j)?;
            total = total.add(&term.scale(&lc.coefficient))?;
        }
        ck.check(p, &total)?;
    }
    Ok(ck.finish("todd-annihilation", g))
}

/// Sum of the summands of `L` from `Omega^b` landing in `Omega^a (x) Omega^1`.
fn l_block(ls: &[LComponent], b: usize, a: usize) -> Result<Option<ExtClass>> {
    let mut acc: Option<ExtClass> = None;
    for lc in ls.iter().filter(|c| c.p == b && c.p + c.n == a + 1) {
        let t = lc.class.scale(&lc.coefficient);
        acc = Some(match acc {
            Some(x) => x.add(&t)?,
            None => t,
        });
    }
    Ok(acc)
}

/// `L^+ = (td /\) o L o (td^{-1} /\)`, compared block by block.
///
/// With `trivial_at` the Atiyah class is replaced by zero, so `td = 1` and the
/// identity says that the skew embedding is self-adjoint.
pub fn verify_l_adjoint(g: &Geometry, trivial_at: bool) -> Result<Report> {
    let dim = g.dim();
    let ls = l_operator_with(g, trivial_at)?;
    let (tdb, tdb_inv) = if trivial_at {
        (MixedClass::one(g.forms()), MixedClass::one(g.forms()))
    } else {
        let td = g.todd_class()?;
        let inv = td.inverse()?;
        (td, inv)
    };
    let mut ck = Checker::new();
    for b in 0..=dim {
        for a in b.saturating_sub(1)..=dim {
            let k = a + 1 - b;
            if k > dim {
                continue;
            }
            let source = g.forms().omega(b);
            let target = forms_times_cotangent(g, a)?;
            // left side: adjoint of the block Omega^{N-a} -> Omega^{N-b} (x) Omega^1
            let lhs = match l_block(&ls, dim - a, dim - b)? {
                Some(f) => adjoint(g, &f, dim - b, dim - a, Carried::Cotangent)?,
                None => ExtClass::zero(source, &target, k)?,
            };
            let mut rhs = ExtClass::zero(source, &target, k)?;
            for i in 0..=k {
                for lc in ls.iter().filter(|c| c.p == b + i && c.n + i <= k) {
                    let j = k - i - lc.n;
                    let inner = wedge_operator(g, &tdb_inv, i, b)?;
                    let mid = lc.class.scale(&lc.coefficient).compose(&inner)?;
                    let outer = wedge_part(g, &tdb, j, &mid, b + i + lc.n - 1)?;
                    rhs = rhs.add(&outer)?;
                }
            }
            ck.check(b, &lhs.sub(&rhs)?)?;
        }
    }
    let name = if trivial_at {
        "l-adjoint-trivial-at"
    } else {
        "l-adjoint"
    };
    Ok(ck.finish(name, g))
}

/// `ch(E + F) = ch(E) + ch(F)` and `ch(E (x) F) = ch(E) ch(F)`, each up to
/// coboundary; returns `(additive, multiplicative)`.
pub fn verify_ch_ring(g: &Geometry, e: &Sheaf, f: &Sheaf) -> Result<(bool, bool)> {
    let (ce, cf) = (g.chern_character(e)?, g.chern_character(f)?);
    let sum = g.chern_character(&direct_sum(e, f)?)?;
    let prod = g.chern_character(&tensor(e, f)?)?;
    Ok((
        sum.cohomologous(&ce.add(&cf)?)?,
        prod.cohomologous(&ce.mul(&cf)?)?,
    ))
}

/// `at(E (x) F) = at(E) (x) id + id (x) at(F)` up to coboundary.
pub fn verify_at_tensor(e: &Sheaf, f: &Sheaf) -> Result<bool> {
    let (re, rf) = (e.rank(), f.rank());
    let rw = e.variety().dim();
    let ef = tensor(e, f)?;
    let target = tensor(&ef, &cotangent(e.variety()))?;
    // E (x) Omega^1 (x) F -> E (x) F (x) Omega^1
    let mut entries = Vec::new();
    for x in 0..re {
        for w in 0..rw {
            for y in 0..rf {
                entries.push(((x * rf + y) * rw + w, (x * rw + w) * rf + y, scalar::one()));
            }
        }
    }
    let reorder = FrameMap {
        in_rank: re * rw * rf,
        out_rank: re * rf * rw,
        entries,
    };
    let left = atiyah_cocycle(e)?
        .tensor_identity_right(f)?
        .map_target(&reorder, &target)?;
    let right = atiyah_cocycle(f)?.tensor_identity_left(e)?;
    atiyah_cocycle(&ef)?.cohomologous(&left.add(&right)?)
}

/// `(m (x) id) o at(E) = at(F) o m` up to coboundary, for a bundle map given
/// by the same matrix on every chart.
pub fn verify_at_naturality(m: &BundleMap) -> Result<bool> {
    let mat = &m.matrices[0];
    if m.matrices.iter().any(|x| x != mat) {
        return Err(Error::DomainViolation(
            "naturality needs a chart-independent matrix".into(),
        ));
    }
    let rw = m.source.variety().dim();
    let entries = |stretch: usize| -> Vec<(usize, usize, ExactScalar)> {
        let mut out = Vec::new();
        for t in 0..mat.rows() {
            for s in 0..mat.cols() {
                let x = mat.get(t, s);
                if !x.is_zero() {
                    out.extend((0..stretch).map(|w| (t * stretch + w, s * stretch + w, x.clone())));
                }
            }
        }
        out
    };
    let plain = FrameMap {
        in_rank: mat.cols(),
        out_rank: mat.rows(),
        entries: entries(1),
    };
    let lifted = FrameMap {
        in_rank: mat.cols() * rw,
        out_rank: mat.rows() * rw,
        entries: entries(rw),
    };
    let target = tensor(&m.target, &cotangent(m.source.variety()))?;
    let lhs = atiyah_cocycle(&m.source)?.map_target(&lifted, &target)?;
    let rhs = atiyah_cocycle(&m.target)?.map_source(&plain, &m.source)?;
    lhs.cohomologous(&rhs)
}
