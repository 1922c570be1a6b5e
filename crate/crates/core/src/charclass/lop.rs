use std::collections::HashMap;

use crate::cech::{cotangent, structure_sheaf, subsets, tensor, FrameMap, Sheaf};
use crate::charclass::classes::{at_powers, atiyah_cocycle, Geometry};
use crate::charclass::ext::{skew_map, swap_map, wedge_map, ExtClass};
use crate::error::Result;
use crate::polyalg::{bar_sign, merge_sign};
use crate::ratseries::l_coefficients;
use crate::scalar::{self, ExactScalar};

/// One summand `l_n L^n` of the L-operator restricted to `Omega^p`.
#[derive(Clone, Debug)]
pub struct LComponent {
    pub p: usize,
    pub n: usize,
    pub coefficient: ExactScalar,
    /// `L^n` on `Omega^p`, a class in `Ext^n(Omega^p, Omega^{p+n-1} (x) Omega^1)`, not yet scaled.
    pub class: ExtClass,
}

/// `Omega^j (x) Omega^1`.
pub fn forms_times_cotangent(g: &Geometry, j: usize) -> Result<Sheaf> {
    tensor(g.forms().omega(j), &cotangent(g.variety()))
}

/// The operators `L^n` on `Omega^1` for `n = 0..=dim`.
///
/// `L^n = (-1)^n swap o at^n(Omega^1)`, where the swap `Omega^1 (x) Omega^n ->
/// Omega^n (x) Omega^1` carries the Koszul sign of the shifted factors.
fn base_operators(g: &Geometry, trivial_at: bool) -> Result<Vec<ExtClass>> {
    let v = g.variety();
    let dim = v.dim();
    let o1 = cotangent(v);
    let powers = at_powers(&atiyah_cocycle(&o1)?, &o1, dim)?;
    let mut out = Vec::with_capacity(dim + 1);
    for (n, p) in powers.into_iter().enumerate() {
        let target = forms_times_cotangent(g, n)?;
        let swapped = p.map_target(&swap_map(dim, subsets(dim, n).len()), &target)?;
        let class = if trivial_at && n > 0 {
            ExtClass::zero(&o1, &target, n)?
        } else {
            swapped.scale(&scalar::pm_one(n % 2 == 1))
        };
        out.push(class);
    }
    Ok(out)
}

/// Extends `L^n` from `Omega^1` to `Omega^p` by the Leibniz rule:
/// split off one factor with the skew embedding, apply `L^n` to it and wedge
/// the resulting form back in front of the `Omega^1` factor.
fn leibniz(g: &Geometry, base: &ExtClass, p: usize, n: usize) -> Result<ExtClass> {
    let dim = g.dim();
    let lifted = base.tensor_identity_left(g.forms().omega(p - 1))?;
    let w = wedge_map(dim, p - 1, n);
    let wide = FrameMap {
        in_rank: w.in_rank * dim,
        out_rank: w.out_rank * dim,
        entries: w
            .entries
            .iter()
            .flat_map(|(o, i, x)| (0..dim).map(move |r| (o * dim + r, i * dim + r, x.clone())))
            .collect(),
    };
    let target = forms_times_cotangent(g, p + n - 1)?;
    let sign = scalar::pm_one((n * (p - 1)) % 2 == 1);
    Ok(lifted
        .map_target(&wide, &target)?
        .map_source(&skew_map(dim, p), g.forms().omega(p))?
        .scale(&sign))
}

/// All nonzero summands of the L-operator, `p >= 1`, `p + n - 1 <= dim`.
pub fn l_operator(g: &Geometry) -> Result<Vec<LComponent>> {
    l_operator_with(g, false)
}

/// As [`l_operator`], optionally with the Atiyah class replaced by zero.
pub fn l_operator_with(g: &Geometry, trivial_at: bool) -> Result<Vec<LComponent>> {
    let dim = g.dim();
    let base = base_operators(g, trivial_at)?;
    let l = l_coefficients(dim);
    let mut out = Vec::new();
    for p in 1..=dim {
        for n in 0..=dim + 1 - p {
            out.push(LComponent {
                p,
                n,
                coefficient: l[n].clone(),
                class: leibniz(g, &base[n], p, n)?,
            });
        }
    }
    Ok(out)
}

/// What an adjoint carries along besides the forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carried {
    /// Nothing: `f: Omega^b -> Omega^a`.
    Nothing,
    /// A factor `Omega^1[1]`, as in the L-operator: `f: Omega^b -> Omega^a (x) Omega^1`.
    Cotangent,
}

/// The adjoint of `f: Omega^b -> Omega^a (x) F` (of Čech degree `k`) with
/// respect to `<x, y> = top(bar(x) /\ y)`, as a class `Omega^{N-a} -> Omega^{N-b} (x) F`.
///
/// Frame by frame this is the transpose through the wedge pairing. On top of
/// the bar signs it carries `(-1)^{k(N-a)}` when nothing is carried and
/// `(-1)^{N+1+k(k-1)/2}` when the odd factor `Omega^1[1]` is carried past the
/// other argument.
pub fn adjoint(
    g: &Geometry,
    f: &ExtClass,
    a: usize,
    b: usize,
    carried: Carried,
) -> Result<ExtClass> {
    let dim = g.dim();
    let passive = match carried {
        Carried::Nothing => structure_sheaf(g.variety()),
        Carried::Cotangent => cotangent(g.variety()),
    };
    let rf = passive.rank();
    let sa = subsets(dim, a);
    let sb = subsets(dim, b);
    let sv = subsets(dim, dim - a);
    let su = subsets(dim, dim - b);
    let upos: HashMap<&Vec<usize>, usize> = su.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let apos: HashMap<&Vec<usize>, usize> = sa.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let complement = |s: &[usize]| -> Vec<usize> { (0..dim).filter(|x| !s.contains(x)).collect() };
    let k = f.degree();
    let odd = match carried {
        Carried::Nothing => k * (dim - a) % 2 == 1,
        Carried::Cotangent => (dim + 1 + k * k.saturating_sub(1) / 2) % 2 == 1,
    };
    let base = &bar_sign(dim - a) * &bar_sign(dim - b) * scalar::pm_one(odd);
    let mut entries = Vec::new();
    for (bi, bs) in sb.iter().enumerate() {
        let bc = complement(bs);
        let ui = upos[&bc];
        let sgn_b = merge_sign(&bc, bs).expect("disjoint");
        for (vi, vs) in sv.iter().enumerate() {
            let vc = complement(vs);
            let ai = apos[&vc];
            let sgn_v = merge_sign(vs, &vc).expect("disjoint");
            let sign = &base * scalar::pm_one(sgn_b ^ sgn_v);
            for r in 0..rf {
                let from = (ai * rf + r) * sb.len() + bi;
                let to = (ui * rf + r) * sv.len() + vi;
                entries.push((to, from, sign.clone()));
            }
        }
    }
    let source = g.forms().omega(dim - a).clone();
    let target = tensor(g.forms().omega(dim - b), &passive)?;
    let hom = crate::cech::hom(&source, &target)?;
    let m = FrameMap {
        in_rank: f.hom_sheaf().rank(),
        out_rank: hom.rank(),
        entries,
    };
    ExtClass::new(&source, &target, m.apply(f.representative(), &hom)?)
}
