use crate::cech::{
    cup, hom, subsets, tensor, CechCochain, CechComplex, FrameMap, Pairing, Sheaf, WindowOptions,
};
use crate::error::{Error, Result};
use crate::polyalg::{merge, merge_sign, LaurentPoly};
use crate::scalar::{self, ExactScalar};

/// A class in `Ext^degree(source, target)`, stored as a Čech cocycle with
/// values in `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    source: Sheaf,
    target: Sheaf,
    hom: Sheaf,
    cocycle: CechCochain,
}

impl ExtClass {
    /// Wraps a `Hom(source, target)`-valued cocycle.
    pub fn new(source: &Sheaf, target: &Sheaf, cocycle: CechCochain) -> Result<Self> {
        let hom = hom(source, target)?;
        if !cocycle.sheaf().same_data(&hom) {
            return Err(Error::SheafMismatch(format!(
                "cochain in {} is not valued in {}",
                cocycle.sheaf(),
                hom
            )));
        }
        if !cocycle.is_cocycle() {
            return Err(Error::DomainViolation(
                "representative is not a cocycle".into(),
            ));
        }
        Ok(Self::unchecked(source, target, hom, cocycle))
    }

    fn unchecked(source: &Sheaf, target: &Sheaf, hom: Sheaf, cocycle: CechCochain) -> Self {
        let cocycle = cocycle.relabel(&hom).expect("same data");
        Self {
            source: source.clone(),
            target: target.clone(),
            hom,
            cocycle,
        }
    }

    pub fn zero(source: &Sheaf, target: &Sheaf, degree: usize) -> Result<Self> {
        let hom = hom(source, target)?;
        let cocycle = CechCochain::zero(&hom, degree);
        Ok(Self::unchecked(source, target, hom, cocycle))
    }

    pub fn identity(e: &Sheaf) -> Self {
        let hom = hom(e, e).expect("same variety");
        let v = e.variety();
        let r = e.rank();
        let mut c = CechCochain::zero(&hom, 0);
        for ch in 0..v.chart_count() {
            let mut vec = vec![LaurentPoly::zero(v.nvars()); r * r];
            for a in 0..r {
                vec[a * r + a] = LaurentPoly::one(v.nvars());
            }
            c.add_unchecked(vec![ch], vec);
        }
        Self::unchecked(e, e, hom, c)
    }

    pub fn source(&self) -> &Sheaf {
        &self.source
    }

    pub fn target(&self) -> &Sheaf {
        &self.target
    }

    pub fn hom_sheaf(&self) -> &Sheaf {
        &self.hom
    }

    pub fn degree(&self) -> usize {
        self.cocycle.degree()
    }

    pub fn representative(&self) -> &CechCochain {
        &self.cocycle
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if !self.source.same_data(&other.source) || !self.target.same_data(&other.target) {
            return Err(Error::SheafMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(format!(
                "degree {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let c = self.cocycle.add(&other.cocycle.relabel(&self.hom)?)?;
        Ok(Self::unchecked(
            &self.source,
            &self.target,
            self.hom.clone(),
            c,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::unchecked(
            &self.source,
            &self.target,
            self.hom.clone(),
            self.cocycle.scale(c),
        )
    }

    /// `self o g`; the representative is the cup product with the composition pairing.
    pub fn compose(&self, g: &ExtClass) -> Result<Self> {
        if !g.target.same_data(&self.source) {
            return Err(Error::SheafMismatch(format!(
                "cannot compose {} after a map into {}",
                self.source, g.target
            )));
        }
        let mu = Pairing::compose(self.target.rank(), self.source.rank(), g.source.rank());
        let hom = hom(&g.source, &self.target)?;
        let c = cup(&self.cocycle, &g.cocycle, &mu, &hom)?;
        Ok(Self::unchecked(&g.source, &self.target, hom, c))
    }

    /// Post-composes with a frame-constant bundle map `target -> new_target`.
    pub fn map_target(&self, m: &FrameMap, new_target: &Sheaf) -> Result<Self> {
        if m.in_rank != self.target.rank() || m.out_rank != new_target.rank() {
            return Err(Error::DimensionMismatch(
                "frame map does not fit the target".into(),
            ));
        }
        let rs = self.source.rank();
        let lifted = FrameMap {
            in_rank: self.hom.rank(),
            out_rank: new_target.rank() * rs,
            entries: m
                .entries
                .iter()
                .flat_map(|(o, i, x)| (0..rs).map(move |s| (o * rs + s, i * rs + s, x.clone())))
                .collect(),
        };
        let hom = hom(&self.source, new_target)?;
        let c = lifted.apply(&self.cocycle, &hom)?;
        Ok(Self::unchecked(&self.source, new_target, hom, c))
    }

    /// Pre-composes with a frame-constant bundle map `new_source -> source`.
    pub fn map_source(&self, m: &FrameMap, new_source: &Sheaf) -> Result<Self> {
        if m.out_rank != self.source.rank() || m.in_rank != new_source.rank() {
            return Err(Error::DimensionMismatch(
                "frame map does not fit the source".into(),
            ));
        }
        let (rs, rn) = (self.source.rank(), new_source.rank());
        let lifted = FrameMap {
            in_rank: self.hom.rank(),
            out_rank: self.target.rank() * rn,
            entries: m
                .entries
                .iter()
                .flat_map(|(s, n, x)| {
                    (0..self.target.rank()).map(move |t| (t * rn + n, t * rs + s, x.clone()))
                })
                .collect(),
        };
        let hom = hom(new_source, &self.target)?;
        let c = lifted.apply(&self.cocycle, &hom)?;
        Ok(Self::unchecked(new_source, &self.target, hom, c))
    }

    /// `f (x) id_F : E (x) F -> G (x) F`.
    pub fn tensor_identity_right(&self, f: &Sheaf) -> Result<Self> {
        let (re, rg, rf) = (self.source.rank(), self.target.rank(), f.rank());
        let source = tensor(&self.source, f)?;
        let target = tensor(&self.target, f)?;
        let mut entries = Vec::new();
        for g in 0..rg {
            for e in 0..re {
                for y in 0..rf {
                    entries.push((
                        (g * rf + y) * (re * rf) + e * rf + y,
                        g * re + e,
                        scalar::one(),
                    ));
                }
            }
        }
        self.lift(entries, &source, &target)
    }

    /// `id_F (x) f : F (x) E -> F (x) G`.
    pub fn tensor_identity_left(&self, f: &Sheaf) -> Result<Self> {
        let (re, rg, rf) = (self.source.rank(), self.target.rank(), f.rank());
        let source = tensor(f, &self.source)?;
        let target = tensor(f, &self.target)?;
        let mut entries = Vec::new();
        for g in 0..rg {
            for e in 0..re {
                for y in 0..rf {
                    entries.push((
                        (y * rg + g) * (rf * re) + y * re + e,
                        g * re + e,
                        scalar::one(),
                    ));
                }
            }
        }
        self.lift(entries, &source, &target)
    }

    fn lift(
        &self,
        entries: Vec<(usize, usize, ExactScalar)>,
        source: &Sheaf,
        target: &Sheaf,
    ) -> Result<Self> {
        let hom = hom(source, target)?;
        let m = FrameMap {
            in_rank: self.hom.rank(),
            out_rank: hom.rank(),
            entries,
        };
        let c = m.apply(&self.cocycle, &hom)?;
        Ok(Self::unchecked(source, target, hom, c))
    }

    pub fn complex(&self) -> CechComplex {
        CechComplex::new(&self.hom)
    }

    /// Whether the class is zero, i.e. the representative is a coboundary.
    pub fn is_zero_class(&self) -> Result<bool> {
        self.complex().is_coboundary(&self.cocycle)
    }

    /// A cochain whose differential is the representative, if any.
    pub fn homotopy(&self) -> Result<Option<CechCochain>> {
        self.complex().coboundary_preimage(&self.cocycle)
    }

    pub fn cohomologous(&self, other: &Self) -> Result<bool> {
        self.sub(other)?.is_zero_class()
    }

    /// `dim Ext^degree(source, target)`.
    pub fn group_dim(&self, opts: WindowOptions) -> Result<usize> {
        self.complex().dim(self.degree(), opts)
    }
}

/// `wedge`: `Omega^p (x) Omega^q -> Omega^{p+q}` on frames of a rank-`n` cotangent sheaf.
pub fn wedge_map(n: usize, p: usize, q: usize) -> FrameMap {
    let rq = subsets(n, q).len();
    let entries = crate::cech::wedge_index(n, p, q)
        .into_iter()
        .map(|(o, i, j, neg)| (o, i * rq + j, scalar::pm_one(neg)))
        .collect();
    FrameMap {
        in_rank: subsets(n, p).len() * rq,
        out_rank: subsets(n, p + q).len(),
        entries,
    }
}

/// The skew embedding `Omega^p -> Omega^{p-1} (x) Omega^1`,
/// `w_S -> sum_k (-1)^{p-1-k} w_{S - s_k} (x) w_{s_k}`; wedge after it is `p` times the identity.
pub fn skew_map(n: usize, p: usize) -> FrameMap {
    let sp = subsets(n, p);
    let small = subsets(n, p - 1);
    let pos: std::collections::HashMap<&Vec<usize>, usize> =
        small.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = Vec::new();
    for (i, s) in sp.iter().enumerate() {
        for k in 0..p {
            let mut rest = s.clone();
            let x = rest.remove(k);
            entries.push((pos[&rest] * n + x, i, scalar::pm_one((p - 1 - k) % 2 == 1)));
        }
    }
    FrameMap {
        in_rank: sp.len(),
        out_rank: small.len() * n,
        entries,
    }
}

/// Exchange of the two factors `A (x) B -> B (x) A`, without sign.
pub fn swap_map(ra: usize, rb: usize) -> FrameMap {
    let mut entries = Vec::with_capacity(ra * rb);
    for a in 0..ra {
        for b in 0..rb {
            entries.push((b * ra + a, a * rb + b, scalar::one()));
        }
    }
    FrameMap {
        in_rank: ra * rb,
        out_rank: ra * rb,
        entries,
    }
}

/// Permutation of the factors of `V^{(x) k}`: input factor `i` goes to output position `perm[i]`.
pub fn permute_factors(r: usize, perm: &[usize]) -> FrameMap {
    let k = perm.len();
    let total = r.pow(k as u32);
    let mut entries = Vec::with_capacity(total);
    for idx in 0..total {
        let mut digits = vec![0; k];
        let mut rest = idx;
        for i in (0..k).rev() {
            digits[i] = rest % r;
            rest /= r;
        }
        let mut out = vec![0; k];
        for i in 0..k {
            out[perm[i]] = digits[i];
        }
        let o = out.iter().fold(0, |acc, &d| acc * r + d);
        entries.push((o, idx, scalar::one()));
    }
    FrameMap {
        in_rank: total,
        out_rank: total,
        entries,
    }
}

/// The trace `Hom(E, E (x) F) -> F`.
pub fn trace_map(re: usize, rf: usize) -> FrameMap {
    let mut entries = Vec::new();
    for a in 0..re {
        for y in 0..rf {
            entries.push((y, (a * rf + y) * re + a, scalar::one()));
        }
    }
    FrameMap {
        in_rank: re * rf * re,
        out_rank: rf,
        entries,
    }
}

/// Pairing `Omega^k (x) Hom(E, Omega^j (x) F) -> Hom(E, Omega^{k+j} (x) F)`,
/// wedging the form in front.
pub fn form_action(n: usize, k: usize, j: usize, rf: usize, re: usize) -> Pairing {
    let sk = subsets(n, k);
    let sj = subsets(n, j);
    let skj = subsets(n, k + j);
    let pos: std::collections::HashMap<&Vec<usize>, usize> =
        skj.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = Vec::new();
    for (a, s) in sk.iter().enumerate() {
        for (b, t) in sj.iter().enumerate() {
            let Some(neg) = merge_sign(s, t) else {
                continue;
            };
            let u = pos[&merge(s, t)];
            for y in 0..rf {
                for e in 0..re {
                    entries.push((
                        (u * rf + y) * re + e,
                        a,
                        (b * rf + y) * re + e,
                        scalar::pm_one(neg),
                    ));
                }
            }
        }
    }
    Pairing {
        left_rank: sk.len(),
        right_rank: sj.len() * rf * re,
        out_rank: skj.len() * rf * re,
        entries,
    }
}

/// `c /\ f` for an `Omega^k`-valued cocycle `c` and `f: E -> Omega^j (x) F`.
pub fn wedge_class(
    c: &CechCochain,
    k: usize,
    f: &ExtClass,
    j: usize,
    new_target: &Sheaf,
) -> Result<ExtClass> {
    let n = f.source.variety().dim();
    let nj = subsets(n, j).len();
    if f.target.rank() % nj != 0 {
        return Err(Error::DimensionMismatch(format!(
            "{} is not Omega^{j} times a sheaf",
            f.target
        )));
    }
    let rf = f.target.rank() / nj;
    let mu = form_action(n, k, j, rf, f.source.rank());
    let hom = hom(&f.source, new_target)?;
    let out = cup(c, &f.cocycle, &mu, &hom)?;
    Ok(ExtClass::unchecked(&f.source, new_target, hom, out))
}
