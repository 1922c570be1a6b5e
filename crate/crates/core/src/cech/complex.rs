//! The Čech complex of an equivariant sheaf, split by torus weight.
//!
//! A basis vector of `C^q` at weight `w` is a pair `(I, a)` of a chart tuple
//! and a frame index such that `X^{w - wt[I_0][a]}` is regular on `U_I`. Each
//! weight piece is finite dimensional and the differential only has scalar
//! entries, so everything reduces to exact sparse elimination.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::cech::{CechCochain, Sheaf};
use crate::error::{Error, Result};
use crate::polyalg::sparse::{self, Echelon, Inserted, SparseVec};
use crate::scalar::{self, ExactScalar};

pub type Weight = Vec<i64>;

/// Hard cap on the window radius unless `HOCHRR_MAX_WINDOW` says otherwise.
pub const DEFAULT_MAX_WINDOW: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowOptions {
    pub margin: i64,
    pub max_window: i64,
}

impl Default for WindowOptions {
    fn default() -> Self {
        let max_window = std::env::var("HOCHRR_MAX_WINDOW")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_WINDOW);
        Self {
            margin: 2,
            max_window,
        }
    }
}

impl WindowOptions {
    pub fn with_margin(margin: i64) -> Self {
        Self {
            margin,
            ..Self::default()
        }
    }
}

/// Dimensions and representatives of `H^q(X, E)`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    /// Window radius that was scanned.
    pub radius: i64,
    /// Nonzero weight pieces: weight and per-degree dimensions.
    pub by_weight: Vec<(Weight, Vec<usize>)>,
    /// Cocycle representatives per degree (empty unless requested).
    pub representatives: Vec<Vec<CechCochain>>,
}

pub struct CechComplex {
    sheaf: Sheaf,
    tuples: Vec<Vec<Vec<usize>>>,
    tuple_pos: Vec<HashMap<Vec<usize>, usize>>,
    poles: Vec<Vec<Vec<bool>>>,
}

type BasisIndex = HashMap<(usize, usize), usize>;

impl CechComplex {
    pub fn new(sheaf: &Sheaf) -> Self {
        let v = sheaf.variety();
        let tuples: Vec<Vec<Vec<usize>>> = (0..=v.max_cech_degree()).map(|q| v.tuples(q)).collect();
        let tuple_pos = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        let poles = tuples
            .iter()
            .map(|ts| ts.iter().map(|t| v.poles(t)).collect())
            .collect();
        Self {
            sheaf: sheaf.clone(),
            tuples,
            tuple_pos,
            poles,
        }
    }

    pub fn sheaf(&self) -> &Sheaf {
        &self.sheaf
    }

    pub fn max_degree(&self) -> usize {
        self.tuples.len() - 1
    }

    /// Basis `(tuple index, frame)` of `C^q` at weight `w`.
    pub fn basis(&self, q: usize, w: &[i64]) -> Vec<(usize, usize)> {
        let Some(ts) = self.tuples.get(q) else {
            return Vec::new();
        };
        let v = self.sheaf.variety();
        let mut out = Vec::new();
        for (ti, t) in ts.iter().enumerate() {
            let poles = &self.poles[q][ti];
            for a in 0..self.sheaf.rank() {
                let wt = self.sheaf.weight(t[0], a);
                let ok = w
                    .iter()
                    .zip(wt)
                    .zip(poles)
                    .all(|((x, y), &p)| x - y >= 0 || p);
                if ok && v.factor_degrees(wt) == v.factor_degrees(w) {
                    out.push((ti, a));
                }
            }
        }
        out
    }

    fn index(basis: &[(usize, usize)]) -> BasisIndex {
        basis.iter().enumerate().map(|(i, &k)| (k, i)).collect()
    }

    /// Columns of `d: C^q_w -> C^{q+1}_w` in the given bases.
    fn delta_columns(&self, q: usize, src: &[(usize, usize)], tgt: &BasisIndex) -> Vec<SparseVec> {
        let n = self.sheaf.variety().chart_count();
        src.iter()
            .map(|&(ti, b)| {
                let t = &self.tuples[q][ti];
                let mut col = SparseVec::new();
                for extra in 0..n {
                    if t.contains(&extra) {
                        continue;
                    }
                    let pos = t.iter().filter(|&&c| c < extra).count();
                    let mut big = t.clone();
                    big.insert(pos, extra);
                    let bi = self.tuple_pos[q + 1][&big];
                    let sign = scalar::pm_one(pos % 2 == 1);
                    if pos == 0 {
                        let m = self.sheaf.scalar_transition(extra, t[0]);
                        for a in 0..self.sheaf.rank() {
                            let x = m.get(a, b);
                            if !x.is_zero() {
                                let row = tgt[&(bi, a)];
                                *col.entry(row).or_insert_with(ExactScalar::zero) += x * &sign;
                            }
                        }
                    } else {
                        let row = tgt[&(bi, b)];
                        *col.entry(row).or_insert_with(ExactScalar::zero) += sign;
                    }
                }
                col.retain(|_, v| !v.is_zero());
                col
            })
            .collect()
    }

    /// Columns of `d_q` at weight `w`, together with both bases.
    pub fn delta(
        &self,
        q: usize,
        w: &[i64],
    ) -> (Vec<(usize, usize)>, Vec<(usize, usize)>, Vec<SparseVec>) {
        let src = self.basis(q, w);
        let tgt = self.basis(q + 1, w);
        let cols = self.delta_columns(q, &src, &Self::index(&tgt));
        (src, tgt, cols)
    }

    fn rank_delta(&self, q: usize, w: &[i64]) -> usize {
        if q + 1 > self.max_degree() {
            return 0;
        }
        let (src, tgt, cols) = self.delta(q, w);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        sparse::rank(cols)
    }

    /// `dim H^q` at weight `w` for each `q` in `degrees`.
    pub fn weight_dims(&self, w: &[i64], degrees: &[usize]) -> Vec<usize> {
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rank = |q: usize| *ranks.entry(q).or_insert_with(|| self.rank_delta(q, w));
        degrees
            .iter()
            .map(|&q| {
                let c = self.basis(q, w).len();
                if c == 0 {
                    return 0;
                }
                let prev = if q == 0 { 0 } else { rank(q - 1) };
                c - rank(q) - prev
            })
            .collect()
    }

    pub fn radius(&self, opts: WindowOptions) -> Result<i64> {
        let r = self.sheaf.twist_bound() + self.sheaf.variety().dim() as i64 + opts.margin;
        if r > opts.max_window {
            return Err(Error::WindowOverflow {
                requested: r,
                cap: opts.max_window,
            });
        }
        Ok(r)
    }

    /// All weights in the window `[-r, r]^nvars` whose factor degrees occur among the frames.
    pub fn window(&self, opts: WindowOptions) -> Result<Vec<Weight>> {
        let r = self.radius(opts)?;
        let v = self.sheaf.variety();
        let mut out = Vec::new();
        for degs in self.sheaf.frame_degrees() {
            let mut acc: Vec<Weight> = vec![Vec::new()];
            for (f, &n) in v.factors().iter().enumerate() {
                let pieces = vectors_with_sum(n + 1, degs[f], r);
                acc = acc
                    .into_iter()
                    .flat_map(|a| {
                        pieces.iter().map(move |p| {
                            let mut a = a.clone();
                            a.extend_from_slice(p);
                            a
                        })
                    })
                    .collect();
            }
            out.extend(acc);
        }
        out.sort();
        Ok(out)
    }

    /// Cohomology dimensions in degrees `0..=dim X`, optionally with representatives.
    pub fn cohomology(
        &self,
        opts: WindowOptions,
        with_representatives: bool,
    ) -> Result<Cohomology> {
        let radius = self.radius(opts)?;
        let degrees: Vec<usize> = (0..=self.sheaf.variety().dim()).collect();
        let per: Vec<(Weight, Vec<usize>)> = self
            .window(opts)?
            .into_par_iter()
            .map(|w| {
                let d = self.weight_dims(&w, &degrees);
                (w, d)
            })
            .filter(|(_, d)| d.iter().any(|&x| x > 0))
            .collect();
        let mut dims = vec![0; degrees.len()];
        for (_, d) in &per {
            for (a, b) in dims.iter_mut().zip(d) {
                *a += b;
            }
        }
        let mut representatives = vec![Vec::new(); degrees.len()];
        if with_representatives {
            for (w, d) in &per {
                for (q, &k) in d.iter().enumerate() {
                    if k > 0 {
                        representatives[q].extend(self.representatives(q, w));
                    }
                }
            }
        }
        Ok(Cohomology {
            dims,
            radius,
            by_weight: per,
            representatives,
        })
    }

    /// `dim H^q` summed over the window.
    pub fn dim(&self, q: usize, opts: WindowOptions) -> Result<usize> {
        let w = self.window(opts)?;
        Ok(w.par_iter().map(|w| self.weight_dims(w, &[q])[0]).sum())
    }

    /// Cocycles at weight `w` whose classes form a basis of `H^q_w`.
    pub fn representatives(&self, q: usize, w: &[i64]) -> Vec<CechCochain> {
        let basis = self.basis(q, w);
        let mut ech = Echelon::new(false);
        if q > 0 {
            let (_, _, cols) = self.delta(q - 1, w);
            for c in cols {
                ech.insert(c);
            }
        }
        let kernel = if q < self.max_degree() {
            let (_, _, cols) = self.delta(q, w);
            sparse::kernel(&cols)
        } else {
            (0..basis.len())
                .map(|i| SparseVec::from([(i, scalar::one())]))
                .collect()
        };
        let mut out = Vec::new();
        for k in kernel {
            if let Inserted::Pivot(_) = ech.insert(k.clone()) {
                out.push(self.assemble(q, w, &basis, &k));
            }
        }
        out
    }

    /// Builds the cochain with coordinates `coords` in `basis` at weight `w`.
    pub fn assemble(
        &self,
        q: usize,
        w: &[i64],
        basis: &[(usize, usize)],
        coords: &SparseVec,
    ) -> CechCochain {
        let mut c = CechCochain::zero(&self.sheaf, q);
        for (i, x) in coords {
            let (ti, a) = basis[*i];
            let t = &self.tuples[q][ti];
            let e: Vec<i64> = w
                .iter()
                .zip(self.sheaf.weight(t[0], a))
                .map(|(x, y)| x - y)
                .collect();
            c.add_term(t, a, e, x.clone());
        }
        c
    }

    /// Coordinates of a cochain, grouped by weight.
    pub fn decompose(
        &self,
        c: &CechCochain,
    ) -> Result<BTreeMap<Weight, (Vec<(usize, usize)>, SparseVec)>> {
        if !c.sheaf().same_data(&self.sheaf) {
            return Err(Error::SheafMismatch(format!(
                "cochain in {} for complex of {}",
                c.sheaf(),
                self.sheaf
            )));
        }
        let q = c.degree();
        let mut raw: BTreeMap<Weight, Vec<((usize, usize), ExactScalar)>> = BTreeMap::new();
        for (t, v) in c.components() {
            let ti = *self
                .tuple_pos
                .get(q)
                .and_then(|m| m.get(t))
                .ok_or_else(|| Error::DomainViolation(format!("{t:?} is not a chart tuple")))?;
            for (a, p) in v.iter().enumerate() {
                for (e, x) in p.terms() {
                    let w: Weight = e
                        .iter()
                        .zip(self.sheaf.weight(t[0], a))
                        .map(|(x, y)| x + y)
                        .collect();
                    raw.entry(w).or_default().push(((ti, a), x.clone()));
                }
            }
        }
        let mut out = BTreeMap::new();
        for (w, entries) in raw {
            let basis = self.basis(q, &w);
            let idx = Self::index(&basis);
            let mut v = SparseVec::new();
            for (k, x) in entries {
                let i = idx.get(&k).ok_or_else(|| {
                    Error::DomainViolation(
                        "cochain entry is not regular on its intersection".into(),
                    )
                })?;
                *v.entry(*i).or_insert_with(ExactScalar::zero) += x;
            }
            v.retain(|_, x| !x.is_zero());
            if !v.is_empty() {
                out.insert(w, (basis, v));
            }
        }
        Ok(out)
    }

    /// A cochain `b` with `d b = c`, or `None` when `c` is not a coboundary.
    pub fn coboundary_preimage(&self, c: &CechCochain) -> Result<Option<CechCochain>> {
        let q = c.degree();
        let parts = self.decompose(c)?;
        if q == 0 {
            return Ok(if parts.is_empty() {
                Some(CechCochain::zero(&self.sheaf, 0))
            } else {
                None
            });
        }
        let solved: Vec<Option<CechCochain>> = parts
            .par_iter()
            .map(|(w, (_, v))| {
                let (src, _, cols) = self.delta(q - 1, w);
                sparse::solve(&cols, v).map(|x| self.assemble(q - 1, w, &src, &x))
            })
            .collect();
        let mut acc = CechCochain::zero(&self.sheaf, q - 1);
        for s in solved {
            match s {
                Some(b) => acc = acc.add(&b)?,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    pub fn is_coboundary(&self, c: &CechCochain) -> Result<bool> {
        Ok(self.coboundary_preimage(c)?.is_some())
    }

    /// The part of `c` at weight `w`.
    pub fn weight_part(&self, c: &CechCochain, w: &[i64]) -> Result<CechCochain> {
        let parts = self.decompose(c)?;
        Ok(match parts.get(w) {
            Some((basis, v)) => self.assemble(c.degree(), w, basis, v),
            None => CechCochain::zero(&self.sheaf, c.degree()),
        })
    }
}

/// Integer vectors of length `len` with entries in `[-r, r]` summing to `sum`.
fn vectors_with_sum(len: usize, sum: i64, r: i64) -> Vec<Vec<i64>> {
    if len == 1 {
        return if sum.abs() <= r {
            vec![vec![sum]]
        } else {
            Vec::new()
        };
    }
    let rest_max = r * (len as i64 - 1);
    let mut out = Vec::new();
    for x in -r..=r {
        let rem = sum - x;
        if rem.abs() > rest_max {
            continue;
        }
        for mut tail in vectors_with_sum(len - 1, rem, r) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

pub fn cech_cohomology(e: &Sheaf) -> Result<Cohomology> {
    CechComplex::new(e).cohomology(WindowOptions::default(), true)
}

pub fn cohomology_dims(e: &Sheaf) -> Result<Vec<usize>> {
    Ok(CechComplex::new(e)
        .cohomology(WindowOptions::default(), false)?
        .dims)
}

pub fn euler_characteristic(e: &Sheaf) -> Result<i64> {
    let dims = cohomology_dims(e)?;
    Ok(dims
        .iter()
        .enumerate()
        .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{line_bundle, projective_space};

    #[test]
    fn window_vectors() {
        let v = vectors_with_sum(2, 1, 2);
        assert_eq!(v, vec![vec![-1, 2], vec![0, 1], vec![1, 0], vec![2, -1]]);
    }

    #[test]
    fn overflow_is_reported() {
        let p1 = projective_space(1).unwrap();
        let e = line_bundle(&p1, &[30]).unwrap();
        let err = CechComplex::new(&e).cohomology(
            WindowOptions {
                margin: 2,
                max_window: 16,
            },
            false,
        );
        assert!(matches!(
            err,
            Err(Error::WindowOverflow {
                requested: 33,
                cap: 16
            })
        ));
    }

    #[test]
    fn small_line_bundles() {
        let p1 = projective_space(1).unwrap();
        assert_eq!(
            cohomology_dims(&line_bundle(&p1, &[0]).unwrap()).unwrap(),
            vec![1, 0]
        );
        assert_eq!(
            cohomology_dims(&line_bundle(&p1, &[2]).unwrap()).unwrap(),
            vec![3, 0]
        );
        assert_eq!(
            cohomology_dims(&line_bundle(&p1, &[-2]).unwrap()).unwrap(),
            vec![0, 1]
        );
    }
}
