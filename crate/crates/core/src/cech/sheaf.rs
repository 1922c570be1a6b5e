//! Torus-equivariant locally free sheaves given by transition data.
//!
//! On chart `c` the sheaf has a frame `e^{(c)}_a` of torus weight
//! `wt[c][a]`. Coefficient vectors change by `s^{(c)} = G_{cd} s^{(d)}` with
//! `G_{cd}[a][b] = M_{cd}[a][b] * X^{wt[d][b] - wt[c][a]}`, so a sheaf is fully
//! described by its frame weights and the scalar matrices `M_{cd}`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cech::Variety;
use crate::error::{Error, Result};
use crate::polyalg::{merge_sign, ExactMatrix, LaurentPoly};
use crate::scalar::{self, ExactScalar};

#[derive(PartialEq, Eq, Debug)]
struct SheafData {
    variety: Variety,
    rank: usize,
    label: String,
    weights: Vec<Vec<Vec<i64>>>,
    transitions: Vec<Vec<ExactMatrix>>,
}

/// A cheaply clonable handle to immutable sheaf data.
#[derive(Clone, Debug)]
pub struct Sheaf(Arc<SheafData>);

impl PartialEq for Sheaf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.same_bundle(other)
    }
}

impl Eq for Sheaf {}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Sheaf {
    /// Builds a sheaf, checking identity on the diagonal, the cocycle
    /// condition and regularity of every transition entry.
    pub fn new(
        variety: Variety,
        label: impl Into<String>,
        weights: Vec<Vec<Vec<i64>>>,
        transitions: Vec<Vec<ExactMatrix>>,
    ) -> Result<Self> {
        let n = variety.chart_count();
        let nv = variety.nvars();
        let rank = weights.first().map_or(0, Vec::len);
        let bad = |m: String| Err(Error::InvalidSheaf(m));
        if weights.len() != n || transitions.len() != n {
            return bad(format!("expected data for {n} charts"));
        }
        if weights
            .iter()
            .any(|w| w.len() != rank || w.iter().any(|e| e.len() != nv))
        {
            return bad("frame weights have inconsistent shape".into());
        }
        for c in 0..n {
            if transitions[c].len() != n {
                return bad("transition table is not square".into());
            }
            for d in 0..n {
                let m = &transitions[c][d];
                if m.rows() != rank || m.cols() != rank {
                    return bad(format!("transition {c}{d} has wrong size"));
                }
                if c == d && *m != ExactMatrix::identity(rank) {
                    return bad(format!("transition {c}{c} is not the identity"));
                }
                for a in 0..rank {
                    for b in 0..rank {
                        if m.get(a, b).is_zero() {
                            continue;
                        }
                        let e = sub(&weights[d][b], &weights[c][a]);
                        if !variety.is_regular(&e, &[c, d]) {
                            return bad(format!(
                                "entry ({a},{b}) of transition {c}{d} is not regular"
                            ));
                        }
                    }
                }
            }
        }
        for c in 0..n {
            for d in 0..n {
                for e in 0..n {
                    if transitions[c][d].mul(&transitions[d][e])? != transitions[c][e] {
                        return bad(format!("cocycle condition fails on charts {c},{d},{e}"));
                    }
                }
            }
        }
        Ok(Self::new_unchecked(
            variety,
            label.into(),
            weights,
            transitions,
        ))
    }

    fn new_unchecked(
        variety: Variety,
        label: String,
        weights: Vec<Vec<Vec<i64>>>,
        transitions: Vec<Vec<ExactMatrix>>,
    ) -> Self {
        let rank = weights.first().map_or(0, Vec::len);
        Sheaf(Arc::new(SheafData {
            variety,
            rank,
            label,
            weights,
            transitions,
        }))
    }

    pub fn variety(&self) -> &Variety {
        &self.0.variety
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let d = &self.0;
        Self::new_unchecked(
            d.variety.clone(),
            label.into(),
            d.weights.clone(),
            d.transitions.clone(),
        )
    }

    pub fn weight(&self, chart: usize, frame: usize) -> &[i64] {
        &self.0.weights[chart][frame]
    }

    pub fn weights(&self) -> &[Vec<Vec<i64>>] {
        &self.0.weights
    }

    /// The scalar part `M_{cd}` of the transition `G_{cd}`.
    pub fn scalar_transition(&self, c: usize, d: usize) -> &ExactMatrix {
        &self.0.transitions[c][d]
    }

    /// The exponent of the entry `G_{cd}[a][b]`.
    pub fn entry_exponent(&self, c: usize, d: usize, a: usize, b: usize) -> Vec<i64> {
        sub(self.weight(d, b), self.weight(c, a))
    }

    /// `G_{cd}` with Laurent polynomial entries.
    pub fn transition(&self, c: usize, d: usize) -> Vec<Vec<LaurentPoly>> {
        let m = self.scalar_transition(c, d);
        (0..self.rank())
            .map(|a| {
                (0..self.rank())
                    .map(|b| {
                        LaurentPoly::monomial(self.entry_exponent(c, d, a, b), m.get(a, b).clone())
                    })
                    .collect()
            })
            .collect()
    }

    /// Rewrites a coefficient vector from the frame of chart `d` into the frame of chart `c`.
    pub fn convert(&self, c: usize, d: usize, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        if c == d {
            return v.to_vec();
        }
        let m = self.scalar_transition(c, d);
        let nv = self.variety().nvars();
        (0..self.rank())
            .map(|a| {
                let mut acc = LaurentPoly::zero(nv);
                for (b, vb) in v.iter().enumerate() {
                    let x = m.get(a, b);
                    if !x.is_zero() && !vb.is_zero() {
                        acc = &acc + &vb.shift(&self.entry_exponent(c, d, a, b), x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Largest absolute coordinate of any frame weight.
    pub fn twist_bound(&self) -> i64 {
        self.0
            .weights
            .iter()
            .flatten()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    /// Factor degrees occurring among the frames (equal on every chart).
    pub fn frame_degrees(&self) -> Vec<Vec<i64>> {
        let mut d: Vec<Vec<i64>> = self.0.weights[0]
            .iter()
            .map(|w| self.variety().factor_degrees(w))
            .collect();
        d.sort();
        d.dedup();
        d
    }

    fn same_bundle(&self, other: &Self) -> bool {
        let (a, b) = (&self.0, &other.0);
        a.variety == b.variety
            && a.rank == b.rank
            && a.weights == b.weights
            && a.transitions == b.transitions
    }

    /// Equality of the underlying bundle data, ignoring labels.
    pub fn same_data(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.same_bundle(other)
    }

    fn charts(&self) -> usize {
        self.variety().chart_count()
    }

    fn map_transitions(&self, f: impl Fn(usize, usize) -> ExactMatrix) -> Vec<Vec<ExactMatrix>> {
        let n = self.charts();
        (0..n).map(|c| (0..n).map(|d| f(c, d)).collect()).collect()
    }
}

impl fmt::Display for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn check_same_variety(a: &Sheaf, b: &Sheaf) -> Result<()> {
    if a.variety() != b.variety() {
        return Err(Error::SheafMismatch(format!(
            "{} and {} live on different varieties",
            a, b
        )));
    }
    Ok(())
}

/// The rank-one sheaf `O(d)`, one degree per factor.
///
/// The frame on chart `c` is `prod_f X_{c_f}^{d_f}`, so global sections of
/// `O(d)` with `d >= 0` are the homogeneous polynomials of multidegree `d`.
pub fn line_bundle(v: &Variety, d: &[i64]) -> Result<Sheaf> {
    if d.len() != v.factors().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees for {} factors",
            d.len(),
            v.factors().len()
        )));
    }
    let n = v.chart_count();
    let weights = (0..n)
        .map(|c| {
            let mut w = vec![0i64; v.nvars()];
            for (f, &df) in d.iter().enumerate() {
                w[v.pole(c, f)] += df;
            }
            vec![w]
        })
        .collect();
    let transitions = (0..n)
        .map(|_| (0..n).map(|_| ExactMatrix::identity(1)).collect())
        .collect();
    let degs: Vec<String> = d.iter().map(i64::to_string).collect();
    Ok(Sheaf::new_unchecked(
        v.clone(),
        format!("O({})", degs.join(",")),
        weights,
        transitions,
    ))
}

pub fn structure_sheaf(v: &Variety) -> Sheaf {
    line_bundle(v, &vec![0; v.factors().len()])
        .expect("degree vector matches")
        .with_label("O")
}

/// Frame of the cotangent sheaf on chart `c`: pairs `(factor, j)` with `j` a
/// non-pole variable of that factor, standing for `d(X_j / X_{c_f})`.
pub fn cotangent_frame(v: &Variety, c: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (f, &n) in v.factors().iter().enumerate() {
        let o = v.offset(f);
        for j in o..=o + n {
            if j != v.pole(c, f) {
                out.push((f, j));
            }
        }
    }
    out
}

/// The cotangent sheaf; transitions are the Jacobians of the chart changes.
pub fn cotangent(v: &Variety) -> Sheaf {
    let n = v.chart_count();
    let nv = v.nvars();
    let frames: Vec<Vec<(usize, usize)>> = (0..n).map(|c| cotangent_frame(v, c)).collect();
    let weights = (0..n)
        .map(|c| {
            frames[c]
                .iter()
                .map(|&(f, j)| {
                    let mut w = vec![0i64; nv];
                    w[j] += 1;
                    w[v.pole(c, f)] -= 1;
                    w
                })
                .collect()
        })
        .collect();
    let rank = v.dim();
    let transitions = (0..n)
        .map(|c| {
            (0..n)
                .map(|d| {
                    let mut m = ExactMatrix::zeros(rank, rank);
                    for (a, &(f, j)) in frames[c].iter().enumerate() {
                        for (b, &(g, k)) in frames[d].iter().enumerate() {
                            if f != g {
                                continue;
                            }
                            // X_{c_f} * d/dX_j (X_k / X_{d_f})
                            let pd = v.pole(d, f);
                            let x = if j == pd {
                                -scalar::one()
                            } else if j == k {
                                scalar::one()
                            } else {
                                scalar::zero()
                            };
                            m.set(a, b, x);
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    Sheaf::new_unchecked(v.clone(), "Omega^1".into(), weights, transitions)
}

pub fn tangent(v: &Variety) -> Sheaf {
    dual(&cotangent(v)).with_label("T")
}

/// `E (x) F`; frame `(i, j)` of the product has index `i * rank(F) + j`.
pub fn tensor(e: &Sheaf, f: &Sheaf) -> Result<Sheaf> {
    check_same_variety(e, f)?;
    let n = e.charts();
    let weights = (0..n)
        .map(|c| {
            let mut w = Vec::with_capacity(e.rank() * f.rank());
            for i in 0..e.rank() {
                for j in 0..f.rank() {
                    w.push(add(e.weight(c, i), f.weight(c, j)));
                }
            }
            w
        })
        .collect();
    let transitions =
        e.map_transitions(|c, d| e.scalar_transition(c, d).kron(f.scalar_transition(c, d)));
    Ok(Sheaf::new_unchecked(
        e.variety().clone(),
        format!("({e} * {f})"),
        weights,
        transitions,
    ))
}

pub fn dual(e: &Sheaf) -> Sheaf {
    let weights = e
        .weights()
        .iter()
        .map(|ws| ws.iter().map(|w| w.iter().map(|x| -x).collect()).collect())
        .collect();
    let transitions = e.map_transitions(|c, d| e.scalar_transition(d, c).transpose());
    Sheaf::new_unchecked(e.variety().clone(), format!("{e}^*"), weights, transitions)
}

pub fn direct_sum(e: &Sheaf, f: &Sheaf) -> Result<Sheaf> {
    check_same_variety(e, f)?;
    let weights = (0..e.charts())
        .map(|c| {
            e.weights()[c]
                .iter()
                .chain(&f.weights()[c])
                .cloned()
                .collect()
        })
        .collect();
    let transitions = e.map_transitions(|c, d| {
        e.scalar_transition(c, d)
            .block_diag(f.scalar_transition(c, d))
    });
    Ok(Sheaf::new_unchecked(
        e.variety().clone(),
        format!("({e} + {f})"),
        weights,
        transitions,
    ))
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Sorted `k`-multisets of `0..n` in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - 1) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
    out
}

/// `Lambda^k E`; frames are the `k`-subsets of the frame of `E`, in lexicographic order.
pub fn wedge_power(e: &Sheaf, k: usize) -> Result<Sheaf> {
    if k > e.rank() {
        return Err(Error::RankExceeded(format!(
            "wedge^{k} of a rank {} sheaf",
            e.rank()
        )));
    }
    let subs = subsets(e.rank(), k);
    let weights = (0..e.charts())
        .map(|c| {
            subs.iter()
                .map(|s| {
                    s.iter().fold(vec![0; e.variety().nvars()], |acc, &i| {
                        add(&acc, e.weight(c, i))
                    })
                })
                .collect()
        })
        .collect();
    let transitions = e.map_transitions(|c, d| {
        let m = e.scalar_transition(c, d);
        let mut out = ExactMatrix::zeros(subs.len(), subs.len());
        for (a, s) in subs.iter().enumerate() {
            for (b, t) in subs.iter().enumerate() {
                let det = m.submatrix(s, t).determinant().expect("square minor");
                out.set(a, b, det);
            }
        }
        out
    });
    let label = match k {
        1 => e.label().to_string(),
        _ => format!("wedge^{k}({e})"),
    };
    Ok(Sheaf::new_unchecked(
        e.variety().clone(),
        label,
        weights,
        transitions,
    ))
}

/// `Sym^k E`; frames are the `k`-multisets of the frame of `E`, standing for monomials.
pub fn sym_power(e: &Sheaf, k: usize) -> Result<Sheaf> {
    let ms = multisets(e.rank(), k);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        ms.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let r = e.rank();
    let weights = (0..e.charts())
        .map(|c| {
            ms.iter()
                .map(|s| {
                    s.iter().fold(vec![0; e.variety().nvars()], |acc, &i| {
                        add(&acc, e.weight(c, i))
                    })
                })
                .collect()
        })
        .collect();
    let transitions = e.map_transitions(|c, d| {
        let m = e.scalar_transition(c, d);
        let mut out = ExactMatrix::zeros(ms.len(), ms.len());
        for (b, t) in ms.iter().enumerate() {
            // expand prod_i (sum_a M[a][t_i] e_a)
            let mut terms: Vec<(Vec<usize>, ExactScalar)> = vec![(Vec::new(), ExactScalar::one())];
            for &ti in t {
                let mut next = Vec::new();
                for (seq, coef) in &terms {
                    for a in 0..r {
                        let x = m.get(a, ti);
                        if !x.is_zero() {
                            let mut s = seq.clone();
                            s.push(a);
                            next.push((s, coef * x));
                        }
                    }
                }
                terms = next;
            }
            for (mut seq, coef) in terms {
                seq.sort_unstable();
                let a = index[&seq];
                let v = out.get(a, b) + coef;
                out.set(a, b, v);
            }
        }
        out
    });
    Ok(Sheaf::new_unchecked(
        e.variety().clone(),
        format!("sym^{k}({e})"),
        weights,
        transitions,
    ))
}

/// `Hom(E, F) = F (x) E^*`; the entry sending `e_s` to `f_t` has index `t * rank(E) + s`.
pub fn hom(e: &Sheaf, f: &Sheaf) -> Result<Sheaf> {
    Ok(tensor(f, &dual(e))?.with_label(format!("Hom({e}, {f})")))
}

pub fn twist(e: &Sheaf, d: &[i64]) -> Result<Sheaf> {
    let degs: Vec<String> = d.iter().map(i64::to_string).collect();
    let label = format!("{e}({})", degs.join(","));
    Ok(tensor(e, &line_bundle(e.variety(), d)?)?.with_label(label))
}

/// `Omega^p`, frames are `p`-subsets of the cotangent frame.
pub fn omega(v: &Variety, p: usize) -> Result<Sheaf> {
    let label = match p {
        0 => "O".to_string(),
        _ => format!("Omega^{p}"),
    };
    Ok(wedge_power(&cotangent(v), p)?.with_label(label))
}

pub fn canonical(v: &Variety) -> Sheaf {
    omega(v, v.dim())
        .expect("dim equals the cotangent rank")
        .with_label("omega")
}

/// Sign and index helpers shared by the exterior pairings.
pub fn wedge_index(rank: usize, p: usize, q: usize) -> Vec<(usize, usize, usize, bool)> {
    let sp = subsets(rank, p);
    let sq = subsets(rank, q);
    let spq = subsets(rank, p + q);
    let pos: std::collections::HashMap<&Vec<usize>, usize> =
        spq.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = Vec::new();
    for (i, s) in sp.iter().enumerate() {
        for (j, t) in sq.iter().enumerate() {
            if let Some(neg) = merge_sign(s, t) {
                let u = crate::polyalg::merge(s, t);
                out.push((pos[&u], i, j, neg));
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TransitionDoc {
    from: usize,
    to: usize,
    entries: Vec<Vec<Vec<(Vec<i64>, String)>>>,
}

#[derive(Serialize, Deserialize)]
struct SheafDoc {
    variety: Variety,
    rank: usize,
    label: String,
    frame_weights: Vec<Vec<Vec<i64>>>,
    transitions: Vec<TransitionDoc>,
}

impl Serialize for Sheaf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.charts();
        let mut transitions = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if c == d {
                    continue;
                }
                let entries = self
                    .transition(c, d)
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|p| {
                                p.terms()
                                    .map(|(e, x)| (e.clone(), scalar::to_text(x)))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                transitions.push(TransitionDoc {
                    from: c,
                    to: d,
                    entries,
                });
            }
        }
        SheafDoc {
            variety: self.variety().clone(),
            rank: self.rank(),
            label: self.label().to_string(),
            frame_weights: self.weights().to_vec(),
            transitions,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sheaf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = SheafDoc::deserialize(d)?;
        sheaf_from_doc(doc).map_err(D::Error::custom)
    }
}

fn sheaf_from_doc(doc: SheafDoc) -> Result<Sheaf> {
    let n = doc.variety.chart_count();
    let r = doc.rank;
    let weights = doc.frame_weights;
    if weights.len() != n || weights.iter().any(|w| w.len() != r) {
        return Err(Error::InvalidSheaf(
            "frame weights do not match rank and charts".into(),
        ));
    }
    let mut transitions: Vec<Vec<Option<ExactMatrix>>> = (0..n).map(|_| vec![None; n]).collect();
    for c in 0..n {
        transitions[c][c] = Some(ExactMatrix::identity(r));
    }
    for t in doc.transitions {
        if t.from >= n
            || t.to >= n
            || t.entries.len() != r
            || t.entries.iter().any(|row| row.len() != r)
        {
            return Err(Error::InvalidSheaf("malformed transition block".into()));
        }
        let mut m = ExactMatrix::zeros(r, r);
        for (a, row) in t.entries.iter().enumerate() {
            for (b, terms) in row.iter().enumerate() {
                match terms.as_slice() {
                    [] => {}
                    [(e, x)] => {
                        let expected = sub(&weights[t.to][b], &weights[t.from][a]);
                        if *e != expected {
                            return Err(Error::InvalidSheaf(format!(
                                "entry ({a},{b}) of transition {}{} has exponent {e:?}, frame weights require {expected:?}",
                                t.from, t.to
                            )));
                        }
                        m.set(a, b, scalar::parse(x)?);
                    }
                    _ => {
                        return Err(Error::InvalidSheaf(
                            "transition entries must be monomials".into(),
                        ))
                    }
                }
            }
        }
        transitions[t.from][t.to] = Some(m);
    }
    let transitions = transitions
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidSheaf("missing transition".into()))?;
    Sheaf::new(doc.variety, doc.label, weights, transitions)
}

impl Sheaf {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sheaf serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SheafDoc = serde_json::from_str(s).map_err(|e| Error::Serde(e.to_string()))?;
        sheaf_from_doc(doc)
    }

    /// Re-runs the construction checks (cocycle condition and regularity).
    pub fn validate(&self) -> Result<()> {
        let d = &self.0;
        Sheaf::new(
            d.variety.clone(),
            d.label.clone(),
            d.weights.clone(),
            d.transitions.clone(),
        )
        .map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{product, projective_space};

    #[test]
    fn cotangent_of_p1_is_o_minus_two() {
        let p1 = projective_space(1).unwrap();
        let om = cotangent(&p1);
        om.validate().unwrap();
        // G_01 = X_0 d/dX_1 (X_0/X_1) = -X_0^2/X_1^2, i.e. d(1/x) = -x^-2 dx
        let g = om.transition(0, 1);
        assert_eq!(g[0][0], LaurentPoly::monomial(vec![2, -2], scalar::int(-1)));
        let o2 = line_bundle(&p1, &[-2]).unwrap();
        assert_eq!(
            o2.transition(0, 1)[0][0],
            LaurentPoly::monomial(vec![2, -2], scalar::int(1))
        );
    }

    #[test]
    fn canonical_of_p2_is_determinant() {
        let p2 = projective_space(2).unwrap();
        let w = canonical(&p2);
        w.validate().unwrap();
        assert_eq!(w.rank(), 1);
        for c in 0..3 {
            for d in 0..3 {
                let g = &w.transition(c, d)[0][0];
                let (e, _) = g.as_monomial().unwrap();
                let o3 = &line_bundle(&p2, &[-3]).unwrap().transition(c, d)[0][0];
                assert_eq!(e, o3.as_monomial().unwrap().0);
            }
        }
    }

    #[test]
    fn sheaf_ops_satisfy_cocycle_condition() {
        let p2 = projective_space(2).unwrap();
        let om = cotangent(&p2);
        let t = tangent(&p2);
        for s in [
            tensor(&om, &t).unwrap(),
            wedge_power(&om, 2).unwrap(),
            sym_power(&t, 2).unwrap(),
            direct_sum(&om, &line_bundle(&p2, &[1]).unwrap()).unwrap(),
            hom(&om, &tensor(&om, &om).unwrap()).unwrap(),
        ] {
            s.validate().unwrap();
        }
        assert!(matches!(wedge_power(&om, 3), Err(Error::RankExceeded(_))));
    }

    #[test]
    fn double_dual_is_identity() {
        let p2 = projective_space(2).unwrap();
        let om = cotangent(&p2);
        assert!(dual(&dual(&om)).same_data(&om));
    }

    #[test]
    fn product_cotangent_is_block_diagonal() {
        let p1 = projective_space(1).unwrap();
        let q = product(&p1, &p1);
        let om = cotangent(&q);
        om.validate().unwrap();
        for c in 0..4 {
            for d in 0..4 {
                let m = om.scalar_transition(c, d);
                assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero());
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p2 = projective_space(2).unwrap();
        let s = twist(&cotangent(&p2), &[1]).unwrap();
        let text = s.to_json();
        let back = Sheaf::from_json(&text).unwrap();
        assert!(back.same_data(&s));
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_rejects_broken_cocycle() {
        let p1 = projective_space(1).unwrap();
        let s = line_bundle(&p1, &[1]).unwrap();
        let text = s.to_json().replace("\"1\"]", "\"2\"]");
        assert!(Sheaf::from_json(&text).is_err());
    }
}
