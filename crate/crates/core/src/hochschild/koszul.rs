use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::cech::subsets;
use crate::error::{Error, Result};
use crate::hochschild::bar::{BarChain, BarKey};
use crate::hochschild::monomials_of_degree;
use crate::polyalg::{sort_sign, ExactMatrix, Exponent};
use crate::scalar::{self, ExactScalar};

/// `x^left (x) x^right (x) v_S` in `Lambda^i V (x) A (x) A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoszulKey {
    pub left: Exponent,
    pub right: Exponent,
    pub wedge: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<KoszulKey, ExactScalar>,
}

impl KoszulElement {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `c * (x^left (x) x^right) v_{wedge}`; `wedge` must be strictly increasing.
    pub fn generator(
        left: Exponent,
        right: Exponent,
        wedge: Vec<usize>,
        c: ExactScalar,
    ) -> Result<Self> {
        let n = left.len();
        if right.len() != n
            || wedge.iter().any(|&s| s >= n)
            || wedge.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::DomainViolation(format!(
                "bad Koszul generator {left:?} {right:?} {wedge:?}"
            )));
        }
        let mut out = Self::zero(n, wedge.len());
        out.add_term(KoszulKey { left, right, wedge }, c);
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<KoszulKey, ExactScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: KoszulKey, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(key.clone())
            .or_insert_with(ExactScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DegreeMismatch(
                "Koszul elements of different shape".into(),
            ));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }
}

/// `d(v_S) = sum_k (-1)^k (x_{s_k} (x) 1 - 1 (x) x_{s_k}) v_{S - s_k}`, extended `A (x) A`-linearly.
pub fn koszul_differential(k: &KoszulElement) -> Result<KoszulElement> {
    if k.degree == 0 {
        return Err(Error::DegreeMismatch(
            "the Koszul differential needs exterior degree at least 1".into(),
        ));
    }
    let mut out = KoszulElement::zero(k.nvars, k.degree - 1);
    for (key, c) in &k.terms {
        for (pos, &s) in key.wedge.iter().enumerate() {
            let mut rest = key.wedge.clone();
            rest.remove(pos);
            let sign = scalar::pm_one(pos % 2 == 1);
            let mut l = key.left.clone();
            l[s] += 1;
            let mut r = key.right.clone();
            r[s] += 1;
            out.add_term(
                KoszulKey {
                    left: l,
                    right: key.right.clone(),
                    wedge: rest.clone(),
                },
                c * &sign,
            );
            out.add_term(
                KoszulKey {
                    left: key.left.clone(),
                    right: r,
                    wedge: rest,
                },
                -(c * &sign),
            );
        }
    }
    Ok(out)
}

/// The Koszul resolution of `A = k[x_1..x_n]` over `A (x) A`, one total
/// multidegree at a time. The multidegree of `x^l (x) x^r v_S` is `l + r + e_S`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    nvars: usize,
}

pub fn koszul_complex(nvars: usize) -> Result<KoszulComplex> {
    if nvars == 0 {
        return Err(Error::DomainViolation(
            "the Koszul complex needs at least one variable".into(),
        ));
    }
    Ok(KoszulComplex { nvars })
}

impl KoszulComplex {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self, i: usize, multidegree: &[i64]) -> Vec<KoszulKey> {
        let n = self.nvars;
        let mut out = Vec::new();
        for s in subsets(n, i) {
            let mut rest = multidegree.to_vec();
            for &x in &s {
                rest[x] -= 1;
            }
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            // split rest = left + right coordinatewise
            let mut splits: Vec<Exponent> = vec![vec![]];
            for &r in &rest {
                splits = splits
                    .into_iter()
                    .flat_map(|p| (0..=r).map(move |a| [p.clone(), vec![a]].concat()))
                    .collect();
            }
            for left in splits {
                let right = rest.iter().zip(&left).map(|(r, l)| r - l).collect();
                out.push(KoszulKey {
                    left,
                    right,
                    wedge: s.clone(),
                });
            }
        }
        out
    }

    /// Matrix of `d: K_i -> K_{i-1}` in the given multidegree, columns indexed by `basis(i)`.
    pub fn differential(&self, i: usize, multidegree: &[i64]) -> Result<ExactMatrix> {
        let src = self.basis(i, multidegree);
        let tgt = self.basis(
            i.checked_sub(1)
                .ok_or_else(|| Error::DegreeMismatch("d_0".into()))?,
            multidegree,
        );
        let pos: HashMap<&KoszulKey, usize> = tgt.iter().enumerate().map(|(j, k)| (k, j)).collect();
        let mut m = ExactMatrix::zeros(tgt.len(), src.len());
        for (col, key) in src.iter().enumerate() {
            let el = KoszulElement::generator(
                key.left.clone(),
                key.right.clone(),
                key.wedge.clone(),
                scalar::one(),
            )?;
            for (k, c) in koszul_differential(&el)?.terms() {
                let row = pos[k];
                let v = m.get(row, col) + c;
                m.set(row, col, v);
            }
        }
        Ok(m)
    }

    /// Homology at position `i` in one multidegree.
    pub fn homology_dim(&self, i: usize, multidegree: &[i64]) -> Result<usize> {
        let dim = self.basis(i, multidegree).len();
        let out_rank = if i == 0 {
            0
        } else {
            self.differential(i, multidegree)?.rank()
        };
        let in_rank = if i == self.nvars {
            0
        } else {
            self.differential(i + 1, multidegree)?.rank()
        };
        Ok(dim - out_rank - in_rank)
    }

    /// Homology at position `i` summed over all multidegrees of total degree `d`.
    pub fn homology_dim_total(&self, i: usize, d: i64) -> Result<usize> {
        let mut acc = 0;
        for m in monomials_of_degree(self.nvars, d) {
            acc += self.homology_dim(i, &m)?;
        }
        Ok(acc)
    }
}

/// The antisymmetrization map from the Koszul to the bar resolution,
/// `v_{s_1} ^ .. ^ v_{s_i} -> sum_sigma sgn(sigma) [x_{s_sigma(1)}|..|x_{s_sigma(i)}]`.
pub fn comparison_phi(k: &KoszulElement) -> BarChain {
    let n = k.nvars;
    let mut out = BarChain::zero(n, k.degree);
    for (key, c) in &k.terms {
        for perm in permutations(key.wedge.len()) {
            let order: Vec<usize> = perm.iter().map(|&p| key.wedge[p]).collect();
            let slots = order
                .iter()
                .map(|&s| {
                    let mut e = vec![0; n];
                    e[s] = 1;
                    e
                })
                .collect();
            let sign = scalar::pm_one(sort_sign(&perm));
            let bk = BarKey {
                left: key.left.clone(),
                slots,
                right: key.right.clone(),
            };
            out.add_term(bk, c * sign);
        }
    }
    out
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::bar::bar_differential;

    #[test]
    fn rank_one_complex() {
        let k = koszul_complex(1).unwrap();
        let m = k.differential(1, &[3]).unwrap();
        // K_1 in degree 3: x^a (x) x^b v with a + b = 2; K_0: a + b = 3
        assert_eq!((m.rows(), m.cols()), (4, 3));
        assert_eq!(k.homology_dim(0, &[3]).unwrap(), 1);
        assert_eq!(k.homology_dim(1, &[3]).unwrap(), 0);
    }

    #[test]
    fn phi_in_low_degree() {
        let v1 = KoszulElement::generator(vec![0, 0], vec![0, 0], vec![0], scalar::one()).unwrap();
        let b = comparison_phi(&v1);
        assert_eq!(b.terms().len(), 1);
        let v12 =
            KoszulElement::generator(vec![0, 0], vec![0, 0], vec![0, 1], scalar::one()).unwrap();
        let b = comparison_phi(&v12);
        assert_eq!(b.terms().len(), 2);
        let lhs = bar_differential(&b).unwrap();
        let rhs = comparison_phi(&koszul_differential(&v12).unwrap());
        assert_eq!(lhs, rhs);
    }
}
