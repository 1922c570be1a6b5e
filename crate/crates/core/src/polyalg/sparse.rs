//! Sparse exact elimination for the large but very sparse coboundary
//! matrices of the Čech and bar complexes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

pub type SparseVec = BTreeMap<usize, ExactScalar>;

pub fn axpy(y: &mut SparseVec, a: &ExactScalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(ExactScalar::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

pub fn scale(x: &SparseVec, a: &ExactScalar) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, v * a)).collect()
}

/// An echelon basis built by inserting vectors one at a time.
///
/// The stored row with pivot `p` has `p` as its smallest index. With tracking
/// on, every row also remembers how it was formed from the inserted vectors,
/// which gives particular solutions and kernel relations.
#[derive(Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    track: bool,
    inserted: usize,
}

pub enum Inserted {
    Pivot(usize),
    /// Coefficients `c` over the inserted vectors with `sum c_i v_i = 0`.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Self {
            rows: BTreeMap::new(),
            track,
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    /// Returns `(residual, combination)` with `v = sum_i combination_i v_i + residual`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut comb = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let (row, rc) = &self.rows[&k];
            axpy(&mut v, &-c.clone(), row);
            if self.track {
                axpy(&mut comb, &c, rc);
            }
            cursor = k + 1;
        }
        (v, comb)
    }

    pub fn insert(&mut self, v: SparseVec) -> Inserted {
        let id = self.inserted;
        self.inserted += 1;
        let (res, comb) = self.reduce(&v);
        let mut formed = SparseVec::new();
        if self.track {
            formed = scale(&comb, &-ExactScalar::one());
            formed.insert(id, ExactScalar::one());
        }
        match res.iter().next() {
            None => Inserted::Dependent(formed),
            Some((&p, lead)) => {
                let inv = ExactScalar::one() / lead;
                let row = scale(&res, &inv);
                let formed = scale(&formed, &inv);
                self.rows.insert(p, (row, formed));
                Inserted::Pivot(p)
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Coefficients `x` with `sum_j x_j columns_j = target`, or `None`.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::new(true);
    for c in columns {
        e.insert(c.clone());
    }
    let (res, comb) = e.reduce(target);
    res.is_empty().then_some(comb)
}

/// A basis of relations among `columns` (the kernel of the matrix they form).
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for c in columns {
        if let Inserted::Dependent(rel) = e.insert(c.clone()) {
            out.push(rel);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    fn combine(columns: &[SparseVec], x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in x {
            axpy(&mut acc, c, &columns[*j]);
        }
        acc
    }

    #[test]
    fn solve_and_kernel() {
        let cols = vec![
            sv(&[(0, 1), (1, 1)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 1), (2, -1)]),
            sv(&[(3, 2)]),
        ];
        let target = sv(&[(0, 2), (1, 3), (2, 1), (3, 4)]);
        let x = solve(&cols, &target).unwrap();
        assert_eq!(combine(&cols, &x), target);
        assert!(solve(&cols, &sv(&[(0, 1)])).is_none());
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        assert!(combine(&cols, &k[0]).is_empty());
        assert_eq!(rank(cols), 3);
    }
}
