use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// Dense matrix over exact rationals, stored row-major.
///
/// Elimination always pivots on the first nonzero entry found scanning
/// columns left to right and rows top to bottom, so reduced forms, kernel
/// bases and particular solutions are reproducible.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "scalar::text_vec")]
    data: Vec<ExactScalar>,
}

/// Reduced row echelon form together with the pivot columns.
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: ExactScalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Kronecker product; row index of `A (x) B` is `i * B.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = ExactScalar::one() / m.get(r, c);
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = m.get(r, j) * &f;
                    if !sub.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<ExactScalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![ExactScalar::zero(); self.cols];
            v[free] = ExactScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left null space (row vectors `y` with `y M = 0`).
    pub fn left_kernel(&self) -> Vec<Vec<ExactScalar>> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> Result<ExactScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let mut det = ExactScalar::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(ExactScalar::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..m.cols {
                    let sub = m.get(c, j) * &f;
                    let idx = i * m.cols + j;
                    m.data[idx] -= sub;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, ExactScalar::one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return Ok(None);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(Some(matrix.submatrix(&rows, &cols)))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(scalar::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One exact solution of `M x = v`, or `None` when the system is inconsistent.
///
/// Free variables are set to zero, so the answer is a fixed function of the input.
pub fn solve_linear(m: &ExactMatrix, v: &[ExactScalar]) -> Result<Option<Vec<ExactScalar>>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right side has length {}, matrix has {} rows",
            v.len(),
            m.rows
        )));
    }
    let mut aug = ExactMatrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, v[i].clone());
    }
    let Rref { matrix, pivots } = aug.rref();
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![ExactScalar::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = matrix.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn identity_solve() {
        let x = solve_linear(&ExactMatrix::identity(2), &[int(1), int(2)]).unwrap();
        assert_eq!(x, Some(vec![int(1), int(2)]));
    }

    #[test]
    fn inconsistent_solve() {
        let m = ExactMatrix::from_i64(&[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(solve_linear(&m, &[int(1), int(3)]).unwrap(), None);
        assert!(matches!(
            solve_linear(&m, &[int(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = ExactMatrix::from_i64(&[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(1));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2));
        let sing = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(sing.inverse().unwrap(), None);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    fn lcg(seed: &mut u64) -> i64 {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*seed >> 33) % 7) as i64 - 3
    }

    #[test]
    fn rank_fifteen_system_has_exact_solution() {
        let mut seed = 7u64;
        let left: Vec<Vec<i64>> = (0..20)
            .map(|_| (0..15).map(|_| lcg(&mut seed)).collect())
            .collect();
        let right: Vec<Vec<i64>> = (0..15)
            .map(|_| (0..30).map(|_| lcg(&mut seed)).collect())
            .collect();
        let l = ExactMatrix::from_rows(
            left.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap();
        let r = ExactMatrix::from_rows(
            right
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap();
        let m = l.mul(&r).unwrap();
        assert_eq!(m.rank(), 15);
        let x0: Vec<ExactScalar> = (0..30).map(|_| int(lcg(&mut seed))).collect();
        let v = m.mul_vec(&x0).unwrap();
        let x = solve_linear(&m, &v)
            .unwrap()
            .expect("consistent by construction");
        assert_eq!(m.mul_vec(&x).unwrap(), v);
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..=2, r * c).prop_map(move |d| {
                ExactMatrix::from_rows(
                    d.chunks(c)
                        .map(|row| row.iter().map(|&x| int(x)).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn solve_agrees_with_rank_test(m in arb_matrix(), seed in any::<u64>()) {
            let mut s = seed;
            let v: Vec<ExactScalar> = (0..m.rows()).map(|_| int(lcg(&mut s))).collect();
            let mut aug = ExactMatrix::zeros(m.rows(), m.cols() + 1);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    aug.set(i, j, m.get(i, j).clone());
                }
                aug.set(i, m.cols(), v[i].clone());
            }
            let consistent = m.rank() == aug.rank();
            match solve_linear(&m, &v).unwrap() {
                Some(x) => {
                    prop_assert!(consistent);
                    prop_assert_eq!(m.mul_vec(&x).unwrap(), v);
                }
                None => prop_assert!(!consistent),
            }
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        }
    }
}
