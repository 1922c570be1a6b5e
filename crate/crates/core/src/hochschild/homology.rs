use std::collections::HashMap;

use num_traits::Zero;

use crate::cech::subsets;
use crate::error::Result;
use crate::hochschild::bar::{add_exp, hkr_chain, hochschild_boundary, BarChain, BarKey};
use crate::hochschild::cochain::{contraction, hkr_cochain};
use crate::hochschild::slot_tuples;
use crate::polyalg::sparse::{self, Echelon, SparseVec};
use crate::polyalg::{ExactMatrix, Exponent, ExteriorElement, ExteriorKind, LaurentPoly};
use crate::scalar;

/// Basis of the Hochschild chains `A (x) Abar^{(x) i}` of multidegree `m`.
pub fn chain_basis(nvars: usize, i: usize, m: &[i64]) -> Vec<BarKey> {
    let total: i64 = m.iter().sum();
    slot_tuples(nvars, i, total)
        .into_iter()
        .filter_map(|t| {
            let input = t.iter().fold(vec![0; nvars], |a, e| add_exp(&a, e));
            let left: Exponent = m.iter().zip(&input).map(|(a, b)| a - b).collect();
            left.iter().all(|&x| x >= 0).then(|| BarKey {
                left,
                slots: t,
                right: vec![0; nvars],
            })
        })
        .collect()
}

fn key_chain(nvars: usize, k: &BarKey) -> BarChain {
    let mut c = BarChain::zero(nvars, k.slots.len());
    c.add_term(k.clone(), scalar::one());
    c
}

fn coordinates(basis: &[BarKey], c: &BarChain) -> SparseVec {
    let pos: HashMap<&BarKey, usize> = basis.iter().enumerate().map(|(j, k)| (k, j)).collect();
    c.terms().iter().map(|(k, x)| (pos[k], x.clone())).collect()
}

/// Boundaries of the basis chains of length `i`, in coordinates of length `i - 1`.
fn boundary_columns(nvars: usize, i: usize, m: &[i64]) -> Result<Vec<SparseVec>> {
    if i == 0 {
        return Ok(Vec::new());
    }
    let tgt = chain_basis(nvars, i - 1, m);
    chain_basis(nvars, i, m)
        .iter()
        .map(|k| {
            Ok(coordinates(
                &tgt,
                &hochschild_boundary(&key_chain(nvars, k))?,
            ))
        })
        .collect()
}

/// `dim HH_i` in multidegree `m`.
pub fn homology_dim(nvars: usize, i: usize, m: &[i64]) -> Result<usize> {
    let dim = chain_basis(nvars, i, m).len();
    let out_rank = sparse::rank(boundary_columns(nvars, i, m)?);
    let in_rank = sparse::rank(boundary_columns(nvars, i + 1, m)?);
    Ok(dim - out_rank - in_rank)
}

/// Cycles of length `i` and multidegree `m` whose classes form a basis of homology.
pub fn homology_basis(nvars: usize, i: usize, m: &[i64]) -> Result<Vec<BarChain>> {
    let basis = chain_basis(nvars, i, m);
    let cycles = sparse::kernel(&boundary_columns(nvars, i, m)?);
    let cycles: Vec<SparseVec> = if i == 0 {
        (0..basis.len())
            .map(|j| [(j, scalar::one())].into())
            .collect()
    } else {
        cycles
    };
    let mut span = Echelon::new(false);
    for b in boundary_columns(nvars, i + 1, m)? {
        span.insert(b);
    }
    let mut out = Vec::new();
    for z in cycles {
        if let sparse::Inserted::Pivot(_) = span.insert(z.clone()) {
            let mut c = BarChain::zero(nvars, i);
            for (j, x) in z {
                c.add_term(basis[j].clone(), x);
            }
            out.push(c);
        }
    }
    Ok(out)
}

/// `dim Omega^i` in multidegree `m`: the number of `x^a dx_S` with `a + e_S = m`.
pub fn form_dim(nvars: usize, i: usize, m: &[i64]) -> usize {
    subsets(nvars, i)
        .iter()
        .filter(|s| (0..nvars).all(|j| m[j] - i64::from(s.contains(&j)) >= 0))
        .count()
}

/// `(kills boundaries, rank of the induced map on homology)` for the HKR
/// chain map in length `i` and multidegree `m`.
pub fn hkr_chain_on_homology(nvars: usize, i: usize, m: &[i64]) -> Result<(bool, usize)> {
    let kills = chain_basis(nvars, i + 1, m)
        .iter()
        .map(|k| hkr_chain(&hochschild_boundary(&key_chain(nvars, k))?))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(ExteriorElement::is_zero);
    let forms: Vec<(Vec<usize>, Exponent)> = subsets(nvars, i)
        .into_iter()
        .filter_map(|s| {
            let a: Exponent = (0..nvars)
                .map(|j| m[j] - i64::from(s.contains(&j)))
                .collect();
            a.iter().all(|&x| x >= 0).then_some((s, a))
        })
        .collect();
    let images: Vec<SparseVec> = homology_basis(nvars, i, m)?
        .iter()
        .map(|c| {
            let w = hkr_chain(c)?;
            Ok(forms
                .iter()
                .enumerate()
                .map(|(j, (s, a))| (j, w.component(s).coeff(a)))
                .filter(|(_, x)| !x.is_zero())
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok((kills, sparse::rank(images)))
}

/// Gram matrix of the pairing between the HKR cochains of `d_S` and a basis
/// of `HH_i` in multidegree `m`. Row `S` reads the coefficient of `x^{m - e_S}`
/// in the `A`-valued contraction, so the matrix is square and its
/// invertibility is the degree-`m` part of the perfectness over `A`.
pub fn gram_matrix(nvars: usize, i: usize, m: &[i64]) -> Result<ExactMatrix> {
    let cap: i64 = m.iter().sum();
    let rows: Vec<(Vec<usize>, Exponent)> = subsets(nvars, i)
        .into_iter()
        .filter_map(|s| {
            let a: Exponent = (0..nvars)
                .map(|j| m[j] - i64::from(s.contains(&j)))
                .collect();
            a.iter().all(|&x| x >= 0).then_some((s, a))
        })
        .collect();
    let cols = homology_basis(nvars, i, m)?;
    let mut g = ExactMatrix::zeros(rows.len(), cols.len());
    for (r, (s, a)) in rows.iter().enumerate() {
        let p =
            ExteriorElement::basis(ExteriorKind::Polyvector, nvars, s, LaurentPoly::one(nvars))?;
        let f = hkr_cochain(&p, cap)?;
        for (c, z) in cols.iter().enumerate() {
            g.set(r, c, contraction(&f, z)?.coeff(a));
        }
    }
    Ok(g)
}
