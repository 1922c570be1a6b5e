//! The affine model: reduced bar and Koszul resolutions of `k[x_1..x_n]`,
//! the HKR maps, cup product, the action on chains and the pairing.
//!
//! Everything is graded by polynomial multidegree. Cochains are truncated by
//! total input degree, which is compatible with the differential.

mod bar;
mod cochain;
mod homology;
mod koszul;

pub use bar::{bar_differential, hkr_chain, hochschild_boundary, BarChain, BarKey};
pub use cochain::{
    action_d, cohomology_dim, contraction, cup_product, hkr_cochain, pairing, polyvector_basis,
    polyvector_dim, weight_basis, HochschildCochain,
};
pub use homology::{
    chain_basis, form_dim, gram_matrix, hkr_chain_on_homology, homology_basis, homology_dim,
};
pub use koszul::{
    comparison_phi, koszul_complex, koszul_differential, KoszulComplex, KoszulElement, KoszulKey,
};

use crate::polyalg::Exponent;

/// Monomials of total degree exactly `d`, in lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Exponent> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for rest in monomials_of_degree(nvars - 1, d - first) {
            let mut e = vec![first];
            e.extend(rest);
            out.push(e);
        }
    }
    out
}

/// Monomials with total degree in `lo..=hi`.
pub fn monomials_up_to(nvars: usize, lo: i64, hi: i64) -> Vec<Exponent> {
    (lo.max(0)..=hi)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .collect()
}

/// Tuples of `i` nonconstant monomials with total degree at most `cap`.
pub fn slot_tuples(nvars: usize, i: usize, cap: i64) -> Vec<Vec<Exponent>> {
    if i == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // each remaining slot needs degree at least 1
    for first in monomials_up_to(nvars, 1, cap - (i as i64 - 1)) {
        let d: i64 = first.iter().sum();
        for rest in slot_tuples(nvars, i - 1, cap - d) {
            let mut t = vec![first.clone()];
            t.extend(rest);
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(slot_tuples(2, 2, 2).len(), 4);
        assert_eq!(slot_tuples(1, 3, 2).len(), 0);
        assert_eq!(slot_tuples(2, 0, 0), vec![Vec::<Exponent>::new()]);
    }
}
