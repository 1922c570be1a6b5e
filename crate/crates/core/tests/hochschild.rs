use hochrr::cech::subsets;
use hochrr::hochschild::*;
use hochrr::polyalg::{
    canonical_pairing, wedge, Exponent, ExteriorElement, ExteriorKind, LaurentPoly,
};
use hochrr::scalar::{factorial, frac, int, one};
use num_traits::Zero;
use proptest::prelude::*;

fn pv(n: usize, s: &[usize], coeff: Exponent) -> ExteriorElement {
    ExteriorElement::basis(
        ExteriorKind::Polyvector,
        n,
        s,
        LaurentPoly::monomial(coeff, one()),
    )
    .unwrap()
}

fn unit(n: usize, j: usize) -> Exponent {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

fn boxes(n: usize, lo: i64, hi: i64) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[test]
fn bar_differential_squares_to_zero() {
    for n in 1..=2 {
        for len in 2..=3 {
            for t in slot_tuples(n, len, 4) {
                for left in monomials_up_to(n, 0, 1) {
                    let c = BarChain::generator(left, t.clone(), vec![0; n], one()).unwrap();
                    let dd = bar_differential(&bar_differential(&c).unwrap()).unwrap();
                    assert!(dd.is_zero(), "{c}");
                }
            }
        }
    }
    let (x, y, z) = (unit(3, 0), unit(3, 1), unit(3, 2));
    let c = BarChain::generator(vec![0; 3], vec![x, y, z], vec![0; 3], one()).unwrap();
    assert!(bar_differential(&bar_differential(&c).unwrap())
        .unwrap()
        .is_zero());
}

#[test]
fn koszul_complex_resolves_the_diagonal() {
    for n in 1..=3 {
        let k = koszul_complex(n).unwrap();
        for d in 0..=3 {
            for m in monomials_of_degree(n, d) {
                for i in 2..=n {
                    let prod = k
                        .differential(i - 1, &m)
                        .unwrap()
                        .mul(&k.differential(i, &m).unwrap())
                        .unwrap();
                    assert!(prod.is_zero());
                }
                for i in 1..=n {
                    assert_eq!(k.homology_dim(i, &m).unwrap(), 0, "n={n} i={i} m={m:?}");
                }
            }
            assert_eq!(
                k.homology_dim_total(0, d).unwrap(),
                monomials_of_degree(n, d).len()
            );
        }
    }
}

#[test]
fn comparison_map_is_a_chain_map() {
    for n in 1..=3 {
        for i in 1..=n {
            for s in subsets(n, i) {
                for left in monomials_up_to(n, 0, 1) {
                    for right in monomials_up_to(n, 0, 1) {
                        let k =
                            KoszulElement::generator(left.clone(), right.clone(), s.clone(), one())
                                .unwrap();
                        let lhs = bar_differential(&comparison_phi(&k)).unwrap();
                        let rhs = comparison_phi(&koszul_differential(&k).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn hkr_cochains_are_cocycles_and_invert_the_comparison() {
    for n in 1..=3 {
        for i in 0..=n.min(3) {
            for p in polyvector_basis(n, i, 1) {
                let f = hkr_cochain(&p, 4).unwrap();
                assert!(f.is_cocycle(), "{p:?}");
                for s in subsets(n, i) {
                    let k =
                        KoszulElement::generator(vec![0; n], vec![0; n], s.clone(), one()).unwrap();
                    let chain = comparison_phi(&k).collapse();
                    let lhs = contraction(&f, &chain).unwrap();
                    let v = ExteriorElement::basis(ExteriorKind::Form, n, &s, LaurentPoly::one(n))
                        .unwrap();
                    let rhs = canonical_pairing(&p, &v).unwrap().scale(&factorial(i));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn hkr_examples() {
    let f = hkr_cochain(&pv(1, &[0], vec![0]), 3).unwrap();
    assert_eq!(
        f.eval(&[vec![2]]).unwrap(),
        LaurentPoly::monomial(vec![1], int(2))
    );
    let g = hkr_cochain(&pv(2, &[0, 1], vec![0, 0]), 3).unwrap();
    assert_eq!(
        g.eval(&[unit(2, 0), unit(2, 1)]).unwrap(),
        LaurentPoly::one(2)
    );
    assert_eq!(
        g.eval(&[unit(2, 1), unit(2, 0)]).unwrap(),
        -&LaurentPoly::one(2)
    );
    let c = BarChain::hochschild(vec![0, 0], vec![unit(2, 0), unit(2, 1)], one()).unwrap();
    assert_eq!(pairing(&g, &c).unwrap(), one());
    let c = BarChain::hochschild(vec![0, 0], vec![unit(2, 1), unit(2, 0)], one()).unwrap();
    assert_eq!(pairing(&g, &c).unwrap(), -one());
}

#[test]
fn dual_bar_cohomology_matches_polyvectors() {
    for n in 1..=3 {
        for w in boxes(n, -1, 1) {
            for i in 0..=3 {
                assert_eq!(
                    cohomology_dim(n, i, 4, &w),
                    polyvector_dim(n, i, &w),
                    "n={n} i={i} w={w:?}"
                );
            }
        }
    }
}

#[test]
fn hkr_chain_is_an_isomorphism_on_homology() {
    for n in 1..=2 {
        for d in 0..=3 {
            for m in monomials_of_degree(n, d) {
                for i in 0..=n {
                    let h = homology_dim(n, i, &m).unwrap();
                    assert_eq!(h, form_dim(n, i, &m), "n={n} i={i} m={m:?}");
                    let (kills, rank) = hkr_chain_on_homology(n, i, &m).unwrap();
                    assert!(kills);
                    assert_eq!(rank, h);
                }
            }
        }
    }
}

#[test]
fn hkr_chain_kills_boundaries_in_three_variables() {
    for m in monomials_up_to(3, 1, 4) {
        for i in 0..=2 {
            assert!(hkr_chain_on_homology(3, i, &m).unwrap().0);
        }
    }
}

#[test]
fn gram_matrices_are_invertible() {
    for d in 0..=3 {
        for m in monomials_of_degree(2, d) {
            for i in 0..=2 {
                let g = gram_matrix(2, i, &m).unwrap();
                assert_eq!(g.rows(), g.cols(), "i={i} m={m:?}");
                if g.rows() > 0 {
                    assert!(!g.determinant().unwrap().is_zero(), "i={i} m={m:?}");
                }
            }
        }
    }
}

fn polyvector_pairs(n: usize, max_total: usize) -> Vec<(ExteriorElement, ExteriorElement)> {
    let mut out = Vec::new();
    for a in 0..=max_total {
        for b in 0..=max_total - a {
            for p in polyvector_basis(n, a, 0) {
                for q in polyvector_basis(n, b, 0) {
                    out.push((p.clone(), q));
                }
            }
        }
    }
    out
}

#[test]
fn cup_product_matches_the_normalized_wedge() {
    // the antisymmetrization in the HKR formula is unnormalized, so the cup
    // product of two HKR cochains is (a! b! / (a+b)!) hkr(a ^ b) up to coboundary
    for (p, q) in polyvector_pairs(2, 3) {
        let (a, b) = (p.degrees()[0], q.degrees()[0]);
        let pq = wedge(&p, &q).unwrap();
        let cup = cup_product(&hkr_cochain(&p, 4).unwrap(), &hkr_cochain(&q, 4).unwrap()).unwrap();
        let factor = factorial(a) * factorial(b) / factorial(a + b);
        let rhs = if pq.is_zero() {
            HochschildCochain::zero(2, a + b, 4)
        } else {
            hkr_cochain(&pq, 4).unwrap().scale(&factor)
        };
        assert!(
            cup.sub(&rhs).unwrap().is_coboundary().unwrap(),
            "{p:?} {q:?}"
        );
    }
}

#[test]
fn cup_of_two_vector_fields_is_half_the_bivector() {
    let fx = hkr_cochain(&pv(2, &[0], vec![0, 0]), 4).unwrap();
    let fy = hkr_cochain(&pv(2, &[1], vec![0, 0]), 4).unwrap();
    let fxy = hkr_cochain(&pv(2, &[0, 1], vec![0, 0]), 4).unwrap();
    let cup = cup_product(&fx, &fy).unwrap();
    assert_eq!(
        cup.eval(&[unit(2, 0), unit(2, 1)]).unwrap(),
        LaurentPoly::one(2)
    );
    assert!(!cup.sub(&fxy).unwrap().is_coboundary().unwrap());
    assert!(cup
        .sub(&fxy.scale(&frac(1, 2)))
        .unwrap()
        .is_coboundary()
        .unwrap());
}

#[test]
fn cup_bracket_of_vector_fields_is_antisymmetric() {
    let n = 2;
    let fields: Vec<ExteriorElement> = polyvector_basis(n, 1, 1);
    for p in &fields {
        for q in &fields {
            let f = hkr_cochain(p, 4).unwrap();
            let g = hkr_cochain(q, 4).unwrap();
            let sym = cup_product(&f, &g)
                .unwrap()
                .add(&cup_product(&g, &f).unwrap())
                .unwrap();
            let h = sym
                .coboundary_preimage()
                .unwrap()
                .expect("symmetric part is exact");
            assert_eq!(h.differential(), sym);
        }
    }
}

#[test]
fn action_examples() {
    let fx = hkr_cochain(&pv(2, &[0], vec![0, 0]), 4).unwrap();
    let c = BarChain::hochschild(vec![0, 0], vec![unit(2, 0)], one()).unwrap();
    let full = action_d(&fx, &c).unwrap();
    assert_eq!(
        full,
        BarChain::hochschild(vec![0, 0], vec![], one()).unwrap()
    );
    let c2 = BarChain::hochschild(vec![0, 0], vec![unit(2, 0), unit(2, 1)], one()).unwrap();
    assert_eq!(
        action_d(&fx, &c2).unwrap(),
        BarChain::hochschild(vec![0, 0], vec![unit(2, 1)], one()).unwrap()
    );
    let two = HochschildCochain::from_fn(2, 2, 4, |_| LaurentPoly::one(2));
    assert!(action_d(&two, &c).is_err());
}

fn chain_strategy() -> impl Strategy<Value = BarChain> {
    let slot = prop::collection::vec(0i64..=1, 2)
        .prop_filter("nonconstant", |e| e.iter().sum::<i64>() > 0);
    let term = (
        prop::collection::vec(0i64..=1, 2),
        prop::collection::vec(slot, 3),
        prop::collection::vec(0i64..=1, 2),
        -3i64..=3,
    );
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut c = BarChain::zero(2, 3);
        for (l, s, r, x) in terms {
            c = c
                .add(&BarChain::generator(l, s, r, int(x)).unwrap())
                .unwrap();
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bar_d_squared_vanishes(c in chain_strategy()) {
        let dd = bar_differential(&bar_differential(&c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn hkr_chain_kills_random_boundaries(c in chain_strategy()) {
        let b = hochschild_boundary(&c).unwrap();
        prop_assert!(hkr_chain(&b).unwrap().is_zero());
    }

    #[test]
    fn pairing_is_bilinear(c in chain_strategy(), d in chain_strategy(), k in -3i64..=3) {
        let fx = hkr_cochain(&pv(2, &[0], vec![0, 0]), 6).unwrap();
        let fxy = hkr_cochain(&pv(2, &[0, 1], vec![1, 0]), 6).unwrap();
        let f = cup_product(&fxy, &fx).unwrap();
        let lhs = pairing(&f, &c.scale(&int(k)).add(&d).unwrap()).unwrap();
        let rhs = pairing(&f, &c).unwrap() * int(k) + pairing(&f, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
