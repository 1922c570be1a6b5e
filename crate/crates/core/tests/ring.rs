use hochrr::cech::{
    cotangent, direct_sum, line_bundle, product, projective_space, tangent, BundleMap, Sheaf,
};
use hochrr::charclass::{verify_at_naturality, verify_at_tensor, verify_ch_ring, Geometry};
use hochrr::polyalg::ExactMatrix;
use hochrr::scalar::{frac, int};

fn p2_sheaves() -> (Geometry, Vec<Sheaf>) {
    let v = projective_space(2).unwrap();
    let mut out: Vec<Sheaf> = (-2..=2).map(|a| line_bundle(&v, &[a]).unwrap()).collect();
    out.push(tangent(&v));
    out.push(cotangent(&v));
    (Geometry::new(&v).unwrap(), out)
}

#[test]
fn chern_character_is_a_ring_map() {
    let (g, sheaves) = p2_sheaves();
    for (i, e) in sheaves.iter().enumerate() {
        for f in &sheaves[i..] {
            assert_eq!(verify_ch_ring(&g, e, f).unwrap(), (true, true), "{e} {f}");
        }
    }
}

#[test]
fn atiyah_class_of_a_tensor_product() {
    let (_, sheaves) = p2_sheaves();
    for e in &sheaves {
        for f in [&sheaves[3], &sheaves[5], &sheaves[6]] {
            assert!(verify_at_tensor(e, f).unwrap(), "{e} {f}");
        }
    }
    let p1 = projective_space(1).unwrap();
    let q = product(&p1, &p1);
    let a = line_bundle(&q, &[1, -1]).unwrap();
    assert!(verify_at_tensor(&a, &tangent(&q)).unwrap());
}

#[test]
fn atiyah_class_is_natural() {
    let v = projective_space(2).unwrap();
    let o1 = line_bundle(&v, &[1]).unwrap();
    let o2 = line_bundle(&v, &[2]).unwrap();
    let e = direct_sum(&o1, &o1).unwrap();
    let f = direct_sum(&direct_sum(&o1, &o2).unwrap(), &o1).unwrap();
    let m = ExactMatrix::from_rows(vec![
        vec![int(2), frac(-1, 3)],
        vec![int(0), int(0)],
        vec![int(1), int(5)],
    ])
    .unwrap();
    assert!(verify_at_naturality(&BundleMap::constant(&e, &f, m).unwrap()).unwrap());
    let swap = ExactMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
    let g = direct_sum(&o2, &o1).unwrap();
    let h = direct_sum(&o1, &o2).unwrap();
    assert!(verify_at_naturality(&BundleMap::constant(&g, &h, swap).unwrap()).unwrap());
}
