use hallcx::exactla::{Matrix, PrimeField};
use hallcx::quiverrep::{ModuleKey, Quiver, RepCat, RepMap};
use proptest::prelude::*;

fn a2(p: u32) -> RepCat {
    RepCat::new(Quiver::linear_a(2), PrimeField::new(p).unwrap())
}

fn a3(p: u32) -> RepCat {
    RepCat::new(Quiver::linear_a(3), PrimeField::new(p).unwrap())
}

#[test]
fn hom_examples() {
    let c = a2(2);
    let s1 = c.simple(0);
    let s2 = c.simple(1);
    assert_eq!(c.hom_basis(&s1, &s1).len(), 1);
    assert!(c.hom_basis(&s1, &s2).is_empty());
    assert!(c.hom_basis(&s1, &c.zero_rep()).is_empty());
    // P_2 = S_2 sits inside P_1, and P_1 maps onto S_1
    assert_eq!(c.hom_dim(&c.projective(1), &c.projective(0)), 1);
    assert_eq!(c.hom_dim(&c.projective(0), &s1), 1);
    assert_eq!(c.hom_dim(&c.projective(0), &c.projective(1)), 0);
}

#[test]
fn euler_and_ext() {
    let c = a2(3);
    let s1 = c.simple(0);
    let s2 = c.simple(1);
    assert_eq!(c.euler_form(&[1, 0], &[0, 1]), -1);
    assert_eq!(c.ext1_dim(&s1, &s2).unwrap(), 1);
    assert_eq!(c.ext1_dim(&s2, &s1).unwrap(), 0);
    for k in c.enumerate_iso_classes(&[1, 1]).unwrap() {
        assert_eq!(c.ext1_dim(&c.projective(0), &k).unwrap(), 0);
        assert_eq!(c.ext1_dim(&c.projective(1), &k).unwrap(), 0);
    }
}

#[test]
fn isomorphism_examples() {
    let c = a2(2);
    let zero_map = c.semisimple(&[1, 1]);
    let p1 = c.projective(0);
    assert!(c.is_isomorphic(&p1, &p1).unwrap());
    assert!(!c.is_isomorphic(&p1, &zero_map).unwrap());
    assert!(!c.is_isomorphic(&c.simple(0), &c.simple(1)).unwrap());
    // a rescaled copy of P_1 over F_3 is still P_1
    let c3 = a2(3);
    let scaled = c3.rep_from_entries(vec![1, 1], vec![vec![2]]).unwrap();
    assert!(c3.is_isomorphic(&scaled, &c3.projective(0)).unwrap());
}

#[test]
fn automorphism_counts() {
    let c = a2(2);
    assert_eq!(c.aut_count(&c.simple(0)).unwrap(), 1);
    let ss = c.semisimple(&[2, 0]);
    assert_eq!(c.aut_count(&ss).unwrap(), 6);
    assert_eq!(c.aut_count(&c.projective(0)).unwrap(), 1);
    let c3 = a2(3);
    // End(P_1 ⊕ S_1) has dim 3; automorphisms: (2*2) units on diagonal times 3 for the off part
    let m = c3.direct_sum(&[&c3.projective(0), &c3.simple(0)]);
    assert_eq!(c3.aut_count(&m).unwrap(), 12);
}

#[test]
fn tiny_budget_is_reported() {
    let c = RepCat::with_budget(Quiver::linear_a(2), PrimeField::new(3).unwrap(), 10);
    let m = c.semisimple(&[2, 2]);
    assert!(matches!(c.aut_count(&m), Err(hallcx::Error::BudgetExceeded { .. })));
}

#[test]
fn iso_class_counts() {
    for p in [2, 3] {
        let c = a2(p);
        assert_eq!(c.enumerate_iso_classes(&[1, 1]).unwrap().len(), 5);
        assert_eq!(c.enumerate_iso_classes(&[0, 0]).unwrap().len(), 1);
        // A_2 has three indecomposables, so classes with dims <= (2,2) are multisets of them
        let keys = c.enumerate_iso_class_keys(&[2, 2]).unwrap();
        assert_eq!(keys.len(), 14);
    }
    let one = RepCat::new(Quiver::new(1, vec![]).unwrap(), PrimeField::new(2).unwrap());
    assert_eq!(one.enumerate_iso_classes(&[3]).unwrap().len(), 4);
    let c = a3(2);
    // subsets of vertices cut into intervals: 1 + 3 + (2 + 2 + 1) + 4
    assert_eq!(c.enumerate_iso_classes(&[1, 1, 1]).unwrap().len(), 13);
}

#[test]
fn projectives_and_resolutions() {
    let c = a2(2);
    let p1 = c.projective(0);
    assert_eq!(p1.dims(), &[1, 1]);
    assert_eq!(p1.map(0), &Matrix::identity(2, 1));
    let (top, _) = c.top(&p1);
    assert!(c.is_isomorphic(&top, &c.simple(0)).unwrap());
    let s12 = c.semisimple(&[1, 1]);
    let (cover, epi) = c.projective_cover(&s12);
    assert!(c.is_isomorphic(&cover, &c.direct_sum(&[&p1, &c.projective(1)])).unwrap());
    assert!(epi.is_surjective() && c.is_morphism(&cover, &s12, &epi));

    let res = c.min_proj_resolution(&c.simple(0));
    assert!(c.is_isomorphic(&res.cover, &p1).unwrap());
    assert!(c.is_isomorphic(&res.omega, &c.projective(1)).unwrap());
    let res = c.min_proj_resolution(&p1);
    assert!(res.omega.is_zero());
    let res = c.min_proj_resolution(&c.zero_rep());
    assert!(res.omega.is_zero() && res.cover.is_zero());
}

#[test]
fn strip_examples() {
    let c = a2(2);
    let p1 = c.projective(0);
    let p2 = c.projective(1);
    let id = RepMap::identity(2, &p1);
    let s = c.strip_common_summand(&p1, &p1, &id).unwrap();
    assert!(s.cokernel.is_zero());
    assert_eq!(s.common_multiplicities, vec![1, 0]);

    // P_2 -> P_1 ⊕ P_2, v ↦ (v, v): the P_2 component is an isomorphism, so P_2 splits off
    let target = c.direct_sum(&[&p1, &p2]);
    let f = RepMap::new(vec![Matrix::zeros(2, 1, 0), Matrix::from_vec(2, 2, 1, vec![1, 1])]);
    assert!(c.is_morphism(&p2, &target, &f));
    let s = c.strip_common_summand(&p2, &target, &f).unwrap();
    assert!(c.is_isomorphic(&s.cokernel, &p1).unwrap());
    assert_eq!(s.common_multiplicities, vec![0, 1]);
    let g = RepMap::new(vec![Matrix::zeros(2, 1, 0), Matrix::from_vec(2, 2, 1, vec![0, 1])]);
    let s = c.strip_common_summand(&p2, &target, &g).unwrap();
    assert!(c.is_isomorphic(&s.cokernel, &c.direct_sum(&[&p1])).unwrap());
    assert_eq!(s.common_multiplicities, vec![0, 1]);
    // minimal map: image in the radical
    let h = RepMap::new(vec![Matrix::zeros(2, 1, 0), Matrix::from_vec(2, 2, 1, vec![1, 0])]);
    let s = c.strip_common_summand(&p2, &target, &h).unwrap();
    assert_eq!(s.common_multiplicities, vec![0, 0]);
    let zero = RepMap::zero(2, &p2, &target);
    assert!(c.strip_common_summand(&p2, &target, &zero).is_err());
}

#[test]
fn keys_roundtrip() {
    let c = a3(3);
    for k in c.enumerate_iso_class_keys(&[1, 1, 1]).unwrap() {
        let m = c.realize_module(&k).unwrap();
        assert_eq!(c.module_key(&m).unwrap(), k);
        let text = k.to_string();
        assert_eq!(text.parse::<ModuleKey>().unwrap(), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_is_bilinear(d in prop::collection::vec(-3i64..4, 3), d2 in prop::collection::vec(-3i64..4, 3), e in prop::collection::vec(-3i64..4, 3)) {
        let q = Quiver::linear_a(3);
        let sum: Vec<i64> = d.iter().zip(&d2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(q.euler_form(&sum, &e), q.euler_form(&d, &e) + q.euler_form(&d2, &e));
    }

    #[test]
    fn hom_minus_ext_is_euler(i in 0usize..14, j in 0usize..14) {
        let c = a2(2);
        let keys = c.enumerate_iso_class_keys(&[2, 2]).unwrap();
        let m = c.realize_module(&keys[i]).unwrap();
        let n = c.realize_module(&keys[j]).unwrap();
        let ext = c.ext1_dim(&m, &n).unwrap() as i64;
        prop_assert_eq!(c.hom_dim(&m, &n) as i64 - ext, c.euler_form(&m.dims_i64(), &n.dims_i64()));
    }

    #[test]
    fn resolution_is_minimal(i in 0usize..14) {
        let c = a2(3);
        let keys = c.enumerate_iso_class_keys(&[2, 2]).unwrap();
        let m = c.realize_module(&keys[i]).unwrap();
        let res = c.min_proj_resolution(&m);
        prop_assert!(c.is_projective(&res.omega));
        prop_assert!(res.delta.is_injective());
        let (rad, incl) = c.radical(&res.cover);
        let _ = rad;
        for v in 0..2 {
            prop_assert!(incl.comp(v).col_span_contains(res.delta.comp(v)));
        }
        let (coker, _) = c.cokernel(&res.cover, &res.delta);
        prop_assert!(c.is_isomorphic(&coker, &m).unwrap());
    }

    #[test]
    fn scrambled_sums_decompose(i in 0usize..14, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let c = a2(3);
        let keys = c.enumerate_iso_class_keys(&[2, 2]).unwrap();
        let m = c.realize_module(&keys[i]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // conjugate by random invertible base changes at each vertex
        let mut comps = Vec::new();
        for &d in m.dims() {
            loop {
                let e: Vec<i64> = (0..d * d).map(|_| rng.gen_range(0..3)).collect();
                let g = Matrix::from_vec(3, d, d, e);
                if g.is_invertible() { comps.push(g); break; }
            }
        }
        let g = RepMap::new(comps);
        let ginv = g.inverse().unwrap();
        let maps: Vec<Matrix> = c.quiver().arrows().iter().enumerate()
            .map(|(a, &(s, t))| g.comp(t).mul(m.map(a)).mul(ginv.comp(s))).collect();
        let scrambled = c.rep(m.dims().to_vec(), maps).unwrap();
        prop_assert_eq!(c.module_key(&scrambled).unwrap(), keys[i].clone());
    }
}
