use hallcx::complexcat::{CxKey, CxKind};
use hallcx::exactla::PrimeField;
use hallcx::hallcore::HallElt;
use hallcx::integration::{torus_to_json, Exponent, Integration};
use hallcx::quiverrep::{Quiver, RepCat};
use hallcx::report::Instance;

fn a2(p: u32) -> RepCat {
    RepCat::new(Quiver::linear_a(2), PrimeField::new(p).unwrap())
}

fn key(s: &str) -> CxKey {
    s.parse().unwrap()
}

fn classes(c: &RepCat, bound: &[usize]) -> Vec<CxKey> {
    c.enumerate_cx_classes(CxKind::Window(2), bound, bound, None).unwrap()
}

fn assert_all(instances: &[Instance]) {
    assert!(!instances.is_empty());
    let bad: Vec<&Instance> = instances.iter().filter(|i| !i.pass).collect();
    assert!(bad.is_empty(), "{} of {} failed, first: {:#?}", bad.len(), instances.len(), bad.first());
}

#[test]
fn only_two_term_complexes() {
    let c = a2(2);
    assert!(Integration::new(&c, 3).is_err());
    assert!(Integration::new(&c, 1).is_err());
}

#[test]
fn dimension_vectors_of_named_complexes() {
    let c = a2(2);
    let int = Integration::new(&c, 2).unwrap();
    let real = |s: &str| c.realize_cx(&key(s), CxKind::Window(2)).unwrap();
    assert_eq!(int.dim_vec(&real("J<P1>[0]")).unwrap(), vec![0, 0, 1, 0]);
    assert_eq!(int.dim_vec(&real("J<P2>[0]")).unwrap(), vec![0, 0, 0, 1]);
    assert_eq!(int.dim_vec(&real("S<P1>")).unwrap(), vec![-1, 0, 0, 0]);
    assert_eq!(int.dim_vec(&real("S<P2>")).unwrap(), vec![0, -1, 0, 0]);
    assert_eq!(int.grothendieck_coords(&real("S<P2>")).unwrap(), vec![0, 1, 0, 0]);
    assert_eq!(int.grothendieck_coords(&real("J<P1>[0]")).unwrap(), vec![0, 0, 1, 0]);
    // T_{S_1} = (P_2 -> P_1): P̂ - Ω̂ = e_1 - e_2 and P̂ = e_1
    assert_eq!(int.dim_vec(&real("T<[1,0]#0>[0]")).unwrap(), vec![1, -1, 1, 0]);
    let sum = real("S<P1> + T<[1,0]#0>[0]");
    assert_eq!(int.dim_vec(&sum).unwrap(), vec![0, -1, 1, 0]);
    assert_eq!(int.key_dim(&key("S<P1> + T<[1,0]#0>[0]")).unwrap(), vec![0, -1, 1, 0]);
}

#[test]
fn resolution_of_t_s1() {
    let c = a2(3);
    let x = c.realize_cx(&key("T<[1,0]#0>[0]"), CxKind::Window(2)).unwrap();
    let r = c.injective_resolution_c2(&x).unwrap();
    assert!(c.resolution_is_exact(&r).unwrap());
    // middle S_{P_2} ⊕ J_{P_1}, tail S_{P_1}
    assert_eq!(r.a, c.projective(1));
    assert_eq!(r.c, c.projective(0));
    assert_eq!(r.b, c.projective(0));
    let m = c.minimize_resolution(&r).unwrap();
    assert_eq!((m.a, m.b, m.c), (vec![0, 1], vec![1, 0], vec![1, 0]));
}

#[test]
fn resolutions_of_injectives_minimize() {
    let c = a2(2);
    for (s, a, b, cc) in [("S<P1>", [1, 0], [0, 0], [0, 0]), ("J<P2>[0]", [0, 0], [0, 0], [0, 1])] {
        let x = c.realize_cx(&key(s), CxKind::Window(2)).unwrap();
        let m = c.minimize_resolution(&c.injective_resolution_c2(&x).unwrap()).unwrap();
        assert_eq!((m.a, m.b, m.c), (a.to_vec(), b.to_vec(), cc.to_vec()), "{s}");
    }
}

#[test]
fn lambda_on_projective_injectives() {
    let c = a2(2);
    let int = Integration::new(&c, 2).unwrap();
    for v in 0..2 {
        let j = c.realize_cx(&key(&format!("J<P{}>[0]", v + 1)), CxKind::Window(2)).unwrap();
        let d = int.dim_vec(&j).unwrap();
        assert_eq!(int.lambda_form(&d, &d), c.cx_hom_dim(&j, &j).unwrap() as i64);
    }
}

#[test]
fn worked_product_integrates() {
    let c = a2(2);
    let int = Integration::new(&c, 2).unwrap();
    let (x, y) = (key("S<P1>"), key("T<[0,1]#0>[0]"));
    let prod = int.hall.basis_product(&x, &y).unwrap();
    let lhs = int.integrate(&prod).unwrap();
    let rhs = int.torus_mul(
        &int.integrate(&HallElt::basis(x)).unwrap(),
        &int.integrate(&HallElt::basis(y)).unwrap(),
    );
    assert_eq!(lhs, rhs);
    assert_eq!(int.integrate(&HallElt::basis(CxKey::zero())).unwrap(), int.monomial(vec![0; 4]));
    // T_{S_2} = (0 -> P_2) since S_2 is projective
    let json = torus_to_json(&lhs);
    assert_eq!(json.as_array().unwrap().len(), 1);
    assert_eq!(lhs.keys().next().unwrap(), &Exponent(vec![-1, 1, 0, 1]));
}

#[test]
fn integration_grid_a2() {
    for p in [2, 3] {
        let c = a2(p);
        let int = Integration::new(&c, 2).unwrap();
        let keys = classes(&c, &[1, 1]);
        assert_all(&int.homomorphism_instances(&keys).unwrap());
        assert_all(&int.additivity_instances(&keys).unwrap());
        assert_all(&int.lambda_instances(&keys).unwrap());
        assert_all(&int.resolution_instances(&keys, 11).unwrap());
    }
}

#[test]
fn integration_grid_a3() {
    let c = RepCat::new(Quiver::linear_a(3), PrimeField::new(2).unwrap());
    let int = Integration::new(&c, 2).unwrap();
    let keys = classes(&c, &[1, 1, 1]);
    assert_all(&int.homomorphism_instances(&keys).unwrap());
    assert_all(&int.lambda_instances(&keys).unwrap());
    assert_all(&int.resolution_instances(&keys, 12).unwrap());
}
