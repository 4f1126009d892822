use hallcx::complexcat::{CxKey, CxKind};
use hallcx::exactla::PrimeField;
use hallcx::hallcore::{rational, HallElt};
use hallcx::localized::{Embedding, GenSym, Localized, MHKey, TorusExp};
use hallcx::quiverrep::{ModuleKey, Quiver, RepCat};
use hallcx::report::Instance;
use num_rational::BigRational;
use num_traits::One;

fn a2(p: u32) -> RepCat {
    RepCat::new(Quiver::linear_a(2), PrimeField::new(p).unwrap())
}

fn nonzero_classes(c: &RepCat, d: &[usize]) -> Vec<ModuleKey> {
    c.enumerate_iso_class_keys(d).unwrap().into_iter().filter(|k| !k.is_zero()).collect()
}

fn simple(c: &RepCat, i: usize) -> ModuleKey {
    ModuleKey::from_summands(vec![c.simple_key(i).unwrap()])
}

fn projective(c: &RepCat, i: usize) -> ModuleKey {
    ModuleKey::from_summands(vec![c.projective_key(i).unwrap()])
}

fn assert_all(instances: &[Instance]) {
    let bad: Vec<&Instance> = instances.iter().filter(|i| !i.pass).collect();
    assert!(bad.is_empty(), "{} of {} failed, first: {:#?}", bad.len(), instances.len(), bad.first());
}

#[test]
fn torus_group_law() {
    let c = a2(2);
    let mh = Localized::bounded(&c);
    let k = mh.gen(&GenSym::K(vec![1, 0], 1)).unwrap();
    let kinv = mh.gen(&GenSym::K(vec![-1, 0], 1)).unwrap();
    assert_eq!(mh.mul(&k, &kinv).unwrap(), mh.one());
    assert_eq!(mh.gen(&GenSym::E(ModuleKey::zero(), 2)).unwrap(), mh.one());
}

#[test]
fn projective_generators_are_plain_classes() {
    let c = a2(2);
    let mh = Localized::bounded(&c);
    for r in -1..=1 {
        let e = mh.gen(&GenSym::E(projective(&c, 0), r)).unwrap();
        let key = e.keys().next().unwrap();
        assert!(key.torus.is_one());
        assert_eq!(e.coeff(key), BigRational::one());
    }
    let z = mh.gen(&GenSym::Z(simple(&c, 0), 1)).unwrap();
    let e = mh.gen(&GenSym::E(simple(&c, 0), 1)).unwrap();
    let k = mh.gen(&GenSym::K(vec![-1, 0], 0)).unwrap();
    assert_eq!(z, mh.mul(&e, &k).unwrap());
}

#[test]
fn window_example_relation_6_8() {
    let c = a2(2);
    let mh = Localized::window(&c, 2).unwrap();
    let (s1, s2) = (simple(&c, 0), simple(&c, 1));
    let lhs = mh.mul(&mh.gen(&GenSym::X(s1.clone(), 0)).unwrap(), &mh.gen(&GenSym::X(s2.clone(), 0)).unwrap()).unwrap();
    // <S_1, S_2> = -1, so each Hall term picks up 1/2
    let half = rational(1, 2);
    let mut rhs = mh.gen(&GenSym::X(s1.plus(&s2), 0)).unwrap().scale(&half);
    rhs = rhs.add(&mh.gen(&GenSym::X(projective(&c, 0), 0)).unwrap().scale(&half));
    assert_eq!(lhs, rhs);
    let sp = mh.gen(&GenSym::Xproj(projective(&c, 1))).unwrap();
    assert_eq!(sp.keys().next().unwrap().core.to_string(), "S<P2>");
}

#[test]
fn bounded_relations_small_grid() {
    let c = a2(2);
    let mh = Localized::bounded(&c);
    let mods = nonzero_classes(&c, &[1, 1]);
    assert_all(&mh.bounded_relations(&mods, (-1, 2), false).unwrap());
    assert_all(&mh.bounded_relations(&mods, (-1, 2), true).unwrap());
}

#[test]
fn window_relations_small_grid() {
    for m in [2, 3] {
        let c = a2(2);
        let mh = Localized::window(&c, m).unwrap();
        let mods = nonzero_classes(&c, &[1, 1]);
        assert_all(&mh.window_relations(&mods).unwrap());
    }
}

#[test]
fn psi_hat_round_trips() {
    let c = a2(3);
    let mh = Localized::bounded(&c);
    let mods = nonzero_classes(&c, &[1, 1]);
    assert_all(&mh.psi_hat_roundtrips(&mods, (-2, 2)).unwrap());
}

#[test]
fn lambda_and_phi() {
    let c = a2(2);
    let mods = nonzero_classes(&c, &[1, 1]);
    for m in [2usize, 3] {
        let w = Localized::window(&c, m).unwrap();
        let b = Localized::bounded(&c);
        let emb = Embedding::new(&w, &b).unwrap();
        for p in [0, 1] {
            let xp = w.gen(&GenSym::Xproj(projective(&c, p))).unwrap();
            let e = b.gen(&GenSym::E(projective(&c, p), m as i64 - 1)).unwrap();
            assert_eq!(emb.lambda(&xp).unwrap(), e);
        }
        let j = w.gen(&GenSym::J(vec![1, 1], 0)).unwrap();
        assert_eq!(emb.lambda(&j).unwrap(), b.gen(&GenSym::K(vec![1, 1], 0)).unwrap());
        for r in 0..m as i64 - 1 {
            for x in &mods {
                for y in &mods {
                    let (u, v) = (w.gen(&GenSym::X(x.clone(), r)).unwrap(), w.gen(&GenSym::X(y.clone(), r)).unwrap());
                    let lhs = emb.lambda(&w.mul(&u, &v).unwrap()).unwrap();
                    let rhs = b.mul(&emb.lambda(&u).unwrap(), &emb.lambda(&v).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    let hx = HallElt::basis(x.clone());
                    assert_eq!(emb.lambda(&emb.phi(&hx, r).unwrap()).unwrap(), b.psi(&hx, r).unwrap());
                }
            }
        }
    }
}

#[test]
fn mh1_is_a_group_algebra() {
    let c = a2(2);
    let mh = Localized::window(&c, 1).unwrap();
    let labels = c.cx_indecomposable_labels(CxKind::Window(1), &[1, 1], None).unwrap();
    for a in &labels {
        for b in &labels {
            let x = mh.class(&CxKey::from_labels(vec![a.clone()]));
            let y = mh.class(&CxKey::from_labels(vec![b.clone()]));
            let prod = mh.mul(&x, &y).unwrap();
            assert_eq!(prod.len(), 1);
            let key: &MHKey = prod.keys().next().unwrap();
            assert!(key.core.is_zero());
            assert_eq!(prod.coeff(key), BigRational::one());
        }
    }
    let t = TorusExp::single(0, vec![1, 1]);
    assert_eq!(mh.class(&"S<P1>".parse().unwrap()), mh.torus(t));
}

#[test]
fn basis_checks() {
    let c = a2(2);
    let mods = nonzero_classes(&c, &[1, 1]);
    let mh = Localized::bounded(&c);
    assert_all(&mh.basis_spanning(&mods, (-1, 1), 20, 7).unwrap());
    assert_all(&mh.basis_independence(&mods, (-1, 1), 30, 8).unwrap());
    let w = Localized::window(&c, 3).unwrap();
    assert_all(&w.basis_spanning(&mods, (0, 1), 20, 9).unwrap());
    assert_all(&w.basis_independence(&mods, (0, 1), 30, 10).unwrap());
    let pieces: Vec<CxKey> =
        ["T<[1,0]#0>[0]", "T<[0,1]#0>[1]", "S<P1>"].iter().map(|s| s.parse().unwrap()).collect();
    assert!(w.window_split_product(&pieces).unwrap().pass);
}
