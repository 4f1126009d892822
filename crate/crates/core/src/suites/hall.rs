use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{module_grid, SuiteConfig};
use crate::complexcat::{CxKey, CxKind, Label};
use crate::error::Result;
use crate::exactla::PrimeField;
use crate::hallcore::{chi, chi_basis, ideal_i_part, section_basis, ComplexHall, HallAlgebra, HallCategory, HallElt, ModuleHall};
use crate::quiverrep::{dims_up_to, IndecKey, ModuleKey, Quiver, RepCat};
use crate::report::Instance;

fn cx_grid(cat: &RepCat, kind: CxKind, bound: &[usize], levels: Option<(i64, i64)>) -> Result<Vec<CxKey>> {
    Ok(cat.enumerate_cx_classes(kind, bound, bound, levels)?.into_iter().filter(|k| !k.is_zero()).collect())
}

fn pairs<K: Clone>(keys: &[K]) -> Vec<(K, K)> {
    keys.iter().flat_map(|x| keys.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

fn riedtmann_rows<C: HallCategory>(h: &HallAlgebra<C>, ambient: &str, keys: &[C::Key]) -> Result<Vec<Instance>> {
    let p = h.p();
    let nested: Vec<Vec<Instance>> = pairs(keys)
        .par_iter()
        .map(|(m, n)| {
            let report = h.riedtmann_peng(m, n)?;
            let mut out = Vec::new();
            let mut total = 0u64;
            for row in &report.rows {
                total += row.ext_count;
                let lhs = BigUint::from(row.hall_number) * &row.hom_count * &row.aut_m * &row.aut_n;
                let rhs = BigUint::from(row.ext_count) * &row.aut_l;
                out.push(
                    Instance::new("riedtmann-peng")
                        .param("ambient", ambient)
                        .param("M", m)
                        .param("N", n)
                        .param("L", &row.middle)
                        .compare(&lhs, &rhs),
                );
            }
            let expected = BigUint::from(p).pow(report.ext1_dim as u32);
            out.push(
                Instance::new("ext-sum")
                    .param("ambient", ambient)
                    .param("M", m)
                    .param("N", n)
                    .compare(&BigUint::from(total), &expected),
            );
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

pub(super) fn riedtmann_peng(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let mut out = riedtmann_rows(&HallAlgebra::new(ModuleHall::new(cat)), "modules", &module_grid(cat, &cfg.max_dim)?)?;
    for kind in [CxKind::Cyclic(cfg.m), CxKind::Window(cfg.m)] {
        let keys = cx_grid(cat, kind, &cfg.small_cx_bound(), None)?;
        out.extend(riedtmann_rows(&HallAlgebra::new(ComplexHall::new(cat, kind)), &format!("{kind:?}"), &keys)?);
    }
    Ok(out)
}

/// `g^{k⊕k}_{k,k} = p + 1` on the one-vertex quiver: the lines in a plane.
pub(super) fn line_count(cat: &RepCat) -> Result<Vec<Instance>> {
    let point = RepCat::with_budget(Quiver::new(1, vec![])?, PrimeField::new(cat.p())?, cat.budget());
    let h = HallAlgebra::new(ModuleHall::new(&point));
    let k = ModuleKey::from_summands(vec![point.simple_key(0)?]);
    let g = h.hall_number_g(&k, &k, &k.plus(&k))?;
    Ok(vec![Instance::new("line-count").param("p", cat.p()).compare(&g, &(cat.p() as u64 + 1))])
}

fn assoc_triples<C: HallCategory>(
    h: &HallAlgebra<C>,
    ambient: &str,
    keys: &[C::Key],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Instance>> {
    if keys.is_empty() {
        return Ok(Vec::new());
    }
    let triples: Vec<[C::Key; 3]> =
        (0..samples).map(|_| std::array::from_fn(|_| keys[rng.gen_range(0..keys.len())].clone())).collect();
    triples
        .par_iter()
        .map(|[x, y, z]| {
            let (bx, by, bz) = (HallElt::basis(x.clone()), HallElt::basis(y.clone()), HallElt::basis(z.clone()));
            let left = h.product(&h.product(&bx, &by)?, &bz)?;
            let right = h.product(&bx, &h.product(&by, &bz)?)?;
            Ok(Instance::new("associativity")
                .param("ambient", ambient)
                .param("x", x)
                .param("y", y)
                .param("z", z)
                .compare(&left, &right))
        })
        .collect()
}

pub(super) fn associativity(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let modules = module_grid(cat, &cfg.max_dim)?;
    let mut out = assoc_triples(&HallAlgebra::new(ModuleHall::new(cat)), "modules", &modules, cfg.samples, &mut rng)?;
    for kind in [CxKind::Cyclic(cfg.m), CxKind::Window(cfg.m)] {
        let keys = cx_grid(cat, kind, &cfg.cx_bound(), None)?;
        let h = HallAlgebra::new(ComplexHall::new(cat, kind));
        out.extend(assoc_triples(&h, &format!("{kind:?}"), &keys, cfg.samples, &mut rng)?);
    }
    Ok(out)
}

/// `χ(x ◇ y) = χ(x) ◇ χ(y)` on all pairs, and `ρ` is a bijection from the `d_0 = 0` basis
/// onto the m-term basis.
pub(super) fn chi_homomorphism(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let m = cfg.m;
    let bound = cfg.cx_bound();
    let cyc = HallAlgebra::new(ComplexHall::new(cat, CxKind::Cyclic(m)));
    let win = HallAlgebra::new(ComplexHall::new(cat, CxKind::Window(m)));
    let keys = cat.enumerate_cx_classes(CxKind::Cyclic(m), &bound, &bound, None)?;
    let mut out: Vec<Instance> = pairs(&keys)
        .par_iter()
        .map(|(x, y)| {
            let lhs = chi(cat, &cyc.basis_product(x, y)?, m)?;
            let rhs = win.product(&chi(cat, &HallElt::basis(x.clone()), m)?, &chi(cat, &HallElt::basis(y.clone()), m)?)?;
            Ok(Instance::new("chi-homomorphism").param("m", m).param("x", x).param("y", y).compare(&lhs, &rhs))
        })
        .collect::<Result<_>>()?;
    let window_keys: BTreeSet<CxKey> = cat.enumerate_cx_classes(CxKind::Window(m), &bound, &bound, None)?.into_iter().collect();
    let mut images = BTreeSet::new();
    let mut injective = true;
    let mut sections = true;
    for k in &keys {
        if let Some(w) = chi_basis(cat, k, m)? {
            sections &= section_basis(cat, &w, m)? == *k;
            injective &= images.insert(w);
        }
    }
    out.push(
        Instance::new("rho-bijection")
            .param("m", m)
            .param("window_classes", window_keys.len())
            .check(injective && sections && images == window_keys, images.len(), window_keys.len()),
    );
    Ok(out)
}

/// `I ◇ H ⊆ I` and `H ◇ I ⊆ I` for the span I of classes with `d_0 ≠ 0`.
pub(super) fn ideal_closure(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let m = cfg.m;
    let bound = cfg.cx_bound();
    let cyc = HallAlgebra::new(ComplexHall::new(cat, CxKind::Cyclic(m)));
    let keys = cat.enumerate_cx_classes(CxKind::Cyclic(m), &bound, &bound, None)?;
    let mut in_i = Vec::new();
    for k in &keys {
        if !ideal_i_part(cat, &HallElt::basis(k.clone()), m)?.is_zero() {
            in_i.push(k.clone());
        }
    }
    let work: Vec<(CxKey, CxKey, bool)> =
        in_i.iter().flat_map(|x| keys.iter().flat_map(move |y| [(x.clone(), y.clone(), true), (y.clone(), x.clone(), false)])).collect();
    work.par_iter()
        .map(|(a, b, left)| {
            let prod = cyc.basis_product(a, b)?;
            let inside = ideal_i_part(cat, &prod, m)?;
            let side = if *left { "I*H" } else { "H*I" };
            Ok(Instance::new("ideal-closure").param("m", m).param("side", side).param("x", a).param("y", b).compare(&inside, &prod))
        })
        .collect()
}

/// Ext vanishing and Euler identities for `C_M[r]`, `C_N[l]`.
pub(super) fn stalk_ext(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let modules = module_grid(cat, &cfg.max_dim)?;
    let (lo, hi) = cfg.levels;
    let mut work = Vec::new();
    for m in &modules {
        for n in &modules {
            for r in lo..=hi {
                for l in lo..=hi {
                    work.push((m.clone(), n.clone(), r, l));
                }
            }
        }
    }
    let nested: Vec<Vec<Instance>> = work
        .par_iter()
        .map(|(m, n, r, l)| {
            let (md, nd) = (cat.realize_module(m)?, cat.realize_module(n)?);
            let cm = cat.shift(&cat.make_cm(&md, CxKind::Bounded)?, *r)?;
            let cn = cat.shift(&cat.make_cm(&nd, CxKind::Bounded)?, *l)?;
            let inst = |name: &str| Instance::new(name).param("M", m).param("N", n).param("r", r).param("l", l);
            let mut out = Vec::new();
            if r == l {
                for i in 2..=3 {
                    out.push(inst("higher-ext-vanish").param("i", i).compare(&cat.homotopy_hom_dim(&cm, &cn, i)?, &0));
                }
                out.push(inst("ext1-matches-module").compare(&cat.homotopy_hom_dim(&cm, &cn, 1)?, &cat.ext1_dim(&md, &nd)?));
            }
            if *l == r + 1 {
                for i in 1..=3 {
                    out.push(inst("adjacent-ext-vanish").param("i", i).compare(&cat.homotopy_hom_dim(&cm, &cn, i)?, &0));
                }
            }
            let euler_mn = cat.euler_form(&md.dims_i64(), &nd.dims_i64());
            if r - l >= 1 {
                let sign = if (r - l) % 2 == 0 { 1 } else { -1 };
                out.push(inst("euler-signed").compare(&cat.euler_form_cb(&cm, &cn)?, &(sign * euler_mn)));
            }
            if l - r > 1 {
                out.push(inst("euler-vanish").compare(&cat.euler_form_cb(&cm, &cn)?, &0));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Random direct sums of indecomposables, scrambled by automorphisms, decompose back into
/// their summands; every small m-term complex decomposes into the standard labels.
pub(super) fn krull_schmidt(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let bound = cfg.cx_bound();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut indecs = Vec::new();
    for d in dims_up_to(&cfg.max_dim) {
        for index in 0..cat.indecomposable_count(&d)? {
            indecs.push(IndecKey { dims: d.clone(), index });
        }
    }
    for t in 0..if indecs.is_empty() { 0 } else { cfg.samples } {
        let k = rng.gen_range(1..=3);
        let key = ModuleKey::from_summands((0..k).map(|_| indecs[rng.gen_range(0..indecs.len())].clone()).collect());
        let x = cat.scramble(&cat.realize_module(&key)?, &mut rng);
        let got = cat.module_key(&x)?;
        out.push(Instance::new("krull-schmidt").param("kind", "Modules").param("trial", t).compare(&got, &key));
    }
    for kind in [CxKind::Cyclic(cfg.m), CxKind::Window(cfg.m), CxKind::Bounded] {
        let labels = cat.cx_indecomposable_labels(kind, &bound, Some(cfg.levels))?;
        for t in 0..cfg.samples {
            let k = rng.gen_range(1..=3);
            let picked: Vec<Label> = (0..k).map(|_| labels[rng.gen_range(0..labels.len())].clone()).collect();
            let key = CxKey::from_labels(picked);
            let x = cat.cx_scramble(&cat.realize_cx(&key, kind)?, &mut rng)?;
            let got = cat.cx_decompose(&x)?;
            out.push(Instance::new("krull-schmidt").param("kind", format!("{kind:?}")).param("trial", t).compare(&got, &key));
        }
    }
    let m = cfg.m as i64;
    let mut count = 0usize;
    let mut bad = Vec::new();
    cat.for_each_raw_cx(CxKind::Window(cfg.m), &bound, |x| {
        let key = cat.cx_decompose(&x)?;
        count += 1;
        for l in key.labels() {
            let ok = match l {
                Label::S { .. } => true,
                Label::T { shift, .. } | Label::J { shift, .. } => (0..=m - 2).contains(shift),
                _ => false,
            };
            if !ok {
                bad.push(l.to_string());
            }
        }
        Ok(())
    })?;
    out.push(
        Instance::new("window-completeness")
            .param("m", m)
            .param("complexes", count)
            .check(bad.is_empty(), bad.join(", "), "standard labels only"),
    );
    Ok(out)
}

/// For each arrow `i -> j` that is the only arrow between its ends:
/// `[S_i] ◇ [S_j] = [S_i ⊕ S_j] + (p - 1) [E]` with E the indecomposable of dimension
/// `e_i + e_j`, and `[S_j] ◇ [S_i] = [S_i ⊕ S_j]`, by both counting routes.
pub(super) fn worked_products(cat: &RepCat) -> Result<Vec<Instance>> {
    let h = HallAlgebra::new(ModuleHall::new(cat));
    let arrows = cat.quiver().arrows();
    let mut out = Vec::new();
    for &(i, j) in arrows {
        if arrows.iter().filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i)).count() != 1 {
            continue;
        }
        let si = ModuleKey::from_summands(vec![cat.simple_key(i)?]);
        let sj = ModuleKey::from_summands(vec![cat.simple_key(j)?]);
        let mut d = vec![0usize; cat.n()];
        d[i] = 1;
        d[j] = 1;
        let e = cat.iso_classes_with_dims(&d)?.into_iter().find(|k| k.summands().len() == 1);
        let Some(e) = e else { continue };
        let split = si.plus(&sj);
        let mut expected = HallElt::basis(split.clone());
        expected.add_term(e, BigRational::from_integer((cat.p() as i64 - 1).into()));
        let reverse = HallElt::basis(split);
        let name = |a: &ModuleKey, b: &ModuleKey, route: &str| {
            Instance::new("worked-product").param("x", a).param("y", b).param("route", route)
        };
        out.push(name(&si, &sj, "extensions").compare(&h.basis_product(&si, &sj)?, &expected));
        out.push(name(&si, &sj, "subobjects").compare(&h.basis_product_by_subobjects(&si, &sj)?, &expected));
        out.push(name(&sj, &si, "extensions").compare(&h.basis_product(&sj, &si)?, &reverse));
        out.push(name(&sj, &si, "subobjects").compare(&h.basis_product_by_subobjects(&sj, &si)?, &reverse));
    }
    Ok(out)
}
