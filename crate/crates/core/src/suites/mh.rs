use rayon::prelude::*;

use super::{module_grid, SuiteConfig};
use crate::complexcat::CxKind;
use crate::error::{domain, Result};
use crate::hallcore::HallElt;
use crate::integration::Integration;
use crate::localized::{Embedding, GenSym, Localized};
use crate::quiverrep::{ModuleKey, RepCat};
use crate::report::Instance;

fn window_m(cfg: &SuiteConfig) -> Result<usize> {
    if cfg.m < 2 {
        return domain("the m-term generators need m >= 2");
    }
    Ok(cfg.m)
}

pub(super) fn bounded(cat: &RepCat, cfg: &SuiteConfig, derived: bool) -> Result<Vec<Instance>> {
    let mh = Localized::bounded(cat);
    mh.bounded_relations(&module_grid(cat, &cfg.max_dim)?, cfg.levels, derived)
}

pub(super) fn window(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let mh = Localized::window(cat, window_m(cfg)?)?;
    mh.window_relations(&module_grid(cat, &cfg.max_dim)?)
}

/// Round trips on generators with levels in the window and `|level| <= 2`.
pub(super) fn psi_hat(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let levels = (cfg.levels.0.max(-2), cfg.levels.1.min(2));
    if levels.0 > levels.1 {
        return Ok(Vec::new());
    }
    Localized::bounded(cat).psi_hat_roundtrips(&module_grid(cat, &cfg.max_dim)?, levels)
}

pub(super) fn basis_bounded(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let mh = Localized::bounded(cat);
    let modules = module_grid(cat, &cfg.max_dim)?;
    let mut out = mh.basis_spanning(&modules, cfg.levels, 2 * cfg.samples, cfg.seed)?;
    out.extend(mh.basis_independence(&modules, cfg.levels, cfg.samples, cfg.seed + 1)?);
    Ok(out)
}

pub(super) fn basis_window(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let mh = Localized::window(cat, window_m(cfg)?)?;
    let modules = module_grid(cat, &cfg.max_dim)?;
    let mut out = mh.basis_spanning(&modules, cfg.levels, 2 * cfg.samples, cfg.seed)?;
    out.extend(mh.basis_independence(&modules, cfg.levels, cfg.samples, cfg.seed + 1)?);
    Ok(out)
}

/// `λ` is multiplicative on products of m-term generators, sends `[S_P]` to `E_{P,m-1}` and
/// `J_{α,r}` to `K_{α,r}`, and `λ φ_r = ψ_r`.
pub(super) fn embedding(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let m = window_m(cfg)?;
    let w = Localized::window(cat, m)?;
    let b = Localized::bounded(cat);
    let emb = Embedding::new(&w, &b)?;
    let modules = module_grid(cat, &cfg.max_dim)?;
    let mut out = Vec::new();
    for v in 0..cat.n() {
        let p = ModuleKey::from_summands(vec![cat.projective_key(v)?]);
        let lhs = emb.lambda(&w.gen(&GenSym::Xproj(p.clone()))?)?;
        let rhs = b.gen(&GenSym::E(p.clone(), m as i64 - 1))?;
        out.push(Instance::new("lambda-top").param("P", &p).compare(&lhs, &rhs));
        let mut alpha = vec![0i64; cat.n()];
        alpha[v] = 1;
        for r in 0..m as i64 - 1 {
            let lhs = emb.lambda(&w.gen(&GenSym::J(alpha.clone(), r))?)?;
            let rhs = b.gen(&GenSym::K(alpha.clone(), r))?;
            out.push(Instance::new("lambda-torus").param("alpha", format!("{alpha:?}")).param("r", r).compare(&lhs, &rhs));
        }
    }
    let mut work = Vec::new();
    for r in 0..m as i64 - 1 {
        for x in &modules {
            for y in &modules {
                work.push((x.clone(), y.clone(), r));
            }
        }
    }
    let nested: Vec<Vec<Instance>> = work
        .par_iter()
        .map(|(x, y, r)| {
            let (u, v) = (w.gen(&GenSym::X(x.clone(), *r))?, w.gen(&GenSym::X(y.clone(), *r))?);
            let lhs = emb.lambda(&w.mul(&u, &v)?)?;
            let rhs = b.mul(&emb.lambda(&u)?, &emb.lambda(&v)?)?;
            let mut out = vec![Instance::new("lambda-homomorphism").param("x", x).param("y", y).param("r", r).compare(&lhs, &rhs)];
            if y == x {
                let hx = HallElt::basis(x.clone());
                let lhs = emb.lambda(&emb.phi(&hx, *r)?)?;
                let rhs = b.psi(&hx, *r)?;
                out.push(Instance::new("lambda-phi-psi").param("M", x).param("r", r).compare(&lhs, &rhs));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    out.extend(nested.into_iter().flatten());
    Ok(out)
}

pub(super) fn integration(cat: &RepCat, cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    let int = Integration::new(cat, cfg.m)?;
    let bound = cfg.cx_bound();
    let keys = cat.enumerate_cx_classes(CxKind::Window(2), &bound, &bound, None)?;
    let mut out = int.homomorphism_instances(&keys)?;
    out.extend(int.additivity_instances(&keys)?);
    out.extend(int.lambda_instances(&keys)?);
    out.extend(int.resolution_instances(&keys, cfg.seed)?);
    Ok(out)
}
