use crate::complexcat::{Cx, CxKey, CxKind};
use crate::error::{domain, Result};
use crate::quiverrep::{RepCat, RepMap};

use super::elt::HallElt;

fn cyclic_m(x: &Cx) -> Result<usize> {
    match x.kind() {
        CxKind::Cyclic(m) => Ok(m),
        k => domain(format!("expected a cyclic complex, got {k:?}")),
    }
}

/// Whether the differential leaving slot 0 of a cyclic complex is nonzero.
pub fn has_nonzero_d0(x: &Cx) -> bool {
    !x.diffs()[0].is_zero()
}

/// The m-term complex obtained from a cyclic complex with `d_0 = 0`: degree `i` carries
/// cyclic slot `i mod m`, so the last degree holds slot 0. Returns `None` when `d_0 ≠ 0`.
pub fn cut_at_zero(cat: &RepCat, x: &Cx) -> Result<Option<Cx>> {
    let m = cyclic_m(x)?;
    if has_nonzero_d0(x) {
        return Ok(None);
    }
    let comps = (0..m).map(|s| x.comps()[(s + 1) % m].clone()).collect();
    let diffs = (0..m.saturating_sub(1)).map(|s| x.diffs()[s + 1].clone()).collect();
    Ok(Some(cat.cx(CxKind::Window(m), 1, comps, diffs)?))
}

/// Right inverse of [`cut_at_zero`]: close an m-term complex up with `M_0 := M_m`, `d_0 := 0`.
pub fn close_up(cat: &RepCat, x: &Cx) -> Result<Cx> {
    let CxKind::Window(m) = x.kind() else {
        return domain("close_up needs an m-term complex");
    };
    let comps: Vec<_> = (0..m).map(|s| x.comps()[(s + m - 1) % m].clone()).collect();
    let diffs = (0..m)
        .map(|s| {
            if s == 0 {
                RepMap::zero(cat.p(), &comps[0], &comps[1 % m])
            } else {
                x.diffs()[s - 1].clone()
            }
        })
        .collect();
    cat.cx(CxKind::Cyclic(m), 0, comps, diffs)
}

/// `χ` on a basis element of the cyclic Hall algebra.
pub fn chi_basis(cat: &RepCat, k: &CxKey, m: usize) -> Result<Option<CxKey>> {
    let x = cat.realize_cx(k, CxKind::Cyclic(m))?;
    match cut_at_zero(cat, &x)? {
        Some(w) => Ok(Some(cat.cx_key(&w)?)),
        None => Ok(None),
    }
}

pub fn chi(cat: &RepCat, x: &HallElt<CxKey>, m: usize) -> Result<HallElt<CxKey>> {
    x.map_linear(|k| Ok(chi_basis(cat, k, m)?.map_or_else(HallElt::zero, HallElt::basis)))
}

/// `ρ` on basis keys: the cyclic class with `d_0 = 0` lying over an m-term class.
pub fn section_basis(cat: &RepCat, k: &CxKey, m: usize) -> Result<CxKey> {
    let w = cat.realize_cx(k, CxKind::Window(m))?;
    cat.cx_key(&close_up(cat, &w)?)
}

/// Terms of `x` supported on classes with `d_0 ≠ 0`.
pub fn ideal_i_part(cat: &RepCat, x: &HallElt<CxKey>, m: usize) -> Result<HallElt<CxKey>> {
    let mut out = HallElt::zero();
    for (k, c) in x.iter() {
        if has_nonzero_d0(&cat.realize_cx(k, CxKind::Cyclic(m))?) {
            out.add_term(k.clone(), c.clone());
        }
    }
    Ok(out)
}
