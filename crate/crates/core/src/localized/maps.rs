use std::collections::HashMap;

use parking_lot::RwLock;

use super::algebra::{Localized, MHElt};
use super::gens::{e_inverse_torus, z_torus, GenSym};
use super::torus::{MHKey, TorusExp};
use crate::complexcat::{CxKey, CxKind, Label};
use crate::error::{domain, Result};
use crate::hallcore::HallElt;
use crate::quiverrep::ModuleKey;

/// A monomial `Z_M^{[r]} ⊗ t` (or `1 ⊗ t`) of the derived Hall algebra tensored with the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhMonomial {
    pub z: Option<(ModuleKey, i64)>,
    pub torus: TorusExp,
}

/// The embedding of m-term complexes into bounded ones by the shift `[m]`, together with the
/// two localizations it connects.
pub struct Embedding<'a, 'b> {
    pub window: &'b Localized<'a>,
    pub bounded: &'b Localized<'a>,
    labels: RwLock<HashMap<Label, CxKey>>,
}

impl<'a, 'b> Embedding<'a, 'b> {
    pub fn new(window: &'b Localized<'a>, bounded: &'b Localized<'a>) -> Result<Self> {
        if !matches!(window.kind, CxKind::Window(m) if m >= 2) || bounded.kind != CxKind::Bounded {
            return domain("the embedding goes from MH_m (m >= 2) to MH");
        }
        Ok(Self { window, bounded, labels: RwLock::new(HashMap::new()) })
    }

    pub fn m(&self) -> usize {
        self.window.m().unwrap()
    }

    fn label_image(&self, l: &Label) -> Result<CxKey> {
        if let Some(k) = self.labels.read().get(l) {
            return Ok(k.clone());
        }
        let cat = self.window.cat;
        let x = cat.realize_label(l, self.window.kind)?;
        let b = cat.shift(&cat.window_as_bounded(&x)?, self.m() as i64)?;
        let k = cat.cx_key(&b)?;
        self.labels.write().insert(l.clone(), k.clone());
        Ok(k)
    }

    /// `λ`: `J_{α,r} ↦ K_{α,r}` and `[X] ↦ [X[m]]`.
    pub fn lambda(&self, x: &MHElt) -> Result<MHElt> {
        x.map_linear(|k| {
            let mut core = CxKey::zero();
            for l in k.core.labels() {
                core = core.plus(&self.label_image(l)?);
            }
            let mut key = self.bounded.normalize(&core);
            key.torus = key.torus.mul(&k.torus);
            Ok(HallElt::basis(key))
        })
    }

    /// `φ_r = λ^{-1} ψ_r`: `[M] ↦ X_{M,r}`.
    pub fn phi(&self, x: &HallElt<ModuleKey>, r: i64) -> Result<MHElt> {
        x.map_linear(|m| self.window.gen(&GenSym::X(m.clone(), r)))
    }
}

impl Localized<'_> {
    /// `ψ_r`: `[M] ↦ E_{M,r}`.
    pub fn psi(&self, x: &HallElt<ModuleKey>, r: i64) -> Result<MHElt> {
        x.map_linear(|m| self.gen(&GenSym::E(m.clone(), r)))
    }

    /// Twisted product in `H_tw(A)`: `[M] * [N] = q^{<M,N>} [M] ◇ [N]`.
    pub fn module_twisted_product(
        &self,
        x: &HallElt<ModuleKey>,
        y: &HallElt<ModuleKey>,
    ) -> Result<HallElt<ModuleKey>> {
        let mut out = HallElt::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let e = self.cat.euler_form(&self.module_class(a), &self.module_class(b));
                let prod = self.modules.basis_product(a, b)?;
                out = out.add(&prod.scale(&(ca * cb * crate::hallcore::q_pow(self.p(), e))));
            }
        }
        Ok(out)
    }

    /// `Ψ̂(Z ⊗ t) = Ψ(Z) * t`.
    pub fn psi_hat(&self, d: &DhMonomial) -> Result<MHElt> {
        let t = self.torus(d.torus.clone());
        match &d.z {
            None => Ok(t),
            Some((m, r)) => self.mul(&self.gen(&GenSym::Z(m.clone(), *r))?, &t),
        }
    }

    /// `Ψ̂^{-1}` on the generators `K_{α,r}` and `E_{M,r}`.
    pub fn psi_hat_inverse(&self, g: &GenSym) -> Result<DhMonomial> {
        match g {
            GenSym::K(a, r) => Ok(DhMonomial { z: None, torus: TorusExp::single(*r, a.clone()) }),
            GenSym::E(m, r) => {
                Ok(DhMonomial { z: Some((m.clone(), *r)), torus: e_inverse_torus(&self.module_class(m), *r) })
            }
            _ => domain(format!("{g} is not a generator of MH(A)")),
        }
    }

    /// `Ψ̂^{-1} Ψ̂` on a monomial, computed generator by generator: `Ψ(Z_M^{[r]})` is
    /// `E_{M,r}` times a torus monomial, and `E_{M,r}` goes back to `Z_M^{[r]}` times another.
    pub fn psi_hat_inverse_after(&self, d: &DhMonomial) -> DhMonomial {
        match &d.z {
            None => d.clone(),
            Some((m, r)) => {
                let class = self.module_class(m);
                let t = d.torus.mul(&z_torus(&class, *r)).mul(&e_inverse_torus(&class, *r));
                DhMonomial { z: d.z.clone(), torus: t }
            }
        }
    }
}

/// Whether an element lies in the span of a single normal-form key.
pub fn single_term(x: &MHElt) -> Option<&MHKey> {
    if x.len() == 1 {
        x.keys().next()
    } else {
        None
    }
}
