use std::collections::HashMap;

use num_rational::BigRational;
use parking_lot::RwLock;
use rayon::prelude::*;

use super::torus::{MHKey, TorusExp};
use crate::complexcat::{CxKey, CxKind, Label};
use crate::error::{domain, Result};
use crate::hallcore::{q_pow, ComplexHall, HallAlgebra, HallElt, ModuleHall};
use crate::quiverrep::{ModuleKey, RepCat};

/// An element of a localized Hall algebra in normal form.
pub type MHElt = HallElt<MHKey>;

/// The localization of the twisted Hall algebra of bounded complexes (`MH(A)`) or of
/// m-term complexes (`MH_m(A)`), computed by normal-form rewriting: contractible summands
/// are central and are moved into a torus monomial.
pub struct Localized<'a> {
    pub cat: &'a RepCat,
    pub kind: CxKind,
    pub hall: HallAlgebra<ComplexHall<'a>>,
    pub modules: HallAlgebra<ModuleHall<'a>>,
    euler: RwLock<HashMap<(Label, Label), i64>>,
    cm_keys: RwLock<HashMap<(ModuleKey, i64), CxKey>>,
}

impl<'a> Localized<'a> {
    pub fn new(cat: &'a RepCat, kind: CxKind) -> Result<Self> {
        if matches!(kind, CxKind::Cyclic(_)) {
            return domain("localized algebras live over bounded or m-term complexes");
        }
        Ok(Self {
            cat,
            kind,
            hall: HallAlgebra::new(ComplexHall::new(cat, kind)),
            modules: HallAlgebra::new(ModuleHall::new(cat)),
            euler: RwLock::new(HashMap::new()),
            cm_keys: RwLock::new(HashMap::new()),
        })
    }

    pub fn bounded(cat: &'a RepCat) -> Self {
        Self::new(cat, CxKind::Bounded).expect("bounded is a valid ambient")
    }

    pub fn window(cat: &'a RepCat, m: usize) -> Result<Self> {
        if m == 0 {
            return domain("m must be positive");
        }
        Self::new(cat, CxKind::Window(m))
    }

    pub fn p(&self) -> u32 {
        self.cat.p()
    }

    /// `m` for `MH_m(A)`, `None` for `MH(A)`.
    pub fn m(&self) -> Option<usize> {
        self.kind.m()
    }

    pub fn one(&self) -> MHElt {
        HallElt::basis(MHKey::default())
    }

    fn projective_class(&self, v: usize) -> Vec<i64> {
        self.cat.quiver().projective_dims(v).into_iter().map(|x| x as i64).collect()
    }

    fn inverted(&self, l: &Label) -> Option<(i64, usize)> {
        match (l, self.kind) {
            (Label::K { vertex, shift }, CxKind::Bounded) => Some((*shift, *vertex)),
            (Label::J { vertex, shift }, CxKind::Window(_)) => Some((*shift, *vertex)),
            // with m = 1 every object is projective-injective
            (Label::S { vertex }, CxKind::Window(1)) => Some((0, *vertex)),
            _ => None,
        }
    }

    /// Moves contractible summands of a class into the torus.
    pub fn normalize(&self, key: &CxKey) -> MHKey {
        let mut torus = TorusExp::one();
        let mut core = Vec::new();
        for l in key.labels() {
            match self.inverted(l) {
                Some((r, v)) => torus.add_at(r, &self.projective_class(v)),
                None => core.push(l.clone()),
            }
        }
        MHKey { torus, core: CxKey::from_labels(core) }
    }

    /// `[X]` for a complex class, in normal form.
    pub fn class(&self, key: &CxKey) -> MHElt {
        HallElt::basis(self.normalize(key))
    }

    pub fn torus(&self, t: TorusExp) -> MHElt {
        HallElt::basis(MHKey { torus: t, core: CxKey::zero() })
    }

    fn label_euler(&self, a: &Label, b: &Label) -> Result<i64> {
        let memo = (a.clone(), b.clone());
        if let Some(&e) = self.euler.read().get(&memo) {
            return Ok(e);
        }
        let x = self.cat.realize_label(a, self.kind)?;
        let y = self.cat.realize_label(b, self.kind)?;
        let e = match self.kind {
            CxKind::Window(_) => self.cat.euler_form_cm(&x, &y)?,
            _ => self.cat.euler_form_cb(&x, &y)?,
        };
        self.euler.write().insert(memo, e);
        Ok(e)
    }

    /// Euler form of the ambient category, by bilinearity over summands.
    pub fn euler(&self, x: &CxKey, y: &CxKey) -> Result<i64> {
        let mut total = 0;
        for a in x.labels() {
            for b in y.labels() {
                total += self.label_euler(a, b)?;
            }
        }
        Ok(total)
    }

    /// `[X] * [Y] = q^{<X,Y>} [X] ◇ [Y]` on classes, without normalizing.
    pub fn twisted_class_product(&self, x: &CxKey, y: &CxKey) -> Result<HallElt<CxKey>> {
        let e = self.euler(x, y)?;
        Ok(self.hall.basis_product(x, y)?.scale(&q_pow(self.p(), e)))
    }

    fn basis_mul(&self, a: &MHKey, b: &MHKey) -> Result<MHElt> {
        let torus = a.torus.mul(&b.torus);
        let mut out = MHElt::zero();
        for (l, c) in self.twisted_class_product(&a.core, &b.core)?.iter() {
            let mut k = self.normalize(l);
            k.torus = k.torus.mul(&torus);
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, x: &MHElt, y: &MHElt) -> Result<MHElt> {
        let pairs: Vec<(&MHKey, &BigRational, &MHKey, &BigRational)> =
            x.iter().flat_map(|(a, ca)| y.iter().map(move |(b, cb)| (a, ca, b, cb))).collect();
        pairs
            .par_iter()
            .map(|&(a, ca, b, cb)| Ok(self.basis_mul(a, b)?.scale(&(ca * cb))))
            .try_reduce(MHElt::zero, |u, v| Ok(u.add(&v)))
    }

    pub fn mul_all(&self, factors: &[MHElt]) -> Result<MHElt> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Class of `Ω_M` from the minimal projective resolution of M.
    pub fn omega_hat(&self, m: &ModuleKey) -> Result<Vec<i64>> {
        let r = self.cat.min_proj_resolution(&self.cat.realize_module(m)?);
        Ok(r.omega.dims_i64())
    }

    pub fn module_class(&self, m: &ModuleKey) -> Vec<i64> {
        m.dims(self.cat.n()).into_iter().map(|x| x as i64).collect()
    }

    /// Key of `C_M[r]` (bounded) or `T_M[r]` (m-term).
    pub(crate) fn resolution_key(&self, m: &ModuleKey, r: i64) -> Result<CxKey> {
        let memo = (m.clone(), r);
        if let Some(k) = self.cm_keys.read().get(&memo) {
            return Ok(k.clone());
        }
        let md = self.cat.realize_module(m)?;
        let x = match self.kind {
            CxKind::Bounded => self.cat.make_cm(&md, CxKind::Bounded)?,
            CxKind::Window(mm) => self.cat.make_tm(&md, mm)?,
            CxKind::Cyclic(_) => unreachable!("rejected in new"),
        };
        let k = self.cat.cx_key(&self.cat.shift(&x, r)?)?;
        self.cm_keys.write().insert(memo, k.clone());
        Ok(k)
    }
}
