use std::fmt;

use super::algebra::{Localized, MHElt};
use super::torus::TorusExp;
use crate::complexcat::{CxKey, CxKind, Label};
use crate::error::{domain, Result};
use crate::quiverrep::ModuleKey;

/// Named generators of the localized algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSym {
    /// `E_{M,r}` in `MH(A)`.
    E(ModuleKey, i64),
    /// `K_{α,r}` in `MH(A)`.
    K(Vec<i64>, i64),
    /// `X_{M,r}` in `MH_m(A)`, `0 <= r < m-1`.
    X(ModuleKey, i64),
    /// `X_{P,m-1} = [S_P]` in `MH_m(A)`, P projective.
    Xproj(ModuleKey),
    /// `J_{α,r}` in `MH_m(A)`.
    J(Vec<i64>, i64),
    /// Derived Hall generator `Z_M^{[r]}`, evaluated through its image in `MH(A)`.
    Z(ModuleKey, i64),
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |a: &[i64]| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            GenSym::E(m, r) => write!(f, "E({m},{r})"),
            GenSym::K(a, r) => write!(f, "K(({}),{r})", v(a)),
            GenSym::X(m, r) => write!(f, "X({m},{r})"),
            GenSym::Xproj(p) => write!(f, "X({p},m-1)"),
            GenSym::J(a, r) => write!(f, "J(({}),{r})", v(a)),
            GenSym::Z(m, r) => write!(f, "Z({m},[{r}])"),
        }
    }
}

/// Torus part of the image of `Z_M^{[r]}`: for `n > 0`, `Π_{i=1}^n K_{(-1)^i M̂, n-i}` and
/// `Π_{i=1}^n K_{(-1)^i M̂, -(n-i+1)}` for `-n`.
pub fn z_torus(class: &[i64], r: i64) -> TorusExp {
    let mut t = TorusExp::one();
    let n = r.abs();
    for i in 1..=n {
        let s = if i % 2 == 0 { 1 } else { -1 };
        let c: Vec<i64> = class.iter().map(|x| s * x).collect();
        let level = if r > 0 { n - i } else { -(n - i + 1) };
        t.add_at(level, &c);
    }
    t
}

/// Torus part of the image of `E_{M,r}` under the inverse decomposition:
/// `Π_{i=0}^{n-1} K_{(-1)^{n-i-1} M̂, i}` for `n > 0` and `Π_{i=1}^n K_{(-1)^{n-i} M̂, -i}` for `-n`.
pub fn e_inverse_torus(class: &[i64], r: i64) -> TorusExp {
    let mut t = TorusExp::one();
    let n = r.abs();
    if r > 0 {
        for i in 0..n {
            let s = if (n - i - 1) % 2 == 0 { 1 } else { -1 };
            t.add_at(i, &class.iter().map(|x| s * x).collect::<Vec<_>>());
        }
    } else {
        for i in 1..=n {
            let s = if (n - i) % 2 == 0 { 1 } else { -1 };
            t.add_at(-i, &class.iter().map(|x| s * x).collect::<Vec<_>>());
        }
    }
    t
}

impl Localized<'_> {
    fn need_bounded(&self, g: &GenSym) -> Result<()> {
        if self.kind != CxKind::Bounded {
            return domain(format!("{g} lives in the bounded localization"));
        }
        Ok(())
    }

    fn need_window(&self, g: &GenSym) -> Result<usize> {
        match self.kind {
            CxKind::Window(m) if m >= 2 => Ok(m),
            _ => domain(format!("{g} lives in an m-term localization with m >= 2")),
        }
    }

    pub fn gen(&self, g: &GenSym) -> Result<MHElt> {
        match g {
            GenSym::E(m, r) => {
                self.need_bounded(g)?;
                self.resolution_generator(m, *r)
            }
            GenSym::K(a, r) => {
                self.need_bounded(g)?;
                Ok(self.torus(TorusExp::single(*r, a.clone())))
            }
            GenSym::X(m, r) => {
                let mm = self.need_window(g)?;
                if *r < 0 || *r >= mm as i64 - 1 {
                    return domain(format!("X_{{M,r}} needs 0 <= r < m-1, got r = {r}"));
                }
                self.resolution_generator(m, *r)
            }
            GenSym::Xproj(p) => {
                self.need_window(g)?;
                let labels = self.projective_vertices(p)?.into_iter().map(|v| Label::S { vertex: v }).collect();
                Ok(self.class(&CxKey::from_labels(labels)))
            }
            GenSym::J(a, r) => {
                let mm = self.need_window(g)?;
                if *r < 0 || *r >= mm as i64 - 1 {
                    return domain(format!("J_{{α,r}} needs 0 <= r < m-1, got r = {r}"));
                }
                Ok(self.torus(TorusExp::single(*r, a.clone())))
            }
            GenSym::Z(m, r) => {
                self.need_bounded(g)?;
                let e = self.resolution_generator(m, *r)?;
                self.mul(&e, &self.torus(z_torus(&self.module_class(m), *r)))
            }
        }
    }

    /// `K_{-Ω̂_M, r} * [C_M[r]]`, resp. `J_{-Ω̂_M, r} * [T_M[r]]`.
    fn resolution_generator(&self, m: &ModuleKey, r: i64) -> Result<MHElt> {
        let omega: Vec<i64> = self.omega_hat(m)?.into_iter().map(|x| -x).collect();
        let c = self.class(&self.resolution_key(m, r)?);
        self.mul(&self.torus(TorusExp::single(r, omega)), &c)
    }

    /// The vertices `v` (with multiplicity) with `P = ⊕ P_v`.
    pub fn projective_vertices(&self, p: &ModuleKey) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for s in p.summands() {
            let v = (0..self.cat.n()).find(|&v| self.cat.projective_key(v).ok().as_ref() == Some(s));
            match v {
                Some(v) => out.push(v),
                None => return domain(format!("{p} is not projective")),
            }
        }
        Ok(out)
    }
}
