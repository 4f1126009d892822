use num_rational::BigRational;
use rayon::prelude::*;

use super::algebra::{Localized, MHElt};
use super::gens::GenSym;
use super::maps::DhMonomial;
use super::torus::TorusExp;
use crate::error::Result;
use crate::hallcore::{kernel_cokernel_classes, q_pow, rational_from_uint, HallCategory};
use crate::quiverrep::ModuleKey;
use crate::report::Instance;

/// Which family of generators a relation check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    E,
    Z,
    X,
}

impl Family {
    fn sym(self, m: &ModuleKey, r: i64) -> GenSym {
        match self {
            Family::E => GenSym::E(m.clone(), r),
            Family::Z => GenSym::Z(m.clone(), r),
            Family::X => GenSym::X(m.clone(), r),
        }
    }
}

/// Small sample of classes in K(A) used for the torus relations: each unit vector and
/// `e_1 - e_n`.
pub fn sample_classes(n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    if n > 1 {
        let mut d = vec![0; n];
        d[0] = 1;
        d[n - 1] = -1;
        out.push(d);
    }
    out
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Localized<'_> {
    fn g(&self, s: GenSym) -> Result<MHElt> {
        self.gen(&s)
    }

    fn module_euler(&self, m: &ModuleKey, n: &ModuleKey) -> i64 {
        self.cat.euler_form(&self.module_class(m), &self.module_class(n))
    }

    /// `Σ_L q^{<M,N>} |Ext¹(M,N)_L| / |Hom(M,N)| G_{L,r}`.
    fn same_level_rhs(&self, fam: Family, m: &ModuleKey, n: &ModuleKey, r: i64) -> Result<MHElt> {
        let tw = q_pow(self.p(), self.module_euler(m, n));
        let mut rhs = MHElt::zero();
        for (l, c) in self.modules.basis_product(m, n)?.iter() {
            rhs = rhs.add(&self.g(fam.sym(l, r))?.scale(&(c * &tw)));
        }
        Ok(rhs)
    }

    /// `γ^{XY}_{MN} a_M a_N / (a_X a_Y)` for every `(X, Y)` arising as (kernel, cokernel).
    pub fn gamma_terms(&self, m: &ModuleKey, n: &ModuleKey) -> Result<Vec<(ModuleKey, ModuleKey, BigRational)>> {
        let h = &self.modules.cat;
        let table = kernel_cokernel_classes(h, m, n)?;
        let am = h.aut_count(m)?;
        let an = h.aut_count(n)?;
        let mut out = Vec::new();
        for ((x, y), count) in table {
            let gamma = crate::hallcore::gamma_from_count(h, m, n, &x, &y, count)?;
            let ax = h.aut_count(&x)?;
            let ay = h.aut_count(&y)?;
            let c = gamma * rational_from_uint(&(&am * &an)) / rational_from_uint(&(ax * ay));
            out.push((x, y, c));
        }
        Ok(out)
    }

    /// Right-hand side of the adjacent-level relation:
    /// `Σ q^{-<M,N>} γ a_M a_N / (a_X a_Y) G_{Y,r} * G_{X,r+1} (* T_{M̂-X̂,r})`.
    fn adjacent_rhs(
        &self,
        m: &ModuleKey,
        n: &ModuleKey,
        r: i64,
        lower: &dyn Fn(&ModuleKey) -> Result<MHElt>,
        upper: &dyn Fn(&ModuleKey) -> Result<MHElt>,
        with_torus: bool,
    ) -> Result<MHElt> {
        let tw = q_pow(self.p(), -self.module_euler(m, n));
        let mut rhs = MHElt::zero();
        for (x, y, c) in self.gamma_terms(m, n)? {
            let mut t = self.mul(&lower(&y)?, &upper(&x)?)?;
            if with_torus {
                let k = self.torus(TorusExp::single(r, sub(&self.module_class(m), &self.module_class(&x))));
                t = self.mul(&t, &k)?;
            }
            rhs = rhs.add(&t.scale(&(c * &tw)));
        }
        Ok(rhs)
    }

    fn commute_rhs(&self, a: &MHElt, b: &MHElt, e: i64) -> Result<MHElt> {
        Ok(self.mul(b, a)?.scale(&q_pow(self.p(), e)))
    }

    /// Relations among `E_{M,r}` and `K_{α,r}` in `MH(A)`, or among `Z_M^{[r]}` through Ψ
    /// when `derived` is set.
    pub fn bounded_relations(&self, modules: &[ModuleKey], levels: (i64, i64), derived: bool) -> Result<Vec<Instance>> {
        let fam = if derived { Family::Z } else { Family::E };
        let name = |plain: &str, der: &str| if derived { der.to_string() } else { plain.to_string() };
        let (lo, hi) = levels;
        let mut jobs: Vec<Box<dyn Fn() -> Result<Instance> + Send + Sync + '_>> = Vec::new();
        for r in lo..=hi {
            for m in modules {
                for n in modules {
                    let (m, n) = (m.clone(), n.clone());
                    let rel = name("same-level", "same-level-derived");
                    jobs.push(Box::new(move || {
                        let lhs = self.mul(&self.g(fam.sym(&m, r))?, &self.g(fam.sym(&n, r))?)?;
                        let rhs = self.same_level_rhs(fam, &m, &n, r)?;
                        Ok(Instance::new(rel.clone()).param("M", &m).param("N", &n).param("r", r).compare(&lhs, &rhs))
                    }));
                }
            }
        }
        for r in lo..hi {
            for m in modules {
                for n in modules {
                    let (m, n) = (m.clone(), n.clone());
                    let rel = name("adjacent-level", "adjacent-level-derived");
                    jobs.push(Box::new(move || {
                        let lhs = self.mul(&self.g(fam.sym(&m, r + 1))?, &self.g(fam.sym(&n, r))?)?;
                        let lower = |y: &ModuleKey| self.g(fam.sym(y, r));
                        let upper = |x: &ModuleKey| self.g(fam.sym(x, r + 1));
                        let rhs = self.adjacent_rhs(&m, &n, r, &lower, &upper, !derived)?;
                        Ok(Instance::new(rel.clone()).param("M", &m).param("N", &n).param("r", r).compare(&lhs, &rhs))
                    }));
                }
            }
        }
        for r in lo..=hi {
            for l in lo..=r - 2 {
                for m in modules {
                    for n in modules {
                        let (m, n) = (m.clone(), n.clone());
                        let rel = name("distant-commute", "distant-commute-derived");
                        jobs.push(Box::new(move || {
                            let a = self.g(fam.sym(&m, r))?;
                            let b = self.g(fam.sym(&n, l))?;
                            let e = if (r - l) % 2 == 0 { 1 } else { -1 } * self.module_euler(&m, &n);
                            let lhs = self.mul(&a, &b)?;
                            let rhs = self.commute_rhs(&a, &b, e)?;
                            Ok(Instance::new(rel.clone())
                                .param("M", &m)
                                .param("N", &n)
                                .param("r", r)
                                .param("l", l)
                                .compare(&lhs, &rhs))
                        }));
                    }
                }
            }
        }
        if !derived {
            let classes = sample_classes(self.cat.n());
            for r in lo..=hi {
                for l in lo..=hi {
                    for a in &classes {
                        for m in modules {
                            let (a, m) = (a.clone(), m.clone());
                            jobs.push(Box::new(move || {
                                let k = self.g(GenSym::K(a.clone(), r))?;
                                let e = self.g(GenSym::E(m.clone(), l))?;
                                let lhs = self.mul(&k, &e)?;
                                let rhs = self.mul(&e, &k)?;
                                Ok(Instance::new("torus-central")
                                    .param("alpha", format!("{a:?}"))
                                    .param("r", r)
                                    .param("M", &m)
                                    .param("l", l)
                                    .compare(&lhs, &rhs))
                            }));
                        }
                        for b in &classes {
                            let (a, b) = (a.clone(), b.clone());
                            jobs.push(Box::new(move || {
                                let ka = self.g(GenSym::K(a.clone(), r))?;
                                let kb = self.g(GenSym::K(b.clone(), l))?;
                                let lhs = self.mul(&ka, &kb)?;
                                let rhs = if r == l {
                                    let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                                    self.g(GenSym::K(s, r))?
                                } else {
                                    self.mul(&kb, &ka)?
                                };
                                let inv = self.mul(&ka, &self.g(GenSym::K(neg(&a), r))?)?;
                                Ok(Instance::new("torus-group")
                                    .param("alpha", format!("{a:?}"))
                                    .param("r", r)
                                    .param("beta", format!("{b:?}"))
                                    .param("l", l)
                                    .check(lhs == rhs && inv == self.one(), &lhs, &rhs))
                            }));
                        }
                    }
                }
            }
        }
        jobs.par_iter().map(|j| j()).collect()
    }

    /// Relations among `X_{M,r}`, `X_{P,m-1}` and `J_{α,r}` in `MH_m(A)`.
    pub fn window_relations(&self, modules: &[ModuleKey]) -> Result<Vec<Instance>> {
        let m = self.m().expect("window ambient");
        let top = m as i64 - 1;
        let projectives: Vec<ModuleKey> =
            modules.iter().filter(|p| self.projective_vertices(p).is_ok()).cloned().collect();
        let mut jobs: Vec<Box<dyn Fn() -> Result<Instance> + Send + Sync + '_>> = Vec::new();
        let x = |k: &ModuleKey, r: i64| self.g(GenSym::X(k.clone(), r));
        let xp = |p: &ModuleKey| self.g(GenSym::Xproj(p.clone()));
        for r in 0..top {
            for a in modules {
                for b in modules {
                    let (a, b) = (a.clone(), b.clone());
                    jobs.push(Box::new(move || {
                        let lhs = self.mul(&x(&a, r)?, &x(&b, r)?)?;
                        let rhs = self.same_level_rhs(Family::X, &a, &b, r)?;
                        Ok(Instance::new("same-level").param("M", &a).param("N", &b).param("r", r).compare(&lhs, &rhs))
                    }));
                }
            }
        }
        for p in &projectives {
            for q in &projectives {
                let (p, q) = (p.clone(), q.clone());
                jobs.push(Box::new(move || {
                    let lhs = self.mul(&xp(&p)?, &xp(&q)?)?;
                    let rhs = xp(&p.plus(&q))?;
                    Ok(Instance::new("projective-sum").param("P", &p).param("Q", &q).compare(&lhs, &rhs))
                }));
            }
        }
        for r in 0..top - 1 {
            for a in modules {
                for b in modules {
                    let (a, b) = (a.clone(), b.clone());
                    jobs.push(Box::new(move || {
                        let lhs = self.mul(&x(&a, r + 1)?, &x(&b, r)?)?;
                        let lower = |y: &ModuleKey| x(y, r);
                        let upper = |z: &ModuleKey| x(z, r + 1);
                        let rhs = self.adjacent_rhs(&a, &b, r, &lower, &upper, true)?;
                        Ok(Instance::new("adjacent-level").param("M", &a).param("N", &b).param("r", r).compare(&lhs, &rhs))
                    }));
                }
            }
        }
        for p in &projectives {
            for a in modules {
                let (p, a) = (p.clone(), a.clone());
                jobs.push(Box::new(move || {
                    let lhs = self.mul(&xp(&p)?, &x(&a, top - 1)?)?;
                    let lower = |b: &ModuleKey| x(b, top - 1);
                    let upper = |rk: &ModuleKey| xp(rk);
                    let rhs = self.adjacent_rhs(&p, &a, top - 1, &lower, &upper, true)?;
                    Ok(Instance::new("projective-adjacent").param("P", &p).param("M", &a).compare(&lhs, &rhs))
                }));
            }
        }
        for r in 0..top {
            for l in 0..=r - 2 {
                for a in modules {
                    for b in modules {
                        let (a, b) = (a.clone(), b.clone());
                        jobs.push(Box::new(move || {
                            let (u, v) = (x(&a, r)?, x(&b, l)?);
                            let e = if (r - l) % 2 == 0 { 1 } else { -1 } * self.module_euler(&a, &b);
                            let lhs = self.mul(&u, &v)?;
                            let rhs = self.commute_rhs(&u, &v, e)?;
                            Ok(Instance::new("distant-commute")
                                .param("M", &a)
                                .param("N", &b)
                                .param("r", r)
                                .param("l", l)
                                .compare(&lhs, &rhs))
                        }));
                    }
                }
            }
        }
        for r in 0..top - 1 {
            for p in &projectives {
                for a in modules {
                    let (p, a) = (p.clone(), a.clone());
                    jobs.push(Box::new(move || {
                        let (u, v) = (xp(&p)?, x(&a, r)?);
                        let e = if (top - r) % 2 == 0 { 1 } else { -1 } * self.module_euler(&p, &a);
                        let lhs = self.mul(&u, &v)?;
                        let rhs = self.commute_rhs(&u, &v, e)?;
                        Ok(Instance::new("projective-commute").param("P", &p).param("M", &a).param("r", r).compare(&lhs, &rhs))
                    }));
                }
            }
        }
        let classes = sample_classes(self.cat.n());
        for r in 0..top {
            for alpha in &classes {
                let mut others: Vec<MHGen> = modules.iter().flat_map(|a| (0..top).map(move |l| MHGen::X(a.clone(), l))).collect();
                others.extend(projectives.iter().map(|p| MHGen::P(p.clone())));
                for o in others {
                    let alpha = alpha.clone();
                    jobs.push(Box::new(move || {
                        let j = self.g(GenSym::J(alpha.clone(), r))?;
                        let g = match &o {
                            MHGen::X(a, l) => x(a, *l)?,
                            MHGen::P(p) => xp(p)?,
                        };
                        let lhs = self.mul(&j, &g)?;
                        let rhs = self.mul(&g, &j)?;
                        Ok(Instance::new("torus-central")
                            .param("alpha", format!("{alpha:?}"))
                            .param("r", r)
                            .param("with", o.to_string())
                            .compare(&lhs, &rhs))
                    }));
                }
                for l in 0..top {
                    for beta in &classes {
                        let (a, b) = (alpha.clone(), beta.clone());
                        jobs.push(Box::new(move || {
                            let ja = self.g(GenSym::J(a.clone(), r))?;
                            let jb = self.g(GenSym::J(b.clone(), l))?;
                            let lhs = self.mul(&ja, &jb)?;
                            let rhs = if r == l {
                                let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                                self.g(GenSym::J(s, r))?
                            } else {
                                self.mul(&jb, &ja)?
                            };
                            let inv = self.mul(&ja, &self.g(GenSym::J(neg(&a), r))?)?;
                            Ok(Instance::new("torus-group")
                                .param("alpha", format!("{a:?}"))
                                .param("r", r)
                                .param("beta", format!("{b:?}"))
                                .param("l", l)
                                .check(lhs == rhs && inv == self.one(), &lhs, &rhs))
                        }));
                    }
                }
            }
        }
        jobs.par_iter().map(|j| j()).collect()
    }

    /// `Ψ̂` and `Ψ̂^{-1}` undo each other on the generators `E_{M,r}`, `K_{α,r}` and on the
    /// monomials `Z_M^{[r]} ⊗ 1`, for `lo <= r <= hi`.
    pub fn psi_hat_roundtrips(&self, modules: &[ModuleKey], levels: (i64, i64)) -> Result<Vec<Instance>> {
        let mut gens: Vec<GenSym> = Vec::new();
        for r in levels.0..=levels.1 {
            gens.extend(modules.iter().map(|m| GenSym::E(m.clone(), r)));
            gens.extend(sample_classes(self.cat.n()).into_iter().map(|a| GenSym::K(a, r)));
        }
        let mut out: Vec<Instance> = gens
            .par_iter()
            .map(|g| {
                let there = self.psi_hat_inverse(g)?;
                let back = self.psi_hat(&there)?;
                let orig = self.gen(g)?;
                Ok(Instance::new("psi-hat").param("generator", g).compare(&back, &orig))
            })
            .collect::<Result<_>>()?;
        for r in levels.0..=levels.1 {
            for m in modules {
                let d = DhMonomial { z: Some((m.clone(), r)), torus: TorusExp::one() };
                let back = self.psi_hat_inverse_after(&d);
                out.push(
                    Instance::new("psi-hat")
                        .param("generator", GenSym::Z(m.clone(), r))
                        .check(back == d, format!("{}", back.torus), "1"),
                );
            }
        }
        Ok(out)
    }
}

enum MHGen {
    X(ModuleKey, i64),
    P(ModuleKey),
}

impl std::fmt::Display for MHGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MHGen::X(a, l) => write!(f, "X({a},{l})"),
            MHGen::P(p) => write!(f, "X({p},m-1)"),
        }
    }
}
