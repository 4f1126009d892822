use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{Localized, MHElt};
use super::gens::GenSym;
use super::maps::single_term;
use super::torus::{MHKey, TorusExp};
use crate::complexcat::{CxKind, Label};
use crate::error::Result;
use crate::hallcore::{q_pow, HallCategory};
use crate::quiverrep::{IndecKey, ModuleKey};
use crate::report::Instance;

/// An ordered monomial of the standard basis: torus factors first, then one resolution
/// generator per level in increasing order (and `X_{P,m-1}` last in the m-term case).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderedMonomial {
    pub torus: TorusExp,
    pub modules: BTreeMap<i64, ModuleKey>,
    pub top: Option<ModuleKey>,
}

impl std::fmt::Display for OrderedMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.torus.is_one() {
            parts.push(self.torus.to_string());
        }
        for (r, m) in &self.modules {
            parts.push(format!("G({m},{r})"));
        }
        if let Some(p) = &self.top {
            parts.push(format!("G({p},top)"));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl Localized<'_> {
    fn monomial_gens(&self, mono: &OrderedMonomial) -> Vec<GenSym> {
        let window = matches!(self.kind, CxKind::Window(_));
        let mut out: Vec<GenSym> = mono
            .torus
            .levels()
            .map(|(r, a)| if window { GenSym::J(a.to_vec(), r) } else { GenSym::K(a.to_vec(), r) })
            .collect();
        for (r, m) in &mono.modules {
            out.push(if window { GenSym::X(m.clone(), *r) } else { GenSym::E(m.clone(), *r) });
        }
        if let Some(p) = &mono.top {
            out.push(GenSym::Xproj(p.clone()));
        }
        out
    }

    pub fn eval_monomial(&self, mono: &OrderedMonomial) -> Result<MHElt> {
        let gens = self.monomial_gens(mono).iter().map(|g| self.gen(g)).collect::<Result<Vec<_>>>()?;
        self.mul_all(&gens)
    }

    /// The ordered monomial whose value is a multiple of the given normal-form key.
    pub fn monomial_of(&self, key: &MHKey) -> Result<OrderedMonomial> {
        let mut per_level: BTreeMap<i64, Vec<IndecKey>> = BTreeMap::new();
        let mut top: Vec<IndecKey> = Vec::new();
        for l in key.core.labels() {
            match l {
                Label::C { module, shift } | Label::T { module, shift } => {
                    per_level.entry(*shift).or_default().push(module.clone())
                }
                Label::S { vertex } => top.push(self.cat.projective_key(*vertex)?),
                Label::K { .. } | Label::J { .. } => unreachable!("normal forms carry no contractibles"),
            }
        }
        let mut torus = key.torus.clone();
        let mut modules = BTreeMap::new();
        for (r, parts) in per_level {
            let m = ModuleKey::from_summands(parts);
            torus.add_at(r, &self.omega_hat(&m)?);
            modules.insert(r, m);
        }
        let top = if top.is_empty() { None } else { Some(ModuleKey::from_summands(top)) };
        Ok(OrderedMonomial { torus, modules, top })
    }

    fn random_generator(&self, rng: &mut ChaCha8Rng, modules: &[ModuleKey], levels: (i64, i64)) -> GenSym {
        let classes = super::relations::sample_classes(self.cat.n());
        let projectives: Vec<&ModuleKey> =
            modules.iter().filter(|p| self.projective_vertices(p).is_ok()).collect();
        match self.kind {
            CxKind::Window(m) => {
                let r = rng.gen_range(0..m as i64 - 1);
                match rng.gen_range(0..5) {
                    0 => GenSym::J(classes.choose(rng).unwrap().clone(), r),
                    1 if !projectives.is_empty() => GenSym::Xproj((*projectives.choose(rng).unwrap()).clone()),
                    _ => GenSym::X(modules.choose(rng).unwrap().clone(), r),
                }
            }
            _ => {
                let r = rng.gen_range(levels.0..=levels.1);
                if rng.gen_range(0..4) == 0 {
                    GenSym::K(classes.choose(rng).unwrap().clone(), r)
                } else {
                    GenSym::E(modules.choose(rng).unwrap().clone(), r)
                }
            }
        }
    }

    /// Spanning: each term of a random product of generators is a multiple of the ordered
    /// monomial read off from its key.
    pub fn basis_spanning(
        &self,
        modules: &[ModuleKey],
        levels: (i64, i64),
        samples: usize,
        seed: u64,
    ) -> Result<Vec<Instance>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for s in 0..samples {
            let len = rng.gen_range(2..=3);
            let word: Vec<GenSym> = (0..len).map(|_| self.random_generator(&mut rng, modules, levels)).collect();
            let factors = word.iter().map(|g| self.gen(g)).collect::<Result<Vec<_>>>()?;
            let prod = self.mul_all(&factors)?;
            let mut ok = true;
            let mut bad = String::new();
            for key in prod.keys() {
                let mono = self.monomial_of(key)?;
                let v = self.eval_monomial(&mono)?;
                if single_term(&v) != Some(key) {
                    ok = false;
                    bad = format!("{mono} = {v}");
                }
            }
            let w: Vec<String> = word.iter().map(|g| g.to_string()).collect();
            out.push(Instance::new("basis-span").param("sample", s).param("word", w.join("*")).check(
                ok,
                prod.to_string(),
                if ok { "ordered monomials".to_string() } else { bad },
            ));
        }
        Ok(out)
    }

    /// Independence: distinct ordered monomials evaluate to single terms with distinct keys.
    pub fn basis_independence(
        &self,
        modules: &[ModuleKey],
        levels: (i64, i64),
        samples: usize,
        seed: u64,
    ) -> Result<Vec<Instance>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let classes = super::relations::sample_classes(self.cat.n());
        let projectives: Vec<&ModuleKey> =
            modules.iter().filter(|p| self.projective_vertices(p).is_ok()).collect();
        let level_range: Vec<i64> = match self.kind {
            CxKind::Window(m) => (0..m as i64 - 1).collect(),
            _ => (levels.0..=levels.1).collect(),
        };
        let mut monos = BTreeSet::new();
        monos.insert(OrderedMonomial { torus: TorusExp::one(), modules: BTreeMap::new(), top: None });
        for _ in 0..samples {
            let mut torus = TorusExp::one();
            let mut mods = BTreeMap::new();
            for &r in &level_range {
                if rng.gen_bool(0.3) {
                    torus.add_at(r, classes.choose(&mut rng).unwrap());
                }
                if rng.gen_bool(0.4) {
                    mods.insert(r, modules.choose(&mut rng).unwrap().clone());
                }
            }
            let top = if matches!(self.kind, CxKind::Window(_)) && !projectives.is_empty() && rng.gen_bool(0.4) {
                Some((*projectives.choose(&mut rng).unwrap()).clone())
            } else {
                None
            };
            monos.insert(OrderedMonomial { torus, modules: mods, top });
        }
        let mut seen: BTreeMap<MHKey, String> = BTreeMap::new();
        let mut out = Vec::new();
        for mono in monos {
            let v = self.eval_monomial(&mono)?;
            let inst = Instance::new("basis-independent").param("monomial", &mono);
            match single_term(&v) {
                Some(k) => {
                    let clash = seen.insert(k.clone(), mono.to_string());
                    out.push(inst.check(clash.is_none(), v.to_string(), clash.unwrap_or_else(|| "distinct".into())));
                }
                None => out.push(inst.check(false, v.to_string(), "a single term")),
            }
        }
        Ok(out)
    }

    /// `[T_{M_0}] * [T_{M_1}[1]] * ... * [S_P]` is `q^a` times the class of the direct sum,
    /// with `a = Σ_{i<j} (<A_i, A_j> - dim Hom(A_i, A_j))`.
    pub fn window_split_product(&self, pieces: &[crate::complexcat::CxKey]) -> Result<Instance> {
        let mut a = 0i64;
        let hc = &self.hall.cat;
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let (x, y) = (hc.realize(&pieces[i])?, hc.realize(&pieces[j])?);
                a += self.euler(&pieces[i], &pieces[j])? - hc.hom_dim(&x, &y)? as i64;
            }
        }
        let factors: Vec<MHElt> = pieces.iter().map(|k| self.class(k)).collect();
        let lhs = self.mul_all(&factors)?;
        let sum = pieces.iter().fold(crate::complexcat::CxKey::zero(), |acc, k| acc.plus(k));
        let rhs = self.class(&sum).scale(&q_pow(self.p(), a));
        let names: Vec<String> = pieces.iter().map(|k| k.to_string()).collect();
        Ok(Instance::new("split-product").param("pieces", names.join(" * ")).compare(&lhs, &rhs))
    }
}
