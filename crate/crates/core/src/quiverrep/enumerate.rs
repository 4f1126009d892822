use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::category::{Fingerprint, RepCat};
use super::rep::{Rep, RepMap};
use crate::error::{inconsistent, Error, Result};
use crate::exactla::{increment, Matrix};

/// An indecomposable representation, up to isomorphism: its dimension vector and its position
/// in the canonical list of indecomposables of that dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndecKey {
    pub dims: Vec<usize>,
    pub index: usize,
}

/// An isomorphism class of representations: the sorted multiset of its indecomposable summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleKey(pub Vec<IndecKey>);

#[derive(Clone, Debug)]
pub(crate) struct IndecEntry {
    pub(crate) rep: Rep,
    pub(crate) fingerprint: Fingerprint,
}

impl ModuleKey {
    pub fn zero() -> Self {
        ModuleKey(Vec::new())
    }

    pub fn from_summands(mut parts: Vec<IndecKey>) -> Self {
        parts.sort();
        ModuleKey(parts)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn summands(&self) -> &[IndecKey] {
        &self.0
    }

    pub fn dims(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for k in &self.0 {
            for (a, b) in d.iter_mut().zip(&k.dims) {
                *a += b;
            }
        }
        d
    }

    /// Key of the direct sum.
    pub fn plus(&self, other: &ModuleKey) -> ModuleKey {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ModuleKey::from_summands(v)
    }
}

impl fmt::Display for IndecKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]#{}", dims.join(","), self.index)
    }
}

impl fmt::Display for ModuleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for IndecKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad indecomposable key {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix('[').ok_or_else(bad)?;
        let (dims, idx) = rest.split_once("]#").ok_or_else(bad)?;
        let dims = dims
            .split(',')
            .map(|d| d.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let index = idx.trim().parse().map_err(|_| bad())?;
        Ok(IndecKey { dims, index })
    }
}

impl FromStr for ModuleKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(ModuleKey::zero());
        }
        let parts = s.split('+').map(IndecKey::from_str).collect::<Result<Vec<_>>>()?;
        Ok(ModuleKey::from_summands(parts))
    }
}

impl RepCat {
    /// A nontrivial direct-sum splitting `M = A ⊕ B`, found through a non-nilpotent,
    /// non-invertible endomorphism (Fitting decomposition), or `None` if M is indecomposable.
    pub fn find_splitting(&self, m: &Rep) -> Result<Option<(Rep, Rep)>> {
        if m.is_zero() {
            return Ok(None);
        }
        let end = self.hom_basis(m, m);
        if end.len() <= 1 {
            return Ok(None);
        }
        let e = *m.dims.iter().max().unwrap_or(&1) as u32;
        let attempt = |phi: &RepMap| -> Result<Option<(Rep, Rep)>> {
            let psi: Vec<Matrix> = phi.comps.iter().map(|c| c.pow(e)).collect();
            let r: usize = psi.iter().map(|c| c.rank()).sum();
            if r == 0 || r == m.total_dim() {
                return Ok(None);
            }
            let im: Vec<Matrix> = psi.iter().map(|c| c.column_basis()).collect();
            let ker: Vec<Matrix> = psi
                .iter()
                .enumerate()
                .map(|(v, c)| {
                    let k = c.kernel_matrix();
                    if k.rows() == m.dims[v] {
                        k
                    } else {
                        Matrix::zeros(self.p(), m.dims[v], 0)
                    }
                })
                .collect();
            let (a, _) = self.subrep(m, &im)?;
            let (b, _) = self.subrep(m, &ker)?;
            Ok(Some((a, b)))
        };
        for b in &end {
            if let Some(s) = attempt(b)? {
                return Ok(Some(s));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xf177_1260);
        let mut coeffs = vec![0u32; end.len()];
        for _ in 0..48 {
            for c in coeffs.iter_mut() {
                *c = rng.gen_range(0..self.p());
            }
            if let Some(s) = attempt(&self.combine(m, m, &end, &coeffs))? {
                return Ok(Some(s));
            }
        }
        self.check_budget("endomorphism sweep", end.len())?;
        let mut digits = vec![0u32; end.len()];
        loop {
            if let Some(s) = attempt(&self.combine(m, m, &end, &digits))? {
                return Ok(Some(s));
            }
            if !increment(&mut digits, self.p()) {
                break;
            }
        }
        Ok(None)
    }

    pub fn is_indecomposable(&self, m: &Rep) -> Result<bool> {
        Ok(!m.is_zero() && self.find_splitting(m)?.is_none())
    }

    /// Indecomposable summands of `M` (Krull–Schmidt), in no particular order.
    pub fn decompose(&self, m: &Rep) -> Result<Vec<Rep>> {
        let mut todo = vec![m.clone()];
        let mut out = Vec::new();
        while let Some(x) = todo.pop() {
            if x.is_zero() {
                continue;
            }
            match self.find_splitting(&x)? {
                Some((a, b)) => {
                    todo.push(a);
                    todo.push(b);
                }
                None => out.push(x),
            }
        }
        Ok(out)
    }

    /// Every representation with dimension vector `dims`, in odometer order of arrow entries.
    pub fn for_each_rep(&self, dims: &[usize], mut f: impl FnMut(Rep) -> Result<()>) -> Result<()> {
        let arrows = self.quiver().arrows();
        let sizes: Vec<usize> = arrows.iter().map(|&(s, t)| dims[s] * dims[t]).collect();
        let total: usize = sizes.iter().sum();
        self.check_budget("representation enumeration", total)?;
        let mut digits = vec![0u32; total];
        loop {
            let mut off = 0;
            let maps = arrows
                .iter()
                .zip(&sizes)
                .map(|(&(s, t), &k)| {
                    let e: Vec<i64> = digits[off..off + k].iter().map(|&x| x as i64).collect();
                    off += k;
                    Matrix::from_vec(self.p(), dims[t], dims[s], e)
                })
                .collect();
            f(Rep { dims: dims.to_vec(), maps })?;
            if !increment(&mut digits, self.p()) {
                break;
            }
        }
        Ok(())
    }

    /// The canonical list of indecomposables with dimension vector `dims`, ordered by
    /// fingerprint and then by first appearance in the enumeration.
    pub(crate) fn indecomposables(&self, dims: &[usize]) -> Result<Arc<Vec<IndecEntry>>> {
        if let Some(v) = self.indecs.read().get(dims) {
            return Ok(v.clone());
        }
        let mut found: Vec<IndecEntry> = Vec::new();
        if dims.iter().any(|&d| d > 0) {
            self.for_each_rep(dims, |r| {
                let fp = self.fingerprint(&r);
                for e in &found {
                    if e.fingerprint == fp && self.is_isomorphic(&e.rep, &r)? {
                        return Ok(());
                    }
                }
                if self.is_indecomposable(&r)? {
                    found.push(IndecEntry { rep: r, fingerprint: fp });
                }
                Ok(())
            })?;
        }
        // stable sort keeps discovery order among equal fingerprints
        found.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
        let arc = Arc::new(found);
        self.indecs.write().insert(dims.to_vec(), arc.clone());
        Ok(arc)
    }

    pub fn indecomposable_count(&self, dims: &[usize]) -> Result<usize> {
        Ok(self.indecomposables(dims)?.len())
    }

    pub fn classify_indecomposable(&self, m: &Rep) -> Result<IndecKey> {
        let list = self.indecomposables(&m.dims)?;
        let fp = self.fingerprint(m);
        for (index, e) in list.iter().enumerate() {
            if e.fingerprint == fp && self.is_isomorphic(&e.rep, m)? {
                return Ok(IndecKey { dims: m.dims.clone(), index });
            }
        }
        inconsistent(format!("no indecomposable with dims {:?} matches the given module", m.dims))
    }

    pub fn module_key(&self, m: &Rep) -> Result<ModuleKey> {
        let parts = self.decompose(m)?;
        let keys = parts.iter().map(|x| self.classify_indecomposable(x)).collect::<Result<Vec<_>>>()?;
        Ok(ModuleKey::from_summands(keys))
    }

    pub fn indecomposable_rep(&self, key: &IndecKey) -> Result<Rep> {
        if key.dims.len() != self.n() {
            return crate::error::domain("indecomposable key has wrong number of vertices");
        }
        let list = self.indecomposables(&key.dims)?;
        list.get(key.index)
            .map(|e| e.rep.clone())
            .ok_or_else(|| Error::Domain(format!("no indecomposable {key}")))
    }

    /// The canonical representative of an isomorphism class.
    pub fn realize_module(&self, key: &ModuleKey) -> Result<Rep> {
        let parts = key.0.iter().map(|k| self.indecomposable_rep(k)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Rep> = parts.iter().collect();
        Ok(self.direct_sum(&refs))
    }

    /// Key of the indecomposable projective P_i.
    pub fn projective_key(&self, i: usize) -> Result<IndecKey> {
        self.classify_indecomposable(&self.projective(i))
    }

    pub fn simple_key(&self, i: usize) -> Result<IndecKey> {
        self.classify_indecomposable(&self.simple(i))
    }

    /// Keys of all isomorphism classes with dimension vector componentwise `<= dmax` (zero
    /// included), ordered by fingerprint of the canonical representative, then by key.
    pub fn enumerate_iso_class_keys(&self, dmax: &[usize]) -> Result<Vec<ModuleKey>> {
        let all_dims = dims_up_to(dmax);
        let mut indecs: Vec<IndecKey> = Vec::new();
        for d in &all_dims {
            for index in 0..self.indecomposables(d)?.len() {
                indecs.push(IndecKey { dims: d.clone(), index });
            }
        }
        let mut out = Vec::new();
        let mut acc = Vec::new();
        multisets(&indecs, 0, dmax, &mut vec![0; dmax.len()], &mut acc, &mut out);
        let mut keyed = Vec::with_capacity(out.len());
        for k in out {
            let fp = self.fingerprint(&self.realize_module(&k)?);
            keyed.push((fp, k));
        }
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, k)| k).collect())
    }

    /// One canonical representative per isomorphism class with dims `<= dmax`.
    pub fn enumerate_iso_classes(&self, dmax: &[usize]) -> Result<Vec<Rep>> {
        self.enumerate_iso_class_keys(dmax)?.iter().map(|k| self.realize_module(k)).collect()
    }

    /// Isomorphism classes with exactly the dimension vector `dims`.
    pub fn iso_classes_with_dims(&self, dims: &[usize]) -> Result<Vec<ModuleKey>> {
        Ok(self.enumerate_iso_class_keys(dims)?.into_iter().filter(|k| k.dims(dims.len()) == dims).collect())
    }
}

/// All dimension vectors componentwise `<= dmax`, in lexicographic order.
pub fn dims_up_to(dmax: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &m in dmax {
        let mut next = Vec::new();
        for v in &out {
            for k in 0..=m {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn multisets(
    items: &[IndecKey],
    start: usize,
    dmax: &[usize],
    used: &mut Vec<usize>,
    acc: &mut Vec<IndecKey>,
    out: &mut Vec<ModuleKey>,
) {
    out.push(ModuleKey::from_summands(acc.clone()));
    for i in start..items.len() {
        let fits = used.iter().zip(&items[i].dims).zip(dmax).all(|((u, d), m)| u + d <= *m);
        if !fits || items[i].dims.iter().all(|&d| d == 0) {
            continue;
        }
        for (u, d) in used.iter_mut().zip(&items[i].dims) {
            *u += d;
        }
        acc.push(items[i].clone());
        multisets(items, i, dmax, used, acc, out);
        acc.pop();
        for (u, d) in used.iter_mut().zip(&items[i].dims) {
            *u -= d;
        }
    }
}
