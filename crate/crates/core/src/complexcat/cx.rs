use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quiverrep::{Rep, RepCat, RepMap};

/// Which category a complex lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CxKind {
    /// m-cyclic complexes, components indexed by Z_m; the differential out of slot `m-1`
    /// lands in slot 0.
    Cyclic(usize),
    /// m-term complexes, degrees `1..=m`; no differential out of degree m.
    Window(usize),
    /// Bounded complexes; the degree range is recorded per complex.
    Bounded,
}

impl CxKind {
    pub fn m(&self) -> Option<usize> {
        match self {
            CxKind::Cyclic(m) | CxKind::Window(m) => Some(*m),
            CxKind::Bounded => None,
        }
    }
}

/// A complex of projective representations. `comps[s]` sits in degree `lo + s`; `diffs[s]`
/// maps `comps[s]` to the component of the next slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cx {
    pub(crate) kind: CxKind,
    pub(crate) lo: i64,
    pub(crate) comps: Vec<Rep>,
    pub(crate) diffs: Vec<RepMap>,
}

/// A chain map, one component per slot of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxMap {
    pub comps: Vec<RepMap>,
}

impl CxMap {
    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|f| f.is_iso())
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|f| f.flatten()).collect()
    }
}

pub(crate) fn sign(p: u32, t: i64) -> u32 {
    if t.rem_euclid(2) == 0 {
        1 % p
    } else {
        p - 1
    }
}

impl Cx {
    pub fn kind(&self) -> CxKind {
        self.kind
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the highest degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64
    }

    pub fn comps(&self) -> &[Rep] {
        &self.comps
    }

    pub fn diffs(&self) -> &[RepMap] {
        &self.diffs
    }

    pub fn slot_count(&self) -> usize {
        self.comps.len()
    }

    pub fn degree(&self, slot: usize) -> i64 {
        self.lo + slot as i64
    }

    pub fn next(&self, slot: usize) -> Option<usize> {
        match self.kind {
            CxKind::Cyclic(m) => Some((slot + 1) % m),
            _ => (slot + 1 < self.comps.len()).then_some(slot + 1),
        }
    }

    pub fn prev(&self, slot: usize) -> Option<usize> {
        match self.kind {
            CxKind::Cyclic(m) => Some((slot + m - 1) % m),
            _ => (slot > 0).then(|| slot - 1),
        }
    }

    pub fn diff(&self, slot: usize) -> Option<&RepMap> {
        self.diffs.get(slot)
    }

    /// Component in degree `deg` (cyclic degrees are read mod m), zero outside the support.
    pub fn comp_at(&self, deg: i64) -> Option<&Rep> {
        match self.kind {
            CxKind::Cyclic(m) => self.comps.get(deg.rem_euclid(m as i64) as usize),
            _ => {
                let s = deg - self.lo;
                (s >= 0).then(|| self.comps.get(s as usize)).flatten()
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Per-slot dimension vectors.
    pub fn comp_dims(&self) -> Vec<Vec<usize>> {
        self.comps.iter().map(|c| c.dims().to_vec()).collect()
    }
}

impl RepCat {
    /// Builds and validates a complex: projective components, differentials that are morphisms,
    /// and `d ∘ d = 0`.
    pub fn cx(&self, kind: CxKind, lo: i64, comps: Vec<Rep>, diffs: Vec<RepMap>) -> Result<Cx> {
        let expected = match kind {
            CxKind::Cyclic(m) => {
                if m == 0 || comps.len() != m {
                    return domain(format!("cyclic complex needs {m} components, got {}", comps.len()));
                }
                if lo != 0 {
                    return domain("cyclic complexes start in degree 0");
                }
                m
            }
            CxKind::Window(m) => {
                if m == 0 || comps.len() != m {
                    return domain(format!("{m}-term complex needs {m} components, got {}", comps.len()));
                }
                if lo != 1 {
                    return domain("m-term complexes start in degree 1");
                }
                m - 1
            }
            CxKind::Bounded => comps.len().saturating_sub(1),
        };
        if diffs.len() != expected {
            return domain(format!("expected {expected} differentials, got {}", diffs.len()));
        }
        let x = Cx { kind, lo, comps, diffs };
        for (s, c) in x.comps.iter().enumerate() {
            if c.dims().len() != self.n() {
                return domain("component has wrong number of vertices");
            }
            if !self.is_projective(c) {
                return domain(format!("component in degree {} is not projective", x.degree(s)));
            }
        }
        for s in 0..x.diffs.len() {
            let t = x.next(s).expect("differential has a target");
            if !self.is_morphism(&x.comps[s], &x.comps[t], &x.diffs[s]) {
                return domain(format!("differential in degree {} is not a morphism", x.degree(s)));
            }
        }
        for s in 0..x.diffs.len() {
            let t = x.next(s).expect("differential has a target");
            if let Some(d2) = x.diff(t) {
                if !d2.after(&x.diffs[s]).is_zero() {
                    return domain(format!("d∘d ≠ 0 at degree {}", x.degree(s)));
                }
            }
        }
        Ok(x)
    }

    pub fn zero_cx(&self, kind: CxKind) -> Cx {
        let z = self.zero_rep();
        let (lo, len) = match kind {
            CxKind::Cyclic(m) => (0, m),
            CxKind::Window(m) => (1, m),
            CxKind::Bounded => (0, 0),
        };
        let comps = vec![z.clone(); len];
        let nd = match kind {
            CxKind::Cyclic(m) => m,
            _ => len.saturating_sub(1),
        };
        let diffs = vec![RepMap::zero(self.p(), &z, &z); nd];
        Cx { kind, lo, comps, diffs }
    }

    /// Bounded complex supported in degrees `lo..lo+comps.len()` from components and
    /// differentials, with zero padding allowed.
    pub fn bounded_cx(&self, lo: i64, comps: Vec<Rep>, diffs: Vec<RepMap>) -> Result<Cx> {
        self.cx(CxKind::Bounded, lo, comps, diffs)
    }

    /// Extends a bounded complex with zero components so that it covers degrees `lo..hi`.
    pub fn pad_bounded(&self, x: &Cx, lo: i64, hi: i64) -> Cx {
        assert_eq!(x.kind, CxKind::Bounded);
        let (lo, hi) = if x.comps.is_empty() { (lo, hi) } else { (lo.min(x.lo), hi.max(x.hi())) };
        let z = self.zero_rep();
        let mut comps = Vec::new();
        for d in lo..hi {
            comps.push(x.comp_at(d).cloned().unwrap_or_else(|| z.clone()));
        }
        let mut diffs = Vec::new();
        for d in lo..hi - 1 {
            let s = d - x.lo;
            let f = if s >= 0 && (s as usize) < x.diffs.len() {
                x.diffs[s as usize].clone()
            } else {
                RepMap::zero(self.p(), &comps[(d - lo) as usize], &comps[(d - lo + 1) as usize])
            };
            diffs.push(f);
        }
        Cx { kind: CxKind::Bounded, lo, comps, diffs }
    }

    /// Removes zero components at both ends of a bounded complex.
    pub fn trim_bounded(&self, x: &Cx) -> Cx {
        assert_eq!(x.kind, CxKind::Bounded);
        let first = x.comps.iter().position(|c| !c.is_zero());
        let Some(first) = first else {
            return self.zero_cx(CxKind::Bounded);
        };
        let last = x.comps.iter().rposition(|c| !c.is_zero()).unwrap();
        Cx {
            kind: CxKind::Bounded,
            lo: x.lo + first as i64,
            comps: x.comps[first..=last].to_vec(),
            diffs: x.diffs[first..last].to_vec(),
        }
    }

    /// Views an m-term complex (degrees 1..m) as a bounded complex in the same degrees.
    pub fn window_as_bounded(&self, x: &Cx) -> Result<Cx> {
        match x.kind {
            CxKind::Window(_) => Ok(Cx { kind: CxKind::Bounded, lo: x.lo, comps: x.comps.clone(), diffs: x.diffs.clone() }),
            CxKind::Bounded => Ok(x.clone()),
            CxKind::Cyclic(_) => domain("cyclic complexes are not bounded"),
        }
    }

    /// Direct sum; bounded summands are aligned by degree.
    pub fn cx_direct_sum(&self, parts: &[&Cx]) -> Result<Cx> {
        let Some(first) = parts.first() else {
            return domain("empty direct sum needs a kind");
        };
        let kind = first.kind;
        if parts.iter().any(|x| x.kind != kind) {
            return domain("direct sum of complexes of different kinds");
        }
        let padded: Vec<Cx>;
        let parts: Vec<&Cx> = if kind == CxKind::Bounded {
            let nonzero: Vec<&&Cx> = parts.iter().filter(|x| !x.comps.is_empty()).collect();
            if nonzero.is_empty() {
                return Ok(self.zero_cx(kind));
            }
            let lo = nonzero.iter().map(|x| x.lo).min().unwrap();
            let hi = nonzero.iter().map(|x| x.hi()).max().unwrap();
            padded = parts.iter().map(|x| self.pad_bounded(x, lo, hi)).collect();
            padded.iter().collect()
        } else {
            parts.to_vec()
        };
        let len = parts[0].comps.len();
        let comps: Vec<Rep> = (0..len)
            .map(|s| {
                let cs: Vec<&Rep> = parts.iter().map(|x| &x.comps[s]).collect();
                self.direct_sum(&cs)
            })
            .collect();
        let diffs = (0..parts[0].diffs.len())
            .map(|s| {
                let ds: Vec<&RepMap> = parts.iter().map(|x| &x.diffs[s]).collect();
                RepMap::direct_sum(self.p(), &ds, self.n())
            })
            .collect();
        Ok(Cx { kind, lo: parts[0].lo, comps, diffs })
    }

    /// Shift `X[t]`: `X[t]_i = X_{i+t}` with differential `(-1)^t d_{i+t}`.
    pub fn shift(&self, x: &Cx, t: i64) -> Result<Cx> {
        let p = self.p();
        let sg = sign(p, t);
        match x.kind {
            CxKind::Cyclic(m) => {
                let mi = m as i64;
                let idx = |i: usize| (i as i64 + t).rem_euclid(mi) as usize;
                let comps = (0..m).map(|i| x.comps[idx(i)].clone()).collect();
                let diffs = (0..m).map(|i| x.diffs[idx(i)].scale(sg)).collect();
                Ok(Cx { kind: x.kind, lo: 0, comps, diffs })
            }
            CxKind::Bounded => Ok(Cx {
                kind: x.kind,
                lo: x.lo - t,
                comps: x.comps.clone(),
                diffs: x.diffs.iter().map(|d| d.scale(sg)).collect(),
            }),
            CxKind::Window(m) => {
                let mi = m as i64;
                for (s, c) in x.comps.iter().enumerate() {
                    let new_deg = x.degree(s) - t;
                    if !c.is_zero() && !(1..=mi).contains(&new_deg) {
                        return domain(format!("shift by {t} moves degree {} outside 1..{m}", x.degree(s)));
                    }
                }
                let z = self.zero_rep();
                let comps: Vec<Rep> =
                    (1..=mi).map(|i| x.comp_at(i + t).cloned().unwrap_or_else(|| z.clone())).collect();
                let diffs = (1..mi)
                    .map(|i| {
                        let old = i + t;
                        if (1..mi).contains(&old) {
                            x.diffs[(old - 1) as usize].scale(sg)
                        } else {
                            RepMap::zero(p, &comps[(i - 1) as usize], &comps[i as usize])
                        }
                    })
                    .collect();
                Ok(Cx { kind: x.kind, lo: 1, comps, diffs })
            }
        }
    }

    /// Transports a complex along per-slot isomorphisms `g_s: X_s -> X_s`, giving
    /// `g_{s+1} d_s g_s^{-1}`.
    pub fn cx_conjugate(&self, x: &Cx, g: &[RepMap]) -> Result<Cx> {
        let inv = g.iter().map(|f| f.inverse()).collect::<Option<Vec<_>>>();
        let Some(inv) = inv else {
            return domain("conjugation needs invertible maps");
        };
        let diffs = (0..x.diffs.len())
            .map(|s| {
                let t = x.next(s).unwrap();
                g[t].after(&x.diffs[s]).after(&inv[s])
            })
            .collect();
        Ok(Cx { kind: x.kind, lo: x.lo, comps: x.comps.clone(), diffs })
    }

    /// Conjugates by random automorphisms of each component, so that the result is
    /// isomorphic to `x` but no longer block diagonal.
    pub fn cx_scramble(&self, x: &Cx, rng: &mut impl rand::Rng) -> Result<Cx> {
        let p = self.p();
        let g: Vec<RepMap> = x
            .comps
            .iter()
            .map(|comp| {
                let basis = self.hom_basis(comp, comp);
                loop {
                    let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
                    let f = self.combine(comp, comp, &basis, &coeffs);
                    if f.is_iso() {
                        break f;
                    }
                }
            })
            .collect();
        self.cx_conjugate(x, &g)
    }

    pub fn is_chain_map(&self, x: &Cx, y: &Cx, f: &CxMap) -> bool {
        if x.kind != y.kind || x.lo != y.lo || x.comps.len() != y.comps.len() || f.comps.len() != x.comps.len() {
            return false;
        }
        for s in 0..x.comps.len() {
            if !self.is_morphism(&x.comps[s], &y.comps[s], &f.comps[s]) {
                return false;
            }
        }
        (0..x.diffs.len()).all(|s| {
            let t = x.next(s).unwrap();
            f.comps[t].after(&x.diffs[s]) == y.diffs[s].after(&f.comps[s])
        })
    }
}
