use std::collections::BTreeMap;

use super::cx::{Cx, CxKind};
use super::decompose::{CxKey, Label};
use crate::error::{check_budget, domain, Result};
use crate::exactla::increment;
use crate::quiverrep::{dims_up_to, IndecKey, Rep, RepCat, RepMap};

/// Per-degree component dimensions of a complex (nonzero components only).
pub type CompProfile = BTreeMap<i64, Vec<usize>>;

impl RepCat {
    /// Indecomposable labels of a category: modules in `C_M[r]` / `T_M[r]` range over
    /// indecomposables with dims `<= mdmax`; shifts cover `0..m` (cyclic), `0..=m-2`
    /// (m-term) or `levels` (bounded).
    pub fn cx_indecomposable_labels(
        &self,
        kind: CxKind,
        mdmax: &[usize],
        levels: Option<(i64, i64)>,
    ) -> Result<Vec<Label>> {
        let mut modules: Vec<IndecKey> = Vec::new();
        for d in dims_up_to(mdmax) {
            if d.iter().all(|&x| x == 0) {
                continue;
            }
            for index in 0..self.indecomposable_count(&d)? {
                modules.push(IndecKey { dims: d.clone(), index });
            }
        }
        let n = self.n();
        let mut out = Vec::new();
        match kind {
            CxKind::Cyclic(m) => {
                for r in 0..m as i64 {
                    out.extend(modules.iter().map(|y| Label::C { module: y.clone(), shift: r }));
                    out.extend((0..n).map(|v| Label::K { vertex: v, shift: r }));
                }
            }
            CxKind::Window(m) => {
                out.extend((0..n).map(|v| Label::S { vertex: v }));
                for r in 0..(m as i64 - 1) {
                    out.extend(modules.iter().map(|y| Label::T { module: y.clone(), shift: r }));
                    out.extend((0..n).map(|v| Label::J { vertex: v, shift: r }));
                }
            }
            CxKind::Bounded => {
                let Some((lo, hi)) = levels else {
                    return domain("bounded labels need a level window");
                };
                for r in lo..=hi {
                    out.extend(modules.iter().map(|y| Label::C { module: y.clone(), shift: r }));
                    out.extend((0..n).map(|v| Label::K { vertex: v, shift: r }));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn cx_profile_of(&self, x: &Cx) -> CompProfile {
        (0..x.slot_count())
            .filter(|&s| !x.comps()[s].is_zero())
            .map(|s| (x.degree(s), x.comps()[s].dims().to_vec()))
            .collect()
    }

    /// All multisets of `labels` whose summed components fit `fits`, zero included.
    pub fn enumerate_cx_keys(
        &self,
        kind: CxKind,
        labels: &[Label],
        fits: &dyn Fn(&CompProfile) -> bool,
    ) -> Result<Vec<CxKey>> {
        let profiles = labels
            .iter()
            .map(|l| Ok(self.cx_profile_of(&self.realize_label(l, kind)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        let mut acc = Vec::new();
        let mut used = CompProfile::new();
        label_multisets(labels, &profiles, 0, fits, &mut used, &mut acc, &mut out);
        out.sort();
        Ok(out)
    }

    /// Iso classes whose components in every degree have dims `<= bound`.
    pub fn enumerate_cx_classes(
        &self,
        kind: CxKind,
        mdmax: &[usize],
        bound: &[usize],
        levels: Option<(i64, i64)>,
    ) -> Result<Vec<CxKey>> {
        let labels = self.cx_indecomposable_labels(kind, mdmax, levels)?;
        let bound = bound.to_vec();
        self.enumerate_cx_keys(kind, &labels, &move |prof: &CompProfile| {
            prof.values().all(|d| d.iter().zip(&bound).all(|(a, b)| a <= b))
        })
    }

    /// Iso classes with exactly the given component profile.
    pub fn cx_classes_with_profile(&self, kind: CxKind, target: &CompProfile) -> Result<Vec<CxKey>> {
        let n = self.n();
        let mut mdmax = vec![0usize; n];
        for d in target.values() {
            for (a, b) in mdmax.iter_mut().zip(d) {
                *a = (*a).max(*b);
            }
        }
        let levels = if kind == CxKind::Bounded {
            let lo = *target.keys().next().unwrap_or(&0);
            let hi = *target.keys().last().unwrap_or(&0);
            Some((-hi - 1, -lo + 1))
        } else {
            None
        };
        let labels = self.cx_indecomposable_labels(kind, &mdmax, levels)?;
        let target = target.clone();
        let sub = target.clone();
        let keys = self.enumerate_cx_keys(kind, &labels, &move |prof: &CompProfile| {
            prof.iter().all(|(deg, d)| sub.get(deg).is_some_and(|t| d.iter().zip(t).all(|(a, b)| a <= b)))
        })?;
        let mut out = Vec::new();
        for k in keys {
            let prof = self.cx_profile_of(&self.realize_cx(&k, kind)?);
            if prof == target {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Every complex (raw data, not up to isomorphism) of the given cyclic or m-term kind whose
    /// components are projectives with dims `<= bound`.
    pub fn for_each_raw_cx(&self, kind: CxKind, bound: &[usize], mut f: impl FnMut(Cx) -> Result<()>) -> Result<()> {
        let m = match kind {
            CxKind::Cyclic(m) | CxKind::Window(m) => m,
            CxKind::Bounded => return domain("raw enumeration is for cyclic and m-term complexes"),
        };
        let lo = if matches!(kind, CxKind::Window(_)) { 1 } else { 0 };
        let options = self.projectives_within(bound);
        let mut choice = vec![0usize; m];
        loop {
            let comps: Vec<Rep> = choice.iter().map(|&c| options[c].clone()).collect();
            let nd = if matches!(kind, CxKind::Cyclic(_)) { m } else { m - 1 };
            let next = |s: usize| (s + 1) % m;
            let bases: Vec<Vec<RepMap>> = (0..nd).map(|s| self.hom_basis(&comps[s], &comps[next(s)])).collect();
            let total: usize = bases.iter().map(|b| b.len()).sum();
            check_budget("raw complex enumeration", self.p() as u64, total, self.budget())?;
            let mut digits = vec![0u32; total];
            loop {
                let mut off = 0;
                let diffs: Vec<RepMap> = (0..nd)
                    .map(|s| {
                        let k = bases[s].len();
                        let d = self.combine(&comps[s], &comps[next(s)], &bases[s], &digits[off..off + k]);
                        off += k;
                        d
                    })
                    .collect();
                let square_zero = (0..nd).all(|s| {
                    let t = next(s);
                    t >= nd || diffs[t].after(&diffs[s]).is_zero()
                });
                if square_zero {
                    f(Cx { kind, lo, comps: comps.clone(), diffs })?;
                }
                if !increment(&mut digits, self.p()) {
                    break;
                }
            }
            // advance the component choice
            let mut i = 0;
            loop {
                if i == m {
                    return Ok(());
                }
                choice[i] += 1;
                if choice[i] < options.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Projective representations (one per iso class) with dims `<= bound`.
    pub fn projectives_within(&self, bound: &[usize]) -> Vec<Rep> {
        let n = self.n();
        let mut out = Vec::new();
        let maxk = bound.iter().copied().max().unwrap_or(0);
        let mut mult = vec![0usize; n];
        loop {
            let p = self.projective_sum(&mult);
            if p.dims().iter().zip(bound).all(|(a, b)| a <= b) {
                out.push(p);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                mult[i] += 1;
                if mult[i] <= maxk {
                    break;
                }
                mult[i] = 0;
                i += 1;
            }
        }
    }
}

fn label_multisets(
    labels: &[Label],
    profiles: &[CompProfile],
    start: usize,
    fits: &dyn Fn(&CompProfile) -> bool,
    used: &mut CompProfile,
    acc: &mut Vec<Label>,
    out: &mut Vec<CxKey>,
) {
    out.push(CxKey::from_labels(acc.clone()));
    for i in start..labels.len() {
        let mut next = used.clone();
        for (deg, d) in &profiles[i] {
            let e = next.entry(*deg).or_insert_with(|| vec![0; d.len()]);
            for (a, b) in e.iter_mut().zip(d) {
                *a += b;
            }
        }
        if profiles[i].is_empty() || !fits(&next) {
            continue;
        }
        let saved = std::mem::replace(used, next);
        acc.push(labels[i].clone());
        label_multisets(labels, profiles, i, fits, used, acc, out);
        acc.pop();
        *used = saved;
    }
}
