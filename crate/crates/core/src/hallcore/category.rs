use std::collections::{BTreeMap, HashMap};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;
use parking_lot::RwLock;

use crate::complexcat::{Cx, CxKey, CxKind, Label};
use crate::error::{check_budget, inconsistent, Result};
use crate::exactla::{increment, Matrix};
use crate::quiverrep::{IndecKey, ModuleKey, Rep, RepCat, RepMap};

/// A finitary exact category whose Hall algebra we can compute: iso classes are keyed
/// canonically, and extensions, subobjects and automorphisms can be counted.
pub trait HallCategory: Sync {
    type Obj: Clone + Send + Sync;
    type Key: Clone + Ord + Eq + Hash + Display + Debug + Send + Sync;

    fn rep_cat(&self) -> &RepCat;

    fn p(&self) -> u32 {
        self.rep_cat().p()
    }

    fn zero_key(&self) -> Self::Key;

    fn key_of(&self, x: &Self::Obj) -> Result<Self::Key>;

    fn realize(&self, k: &Self::Key) -> Result<Self::Obj>;

    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj) -> Result<usize>;

    /// Middle terms of all extensions `0 -> N -> L -> M -> 0`, as
    /// `(dim Ext^1(M, N), |Ext^1(M, N)_L| per class L)`.
    fn extension_classes(&self, m: &Self::Obj, n: &Self::Obj) -> Result<(usize, BTreeMap<Self::Key, u64>)>;

    /// Indecomposable summands with multiplicities.
    fn summands(&self, k: &Self::Key) -> Vec<(Self::Key, usize)>;

    /// `|Aut(X)|`.
    fn aut_count(&self, k: &Self::Key) -> Result<BigUint>;

    /// `g^L_{MN}`: subobjects `N' ⊂ L` with `N' ≅ N` and `L/N' ≅ M`.
    fn subobject_count(&self, m: &Self::Key, n: &Self::Key, l: &Self::Key) -> Result<u64>;

    /// Every class that could be the middle term of an extension of M by N.
    fn middle_candidates(&self, m: &Self::Key, n: &Self::Key) -> Result<Vec<Self::Key>>;
}

/// `|Aut(X)|` for `X = ⊕ X_i^{n_i}` from `dim End(X)` and the residue degrees `s_i` of the
/// local rings `End(X_i)`: `p^{dim End} Π_i Π_{j=1}^{n_i} (1 - p^{-s_i j})`.
pub fn structural_aut(p: u32, end_dim: usize, parts: &[(usize, usize)]) -> Result<BigUint> {
    let pb = BigUint::from(p);
    let mut shift: i64 = end_dim as i64;
    let mut prod = BigUint::one();
    for &(s, n) in parts {
        for j in 1..=n {
            shift -= (s * j) as i64;
            prod *= pb.pow((s * j) as u32) - BigUint::one();
        }
    }
    if shift < 0 {
        return inconsistent("radical dimension exceeds End dimension");
    }
    Ok(prod * pb.pow(shift as u32))
}

/// Representatives of `Z / B` given spanning vectors of both (B ⊂ Z): every element of
/// `Σ c_i w_i` for the returned `w_i` hits each coset exactly once.
pub(crate) fn coset_basis(p: u32, len: usize, b: &[Vec<u32>], z: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut cols: Vec<Vec<u32>> = b.to_vec();
    cols.extend(z.iter().cloned());
    if cols.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_cols(p, len, &cols);
    m.echelon().pivots.into_iter().filter(|&c| c >= b.len()).map(|c| cols[c].clone()).collect()
}

/// Calls `f` on every F_p-combination of `basis` vectors.
pub(crate) fn for_each_combination(
    p: u32,
    budget: u64,
    len: usize,
    basis: &[Vec<u32>],
    what: &str,
    mut f: impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    check_budget(what, p as u64, basis.len(), budget)?;
    let mut digits = vec![0u32; basis.len()];
    let mut v = vec![0u32; len];
    loop {
        for x in v.iter_mut() {
            *x = 0;
        }
        for (b, &c) in basis.iter().zip(&digits) {
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ((*x as u64 + c as u64 * y as u64) % p as u64) as u32;
                }
            }
        }
        f(&v)?;
        if !increment(&mut digits, p) {
            return Ok(());
        }
    }
}

/// Subobject enumeration: every arrow-stable choice of subspaces with the given dimensions.
fn stable_subspaces(cat: &RepCat, l: &Rep, dims: &[usize]) -> Result<Vec<Vec<Matrix>>> {
    let p = cat.p();
    let n = cat.n();
    let mut per_vertex: Vec<Vec<Matrix>> = Vec::with_capacity(n);
    let mut total: u64 = 1;
    for v in 0..n {
        if dims[v] > l.dims()[v] {
            return Ok(Vec::new());
        }
        let subs: Vec<Matrix> = crate::exactla::enumerate_subspaces(l.dims()[v], dims[v], p)?
            .into_iter()
            .map(|rows| rows.transpose())
            .collect();
        total = total.saturating_mul(subs.len() as u64);
        per_vertex.push(subs);
    }
    if total > cat.budget() {
        return Err(crate::Error::BudgetExceeded {
            what: "subobject enumeration".into(),
            needed: total.to_string(),
            budget: cat.budget(),
        });
    }
    let order = cat.quiver().topological_order().expect("acyclic");
    let mut out = Vec::new();
    let mut choice: Vec<Option<Matrix>> = vec![None; n];
    fn rec(
        cat: &RepCat,
        l: &Rep,
        order: &[usize],
        idx: usize,
        per_vertex: &[Vec<Matrix>],
        choice: &mut Vec<Option<Matrix>>,
        out: &mut Vec<Vec<Matrix>>,
    ) {
        if idx == order.len() {
            out.push(choice.iter().map(|c| c.clone().unwrap()).collect());
            return;
        }
        let v = order[idx];
        for cand in &per_vertex[v] {
            // arrows into v from already-chosen vertices must map into the candidate
            let ok = cat.quiver().arrows_into(v).all(|a| {
                let s = cat.quiver().arrows()[a].0;
                match &choice[s] {
                    Some(bs) => cand.col_span_contains(&l.map(a).mul(bs)),
                    None => true,
                }
            });
            if ok {
                choice[v] = Some(cand.clone());
                rec(cat, l, order, idx + 1, per_vertex, choice, out);
                choice[v] = None;
            }
        }
    }
    rec(cat, l, &order, 0, &per_vertex, &mut choice, &mut out);
    Ok(out)
}

// ---- modules ------------------------------------------------------------------------------

/// The category rep(kQ) itself.
pub struct ModuleHall<'a> {
    pub cat: &'a RepCat,
    residue: RwLock<HashMap<IndecKey, usize>>,
}

impl<'a> ModuleHall<'a> {
    pub fn new(cat: &'a RepCat) -> Self {
        Self { cat, residue: RwLock::new(HashMap::new()) }
    }

    fn residue_degree(&self, k: &IndecKey) -> Result<usize> {
        if let Some(&s) = self.residue.read().get(k) {
            return Ok(s);
        }
        let x = self.cat.indecomposable_rep(k)?;
        let e = self.cat.hom_dim(&x, &x);
        let s = if e == 1 { 1 } else { residue_from_count(self.p(), e, self.cat.aut_count(&x)? as u128)? };
        self.residue.write().insert(k.clone(), s);
        Ok(s)
    }

    /// Extension `L_h` of M by N with arrow maps `[[N_a, h_a], [0, M_a]]`.
    pub fn extension_module(&self, m: &Rep, n: &Rep, h: &[Matrix]) -> Rep {
        let p = self.p();
        let dims: Vec<usize> = n.dims().iter().zip(m.dims()).map(|(a, b)| a + b).collect();
        let maps = self
            .cat
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut x = Matrix::zeros(p, dims[t], dims[s]);
                x.set_block(0, 0, n.map(a));
                x.set_block(0, n.dims()[s], &h[a]);
                x.set_block(n.dims()[t], n.dims()[s], m.map(a));
                x
            })
            .collect();
        self.cat.rep(dims, maps).expect("extension has consistent shapes")
    }
}

fn residue_from_count(p: u32, e: usize, aut: u128) -> Result<usize> {
    let total = (p as u128).pow(e as u32);
    let mut rad = total - aut;
    let mut d = 0;
    while rad > 1 {
        if rad % p as u128 != 0 {
            return inconsistent("endomorphism ring of an indecomposable is not local");
        }
        rad /= p as u128;
        d += 1;
    }
    Ok(e - d)
}

impl HallCategory for ModuleHall<'_> {
    type Obj = Rep;
    type Key = ModuleKey;

    fn rep_cat(&self) -> &RepCat {
        self.cat
    }

    fn zero_key(&self) -> ModuleKey {
        ModuleKey::zero()
    }

    fn key_of(&self, x: &Rep) -> Result<ModuleKey> {
        self.cat.module_key(x)
    }

    fn realize(&self, k: &ModuleKey) -> Result<Rep> {
        self.cat.realize_module(k)
    }

    fn hom_dim(&self, x: &Rep, y: &Rep) -> Result<usize> {
        Ok(self.cat.hom_dim(x, y))
    }

    fn extension_classes(&self, m: &Rep, n: &Rep) -> Result<(usize, BTreeMap<ModuleKey, u64>)> {
        let p = self.p();
        let arrows = self.cat.quiver().arrows();
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (n.dims()[t], m.dims()[s])).collect();
        let len: usize = shapes.iter().map(|&(r, c)| r * c).sum();
        let unflat = |v: &[u32]| -> Vec<Matrix> {
            let mut off = 0;
            shapes
                .iter()
                .map(|&(r, c)| {
                    let e: Vec<i64> = v[off..off + r * c].iter().map(|&x| x as i64).collect();
                    off += r * c;
                    Matrix::from_vec(p, r, c, e)
                })
                .collect()
        };
        // coboundaries of s = (s_v: M_v -> N_v): h_a = s_t M_a - N_a s_s
        let mut b = Vec::new();
        for v in 0..self.cat.n() {
            for i in 0..n.dims()[v] {
                for j in 0..m.dims()[v] {
                    let mut s = Matrix::zeros(p, n.dims()[v], m.dims()[v]);
                    s.set(i, j, 1);
                    let mut vec = Vec::with_capacity(len);
                    for (a, &(src, tgt)) in arrows.iter().enumerate() {
                        let mut h = Matrix::zeros(p, n.dims()[tgt], m.dims()[src]);
                        if tgt == v {
                            h = h.add(&s.mul(m.map(a)));
                        }
                        if src == v {
                            h = h.sub(&n.map(a).mul(&s));
                        }
                        vec.extend_from_slice(h.entries());
                    }
                    b.push(vec);
                }
            }
        }
        let z: Vec<Vec<u32>> = (0..len)
            .map(|i| {
                let mut e = vec![0u32; len];
                e[i] = 1;
                e
            })
            .collect();
        let reps = coset_basis(p, len, &b, &z);
        let mut out: BTreeMap<ModuleKey, u64> = BTreeMap::new();
        for_each_combination(p, self.cat.budget(), len, &reps, "extension enumeration", |h| {
            let l = self.extension_module(m, n, &unflat(h));
            *out.entry(self.cat.module_key(&l)?).or_default() += 1;
            Ok(())
        })?;
        Ok((reps.len(), out))
    }

    fn summands(&self, k: &ModuleKey) -> Vec<(ModuleKey, usize)> {
        let mut counts: BTreeMap<IndecKey, usize> = BTreeMap::new();
        for s in k.summands() {
            *counts.entry(s.clone()).or_default() += 1;
        }
        counts.into_iter().map(|(s, c)| (ModuleKey(vec![s]), c)).collect()
    }

    fn aut_count(&self, k: &ModuleKey) -> Result<BigUint> {
        let x = self.realize(k)?;
        let e = self.cat.hom_dim(&x, &x);
        let mut parts = Vec::new();
        for (s, c) in self.summands(k) {
            parts.push((self.residue_degree(&s.0[0])?, c));
        }
        structural_aut(self.p(), e, &parts)
    }

    fn subobject_count(&self, m: &ModuleKey, n: &ModuleKey, l: &ModuleKey) -> Result<u64> {
        let lr = self.realize(l)?;
        let nn = self.cat.n();
        let nd = n.dims(nn);
        let md = m.dims(nn);
        if lr.dims().iter().zip(nd.iter().zip(&md)).any(|(a, (b, c))| *a != b + c) {
            return Ok(0);
        }
        let mut count = 0;
        for bases in stable_subspaces(self.cat, &lr, &nd)? {
            let (sub, _) = self.cat.subrep(&lr, &bases)?;
            if self.cat.module_key(&sub)? != *n {
                continue;
            }
            let (quo, _) = self.cat.quotient(&lr, &bases)?;
            if self.cat.module_key(&quo)? == *m {
                count += 1;
            }
        }
        Ok(count)
    }

    fn middle_candidates(&self, m: &ModuleKey, n: &ModuleKey) -> Result<Vec<ModuleKey>> {
        let nn = self.cat.n();
        let d: Vec<usize> = m.dims(nn).iter().zip(n.dims(nn)).map(|(a, b)| a + b).collect();
        self.cat.iso_classes_with_dims(&d)
    }
}

// ---- complexes ----------------------------------------------------------------------------

/// Cyclic, m-term or bounded complexes of projectives with the degreewise split exact
/// structure.
pub struct ComplexHall<'a> {
    pub cat: &'a RepCat,
    pub kind: CxKind,
    residue: RwLock<HashMap<Label, usize>>,
}

impl<'a> ComplexHall<'a> {
    pub fn new(cat: &'a RepCat, kind: CxKind) -> Self {
        Self { cat, kind, residue: RwLock::new(HashMap::new()) }
    }

    fn residue_degree(&self, l: &Label) -> Result<usize> {
        if let Some(&s) = self.residue.read().get(l) {
            return Ok(s);
        }
        let x = self.cat.realize_label(l, self.kind)?;
        let e = self.cat.cx_hom_dim(&x, &x)?;
        let s = if e == 1 {
            1
        } else {
            let aut = self.cat.cx_aut_count_enumerated(&x)?;
            let aut: u128 = aut.try_into().map_err(|_| crate::Error::Inconsistency("aut count overflow".into()))?;
            residue_from_count(self.p(), e, aut)?
        };
        self.residue.write().insert(l.clone(), s);
        Ok(s)
    }

    /// Extension with differential `[[d^N, h], [0, d^M]]` on `N ⊕ M` (both aligned).
    pub fn extension_complex(&self, m: &Cx, n: &Cx, h: &[RepMap]) -> Cx {
        let p = self.p();
        let comps: Vec<Rep> =
            (0..m.slot_count()).map(|s| self.cat.direct_sum(&[&n.comps()[s], &m.comps()[s]])).collect();
        let diffs = (0..m.diffs().len())
            .map(|s| {
                let t = m.next(s).unwrap();
                let vs = (0..self.cat.n())
                    .map(|v| {
                        let (nt, ns) = (n.comps()[t].dims()[v], n.comps()[s].dims()[v]);
                        let (mt, ms) = (m.comps()[t].dims()[v], m.comps()[s].dims()[v]);
                        let mut x = Matrix::zeros(p, nt + mt, ns + ms);
                        x.set_block(0, 0, n.diffs()[s].comp(v));
                        x.set_block(0, ns, h[s].comp(v));
                        x.set_block(nt, ns, m.diffs()[s].comp(v));
                        x
                    })
                    .collect();
                RepMap::new(vs)
            })
            .collect();
        Cx { kind: m.kind(), lo: m.lo(), comps, diffs }
    }

    /// Subcomplex and quotient complex of L cut out by per-slot stable subspaces.
    fn sub_and_quotient(&self, l: &Cx, bases: &[Vec<Matrix>]) -> Result<(Cx, Cx)> {
        let n = self.cat.n();
        let mut subs = Vec::new();
        let mut quos = Vec::new();
        let mut projs = Vec::new();
        let mut secs = Vec::new();
        for (s, b) in bases.iter().enumerate() {
            subs.push(self.cat.subrep(&l.comps()[s], b)?.0);
            let (q, pr) = self.cat.quotient(&l.comps()[s], b)?;
            quos.push(q);
            projs.push(pr);
            secs.push(b.iter().map(|m| m.complement_basis()).collect::<Vec<_>>());
        }
        let mut sd = Vec::new();
        let mut qd = Vec::new();
        for s in 0..l.diffs().len() {
            let t = l.next(s).unwrap();
            let d = &l.diffs()[s];
            let mut sc = Vec::with_capacity(n);
            let mut qc = Vec::with_capacity(n);
            for v in 0..n {
                let img = d.comp(v).mul(&bases[s][v]);
                let x = bases[t][v]
                    .solve_matrix(&img)
                    .ok_or_else(|| crate::Error::Inconsistency("subcomplex not closed under d".into()))?;
                sc.push(x);
                qc.push(projs[t].comp(v).mul(d.comp(v)).mul(&secs[s][v]));
            }
            sd.push(RepMap::new(sc));
            qd.push(RepMap::new(qc));
        }
        Ok((
            Cx { kind: l.kind(), lo: l.lo(), comps: subs, diffs: sd },
            Cx { kind: l.kind(), lo: l.lo(), comps: quos, diffs: qd },
        ))
    }

    fn key_if_projective(&self, x: &Cx) -> Result<Option<CxKey>> {
        if x.comps().iter().any(|c| !self.cat.is_projective(c)) {
            return Ok(None);
        }
        Ok(Some(self.cat.cx_key(x)?))
    }
}

impl HallCategory for ComplexHall<'_> {
    type Obj = Cx;
    type Key = CxKey;

    fn rep_cat(&self) -> &RepCat {
        self.cat
    }

    fn zero_key(&self) -> CxKey {
        CxKey::zero()
    }

    fn key_of(&self, x: &Cx) -> Result<CxKey> {
        self.cat.cx_key(x)
    }

    fn realize(&self, k: &CxKey) -> Result<Cx> {
        self.cat.realize_cx(k, self.kind)
    }

    fn hom_dim(&self, x: &Cx, y: &Cx) -> Result<usize> {
        self.cat.cx_hom_dim(x, y)
    }

    fn extension_classes(&self, m: &Cx, n: &Cx) -> Result<(usize, BTreeMap<CxKey, u64>)> {
        let cat = self.cat;
        let p = self.p();
        let (m, n) = cat.align(m, n)?;
        let nd = m.diffs().len();
        // h_k: M_k -> N_{next k}, coordinates over Hom_A bases
        let hb: Vec<Vec<RepMap>> =
            (0..nd).map(|k| cat.hom_basis(&m.comps()[k], &n.comps()[m.next(k).unwrap()])).collect();
        let shapes: Vec<usize> = hb.iter().map(|b| b.first().map_or(0, |f| f.flatten().len())).collect();
        let flat_len_of = |k: usize| -> usize {
            let t = m.next(k).unwrap();
            m.comps()[k].dims().iter().zip(n.comps()[t].dims()).map(|(a, b)| a * b).sum()
        };
        let offs: Vec<usize> = (0..nd)
            .scan(0, |acc, k| {
                let o = *acc;
                *acc += flat_len_of(k);
                Some(o)
            })
            .collect();
        let len: usize = (0..nd).map(flat_len_of).sum();
        let _ = shapes;
        // cocycle equations: d^N_{t} h_k + h_t d^M_k = 0 whenever k and t = next(k) both have
        // differentials
        let mut eq_rows = 0;
        let mut eq_off = vec![usize::MAX; nd];
        for k in 0..nd {
            let t = m.next(k).unwrap();
            if t < nd {
                let u = m.next(t).unwrap();
                eq_off[k] = eq_rows;
                eq_rows += m.comps()[k].dims().iter().zip(n.comps()[u].dims()).map(|(a, b)| a * b).sum::<usize>();
            }
        }
        let mut unknown_cols: Vec<Vec<u32>> = Vec::new();
        let mut unknown_flat: Vec<Vec<u32>> = Vec::new();
        for j in 0..nd {
            for f in &hb[j] {
                let mut col = vec![0u32; eq_rows];
                // as h_k with k = j: term d^N_{next j} f
                let t = m.next(j).unwrap();
                if eq_off[j] != usize::MAX {
                    let v = n.diffs()[t].after(f).flatten();
                    add_into(p, &mut col[eq_off[j]..], &v);
                }
                // as h_t with t = j: term f d^M_k for the k with next(k) = j
                if let Some(k) = m.prev(j) {
                    if k < nd && m.next(k) == Some(j) && eq_off[k] != usize::MAX {
                        let v = f.after(&m.diffs()[k]).flatten();
                        add_into(p, &mut col[eq_off[k]..], &v);
                    }
                }
                unknown_cols.push(col);
                let mut flat = vec![0u32; len];
                let fv = f.flatten();
                flat[offs[j]..offs[j] + fv.len()].copy_from_slice(&fv);
                unknown_flat.push(flat);
            }
        }
        let z: Vec<Vec<u32>> = if unknown_cols.is_empty() {
            Vec::new()
        } else if eq_rows == 0 {
            unknown_flat.clone()
        } else {
            Matrix::from_cols(p, eq_rows, &unknown_cols)
                .kernel_basis()
                .into_iter()
                .map(|c| {
                    let mut v = vec![0u32; len];
                    for (coef, fl) in c.iter().zip(&unknown_flat) {
                        if *coef != 0 {
                            for (x, y) in v.iter_mut().zip(fl) {
                                *x = ((*x as u64 + *coef as u64 * *y as u64) % p as u64) as u32;
                            }
                        }
                    }
                    v
                })
                .collect()
        };
        // coboundaries from s_j: M_j -> N_j: h_j -= d^N_j s_j, h_k += s_j d^M_k for next(k) = j
        let mut b = Vec::new();
        for j in 0..m.slot_count() {
            for s in cat.hom_basis(&m.comps()[j], &n.comps()[j]) {
                let mut v = vec![0u32; len];
                if j < nd {
                    let fv = n.diffs()[j].after(&s).neg().flatten();
                    add_into(p, &mut v[offs[j]..], &fv);
                }
                if let Some(k) = m.prev(j) {
                    if k < nd && m.next(k) == Some(j) {
                        let fv = s.after(&m.diffs()[k]).flatten();
                        add_into(p, &mut v[offs[k]..], &fv);
                    }
                }
                b.push(v);
            }
        }
        let reps = coset_basis(p, len, &b, &z);
        let unflat = |v: &[u32]| -> Vec<RepMap> {
            (0..nd)
                .map(|k| {
                    let t = m.next(k).unwrap();
                    let shapes: Vec<(usize, usize)> =
                        m.comps()[k].dims().iter().zip(n.comps()[t].dims()).map(|(&a, &b)| (b, a)).collect();
                    crate::quiverrep::unflatten(p, &shapes, &v[offs[k]..offs[k] + flat_len_of(k)])
                })
                .collect()
        };
        let mut out: BTreeMap<CxKey, u64> = BTreeMap::new();
        for_each_combination(p, cat.budget(), len, &reps, "extension enumeration", |h| {
            let l = self.extension_complex(&m, &n, &unflat(h));
            *out.entry(cat.cx_key(&l)?).or_default() += 1;
            Ok(())
        })?;
        Ok((reps.len(), out))
    }

    fn summands(&self, k: &CxKey) -> Vec<(CxKey, usize)> {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for s in k.labels() {
            *counts.entry(s.clone()).or_default() += 1;
        }
        counts.into_iter().map(|(s, c)| (CxKey(vec![s]), c)).collect()
    }

    fn aut_count(&self, k: &CxKey) -> Result<BigUint> {
        let x = self.realize(k)?;
        let e = self.cat.cx_hom_dim(&x, &x)?;
        let mut parts = Vec::new();
        for (s, c) in self.summands(k) {
            parts.push((self.residue_degree(&s.0[0])?, c));
        }
        structural_aut(self.p(), e, &parts)
    }

    fn subobject_count(&self, m: &CxKey, n: &CxKey, l: &CxKey) -> Result<u64> {
        let cat = self.cat;
        let (lx, nx) = cat.align(&self.realize(l)?, &self.realize(n)?)?;
        let (lx, mx) = cat.align(&lx, &self.realize(m)?)?;
        let (nx, _) = cat.align(&nx, &lx)?;
        let slots = lx.slot_count();
        for s in 0..slots {
            let ok = (0..cat.n()).all(|v| {
                lx.comps()[s].dims()[v] == nx.comps()[s].dims()[v] + mx.comps()[s].dims()[v]
            });
            if !ok {
                return Ok(0);
            }
        }
        let per_slot: Vec<Vec<Vec<Matrix>>> = (0..slots)
            .map(|s| stable_subspaces(cat, &lx.comps()[s], nx.comps()[s].dims()))
            .collect::<Result<_>>()?;
        let mut total: u64 = 1;
        for ps in &per_slot {
            total = total.saturating_mul(ps.len() as u64);
        }
        if total > cat.budget() {
            return Err(crate::Error::BudgetExceeded {
                what: "subcomplex enumeration".into(),
                needed: total.to_string(),
                budget: cat.budget(),
            });
        }
        let mut count = 0u64;
        let mut choice = vec![0usize; slots];
        if per_slot.iter().any(|v| v.is_empty()) {
            return Ok(0);
        }
        loop {
            let bases: Vec<Vec<Matrix>> = (0..slots).map(|s| per_slot[s][choice[s]].clone()).collect();
            let closed = (0..lx.diffs().len()).all(|s| {
                let t = lx.next(s).unwrap();
                (0..cat.n()).all(|v| bases[t][v].col_span_contains(&lx.diffs()[s].comp(v).mul(&bases[s][v])))
            });
            if closed {
                let (sub, quo) = self.sub_and_quotient(&lx, &bases)?;
                if self.key_if_projective(&sub)?.as_ref() == Some(n)
                    && self.key_if_projective(&quo)?.as_ref() == Some(m)
                {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == slots {
                    return Ok(count);
                }
                choice[i] += 1;
                if choice[i] < per_slot[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn middle_candidates(&self, m: &CxKey, n: &CxKey) -> Result<Vec<CxKey>> {
        let mut prof = self.cat.cx_profile_of(&self.realize(m)?);
        for (deg, d) in self.cat.cx_profile_of(&self.realize(n)?) {
            let e = prof.entry(deg).or_insert_with(|| vec![0; d.len()]);
            for (a, b) in e.iter_mut().zip(&d) {
                *a += b;
            }
        }
        self.cat.cx_classes_with_profile(self.kind, &prof)
    }
}

fn add_into(p: u32, dst: &mut [u32], v: &[u32]) {
    for (d, &x) in dst.iter_mut().zip(v) {
        *d = (*d + x) % p;
    }
}
