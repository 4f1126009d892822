use num_bigint::BigUint;

use super::cx::{Cx, CxKind, CxMap};
use crate::error::{domain, Result};
use crate::exactla::{increment, Matrix};
use crate::quiverrep::{RepCat, RepMap};

impl RepCat {
    /// Brings two complexes of the same kind onto common slots (bounded complexes are padded
    /// to the union of their degree ranges).
    pub fn align(&self, x: &Cx, y: &Cx) -> Result<(Cx, Cx)> {
        if x.kind() != y.kind() {
            return domain(format!("kind mismatch: {:?} vs {:?}", x.kind(), y.kind()));
        }
        if x.kind() != CxKind::Bounded {
            return Ok((x.clone(), y.clone()));
        }
        let (lo, hi) = match (x.comps().is_empty(), y.comps().is_empty()) {
            (true, true) => (0, 0),
            (true, false) => (y.lo(), y.hi()),
            (false, true) => (x.lo(), x.hi()),
            (false, false) => (x.lo().min(y.lo()), x.hi().max(y.hi())),
        };
        Ok((self.pad_bounded(x, lo, hi), self.pad_bounded(y, lo, hi)))
    }

    /// Basis of the chain maps `X -> Y`. For bounded complexes the maps refer to the slots of
    /// `align(X, Y)`.
    pub fn cx_hom_basis(&self, x: &Cx, y: &Cx) -> Result<Vec<CxMap>> {
        let (x, y) = self.align(x, y)?;
        Ok(self.chain_maps_aligned(&x, &y))
    }

    pub fn cx_hom_dim(&self, x: &Cx, y: &Cx) -> Result<usize> {
        Ok(self.cx_hom_basis(x, y)?.len())
    }

    pub(crate) fn chain_maps_aligned(&self, x: &Cx, y: &Cx) -> Vec<CxMap> {
        let p = self.p();
        let slots = x.slot_count();
        let bases: Vec<Vec<RepMap>> = (0..slots).map(|s| self.hom_basis(&x.comps()[s], &y.comps()[s])).collect();
        // one equation block per differential: f_t d^X_s - d^Y_s f_s, t = next(s)
        let mut eq_off = Vec::with_capacity(x.diffs().len());
        let mut total_rows = 0;
        for s in 0..x.diffs().len() {
            let t = x.next(s).unwrap();
            eq_off.push(total_rows);
            total_rows += y.comps()[t].dims().iter().zip(x.comps()[s].dims()).map(|(a, b)| a * b).sum::<usize>();
        }
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let mut owners: Vec<(usize, usize)> = Vec::new();
        for s in 0..slots {
            for (bi, b) in bases[s].iter().enumerate() {
                let mut col = vec![0u32; total_rows];
                if let Some(dy) = y.diff(s) {
                    let v = dy.after(b).neg().flatten();
                    add_into(p, &mut col[eq_off[s]..], &v);
                }
                if let Some(ps) = x.prev(s) {
                    if let Some(dx) = x.diff(ps) {
                        if x.next(ps) == Some(s) {
                            let v = b.after(dx).flatten();
                            add_into(p, &mut col[eq_off[ps]..], &v);
                        }
                    }
                }
                cols.push(col);
                owners.push((s, bi));
            }
        }
        if cols.is_empty() {
            return Vec::new();
        }
        let system = Matrix::from_cols(p, total_rows, &cols);
        system
            .kernel_basis()
            .into_iter()
            .map(|coeffs| {
                let mut comps: Vec<RepMap> =
                    (0..slots).map(|s| RepMap::zero(p, &x.comps()[s], &y.comps()[s])).collect();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        let (s, bi) = owners[k];
                        comps[s] = comps[s].add(&bases[s][bi].scale(c));
                    }
                }
                CxMap { comps }
            })
            .collect()
    }

    /// `dim Hom_K(X, Y[i])`: chain maps to the shift modulo null-homotopic ones. Both inputs
    /// must be bounded or m-term (m-term complexes are read as bounded in degrees 1..m).
    pub fn homotopy_hom_dim(&self, x: &Cx, y: &Cx, i: i64) -> Result<usize> {
        let x = self.window_as_bounded(x)?;
        let y = self.window_as_bounded(y)?;
        let z = self.shift(&y, i)?;
        let (x, z) = self.align(&x, &z)?;
        let chain = self.chain_maps_aligned(&x, &z).len();
        if chain == 0 {
            return Ok(0);
        }
        let p = self.p();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for k in 1..x.slot_count() {
            // h: X_k -> Z_{k-1} contributes d^Z_{k-1} h at slot k and h d^X_{k-1} at slot k-1
            for h in self.hom_basis(&x.comps()[k], &z.comps()[k - 1]) {
                let mut comps: Vec<RepMap> =
                    (0..x.slot_count()).map(|s| RepMap::zero(p, &x.comps()[s], &z.comps()[s])).collect();
                comps[k] = z.diffs()[k - 1].after(&h);
                comps[k - 1] = h.after(&x.diffs()[k - 1]);
                gens.push(CxMap { comps }.flatten());
            }
        }
        let rank = if gens.is_empty() { 0 } else { Matrix::from_cols(p, gens[0].len(), &gens).rank() };
        Ok(chain - rank)
    }

    /// Euler form of bounded complexes: `dim Hom - Σ_{i≥1} (-1)^{i+1} dim Hom_K(X, Y[i])`.
    pub fn euler_form_cb(&self, x: &Cx, y: &Cx) -> Result<i64> {
        let xb = self.window_as_bounded(x)?;
        let yb = self.window_as_bounded(y)?;
        if xb.is_zero() || yb.is_zero() {
            return Ok(0);
        }
        let xb = self.trim_bounded(&xb);
        let yb = self.trim_bounded(&yb);
        let mut total = self.cx_hom_dim(&xb, &yb)? as i64;
        let top = (yb.hi() - xb.lo()).max(0);
        for i in 1..=top {
            let e = self.homotopy_hom_dim(&xb, &yb, i)? as i64;
            total += if i % 2 == 0 { e } else { -e };
        }
        Ok(total)
    }

    /// Euler form of m-term complexes, summing Ext^i for `0 <= i <= m-1`.
    pub fn euler_form_cm(&self, x: &Cx, y: &Cx) -> Result<i64> {
        let CxKind::Window(m) = x.kind() else {
            return domain("euler_form_cm needs m-term complexes");
        };
        if y.kind() != x.kind() {
            return domain("kind mismatch");
        }
        let mut total = self.cx_hom_dim(x, y)? as i64;
        for i in 1..m as i64 {
            let e = self.homotopy_hom_dim(x, y, i)? as i64;
            total += if i % 2 == 0 { e } else { -e };
        }
        Ok(total)
    }

    /// `|Aut(X)|` by enumerating all chain endomorphisms.
    pub fn cx_aut_count_enumerated(&self, x: &Cx) -> Result<BigUint> {
        let basis = self.cx_hom_basis(x, x)?;
        self.check_budget("chain endomorphism enumeration", basis.len())?;
        let p = self.p();
        let mut digits = vec![0u32; basis.len()];
        let mut count = 0u64;
        loop {
            let comps = (0..x.slot_count())
                .map(|s| {
                    let b: Vec<RepMap> = basis.iter().map(|f| f.comps[s].clone()).collect();
                    self.combine(&x.comps()[s], &x.comps()[s], &b, &digits)
                })
                .collect();
            if (CxMap { comps }).is_iso() {
                count += 1;
            }
            if !increment(&mut digits, p) {
                break;
            }
        }
        Ok(BigUint::from(count))
    }
}

fn add_into(p: u32, dst: &mut [u32], v: &[u32]) {
    for (d, &x) in dst.iter_mut().zip(v) {
        *d = (*d + x) % p;
    }
}
