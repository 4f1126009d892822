use super::cx::{Cx, CxKind};
use crate::error::{domain, Result};
use crate::exactla::Matrix;
use crate::quiverrep::{Rep, RepCat, RepMap};

impl RepCat {
    fn check_proj_map(&self, q: &Rep, p: &Rep, f: &RepMap) -> Result<()> {
        if !self.is_projective(q) || !self.is_projective(p) {
            return domain("named complexes are built from projective objects");
        }
        if !self.is_morphism(q, p, f) {
            return domain("not a morphism of representations");
        }
        Ok(())
    }

    /// `C_f` for `f: Q -> P`: Q in degree m-1, P in degree 0. For `m = 1` this is `P ⊕ Q`
    /// with differential `[[0, f], [0, 0]]`; in the bounded category Q sits in degree -1.
    pub fn make_cf(&self, q: &Rep, p: &Rep, f: &RepMap, kind: CxKind) -> Result<Cx> {
        self.check_proj_map(q, p, f)?;
        let pr = self.p();
        let z = self.zero_rep();
        match kind {
            CxKind::Cyclic(1) => {
                let sum = self.direct_sum(&[p, q]);
                let comps = (0..self.n())
                    .map(|v| {
                        let (dp, dq) = (p.dims()[v], q.dims()[v]);
                        let mut m = Matrix::zeros(pr, dp + dq, dp + dq);
                        m.set_block(0, dp, f.comp(v));
                        m
                    })
                    .collect();
                self.cx(kind, 0, vec![sum], vec![RepMap::new(comps)])
            }
            CxKind::Cyclic(m) if m >= 2 => {
                let mut comps = vec![z.clone(); m];
                comps[0] = p.clone();
                comps[m - 1] = q.clone();
                let diffs = (0..m)
                    .map(|s| {
                        if s == m - 1 {
                            f.clone()
                        } else {
                            RepMap::zero(pr, &comps[s], &comps[(s + 1) % m])
                        }
                    })
                    .collect();
                self.cx(kind, 0, comps, diffs)
            }
            CxKind::Bounded => self.cx(kind, -1, vec![q.clone(), p.clone()], vec![f.clone()]),
            _ => domain("C_f lives in the cyclic or bounded category"),
        }
    }

    /// `K_P = C_{id_P}`.
    pub fn make_kp(&self, p: &Rep, kind: CxKind) -> Result<Cx> {
        self.make_cf(p, p, &RepMap::identity(self.p(), p), kind)
    }

    /// `T_f` for `f: Q -> P` in m-term complexes: Q in degree m-1, P in degree m.
    pub fn make_tf(&self, q: &Rep, p: &Rep, f: &RepMap, m: usize) -> Result<Cx> {
        self.check_proj_map(q, p, f)?;
        if m < 2 {
            return domain("T_f needs m >= 2");
        }
        let z = self.zero_rep();
        let mut comps = vec![z; m];
        comps[m - 2] = q.clone();
        comps[m - 1] = p.clone();
        let diffs = (0..m - 1)
            .map(|s| if s == m - 2 { f.clone() } else { RepMap::zero(self.p(), &comps[s], &comps[s + 1]) })
            .collect();
        self.cx(CxKind::Window(m), 1, comps, diffs)
    }

    /// `J_P = T_{id_P}`.
    pub fn make_jp(&self, p: &Rep, m: usize) -> Result<Cx> {
        self.make_tf(p, p, &RepMap::identity(self.p(), p), m)
    }

    /// `S_P`: P concentrated in degree 1.
    pub fn make_sp(&self, p: &Rep, m: usize) -> Result<Cx> {
        self.concentrated(p, m, 1)
    }

    /// `T_P`: P concentrated in degree m.
    pub fn make_tp(&self, p: &Rep, m: usize) -> Result<Cx> {
        self.concentrated(p, m, m)
    }

    fn concentrated(&self, p: &Rep, m: usize, deg: usize) -> Result<Cx> {
        if m == 0 {
            return domain("m must be positive");
        }
        if !self.is_projective(p) {
            return domain("named complexes are built from projective objects");
        }
        let z = self.zero_rep();
        let mut comps = vec![z; m];
        comps[deg - 1] = p.clone();
        let diffs = (0..m - 1).map(|s| RepMap::zero(self.p(), &comps[s], &comps[s + 1])).collect();
        self.cx(CxKind::Window(m), 1, comps, diffs)
    }

    /// `C_M = C_{δ_M}` from the minimal projective resolution of M.
    pub fn make_cm(&self, m: &Rep, kind: CxKind) -> Result<Cx> {
        let res = self.min_proj_resolution(m);
        self.make_cf(&res.omega, &res.cover, &res.delta, kind)
    }

    /// `T_M = T_{δ_M}`.
    pub fn make_tm(&self, m: &Rep, terms: usize) -> Result<Cx> {
        if terms < 2 {
            return domain("T_M needs m >= 2");
        }
        let res = self.min_proj_resolution(m);
        self.make_tf(&res.omega, &res.cover, &res.delta, terms)
    }
}
