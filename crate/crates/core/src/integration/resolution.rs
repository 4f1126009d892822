use crate::complexcat::{Cx, CxKind, CxMap};
use crate::error::{domain, inconsistent, Result};
use crate::exactla::Matrix;
use crate::quiverrep::{Rep, RepCat, RepMap};

/// An injective resolution `0 -> M -> S_A ⊕ J_C -> S_B ⊕ J_D -> 0` of a 2-term complex.
///
/// The second map is recorded by its blocks: `u: A -> B`, `v: C -> B` and `w: C -> D`
/// (there are no nonzero chain maps `S_A -> J_D`).
#[derive(Clone, Debug)]
pub struct InjectiveResolution {
    pub source: Cx,
    pub a: Rep,
    pub c: Rep,
    pub b: Rep,
    pub d: Rep,
    /// Degree-1 component `M_1 -> A ⊕ C`.
    pub into1: RepMap,
    /// Degree-2 component `M_2 -> C`.
    pub into2: RepMap,
    pub u: RepMap,
    pub v: RepMap,
    pub w: RepMap,
}

/// Multiplicities of `S_{P_i}` and `J_{P_i}` in a minimal injective resolution
/// `0 -> M -> ⊕ a_i S_{P_i} ⊕ ⊕ c_i J_{P_i} -> ⊕ b_i S_{P_i} -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalMultiplicities {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl MinimalMultiplicities {
    /// `dim M = (b - a | c)`.
    pub fn dim_vec(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.b.iter().zip(&self.a).map(|(&b, &a)| b as i64 - a as i64).collect();
        out.extend(self.c.iter().map(|&c| c as i64));
        out
    }

    /// Coordinates `(a - b | c)` of the class in the basis `Ŝ_{P_1..n}, Ĵ_{P_1..n}`.
    pub fn coords(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.a.iter().zip(&self.b).map(|(&a, &b)| a as i64 - b as i64).collect();
        out.extend(self.c.iter().map(|&c| c as i64));
        out
    }
}

fn id(p: u32, r: &Rep, v: usize) -> Matrix {
    Matrix::identity(p, r.dims()[v])
}

impl RepCat {
    fn check_two_term(&self, x: &Cx) -> Result<()> {
        if x.kind() != CxKind::Window(2) {
            return domain("injective resolutions are implemented for 2-term complexes only");
        }
        Ok(())
    }

    /// The resolution `0 -> M -> S_{M_1} ⊕ J_{M_2} -> S_{M_2} -> 0` with maps `(1, d)` and `(d, -1)`.
    pub fn injective_resolution_c2(&self, x: &Cx) -> Result<InjectiveResolution> {
        self.check_two_term(x)?;
        let p = self.p();
        let (m1, m2) = (&x.comps()[0], &x.comps()[1]);
        let d = &x.diffs()[0];
        let n = self.n();
        let into1 = RepMap::new((0..n).map(|v| id(p, m1, v).vstack(d.comp(v))).collect());
        let into2 = RepMap::identity(p, m2);
        let res = InjectiveResolution {
            source: x.clone(),
            a: m1.clone(),
            c: m2.clone(),
            b: m2.clone(),
            d: self.zero_rep(),
            into1,
            into2,
            u: d.clone(),
            v: RepMap::identity(p, m2).neg(),
            w: RepMap::zero(p, m2, &self.zero_rep()),
        };
        if !self.resolution_is_exact(&res)? {
            return inconsistent("the standard injective resolution is not exact");
        }
        Ok(res)
    }

    /// `S_A ⊕ J_C` as a 2-term complex.
    fn injective_object(&self, s: &Rep, j: &Rep) -> Result<Cx> {
        let p = self.p();
        let top = self.direct_sum(&[s, j]);
        let diff = RepMap::new(
            (0..self.n()).map(|v| Matrix::zeros(p, j.dims()[v], s.dims()[v]).hstack(&id(p, j, v))).collect(),
        );
        self.cx(CxKind::Window(2), 1, vec![top, j.clone()], vec![diff])
    }

    /// The middle and last terms and both chain maps of a resolution.
    pub fn resolution_complexes(&self, r: &InjectiveResolution) -> Result<(Cx, Cx, CxMap, CxMap)> {
        let p = self.p();
        let middle = self.injective_object(&r.a, &r.c)?;
        let tail = self.injective_object(&r.b, &r.d)?;
        let into = CxMap { comps: vec![r.into1.clone(), r.into2.clone()] };
        let onto1 = RepMap::new(
            (0..self.n())
                .map(|v| {
                    let top = r.u.comp(v).hstack(r.v.comp(v));
                    let bottom = Matrix::zeros(p, r.d.dims()[v], r.a.dims()[v]).hstack(r.w.comp(v));
                    top.vstack(&bottom)
                })
                .collect(),
        );
        let onto = CxMap { comps: vec![onto1, r.w.clone()] };
        Ok((middle, tail, into, onto))
    }

    /// Checks that both maps are chain maps and that the sequence is exact in every degree
    /// and at every vertex.
    pub fn resolution_is_exact(&self, r: &InjectiveResolution) -> Result<bool> {
        let (middle, tail, into, onto) = self.resolution_complexes(r)?;
        if !self.is_chain_map(&r.source, &middle, &into) || !self.is_chain_map(&middle, &tail, &onto) {
            return Ok(false);
        }
        for s in 0..2 {
            if !into.comps[s].is_injective() || !onto.comps[s].is_surjective() {
                return Ok(false);
            }
            if !onto.comps[s].after(&into.comps[s]).is_zero() {
                return Ok(false);
            }
            let (l, mid, t) = (&r.source.comps()[s], &middle.comps()[s], &tail.comps()[s]);
            if (0..self.n()).any(|v| l.dims()[v] + t.dims()[v] != mid.dims()[v]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Adds `S_Q → S_Q` and `J_R → J_R` identity summands to both terms.
    pub fn pad_resolution(&self, r: &InjectiveResolution, q: &Rep, rr: &Rep) -> InjectiveResolution {
        let p = self.p();
        let n = self.n();
        let src1 = &r.source.comps()[0];
        let (a2, c2) = (self.direct_sum(&[&r.a, q]), self.direct_sum(&[&r.c, rr]));
        // rows of into1 are ordered A, C; the padded middle is A, Q, C, R
        let into1 = RepMap::new(
            (0..n)
                .map(|v| {
                    let f = r.into1.comp(v);
                    let (da, dc) = (r.a.dims()[v], r.c.dims()[v]);
                    let cols = src1.dims()[v];
                    f.block(0, 0, da, cols)
                        .vstack(&Matrix::zeros(p, q.dims()[v], cols))
                        .vstack(&f.block(da, 0, dc, cols))
                        .vstack(&Matrix::zeros(p, rr.dims()[v], cols))
                })
                .collect(),
        );
        let into2 = RepMap::new(
            (0..n)
                .map(|v| {
                    let f = r.into2.comp(v);
                    f.vstack(&Matrix::zeros(p, rr.dims()[v], f.cols()))
                })
                .collect(),
        );
        let u = RepMap::direct_sum(p, &[&r.u, &RepMap::identity(p, q)], n);
        let w = RepMap::direct_sum(p, &[&r.w, &RepMap::identity(p, rr)], n);
        let v = RepMap::direct_sum(p, &[&r.v, &RepMap::zero(p, rr, q)], n);
        InjectiveResolution {
            source: r.source.clone(),
            a: a2,
            c: c2,
            b: self.direct_sum(&[&r.b, q]),
            d: self.direct_sum(&[&r.d, rr]),
            into1,
            into2,
            u,
            v,
            w,
        }
    }

    /// Rank of `top(f)` at each vertex, for a map of projectives: the multiplicity of each
    /// `P_i` in the largest summand that `f` maps isomorphically.
    fn top_rank(&self, to: &Rep, f: &RepMap) -> Vec<usize> {
        let (_, pi) = self.top(to);
        (0..self.n()).map(|v| pi.after(f).comp(v).rank()).collect()
    }

    /// Strips the pairs of summands mapped isomorphically onto each other and reads off the
    /// multiplicities of the minimal resolution.
    pub fn minimize_resolution(&self, r: &InjectiveResolution) -> Result<MinimalMultiplicities> {
        let mult = |x: &Rep| {
            self.quiver().projective_multiplicities(x.dims()).ok_or_else(|| {
                crate::error::Error::Inconsistency("injective term is not built from projectives".into())
            })
        };
        let (ma, mb, mc, md) = (mult(&r.a)?, mult(&r.b)?, mult(&r.c)?, mult(&r.d)?);
        let rs = self.top_rank(&r.b, &r.u);
        let rj = self.top_rank(&r.d, &r.w);
        let sub = |x: &[usize], y: &[usize]| -> Result<Vec<usize>> {
            x.iter()
                .zip(y)
                .map(|(&a, &b)| {
                    a.checked_sub(b)
                        .ok_or_else(|| crate::error::Error::Inconsistency("stripped more than present".into()))
                })
                .collect()
        };
        let out = MinimalMultiplicities { a: sub(&ma, &rs)?, b: sub(&mb, &rs)?, c: sub(&mc, &rj)? };
        if sub(&md, &rj)?.iter().any(|&x| x != 0) {
            return inconsistent("a J summand survives in the last term of a minimal resolution");
        }
        Ok(out)
    }
}
