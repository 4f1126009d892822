use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cx::{Cx, CxKind};
use crate::error::{domain, inconsistent, Error, Result};
use crate::exactla::Matrix;
use crate::quiverrep::{IndecKey, RepCat, RepMap};

/// An indecomposable complex. Vertices are 0-indexed here and printed 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// `C_M[r]` (cyclic or bounded), M indecomposable.
    C { module: IndecKey, shift: i64 },
    /// `K_{P_v}[r]` (cyclic or bounded), contractible.
    K { vertex: usize, shift: i64 },
    /// `S_{P_v}` (m-term).
    S { vertex: usize },
    /// `T_M[r]` (m-term), `0 <= r <= m-2`.
    T { module: IndecKey, shift: i64 },
    /// `J_{P_v}[r]` (m-term), projective-injective.
    J { vertex: usize, shift: i64 },
}

impl Label {
    /// Whether the label is a contractible (resp. projective-injective) summand that the
    /// localizations invert.
    pub fn is_contractible(&self) -> bool {
        matches!(self, Label::K { .. } | Label::J { .. })
    }
}

/// Isomorphism class of a complex: the sorted multiset of its indecomposable summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CxKey(pub Vec<Label>);

impl CxKey {
    pub fn zero() -> Self {
        CxKey(Vec::new())
    }

    pub fn from_labels(mut labels: Vec<Label>) -> Self {
        labels.sort();
        CxKey(labels)
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &CxKey) -> CxKey {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        CxKey::from_labels(v)
    }

    /// Splits off the contractible labels.
    pub fn split_contractible(&self) -> (CxKey, Vec<Label>) {
        let (c, rest): (Vec<Label>, Vec<Label>) = self.0.iter().cloned().partition(|l| l.is_contractible());
        (CxKey(rest), c)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::C { module, shift } => write!(f, "C<{module}>[{shift}]"),
            Label::K { vertex, shift } => write!(f, "K<P{}>[{shift}]", vertex + 1),
            Label::S { vertex } => write!(f, "S<P{}>", vertex + 1),
            Label::T { module, shift } => write!(f, "T<{module}>[{shift}]"),
            Label::J { vertex, shift } => write!(f, "J<P{}>[{shift}]", vertex + 1),
        }
    }
}

impl fmt::Display for CxKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad complex label {s:?}"));
        let tag = s.chars().next().ok_or_else(bad)?;
        let rest = s[1..].strip_prefix('<').ok_or_else(bad)?;
        let (payload, tail) = rest.split_once('>').ok_or_else(bad)?;
        let shift = if tail.is_empty() {
            None
        } else {
            let inner = tail.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            Some(inner.trim().parse::<i64>().map_err(|_| bad())?)
        };
        let vertex = || -> Result<usize> {
            let v: usize = payload.strip_prefix('P').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            Ok(v - 1)
        };
        Ok(match (tag, shift) {
            ('C', Some(shift)) => Label::C { module: payload.parse()?, shift },
            ('T', Some(shift)) => Label::T { module: payload.parse()?, shift },
            ('K', Some(shift)) => Label::K { vertex: vertex()?, shift },
            ('J', Some(shift)) => Label::J { vertex: vertex()?, shift },
            ('S', None) => Label::S { vertex: vertex()? },
            _ => return Err(bad()),
        })
    }
}

impl FromStr for CxKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(CxKey::zero());
        }
        let labels = s.split('+').map(Label::from_str).collect::<Result<Vec<_>>>()?;
        Ok(CxKey::from_labels(labels))
    }
}

/// Contractible summands split off by [`RepCat::cx_minimize`]: `(vertex, shift)` of each
/// `K_{P_v}[r]` or `J_{P_v}[r]`.
pub type Stripped = Vec<(usize, i64)>;

impl RepCat {
    /// Decomposes a complex of projectives into the indecomposables `C_M[r]`, `K_P[r]`
    /// (cyclic, bounded) or `S_P`, `T_M[r]`, `J_P[r]` (m-term).
    ///
    /// In each slot j the kernel of `d_j` is a projective summand of the component and the
    /// image of the incoming differential is a projective subobject of it. The pair
    /// (image ⊂ kernel) splits as `δ_H ⊕ id_R` with H the homology at j, so the summands
    /// are read off from the homology and from `top(ker) − top(H)`.
    pub fn cx_decompose(&self, x: &Cx) -> Result<CxKey> {
        let mut labels = Vec::new();
        let slots = x.slot_count();
        for j in 0..slots {
            let comp = &x.comps()[j];
            let (ker, ker_incl) = match x.diff(j) {
                Some(d) => self.kernel(comp, d),
                None => (comp.clone(), RepMap::identity(self.p(), comp)),
            };
            // image of the incoming differential, in kernel coordinates
            let incoming = x.prev(j).and_then(|s| x.diff(s).map(|d| (s, d))).filter(|(s, _)| x.next(*s) == Some(j));
            let im_bases: Vec<Matrix> = match incoming {
                Some((_, d)) => (0..self.n())
                    .map(|v| {
                        let cb = d.comp(v).column_basis();
                        ker_incl.comp(v).solve_matrix(&cb).ok_or_else(|| Error::Inconsistency("d∘d ≠ 0".into()))
                    })
                    .collect::<Result<_>>()?,
                None => (0..self.n()).map(|v| Matrix::zeros(self.p(), ker.dims()[v], 0)).collect(),
            };
            let (h, _) = self.quotient(&ker, &im_bases)?;
            let top_k = self.top_dims(&ker);
            let top_h = self.top_dims(&h);
            let parts = self.decompose(&h)?;
            let deg = x.degree(j);
            match x.kind() {
                CxKind::Cyclic(m) => {
                    let r = ((m as i64) - (j as i64)).rem_euclid(m as i64);
                    for part in &parts {
                        labels.push(Label::C { module: self.classify_indecomposable(part)?, shift: r });
                    }
                    push_k(&mut labels, &top_k, &top_h, r, false)?;
                }
                CxKind::Bounded => {
                    for part in &parts {
                        labels.push(Label::C { module: self.classify_indecomposable(part)?, shift: -deg });
                    }
                    push_k(&mut labels, &top_k, &top_h, -deg, false)?;
                }
                CxKind::Window(m) => {
                    if deg == 1 {
                        if !self.is_projective(&h) || top_h != top_k {
                            return inconsistent("degree-1 kernel of an m-term complex is not split");
                        }
                        for (v, &k) in top_h.iter().enumerate() {
                            for _ in 0..k {
                                labels.push(Label::S { vertex: v });
                            }
                        }
                    } else {
                        let r = m as i64 - deg;
                        for part in &parts {
                            labels.push(Label::T { module: self.classify_indecomposable(part)?, shift: r });
                        }
                        push_k(&mut labels, &top_k, &top_h, r, true)?;
                    }
                }
            }
        }
        let key = CxKey::from_labels(labels);
        self.check_decomposition(x, &key)?;
        Ok(key)
    }

    fn check_decomposition(&self, x: &Cx, key: &CxKey) -> Result<()> {
        let y = self.realize_cx(key, x.kind())?;
        if self.cx_profile(x) != self.cx_profile(&y) {
            return inconsistent(format!("decomposition {key} does not reproduce component and kernel dimensions"));
        }
        Ok(())
    }

    /// Degree -> (component dims, kernel dims) over the nonzero components.
    fn cx_profile(&self, x: &Cx) -> BTreeMap<i64, (Vec<usize>, Vec<usize>)> {
        let kd = self.cx_kernel_dims(x);
        (0..x.slot_count())
            .filter(|&s| !x.comps()[s].is_zero())
            .map(|s| (x.degree(s), (x.comps()[s].dims().to_vec(), kd[s].clone())))
            .collect()
    }

    pub fn cx_key(&self, x: &Cx) -> Result<CxKey> {
        self.cx_decompose(x)
    }

    pub fn cx_is_isomorphic(&self, x: &Cx, y: &Cx) -> Result<bool> {
        if x.kind() != y.kind() {
            return Ok(false);
        }
        Ok(self.cx_key(x)? == self.cx_key(y)?)
    }

    /// Splits `X ≅ core ⊕ (contractible summands)`.
    pub fn cx_minimize(&self, x: &Cx) -> Result<(Cx, Stripped)> {
        let key = self.cx_decompose(x)?;
        let (core, contractible) = key.split_contractible();
        let stripped = contractible
            .iter()
            .map(|l| match l {
                Label::K { vertex, shift } | Label::J { vertex, shift } => (*vertex, *shift),
                _ => unreachable!("only contractible labels are stripped"),
            })
            .collect();
        Ok((self.realize_cx(&core, x.kind())?, stripped))
    }

    pub fn realize_label(&self, label: &Label, kind: CxKind) -> Result<Cx> {
        match (label, kind) {
            (Label::C { module, shift }, CxKind::Cyclic(_) | CxKind::Bounded) => {
                let m = self.indecomposable_rep(module)?;
                self.shift(&self.make_cm(&m, kind)?, *shift)
            }
            (Label::K { vertex, shift }, CxKind::Cyclic(_) | CxKind::Bounded) => {
                self.shift(&self.make_kp(&self.projective(*vertex), kind)?, *shift)
            }
            (Label::S { vertex }, CxKind::Window(m)) => self.make_sp(&self.projective(*vertex), m),
            (Label::T { module, shift }, CxKind::Window(m)) => {
                if *shift < 0 || *shift > m as i64 - 2 {
                    return domain(format!("T_M[{shift}] needs 0 <= r <= m-2"));
                }
                let md = self.indecomposable_rep(module)?;
                self.shift(&self.make_tm(&md, m)?, *shift)
            }
            (Label::J { vertex, shift }, CxKind::Window(m)) => {
                if *shift < 0 || *shift > m as i64 - 2 {
                    return domain(format!("J_P[{shift}] needs 0 <= r <= m-2"));
                }
                self.shift(&self.make_jp(&self.projective(*vertex), m)?, *shift)
            }
            _ => domain(format!("label {label} does not belong to {kind:?}")),
        }
    }

    /// The canonical complex with the given summands.
    pub fn realize_cx(&self, key: &CxKey, kind: CxKind) -> Result<Cx> {
        if key.is_zero() {
            return Ok(self.zero_cx(kind));
        }
        let parts = key.0.iter().map(|l| self.realize_label(l, kind)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Cx> = parts.iter().collect();
        self.cx_direct_sum(&refs)
    }
}

fn push_k(labels: &mut Vec<Label>, top_k: &[usize], top_h: &[usize], r: i64, window: bool) -> Result<()> {
    for (v, (&a, &b)) in top_k.iter().zip(top_h).enumerate() {
        if b > a {
            return inconsistent("homology top exceeds kernel top");
        }
        for _ in 0..a - b {
            labels.push(if window { Label::J { vertex: v, shift: r } } else { Label::K { vertex: v, shift: r } });
        }
    }
    Ok(())
}

impl RepCat {
    /// Dimension vectors of the kernels of all differentials, as a quick invariant.
    pub fn cx_kernel_dims(&self, x: &Cx) -> Vec<Vec<usize>> {
        (0..x.slot_count())
            .map(|s| match x.diff(s) {
                Some(d) => self.kernel(&x.comps()[s], d).0.dims().to_vec(),
                None => x.comps()[s].dims().to_vec(),
            })
            .collect()
    }
}
