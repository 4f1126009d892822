use std::collections::BTreeMap;
use std::fmt;

use crate::complexcat::CxKey;

/// A product `Π_r K_{α_r, r}` of torus generators, stored as level ↦ class in K(A)
/// (dimension vectors). Zero classes are dropped so equal products compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusExp(BTreeMap<i64, Vec<i64>>);

impl TorusExp {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn single(level: i64, class: Vec<i64>) -> Self {
        let mut t = Self::one();
        t.add_at(level, &class);
        t
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn levels(&self) -> impl Iterator<Item = (i64, &[i64])> {
        self.0.iter().map(|(r, v)| (*r, v.as_slice()))
    }

    pub fn at(&self, level: i64) -> Option<&[i64]> {
        self.0.get(&level).map(|v| v.as_slice())
    }

    pub fn add_at(&mut self, level: i64, class: &[i64]) {
        let e = self.0.entry(level).or_insert_with(|| vec![0; class.len()]);
        for (a, b) in e.iter_mut().zip(class) {
            *a += b;
        }
        if e.iter().all(|&x| x == 0) {
            self.0.remove(&level);
        }
    }

    pub fn mul(&self, other: &TorusExp) -> TorusExp {
        let mut out = self.clone();
        for (r, v) in &other.0 {
            out.add_at(*r, v);
        }
        out
    }

    pub fn inverse(&self) -> TorusExp {
        TorusExp(self.0.iter().map(|(r, v)| (*r, v.iter().map(|x| -x).collect())).collect())
    }
}

impl fmt::Display for TorusExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(r, v)| {
                let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("K[{r}]({})", v.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A normal-form basis element of a localized Hall algebra: a torus monomial times the class
/// of a complex without contractible summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MHKey {
    pub torus: TorusExp,
    pub core: CxKey,
}

impl fmt::Display for MHKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.torus.is_one(), self.core.is_zero()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{}", self.core),
            (false, true) => write!(f, "{}", self.torus),
            (false, false) => write!(f, "{}*{}", self.torus, self.core),
        }
    }
}
