use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A finite acyclic quiver. Vertices and arrows are 0-indexed internally; the JSON format is
/// 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    /// `paths[i][j]`: all paths from i to j (as arrow index sequences), trivial path included.
    paths: Vec<Vec<Vec<Vec<usize>>>>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return domain(format!("arrow ({s},{t}) refers to a vertex outside 0..{n}"));
            }
        }
        let mut q = Self { n, arrows, paths: Vec::new() };
        if q.topological_order().is_none() {
            return domain("quiver has a directed cycle");
        }
        q.paths = q.compute_paths();
        Ok(q)
    }

    /// Linear A_n: 1 -> 2 -> ... -> n.
    pub fn linear_a(n: usize) -> Self {
        let arrows = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, arrows).expect("linear quiver is acyclic")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut arrows = Vec::with_capacity(f.arrows.len());
        for [s, t] in f.arrows {
            if s == 0 || t == 0 {
                return Err(Error::Parse("arrows are 1-indexed".into()));
            }
            arrows.push((s - 1, t - 1));
        }
        Self::new(f.vertices, arrows)
    }

    pub fn to_json(&self) -> String {
        let f = QuiverFile {
            vertices: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
        };
        serde_json::to_string(&f).expect("serializable")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, &(_, t))| t == v).map(|(a, _)| a)
    }

    pub fn arrows_out_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, &(s, _))| s == v).map(|(a, _)| a)
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    fn compute_paths(&self) -> Vec<Vec<Vec<Vec<usize>>>> {
        let mut paths = vec![vec![Vec::new(); self.n]; self.n];
        for i in 0..self.n {
            let mut frontier: Vec<(usize, Vec<usize>)> = vec![(i, Vec::new())];
            while let Some((v, path)) = frontier.pop() {
                paths[i][v].push(path.clone());
                for a in self.arrows_out_of(v) {
                    let mut next = path.clone();
                    next.push(a);
                    frontier.push((self.arrows[a].1, next));
                }
            }
            for j in 0..self.n {
                paths[i][j].sort();
            }
        }
        paths
    }

    /// Paths from `i` to `j`, each a sequence of arrow indices in traversal order.
    pub fn paths(&self, i: usize, j: usize) -> &[Vec<usize>] {
        &self.paths[i][j]
    }

    /// All paths of length at least one, in a fixed order.
    pub fn nontrivial_paths(&self) -> Vec<(usize, usize, &[usize])> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for p in &self.paths[i][j] {
                    if !p.is_empty() {
                        out.push((i, j, p.as_slice()));
                    }
                }
            }
        }
        out
    }

    /// Dimension vector of the indecomposable projective at `i`: number of paths from i.
    pub fn projective_dims(&self, i: usize) -> Vec<usize> {
        (0..self.n).map(|j| self.paths[i][j].len()).collect()
    }

    /// `cartan[i]` = dimension vector of P_i. Unitriangular for acyclic quivers.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.projective_dims(i)).collect()
    }

    /// The Euler form on dimension vectors.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - off
    }

    /// Multiplicities of indecomposable projectives whose sum has dimension vector `dims`,
    /// if the vector is a nonnegative combination of projective dimension vectors.
    pub fn projective_multiplicities(&self, dims: &[usize]) -> Option<Vec<usize>> {
        let order = self.topological_order()?;
        // In topological order, P_i is supported only on vertices reachable from i, and has
        // dimension 1 at i. Peel vertices in topological order.
        let mut rest: Vec<i64> = dims.iter().map(|&x| x as i64).collect();
        let mut mult = vec![0usize; self.n];
        for &i in &order {
            let k = rest[i];
            if k < 0 {
                return None;
            }
            mult[i] = k as usize;
            for (j, &d) in self.projective_dims(i).iter().enumerate() {
                rest[j] -= k * d as i64;
            }
        }
        rest.iter().all(|&x| x == 0).then_some(mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        assert!(Quiver::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Quiver::new(1, vec![(0, 0)]).is_err());
        assert!(Quiver::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn json_roundtrip_is_one_indexed() {
        let q = Quiver::from_json(r#"{"vertices": 3, "arrows": [[1,2],[2,3]]}"#).unwrap();
        assert_eq!(q, Quiver::linear_a(3));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert!(Quiver::from_json(r#"{"vertices": 2, "arrows": [[1,2],[2,1]]}"#).is_err());
        assert!(Quiver::from_json("{not json").is_err());
    }

    #[test]
    fn paths_and_projectives() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.projective_dims(0), vec![1, 1, 1]);
        assert_eq!(q.projective_dims(2), vec![0, 0, 1]);
        assert_eq!(q.nontrivial_paths().len(), 3);
        assert_eq!(q.projective_multiplicities(&[1, 2, 3]), Some(vec![1, 1, 1]));
        assert_eq!(q.projective_multiplicities(&[1, 0, 0]), None);
    }

    #[test]
    fn euler_form_examples() {
        let q = Quiver::linear_a(2);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler_form(&[1, 1], &[1, 1]), 1);
        assert_eq!(q.euler_form(&[2, 1], &[0, 0]), 0);
    }
}
