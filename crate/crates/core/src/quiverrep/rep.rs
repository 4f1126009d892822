use crate::exactla::Matrix;

/// A representation: one vector space per vertex and one matrix per arrow.
/// The matrix of arrow `a: s -> t` has shape `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    pub(crate) dims: Vec<usize>,
    pub(crate) maps: Vec<Matrix>,
}

impl Rep {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dims_i64(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepMap {
    pub(crate) comps: Vec<Matrix>,
}

impl RepMap {
    pub fn new(comps: Vec<Matrix>) -> Self {
        Self { comps }
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn zero(p: u32, from: &Rep, to: &Rep) -> Self {
        Self { comps: from.dims.iter().zip(&to.dims).map(|(&m, &n)| Matrix::zeros(p, n, m)).collect() }
    }

    pub fn identity(p: u32, m: &Rep) -> Self {
        Self { comps: m.dims.iter().map(|&d| Matrix::identity(p, d)).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &RepMap) -> RepMap {
        RepMap { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: u32) -> RepMap {
        RepMap { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn neg(&self) -> RepMap {
        RepMap { comps: self.comps.iter().map(|a| a.neg()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<RepMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(RepMap { comps })
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.entries().iter().copied()).collect()
    }

    /// Block-diagonal sum of maps `f_k: M_k -> N_k`.
    pub fn direct_sum(p: u32, maps: &[&RepMap], n_vertices: usize) -> RepMap {
        let comps = (0..n_vertices)
            .map(|v| {
                let blocks: Vec<&Matrix> = maps.iter().map(|f| &f.comps[v]).collect();
                Matrix::block_diag(p, &blocks)
            })
            .collect();
        RepMap { comps }
    }
}

/// Shapes of the per-vertex matrices of maps `M -> N`.
pub(crate) fn map_shapes(from: &[usize], to: &[usize]) -> Vec<(usize, usize)> {
    from.iter().zip(to).map(|(&m, &n)| (n, m)).collect()
}

/// Rebuilds a map from flat entries.
pub(crate) fn unflatten(p: u32, shapes: &[(usize, usize)], flat: &[u32]) -> RepMap {
    let mut off = 0;
    let comps = shapes
        .iter()
        .map(|&(r, c)| {
            let entries: Vec<i64> = flat[off..off + r * c].iter().map(|&x| x as i64).collect();
            off += r * c;
            Matrix::from_vec(p, r, c, entries)
        })
        .collect();
    RepMap { comps }
}
