use std::fmt;

use super::field;

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}; {}x{}](", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, ")")
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds from row-major entries, reducing each mod p.
    pub fn from_vec(p: u32, rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        let data = entries.into_iter().map(|x| x.rem_euclid(p as i64) as u32).collect();
        Self { p, rows, cols, data }
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self::from_vec(p, r, c, entries)
    }

    /// Builds a `rows x cols.len()` matrix from column vectors.
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % p;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product {:?} * {:?}", self.shape(), other.shape());
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] =
                        ((out.data[idx] as u64 + a * other.data[k * other.cols + j] as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc += self.get(r, c) as u64 * v[c] as u64;
                }
                (acc % self.p as u64) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field::add(self.p, a, b)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field::sub(self.p, a, b)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let data = self.data.iter().map(|&a| field::mul(self.p, a, s % self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    /// `self + s * other`, in place.
    pub fn axpy(&mut self, s: u32, other: &Matrix) {
        assert_eq!(self.shape(), other.shape());
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = field::add(self.p, *a, field::mul(self.p, s, b));
        }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.p, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * out.cols + c] = self.get(r, c);
            }
            for c in 0..other.cols {
                out.data[r * out.cols + self.cols + c] = other.get(r, c);
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum of matrices.
    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = field::inv(p, m.get(row, col)).expect("nonzero pivot");
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = field::mul(p, m.data[idx], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = field::mul(p, f, m.data[row * m.cols + c]);
                    let idx = r * m.cols + c;
                    m.data[idx] = field::sub(p, m.data[idx], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}` as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Echelon { reduced, pivots } = self.echelon();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_of(p, reduced.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis packed as the columns of a `cols x k` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_cols(self.p, self.cols, &self.kernel_basis())
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.p, self.rows, &[b.to_vec()]));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Some(x)
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows);
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            cols.push(self.solve(&rhs.col(c))?);
        }
        Some(Matrix::from_cols(self.p, self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.p, n));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Linearly independent columns spanning the column space (first-found order).
    pub fn column_basis(&self) -> Matrix {
        let pivots = self.echelon().pivots;
        self.select_cols(&pivots)
    }

    /// Columns of `self` extended by standard basis vectors to a basis of the ambient space;
    /// returns only the added vectors. Assumes `self` has independent columns.
    pub fn complement_basis(&self) -> Matrix {
        let n = self.rows;
        let full = self.hstack(&Matrix::identity(self.p, n));
        let pivots = full.echelon().pivots;
        let extra: Vec<usize> = pivots.into_iter().filter(|&c| c >= self.cols).collect();
        full.select_cols(&extra)
    }

    /// Whether the column span of `other` lies in that of `self`.
    pub fn col_span_contains(&self, other: &Matrix) -> bool {
        if other.cols == 0 {
            return true;
        }
        self.hstack(other).rank() == self.rank()
    }
}

fn neg_of(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2, 2).rank(), 2);
        assert_eq!(Matrix::zeros(2, 2, 2).rank(), 0);
        assert_eq!(Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(2, 2, 2).kernel_basis().len(), 2);
        assert!(Matrix::identity(2, 2).kernel_basis().is_empty());
        assert_eq!(Matrix::from_rows(2, &[vec![1, 1]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(3, &[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, 2));
        assert!(Matrix::from_rows(3, &[vec![1, 2], vec![2, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_finds_solution() {
        let a = Matrix::from_rows(5, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let x = a.solve(&[1, 2]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![1, 2]);
        let b = Matrix::from_rows(5, &[vec![1, 1], vec![1, 1]]);
        assert!(b.solve(&[1, 0]).is_none());
    }

    #[test]
    fn complement_extends_to_basis() {
        let v = Matrix::from_cols(3, 3, &[vec![1, 1, 0]]);
        let c = v.complement_basis();
        assert_eq!(c.cols(), 2);
        assert_eq!(v.hstack(&c).rank(), 3);
    }
}
