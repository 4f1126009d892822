//! Exact arithmetic over prime fields and the dense linear algebra used everywhere else.

mod field;
mod matrix;
mod subspace;

pub use field::PrimeField;
pub use matrix::{Echelon, Matrix};
pub use subspace::{enumerate_subspaces, gaussian_binomial};
pub(crate) use subspace::increment;

/// Rank of a matrix.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of the kernel of `m`, as column vectors.
pub fn solve_kernel(m: &Matrix) -> Vec<Vec<u32>> {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0i64..p as i64, r * c).prop_map(move |v| Matrix::from_vec(p, r, c, v))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let ker = solve_kernel(&m);
            prop_assert_eq!(rank(&m) + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            if !ker.is_empty() {
                prop_assert_eq!(Matrix::from_cols(m.p(), m.cols(), &ker).rank(), ker.len());
            }
        }
    }
}
