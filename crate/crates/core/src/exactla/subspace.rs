use num_bigint::BigUint;

use super::Matrix;
use crate::error::{domain, Result};

/// Number of `k`-dimensional subspaces of F_p^d.
pub fn gaussian_binomial(d: usize, k: usize, p: u32) -> BigUint {
    if k > d {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(p);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= q.pow((d - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// All `k`-dimensional subspaces of F_p^d, each as its unique `k x d` reduced echelon basis.
pub fn enumerate_subspaces(d: usize, k: usize, p: u32) -> Result<Vec<Matrix>> {
    if k > d {
        return domain(format!("subspace dimension {k} exceeds ambient dimension {d}"));
    }
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(d, k, 0, &mut pivots, &mut |piv| fill_free(d, p, piv, &mut out));
    Ok(out)
}

fn choose_pivots(d: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    let remaining = k - acc.len();
    for c in start..=d.saturating_sub(remaining) {
        if c >= d {
            break;
        }
        acc.push(c);
        choose_pivots(d, k, c + 1, acc, f);
        acc.pop();
    }
}

fn fill_free(d: usize, p: u32, pivots: &[usize], out: &mut Vec<Matrix>) {
    let k = pivots.len();
    // Free positions: row r, column c > pivot[r] with c not a pivot column.
    let mut free = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..d {
            if !pivots.contains(&c) {
                free.push((r, c));
            }
        }
    }
    let mut digits = vec![0u32; free.len()];
    loop {
        let mut m = Matrix::zeros(p, k, d);
        for (r, &pc) in pivots.iter().enumerate() {
            m.set(r, pc, 1);
        }
        for (&(r, c), &v) in free.iter().zip(&digits) {
            m.set(r, c, v);
        }
        out.push(m);
        if !increment(&mut digits, p) {
            break;
        }
    }
}

/// Odometer increment over F_p digits; returns false on wraparound.
pub(crate) fn increment(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn lines_in_plane() {
        assert_eq!(enumerate_subspaces(2, 1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(2, 1, 3).unwrap().len(), 4);
        let zero = enumerate_subspaces(3, 0, 2).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].shape(), (0, 3));
        assert!(enumerate_subspaces(2, 3, 2).is_err());
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 0, 5), BigUint::from(1u32));
    }

    /// Brute force: collect the row spaces of all k-tuples of vectors that are independent.
    fn brute_force_count(d: usize, k: usize, p: u32) -> usize {
        let mut all_vecs = Vec::new();
        let mut v = vec![0u32; d];
        loop {
            all_vecs.push(v.clone());
            if !increment(&mut v, p) {
                break;
            }
        }
        let mut spaces: HashSet<Vec<u32>> = HashSet::new();
        let mut idx = vec![0usize; k];
        loop {
            let rows: Vec<Vec<i64>> =
                idx.iter().map(|&i| all_vecs[i].iter().map(|&x| x as i64).collect()).collect();
            let m = if k == 0 { Matrix::zeros(p, 0, d) } else { Matrix::from_rows(p, &rows) };
            if m.rank() == k {
                let e = m.echelon().reduced;
                spaces.insert(e.entries().to_vec());
            }
            // odometer over indices
            let mut carry = true;
            for i in idx.iter_mut() {
                if !carry {
                    break;
                }
                *i += 1;
                if *i < all_vecs.len() {
                    carry = false;
                } else {
                    *i = 0;
                }
            }
            if carry || k == 0 {
                break;
            }
        }
        spaces.len()
    }

    #[test]
    fn echelon_uniqueness_matches_brute_force() {
        for p in [2u32, 3] {
            for d in 0..=3 {
                for k in 0..=d {
                    let subs = enumerate_subspaces(d, k, p).unwrap();
                    let distinct: HashSet<Vec<u32>> = subs.iter().map(|m| m.entries().to_vec()).collect();
                    assert_eq!(distinct.len(), subs.len(), "duplicates for d={d} k={k} p={p}");
                    for s in &subs {
                        assert_eq!(s.rank(), k);
                        assert_eq!(&s.echelon().reduced, s, "not in reduced echelon form");
                    }
                    assert_eq!(subs.len(), brute_force_count(d, k, p), "d={d} k={k} p={p}");
                    assert_eq!(BigUint::from(subs.len()), gaussian_binomial(d, k, p));
                }
            }
        }
    }
}
