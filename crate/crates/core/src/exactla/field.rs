use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// The prime field F_p. Elements are canonical residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        // Products are formed in u64, so p must fit comfortably in 32 bits.
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        add(self.p, a, b)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        sub(self.p, a, b)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        mul(self.p, a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        inv(self.p, a)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow(self.p, a, e)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

#[inline]
pub(crate) fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub(crate) fn sub(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + p as u64 - b as u64;
    (s % p as u64) as u32
}

#[inline]
pub(crate) fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow(p: u32, mut a: u32, mut e: u64) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(p: u32, a: u32) -> Option<u32> {
    if a % p == 0 {
        return None;
    }
    Some(pow(p, a, p as u64 - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u32, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                } else {
                    assert!(f.inv(a).is_none());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
