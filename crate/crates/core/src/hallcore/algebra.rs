use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::RwLock;
use rayon::prelude::*;

use super::category::HallCategory;
use super::elt::{rational_from_uint, HallElt};
use crate::error::{inconsistent, Result};

/// The (untwisted) Hall algebra of a finitary category, with a memo of basis products.
///
/// `[M] ◇ [N] = Σ_L |Ext¹(M,N)_L| / |Hom(M,N)| [L]`, so N is the subobject and M the quotient.
pub struct HallAlgebra<C: HallCategory> {
    pub cat: C,
    cache: RwLock<HashMap<(C::Key, C::Key), HallElt<C::Key>>>,
}

/// One extension class count paired with the Hall number it predicts.
#[derive(Clone, Debug)]
pub struct RiedtmannRow<K> {
    pub middle: K,
    pub ext_count: u64,
    pub hall_number: u64,
    pub hom_count: BigUint,
    pub aut_m: BigUint,
    pub aut_n: BigUint,
    pub aut_l: BigUint,
}

impl<K> RiedtmannRow<K> {
    /// `g · |Hom| · a_M a_N = |Ext_L| · a_L`.
    pub fn holds(&self) -> bool {
        BigUint::from(self.hall_number) * &self.hom_count * &self.aut_m * &self.aut_n
            == BigUint::from(self.ext_count) * &self.aut_l
    }
}

/// Both sides of the Riedtmann–Peng identity for one pair, plus the sum rule.
#[derive(Clone, Debug)]
pub struct RiedtmannReport<K> {
    pub ext1_dim: usize,
    pub rows: Vec<RiedtmannRow<K>>,
}

impl<K> RiedtmannReport<K> {
    pub fn sum_rule_holds(&self, p: u32) -> bool {
        let total: u64 = self.rows.iter().map(|r| r.ext_count).sum();
        BigUint::from(total) == BigUint::from(p).pow(self.ext1_dim as u32)
    }

    pub fn holds(&self, p: u32) -> bool {
        self.sum_rule_holds(p) && self.rows.iter().all(|r| r.holds())
    }
}

impl<C: HallCategory> HallAlgebra<C> {
    pub fn new(cat: C) -> Self {
        Self { cat, cache: RwLock::new(HashMap::new()) }
    }

    pub fn p(&self) -> u32 {
        self.cat.p()
    }

    pub fn one(&self) -> HallElt<C::Key> {
        HallElt::basis(self.cat.zero_key())
    }

    fn p_pow(&self, e: usize) -> BigUint {
        BigUint::from(self.p()).pow(e as u32)
    }

    /// Extension classes and the Hom dimension for a basis pair.
    fn extension_data(&self, m: &C::Key, n: &C::Key) -> Result<(usize, usize, BTreeMap<C::Key, u64>)> {
        let (mx, nx) = (self.cat.realize(m)?, self.cat.realize(n)?);
        let hom = self.cat.hom_dim(&mx, &nx)?;
        let (ext1, classes) = self.cat.extension_classes(&mx, &nx)?;
        Ok((hom, ext1, classes))
    }

    /// `[M] ◇ [N]` by counting extension classes.
    pub fn basis_product(&self, m: &C::Key, n: &C::Key) -> Result<HallElt<C::Key>> {
        let memo = (m.clone(), n.clone());
        if let Some(hit) = self.cache.read().get(&memo) {
            return Ok(hit.clone());
        }
        let (hom, _, classes) = self.extension_data(m, n)?;
        let denom = BigInt::from(self.p_pow(hom));
        let out: HallElt<C::Key> = classes
            .into_iter()
            .map(|(l, c)| (l, BigRational::new(BigInt::from(c), denom.clone())))
            .collect();
        self.cache.write().insert(memo, out.clone());
        Ok(out)
    }

    /// `[M] ◇ [N]` by counting subobjects: `Σ_L g^L_{MN} a_M a_N / a_L [L]`, with L running
    /// over all classes of the right size.
    pub fn basis_product_by_subobjects(&self, m: &C::Key, n: &C::Key) -> Result<HallElt<C::Key>> {
        let am = self.cat.aut_count(m)?;
        let an = self.cat.aut_count(n)?;
        let mut out = HallElt::zero();
        for l in self.cat.middle_candidates(m, n)? {
            let g = self.cat.subobject_count(m, n, &l)?;
            if g == 0 {
                continue;
            }
            let al = self.cat.aut_count(&l)?;
            let num = BigUint::from(g) * &am * &an;
            out.add_term(l, rational_from_uint(&num) / rational_from_uint(&al));
        }
        Ok(out)
    }

    pub fn product(&self, x: &HallElt<C::Key>, y: &HallElt<C::Key>) -> Result<HallElt<C::Key>> {
        let pairs: Vec<(&C::Key, &BigRational, &C::Key, &BigRational)> =
            x.iter().flat_map(|(a, ca)| y.iter().map(move |(b, cb)| (a, ca, b, cb))).collect();
        pairs
            .par_iter()
            .map(|&(a, ca, b, cb)| Ok(self.basis_product(a, b)?.scale(&(ca * cb))))
            .try_reduce(HallElt::zero, |u, v| Ok(u.add(&v)))
    }

    /// `g^L_{MN}`.
    pub fn hall_number_g(&self, m: &C::Key, n: &C::Key, l: &C::Key) -> Result<u64> {
        self.cat.subobject_count(m, n, l)
    }

    /// `|Ext¹(M,N)_L|` recovered from the Hall number: `g · |Hom(M,N)| · a_M a_N / a_L`.
    pub fn ext_count(&self, m: &C::Key, n: &C::Key, l: &C::Key) -> Result<u64> {
        let g = self.hall_number_g(m, n, l)?;
        let hom = self.cat.hom_dim(&self.cat.realize(m)?, &self.cat.realize(n)?)?;
        let num = BigUint::from(g) * self.p_pow(hom) * self.cat.aut_count(m)? * self.cat.aut_count(n)?;
        let al = self.cat.aut_count(l)?;
        if !(&num % &al).is_zero() {
            return inconsistent(format!("non-integral extension count for {m} by {n} through {l}"));
        }
        u64::try_from(num / al).map_err(|_| crate::Error::Inconsistency("extension count overflow".into()))
    }

    /// Checks the Riedtmann–Peng identity on every middle term of `M` by `N`.
    pub fn riedtmann_peng(&self, m: &C::Key, n: &C::Key) -> Result<RiedtmannReport<C::Key>> {
        let (hom, ext1, classes) = self.extension_data(m, n)?;
        let aut_m = self.cat.aut_count(m)?;
        let aut_n = self.cat.aut_count(n)?;
        let mut rows = Vec::new();
        for (l, c) in classes {
            rows.push(RiedtmannRow {
                hall_number: self.hall_number_g(m, n, &l)?,
                aut_l: self.cat.aut_count(&l)?,
                middle: l,
                ext_count: c,
                hom_count: self.p_pow(hom),
                aut_m: aut_m.clone(),
                aut_n: aut_n.clone(),
            });
        }
        Ok(RiedtmannReport { ext1_dim: ext1, rows })
    }

    /// `(x ◇ y) ◇ z == x ◇ (y ◇ z)` on basis elements.
    pub fn associator_vanishes(&self, x: &C::Key, y: &C::Key, z: &C::Key) -> Result<bool> {
        let (x, y, z) = (HallElt::basis(x.clone()), HallElt::basis(y.clone()), HallElt::basis(z.clone()));
        let left = self.product(&self.product(&x, &y)?, &z)?;
        let right = self.product(&x, &self.product(&y, &z)?)?;
        Ok(left == right)
    }

    /// Number of cached basis products.
    pub fn cached_products(&self) -> usize {
        self.cache.read().len()
    }
}

/// `Σ_L coefficient` of an element, handy for quick sanity checks.
pub fn coefficient_sum<K: Ord + Clone>(x: &HallElt<K>) -> BigRational {
    x.iter().fold(BigRational::zero(), |acc, (_, c)| acc + c)
}

/// `1 / p^e`.
pub fn inverse_p_pow(p: u32, e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p).pow(e as u32))
}
