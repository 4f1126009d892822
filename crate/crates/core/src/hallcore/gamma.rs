use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::category::{HallCategory, ModuleHall};
use super::elt::rational_from_uint;
use crate::error::Result;
use crate::exactla::increment;
use crate::quiverrep::{ModuleKey, RepMap};

/// For every `f ∈ Hom(M, N)`, the classes of `ker f` and `coker f`, counted.
pub fn kernel_cokernel_classes(
    h: &ModuleHall<'_>,
    m: &ModuleKey,
    n: &ModuleKey,
) -> Result<BTreeMap<(ModuleKey, ModuleKey), u64>> {
    let cat = h.cat;
    let (mx, nx) = (cat.realize_module(m)?, cat.realize_module(n)?);
    let basis = cat.hom_basis(&mx, &nx);
    cat.check_budget("Hom enumeration", basis.len())?;
    let mut digits = vec![0u32; basis.len()];
    let mut out: BTreeMap<(ModuleKey, ModuleKey), u64> = BTreeMap::new();
    loop {
        let f: RepMap = cat.combine(&mx, &nx, &basis, &digits);
        let (k, _) = cat.kernel(&mx, &f);
        let (c, _) = cat.cokernel(&nx, &f);
        *out.entry((cat.module_key(&k)?, cat.module_key(&c)?)).or_default() += 1;
        if !increment(&mut digits, cat.p()) {
            return Ok(out);
        }
    }
}

/// `γ^{XY}_{MN} = a_X a_Y |{f : ker f ≅ X, coker f ≅ Y}| / (a_M a_N)`.
pub fn gamma_count(
    h: &ModuleHall<'_>,
    m: &ModuleKey,
    n: &ModuleKey,
    x: &ModuleKey,
    y: &ModuleKey,
) -> Result<BigRational> {
    let table = kernel_cokernel_classes(h, m, n)?;
    let count = table.get(&(x.clone(), y.clone())).copied().unwrap_or(0);
    gamma_from_count(h, m, n, x, y, count)
}

pub(crate) fn gamma_from_count(
    h: &ModuleHall<'_>,
    m: &ModuleKey,
    n: &ModuleKey,
    x: &ModuleKey,
    y: &ModuleKey,
    count: u64,
) -> Result<BigRational> {
    let num: BigUint = h.aut_count(x)? * h.aut_count(y)? * BigUint::from(count);
    let den: BigUint = h.aut_count(m)? * h.aut_count(n)?;
    Ok(rational_from_uint(&num) / BigRational::from_integer(BigInt::from(den)))
}
