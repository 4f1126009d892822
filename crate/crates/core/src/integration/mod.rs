//! The Grothendieck group of 2-term complexes of projectives through dimension vectors read
//! off minimal injective resolutions, the quantum torus of its Euler form, and the
//! integration map from the Hall algebra of 2-term complexes to that torus.

mod resolution;

use std::collections::HashMap;
use std::fmt;

use parking_lot::RwLock;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use resolution::{InjectiveResolution, MinimalMultiplicities};

use crate::complexcat::{Cx, CxKey, CxKind, Label};
use crate::error::{domain, Result};
use crate::hallcore::{q_pow, ComplexHall, HallAlgebra, HallElt};
use crate::quiverrep::RepCat;
use crate::report::Instance;

/// An exponent `e ∈ Z^{2n}` of the quantum torus, printed as `X^(e_1..e_n|e_{n+1}..e_2n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub Vec<i64>);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = self.0.len() / 2;
        let s = |xs: &[i64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "X^({}|{})", s(&self.0[..half]), s(&self.0[half..]))
    }
}

/// An element of the quantum torus: exponents with rational coefficients.
pub type TorusElt = HallElt<Exponent>;

/// JSON form: a list of `[exponent, numerator, denominator]`.
pub fn torus_to_json(x: &TorusElt) -> Value {
    Value::Array(
        x.iter().map(|(e, c)| json!([e.0, c.numer().to_string(), c.denom().to_string()])).collect(),
    )
}

/// Integration over the Hall algebra of `C^2(P)`.
pub struct Integration<'a> {
    pub cat: &'a RepCat,
    pub hall: HallAlgebra<ComplexHall<'a>>,
    /// `Λ` on the standard basis of `Z^{2n}`.
    lambda: Vec<Vec<i64>>,
    dims: RwLock<HashMap<Label, Vec<i64>>>,
}

impl<'a> Integration<'a> {
    /// Only `m = 2` is supported: `C^2(P)` is the case of global dimension one.
    pub fn new(cat: &'a RepCat, m: usize) -> Result<Self> {
        if m != 2 {
            return domain(format!("the integration map is defined for m = 2, got m = {m}"));
        }
        let kind = CxKind::Window(2);
        let n = cat.n();
        // f^{-1} of the standard basis: -Ŝ_{P_i}, then Ĵ_{P_i}
        let mut basis = Vec::with_capacity(2 * n);
        for v in 0..n {
            basis.push((cat.realize_label(&Label::S { vertex: v }, kind)?, -1));
        }
        for v in 0..n {
            basis.push((cat.realize_label(&Label::J { vertex: v, shift: 0 }, kind)?, 1));
        }
        let mut lambda = vec![vec![0i64; 2 * n]; 2 * n];
        for (i, (x, sx)) in basis.iter().enumerate() {
            for (j, (y, sy)) in basis.iter().enumerate() {
                lambda[i][j] = sx * sy * cat.euler_form_cm(x, y)?;
            }
        }
        Ok(Self { cat, hall: HallAlgebra::new(ComplexHall::new(cat, kind)), lambda, dims: RwLock::new(HashMap::new()) })
    }

    pub fn p(&self) -> u32 {
        self.cat.p()
    }

    pub fn kind(&self) -> CxKind {
        CxKind::Window(2)
    }

    pub fn lambda_matrix(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    pub fn lambda_form(&self, e: &[i64], f: &[i64]) -> i64 {
        let mut total = 0;
        for (i, row) in self.lambda.iter().enumerate() {
            for (j, l) in row.iter().enumerate() {
                total += e[i] * l * f[j];
            }
        }
        total
    }

    /// Minimal injective resolution multiplicities of a 2-term complex.
    pub fn minimal_resolution(&self, x: &Cx) -> Result<MinimalMultiplicities> {
        let r = self.cat.injective_resolution_c2(x)?;
        self.cat.minimize_resolution(&r)
    }

    pub fn dim_vec(&self, x: &Cx) -> Result<Vec<i64>> {
        Ok(self.minimal_resolution(x)?.dim_vec())
    }

    pub fn grothendieck_coords(&self, x: &Cx) -> Result<Vec<i64>> {
        Ok(self.minimal_resolution(x)?.coords())
    }

    fn label_dim(&self, l: &Label) -> Result<Vec<i64>> {
        if let Some(d) = self.dims.read().get(l) {
            return Ok(d.clone());
        }
        let d = self.dim_vec(&self.cat.realize_label(l, self.kind())?)?;
        self.dims.write().insert(l.clone(), d.clone());
        Ok(d)
    }

    /// `dim` of a class, summed over its indecomposable summands.
    pub fn key_dim(&self, k: &CxKey) -> Result<Vec<i64>> {
        let mut out = vec![0i64; 2 * self.cat.n()];
        for l in k.labels() {
            for (a, b) in out.iter_mut().zip(self.label_dim(l)?) {
                *a += b;
            }
        }
        Ok(out)
    }

    pub fn monomial(&self, e: Vec<i64>) -> TorusElt {
        HallElt::basis(Exponent(e))
    }

    /// `X^e * X^f = q^{-Λ(e,f)} X^{e+f}`, extended bilinearly.
    pub fn torus_mul(&self, x: &TorusElt, y: &TorusElt) -> TorusElt {
        let mut out = TorusElt::zero();
        for (e, ce) in x.iter() {
            for (f, cf) in y.iter() {
                let sum: Vec<i64> = e.0.iter().zip(&f.0).map(|(a, b)| a + b).collect();
                let c = ce * cf * q_pow(self.p(), -self.lambda_form(&e.0, &f.0));
                out.add_term(Exponent(sum), c);
            }
        }
        out
    }

    /// `∫ [M] = X^{dim M}`, extended linearly.
    pub fn integrate(&self, x: &HallElt<CxKey>) -> Result<TorusElt> {
        x.map_linear(|k| Ok(self.monomial(self.key_dim(k)?)))
    }

    /// `∫([X] ◇ [Y]) = ∫[X] * ∫[Y]` for all ordered pairs.
    pub fn homomorphism_instances(&self, keys: &[CxKey]) -> Result<Vec<Instance>> {
        self.pairs(keys)
            .par_iter()
            .map(|(x, y)| {
                let lhs = self.integrate(&self.hall.basis_product(x, y)?)?;
                let rhs = self.torus_mul(&self.integrate(&HallElt::basis((*x).clone()))?, &self.integrate(&HallElt::basis((*y).clone()))?);
                Ok(Instance::new("integration-homomorphism").param("x", x).param("y", y).compare(&lhs, &rhs))
            })
            .collect()
    }

    /// Every middle term `L` of an extension of `X` by `Y` found in `[X] ◇ [Y]` has
    /// `dim L = dim X + dim Y`.
    pub fn additivity_instances(&self, keys: &[CxKey]) -> Result<Vec<Instance>> {
        let nested: Vec<Vec<Instance>> = self
            .pairs(keys)
            .par_iter()
            .map(|(x, y)| {
                let expected: Vec<i64> =
                    self.key_dim(x)?.iter().zip(self.key_dim(y)?).map(|(a, b)| a + b).collect();
                let expected = Exponent(expected);
                let mut out = Vec::new();
                for l in self.hall.basis_product(x, y)?.keys() {
                    let got = Exponent(self.dim_vec(&self.cat.realize_cx(l, self.kind())?)?);
                    out.push(
                        Instance::new("dim-additivity")
                            .param("x", x)
                            .param("y", y)
                            .param("middle", l)
                            .compare(&got, &expected),
                    );
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(nested.into_iter().flatten().collect())
    }

    /// `Λ(dim X, dim Y)` equals the Euler form of `C^2(P)`.
    pub fn lambda_instances(&self, keys: &[CxKey]) -> Result<Vec<Instance>> {
        self.pairs(keys)
            .par_iter()
            .map(|(x, y)| {
                let (cx, cy) = (self.cat.realize_cx(x, self.kind())?, self.cat.realize_cx(y, self.kind())?);
                let lhs = self.lambda_form(&self.dim_vec(&cx)?, &self.dim_vec(&cy)?);
                let rhs = self.cat.euler_form_cm(&cx, &cy)?;
                Ok(Instance::new("lambda-euler").param("x", x).param("y", y).compare(&lhs, &rhs))
            })
            .collect()
    }

    /// The standard resolution of each class is exact, and padding it with random identity
    /// summands `S_Q = S_Q`, `J_R = J_R` does not change the minimized multiplicities.
    pub fn resolution_instances(&self, keys: &[CxKey], seed: u64) -> Result<Vec<Instance>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.cat.n();
        let mut out = Vec::new();
        for k in keys {
            let x = self.cat.realize_cx(k, self.kind())?;
            let r = self.cat.injective_resolution_c2(&x)?;
            let minimal = self.cat.minimize_resolution(&r)?;
            let q: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let rr: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let padded = self.cat.pad_resolution(&r, &self.cat.projective_sum(&q), &self.cat.projective_sum(&rr));
            let exact = self.cat.resolution_is_exact(&padded)?;
            let again = self.cat.minimize_resolution(&padded)?;
            out.push(Instance::new("resolution-well-defined").param("x", k).param("pad_s", fmt_vec(&q)).param("pad_j", fmt_vec(&rr)).check(
                exact && again == minimal,
                Exponent(again.dim_vec()),
                Exponent(minimal.dim_vec()),
            ));
        }
        Ok(out)
    }

    fn pairs<'k>(&self, keys: &'k [CxKey]) -> Vec<(&'k CxKey, &'k CxKey)> {
        keys.iter().flat_map(|x| keys.iter().map(move |y| (x, y))).collect()
    }
}

fn fmt_vec(v: &[usize]) -> String {
    format!("{v:?}")
}
