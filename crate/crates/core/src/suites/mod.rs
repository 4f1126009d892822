//! Named verification suites. Each suite evaluates one family of identities over a fixture
//! grid and returns a [`Report`] whose instances are in a deterministic order.

mod hall;
mod mh;

use crate::error::{domain, Result};
use crate::quiverrep::{ModuleKey, RepCat};
use crate::report::Report;

/// Grid and sampling parameters shared by all suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Dimension bound for modules.
    pub max_dim: Vec<usize>,
    /// `m` for cyclic and m-term complexes.
    pub m: usize,
    /// Level window for bounded complexes and generator indices.
    pub levels: (i64, i64),
    /// Number of random samples for the sampled suites.
    pub samples: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(max_dim: Vec<usize>, m: usize, levels: (i64, i64)) -> Self {
        Self { max_dim, m, levels, samples: 100, seed: 1 }
    }

    /// Componentwise bound for complexes: `max_dim` for two components, capped at 1 in each
    /// vertex for three or more, where the class count grows too fast for all-pairs suites.
    pub fn cx_bound(&self) -> Vec<usize> {
        if self.m <= 2 {
            self.max_dim.clone()
        } else {
            self.small_cx_bound()
        }
    }

    /// `max_dim` capped at 1 in each vertex, for the suites that enumerate every extension
    /// class of every pair of complexes.
    pub fn small_cx_bound(&self) -> Vec<usize> {
        self.max_dim.iter().map(|&d| d.min(1)).collect()
    }

    fn validate(&self, cat: &RepCat) -> Result<()> {
        if self.max_dim.len() != cat.n() {
            return domain(format!("max-dim has {} entries, the quiver has {} vertices", self.max_dim.len(), cat.n()));
        }
        if self.m == 0 {
            return domain("m must be positive");
        }
        Ok(())
    }
}

/// Every registered suite, in the order of the acceptance list.
pub const SUITES: &[&str] = &[
    "riedtmann-peng",
    "line-count",
    "assoc",
    "thm-3-4",
    "lemma-3-3",
    "lemma-5-1",
    "rel-5-5",
    "rel-5-7",
    "rel-6-4",
    "psi-hat",
    "basis-5-4",
    "basis-6-1",
    "embed-psi-lambda-phi",
    "krull-schmidt",
    "integration-7",
    "worked-products",
];

/// Runs the named suite.
pub fn run_suite(name: &str, cat: &RepCat, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate(cat)?;
    let mut report = Report::new(name);
    let leveled = ["lemma-5-1", "rel-5-5", "rel-5-7", "psi-hat", "basis-5-4"];
    if cfg.levels.0 > cfg.levels.1 && leveled.contains(&name) {
        return Ok(report.finish());
    }
    let instances = match name {
        "riedtmann-peng" => hall::riedtmann_peng(cat, cfg)?,
        "line-count" => hall::line_count(cat)?,
        "assoc" => hall::associativity(cat, cfg)?,
        "thm-3-4" => hall::chi_homomorphism(cat, cfg)?,
        "lemma-3-3" => hall::ideal_closure(cat, cfg)?,
        "lemma-5-1" => hall::stalk_ext(cat, cfg)?,
        "krull-schmidt" => hall::krull_schmidt(cat, cfg)?,
        "worked-products" => hall::worked_products(cat)?,
        "rel-5-5" => mh::bounded(cat, cfg, false)?,
        "rel-5-7" => mh::bounded(cat, cfg, true)?,
        "rel-6-4" => mh::window(cat, cfg)?,
        "psi-hat" => mh::psi_hat(cat, cfg)?,
        "basis-5-4" => mh::basis_bounded(cat, cfg)?,
        "basis-6-1" => mh::basis_window(cat, cfg)?,
        "embed-psi-lambda-phi" => mh::embedding(cat, cfg)?,
        "integration-7" => mh::integration(cat, cfg)?,
        _ => return domain(format!("unknown suite {name}; known suites: {}", SUITES.join(", "))),
    };
    report.instances = instances;
    Ok(report.finish())
}

/// Nonzero module classes with dims `<= bound`.
pub(crate) fn module_grid(cat: &RepCat, bound: &[usize]) -> Result<Vec<ModuleKey>> {
    Ok(cat.enumerate_iso_class_keys(bound)?.into_iter().filter(|k| !k.is_zero()).collect())
}
