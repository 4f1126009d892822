//! Exact computations in Hall algebras of cyclic complexes and fixed-size complexes of
//! projective representations of an acyclic quiver over a prime field.

pub mod error;
pub mod exactla;
pub mod quiverrep;
pub mod complexcat;

pub use error::{Error, Result};
pub mod hallcore;
pub mod localized;
pub mod report;
pub mod integration;
pub mod suites;
