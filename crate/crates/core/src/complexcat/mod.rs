//! Cyclic, m-term and bounded complexes of projective representations: named objects, shifts,
//! chain maps, homotopy classes, Euler forms, and Krull–Schmidt decomposition into the
//! standard indecomposables.

mod cx;
mod decompose;
mod enumerate;
mod hom;
mod literal;
mod named;

pub use cx::{Cx, CxKind, CxMap};
pub use decompose::{CxKey, Label, Stripped};
pub use enumerate::CompProfile;

