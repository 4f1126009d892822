//! Localized twisted Hall algebras of bounded complexes and of m-term complexes, their
//! distinguished generators and relations, and the maps between them and the derived Hall
//! algebra.

mod algebra;
mod basis;
mod gens;
mod maps;
mod relations;
mod torus;

pub use algebra::{Localized, MHElt};
pub use basis::OrderedMonomial;
pub use gens::{e_inverse_torus, z_torus, GenSym};
pub use maps::{single_term, DhMonomial, Embedding};
pub use relations::sample_classes;
pub use torus::{MHKey, TorusExp};
