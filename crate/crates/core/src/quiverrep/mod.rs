//! Representations of an acyclic quiver over F_p: Hom and Ext, isomorphism and automorphism
//! counting, projectives and resolutions, Krull–Schmidt decomposition and enumeration.

mod category;
mod enumerate;
mod quiver;
mod rep;

pub use category::{Fingerprint, ProjResolution, RepCat, StripResult, DEFAULT_BUDGET};
pub use enumerate::{dims_up_to, IndecKey, ModuleKey};
pub use quiver::Quiver;
pub use rep::{Rep, RepMap};

pub(crate) use rep::unflatten;
