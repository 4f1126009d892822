//! Hall algebras of representations and of cyclic and m-term complexes: Hall numbers,
//! extension counts, products by two independent counting routes, the kernel/cokernel
//! counts used in the commutation relations, and the comparison map between cyclic and
//! m-term complexes.

mod algebra;
mod category;
mod chi;
mod elt;
mod gamma;

pub use algebra::{coefficient_sum, inverse_p_pow, HallAlgebra, RiedtmannReport, RiedtmannRow};
pub use category::{structural_aut, ComplexHall, HallCategory, ModuleHall};
pub use chi::{chi, chi_basis, close_up, cut_at_zero, has_nonzero_d0, ideal_i_part, section_basis};
pub use elt::{q_pow, rational, rational_from_uint, HallElt};
pub use gamma::{gamma_count, kernel_cokernel_classes};

pub(crate) use gamma::gamma_from_count;
