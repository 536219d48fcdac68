//! Module algebra over `Z/p^n[G]` and `Q[G]`: matrices and minors, ideal
//! normal forms, Fitting ideals, exterior powers and their pairing,
//! exterior biduals of free lattices, norm maps, and the rank-0 T-equality.

mod bidual;
mod conj35;
mod exterior;
mod fitting;
mod howell;
pub mod matrix;
mod norm;

pub use bidual::bidual_membership;
pub use conj35::conj35_rank0_check;
pub use exterior::{inversion_sign, pair_scalar, wedge_pair, DualExteriorVector, ExteriorVector};
pub use fitting::{fitting_ideal, PresentedModule};
pub use howell::{ideal_contains, ideal_equal, FGIdeal, HowellForm};
pub use norm::{lemma33_check, norm_map, norm_vector};
