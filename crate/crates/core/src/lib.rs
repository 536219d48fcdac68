//! Exact equivariant Dirichlet L-values for abelian fields over `Q`, cyclotomic
//! twists of group rings mod `p^n`, and checks of the congruences and
//! Fitting-ideal identities they satisfy.

pub mod cli;
pub mod congruences;
pub mod cyclotomic;
pub mod error;
pub mod gring;
pub mod lfunctions;
pub mod modalg;
pub mod numtheory;
pub mod selftest;

pub use error::{Error, Result};
