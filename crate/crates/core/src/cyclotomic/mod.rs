//! Exact arithmetic in `Q(zeta_m)`, complex embeddings, the polylogarithmic
//! rational functions `d_j`, and logarithms of cyclotomic units.

mod field;
mod polylog;
mod units;

pub use field::{cyclotomic_polynomial, CyclotomicField, CyclotomicNumber};
pub use polylog::{polylog_d, RationalFunction};
pub use units::{cyclotomic_unit_log_sum, REGULATOR_SIGN};
