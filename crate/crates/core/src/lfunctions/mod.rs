//! Exact L-values at non-positive integers, theta elements, and the float
//! channel (Hurwitz zeta, L-values at arbitrary real `s`, `L'(chi, 0)`).

mod bernoulli;
mod hurwitz;
mod lvalue;
mod theta;

pub use bernoulli::{bernoulli, bernoulli_numbers, bernoulli_polynomial, gen_bernoulli};
pub use hurwitz::{
    classical_plus_part, digamma, hurwitz_zeta, l_derivative_at_zero, l_float, theta_float,
};
pub use lvalue::{l_value, l_value_truncated, parity_forced_zero};
pub use theta::{check_places, delta_t, euler_factor_group, minimal_s, theta, ThetaElement};
