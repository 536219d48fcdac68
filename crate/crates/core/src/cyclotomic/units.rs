use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gring::DirichletCharacter;

/// Global sign `s` in `L'(chi^{-1}, 0) = s * R(chi) / 2`, pinned by the
/// conductor-5 value `L'(chi_5, 0) = log((1 + sqrt 5)/2)`.
pub const REGULATOR_SIGN: f64 = -1.0;

/// `R(chi) = sum_{a mod f, (a,f)=1} conj(chi(a)) log|1 - exp(2 pi i a / f)|`,
/// the regulator of the cyclotomic unit `(1 - zeta_f)(1 - zeta_f^{-1})/2`
/// paired against `chi`.
///
/// Only even, nontrivial, primitive characters of modulus `f > 4` are accepted.
pub fn cyclotomic_unit_log_sum(f: u64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.modulus() != f {
        return Err(Error::InvalidArgument(format!(
            "character modulus {} differs from f = {f}",
            chi.modulus()
        )));
    }
    if f <= 4 {
        return Err(Error::OutsideVerifiedRegime(format!("f = {f} <= 4")));
    }
    if chi.is_trivial() {
        return Err(Error::OutsideVerifiedRegime("trivial character".into()));
    }
    if !chi.is_even() {
        return Err(Error::OutsideVerifiedRegime("odd character".into()));
    }
    if !chi.is_primitive()? {
        return Err(Error::OutsideVerifiedRegime(format!(
            "imprimitive character (conductor {})",
            chi.conductor()?
        )));
    }
    let group = chi.group();
    Ok((0..group.order())
        .map(|x| {
            let a = group.label(x) as f64;
            let t = std::f64::consts::PI * a / f as f64;
            // |1 - e^{2 pi i a/f}| = 2 sin(pi a / f)
            let log_abs = (2.0 * t.sin()).ln();
            chi.value_complex(group.label(x) as i64).conj() * log_abs
        })
        .sum())
}
