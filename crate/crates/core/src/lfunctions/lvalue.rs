use num_bigint::BigInt;
use num_rational::BigRational;

use super::bernoulli::gen_bernoulli;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gring::DirichletCharacter;
use crate::numtheory::rational_pow;

/// Exact `L(chi, j)` for primitive `chi` and `j <= 0`, as `-B_{1-j,chi}/(1-j)`.
///
/// The value vanishes exactly when [`parity_forced_zero`] says so.
pub fn l_value(chi: &DirichletCharacter, j: i64) -> Result<CyclotomicNumber> {
    if j > 0 {
        return Err(Error::NonPositiveOnly(j));
    }
    let k = (1 - j) as usize;
    let b = gen_bernoulli(chi, k)?;
    Ok(b.scale(&BigRational::new(BigInt::from(-1), BigInt::from(k))))
}

/// Trivial zeros at `j <= 0`: `L(chi, j) = 0` iff `chi(-1) = (-1)^j`, except `zeta(0) = -1/2`.
pub fn parity_forced_zero(chi: &DirichletCharacter, j: i64) -> bool {
    if chi.is_trivial() && chi.modulus() == 1 && j == 0 {
        return false;
    }
    chi.is_even() == (j % 2 == 0)
}

/// `L_{S,T}(chi, j)` for any character: the primitive value times
/// `prod_{l in S} (1 - chi*(l) l^{-j})` and `prod_{l in T} (1 - chi*(l) l^{1-j})`,
/// where `chi*` is the primitive core (so `chi*(l) = 0` for `l` dividing its conductor).
pub fn l_value_truncated(
    chi: &DirichletCharacter,
    j: i64,
    s_finite: &[u64],
    t: &[u64],
) -> Result<CyclotomicNumber> {
    let core = chi.primitive_core()?;
    let field = chi.field().clone();
    let mut value = l_value(&core, j)?;
    let factors = s_finite
        .iter()
        .map(|&l| (l, -j))
        .chain(t.iter().map(|&l| (l, 1 - j)));
    for (l, e) in factors {
        let chi_l = core.value(l as i64);
        if chi_l.is_zero() {
            continue;
        }
        let factor = &CyclotomicNumber::one(&field) - &chi_l.scale(&rational_pow(l as i64, e));
        value = &value * &factor;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{characters, unit_group};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn values() {
        let chi3 = characters(&unit_group(3).unwrap()).unwrap().remove(1);
        assert_eq!(l_value(&chi3, 0).unwrap().as_rational(), Some(q(1, 3)));
        let triv = characters(&unit_group(1).unwrap()).unwrap().remove(0);
        assert_eq!(l_value(&triv, -1).unwrap().as_rational(), Some(q(-1, 12)));
        assert_eq!(l_value(&triv, 0).unwrap().as_rational(), Some(q(-1, 2)));
        assert_eq!(l_value(&triv, -3).unwrap().as_rational(), Some(q(1, 120)));
        assert_eq!(l_value(&triv, -7).unwrap().as_rational(), Some(q(1, 240)));
        let even5 = characters(&unit_group(5).unwrap())
            .unwrap()
            .into_iter()
            .find(|c| c.order() == 2)
            .unwrap();
        assert!(l_value(&even5, 0).unwrap().is_zero());
        assert!(parity_forced_zero(&even5, 0));
        assert_eq!(l_value(&chi3, 1), Err(Error::NonPositiveOnly(1)));
    }

    #[test]
    fn zeros_are_exactly_the_parity_forced_ones() {
        for f in 1..=20u64 {
            if f % 4 == 2 {
                continue;
            }
            for chi in characters(&unit_group(f).unwrap()).unwrap() {
                if !chi.is_primitive().unwrap() {
                    continue;
                }
                for j in -6..=0 {
                    let v = l_value(&chi, j).unwrap();
                    assert_eq!(v.is_zero(), parity_forced_zero(&chi, j), "f={f} j={j}");
                }
            }
        }
    }

    #[test]
    fn truncation_at_imprimitive() {
        // the trivial character mod 5 with S = {5}: (1 - 5^{1}) zeta(-1) = 1/3
        let triv = characters(&unit_group(5).unwrap()).unwrap().remove(0);
        let v = l_value_truncated(&triv, -1, &[5], &[]).unwrap();
        assert_eq!(v.as_rational(), Some(q(1, 3)));
        let v = l_value_truncated(&triv, 0, &[5], &[]).unwrap();
        assert!(v.is_zero());
    }
}
