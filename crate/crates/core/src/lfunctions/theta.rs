use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::lvalue::l_value_truncated;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gring::{characters, unit_group, FiniteAbelianGroup, GroupRingElement, RationalGroupRing};
use crate::numtheory::{is_prime, prime_divisors, rational_pow};

/// `theta_{S,T}(j)` in `Q[(Z/f)^x]` together with the data it was built from.
///
/// `s` lists the finite places of `S`; the infinite place is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaElement {
    value: RationalGroupRing,
    f: u64,
    s: Vec<u64>,
    t: Vec<u64>,
    j: i64,
}

impl ThetaElement {
    pub fn value(&self) -> &RationalGroupRing {
        &self.value
    }

    pub fn into_value(self) -> RationalGroupRing {
        self.value
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        self.value.group()
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn t(&self) -> &[u64] {
        &self.t
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub(crate) fn with_value(other: &ThetaElement, value: RationalGroupRing) -> Self {
        ThetaElement {
            value,
            ..other.clone()
        }
    }
}

fn normalize(primes: &[u64], what: &str) -> Result<Vec<u64>> {
    let mut v = primes.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&l| !is_prime(l)) {
        return Err(Error::InvalidPlaces(format!("{bad} in {what} is not prime")));
    }
    Ok(v)
}

/// Finite part of the minimal `S`: the primes dividing `f` plus `extra`.
pub fn minimal_s(f: u64, extra: &[u64]) -> Vec<u64> {
    let mut s = prime_divisors(f);
    s.extend_from_slice(extra);
    s.sort_unstable();
    s.dedup();
    s
}

/// Validate `S` and `T` for modulus `f`, returning them sorted.
pub fn check_places(f: u64, s_finite: &[u64], t: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    let s = normalize(s_finite, "S")?;
    let t = normalize(t, "T")?;
    if let Some(l) = prime_divisors(f).into_iter().find(|l| !s.contains(l)) {
        return Err(Error::InvalidPlaces(format!("S must contain the ramified prime {l}")));
    }
    if let Some(l) = t.iter().find(|l| s.contains(l)) {
        return Err(Error::InvalidPlaces(format!("{l} lies in both S and T")));
    }
    Ok((s, t))
}

/// `theta_{S,T}(j) = sum_chi L_{S,T}(chi^{-1}, j) e_chi` for `j <= 0`.
///
/// Assembled in `Q(zeta_e)[G]` from primitive L-values and truncation factors,
/// then checked to have rational coefficients.
pub fn theta(f: u64, s_finite: &[u64], t: &[u64], j: i64) -> Result<ThetaElement> {
    if j > 0 {
        return Err(Error::NonPositiveOnly(j));
    }
    let (s, t) = check_places(f, s_finite, t)?;
    let group = unit_group(f)?;
    let chars = characters(&group)?;
    let field = chars[0].field().clone();
    let n = group.order();
    let values: Vec<CyclotomicNumber> = chars
        .iter()
        .map(|chi| l_value_truncated(&chi.inverse(), j, &s, &t))
        .collect::<Result<_>>()?;
    // coefficient of tau is (1/#G) sum_chi L(chi^{-1}) chi(tau^{-1})
    let scale = BigRational::new(1.into(), (n as i64).into());
    let mut coeffs = Vec::with_capacity(n);
    for tau in 0..n {
        let inv = group.inv(tau);
        let mut acc = CyclotomicNumber::zero(&field);
        for (chi, v) in chars.iter().zip(&values) {
            if !v.is_zero() {
                acc = &acc + &(v * &chi.value_at(inv));
            }
        }
        coeffs.push(acc.scale(&scale));
    }
    let value = GroupRingElement::from_coeffs(&group, &field, coeffs).to_rational()?;
    Ok(ThetaElement { value, f, s, t, j })
}

/// `1 - l^{-j} sigma_l^{-1}` in `Q[(Z/f)^x]`.
pub fn euler_factor_group(f: u64, l: u64, j: i64) -> Result<RationalGroupRing> {
    euler_like(&unit_group(f)?, l, -j)
}

/// `delta_T(j) = prod_{l in T} (1 - l^{1-j} sigma_l^{-1})`.
pub fn delta_t(f: u64, t: &[u64], j: i64) -> Result<RationalGroupRing> {
    let group = unit_group(f)?;
    let t = normalize(t, "T")?;
    t.iter().try_fold(RationalGroupRing::one(&group, &()), |acc, &l| {
        Ok(&acc * &euler_like(&group, l, 1 - j)?)
    })
}

/// `1 - l^e sigma_l^{-1}`.
fn euler_like(group: &Arc<FiniteAbelianGroup>, l: u64, e: i64) -> Result<RationalGroupRing> {
    let f = group.modulus();
    let x = group.element_of(l as i64).ok_or_else(|| {
        Error::InvalidPlaces(format!("{l} divides the modulus {f}"))
    })?;
    let mut out = RationalGroupRing::one(group, &());
    let inv = group.inv(x);
    let c = out.coeff(inv).clone() - rational_pow(l as i64, e);
    out.set_coeff(inv, c);
    debug_assert!(out.coeff(group.identity()) == &BigRational::one() || inv == group.identity());
    Ok(out)
}
