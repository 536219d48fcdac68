use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;

use super::group::{advance, unit_group, FiniteAbelianGroup, GroupKind};
use super::ring::{CyclotomicGroupRing, GroupRingElement};
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd};

/// A character `G -> mu_m` with exact values `zeta_m^{log(x)}`.
///
/// `level` is a multiple of the character's order; characters obtained from
/// [`characters`] use the exponent of `G`, and primitive cores keep the level
/// of the character they came from so that values stay comparable.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    group: Arc<FiniteAbelianGroup>,
    field: Arc<CyclotomicField>,
    logs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// All characters of `G`, ordered lexicographically by exponent vector on the
/// cyclic factors of [`FiniteAbelianGroup::generators`].
pub fn characters(group: &Arc<FiniteAbelianGroup>) -> Result<Vec<DirichletCharacter>> {
    let field = CyclotomicField::new(group.exponent())?;
    Ok(characters_at_level(group, &field))
}

pub(crate) fn characters_at_level(
    group: &Arc<FiniteAbelianGroup>,
    field: &Arc<CyclotomicField>,
) -> Vec<DirichletCharacter> {
    let orders = group.factor_orders();
    let m = field.level();
    let mut exps = vec![0u64; orders.len()];
    let mut out = Vec::with_capacity(group.order());
    loop {
        // digits advance little-endian, so reverse to get lexicographic order
        let vector: Vec<u64> = exps.iter().rev().copied().collect();
        let logs = (0..group.order())
            .map(|x| {
                group
                    .coordinates(x)
                    .iter()
                    .zip(&vector)
                    .zip(orders)
                    .map(|((&c, &e), &o)| c * e * (m / o))
                    .sum::<u64>()
                    % m
            })
            .collect();
        out.push(DirichletCharacter {
            group: group.clone(),
            field: field.clone(),
            logs,
        });
        let rev_orders: Vec<u64> = orders.iter().rev().copied().collect();
        if !advance(&mut exps, &rev_orders) {
            break;
        }
    }
    out
}

impl DirichletCharacter {
    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn level(&self) -> u64 {
        self.field.level()
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    /// Exponent `k` with `chi(x) = zeta_level^k`, by element index.
    pub fn log_at(&self, x: usize) -> u64 {
        self.logs[x]
    }

    /// `log` of `chi(a)` for an integer `a`, or `None` if `a` is not a unit.
    pub fn log_of(&self, a: i64) -> Option<u64> {
        self.group.element_of(a).map(|x| self.logs[x])
    }

    pub fn value_at(&self, x: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(&self.field, self.logs[x] as i64)
    }

    /// `chi(a)`, zero when `a` shares a factor with the modulus.
    pub fn value(&self, a: i64) -> CyclotomicNumber {
        match self.log_of(a) {
            Some(k) => CyclotomicNumber::zeta_power(&self.field, k as i64),
            None => CyclotomicNumber::zero(&self.field),
        }
    }

    pub fn value_complex(&self, a: i64) -> Complex64 {
        match self.log_of(a) {
            Some(k) => Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * k as f64 / self.level() as f64,
            ),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn order(&self) -> u64 {
        let m = self.level();
        let g = self.logs.iter().fold(m, |acc, &k| gcd(acc, k));
        m / g
    }

    pub fn is_trivial(&self) -> bool {
        self.logs.iter().all(|&k| k == 0)
    }

    pub fn inverse(&self) -> Self {
        let m = self.level();
        DirichletCharacter {
            group: self.group.clone(),
            field: self.field.clone(),
            logs: self.logs.iter().map(|&k| (m - k) % m).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level(), other.level());
        let m = self.level();
        DirichletCharacter {
            group: self.group.clone(),
            field: self.field.clone(),
            logs: self.logs.iter().zip(&other.logs).map(|(a, b)| (a + b) % m).collect(),
        }
    }

    /// Parity from the value at `-1` (modulus 1 and 2 count as even).
    pub fn parity(&self) -> Parity {
        match self.log_of(-1) {
            Some(k) if 2 * k == self.level() => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Smallest `d | f` such that `chi` factors through `(Z/d)^x`.
    pub fn conductor(&self) -> Result<u64> {
        if self.group.kind() != GroupKind::Units {
            return Err(Error::InvalidArgument(
                "conductor is defined for characters of (Z/f)^x".into(),
            ));
        }
        let f = self.modulus();
        Ok(divisors(f)
            .into_iter()
            .find(|&d| {
                (0..self.group.order())
                    .filter(|&x| self.group.label(x) % d == 1 % d)
                    .all(|x| self.logs[x] == 0)
            })
            .expect("f itself is a period"))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.conductor()? == self.modulus())
    }

    /// The primitive character inducing `self`, on `(Z/conductor)^x`, at the same level.
    pub fn primitive_core(&self) -> Result<DirichletCharacter> {
        let d = self.conductor()?;
        let f = self.modulus();
        if d == f {
            return Ok(self.clone());
        }
        let group = unit_group(d)?;
        let logs = group
            .labels()
            .iter()
            .map(|&b| {
                let lift = (0..f)
                    .map(|t| b + t * d)
                    .find(|&a| gcd(a, f) == 1)
                    .expect("every unit mod d lifts to a unit mod f");
                self.log_of(lift as i64).expect("lift is a unit")
            })
            .collect();
        Ok(DirichletCharacter {
            group,
            field: self.field.clone(),
            logs,
        })
    }

    /// `e_chi = (1/#G) sum_sigma chi(sigma) sigma^{-1}` in `Q(zeta)[G]`.
    pub fn idempotent(&self) -> CyclotomicGroupRing {
        let n = self.group.order();
        let scale = BigRational::new(1.into(), (n as i64).into());
        let coeffs = (0..n)
            .map(|x| self.value_at(self.group.inv(x)).scale(&scale))
            .collect();
        GroupRingElement::from_coeffs(&self.group, &self.field, coeffs)
    }

    /// `chi` extended linearly to `Q(zeta)[G]`.
    pub fn evaluate(&self, x: &CyclotomicGroupRing) -> CyclotomicNumber {
        x.coeffs()
            .iter()
            .enumerate()
            .fold(CyclotomicNumber::zero(&self.field), |acc, (i, c)| {
                &acc + &(c * &self.value_at(i))
            })
    }
}
