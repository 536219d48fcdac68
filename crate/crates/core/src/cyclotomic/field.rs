use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, gcd};

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (k, &b) in den.iter().enumerate() {
                rem[i + k] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// `Q(zeta_m) = Q[x]/Phi_m(x)` with a table of `x^k mod Phi_m` for `0 <= k < m`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    level: u64,
    degree: usize,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(level: u64) -> Result<Arc<Self>> {
        if level == 0 {
            return Err(Error::InvalidArgument("cyclotomic level must be positive".into()));
        }
        let phi = cyclotomic_polynomial(level);
        let degree = euler_phi(level) as usize;
        debug_assert_eq!(phi.len(), degree + 1);
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x and reduce using the monic Phi
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(phi[i]).expect("overflow reducing x^k"))
                        .expect("overflow reducing x^k");
                }
            }
        }
        Ok(Arc::new(CyclotomicField {
            level,
            degree,
            phi,
            powers,
        }))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// Reduced coordinates of `zeta^k`.
    pub fn power_coords(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.level as i64) as usize]
    }
}

/// An element of `Q(zeta_m)`, stored reduced modulo `Phi_m` in the power basis.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.level == other.field.level && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.field.level),
                _ => format!("{c}*z{}^{i}", self.field.level),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            coeffs: field
                .power_coords(k)
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    /// Reduce an arbitrary polynomial in `zeta` (coefficient of `zeta^i` at index `i`).
    pub fn from_poly(field: &Arc<CyclotomicField>, poly: &[BigRational]) -> Self {
        let mut z = Self::zero(field);
        for (i, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                z.add_scaled_power(c, i as i64);
            }
        }
        z
    }

    fn add_scaled_power(&mut self, c: &BigRational, k: i64) {
        for (dst, &p) in self.coeffs.iter_mut().zip(self.field.power_coords(k)) {
            if p != 0 {
                *dst += c * BigRational::from_integer(p.into());
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn level(&self) -> u64 {
        self.field.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// `sigma_a`: substitute `zeta -> zeta^a`.
    pub fn galois_apply(&self, a: i64) -> Result<Self> {
        let m = self.field.level;
        if gcd(a.rem_euclid(m as i64) as u64, m) != 1 {
            return Err(Error::NotCoprime { a, m });
        }
        let mut out = Self::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(c, a * i as i64);
            }
        }
        Ok(out)
    }

    /// Embedding `zeta_m -> exp(2 pi i a / m)`.
    pub fn embed_complex(&self, a: i64) -> Result<Complex64> {
        let m = self.field.level;
        if gcd(a.rem_euclid(m as i64) as u64, m) != 1 {
            return Err(Error::NotCoprime { a, m });
        }
        let theta = 2.0 * std::f64::consts::PI * (a.rem_euclid(m as i64) as f64) / m as f64;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta * i as f64))
            .sum())
    }

    /// Field norm `N_{Q(zeta_m)/Q}`: product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let m = self.field.level as i64;
        let prod = (1..=m.max(1))
            .filter(|&a| gcd(a as u64, m as u64) == 1)
            .map(|a| self.galois_apply(a).expect("unit"))
            .fold(Self::one(&self.field), |acc, z| &acc * &z);
        prod.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse by solving the multiplication-matrix system.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.field.degree;
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for col in 0..d {
            let basis = Self::zeta_power(&self.field, col as i64);
            let prod = self * &basis;
            for row in 0..d {
                m[row][col] = prod.coeffs[row].clone();
            }
        }
        m[0][d] = BigRational::one();
        let sol = crate::modalg::matrix::solve_rational(m)?;
        Some(CyclotomicNumber {
            field: self.field.clone(),
            coeffs: sol,
        })
    }

    /// Re-express in `Q(zeta_{m'})` for `m | m'` via `zeta_m -> zeta_{m'}^{m'/m}`.
    pub fn raise_level(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let (m, m2) = (self.field.level, target.level);
        if m2 % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot raise level {m} to {m2}: {m} does not divide {m2}"
            )));
        }
        let step = (m2 / m) as i64;
        let mut out = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(c, step * i as i64);
            }
        }
        Ok(out)
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.level, other.field.level,
            "cyclotomic operands at different levels"
        );
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.assert_same_field(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.assert_same_field(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.assert_same_field(rhs);
        let d = self.field.degree;
        let mut full = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out = CyclotomicNumber::zero(&self.field);
        for (i, c) in full.iter().enumerate() {
            if i < d {
                out.coeffs[i] += c;
            } else if !c.is_zero() {
                out.add_scaled_power(c, i as i64);
            }
        }
        out
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
