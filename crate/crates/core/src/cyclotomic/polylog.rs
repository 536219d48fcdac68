use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};

/// A quotient of polynomials with exact rational coefficients (lowest degree first).
#[derive(Debug, Clone)]
pub struct RationalFunction {
    numerator: Vec<BigRational>,
    denominator: Vec<BigRational>,
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// `t * p'(t)`.
fn theta_operator(p: &[BigRational]) -> Vec<BigRational> {
    trim(
        p.iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect(),
    )
}

fn int_poly(coeffs: &[i64]) -> Vec<BigRational> {
    coeffs
        .iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect()
}

impl RationalFunction {
    pub fn new(numerator: Vec<BigRational>, denominator: Vec<BigRational>) -> Result<Self> {
        let denominator = trim(denominator);
        if denominator.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(RationalFunction {
            numerator: trim(numerator),
            denominator,
        })
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.denominator
    }

    /// `t d/dt` by the quotient rule.
    pub fn t_derivative(&self) -> Self {
        let (n, d) = (&self.numerator, &self.denominator);
        let num = poly_sub(&poly_mul(&theta_operator(n), d), &poly_mul(n, &theta_operator(d)));
        RationalFunction {
            numerator: num,
            denominator: poly_mul(d, d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction {
            numerator: trim(self.numerator.iter().map(|x| x * c).collect()),
            denominator: self.denominator.clone(),
        }
    }

    /// Equality as functions, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        poly_mul(&self.numerator, &other.denominator) == poly_mul(&other.numerator, &self.denominator)
    }

    fn eval_poly_rational(p: &[BigRational], t: &BigRational) -> BigRational {
        p.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn evaluate_rational(&self, t: &BigRational) -> Result<BigRational> {
        let den = Self::eval_poly_rational(&self.denominator, t);
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("denominator vanishes at {t}")));
        }
        Ok(Self::eval_poly_rational(&self.numerator, t) / den)
    }

    pub fn evaluate_complex(&self, t: Complex64) -> Complex64 {
        let eval = |p: &[BigRational]| {
            p.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
        };
        eval(&self.numerator) / eval(&self.denominator)
    }

    /// Exact value at `zeta_m^a` in `Q(zeta_m)`.
    pub fn evaluate_at_root(&self, field: &Arc<CyclotomicField>, a: i64) -> Result<CyclotomicNumber> {
        let at = |p: &[BigRational]| {
            let mut spread: Vec<BigRational> = Vec::new();
            for (i, c) in p.iter().enumerate() {
                let k = (a * i as i64).rem_euclid(field.level() as i64) as usize;
                if spread.len() <= k {
                    spread.resize(k + 1, BigRational::zero());
                }
                spread[k] += c;
            }
            CyclotomicNumber::from_poly(field, &spread)
        };
        let den = at(&self.denominator);
        let inv = den.inverse().ok_or_else(|| {
            Error::InvalidArgument(format!("denominator vanishes at zeta_{}^{a}", field.level()))
        })?;
        Ok(&at(&self.numerator) * &inv)
    }
}

/// `d_j(t) = ((-1)^j / (j-1)!) (t d/dt)^{j-1} (t / (1-t))` as `P_j(t) / (1-t)^j`.
pub fn polylog_d(j: i64) -> Result<RationalFunction> {
    if j <= 0 {
        return Err(Error::InvalidArgument(format!("d_j needs j >= 1 (got {j})")));
    }
    let one_minus_t = int_poly(&[1, -1]);
    // numerator of (t d/dt)^k (t/(1-t)) over (1-t)^{k+1}
    let mut num = int_poly(&[0, 1]);
    let mut den = one_minus_t.clone();
    for k in 1..j {
        let kk = BigRational::from_integer(k.into());
        let shifted: Vec<BigRational> = std::iter::once(BigRational::zero())
            .chain(num.iter().map(|c| c * &kk))
            .collect();
        num = poly_add(&poly_mul(&theta_operator(&num), &one_minus_t), &shifted);
        den = poly_mul(&den, &one_minus_t);
    }
    let fact: BigInt = (1..j).map(BigInt::from).product();
    let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let scale = BigRational::new(sign, fact);
    Ok(RationalFunction {
        numerator: num.iter().map(|c| c * &scale).collect(),
        denominator: den,
    })
}
