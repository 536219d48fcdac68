use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gring::DirichletCharacter;

/// `B_0..=B_n` with `B_1 = -1/2`, from `sum_{k<=n} C(n+1,k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let binom = binomial_row(m + 1);
        let s: BigRational = (0..m)
            .map(|k| &b[k] * BigRational::from_integer(binom[k].clone()))
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Coefficients of the Bernoulli polynomial `B_k(x) = sum_i C(k,i) B_i x^{k-i}`, lowest degree first.
pub fn bernoulli_polynomial(k: usize) -> Vec<BigRational> {
    let b = bernoulli_numbers(k);
    let binom = binomial_row(k);
    let mut poly = vec![BigRational::zero(); k + 1];
    for i in 0..=k {
        poly[k - i] = &b[i] * BigRational::from_integer(binom[i].clone());
    }
    poly
}

fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)` for primitive `chi` of modulus `f`.
///
/// The trivial character of modulus 1 gives `B_{1,chi_0} = +1/2`.
pub fn gen_bernoulli(chi: &DirichletCharacter, k: usize) -> Result<CyclotomicNumber> {
    if k == 0 {
        return Err(Error::InvalidArgument("generalized Bernoulli index starts at 1".into()));
    }
    if !chi.is_primitive()? {
        return Err(Error::PrimitiveRequired {
            conductor: chi.conductor()?,
            modulus: chi.modulus(),
        });
    }
    let f = chi.modulus();
    let level = chi.level();
    let poly = bernoulli_polynomial(k);
    let fden = BigInt::from(f);
    // collect sum_a B_k(a/f) by the exponent of chi(a)
    let mut bins = vec![BigRational::zero(); level as usize];
    for a in 1..=f {
        if let Some(log) = chi.log_of(a as i64) {
            bins[log as usize] += eval(&poly, &BigRational::new(BigInt::from(a), fden.clone()));
        }
    }
    let scale = BigRational::from_integer(num_traits::pow(fden, k - 1));
    let bins: Vec<BigRational> = bins.into_iter().map(|c| c * &scale).collect();
    Ok(CyclotomicNumber::from_poly(chi.field(), &bins))
}
