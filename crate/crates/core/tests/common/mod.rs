//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's arithmetic; group rings are plain maps from labels to rationals.
#![allow(dead_code)]

use std::collections::BTreeMap;

use eqtheta::gring::{RationalGroupRing, RingElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Element = BTreeMap<u64, BigRational>;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `B_0..B_n` with `B_1 = -1/2`, from `sum_{i<m+1} C(m+1, i) B_i = 0`.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let s: BigRational = (0..m).map(|i| BigRational::from(binom(m + 1, i)) * &b[i]).sum();
        b.push(-s / BigRational::from(BigInt::from(m + 1)));
    }
    b
}

/// `B_k(x) = sum_i C(k, i) B_i x^{k-i}`.
pub fn bernoulli_poly_at(k: usize, x: &BigRational) -> BigRational {
    let b = bernoulli_table(k);
    (0..=k)
        .map(|i| BigRational::from(binom(k, i)) * &b[i] * pow(x, (k - i) as u32))
        .sum()
}

pub fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// `zeta(j; a mod f) = -f^{k-1} B_k(a/f) / k` with `k = 1 - j`, for `j <= 0`.
pub fn partial_zeta(f: u64, a: u64, j: i64) -> BigRational {
    assert!(j <= 0);
    let k = (1 - j) as usize;
    let x = q(a as i64, f as i64);
    -BigRational::from(BigInt::from(f).pow((k - 1) as u32)) * bernoulli_poly_at(k, &x) / BigRational::from(BigInt::from(k))
}

pub fn units(f: u64) -> Vec<u64> {
    if f == 1 {
        return vec![1];
    }
    (1..f).filter(|a| a.gcd(&f) == 1).collect()
}

pub fn inverse_mod(a: u64, f: u64) -> u64 {
    if f == 1 {
        return 1;
    }
    (1..f).find(|b| (a * b) % f == 1).expect("unit")
}

fn label(a: u64, f: u64) -> u64 {
    if f == 1 {
        1
    } else {
        a % f
    }
}

pub fn mul(f: u64, x: &Element, y: &Element) -> Element {
    let mut out = Element::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let e = out.entry(label(a * b, f)).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `1 - l^e sigma_l^{-1}`.
pub fn euler_like(f: u64, l: u64, e: i64) -> Element {
    let lp = if e >= 0 {
        BigRational::from(BigInt::from(l).pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(l).pow((-e) as u32))
    };
    let mut out = Element::new();
    out.insert(1, BigRational::one());
    let inv = label(inverse_mod(l % f.max(1), f), f);
    let e = out.entry(inv).or_insert_with(BigRational::zero);
    *e -= lp;
    out.retain(|_, c| !c.is_zero());
    out
}

/// `theta_{S,T}(j)` for `S = {inf} + {l | f} + extra_s`: partial zetas times
/// the Euler factors of the extra `S` primes and the `T` factors.
pub fn theta_oracle(f: u64, extra_s: &[u64], t: &[u64], j: i64) -> Element {
    let mut out = Element::new();
    for a in units(f) {
        let z = partial_zeta(f, a, j);
        if !z.is_zero() {
            out.insert(label(inverse_mod(a, f), f), z);
        }
    }
    for &l in extra_s {
        out = mul(f, &euler_like(f, l, -j), &out);
    }
    for &l in t {
        out = mul(f, &euler_like(f, l, 1 - j), &out);
    }
    out
}

pub fn as_map(x: &RationalGroupRing) -> Element {
    let g = x.group();
    (0..g.order())
        .filter(|&i| !x.coeff(i).is_zero())
        .map(|i| (g.label(i), x.coeff(i).clone()))
        .collect()
}

/// `x mod m` for a rational with denominator prime to `m`.
pub fn residue(x: &BigRational, m: u64) -> Option<u64> {
    let m_big = BigInt::from(m);
    let den = x.denom().mod_floor(&m_big);
    let num = x.numer().mod_floor(&m_big);
    let den = den.to_u64()?;
    let inv = (1..m).find(|d| (den * d) % m == 1 % m)?;
    Some((num.to_u64()? * inv) % m)
}

pub fn is_p_integral(x: &BigRational, p: u64) -> bool {
    !x.denom().abs().is_multiple_of(&BigInt::from(p))
}

/// Leibniz expansion over all permutations.
pub fn leibniz<E: RingElement>(m: &[Vec<E>], one: &E) -> E {
    let n = m.len();
    let mut total = one.zero_like();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut term = one.clone();
        for (i, &pi) in p.iter().enumerate() {
            term = term.mul_elem(&m[i][pi]);
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        total = if inversions % 2 == 0 { total.add_elem(&term) } else { total.sub_elem(&term) };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}
