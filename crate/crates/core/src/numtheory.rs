//! Small-integer number theory used throughout: gcd, factoring by trial
//! division, modular powers and inverses, and reduction of rationals mod m.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Exponent of `p` in `n` (n > 0).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn checked_pow(p: u64, n: u32) -> Option<u64> {
    p.checked_pow(n)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = extended_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// `a^e mod m` for a signed exponent; `a` must be invertible when `e < 0`.
pub fn pow_mod_signed(a: u64, e: i64, m: u64) -> Option<u64> {
    if e >= 0 {
        Some(pow_mod(a, e as u64, m))
    } else {
        inv_mod(a % m, m).map(|inv| pow_mod(inv, e.unsigned_abs(), m))
    }
}

pub fn reduce_int(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Reduce a rational mod `m`; `None` when the denominator is not invertible.
pub fn reduce_rational(x: &BigRational, m: u64) -> Option<u64> {
    let num = reduce_int(x.numer(), m);
    let den = reduce_int(x.denom(), m);
    inv_mod(den, m).map(|d| mul_mod(num, d, m))
}

/// True when the denominator of `x` is prime to `p`.
pub fn is_p_integral(x: &BigRational, p: u64) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero()
}

/// `base^e` as an exact rational (negative exponents allowed for nonzero base).
pub fn rational_pow(base: i64, e: i64) -> BigRational {
    let b = BigInt::from(base);
    if e >= 0 {
        BigRational::from_integer(num_traits::pow(b, e as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(b, e.unsigned_abs() as usize))
    }
}

/// Lowest-terms "num/den" string, or just "num" for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn sign_of(x: &BigRational) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}
