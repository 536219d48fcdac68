use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::bernoulli::bernoulli_numbers;
use crate::cyclotomic::polylog_d;
use crate::error::{Error, Result};
use crate::gring::{characters, unit_group, ComplexGroupRing, DirichletCharacter, Parity};
use crate::numtheory::gcd;

/// Terms kept from the Euler-Maclaurin tail.
const EM_TERMS: usize = 14;
/// Direct terms summed before the tail, for non-integral `s`.
const EM_SHIFT: u32 = 20;
/// Richardson table depth and initial step for `L'(chi, 0)`.
const RICHARDSON_LEVELS: usize = 6;
const RICHARDSON_H0: f64 = 0.25;

/// `B_{2k} / (2k)!` for `k = 1..=EM_TERMS`.
fn tail_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_numbers(2 * EM_TERMS);
        let mut fact = 1.0f64;
        let mut out = Vec::with_capacity(EM_TERMS);
        for k in 1..=EM_TERMS {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            out.push(b[2 * k].to_f64().expect("finite") / fact);
        }
        out
    })
}

fn is_nonpositive_integer(s: f64) -> bool {
    s <= 0.0 && s.fract() == 0.0
}

/// Hurwitz zeta `zeta(s, x)` for real `s != 1` and `0 < x <= 1`, by Euler-Maclaurin.
///
/// At non-positive integers the tail terminates and no shift is used, so the
/// result is the Bernoulli-polynomial value up to rounding.
pub fn hurwitz_zeta(s: f64, x: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole);
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz parameter {x} outside (0, 1]")));
    }
    let shift = if is_nonpositive_integer(s) { 0 } else { EM_SHIFT };
    let head: f64 = (0..shift).map(|n| (n as f64 + x).powf(-s)).sum();
    let y = shift as f64 + x;
    let mut total = head + y.powf(1.0 - s) / (s - 1.0) + 0.5 * y.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2)
    let mut rising = s;
    for (k, c) in tail_coefficients().iter().enumerate() {
        let k = k + 1;
        if k > 1 {
            rising *= (s + (2 * k - 3) as f64) * (s + (2 * k - 2) as f64);
        }
        if rising == 0.0 {
            break;
        }
        total += c * rising * y.powf(-s - (2 * k - 1) as f64);
    }
    Ok(total)
}

/// Digamma `psi(x)` for `x > 0` via recurrence and the asymptotic series.
pub fn digamma(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < EM_SHIFT as f64 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let b = tail_coefficients();
    let mut series = y.ln() - 0.5 / y;
    let mut fact = 1.0f64;
    for (k, c) in b.iter().enumerate().take(8) {
        let k = k + 1;
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        // B_{2k} / (2k y^{2k}) = c (2k)! / (2k) / y^{2k}
        series -= c * fact / (2 * k) as f64 * y.powi(-(2 * k as i32));
    }
    acc + series
}

/// `L(chi, s)` for primitive `chi`, as `f^{-s} sum_a chi(a) zeta(s, a/f)`.
///
/// At `s = 1` nontrivial characters use `L(chi, 1) = -(1/f) sum_a chi(a) psi(a/f)`.
pub fn l_float(chi: &DirichletCharacter, s: f64) -> Result<Complex64> {
    if !chi.is_primitive()? {
        return Err(Error::PrimitiveRequired {
            conductor: chi.conductor()?,
            modulus: chi.modulus(),
        });
    }
    let f = chi.modulus();
    let units = (1..=f).filter(|&a| gcd(a, f) == 1);
    if s == 1.0 {
        if chi.is_trivial() {
            return Err(Error::Pole);
        }
        let sum: Complex64 = units
            .map(|a| chi.value_complex(a as i64) * digamma(a as f64 / f as f64))
            .sum();
        return Ok(-sum / f as f64);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for a in units {
        sum += chi.value_complex(a as i64) * hurwitz_zeta(s, a as f64 / f as f64)?;
    }
    Ok(sum * (f as f64).powf(-s))
}

/// `L'(chi, 0)` by central differences `(L(h) - L(-h)) / 2h` at
/// `h = 0.25, 0.125, ...` (six steps) with Richardson extrapolation in `h^2`.
pub fn l_derivative_at_zero(chi: &DirichletCharacter) -> Result<Complex64> {
    let mut table: Vec<Complex64> = Vec::with_capacity(RICHARDSON_LEVELS);
    for i in 0..RICHARDSON_LEVELS {
        let h = RICHARDSON_H0 / f64::powi(2.0, i as i32);
        table.push((l_float(chi, h)? - l_float(chi, -h)?) / (2.0 * h));
    }
    for level in 1..RICHARDSON_LEVELS {
        let factor = f64::powi(4.0, level as i32);
        for i in (level..RICHARDSON_LEVELS).rev() {
            table[i] = (table[i] * factor - table[i - 1]) / (factor - 1.0);
        }
    }
    Ok(table[RICHARDSON_LEVELS - 1])
}

/// Float `sum_chi L_S(chi^{-1}, s) e_chi` over the characters of `(Z/f)^x`
/// of the given parity (all characters when `parity` is `None`).
pub fn theta_float(
    f: u64,
    s_finite: &[u64],
    s: f64,
    parity: Option<Parity>,
) -> Result<ComplexGroupRing> {
    let group = unit_group(f)?;
    let n = group.order();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for chi in characters(&group)? {
        if parity.is_some_and(|p| chi.parity() != p) {
            continue;
        }
        let core = chi.inverse().primitive_core()?;
        let mut value = l_float(&core, s)?;
        for &l in s_finite {
            value *= Complex64::new(1.0, 0.0) - core.value_complex(l as i64) * (l as f64).powf(-s);
        }
        for (tau, c) in coeffs.iter_mut().enumerate() {
            *c += value * chi.value_complex(group.label(group.inv(tau)) as i64);
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c / n as f64).collect();
    Ok(ComplexGroupRing::from_coeffs(&group, &(), coeffs))
}

/// `(1/4) (2 pi i / f)^j sum_a (d_j(zeta^a) + (-1)^j d_j(zeta^{-a})) sigma_a^{-1}`, `j >= 1`.
pub fn classical_plus_part(f: u64, j: i64) -> Result<ComplexGroupRing> {
    let d = polylog_d(j)?;
    let group = unit_group(f)?;
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    let period = (Complex64::new(0.0, 2.0 * PI / f as f64)).powi(j as i32) / 4.0;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); group.order()];
    for x in 0..group.order() {
        let a = group.label(x) as f64;
        let z = Complex64::from_polar(1.0, 2.0 * PI * a / f as f64);
        let term = d.evaluate_complex(z) + d.evaluate_complex(z.conj()) * sign;
        coeffs[group.inv(x)] += term * period;
    }
    Ok(ComplexGroupRing::from_coeffs(&group, &(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::{l_value, theta};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn riemann_special_values() {
        assert!(close(hurwitz_zeta(2.0, 1.0).unwrap(), PI * PI / 6.0, 1e-12));
        assert!(close(hurwitz_zeta(4.0, 1.0).unwrap(), PI.powi(4) / 90.0, 1e-12));
        assert!(close(hurwitz_zeta(0.0, 1.0).unwrap(), -0.5, 1e-15));
        assert!(close(hurwitz_zeta(-1.0, 1.0).unwrap(), -1.0 / 12.0, 1e-15));
        assert!(close(hurwitz_zeta(0.5, 1.0).unwrap(), -1.4603545088095868, 1e-12));
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let z3 = hurwitz_zeta(3.0, 1.0).unwrap();
        assert!(close(hurwitz_zeta(3.0, 0.5).unwrap(), 7.0 * z3, 1e-12));
        assert_eq!(hurwitz_zeta(1.0, 0.5), Err(Error::Pole));
    }

    #[test]
    fn digamma_values() {
        let euler_gamma = 0.5772156649015329;
        assert!(close(digamma(1.0), -euler_gamma, 1e-13));
        assert!(close(digamma(0.5), -euler_gamma - 2.0 * 2f64.ln(), 1e-13));
    }

    #[test]
    fn zeta_prime_at_zero() {
        let triv = characters(&unit_group(1).unwrap()).unwrap().remove(0);
        let d = l_derivative_at_zero(&triv).unwrap();
        assert!(close(d.re, -0.5 * (2.0 * PI).ln(), 1e-11));
    }

    #[test]
    fn fundamental_unit_logs() {
        for (f, unit) in [(5u64, (1.0 + 5f64.sqrt()) / 2.0), (8, 1.0 + 2f64.sqrt()), (12, 2.0 + 3f64.sqrt())] {
            let chi = characters(&unit_group(f).unwrap())
                .unwrap()
                .into_iter()
                .find(|c| c.order() == 2 && c.is_even() && c.is_primitive().unwrap())
                .unwrap();
            let d = l_derivative_at_zero(&chi).unwrap();
            assert!((d.re - unit.ln()).abs() < 1e-10, "f = {f}: {d}");
            assert!(d.im.abs() < 1e-12);
        }
    }

    #[test]
    fn float_matches_exact_channel() {
        for f in 1..=20u64 {
            for chi in characters(&unit_group(f).unwrap()).unwrap() {
                if !chi.is_primitive().unwrap() {
                    continue;
                }
                for j in 0..=3 {
                    let exact = l_value(&chi, -j).unwrap().embed_complex(1).unwrap();
                    let float = l_float(&chi, -j as f64).unwrap();
                    assert!((exact - float).norm() <= 1e-8, "f={f} j={j}");
                }
            }
        }
        let chi3 = characters(&unit_group(3).unwrap()).unwrap().remove(1);
        assert!((l_float(&chi3, 0.0).unwrap().re - 1.0 / 3.0).abs() < 1e-9);
        // L(chi_{-4}, 1) = pi / 4
        let chi4 = characters(&unit_group(4).unwrap()).unwrap().remove(1);
        assert!((l_float(&chi4, 1.0).unwrap().re - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn theta_float_matches_exact() {
        for (f, s) in [(5u64, vec![5u64]), (12, vec![2, 3]), (9, vec![3, 2])] {
            let exact = theta(f, &s, &[], -1).unwrap();
            let float = theta_float(f, &s, -1.0, None).unwrap();
            for (x, c) in float.coeffs().iter().enumerate() {
                let e = exact.value().coeff(x).to_f64().unwrap();
                assert!((c.re - e).abs() < 1e-9 && c.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn classical_formula_small_levels() {
        for f in [3u64, 4, 5, 7, 8, 9, 11, 12, 13] {
            let s = crate::lfunctions::minimal_s(f, &[]);
            for j in [1i64, 2] {
                let parity = if j % 2 == 0 { Parity::Even } else { Parity::Odd };
                let lhs = theta_float(f, &s, j as f64, Some(parity)).unwrap();
                let rhs = classical_plus_part(f, j).unwrap();
                for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                    assert!((a - b).norm() < 1e-9, "f={f} j={j}: {a} vs {b}");
                }
            }
        }
    }
}
