use std::time::Instant;

use num_rational::BigRational;

use super::report::{CheckKind, CongruenceReport, Status, Witness};
use crate::error::{Error, Result};
use crate::gring::{
    parity_idempotent, twist, GroupRingElement, RationalGroupRing, Residue, ResidueGroupRing,
    ResidueRing,
};
use crate::lfunctions::{euler_factor_group, l_value, theta, delta_t, ThetaElement};
use crate::gring::{characters, unit_group};
use crate::numtheory::{format_rational, is_prime, reduce_rational, valuation};

/// Coefficientwise reduction of an exact-rational group-ring element into `Z/p^n[G]`.
pub fn reduce_mod(x: &RationalGroupRing, p: u64, n: u32) -> Result<ResidueGroupRing> {
    let ring = ResidueRing::new(p, n)?;
    let group = x.group();
    let coeffs = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            reduce_rational(c, ring.modulus())
                .map(|v| ring.element(v as i64))
                .ok_or_else(|| Error::NotIntegral {
                    label: group.label(i),
                    value: format_rational(c),
                    p,
                })
        })
        .collect::<Result<Vec<Residue>>>()?;
    Ok(GroupRingElement::from_coeffs(group, &ring, coeffs))
}

fn scalar_witness(lhs: u64, rhs: u64) -> Witness {
    Witness {
        labels: vec![1],
        lhs: vec![lhs.to_string()],
        rhs: vec![rhs.to_string()],
    }
}

/// `(1 - p^{-j}) zeta(j)` as an exact rational, for `j < 0`.
fn kummer_side(p: u64, j: i64) -> BigRational {
    let triv = &characters(&unit_group(1).expect("f = 1")).expect("trivial group")[0];
    let zeta = l_value(triv, j)
        .expect("j <= 0")
        .as_rational()
        .expect("zeta values are rational");
    let euler = BigRational::from_integer(1.into()) - crate::numtheory::rational_pow(p as i64, -j);
    euler * zeta
}

/// Kummer's congruence `(1 - p^{-j}) zeta(j) = (1 - p^{-k}) zeta(k) mod p^n`.
pub fn verify_kummer(p: u64, n: u32, j: i64, k: i64) -> CongruenceReport {
    let start = Instant::now();
    let mut report = CongruenceReport::new(CheckKind::Kummer, p, n, j);
    report.k = Some(k);
    let report = match kummer_precondition(p, n, j, k) {
        Err(reason) => report.skip(reason),
        Ok(modulus) => {
            let lhs = reduce_rational(&kummer_side(p, j), modulus);
            let rhs = reduce_rational(&kummer_side(p, k), modulus);
            match (lhs, rhs) {
                (Some(a), Some(b)) => report.compare(scalar_witness(a, b)),
                _ => report.skip("zeta value not p-integral"),
            }
        }
    };
    CongruenceReport {
        elapsed: start.elapsed(),
        ..report
    }
}

fn kummer_precondition(p: u64, n: u32, j: i64, k: i64) -> std::result::Result<u64, String> {
    if p == 2 || !is_prime(p) {
        return Err(format!("p = {p} is not an odd prime"));
    }
    if j >= 0 || k >= 0 || j % 2 == 0 || k % 2 == 0 {
        return Err("j and k must be odd and negative".into());
    }
    let ring = ResidueRing::new(p, n).map_err(|e| e.to_string())?;
    let period = (ring.modulus() / p) as i64 * (p as i64 - 1);
    if (j - k).rem_euclid(period) != 0 {
        return Err(format!("j and k differ mod {period}"));
    }
    if (1 - j).rem_euclid(p as i64 - 1) == 0 {
        return Err(format!("1 - j is divisible by {}", p - 1));
    }
    Ok(ring.modulus())
}

/// Shared preconditions of the group-ring congruences: `p` odd prime, `p^n | f`, `f > 2`.
fn level_precondition(f: u64, p: u64, n: u32) -> std::result::Result<ResidueRing, String> {
    if p == 2 || !is_prime(p) {
        return Err(format!("p = {p} is not an odd prime"));
    }
    if valuation(f, p) < n {
        return Err(Error::CyclotomicCharacterUndefined { f, p, n }.to_string());
    }
    ResidueRing::new(p, n).map_err(|e| e.to_string())
}

fn minus_part(theta: &ThetaElement, p: u64, n: u32) -> Result<ResidueGroupRing> {
    let e = parity_idempotent(theta.group(), theta.j(), false)?;
    reduce_mod(&(&e * theta.value()), p, n)
}

/// `tw_{k-j}(e_j^- theta(j)) = e_k^- theta(k)` in `Z/p^n[G]`, from precomputed theta elements.
pub fn minus_congruence_from(
    theta_j: &ThetaElement,
    theta_k: &ThetaElement,
    p: u64,
    n: u32,
) -> CongruenceReport {
    let start = Instant::now();
    let (j, k) = (theta_j.j(), theta_k.j());
    let mut report = CongruenceReport::new(CheckKind::Minus, p, n, j);
    report.f = Some(theta_j.f());
    report.k = Some(k);
    report.s = theta_j.s().to_vec();
    report.t = theta_j.t().to_vec();
    report.epsilon = format!("e_{j}^-");
    let report = (|| {
        if theta_j.f() != theta_k.f() || theta_j.s() != theta_k.s() || theta_j.t() != theta_k.t() {
            return report.skip("theta elements built from different data");
        }
        if let Err(reason) = level_precondition(theta_j.f(), p, n) {
            return report.skip(reason);
        }
        if !theta_j.s().contains(&p) {
            return report.skip(format!("S does not contain {p}"));
        }
        let lhs = match minus_part(theta_j, p, n).and_then(|x| twist(k - j, &x)) {
            Ok(x) => x,
            Err(e) => return report.skip(format!("side j = {j}: {e}")),
        };
        let rhs = match minus_part(theta_k, p, n) {
            Ok(x) => x,
            Err(e) => return report.skip(format!("side k = {k}: {e}")),
        };
        report.compare(Witness::from_residues(&lhs, &rhs))
    })();
    CongruenceReport {
        elapsed: start.elapsed(),
        ..report
    }
}

/// The minus-part congruence for `theta_{S,T}` at weights `j, k <= 0`.
pub fn verify_minus_congruence(
    f: u64,
    p: u64,
    n: u32,
    s_finite: &[u64],
    t: &[u64],
    j: i64,
    k: i64,
) -> Result<CongruenceReport> {
    let theta_j = theta(f, s_finite, t, j)?;
    let theta_k = theta(f, s_finite, t, k)?;
    Ok(minus_congruence_from(&theta_j, &theta_k, p, n))
}

/// `tw_{k-j}(delta_T(j)) = delta_T(k)` and, for each `l` in `euler_primes`,
/// `tw_{k-j}(1 - l^{-j} sigma_l^{-1}) = 1 - l^{-k} sigma_l^{-1}`, mod `p^n`.
///
/// One report covers all identities; the witness is the first mismatch, or
/// the `delta_T` sides when everything agrees.
pub fn verify_delta_twist(
    f: u64,
    p: u64,
    n: u32,
    t: &[u64],
    j: i64,
    k: i64,
    euler_primes: &[u64],
) -> CongruenceReport {
    let start = Instant::now();
    let mut report = CongruenceReport::new(CheckKind::Delta, p, n, j);
    report.f = Some(f);
    report.k = Some(k);
    report.t = t.to_vec();
    let report = (|| {
        if let Err(reason) = level_precondition(f, p, n) {
            return report.skip(reason);
        }
        let pairs = std::iter::once(delta_t(f, t, j).and_then(|a| Ok((a, delta_t(f, t, k)?))))
            .chain(euler_primes.iter().map(|&l| {
                Ok((euler_factor_group(f, l, j)?, euler_factor_group(f, l, k)?))
            }));
        let mut first = None;
        for pair in pairs {
            let sides = pair.and_then(|(a, b)| {
                Ok((twist(k - j, &reduce_mod(&a, p, n)?)?, reduce_mod(&b, p, n)?))
            });
            let (lhs, rhs) = match sides {
                Ok(s) => s,
                Err(e) => return report.skip(e.to_string()),
            };
            let w = Witness::from_residues(&lhs, &rhs);
            if w.lhs != w.rhs {
                return report.compare(w);
            }
            first.get_or_insert(w);
        }
        report.compare(first.expect("delta_T side always present"))
    })();
    CongruenceReport {
        elapsed: start.elapsed(),
        ..report
    }
}

/// p-integrality of `e_j^- theta_{S,T}(j)` (of `theta` itself when `f <= 2`).
///
/// With `T` empty integrality is not expected, so a denominator divisible by
/// `p` gives `skipped`; with `T` nonempty it is a theorem and gives `failed`.
pub fn integrality_from(theta: &ThetaElement, p: u64) -> CongruenceReport {
    let start = Instant::now();
    let j = theta.j();
    let mut report = CongruenceReport::new(CheckKind::Integrality, p, 1, j);
    report.f = Some(theta.f());
    report.s = theta.s().to_vec();
    report.t = theta.t().to_vec();
    let part = if theta.f() > 2 {
        report.epsilon = format!("e_{j}^-");
        let e = parity_idempotent(theta.group(), j, false).expect("f > 2");
        &e * theta.value()
    } else {
        theta.value().clone()
    };
    let report = match reduce_mod(&part, p, 1) {
        Ok(x) => {
            let w = Witness::from_residues(&x, &x);
            report.compare(w)
        }
        Err(e) if theta.t().is_empty() => report.skip(e.to_string()),
        Err(e) => {
            let Error::NotIntegral { label, value, .. } = &e else {
                return report.skip(e.to_string());
            };
            let mut r = report.compare(Witness {
                labels: vec![*label],
                lhs: vec![value.clone()],
                rhs: vec!["p-integral".into()],
            });
            r.reason = Some(e.to_string());
            debug_assert_eq!(r.status, Status::Failed);
            r
        }
    };
    CongruenceReport {
        elapsed: start.elapsed(),
        ..report
    }
}

pub fn verify_integrality(f: u64, p: u64, s_finite: &[u64], t: &[u64], j: i64) -> Result<CongruenceReport> {
    Ok(integrality_from(&theta(f, s_finite, t, j)?, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::unit_group;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduce_examples() {
        let g = unit_group(3).unwrap();
        let x = RationalGroupRing::from_coeffs(&g, &(), vec![q(1, 2), q(-1, 2)]);
        assert_eq!(reduce_mod(&x, 3, 1).unwrap().values(), vec![2, 1]);
        let y = RationalGroupRing::from_coeffs(&g, &(), vec![q(1, 3), q(-1, 3)]);
        assert!(matches!(reduce_mod(&y, 3, 1), Err(Error::NotIntegral { label: 1, p: 3, .. })));
        assert!(reduce_mod(&RationalGroupRing::zero(&g, &()), 3, 2).unwrap().is_zero());
    }

    #[test]
    fn kummer_examples() {
        let r = verify_kummer(5, 1, -1, -5);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witness.unwrap().lhs, vec!["2"]);
        assert_eq!(kummer_side(5, -1), q(1, 3));
        assert_eq!(kummer_side(5, -5), q(781, 63));
        assert!(verify_kummer(5, 1, -1, -1).is_verified());
        // 1 - (-3) = 4 is divisible by p - 1 and (1 - 5^3) zeta(-3) = -31/30 is not 5-integral
        assert_eq!(kummer_side(5, -3), q(-31, 30));
        assert_eq!(verify_kummer(5, 1, -3, -7).status, Status::Skipped);
        assert!(verify_kummer(5, 1, -7, -3).reason.is_some());
        assert!(verify_kummer(7, 1, -3, -9).is_verified());
        assert_eq!(verify_kummer(5, 1, -1, -3).status, Status::Skipped);
        assert_eq!(verify_kummer(5, 1, -4, -8).status, Status::Skipped);
        assert_eq!(verify_kummer(3, 1, -1, -3).status, Status::Skipped);
    }

    #[test]
    fn minus_examples() {
        let r = verify_minus_congruence(9, 3, 1, &[3], &[2], 0, -2).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        let r = verify_minus_congruence(5, 5, 1, &[5], &[3], -1, -5).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        let r = verify_minus_congruence(9, 3, 2, &[3], &[2], -3, -3).unwrap();
        assert_eq!(r.status, Status::Verified);
        let r = verify_minus_congruence(9, 3, 3, &[3], &[2], 0, -1).unwrap();
        assert_eq!(r.status, Status::Skipped);
        // T empty: theta(0) on the minus part has denominator 3
        let r = verify_minus_congruence(9, 3, 1, &[3], &[], 0, -2).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.unwrap().contains("not p-integral"));
    }

    #[test]
    fn delta_examples() {
        assert!(verify_delta_twist(9, 3, 2, &[], 0, -6, &[]).is_verified());
        let r = verify_delta_twist(9, 3, 2, &[2], 0, -6, &[2, 7]);
        assert!(r.is_verified(), "{r:?}");
        assert!(verify_delta_twist(5, 5, 1, &[7], -1, -5, &[2, 3]).is_verified());
        assert_eq!(verify_delta_twist(9, 3, 3, &[2], 0, -1, &[]).status, Status::Skipped);
    }

    #[test]
    fn integrality_examples() {
        assert!(verify_integrality(3, 5, &[3, 5], &[2], 0).unwrap().is_verified());
        let r = verify_integrality(3, 3, &[3], &[], 0).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.unwrap().contains("1/6"));
        assert!(verify_integrality(1, 5, &[5], &[], -1).unwrap().is_verified());
        assert_eq!(verify_integrality(1, 3, &[], &[], -1).unwrap().status, Status::Skipped);
    }
}
