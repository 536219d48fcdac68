use std::sync::Arc;

use num_rational::BigRational;

use super::group::FiniteAbelianGroup;
use super::ring::{Coefficient, GroupRingElement, RationalGroupRing, ResidueGroupRing, ResidueRing};
use crate::error::{Error, Result};
use crate::numtheory::pow_mod_signed;

/// `e_j^{+/-} = (1 +/- (-1)^j c) / 2` in `Q[G]` for `G = (Z/f)^x`, `f > 2`.
pub fn parity_idempotent(
    group: &Arc<FiniteAbelianGroup>,
    j: i64,
    plus: bool,
) -> Result<RationalGroupRing> {
    let c = group.complex_conjugation()?;
    let half = BigRational::new(1.into(), 2.into());
    let sign = if (j.rem_euclid(2) == 0) == plus { 1 } else { -1 };
    let mut e = RationalGroupRing::zero(group, &());
    e.set_coeff(group.identity(), half.clone());
    e.set_coeff(c, half * BigRational::from_integer(sign.into()));
    Ok(e)
}

/// Integral avatar of `e_j^{+/-}` in `Z/p^n[G]`: `(1 +/- (-1)^j c) * 2^{-1}`, `p` odd.
pub fn parity_idempotent_mod(
    group: &Arc<FiniteAbelianGroup>,
    ring: &ResidueRing,
    j: i64,
    plus: bool,
) -> Result<ResidueGroupRing> {
    if ring.p() == 2 {
        return Err(Error::InvalidArgument("2 is not invertible mod 2^n".into()));
    }
    let c = group.complex_conjugation()?;
    let half = ring.element(2).inverse().expect("p odd");
    let sign = if (j.rem_euclid(2) == 0) == plus { 1 } else { -1 };
    let mut e = ResidueGroupRing::zero(group, ring);
    e.set_coeff(group.identity(), half);
    e.set_coeff(c, Coefficient::mul(&half, &ring.element(sign)));
    Ok(e)
}

/// `chi_cyc(sigma_b) = b mod p^n`; requires `p^n | f` so that `mu_{p^n}` is in `Q(mu_f)`.
pub fn cyclotomic_character(group: &FiniteAbelianGroup, ring: &ResidueRing, x: usize) -> Result<u64> {
    let f = group.modulus();
    if f % ring.modulus() != 0 {
        return Err(Error::CyclotomicCharacterUndefined {
            f,
            p: ring.p(),
            n: ring.precision(),
        });
    }
    Ok(group.label(x) % ring.modulus())
}

/// The twist `tw_a`: the ring automorphism of `Z/p^n[G]` with `sigma -> chi_cyc(sigma)^a sigma`.
pub fn twist(a: i64, x: &ResidueGroupRing) -> Result<ResidueGroupRing> {
    let group = x.group();
    let ring = x.residue_ring();
    let m = ring.modulus();
    let mut out = x.clone();
    for i in 0..group.order() {
        let chi = cyclotomic_character(group, &ring, i)?;
        let factor = pow_mod_signed(chi, a, m).expect("cyclotomic character takes unit values");
        out.set_coeff(i, Coefficient::mul(x.coeff(i), &ring.element(factor as i64)));
    }
    Ok(out)
}

/// Push `x` forward along `G -> G/H`, summing coefficients over cosets.
pub fn project<C: Coefficient>(
    x: &GroupRingElement<C>,
    subgroup: &[usize],
) -> Result<GroupRingElement<C>> {
    let (quotient, map) = x.group().quotient(subgroup)?;
    Ok(push_forward(x, &quotient, &map))
}

/// Push forward along an explicit surjection given by `map` (element index -> target index).
pub fn push_forward<C: Coefficient>(
    x: &GroupRingElement<C>,
    target: &Arc<FiniteAbelianGroup>,
    map: &[usize],
) -> GroupRingElement<C> {
    let mut out = GroupRingElement::<C>::zero(target, x.ring());
    for (i, c) in x.coeffs().iter().enumerate() {
        let t = map[i];
        let sum = out.coeff(t).add(c);
        out.set_coeff(t, sum);
    }
    out
}

/// The natural surjection `A[(Z/f')^x] -> A[(Z/f)^x]` for `f | f'`.
pub fn project_to_modulus<C: Coefficient>(
    x: &GroupRingElement<C>,
    target: &Arc<FiniteAbelianGroup>,
) -> Result<GroupRingElement<C>> {
    let source = x.group();
    let f = target.modulus();
    if source.modulus() % f != 0 {
        return Err(Error::InvalidArgument(format!(
            "{f} does not divide {}",
            source.modulus()
        )));
    }
    let map: Vec<usize> = (0..source.order())
        .map(|i| target.element_of(source.label(i) as i64).expect("reduction of a unit"))
        .collect();
    Ok(push_forward(x, target, &map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{characters, unit_group, CyclotomicGroupRing};
    use crate::cyclotomic::CyclotomicNumber;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parity_idempotents_mod_3() {
        let g = unit_group(3).unwrap();
        let e0 = parity_idempotent(&g, 0, true).unwrap();
        assert_eq!(e0.coeff_of_label(2), Some(&q(1, 2)));
        let e1 = parity_idempotent(&g, 1, true).unwrap();
        assert_eq!(e1.coeff_of_label(2), Some(&q(-1, 2)));
        assert!(parity_idempotent(&unit_group(2).unwrap(), 0, true).is_err());
    }

    #[test]
    fn parity_idempotent_relations() {
        for f in [3, 5, 7] {
            let g = unit_group(f).unwrap();
            for j in -3..3 {
                let plus = parity_idempotent(&g, j, true).unwrap();
                let minus = parity_idempotent(&g, j, false).unwrap();
                assert_eq!(&plus + &minus, RationalGroupRing::one(&g, &()));
                assert_eq!(&plus * &plus, plus);
                assert_eq!(minus, parity_idempotent(&g, j + 1, true).unwrap());
                assert_eq!(plus, parity_idempotent(&g, j + 2, true).unwrap());
            }
        }
    }

    #[test]
    fn twist_examples() {
        let g = unit_group(9).unwrap();
        let r = ResidueRing::new(3, 2).unwrap();
        let s2 = ResidueGroupRing::basis(&g, &r, g.element_of(2).unwrap());
        let t = twist(1, &s2).unwrap();
        assert_eq!(t.coeff_of_label(2).unwrap().value(), 2);
        assert_eq!(twist(0, &s2).unwrap(), s2);

        let g5 = unit_group(5).unwrap();
        let r5 = ResidueRing::new(5, 1).unwrap();
        for x in 0..4 {
            let b = ResidueGroupRing::basis(&g5, &r5, x);
            assert_eq!(twist(4, &b).unwrap(), b);
        }
        let g7 = unit_group(7).unwrap();
        let r3 = ResidueRing::new(3, 1).unwrap();
        assert!(matches!(
            twist(1, &ResidueGroupRing::one(&g7, &r3)),
            Err(Error::CyclotomicCharacterUndefined { .. })
        ));
    }

    #[test]
    fn idempotents_for_characters() {
        let g3 = unit_group(3).unwrap();
        let chars = characters(&g3).unwrap();
        let e = chars[1].idempotent().to_rational().unwrap();
        assert_eq!(e.coeff_of_label(1), Some(&q(1, 2)));
        assert_eq!(e.coeff_of_label(2), Some(&q(-1, 2)));
        let triv = chars[0].idempotent().to_rational().unwrap();
        assert_eq!(triv.coeff_of_label(2), Some(&q(1, 2)));

        let g5 = unit_group(5).unwrap();
        let chars = characters(&g5).unwrap();
        for a in &chars {
            for b in &chars {
                let prod: CyclotomicGroupRing = &a.idempotent() * &b.idempotent();
                if a == b {
                    assert_eq!(prod, a.idempotent());
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
    }

    #[test]
    fn projection_matches_characters_trivial_on_subgroup() {
        let g = unit_group(15).unwrap();
        let g5 = unit_group(5).unwrap();
        let h = g.reduction_kernel(5).unwrap();
        let x = RationalGroupRing::from_coeffs(&g, &(), (0..8).map(|i| q(i * i - 3, i + 1)).collect());
        // brute-force coset summation
        let projected = project_to_modulus(&x, &g5).unwrap();
        for b in [1i64, 2, 3, 4] {
            let direct: BigRational = (0..g.order())
                .filter(|&i| g.label(i) as i64 % 5 == b)
                .map(|i| x.coeff(i).clone())
                .sum();
            assert_eq!(projected.coeff_of_label(b), Some(&direct));
        }
        // and against characters of G trivial on H
        let chars = characters(&g).unwrap();
        let field = chars[0].field().clone();
        let xc = CyclotomicGroupRing::from_rational(&x, &field);
        let via_quotient = project(&x, &h).unwrap();
        assert_eq!(via_quotient.group().order(), 4);
        for chi in chars.iter().filter(|c| h.iter().all(|&s| c.log_at(s) == 0)) {
            let lhs = chi.evaluate(&xc);
            let mut rhs = CyclotomicNumber::zero(&field);
            for (coset, c) in via_quotient.coeffs().iter().enumerate() {
                let label = via_quotient.group().label(coset) as i64;
                rhs = &rhs + &chi.value(label).scale(c);
            }
            assert_eq!(lhs, rhs);
        }
    }
}
