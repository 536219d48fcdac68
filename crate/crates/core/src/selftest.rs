//! Seeded property suites behind the `selftest` command.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruences::{reduce_mod, sweep, verify_kummer, CheckSelection, FaultInjection, GridSpec, Status, Summary};
use crate::cyclotomic::{polylog_d, CyclotomicField, CyclotomicNumber};
use crate::gring::{
    characters, parity_idempotent_mod, project, project_to_modulus, twist, unit_group, CyclotomicGroupRing,
    FiniteAbelianGroup, GroupRingElement, RationalGroupRing, ResidueGroupRing, ResidueRing,
};
use crate::lfunctions::{
    delta_t, euler_factor_group, l_float, l_value, minimal_s, parity_forced_zero, theta,
};
use crate::modalg::{
    bidual_membership, fitting_ideal, ideal_equal, lemma33_check, pair_scalar, DualExteriorVector,
    ExteriorVector, FGIdeal, PresentedModule,
};
use crate::numtheory::{euler_phi, is_p_integral};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Outcome = std::result::Result<(), String>;
type Suite = fn(&mut ChaCha8Rng, bool) -> Outcome;

const SUITES: &[(&str, Suite)] = &[
    ("group axioms", group_axioms),
    ("character orthogonality", character_orthogonality),
    ("twist multiplicativity", twist_multiplicativity),
    ("twist of parity idempotents", twist_parity),
    ("projection homomorphism", projection_homomorphism),
    ("cyclotomic ring axioms", cyclotomic_axioms),
    ("polylog recurrence", polylog_recurrence),
    ("float and exact L-values", cross_channel),
    ("theta factorization", theta_factorization),
    ("S-enlargement", s_enlargement),
    ("corestriction", corestriction),
    ("minus-part nonvanishing", minus_nonvanishing),
    ("reducer soundness", reducer_soundness),
    ("kummer grid", kummer_grid),
    ("fitting ideals", fitting_suite),
    ("exterior pairing", exterior_pairing),
    ("norm compatibility", norm_compatibility),
    ("bidual lattice", bidual_lattice),
    ("congruence sweep", congruence_sweep),
];

/// Run every suite with RNG streams derived from `seed`. With `corrupt`, the
/// theta-factorization suite is fed a perturbed theta element and must fail.
pub fn run_all(seed: u64, corrupt: bool) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(i, &(name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start = Instant::now();
            let outcome = suite(&mut rng, corrupt);
            SuiteResult {
                name,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=6)))
}

pub(crate) fn random_rational_element(rng: &mut ChaCha8Rng, g: &Arc<FiniteAbelianGroup>) -> RationalGroupRing {
    GroupRingElement::from_coeffs(g, &(), (0..g.order()).map(|_| random_rational(rng)).collect())
}

pub(crate) fn random_residue_element(
    rng: &mut ChaCha8Rng,
    g: &Arc<FiniteAbelianGroup>,
    r: &ResidueRing,
) -> ResidueGroupRing {
    GroupRingElement::from_coeffs(
        g,
        r,
        (0..g.order()).map(|_| r.element(rng.gen_range(0..r.modulus() as i64))).collect(),
    )
}

fn group_axioms(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for f in 1..=60u64 {
        let g = unit_group(f).map_err(err)?;
        ensure(g.order() as u64 == euler_phi(f), || format!("order of (Z/{f})^x"))?;
        for x in 0..g.order() {
            for y in 0..g.order() {
                let expected = (g.label(x) * g.label(y)) % f;
                ensure(g.label(g.mul(x, y)) == expected % f.max(1) || f == 1, || format!("closure mod {f}"))?;
            }
        }
        if f > 2 {
            let c = g.complex_conjugation().map_err(err)?;
            ensure(g.mul(c, c) == g.identity(), || format!("c^2 mod {f}"))?;
        }
    }
    Ok(())
}

fn character_orthogonality(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for f in 1..=24u64 {
        let g = unit_group(f).map_err(err)?;
        let chars = characters(&g).map_err(err)?;
        let field = chars[0].field().clone();
        let one = CyclotomicGroupRing::one(&g, &field);
        let idems: Vec<_> = chars.iter().map(|c| c.idempotent()).collect();
        let total = idems.iter().fold(CyclotomicGroupRing::zero(&g, &field), |acc, e| &acc + e);
        ensure(total == one, || format!("sum of idempotents mod {f}"))?;
        for (a, ea) in idems.iter().enumerate() {
            for (b, eb) in idems.iter().enumerate() {
                let prod = ea * eb;
                let ok = if a == b { &prod == ea } else { prod.is_zero() };
                ensure(ok, || format!("e_chi e_psi mod {f}"))?;
            }
        }
    }
    Ok(())
}

fn twist_grid() -> Vec<(u64, u64, u32)> {
    vec![(9, 3, 1), (9, 3, 2), (5, 5, 1), (25, 5, 2), (45, 3, 2), (7, 7, 1), (27, 3, 3)]
}

fn twist_multiplicativity(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, p, n) in twist_grid() {
        let g = unit_group(f).map_err(err)?;
        let r = ResidueRing::new(p, n).map_err(err)?;
        for _ in 0..100 {
            let a = rng.gen_range(-8..=8);
            let x = random_residue_element(rng, &g, &r);
            let y = random_residue_element(rng, &g, &r);
            let lhs = twist(a, &(&x * &y)).map_err(err)?;
            let rhs = &twist(a, &x).map_err(err)? * &twist(a, &y).map_err(err)?;
            ensure(lhs == rhs, || format!("tw_{a} on f={f} p={p} n={n}"))?;
            let b = rng.gen_range(-8..=8);
            let composed = twist(a, &twist(b, &x).map_err(err)?).map_err(err)?;
            ensure(composed == twist(a + b, &x).map_err(err)?, || "tw_a tw_b".into())?;
        }
    }
    Ok(())
}

fn twist_parity(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, p, n) in twist_grid() {
        let g = unit_group(f).map_err(err)?;
        let r = ResidueRing::new(p, n).map_err(err)?;
        for j in -6..=2 {
            for a in -6..=6 {
                let e = parity_idempotent_mod(&g, &r, j, false).map_err(err)?;
                let twisted = twist(a, &e).map_err(err)?;
                let target = parity_idempotent_mod(&g, &r, j + a, false).map_err(err)?;
                ensure(twisted == target, || format!("tw_{a}(e_{j}^-) mod {f}"))?;
            }
        }
    }
    Ok(())
}

fn projection_homomorphism(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, d) in [(15u64, 5u64), (12, 4), (12, 3), (45, 9), (20, 5), (21, 7)] {
        let g = unit_group(f).map_err(err)?;
        let h = g.reduction_kernel(d).map_err(err)?;
        for _ in 0..20 {
            let x = random_rational_element(rng, &g);
            let y = random_rational_element(rng, &g);
            let px = project(&x, &h).map_err(err)?;
            let py = project(&y, &h).map_err(err)?;
            ensure(project(&(&x * &y), &h).map_err(err)? == &px * &py, || format!("pi_H(xy) for {f}->{d}"))?;
            ensure(px.augmentation() == x.augmentation(), || "augmentation".into())?;
        }
    }
    Ok(())
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, field: &Arc<CyclotomicField>) -> CyclotomicNumber {
    let poly: Vec<BigRational> = (0..field.level()).map(|_| random_rational(rng)).collect();
    CyclotomicNumber::from_poly(field, &poly)
}

fn cyclotomic_axioms(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    for m in 1..=30u64 {
        let field = CyclotomicField::new(m).map_err(err)?;
        let zeta = CyclotomicNumber::zeta_power(&field, 1);
        let mut power = CyclotomicNumber::one(&field);
        for _ in 0..m {
            power = &power * &zeta;
        }
        ensure(power == CyclotomicNumber::one(&field), || format!("zeta_{m}^{m}"))?;
        for _ in 0..5 {
            let (a, b, c) = (random_cyclotomic(rng, &field), random_cyclotomic(rng, &field), random_cyclotomic(rng, &field));
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity in Q(zeta_{m})"))?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity in Q(zeta_{m})"))?;
            let lhs = (&a * &b).embed_complex(1).map_err(err)?;
            let rhs = a.embed_complex(1).map_err(err)? * b.embed_complex(1).map_err(err)?;
            ensure((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), || format!("embedding in Q(zeta_{m})"))?;
        }
    }
    Ok(())
}

fn polylog_recurrence(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for j in 1..10i64 {
        let d = polylog_d(j).map_err(err)?;
        let next = polylog_d(j + 1).map_err(err)?;
        let expected = d.t_derivative().scale(&BigRational::new(BigInt::from(-1), BigInt::from(j)));
        ensure(next.equals(&expected), || format!("d_{} from d_{j}", j + 1))?;
    }
    Ok(())
}

fn cross_channel(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for f in 1..=20u64 {
        for chi in characters(&unit_group(f).map_err(err)?).map_err(err)? {
            if !chi.is_primitive().map_err(err)? {
                continue;
            }
            for j in 0..=3i64 {
                let exact = l_value(&chi, -j).map_err(err)?.embed_complex(1).map_err(err)?;
                let float = l_float(&chi, -j as f64).map_err(err)?;
                ensure((exact - float).norm() <= 1e-8, || format!("L(chi, {}) mod {f}", -j))?;
            }
        }
    }
    Ok(())
}

fn theta_tuples() -> Vec<(u64, Vec<u64>)> {
    vec![(3, vec![2]), (5, vec![2, 3]), (8, vec![3]), (9, vec![2, 7]), (12, vec![5]), (15, vec![2])]
}

fn theta_factorization(_: &mut ChaCha8Rng, corrupt: bool) -> Outcome {
    for (f, t) in theta_tuples() {
        let s = minimal_s(f, &[]);
        for j in -4..=0 {
            let full = theta(f, &s, &t, j).map_err(err)?;
            let mut bare = theta(f, &s, &[], j).map_err(err)?.into_value();
            if corrupt {
                let id = bare.group().identity();
                let c = bare.coeff(id) + BigRational::one();
                bare.set_coeff(id, c);
            }
            let product = &delta_t(f, &t, j).map_err(err)? * &bare;
            ensure(full.value() == &product, || format!("theta_T = delta_T theta for f={f} j={j}"))?;
        }
    }
    Ok(())
}

fn s_enlargement(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, extra) in theta_tuples() {
        let s = minimal_s(f, &[]);
        for &l in &extra {
            let bigger = minimal_s(f, &[l]);
            for j in -4..=0 {
                let lhs = theta(f, &bigger, &[], j).map_err(err)?;
                let rhs = &euler_factor_group(f, l, j).map_err(err)? * theta(f, &s, &[], j).map_err(err)?.value();
                ensure(lhs.value() == &rhs, || format!("S + {{{l}}} for f={f} j={j}"))?;
            }
        }
    }
    Ok(())
}

fn corestriction(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, f2) in [(3u64, 9u64), (5, 15), (4, 12)] {
        let s = minimal_s(f, &[]);
        let s2 = minimal_s(f2, &[]);
        let target = unit_group(f).map_err(err)?;
        for j in -4..=0 {
            let big = theta(f2, &s2, &[], j).map_err(err)?;
            let projected = project_to_modulus(big.value(), &target).map_err(err)?;
            let mut rhs = theta(f, &s, &[], j).map_err(err)?.into_value();
            for &l in s2.iter().filter(|l| !s.contains(l)) {
                rhs = &euler_factor_group(f, l, j).map_err(err)? * &rhs;
            }
            ensure(projected == rhs, || format!("corestriction {f2} -> {f} at j={j}"))?;
        }
    }
    Ok(())
}

fn minus_nonvanishing(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    for f in 3..=20u64 {
        for chi in characters(&unit_group(f).map_err(err)?).map_err(err)? {
            let core = chi.primitive_core().map_err(err)?;
            for j in -6..0i64 {
                let minus = chi.is_even() != (j % 2 == 0);
                if minus {
                    ensure(!parity_forced_zero(&core, j), || "parity".into())?;
                    ensure(!l_value(&core, j).map_err(err)?.is_zero(), || format!("L(chi, {j}) = 0 mod {f}"))?;
                }
            }
        }
    }
    Ok(())
}

fn reducer_soundness(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    for (f, p, n) in twist_grid() {
        let g = unit_group(f).map_err(err)?;
        for _ in 0..30 {
            let x = random_rational_element(rng, &g);
            let y = random_rational_element(rng, &g);
            if let (Ok(rx), Ok(ry), Ok(rxy)) = (reduce_mod(&x, p, n), reduce_mod(&y, p, n), reduce_mod(&(&x * &y), p, n)) {
                ensure(rxy == &rx * &ry, || format!("reduce(xy) mod {p}^{n}"))?;
            }
        }
    }
    Ok(())
}

fn kummer_grid(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    let spec = GridSpec {
        checks: CheckSelection { kummer: true, ..CheckSelection::NONE },
        kummer_p: vec![5, 7, 11, 13],
        ..GridSpec::empty()
    };
    let reports = sweep(&spec, FaultInjection::None);
    let summary = Summary::of(&reports);
    ensure(summary.failed == 0 && summary.skipped == 0 && summary.verified > 0, || format!("{summary:?}"))?;
    ensure(verify_kummer(5, 1, -1, -5).is_verified(), || "p=5 (-1,-5)".into())
}

fn random_presentation(
    rng: &mut ChaCha8Rng,
    g: &Arc<FiniteAbelianGroup>,
    r: &ResidueRing,
    rows: usize,
    cols: usize,
) -> PresentedModule {
    let relations = (0..rows)
        .map(|_| (0..cols).map(|_| random_residue_element(rng, g, r)).collect())
        .collect();
    PresentedModule::new(g, *r, cols, relations).expect("shapes agree")
}

fn fitting_suite(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    let g = unit_group(5).map_err(err)?;
    let r = ResidueRing::new(3, 2).map_err(err)?;
    let one = GroupRingElement::one(&g, &r);
    for _ in 0..20 {
        let rows = rng.gen_range(0..=3);
        let cols = rng.gen_range(1..=3);
        let m = random_presentation(rng, &g, &r, rows, cols);
        let shifted = m.plus_free();
        ensure(fitting_ideal(&shifted, 0).is_zero(), || "Fitt^0(M + R) = 0".into())?;
        for i in 1..=cols + 1 {
            let a = fitting_ideal(&shifted, i);
            let b = fitting_ideal(&m, i - 1);
            ensure(ideal_equal(&a, &b).map_err(err)?, || format!("Fitt^{i}(M + R) = Fitt^{}(M)", i - 1))?;
        }
        let c = rng.gen_range(1..=3);
        let square = random_presentation(rng, &g, &r, c, c);
        let det = crate::modalg::matrix::determinant(square.relations(), &one);
        ensure(
            ideal_equal(&fitting_ideal(&square, 0), &FGIdeal::principal(&det)).map_err(err)?,
            || "Fitt^0 of a square presentation".into(),
        )?;
    }
    Ok(())
}

fn exterior_pairing(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    let one = BigRational::one();
    for _ in 0..200 {
        let r = rng.gen_range(1..=4usize);
        let vecs: Vec<Vec<BigRational>> = (0..r).map(|_| (0..r).map(|_| random_rational(rng)).collect()).collect();
        let funcs: Vec<Vec<BigRational>> = (0..r).map(|_| (0..r).map(|_| random_rational(rng)).collect()).collect();
        let a = ExteriorVector::wedge_of(r, &vecs, &one).map_err(err)?;
        let phi = DualExteriorVector::wedge_of(r, &funcs, &one).map_err(err)?;
        let pairing = pair_scalar(&a, &phi, &one).map_err(err)?;
        let gram: Vec<Vec<BigRational>> = funcs
            .iter()
            .map(|f| vecs.iter().map(|v| f.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
            .collect();
        let det = crate::modalg::matrix::determinant(&gram, &one);
        ensure(pairing == det, || format!("Phi(a) = det(phi_i(a_j)) at r = {r}"))?;
    }
    Ok(())
}

fn norm_compatibility(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    let moduli = [3u64, 4, 5, 7, 8, 9, 12, 15, 16, 20];
    let primes = [2u64, 3, 5];
    for _ in 0..200 {
        let f = moduli[rng.gen_range(0..moduli.len())];
        let g = unit_group(f).map_err(err)?;
        let r = ResidueRing::new(primes[rng.gen_range(0..primes.len())], rng.gen_range(1..=2)).map_err(err)?;
        let d = rng.gen_range(1..=3usize);
        let deg = rng.gen_range(0..=d.min(2));
        let coords = (0..crate::modalg::matrix::subsets(d, deg).len())
            .map(|_| random_residue_element(rng, &g, &r))
            .collect();
        let a = ExteriorVector::from_coords(d, deg, coords).map_err(err)?;
        let h = vec![rng.gen_range(0..g.order())];
        ensure(lemma33_check(&a, &g, r, &h).map_err(err)?, || format!("f={f} d={d} r={deg}"))?;
    }
    Ok(())
}

fn bidual_lattice(rng: &mut ChaCha8Rng, _: bool) -> Outcome {
    let g = unit_group(3).map_err(err)?;
    let one = RationalGroupRing::one(&g, &());
    let zero = RationalGroupRing::zero(&g, &());
    for _ in 0..50 {
        let d = rng.gen_range(1..=3usize);
        let deg = rng.gen_range(1..=d);
        let lattice: Vec<Vec<RationalGroupRing>> = (0..d)
            .map(|i| (0..d).map(|k| if i == k { one.clone() } else { zero.clone() }).collect())
            .collect();
        let coords: Vec<RationalGroupRing> = (0..crate::modalg::matrix::subsets(d, deg).len())
            .map(|_| random_rational_element(rng, &g))
            .collect();
        let integral = coords.iter().all(|c| c.coeffs().iter().all(|x| x.is_zero() || is_p_integral(x, 3)));
        let a = ExteriorVector::from_coords(d, deg, coords).map_err(err)?;
        ensure(bidual_membership(&a, &lattice, 3).map_err(err)? == integral, || "membership vs coordinates".into())?;
    }
    Ok(())
}

fn congruence_sweep(_: &mut ChaCha8Rng, _: bool) -> Outcome {
    let spec = GridSpec {
        checks: CheckSelection { kummer: false, ..CheckSelection::ALL },
        ..GridSpec::default_grid()
    };
    let reports = sweep(&spec, FaultInjection::None);
    let bad: Vec<_> = reports.iter().filter(|r| r.status != Status::Verified).collect();
    ensure(bad.is_empty(), || format!("{} of {} checks not verified", bad.len(), reports.len()))
}
