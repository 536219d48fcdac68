use std::time::Instant;

use crate::congruences::{reduce_mod, CheckKind, CongruenceReport, Witness};
use crate::error::Result;
use crate::gring::{parity_idempotent_mod, unit_group, ResidueGroupRing, ResidueRing};
use crate::lfunctions::{check_places, delta_t, euler_factor_group};
use crate::numtheory::{is_prime, valuation};

use super::fitting::{fitting_ideal, PresentedModule};
use super::howell::{ideal_equal, FGIdeal};

/// Rank-0 T-equality: with `e = (1 - (-1)^j c) / 2` in `Z/p^n[G]`,
/// `e * Fitt^0(coker diag(1 - l^{1-j} sigma_l^{-1} : l in T)) = (e * delta_T(j))`.
pub fn conj35_rank0_check(f: u64, p: u64, n: u32, t: &[u64], j: i64) -> CongruenceReport {
    let start = Instant::now();
    let mut report = CongruenceReport::new(CheckKind::TEquality, p, n, j);
    report.f = Some(f);
    report.t = t.to_vec();
    report.epsilon = format!("e_{j}^-");
    let report = if p == 2 || !is_prime(p) {
        report.skip(format!("p = {p} is not an odd prime"))
    } else if valuation(f, p) < n {
        report.skip(format!("{p}^{n} does not divide {f}"))
    } else if j > 0 {
        report.skip(format!("j = {j} is positive"))
    } else {
        match sides(f, p, n, t, j) {
            Err(e) => report.skip(e.to_string()),
            Ok((lhs, rhs, generator)) => {
                let equal = ideal_equal(&lhs, &rhs).expect("same ring");
                let witness = if equal {
                    Witness::from_residues(&generator, &generator)
                } else {
                    // a generator of one side that the other side misses
                    let missing = lhs
                        .generators()
                        .iter()
                        .find(|x| !rhs.contains(x).expect("same ring"))
                        .cloned()
                        .unwrap_or_else(|| generator.clone());
                    let remainder = if rhs.contains(&missing).expect("same ring") {
                        lhs.remainder(&generator).expect("same ring")
                    } else {
                        rhs.remainder(&missing).expect("same ring")
                    };
                    Witness {
                        labels: missing.group().labels().to_vec(),
                        lhs: missing.values().iter().map(u64::to_string).collect(),
                        rhs: remainder.iter().map(u64::to_string).collect(),
                    }
                };
                report.compare(witness)
            }
        }
    };
    CongruenceReport {
        elapsed: start.elapsed(),
        ..report
    }
}

fn sides(f: u64, p: u64, n: u32, t: &[u64], j: i64) -> Result<(FGIdeal, FGIdeal, ResidueGroupRing)> {
    let (_, t) = check_places(f, &crate::lfunctions::minimal_s(f, &[]), t)?;
    let group = unit_group(f)?;
    let ring = ResidueRing::new(p, n)?;
    let avatar = parity_idempotent_mod(&group, &ring, j, false)?;
    let blocks = t
        .iter()
        .map(|&l| {
            // 1 - l^{1-j} sigma_l^{-1} is the Euler factor at weight j - 1
            reduce_mod(&euler_factor_group(f, l, j - 1)?, p, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let module = PresentedModule::diagonal(&blocks, &group, ring)?;
    let lhs = fitting_ideal(&module, 0).scaled(&avatar)?;
    let generator = &reduce_mod(&delta_t(f, &t, j)?, p, n)? * &avatar;
    Ok((lhs, FGIdeal::principal(&generator), generator))
}
