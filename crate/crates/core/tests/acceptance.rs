//! Acceptance suite: one pass/fail line per criterion, with its runtime bound.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{
    as_map, bernoulli_table, euler_like, leibniz, mul, q, residue, theta_oracle,
};
use eqtheta::cli::stark_rows;
use eqtheta::congruences::{
    sweep, verify_kummer, CheckKind, CheckSelection, FaultInjection, GridSpec, Status,
};
use eqtheta::gring::{
    project_to_modulus, unit_group, GroupRingElement, ResidueGroupRing, ResidueRing, RingElement,
};
use eqtheta::lfunctions::{euler_factor_group, minimal_s, theta};
use eqtheta::modalg::{
    fitting_ideal, ideal_equal, lemma33_check, pair_scalar, wedge_pair, DualExteriorVector,
    ExteriorVector, FGIdeal, PresentedModule,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn statuses(reports: &[eqtheta::congruences::CongruenceReport], kind: CheckKind) -> (usize, usize) {
    let of_kind: Vec<_> = reports.iter().filter(|r| r.check == kind).collect();
    let verified = of_kind.iter().filter(|r| r.status == Status::Verified).count();
    (of_kind.len(), verified)
}

fn kummer_grid() -> Check {
    let spec = GridSpec {
        checks: CheckSelection { kummer: true, ..CheckSelection::NONE },
        kummer_p: vec![5, 7, 11, 13],
        kummer_min: -50,
        ..GridSpec::empty()
    };
    let reports = sweep(&spec, FaultInjection::None);
    let (total, verified) = statuses(&reports, CheckKind::Kummer);

    // admissible pairs and their congruences, recounted from scratch
    let b = bernoulli_table(52);
    let zeta = |j: i64| -> BigRational {
        let k = (1 - j) as usize;
        -b[k].clone() / BigRational::from(BigInt::from(k))
    };
    let euler_removed = |p: u64, j: i64| {
        (BigRational::one() - BigRational::from(BigInt::from(p).pow((-j) as u32))) * zeta(j)
    };
    let mut expected = 0;
    for p in [5u64, 7, 11, 13] {
        for n in 1..=2u32 {
            let m = p.pow(n);
            let period = (p.pow(n - 1) * (p - 1)) as i64;
            for j in (-50i64..0).filter(|j| j % 2 != 0) {
                if (1 - j).rem_euclid(p as i64 - 1) == 0 {
                    continue;
                }
                for k in (-50i64..0).filter(|k| k % 2 != 0 && (j - k).rem_euclid(period) == 0) {
                    expected += 1;
                    let (a, c) = (residue(&euler_removed(p, j), m), residue(&euler_removed(p, k), m));
                    ensure(a.is_some() && a == c, || format!("oracle disagrees at p={p} n={n} ({j},{k})"))?;
                }
            }
        }
    }
    ensure(total == expected, || format!("{total} pairs checked, {expected} admissible"))?;
    ensure(verified == total, || format!("{verified}/{total} verified"))?;

    let spot = residue(&euler_removed(5, -1), 5);
    ensure(spot == Some(2) && residue(&euler_removed(5, -5), 5) == Some(2), || "spot value".into())?;
    ensure(verify_kummer(5, 1, -1, -5).is_verified(), || "p=5 (-1,-5) not verified".into())?;
    Ok(format!("{verified}/{total} pairs verified; p=5 (-1,-5) both sides = 2 mod 5"))
}

fn minus_sweep() -> Check {
    let spec = GridSpec {
        checks: CheckSelection { minus: true, ..CheckSelection::NONE },
        ..GridSpec::default_grid()
    };
    let reports = sweep(&spec, FaultInjection::None);
    let (total, verified) = statuses(&reports, CheckKind::Minus);
    ensure(total >= 300, || format!("only {total} tuples"))?;
    ensure(total == reports.len() && verified == total, || format!("{verified}/{total} verified"))?;
    Ok(format!("{verified}/{total} tuples verified"))
}

fn random_residue(rng: &mut ChaCha8Rng, g: &std::sync::Arc<eqtheta::gring::FiniteAbelianGroup>, r: &ResidueRing) -> ResidueGroupRing {
    GroupRingElement::from_coeffs(
        g,
        r,
        (0..g.order()).map(|_| r.element(rng.gen_range(0..r.modulus() as i64))).collect(),
    )
}

fn t_equality_and_fitting() -> Check {
    let spec = GridSpec {
        checks: CheckSelection { t_equality: true, ..CheckSelection::NONE },
        ..GridSpec::default_grid()
    };
    let reports = sweep(&spec, FaultInjection::None);
    let (total, verified) = statuses(&reports, CheckKind::TEquality);
    ensure(verified >= 50 && verified == total, || format!("{verified}/{total} verified"))?;

    let err = |e: eqtheta::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let mut cases = 0;
    for (f, p, n) in [(5u64, 3u64, 2u32), (7, 5, 1), (8, 3, 1), (4, 7, 2)] {
        let g = unit_group(f).map_err(err)?;
        let r = ResidueRing::new(p, n).map_err(err)?;
        let one = GroupRingElement::one(&g, &r);

        let zero_module = PresentedModule::new(&g, r, 0, Vec::new()).map_err(err)?;
        ensure(fitting_ideal(&zero_module, 0).is_unit(), || "Fitt^0(0) = R".into())?;
        for c in 1..=3 {
            let free = PresentedModule::new(&g, r, c, Vec::new()).map_err(err)?;
            for i in 0..=c + 1 {
                let ideal = fitting_ideal(&free, i);
                let ok = if i < c { ideal.is_zero() } else { ideal.is_unit() };
                ensure(ok, || format!("Fitt^{i}(R^{c})"))?;
            }
        }
        for _ in 0..15 {
            let c = rng.gen_range(1..=3);
            let rows: Vec<Vec<ResidueGroupRing>> =
                (0..c).map(|_| (0..c).map(|_| random_residue(&mut rng, &g, &r)).collect()).collect();
            let det = leibniz(&rows, &one);
            let m = PresentedModule::new(&g, r, c, rows).map_err(err)?;
            ensure(
                ideal_equal(&fitting_ideal(&m, 0), &FGIdeal::principal(&det)).map_err(err)?,
                || format!("Fitt^0 = (det) for f={f} mod {p}^{n}"),
            )?;
            let shifted = m.plus_free();
            ensure(fitting_ideal(&shifted, 0).is_zero(), || "Fitt^0(M + R) = 0".into())?;
            for i in 1..=c + 1 {
                ensure(
                    ideal_equal(&fitting_ideal(&shifted, i), &fitting_ideal(&m, i - 1)).map_err(err)?,
                    || format!("Fitt^{i}(M + R) = Fitt^{}(M)", i - 1),
                )?;
            }
            cases += 1;
        }
    }
    Ok(format!("{verified}/{total} T-equality tuples verified; {cases} Fitting presentations"))
}

fn stark() -> Check {
    let references = [
        (5u64, ((1.0 + 5f64.sqrt()) / 2.0).ln(), 0.481211825060),
        (8, (1.0 + 2f64.sqrt()).ln(), 0.881373587020),
        (12, (2.0 + 3f64.sqrt()).ln(), 1.316957896925),
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for f in [5u64, 8, 12, 13] {
        let rows = stark_rows(f).map_err(|e| e.to_string())?;
        for r in &rows {
            ensure(r.difference <= 1e-9, || format!("f={f} chi #{}: |diff| = {:e}", r.chi, r.difference))?;
            worst = worst.max(r.difference);
            count += 1;
        }
        if let Some(&(_, oracle, stated)) = references.iter().find(|(g, ..)| *g == f) {
            ensure((oracle - stated).abs() <= 1e-9, || format!("reference for f={f}"))?;
            let quadratic: Vec<_> = rows.iter().filter(|r| r.order == 2).collect();
            ensure(quadratic.len() == 1, || format!("f={f}: one even quadratic character"))?;
            let row = quadratic[0];
            ensure(
                (row.derivative[0] - oracle).abs() <= 1e-9 && row.derivative[1].abs() <= 1e-9,
                || format!("f={f}: L'(chi,0) = {:?}, oracle {oracle}", row.derivative),
            )?;
        }
    }
    ensure(count == 1 + 1 + 1 + 5, || format!("{count} characters"))?;
    Ok(format!("{count} characters, max |diff| {worst:.1e}"))
}

fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(-7..=7), rng.gen_range(1..=5))
}

fn exterior() -> Check {
    let err = |e: eqtheta::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let one = BigRational::one();
    let g = unit_group(5).map_err(err)?;
    let ring = ResidueRing::new(3, 2).map_err(err)?;
    let one_g = GroupRingElement::one(&g, &ring);

    for case in 0..200 {
        let r = rng.gen_range(1..=4usize);
        if case % 2 == 0 {
            let vecs: Vec<Vec<BigRational>> = (0..r).map(|_| (0..r).map(|_| rational(&mut rng)).collect()).collect();
            let funcs: Vec<Vec<BigRational>> = (0..r).map(|_| (0..r).map(|_| rational(&mut rng)).collect()).collect();
            let a = ExteriorVector::wedge_of(r, &vecs, &one).map_err(err)?;
            let phi = DualExteriorVector::wedge_of(r, &funcs, &one).map_err(err)?;
            let paired = wedge_pair(&a, &phi, &one).map_err(err)?;
            let gram: Vec<Vec<BigRational>> = funcs
                .iter()
                .map(|f| vecs.iter().map(|v| f.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
                .collect();
            ensure(paired.coords()[0] == leibniz(&gram, &one), || format!("rational case {case}, r={r}"))?;
        } else {
            let vecs: Vec<Vec<ResidueGroupRing>> =
                (0..r).map(|_| (0..r).map(|_| random_residue(&mut rng, &g, &ring)).collect()).collect();
            let funcs: Vec<Vec<ResidueGroupRing>> =
                (0..r).map(|_| (0..r).map(|_| random_residue(&mut rng, &g, &ring)).collect()).collect();
            let a = ExteriorVector::wedge_of(r, &vecs, &one_g).map_err(err)?;
            let phi = DualExteriorVector::wedge_of(r, &funcs, &one_g).map_err(err)?;
            let gram: Vec<Vec<ResidueGroupRing>> = funcs
                .iter()
                .map(|f| {
                    vecs.iter()
                        .map(|v| f.iter().zip(v).fold(one_g.zero_like(), |acc, (x, y)| acc.add_elem(&x.mul_elem(y))))
                        .collect()
                })
                .collect();
            ensure(pair_scalar(&a, &phi, &one_g).map_err(err)? == leibniz(&gram, &one_g), || {
                format!("group-ring case {case}, r={r}")
            })?;
        }
    }

    for case in 0..200 {
        let d = rng.gen_range(2..=4usize);
        let k = rng.gen_range(2..=d);
        let mut vecs: Vec<Vec<BigRational>> = (0..k).map(|_| (0..d).map(|_| rational(&mut rng)).collect()).collect();
        let base = ExteriorVector::wedge_of(d, &vecs, &one).map_err(err)?;
        let (s, t) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if s != t {
            let mut swapped = vecs.clone();
            swapped.swap(s, t);
            let neg = ExteriorVector::wedge_of(d, &swapped, &one).map_err(err)?;
            ensure(neg == base.scale(&-one.clone()), || format!("alternation case {case}"))?;
            let mut repeated = vecs.clone();
            repeated[s] = repeated[t].clone();
            ensure(ExteriorVector::wedge_of(d, &repeated, &one).map_err(err)?.is_zero(), || {
                format!("repeated vector case {case}")
            })?;
        }
        let c = rational(&mut rng);
        let w: Vec<BigRational> = (0..d).map(|_| rational(&mut rng)).collect();
        let mut with_w = vecs.clone();
        with_w[s] = w.clone();
        let other = ExteriorVector::wedge_of(d, &with_w, &one).map_err(err)?;
        vecs[s] = vecs[s].iter().zip(&w).map(|(x, y)| x + &c * y).collect();
        let combined = ExteriorVector::wedge_of(d, &vecs, &one).map_err(err)?;
        ensure(combined == base.add(&other.scale(&c)).map_err(err)?, || format!("multilinearity case {case}"))?;
    }

    let moduli = [3u64, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];
    let mut checked = 0;
    while checked < 200 {
        let f = moduli[rng.gen_range(0..moduli.len())];
        let g = unit_group(f).map_err(err)?;
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let r = ResidueRing::new(p, rng.gen_range(1..=2)).map_err(err)?;
        let d = rng.gen_range(1..=3usize);
        let deg = rng.gen_range(0..=d.min(2));
        let n_coords = eqtheta::modalg::matrix::subsets(d, deg).len();
        let coords = (0..n_coords).map(|_| random_residue(&mut rng, &g, &r)).collect();
        let a = ExteriorVector::from_coords(d, deg, coords).map_err(err)?;
        let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..g.order())).collect();
        ensure(lemma33_check(&a, &g, r, &gens).map_err(err)?, || format!("f={f} p={p} d={d} deg={deg}"))?;
        checked += 1;
    }
    Ok("200 pairings, 200 alternation/multilinearity cases, 200 norm-compatibility instances".into())
}

fn functoriality() -> Check {
    let err = |e: eqtheta::Error| e.to_string();
    let mut identities = 0;
    for (f, f2) in [(3u64, 9u64), (5, 15), (4, 12)] {
        let s = minimal_s(f, &[]);
        let s2 = minimal_s(f2, &[]);
        let target = unit_group(f).map_err(err)?;
        let new_primes: Vec<u64> = s2.iter().copied().filter(|l| !s.contains(l)).collect();
        for j in (-4..=0).rev() {
            let base = theta(f, &s, &[], j).map_err(err)?;
            ensure(as_map(base.value()) == theta_oracle(f, &[], &[], j), || format!("theta({f}, {j})"))?;

            // enlarging S by a prime multiplies by its Euler factor
            for l in new_primes.iter().copied().chain([2u64, 7].into_iter().filter(|l| f % l != 0)) {
                let bigger = theta(f, &minimal_s(f, &[l]), &[], j).map_err(err)?;
                let expected = mul(f, &euler_like(f, l, -j), &as_map(base.value()));
                ensure(as_map(bigger.value()) == expected, || format!("S + {{{l}}} for f={f}, j={j}"))?;
                ensure(
                    as_map(&euler_factor_group(f, l, j).map_err(err)?) == euler_like(f, l, -j),
                    || format!("Euler factor at {l}"),
                )?;
                identities += 1;
            }

            // corestriction from Q(mu_f2) down to Q(mu_f)
            let top = theta(f2, &s2, &[], j).map_err(err)?;
            ensure(as_map(top.value()) == theta_oracle(f2, &[], &[], j), || format!("theta({f2}, {j})"))?;
            let projected = project_to_modulus(top.value(), &target).map_err(err)?;
            let expected = theta_oracle(f, &new_primes, &[], j);
            ensure(as_map(&projected) == expected, || format!("corestriction {f2} -> {f} at j={j}"))?;
            identities += 1;
        }
    }
    Ok(format!("{identities} identities exact"))
}

fn mask_timestamp(report: &str) -> String {
    report
        .lines()
        .map(|l| if l.trim_start().starts_with("\"timestamp\"") { "    \"timestamp\": 0," } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_eqtheta");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("grid.cfg");
    std::fs::write(
        &cfg,
        "f = 9, 5, 25\nj = 0..-4\nk = 0..-4\nT = 2 7 11\nkummer_p = 5 7\nkummer_min = -20\nseed = 7\n",
    )
    .map_err(|e| e.to_string())?;

    let run = |out: &str, extra: &[&str]| -> Result<(i32, String), String> {
        let path = dir.path().join(out);
        let status = Command::new(bin)
            .arg("verify")
            .arg("--config")
            .arg(&cfg)
            .arg("--output")
            .arg(&path)
            .args(extra)
            .env_remove("SOURCE_DATE_EPOCH")
            .output()
            .map_err(|e| e.to_string())?
            .status;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        Ok((status.code().unwrap_or(-1), text))
    };

    let (c1, r1) = run("a.json", &[])?;
    std::thread::sleep(Duration::from_millis(1100));
    let (c2, r2) = run("b.json", &[])?;
    ensure(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    ensure(mask_timestamp(&r1) == mask_timestamp(&r2), || "reports differ".into())?;
    let parsed: serde_json::Value = serde_json::from_str(&r1).map_err(|e| e.to_string())?;
    ensure(parsed["meta"]["seed"] == 7, || "seed not recorded".into())?;
    let n = parsed["results"].as_array().map_or(0, |a| a.len());
    ensure(n > 0 && parsed["summary"]["failed"] == 0, || "clean run".into())?;

    let (code, faulty) = run("fault.json", &["--inject-fault"])?;
    ensure(code == 2, || format!("fault injection exited {code}"))?;
    let parsed: serde_json::Value = serde_json::from_str(&faulty).map_err(|e| e.to_string())?;
    let witnessed = parsed["results"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|r| r["status"] == "failed")
        .all(|r| r["witness"]["labels"].as_array().is_some_and(|l| !l.is_empty()));
    ensure(parsed["summary"]["failed"].as_u64().unwrap_or(0) > 0 && witnessed, || "witness missing".into())?;

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "f = 9\nwidth = 3\n").map_err(|e| e.to_string())?;
    let code = Command::new(bin)
        .args(["verify", "--config"])
        .arg(&bad)
        .output()
        .map_err(|e| e.to_string())?
        .status
        .code();
    ensure(code == Some(1), || format!("malformed config exited {code:?}"))?;
    Ok(format!("{n} results byte-identical across runs; fault exit 2; bad config exit 1"))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [(&str, Option<Duration>, fn() -> Check); 7] = [
        ("kummer congruence grid", secs(10), kummer_grid),
        ("minus-part congruence sweep", secs(60), minus_sweep),
        ("T-equality and Fitting ideals", None, t_equality_and_fitting),
        ("weight-0 regulator identity", secs(5), stark),
        ("exterior algebra", None, exterior),
        ("functoriality", None, functoriality),
        ("determinism and exit codes", None, determinism),
    ];
    let mut all_ok = true;
    for (i, (name, bound, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) => match bound {
                Some(b) if elapsed > *b => (false, format!("{d}; took {elapsed:.2?}, bound {b:?}")),
                _ => (true, d),
            },
            Err(e) => (false, e),
        };
        all_ok &= ok;
        println!(
            "criterion {} {:<30} {}  {:>8.2?}  {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
