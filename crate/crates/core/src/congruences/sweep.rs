use std::collections::BTreeMap;

use log::{debug, warn};
use num_rational::BigRational;
use rayon::prelude::*;

use super::checks::{integrality_from, minus_congruence_from, verify_delta_twist, verify_kummer};
use super::report::{CheckKind, CongruenceReport};
use crate::lfunctions::{minimal_s, theta, ThetaElement};
use crate::modalg::conj35_rank0_check;
use crate::numtheory::{prime_divisors, valuation};

/// How the `T` sets are built from the supplied prime list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TPolicy {
    /// One set: every admissible prime of the list.
    #[default]
    All,
    /// One singleton set per admissible prime.
    Each,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSelection {
    pub minus: bool,
    pub delta: bool,
    pub integrality: bool,
    pub t_equality: bool,
    pub kummer: bool,
}

impl CheckSelection {
    pub const ALL: CheckSelection = CheckSelection {
        minus: true,
        delta: true,
        integrality: true,
        t_equality: true,
        kummer: true,
    };
    pub const NONE: CheckSelection = CheckSelection {
        minus: false,
        delta: false,
        integrality: false,
        t_equality: false,
        kummer: false,
    };
}

/// A sweep over `(f, p, n, j, k, S, T)`. `p` runs over the odd primes dividing
/// `f` (restricted to `ps` when given), and `n` over `ns` (or `1..=v_p(f)`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub f: Vec<u64>,
    pub ps: Option<Vec<u64>>,
    pub ns: Option<Vec<u32>>,
    pub j: Vec<i64>,
    pub k: Vec<i64>,
    pub t_primes: Vec<u64>,
    pub t_policy: TPolicy,
    pub s_extra: Vec<u64>,
    pub checks: CheckSelection,
    /// Primes for the Kummer grid, with `n` in `{1, 2}` and odd `kummer_min <= j, k < 0`.
    pub kummer_p: Vec<u64>,
    pub kummer_min: i64,
}

impl GridSpec {
    pub fn empty() -> Self {
        GridSpec {
            f: Vec::new(),
            ps: None,
            ns: None,
            j: Vec::new(),
            k: Vec::new(),
            t_primes: Vec::new(),
            t_policy: TPolicy::All,
            s_extra: Vec::new(),
            checks: CheckSelection::NONE,
            kummer_p: Vec::new(),
            kummer_min: -50,
        }
    }

    /// `f in {9, 27, 5, 25, 45}`, `j, k in 0..=-6`, `T` from `{2, 7, 11}`, every check.
    pub fn default_grid() -> Self {
        GridSpec {
            f: vec![9, 27, 5, 25, 45],
            ps: None,
            ns: None,
            j: (-6..=0).rev().collect(),
            k: (-6..=0).rev().collect(),
            t_primes: vec![2, 7, 11],
            t_policy: TPolicy::All,
            s_extra: Vec::new(),
            checks: CheckSelection::ALL,
            kummer_p: vec![5, 7, 11, 13],
            kummer_min: -50,
        }
    }
}

/// Deliberate corruption for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaultInjection {
    #[default]
    None,
    /// Add 1 to the identity coefficient of one cached theta element.
    CorruptTheta,
}

type ThetaKey = (u64, Vec<u64>, Vec<u64>, i64);

#[derive(Debug, Clone)]
enum Task {
    Minus { key_j: ThetaKey, key_k: ThetaKey, p: u64, n: u32 },
    Delta { f: u64, p: u64, n: u32, t: Vec<u64>, j: i64, k: i64 },
    Integrality { key: ThetaKey, p: u64 },
    TEquality { f: u64, p: u64, n: u32, t: Vec<u64>, j: i64 },
    Kummer { p: u64, n: u32, j: i64, k: i64 },
}

fn t_sets(f: u64, spec: &GridSpec, s: &[u64]) -> Vec<Vec<u64>> {
    let ramified = prime_divisors(f);
    let mut admissible: Vec<u64> = spec
        .t_primes
        .iter()
        .copied()
        .filter(|l| !ramified.contains(l) && !s.contains(l))
        .collect();
    admissible.sort_unstable();
    admissible.dedup();
    match spec.t_policy {
        TPolicy::All => vec![admissible],
        TPolicy::Each => admissible.into_iter().map(|l| vec![l]).collect(),
    }
}

fn plan(spec: &GridSpec) -> Vec<Task> {
    let mut tasks = Vec::new();
    for &f in &spec.f {
        if f == 0 {
            warn!("skipping f = 0");
            continue;
        }
        let s = minimal_s(f, &spec.s_extra);
        let tsets = t_sets(f, spec, &s);
        let wanted = |p: &u64| spec.ps.as_ref().is_none_or(|ps| ps.contains(p));
        for p in prime_divisors(f).into_iter().filter(|&p| p != 2).filter(wanted) {
            let v = valuation(f, p);
            let ns: Vec<u32> = match &spec.ns {
                Some(ns) => ns.iter().copied().filter(|&n| n >= 1 && n <= v).collect(),
                None => (1..=v).collect(),
            };
            for t in &tsets {
                if spec.checks.integrality {
                    for &j in spec.j.iter().filter(|&&j| j <= 0) {
                        tasks.push(Task::Integrality { key: (f, s.clone(), t.clone(), j), p });
                    }
                }
                for &n in &ns {
                    for &j in spec.j.iter().filter(|&&j| j <= 0) {
                        if spec.checks.t_equality {
                            tasks.push(Task::TEquality { f, p, n, t: t.clone(), j });
                        }
                        for &k in spec.k.iter().filter(|&&k| k <= 0) {
                            if spec.checks.minus {
                                tasks.push(Task::Minus {
                                    key_j: (f, s.clone(), t.clone(), j),
                                    key_k: (f, s.clone(), t.clone(), k),
                                    p,
                                    n,
                                });
                            }
                            if spec.checks.delta {
                                tasks.push(Task::Delta { f, p, n, t: t.clone(), j, k });
                            }
                        }
                    }
                }
            }
        }
    }
    if spec.checks.kummer {
        let odd: Vec<i64> = (spec.kummer_min..0).rev().filter(|j| j % 2 != 0).collect();
        for &p in &spec.kummer_p {
            for n in 1..=2u32 {
                let period = p.pow(n - 1) as i64 * (p as i64 - 1);
                for &j in &odd {
                    if (1 - j).rem_euclid(p as i64 - 1) == 0 {
                        continue;
                    }
                    for &k in odd.iter().filter(|&&k| (j - k).rem_euclid(period) == 0) {
                        tasks.push(Task::Kummer { p, n, j, k });
                    }
                }
            }
        }
    }
    tasks
}

/// Run every check of the grid. Output order is the grid order regardless of
/// how work is scheduled.
pub fn sweep(spec: &GridSpec, fault: FaultInjection) -> Vec<CongruenceReport> {
    let tasks = plan(spec);
    let mut keys: Vec<ThetaKey> = Vec::new();
    for task in &tasks {
        match task {
            Task::Minus { key_j, key_k, .. } => {
                keys.push(key_j.clone());
                keys.push(key_k.clone());
            }
            Task::Integrality { key, .. } => keys.push(key.clone()),
            _ => {}
        }
    }
    keys.sort();
    keys.dedup();
    debug!("{} tasks, {} theta elements", tasks.len(), keys.len());
    let thetas: Vec<_> = keys
        .par_iter()
        .map(|(f, s, t, j)| theta(*f, s, t, *j))
        .collect();
    let mut cache: BTreeMap<ThetaKey, crate::Result<ThetaElement>> = keys.into_iter().zip(thetas).collect();

    if fault == FaultInjection::CorruptTheta {
        let target = tasks.iter().find_map(|task| match task {
            Task::Minus { key_j, key_k, .. } if key_j != key_k => Some(key_j.clone()),
            _ => None,
        });
        match target.and_then(|key| cache.get_mut(&key)) {
            Some(Ok(th)) => corrupt(th),
            _ => warn!("fault injection requested but the grid has no minus check to corrupt"),
        }
    }

    tasks
        .par_iter()
        .map(|task| run(task, &cache))
        .collect()
}

fn corrupt(th: &mut ThetaElement) {
    let mut value = th.value().clone();
    let id = value.group().identity();
    let c = value.coeff(id) + BigRational::from_integer(1.into());
    value.set_coeff(id, c);
    *th = ThetaElement::with_value(th, value);
}

fn run(task: &Task, cache: &BTreeMap<ThetaKey, crate::Result<ThetaElement>>) -> CongruenceReport {
    let lookup = |key: &ThetaKey| cache.get(key).expect("planned key").as_ref();
    match task {
        Task::Minus { key_j, key_k, p, n } => match (lookup(key_j), lookup(key_k)) {
            (Ok(a), Ok(b)) => minus_congruence_from(a, b, *p, *n),
            (Err(e), _) | (_, Err(e)) => {
                let mut r = CongruenceReport::new(CheckKind::Minus, *p, *n, key_j.3);
                r.f = Some(key_j.0);
                r.k = Some(key_k.3);
                r.s = key_j.1.clone();
                r.t = key_j.2.clone();
                r.skip(e.to_string())
            }
        },
        Task::Integrality { key, p } => match lookup(key) {
            Ok(th) => integrality_from(th, *p),
            Err(e) => {
                let mut r = CongruenceReport::new(CheckKind::Integrality, *p, 1, key.3);
                r.f = Some(key.0);
                r.skip(e.to_string())
            }
        },
        Task::Delta { f, p, n, t, j, k } => verify_delta_twist(*f, *p, *n, t, *j, *k, t),
        Task::TEquality { f, p, n, t, j } => conj35_rank0_check(*f, *p, *n, t, *j),
        Task::Kummer { p, n, j, k } => verify_kummer(*p, *n, *j, *k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruences::{Status, Summary};

    #[test]
    fn empty_grid() {
        assert!(sweep(&GridSpec::empty(), FaultInjection::None).is_empty());
    }

    #[test]
    fn plan_sizes() {
        let tasks = plan(&GridSpec::default_grid());
        let minus = tasks.iter().filter(|t| matches!(t, Task::Minus { .. })).count();
        let teq = tasks.iter().filter(|t| matches!(t, Task::TEquality { .. })).count();
        assert_eq!(minus, 11 * 49);
        assert_eq!(teq, 11 * 7);
    }

    #[test]
    fn small_grid_verifies_and_fault_fails() {
        let spec = GridSpec {
            f: vec![9],
            ns: Some(vec![1]),
            j: vec![0, -1, -2],
            k: vec![0, -1, -2],
            t_primes: vec![2],
            checks: CheckSelection { kummer: false, ..CheckSelection::ALL },
            ..GridSpec::empty()
        };
        let reports = sweep(&spec, FaultInjection::None);
        let summary = Summary::of(&reports);
        assert_eq!(summary.failed, 0, "{reports:#?}");
        assert_eq!(summary.skipped, 0);
        let broken = sweep(&spec, FaultInjection::CorruptTheta);
        let failed: Vec<_> = broken.iter().filter(|r| r.status == Status::Failed).collect();
        assert!(!failed.is_empty());
        for r in failed {
            assert!(!r.witness.as_ref().unwrap().differing_labels().is_empty());
        }
    }
}
