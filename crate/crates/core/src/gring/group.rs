use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm, prime_divisors};

/// How the elements of a [`FiniteAbelianGroup`] relate to residues mod `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `(Z/f)^x`, each element the class of its least positive residue.
    Units,
    /// A quotient of `(Z/f)^x`; each element is labeled by the least residue in its coset.
    Quotient,
}

/// A finite abelian group realized as `(Z/f)^x` or one of its quotients.
///
/// Elements are indexed `0..order()` in increasing label order, so index
/// order and label order agree.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    modulus: u64,
    kind: GroupKind,
    labels: Vec<u64>,
    /// residue mod `modulus` -> element index (None for non-units)
    residue_index: Vec<Option<usize>>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    factor_orders: Vec<u64>,
    coords: Vec<Vec<u64>>,
    exponent: u64,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAbelianGroup")
            .field("modulus", &self.modulus)
            .field("kind", &self.kind)
            .field("labels", &self.labels)
            .field("factor_orders", &self.factor_orders)
            .finish()
    }
}

/// The unit group `(Z/f)^x`, i.e. `Gal(Q(mu_f)/Q)` with `sigma_a` labeled by `a`.
pub fn unit_group(f: u64) -> Result<Arc<FiniteAbelianGroup>> {
    if f == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let labels: Vec<u64> = if f == 1 {
        vec![1]
    } else {
        (1..f).filter(|&a| gcd(a, f) == 1).collect()
    };
    let mut residue_index = vec![None; f as usize];
    for (i, &a) in labels.iter().enumerate() {
        residue_index[(a % f) as usize] = Some(i);
    }
    let n = labels.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = (labels[i] * labels[j]) % f;
            table[i * n + j] = residue_index[prod as usize].expect("units are closed");
        }
    }
    Ok(Arc::new(FiniteAbelianGroup::from_table(
        f,
        GroupKind::Units,
        labels,
        residue_index,
        table,
    )))
}

impl FiniteAbelianGroup {
    fn from_table(
        modulus: u64,
        kind: GroupKind,
        labels: Vec<u64>,
        residue_index: Vec<Option<usize>>,
        table: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x))
            .expect("group has an identity");
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x * n + y] == identity)
                    .expect("group has inverses")
            })
            .collect();
        let mut group = FiniteAbelianGroup {
            modulus,
            kind,
            labels,
            residue_index,
            table,
            inverse,
            identity,
            generators: Vec::new(),
            factor_orders: Vec::new(),
            coords: Vec::new(),
            exponent: 1,
        };
        group.decompose();
        group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, index: usize) -> u64 {
        self.labels[index]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Index of the element containing the residue `a` (any integer), if `a` is a unit.
    pub fn element_of(&self, a: i64) -> Option<usize> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.residue_index[r]
    }

    /// Like [`element_of`](Self::element_of) but errors on non-units.
    pub fn try_element_of(&self, a: i64) -> Result<usize> {
        self.element_of(a).ok_or(Error::NotCoprime {
            a,
            m: self.modulus,
        })
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Generators of the cyclic factors (prime-power orders).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factor_orders
    }

    /// Exponent vector of `x` with respect to [`generators`](Self::generators).
    pub fn coordinates(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Complex conjugation `sigma_{-1}`; requires a unit group of modulus > 2.
    pub fn complex_conjugation(&self) -> Result<usize> {
        if self.modulus <= 2 {
            return Err(Error::NoComplexConjugation(self.modulus));
        }
        let c = self.element_of(-1).expect("-1 is a unit");
        if c == self.identity {
            return Err(Error::NoComplexConjugation(self.modulus));
        }
        Ok(c)
    }

    /// The subgroup generated by the given elements, as a sorted index set.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    /// Kernel of the reduction `(Z/f)^x -> (Z/d)^x` for `d | f`.
    pub fn reduction_kernel(&self, d: u64) -> Result<Vec<usize>> {
        if self.kind != GroupKind::Units || d == 0 || self.modulus % d != 0 {
            return Err(Error::InvalidArgument(format!(
                "{d} does not divide the modulus {}",
                self.modulus
            )));
        }
        Ok((0..self.order())
            .filter(|&x| self.labels[x] % d == 1 % d)
            .collect())
    }

    fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity)
            && h.iter()
                .all(|&x| h.iter().all(|&y| set.contains(&self.mul(x, y))))
    }

    /// Quotient `G/H` together with the projection map (element index -> coset index).
    pub fn quotient(self: &Arc<Self>, h: &[usize]) -> Result<(Arc<Self>, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(Error::InvalidArgument("not a subgroup".into()));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in h {
                coset_of[self.mul(x, y)] = id;
            }
        }
        // x is visited in label order, so reps[id] is the least label in its coset
        let labels: Vec<u64> = reps.iter().map(|&x| self.labels[x]).collect();
        let q = labels.len();
        let mut residue_index = vec![None; self.modulus as usize];
        for (r, slot) in self.residue_index.iter().enumerate() {
            if let Some(x) = slot {
                residue_index[r] = Some(coset_of[*x]);
            }
        }
        let mut table = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                table[a * q + b] = coset_of[self.mul(reps[a], reps[b])];
            }
        }
        let group = FiniteAbelianGroup::from_table(
            self.modulus,
            GroupKind::Quotient,
            labels,
            residue_index,
            table,
        );
        Ok((Arc::new(group), coset_of))
    }

    /// Elementary-divisor decomposition by order finding: for each prime q,
    /// repeatedly take an element of maximal order modulo the part already
    /// split off and correct it so that its order equals that quotient order.
    fn decompose(&mut self) {
        let n = self.order();
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for q in prime_divisors(n as u64) {
            let sylow: Vec<usize> = (0..n)
                .filter(|&x| is_power_of(self.element_order(x), q))
                .collect();
            let mut h = vec![self.identity];
            while h.len() < sylow.len() {
                let in_h = membership(&h, n);
                let (x, m) = sylow
                    .iter()
                    .map(|&x| (x, self.order_modulo(x, &in_h)))
                    .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                    .expect("sylow subgroup nonempty");
                let target = self.pow(x, m as i64);
                let h_elem = h
                    .iter()
                    .copied()
                    .find(|&y| self.pow(y, m as i64) == target)
                    .expect("maximal-order element admits a correction");
                let g = self.mul(x, self.inv(h_elem));
                generators.push(g);
                orders.push(m);
                let mut gens = generators.clone();
                gens.retain(|&y| is_power_of(self.element_order(y), q));
                h = self.subgroup_generated(&gens);
            }
        }
        let mut coords = vec![Vec::new(); n];
        let mut count = 0;
        let mut exps = vec![0u64; generators.len()];
        loop {
            let x = exps
                .iter()
                .zip(&generators)
                .fold(self.identity, |acc, (&e, &g)| self.mul(acc, self.pow(g, e as i64)));
            assert!(coords[x].is_empty() || n == 1, "decomposition is not direct");
            coords[x] = exps.clone();
            count += 1;
            if !advance(&mut exps, &orders) {
                break;
            }
        }
        assert_eq!(count, n, "decomposition does not cover the group");
        self.exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));
        self.generators = generators;
        self.factor_orders = orders;
        self.coords = coords;
    }

    fn order_modulo(&self, x: usize, in_h: &[bool]) -> u64 {
        let mut k = 1;
        let mut y = x;
        while !in_h[y] {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

fn membership(h: &[usize], n: usize) -> Vec<bool> {
    let mut v = vec![false; n];
    for &x in h {
        v[x] = true;
    }
    v
}

fn is_power_of(mut m: u64, q: u64) -> bool {
    while m % q == 0 {
        m /= q;
    }
    m == 1
}

/// Odometer increment of a mixed-radix vector; false once it wraps to zero.
pub(crate) fn advance(digits: &mut [u64], radices: &[u64]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}
