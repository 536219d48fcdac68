use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gring::{FiniteAbelianGroup, GroupRingElement, ResidueGroupRing, ResidueRing};
use crate::numtheory::inv_mod;

/// Howell-style normal form of a submodule of `(Z/p^n)^m`.
///
/// Rows are sorted by pivot column; each pivot is a power of `p`, entries
/// above a pivot `p^v` lie in `[0, p^v)`, and the row set is closed under
/// multiplication by annihilators of the pivots, which makes the form
/// canonical and membership decidable by reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellForm {
    ring: ResidueRing,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl HowellForm {
    pub fn new(ring: ResidueRing, width: usize, generators: Vec<Vec<u64>>) -> Self {
        let m = ring.modulus();
        let p = ring.p();
        let mut pool: Vec<Vec<u64>> = generators
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % m).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..width {
            let Some(best) = (0..pool.len())
                .filter(|&i| pool[i][col] != 0)
                .min_by_key(|&i| ring.valuation(pool[i][col]))
            else {
                continue;
            };
            let mut pivot = pool.swap_remove(best);
            let v = ring.valuation(pivot[col]);
            let pv = p.pow(v);
            let unit = inv_mod(pivot[col] / pv, m).expect("unit part");
            for x in pivot.iter_mut() {
                *x = mul(*x, unit, m);
            }
            debug_assert_eq!(pivot[col], pv);
            for row in pool.iter_mut() {
                if row[col] != 0 {
                    let factor = row[col] / pv;
                    sub_multiple(row, &pivot, factor, m);
                }
            }
            if v > 0 {
                let ann: Vec<u64> = pivot.iter().map(|&x| mul(x, m / pv, m)).collect();
                if ann.iter().any(|&x| x != 0) {
                    pool.push(ann);
                }
            }
            for row in rows.iter_mut() {
                let factor = row[col] / pv;
                if factor != 0 {
                    sub_multiple(row, &pivot, factor, m);
                }
            }
            pool.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(pivot);
            pivots.push(col);
        }
        HowellForm {
            ring,
            width,
            rows,
            pivots,
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    /// Remainder of `x` after reduction; zero iff `x` lies in the module.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        let m = self.ring.modulus();
        let mut x: Vec<u64> = x.iter().map(|&c| c % m).collect();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let pv = row[col];
            if x[col] % pv == 0 {
                let factor = x[col] / pv;
                sub_multiple(&mut x, row, factor, m);
            }
        }
        x
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    /// Number of elements of the module, as `p`-exponent.
    pub fn log_size(&self) -> u32 {
        let n = self.ring.precision();
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &col)| n - self.ring.valuation(row[col]))
            .sum()
    }
}

fn mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn sub_multiple(row: &mut [u64], pivot: &[u64], factor: u64, m: u64) {
    for (x, &y) in row.iter_mut().zip(pivot) {
        *x = (*x + m - mul(factor, y, m)) % m;
    }
}

/// A finitely generated ideal of `Z/p^n[G]`, with its canonical basis.
#[derive(Debug, Clone)]
pub struct FGIdeal {
    group: Arc<FiniteAbelianGroup>,
    ring: ResidueRing,
    generators: Vec<ResidueGroupRing>,
    form: HowellForm,
}

impl PartialEq for FGIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.form == other.form
    }
}

impl FGIdeal {
    pub fn new(
        group: &Arc<FiniteAbelianGroup>,
        ring: ResidueRing,
        generators: Vec<ResidueGroupRing>,
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len() * group.order());
        for g in &generators {
            if g.residue_ring() != ring || g.group() != group {
                return Err(Error::RingMismatch("generator outside the ideal's ring".into()));
            }
            for x in 0..group.order() {
                rows.push(g.translate(x).values());
            }
        }
        Ok(FGIdeal {
            group: group.clone(),
            ring,
            generators,
            form: HowellForm::new(ring, group.order(), rows),
        })
    }

    pub fn principal(x: &ResidueGroupRing) -> Self {
        Self::new(x.group(), x.residue_ring(), vec![x.clone()]).expect("same ring")
    }

    pub fn unit(group: &Arc<FiniteAbelianGroup>, ring: ResidueRing) -> Self {
        Self::principal(&GroupRingElement::one(group, &ring))
    }

    pub fn zero(group: &Arc<FiniteAbelianGroup>, ring: ResidueRing) -> Self {
        Self::new(group, ring, Vec::new()).expect("no generators")
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn generators(&self) -> &[ResidueGroupRing] {
        &self.generators
    }

    pub fn canonical_basis(&self) -> &[Vec<u64>] {
        self.form.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.form.rows().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.form.log_size() == self.ring.precision() * self.group.order() as u32
    }

    fn check_ring(&self, x: &ResidueGroupRing) -> Result<()> {
        if x.residue_ring() != self.ring || x.group() != &self.group {
            return Err(Error::RingMismatch(format!(
                "element of {:?} tested against an ideal of {:?}",
                x.tag(),
                crate::gring::RingTag::ResidueModPN {
                    p: self.ring.p(),
                    n: self.ring.precision()
                }
            )));
        }
        Ok(())
    }

    pub fn contains(&self, x: &ResidueGroupRing) -> Result<bool> {
        self.check_ring(x)?;
        Ok(self.form.contains(&x.values()))
    }

    /// Remainder of `x` modulo the ideal's canonical basis.
    pub fn remainder(&self, x: &ResidueGroupRing) -> Result<Vec<u64>> {
        self.check_ring(x)?;
        Ok(self.form.reduce(&x.values()))
    }

    /// The ideal `x I`.
    pub fn scaled(&self, x: &ResidueGroupRing) -> Result<Self> {
        self.check_ring(x)?;
        let gens = self.generators.iter().map(|g| g * x).collect();
        Self::new(&self.group, self.ring, gens)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.group != other.group {
            return Err(Error::RingMismatch("ideals over different rings".into()));
        }
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::new(&self.group, self.ring, gens)
    }
}

pub fn ideal_equal(a: &FGIdeal, b: &FGIdeal) -> Result<bool> {
    if a.ring != b.ring || a.group != b.group {
        return Err(Error::RingMismatch("ideals over different rings".into()));
    }
    Ok(a.form == b.form)
}

pub fn ideal_contains(a: &FGIdeal, x: &ResidueGroupRing) -> Result<bool> {
    a.contains(x)
}
