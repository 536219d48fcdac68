use std::sync::Arc;

use super::howell::FGIdeal;
use super::matrix::minors;
use crate::error::{Error, Result};
use crate::gring::{FiniteAbelianGroup, GroupRingElement, ResidueGroupRing, ResidueRing};

/// `coker(A: R^rows -> R^generators)` over `R = Z/p^n[G]`; row `i` of `A` is
/// the `i`-th relation among the generators.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    group: Arc<FiniteAbelianGroup>,
    ring: ResidueRing,
    generators: usize,
    relations: Vec<Vec<ResidueGroupRing>>,
}

impl PresentedModule {
    pub fn new(
        group: &Arc<FiniteAbelianGroup>,
        ring: ResidueRing,
        generators: usize,
        relations: Vec<Vec<ResidueGroupRing>>,
    ) -> Result<Self> {
        for row in &relations {
            if row.len() != generators {
                return Err(Error::DegreeMismatch(format!(
                    "relation of length {} on {generators} generators",
                    row.len()
                )));
            }
            if row.iter().any(|x| x.residue_ring() != ring || x.group() != group) {
                return Err(Error::RingMismatch("relation entry outside Z/p^n[G]".into()));
            }
        }
        Ok(PresentedModule {
            group: group.clone(),
            ring,
            generators,
            relations,
        })
    }

    /// Block-diagonal presentation with one generator per diagonal entry.
    pub fn diagonal(entries: &[ResidueGroupRing], group: &Arc<FiniteAbelianGroup>, ring: ResidueRing) -> Result<Self> {
        let zero = GroupRingElement::zero(group, &ring);
        let rows = (0..entries.len())
            .map(|i| {
                (0..entries.len())
                    .map(|c| if c == i { entries[i].clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        Self::new(group, ring, entries.len(), rows)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<ResidueGroupRing>] {
        &self.relations
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    /// `M + R`: one more generator with no relations.
    pub fn plus_free(&self) -> Self {
        let zero = GroupRingElement::zero(&self.group, &self.ring);
        let relations = self
            .relations
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.push(zero.clone());
                row
            })
            .collect();
        PresentedModule {
            group: self.group.clone(),
            ring: self.ring,
            generators: self.generators + 1,
            relations,
        }
    }
}

/// `Fitt^i(M)`: the ideal of `(c - i)`-minors of the relation matrix. Sizes
/// `<= 0` give the unit ideal and sizes beyond the number of relations give zero.
pub fn fitting_ideal(module: &PresentedModule, i: usize) -> FGIdeal {
    let (group, ring) = (&module.group, module.ring);
    if i >= module.generators {
        return FGIdeal::unit(group, ring);
    }
    let size = module.generators - i;
    if size > module.relations.len() {
        return FGIdeal::zero(group, ring);
    }
    let one = GroupRingElement::one(group, &ring);
    let gens = minors(&module.relations, module.generators, size, &one)
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    FGIdeal::new(group, ring, gens).expect("minors lie in R")
}
