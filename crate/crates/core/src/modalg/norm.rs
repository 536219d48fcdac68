use std::sync::Arc;

use super::exterior::{pair_scalar, DualExteriorVector, ExteriorVector};
use super::howell::{ideal_equal, FGIdeal};
use super::matrix::subsets;
use crate::error::{Error, Result};
use crate::gring::{project, FiniteAbelianGroup, GroupRingElement, ResidueGroupRing, ResidueRing};

/// The quotient `G/H`, the projection, and one representative per coset.
struct Quotient {
    group: Arc<FiniteAbelianGroup>,
    subgroup: Vec<usize>,
    quotient: Arc<FiniteAbelianGroup>,
    reps: Vec<usize>,
}

impl Quotient {
    fn new(group: &Arc<FiniteAbelianGroup>, h: &[usize]) -> Result<Self> {
        let subgroup = group.subgroup_generated(h);
        let (quotient, map) = group.quotient(&subgroup)?;
        let mut reps = vec![usize::MAX; quotient.order()];
        for (x, &c) in map.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        Ok(Quotient {
            group: group.clone(),
            subgroup,
            quotient,
            reps,
        })
    }

    /// `sum_{sigma in H} sigma * x`.
    fn norm(&self, x: &ResidueGroupRing) -> ResidueGroupRing {
        self.subgroup
            .iter()
            .fold(GroupRingElement::zero(&self.group, x.ring()), |acc, &s| &acc + &x.translate(s))
    }

    /// The `y` in `R[G/H]` with `x = N_H * lift(y)`, read off coset representatives.
    fn descend(&self, x: &ResidueGroupRing) -> ResidueGroupRing {
        let coeffs = self.reps.iter().map(|&r| *x.coeff(r)).collect();
        GroupRingElement::from_coeffs(&self.quotient, x.ring(), coeffs)
    }

    fn project(&self, x: &ResidueGroupRing) -> ResidueGroupRing {
        project(x, &self.subgroup).expect("subgroup of the element's group")
    }
}

/// `N_H` applied to a vector of `R[G]^d`.
pub fn norm_vector(v: &[ResidueGroupRing], h: &[usize]) -> Result<Vec<ResidueGroupRing>> {
    let Some(first) = v.first() else {
        return Ok(Vec::new());
    };
    let q = Quotient::new(first.group(), h)?;
    Ok(v.iter().map(|x| q.norm(x)).collect())
}

/// `N_H^r(a)` in `wedge^r_{R[G/H]} M^H`, in coordinates on the basis wedges
/// of `N_H b_1, ..., N_H b_d`, which form a basis of `M^H` over `R[G/H]`.
pub fn norm_map(
    a: &ExteriorVector<ResidueGroupRing>,
    group: &Arc<FiniteAbelianGroup>,
    ring: ResidueRing,
    h: &[usize],
) -> Result<ExteriorVector<ResidueGroupRing>> {
    let q = Quotient::new(group, h)?;
    norm_map_with(a, &q, ring)
}

fn norm_map_with(
    a: &ExteriorVector<ResidueGroupRing>,
    q: &Quotient,
    ring: ResidueRing,
) -> Result<ExteriorVector<ResidueGroupRing>> {
    let d = a.rank();
    let zero = GroupRingElement::zero(&q.group, &ring);
    let one_q = GroupRingElement::one(&q.quotient, &ring);
    // N_H b_i, computed in R[G]^d and then descended to R[G/H]^d
    let images: Vec<Vec<ResidueGroupRing>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let entry = if i == k { GroupRingElement::one(&q.group, &ring) } else { zero.clone() };
                    q.descend(&q.norm(&entry))
                })
                .collect()
        })
        .collect();
    let mut out = ExteriorVector::zero(d, a.degree(), &one_q);
    for (subset, coeff) in subsets(d, a.degree()).iter().zip(a.coords()) {
        if coeff.is_zero() {
            continue;
        }
        let vectors: Vec<Vec<ResidueGroupRing>> = subset.iter().map(|&i| images[i].clone()).collect();
        let wedge = ExteriorVector::wedge_of(d, &vectors, &one_q)?;
        out = out.add(&wedge.scale(&q.project(coeff)))?;
    }
    Ok(out)
}

/// Compare `pi_H({Phi(a)})` with `{Psi(N_H^r a)}` as ideals of `Z/p^n[G/H]`.
///
/// Limited to `|G| <= 8`, `n <= 2`, rank at most 3 and degree at most 2.
pub fn lemma33_check(
    a: &ExteriorVector<ResidueGroupRing>,
    group: &Arc<FiniteAbelianGroup>,
    ring: ResidueRing,
    h: &[usize],
) -> Result<bool> {
    if group.order() > 8 || ring.precision() > 2 || a.rank() > 3 || a.degree() > 2 {
        return Err(Error::SizeGuard(format!(
            "|G| = {}, n = {}, rank {}, degree {}",
            group.order(),
            ring.precision(),
            a.rank(),
            a.degree()
        )));
    }
    let q = Quotient::new(group, h)?;
    let one = GroupRingElement::one(group, &ring);
    let one_q = GroupRingElement::one(&q.quotient, &ring);
    let d = a.rank();
    let mut lhs = Vec::new();
    for subset in subsets(d, a.degree()) {
        let phi = DualExteriorVector::basis(d, &subset, &one);
        lhs.push(q.project(&pair_scalar(a, &phi, &one)?));
    }
    let normed = norm_map_with(a, &q, ring)?;
    let mut rhs = Vec::new();
    for subset in subsets(d, a.degree()) {
        let psi = DualExteriorVector::basis(d, &subset, &one_q);
        rhs.push(pair_scalar(&normed, &psi, &one_q)?);
    }
    ideal_equal(
        &FGIdeal::new(&q.quotient, ring, lhs)?,
        &FGIdeal::new(&q.quotient, ring, rhs)?,
    )
}
