use num_traits::Zero;

use super::exterior::{pair_scalar, DualExteriorVector, ExteriorVector};
use super::matrix::{adjugate, determinant, subsets};
use crate::error::{Error, Result};
use crate::gring::{RationalGroupRing, RingElement};
use crate::numtheory::is_p_integral;

/// Whether `a` in `Q wedge^r F` lies in the exterior bidual of the free
/// lattice `M` spanned by the rows of `lattice` (coordinates on the basis of `F`):
/// every `m_J^*(a)` must have p-integral coefficients.
pub fn bidual_membership(
    a: &ExteriorVector<RationalGroupRing>,
    lattice: &[Vec<RationalGroupRing>],
    p: u64,
) -> Result<bool> {
    let d = a.rank();
    if lattice.len() != d || lattice.iter().any(|row| row.len() != d) {
        return Err(Error::UnsupportedLattice(format!(
            "need a square basis matrix of size {d}"
        )));
    }
    let Some(any) = lattice.first().and_then(|r| r.first()) else {
        // rank 0: a is a scalar
        return Ok(true);
    };
    let one = any.one_like();
    let det = determinant(lattice, &one);
    let det_inv = det
        .inverse()
        .ok_or_else(|| Error::UnsupportedLattice("basis matrix is not invertible".into()))?;
    let inverse: Vec<Vec<RationalGroupRing>> = adjugate(lattice, &one)
        .into_iter()
        .map(|row| row.iter().map(|x| x * &det_inv).collect())
        .collect();
    // m_i^*(b_k) is entry (k, i) of the inverse matrix
    let dual: Vec<Vec<RationalGroupRing>> = (0..d)
        .map(|i| (0..d).map(|k| inverse[k][i].clone()).collect())
        .collect();
    for subset in subsets(d, a.degree()) {
        let functionals: Vec<Vec<RationalGroupRing>> = subset.iter().map(|&i| dual[i].clone()).collect();
        let phi = DualExteriorVector::wedge_of(d, &functionals, &one)?;
        let value = pair_scalar(a, &phi, &one)?;
        if !value.coeffs().iter().all(|c| c.is_zero() || is_p_integral(c, p)) {
            return Ok(false);
        }
    }
    Ok(true)
}
