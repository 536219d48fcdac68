use super::matrix::{determinant, submatrix, subsets};
use crate::error::{Error, Result};
use crate::gring::RingElement;

/// An element of `wedge^r` of a free module with ordered basis `b_1..b_d`,
/// stored as coordinates on `b_I`, `I` running over the `r`-subsets in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorVector<E: RingElement> {
    rank: usize,
    degree: usize,
    coords: Vec<E>,
}

/// An element of `wedge^r M*`, with coordinates on the dual basis wedges `b_I^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualExteriorVector<E: RingElement>(pub ExteriorVector<E>);

/// Sign of the permutation sorting `seq` (distinct entries), by inversion count.
pub fn inversion_sign(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn subset_index(rank: usize, subset: &[usize]) -> usize {
    // position in the lexicographic list of subsets(rank, subset.len())
    let k = subset.len();
    let mut index = 0;
    let mut prev = 0;
    for (t, &x) in subset.iter().enumerate() {
        for skipped in prev..x {
            index += binomial(rank - skipped - 1, k - t - 1);
        }
        prev = x + 1;
    }
    index
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl<E: RingElement> ExteriorVector<E> {
    pub fn zero(rank: usize, degree: usize, one: &E) -> Self {
        ExteriorVector {
            rank,
            degree,
            coords: vec![one.zero_like(); binomial(rank, degree)],
        }
    }

    pub fn from_coords(rank: usize, degree: usize, coords: Vec<E>) -> Result<Self> {
        if coords.len() != binomial(rank, degree) {
            return Err(Error::DegreeMismatch(format!(
                "{} coordinates for degree {degree} over rank {rank}",
                coords.len()
            )));
        }
        Ok(ExteriorVector { rank, degree, coords })
    }

    /// `b_{i_1} ^ ... ^ b_{i_r}` for an increasing index list.
    pub fn basis(rank: usize, subset: &[usize], one: &E) -> Self {
        let mut v = Self::zero(rank, subset.len(), one);
        v.coords[subset_index(rank, subset)] = one.one_like();
        v
    }

    /// `a_1 ^ ... ^ a_s` for vectors given by their coordinates on `b_1..b_d`;
    /// the coordinate on `b_I` is the minor of columns `I`.
    pub fn wedge_of(rank: usize, vectors: &[Vec<E>], one: &E) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != rank) {
            return Err(Error::DegreeMismatch("vector of the wrong length".into()));
        }
        let rows: Vec<usize> = (0..vectors.len()).collect();
        let coords = subsets(rank, vectors.len())
            .iter()
            .map(|cols| determinant(&submatrix(vectors, &rows, cols), one))
            .collect();
        Ok(ExteriorVector {
            rank,
            degree: vectors.len(),
            coords,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn coord(&self, subset: &[usize]) -> &E {
        &self.coords[subset_index(self.rank, subset)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RingElement::is_zero_elem)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(ExteriorVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add_elem(b)).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &E) -> Self {
        ExteriorVector {
            coords: self.coords.iter().map(|a| c.mul_elem(a)).collect(),
            ..self.clone()
        }
    }

    pub fn map<F: RingElement>(&self, f: impl Fn(&E) -> F) -> ExteriorVector<F> {
        ExteriorVector {
            rank: self.rank,
            degree: self.degree,
            coords: self.coords.iter().map(f).collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "degree {} over rank {} vs degree {} over rank {}",
                self.degree, self.rank, other.degree, other.rank
            )));
        }
        Ok(())
    }

    /// `self ^ other`.
    pub fn wedge(&self, other: &Self, one: &E) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::DegreeMismatch("different base modules".into()));
        }
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.rank, degree, one);
        if degree > self.rank {
            return Ok(out);
        }
        let left = subsets(self.rank, self.degree);
        let right = subsets(self.rank, other.degree);
        for (i, a) in left.iter().zip(&self.coords) {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in right.iter().zip(&other.coords) {
                if b.is_zero_elem() || j.iter().any(|x| i.contains(x)) {
                    continue;
                }
                let concat: Vec<usize> = i.iter().chain(j).copied().collect();
                let mut union = concat.clone();
                union.sort_unstable();
                let term = a.mul_elem(b);
                let slot = &mut out.coords[subset_index(self.rank, &union)];
                *slot = if inversion_sign(&concat) {
                    slot.add_elem(&term)
                } else {
                    slot.sub_elem(&term)
                };
            }
        }
        Ok(out)
    }
}

impl<E: RingElement> DualExteriorVector<E> {
    /// `phi_1 ^ ... ^ phi_r` for functionals given by their values on `b_1..b_d`.
    pub fn wedge_of(rank: usize, functionals: &[Vec<E>], one: &E) -> Result<Self> {
        ExteriorVector::wedge_of(rank, functionals, one).map(DualExteriorVector)
    }

    pub fn basis(rank: usize, subset: &[usize], one: &E) -> Self {
        DualExteriorVector(ExteriorVector::basis(rank, subset, one))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
}

/// The pairing `wedge^s M x wedge^r M* -> wedge^{s-r} M`.
///
/// On basis elements `b_J^*(b_I) = sgn * b_{I \ J}` when `J` is contained in
/// `I`, where `sgn` is the sign of the shuffle moving the positions of `J`
/// inside `I` to the front; otherwise zero.
pub fn wedge_pair<E: RingElement>(
    a: &ExteriorVector<E>,
    phi: &DualExteriorVector<E>,
    one: &E,
) -> Result<ExteriorVector<E>> {
    let phi = &phi.0;
    if a.rank != phi.rank {
        return Err(Error::DegreeMismatch("different base modules".into()));
    }
    if phi.degree > a.degree {
        return Err(Error::DegreeMismatch(format!(
            "cannot pair degree {} with a dual of degree {}",
            a.degree, phi.degree
        )));
    }
    let rest = a.degree - phi.degree;
    let mut out = ExteriorVector::zero(a.rank, rest, one);
    let js = subsets(a.rank, phi.degree);
    for (i, ai) in subsets(a.rank, a.degree).iter().zip(&a.coords) {
        if ai.is_zero_elem() {
            continue;
        }
        for (j, pj) in js.iter().zip(&phi.coords) {
            if pj.is_zero_elem() {
                continue;
            }
            let Some(positions) = j.iter().map(|x| i.iter().position(|y| y == x)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let shift: usize = positions.iter().enumerate().map(|(t, &pos)| pos - t).sum();
            let remainder: Vec<usize> = i.iter().copied().filter(|x| !j.contains(x)).collect();
            let term = ai.mul_elem(pj);
            let slot = &mut out.coords[subset_index(a.rank, &remainder)];
            *slot = if shift % 2 == 0 {
                slot.add_elem(&term)
            } else {
                slot.sub_elem(&term)
            };
        }
    }
    Ok(out)
}

/// The scalar `Phi(a)` for `deg Phi = deg a`.
pub fn pair_scalar<E: RingElement>(a: &ExteriorVector<E>, phi: &DualExteriorVector<E>, one: &E) -> Result<E> {
    if a.degree != phi.degree() {
        return Err(Error::DegreeMismatch("scalar pairing needs equal degrees".into()));
    }
    Ok(wedge_pair(a, phi, one)?.coords[0].clone())
}
