use num_rational::BigRational;
use num_traits::Zero;

use crate::gring::RingElement;

/// Solve a square system given as an `n x (n+1)` augmented matrix.
/// Returns `None` when the coefficient matrix is singular.
pub fn solve_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant over a commutative ring by cofactor expansion along the first row.
///
/// `one` supplies the ring for the empty matrix.
pub fn determinant<R: RingElement>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    match n {
        0 => one.one_like(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul_elem(&m[1][1]).sub_elem(&m[0][1].mul_elem(&m[1][0])),
        _ => {
            let mut acc = one.zero_like();
            for col in 0..n {
                if m[0][col].is_zero_elem() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul_elem(&determinant(&minor, one));
                acc = if col % 2 == 0 { acc.add_elem(&term) } else { acc.sub_elem(&term) };
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for t in i..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

pub fn submatrix<R: Clone>(m: &[Vec<R>], rows: &[usize], cols: &[usize]) -> Vec<Vec<R>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

/// All `k x k` minors of an `rows x cols` matrix.
pub fn minors<R: RingElement>(m: &[Vec<R>], cols: usize, k: usize, one: &R) -> Vec<R> {
    let row_sets = subsets(m.len(), k);
    let col_sets = subsets(cols, k);
    let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        for cs in &col_sets {
            out.push(determinant(&submatrix(m, rs, cs), one));
        }
    }
    out
}

/// Adjugate matrix: `adj(M) M = M adj(M) = det(M) I`.
pub fn adjugate<R: RingElement>(m: &[Vec<R>], one: &R) -> Vec<Vec<R>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![one.one_like()]];
    }
    let mut adj = vec![vec![one.zero_like(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = determinant(&submatrix(m, &rows, &cols), one);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { d.neg_elem() };
        }
    }
    adj
}

pub fn mat_mul<R: RingElement>(a: &[Vec<R>], b: &[Vec<R>], one: &R) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(one.zero_like(), |acc, k| acc.add_elem(&row[k].mul_elem(&b[k][c])))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{unit_group, RationalGroupRing};
    use num_traits::One;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
        // sum over permutations, sign from inversion count
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigRational::zero();
        loop {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut term = BigRational::one();
            for (r, &c) in perm.iter().enumerate() {
                term *= &m[r][c];
            }
            if inversions % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return total;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn determinant_matches_leibniz() {
        let m: Vec<Vec<BigRational>> = (0..4)
            .map(|r| (0..4).map(|c| q((r * 7 + c * c * 3 + 1) % 11 - 5)).collect())
            .collect();
        assert_eq!(determinant(&m, &q(1)), leibniz(&m));
        assert_eq!(determinant::<BigRational>(&[], &q(1)), q(1));
    }

    #[test]
    fn solve_and_singular() {
        let m = vec![vec![q(2), q(1), q(5)], vec![q(1), q(3), q(10)]];
        assert_eq!(solve_rational(m), Some(vec![q(1), q(3)]));
        let s = vec![vec![q(1), q(2), q(1)], vec![q(2), q(4), q(1)]];
        assert_eq!(solve_rational(s), None);
    }

    #[test]
    fn adjugate_over_group_ring() {
        let g = unit_group(5).unwrap();
        let one = RationalGroupRing::one(&g, &());
        let e = |cs: [i64; 4]| RationalGroupRing::from_coeffs(&g, &(), cs.iter().map(|&c| q(c)).collect());
        let m = vec![vec![e([1, 2, 0, 0]), e([0, 1, 0, 3])], vec![e([1, 0, 0, 0]), e([2, 0, 1, 1])]];
        let adj = adjugate(&m, &one);
        let prod = mat_mul(&adj, &m, &one);
        let det = determinant(&m, &one);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { det.clone() } else { one.zero_like() };
                assert_eq!(prod[i][j], expected);
            }
        }
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).len(), 0);
        assert_eq!(subsets(4, 2)[1], vec![0, 2]);
    }
}
