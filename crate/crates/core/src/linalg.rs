//! Small exact linear algebra over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Reduced row echelon form in place; zero rows are dropped. Returns pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// A basis of `{x : rows · x = 0}`.
pub(crate) fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            x[pc] = -row[free].clone();
        }
        basis.push(x);
    }
    basis
}

pub(crate) fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[c][c];
                for j in c..n {
                    let delta = &factor * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// Affine rank of a point set (dimension of its affine hull); -1 for no points.
pub(crate) fn affine_rank(points: &[Vec<Rational>]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs, first.len()) as isize
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub(crate) fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Whether the integer row vectors span a saturated sublattice of `Z^n`
/// (the gcd of the maximal minors is 1). Rows must be linearly independent.
pub(crate) fn spans_saturated_lattice(rows: &[Vec<i64>], ncols: usize) -> bool {
    let r = rows.len();
    if r == 0 {
        return true;
    }
    let mut g = BigInt::zero();
    for cols in combinations(ncols, r) {
        let minor: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| Rational::from_integer(BigInt::from(row[c]))).collect())
            .collect();
        let d = determinant(&minor).to_integer();
        g = g.gcd(&d);
    }
    g.abs().is_one()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[1, 0, 1])];
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for r in &m {
            let dot: Rational = r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants() {
        let a = vec![row(&[2, 1]), row(&[1, 3])];
        assert_eq!(determinant(&a), int(5));
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn lattice_saturation() {
        assert!(spans_saturated_lattice(&[vec![1, 0], vec![0, 1]], 2));
        assert!(!spans_saturated_lattice(&[vec![2, 0], vec![0, 1]], 2));
        assert!(spans_saturated_lattice(&[vec![2, 3]], 2));
        assert!(!spans_saturated_lattice(&[vec![2, 4]], 2));
        assert!(spans_saturated_lattice(&[vec![1, 1, 0], vec![0, 1, 1]], 3));
    }

    #[test]
    fn affine_rank_and_primitive_vectors() {
        let pts = vec![row(&[0, 0, 5]), row(&[1, 1, 5]), row(&[2, 2, 5])];
        assert_eq!(affine_rank(&pts), 1);
        assert_eq!(primitive_integer(&[frac(2, 3), frac(-4, 3)]), vec![BigInt::from(1), BigInt::from(-2)]);
    }
}
