//! Gaussian elimination over an exact [`Field`].
//!
//! Matrices are dense row-major `Vec<Vec<_>>`; every function takes the
//! column count explicitly so that matrices with zero rows are well formed.

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(&m[row][col]).expect("nonzero pivot");
        for c in col..ncols {
            m[row][c] = f.mul(&m[row][c], &inv);
        }
        for r in 0..m.len() {
            if r != row && !f.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let t = f.mul(&factor, &m[row][c]);
                    m[r][c] = f.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>, ncols: usize) -> usize {
    let mut m = m.clone();
    rref(f, &mut m, ncols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[row][fc]);
            }
            v
        })
        .collect()
}

/// Affine solution set of `a x = b`: a particular solution and a kernel
/// basis, or `None` when the system is inconsistent.
pub fn solve<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &[F::Elem],
    ncols: usize,
) -> Option<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    assert_eq!(a.len(), b.len());
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some((x, kernel(f, a, ncols)))
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

pub fn mat_mul<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
    inner: usize,
    ncols: usize,
) -> Matrix<F::Elem> {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|c| {
                    (0..inner).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&row[k], &b[k][c])))
                })
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    vec![vec![f.zero(); cols]; rows]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rat;

    #[test]
    fn rank_and_kernel_over_q() {
        let q = Rationals;
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        assert_eq!(rank(&q, &m, 3), 1);
        let k = kernel(&q, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&q, &m, v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn solve_inconsistent() {
        let q = Rationals;
        let m = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        assert!(solve(&q, &m, &[rat(1), rat(2)], 2).is_none());
        let (x, k) = solve(&q, &m, &[rat(1), rat(1)], 2).unwrap();
        assert_eq!(&x[0] + &x[1], rat(1));
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = vec![vec![2u64, 0], vec![0, 1]];
        assert_eq!(rank(&PrimeField::new(2), &m, 2), 1);
        assert_eq!(rank(&PrimeField::new(3), &m, 2), 2);
    }

    #[test]
    fn zero_row_matrix() {
        let q = Rationals;
        let m: Matrix<crate::Rational> = vec![];
        assert_eq!(kernel(&q, &m, 2).len(), 2);
    }
}
