//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, point};

    #[test]
    fn rref_rank_nullspace() {
        let rows = vec![point(&[1, 2, 3]), point(&[2, 4, 6]), point(&[0, 1, 1])];
        let (r, piv) = rref(rows.clone(), 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r[0], point(&[1, 0, 1]));
        assert_eq!(rank(rows.clone(), 3), 2);
        let ns = nullspace(rows.clone(), 3);
        assert_eq!(ns, vec![point(&[-1, -1, 1])]);
        for v in &ns {
            for row in &rows {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(s, int(0));
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(vec![point(&[2, 1]), point(&[1, 1])]), int(1));
        assert_eq!(determinant(vec![point(&[0, 1]), point(&[1, 0])]), int(-1));
        assert_eq!(determinant(vec![point(&[1, 2]), point(&[2, 4])]), int(0));
    }
}
