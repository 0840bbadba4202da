//! Minimal exact linear algebra over a [`FieldDescriptor`].
//!
//! Matrices are dense `Vec<Vec<FieldElement>>` in row-major order. All
//! routines use exact Gaussian elimination with the first nonzero pivot in
//! column order, so results (echelon forms, kernel bases) are deterministic.
//! Everything here stays tiny (dimension ≤ 9), so no pivoting strategy
//! beyond correctness is needed.

use crate::field::{FieldDescriptor, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Identity matrix of size n.
pub fn identity(field: &FieldDescriptor, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

/// Matrix product (panics on dimension mismatch).
pub fn mat_mul(field: &FieldDescriptor, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    assert!(a.iter().all(|row| row.len() == k));
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = field.zero();
                    for l in 0..k {
                        acc = field.add(&acc, &field.mul(&a[i][l], &b[l][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Matrix-vector product.
pub fn mat_vec(field: &FieldDescriptor, a: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (c, x) in row.iter().zip(v) {
                acc = field.add(&acc, &field.mul(c, x));
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form; returns (rref, pivot column per pivot row).
pub fn rref(field: &FieldDescriptor, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("pivot is nonzero");
        for j in 0..cols {
            a[r][j] = field.mul(&a[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let sub = field.mul(&factor, &a[r][j]);
                    a[i][j] = field.sub(&a[i][j], &sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(field: &FieldDescriptor, m: &Matrix) -> usize {
    rref(field, m).1.len()
}

/// Basis of the right kernel {v : m·v = 0}, in a deterministic order (one
/// vector per free column, free columns ascending).
pub fn kernel_basis(field: &FieldDescriptor, m: &Matrix) -> Vec<Vec<FieldElement>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (a, pivots) = rref(field, m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&a[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant by elimination (square matrices).
pub fn determinant(field: &FieldDescriptor, m: &Matrix) -> FieldElement {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return field.zero();
        };
        if pr != c {
            a.swap(c, pr);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..n {
                let sub = field.mul(&factor, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &sub);
            }
        }
    }
    det
}

/// Inverse of a square matrix, if invertible.
pub fn invert(field: &FieldDescriptor, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    let (reduced, pivots) = rref(field, &aug);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(
        reduced
            .iter()
            .map(|row| row[n..].to_vec())
            .collect(),
    )
}

/// Solves m·x = b, returning one solution if the system is consistent.
pub fn solve(field: &FieldDescriptor, m: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let rows = m.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (a, pivots) = rref(field, &aug);
    // Inconsistent if a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn m(field: &FieldDescriptor, data: &[&[i64]]) -> Matrix {
        data.iter()
            .map(|row| row.iter().map(|&v| field.from_integer(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_gf7() {
        let f = FieldDescriptor::prime(7).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&f, &a), 2);
        let ker = kernel_basis(&f, &a);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            let prod = mat_vec(&f, &a, v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_and_inverse_gf7() {
        let f = FieldDescriptor::prime(7).unwrap();
        let a = m(&f, &[&[1, 2], &[3, 4]]);
        // det = 1·4 − 2·3 = −2 ≡ 5 (mod 7)
        assert_eq!(determinant(&f, &a), f.from_integer(5));
        let inv = invert(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &inv), identity(&f, 2));
        assert_eq!(mat_mul(&f, &inv, &a), identity(&f, 2));
        let singular = m(&f, &[&[1, 2], &[2, 4]]);
        assert!(determinant(&f, &singular).is_zero());
        assert!(invert(&f, &singular).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = FieldDescriptor::rationals();
        let a = m(&q, &[&[2, 1], &[1, 3]]);
        let b = vec![q.from_integer(5), q.from_integer(10)];
        let x = solve(&q, &a, &b).unwrap();
        assert_eq!(mat_vec(&q, &a, &x), b);
        let sing = m(&q, &[&[1, 1], &[1, 1]]);
        let bad = vec![q.from_integer(0), q.from_integer(1)];
        assert!(solve(&q, &sing, &bad).is_none());
    }

    #[test]
    fn rational_elimination_stays_exact() {
        let q = FieldDescriptor::rationals();
        let a: Matrix = vec![
            vec![q.from_fraction(1, 2), q.from_fraction(1, 3)],
            vec![q.from_fraction(1, 5), q.from_fraction(2, 7)],
        ];
        let inv = invert(&q, &a).unwrap();
        assert_eq!(mat_mul(&q, &a, &inv), identity(&q, 2));
    }
}
