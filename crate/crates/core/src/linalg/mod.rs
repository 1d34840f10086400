//! Dense linear algebra over any [`Field`]: exact for rationals, rounded for floats.

use crate::arith::Field;

mod exact;

pub use exact::{first_dependent_column_exact, solve_exact};

pub type Matrix<F> = Vec<Vec<F>>;

fn argmax_pivot<F: Field>(
    a: &Matrix<F>,
    rows: std::ops::Range<usize>,
    col: usize,
) -> Option<usize> {
    let mut best: Option<(usize, F::Real)> = None;
    for r in rows {
        if a[r][col].is_zero() {
            continue;
        }
        let m = a[r][col].magnitude();
        if best.as_ref().is_none_or(|(_, b)| m > *b) {
            best = Some((r, m));
        }
    }
    best.map(|(r, _)| r)
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot column is entirely zero.
pub fn solve<F: Field>(mut a: Matrix<F>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = a.len();
    for k in 0..n {
        let p = argmax_pivot(&a, k..n, k)?;
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / &a[k][k];
            for j in k..n {
                let t = f.clone() * &a[k][j];
                a[i][j] = a[i][j].clone() - &t;
            }
            let t = f * &b[k];
            b[i] = b[i].clone() - &t;
        }
    }
    back_substitute(&a, b)
}

fn back_substitute<F: Field>(a: &Matrix<F>, b: Vec<F>) -> Option<Vec<F>> {
    let n = a.len();
    let mut x = b;
    for i in (0..n).rev() {
        if a[i][i].is_zero() {
            return None;
        }
        let mut acc = x[i].clone();
        for j in i + 1..n {
            acc = acc - &(a[i][j].clone() * &x[j]);
        }
        x[i] = acc / &a[i][i];
    }
    Some(x)
}

/// LU factorization with complete pivoting, `P A Q = L U`.
pub struct FullPivotLu<F> {
    lu: Matrix<F>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

impl<F: Field> FullPivotLu<F> {
    /// Fails when the matrix is singular (some remaining block is all zero).
    pub fn new(mut a: Matrix<F>) -> Option<Self> {
        let n = a.len();
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut best: Option<(usize, usize, F::Real)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, v) in row.iter().enumerate().skip(k) {
                    if v.is_zero() {
                        continue;
                    }
                    let m = v.magnitude();
                    if best.as_ref().is_none_or(|(_, _, b)| m > *b) {
                        best = Some((i, j, m));
                    }
                }
            }
            let (pi, pj, _) = best?;
            a.swap(k, pi);
            row_perm.swap(k, pi);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                col_perm.swap(k, pj);
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() / &a[k][k];
                for j in k + 1..n {
                    let t = f.clone() * &a[k][j];
                    a[i][j] = a[i][j].clone() - &t;
                }
                a[i][k] = f;
            }
        }
        Some(FullPivotLu {
            lu: a,
            row_perm,
            col_perm,
        })
    }

    /// `L` (unit diagonal, below) and `U` packed in one matrix, for the
    /// row- and column-permuted input.
    pub fn factors(&self) -> &Matrix<F> {
        &self.lu
    }

    pub fn solve(&self, b: &[F]) -> Vec<F> {
        let n = self.lu.len();
        let mut y: Vec<F> = self.row_perm.iter().map(|&r| b[r].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[i][j].clone() * &y[j];
                y[i] = y[i].clone() - &t;
            }
        }
        let z = back_substitute(&self.lu, y).expect("nonzero pivots after factorization");
        let mut x = z.clone();
        for (k, &c) in self.col_perm.iter().enumerate() {
            x[c] = z[k].clone();
        }
        x
    }

    pub fn inverse(&self) -> Matrix<F> {
        let n = self.lu.len();
        let zero = self.lu[0][0].zero_like();
        let one = self.lu[0][0].one_like();
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![zero.clone(); n];
            e[k] = one.clone();
            cols.push(self.solve(&e));
        }
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

/// Maximum absolute column sum, in the `magnitude` metric.
pub fn norm_1<F: Field>(a: &Matrix<F>) -> F::Real {
    let n = a.first().map_or(0, Vec::len);
    let mut best: Option<F::Real> = None;
    for j in 0..n {
        let mut s = a[0][j].magnitude();
        for row in a.iter().skip(1) {
            s = s + &row[j].magnitude();
        }
        if best.as_ref().is_none_or(|b| s > *b) {
            best = Some(s);
        }
    }
    best.expect("non-empty matrix")
}

/// Determinant by elimination (exact for rationals).
pub fn determinant<F: Field>(mut a: Matrix<F>) -> F {
    let n = a.len();
    let mut det = a[0][0].one_like();
    for k in 0..n {
        let Some(p) = argmax_pivot(&a, k..n, k) else {
            return a[0][0].zero_like();
        };
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        det = det * &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / &a[k][k];
            for j in k..n {
                let t = f.clone() * &a[k][j];
                a[i][j] = a[i][j].clone() - &t;
            }
        }
    }
    det
}

/// Rank of a (possibly rectangular) matrix by exact elimination.
pub fn rank<F: Field>(mut a: Matrix<F>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = argmax_pivot(&a, r..rows, c) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / &a[r][c];
            for j in c..cols {
                let t = f.clone() * &a[r][j];
                a[i][j] = a[i][j].clone() - &t;
            }
        }
        r += 1;
    }
    r
}

/// Outcome of a left-to-right column scan for the first dependent column.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDependence<F> {
    /// Index of the first column lying in the span of its predecessors.
    pub column: usize,
    /// Coefficients `a` with `Σ a_j col_j = -col_M` over the preceding columns.
    pub coefficients: Vec<F>,
}

/// Fraction-free (Bareiss) elimination scanning columns left to right; stops at
/// the first column that is a combination of the earlier ones.
///
/// Every division is exact and each working entry stays a minor of the input.
pub fn first_dependent_column<F: Field>(a: &Matrix<F>) -> Option<ColumnDependence<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut work = a.clone();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut prev = a[0][0].one_like();
    let mut row_used = vec![false; rows];

    for c in 0..cols {
        let pivot = (0..rows).find(|&r| !row_used[r] && !work[r][c].is_zero());
        let Some(p) = pivot else {
            // Column c reduces to zero below the pivots: dependent.
            let sub: Matrix<F> = pivot_rows.iter().map(|&r| a[r][..c].to_vec()).collect();
            let rhs: Vec<F> = pivot_rows.iter().map(|&r| -a[r][c].clone()).collect();
            let coefficients = if c == 0 { Vec::new() } else { solve(sub, rhs)? };
            return Some(ColumnDependence {
                column: c,
                coefficients,
            });
        };
        row_used[p] = true;
        pivot_rows.push(p);
        let pv = work[p][c].clone();
        for r in 0..rows {
            if row_used[r] {
                continue;
            }
            for j in c + 1..cols {
                let v = (pv.clone() * &work[r][j] - &(work[r][c].clone() * &work[p][j])) / &prev;
                work[r][j] = v;
            }
            work[r][c] = pv.zero_like();
        }
        prev = pv;
    }
    None
}
