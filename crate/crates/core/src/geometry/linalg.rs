//! Exact integer/rational linear algebra on small dense matrices.
//!
//! Everything below is fraction-free or `BigRational`-based; there is no
//! floating point anywhere in the decision path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix (rows of equal length) via the
/// Bareiss fraction-free algorithm. Panics if the matrix is not square.
pub fn int_det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rank of an integer matrix over the rationals.
pub fn int_rank(matrix: &[Vec<BigInt>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for i in rank + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &inv;
            for j in col..cols {
                let delta = &factor * &m[rank][j];
                m[i][j] -= delta;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Solve `A x = b` exactly, where the columns of `A` are `columns` (each of
/// length `dim`) and are linearly independent. Returns `None` when the system
/// is inconsistent; otherwise the unique rational solution.
pub fn solve_columns(columns: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = columns.len();
    let dim = b.len();
    assert!(columns.iter().all(|c| c.len() == dim));
    // Augmented matrix [A | b], dim rows, k+1 cols.
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from(c[i].clone()))
                .collect();
            row.push(BigRational::from(b[i].clone()));
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..dim).find(|&i| !m[i][col].is_zero()) else {
            // Columns were promised independent; a missing pivot means the
            // caller lied, treat as inconsistent.
            return None;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for i in 0..dim {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &inv;
            for j in col..=k {
                let delta = &factor * &m[row][j];
                m[i][j] -= delta;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: rows below the pivots must have zero RHS.
    for i in row..dim {
        if !m[i][k].is_zero() {
            return None;
        }
    }
    let mut x = Vec::with_capacity(k);
    for (col, &pr) in pivot_rows.iter().enumerate() {
        x.push(&m[pr][k] / &m[pr][col]);
    }
    Some(x)
}

/// Adjugate of a square integer matrix: `adj(M) * M = det(M) * I`.
pub fn adjugate(matrix: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n));
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // Cofactor C_{j,i} (note the transpose).
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| matrix[r][c].clone())
                        .collect()
                })
                .collect();
            let mut cof = int_det(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            adj[i][j] = cof;
        }
    }
    adj
}

/// Gcd of all `k`-by-`k` minors of the `k`-by-`dim` matrix whose rows are
/// `rows` (with `k <= dim`). This is the lattice index of the sublattice the
/// rows span inside its saturation; 1 means the rows extend to a basis.
pub fn maximal_minor_gcd(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let dim = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == dim));
    assert!(k <= dim, "more rows than columns in maximal_minor_gcd");
    let mut g = BigInt::zero();
    for cols in combinations(dim, k) {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let d = int_det(&minor);
        g = num_integer::gcd(g, d.abs());
        if g.is_one() {
            return g;
        }
    }
    g
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
