//! Tiny exact rational feasibility solver (phase-1 simplex, Bland's rule).
//!
//! Used as the slow, always-correct fallback when the cheap dual-functional
//! certificates in fan validation are inconclusive. Problems here are tiny
//! (tens of variables), so clarity wins over sparse cleverness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Decide whether there is `x >= 0` with `sum_i x_i * columns[i] = 0` and
/// `sum_{i in must_use} x_i = 1`.
///
/// Geometrically: can the zero vector be written as a nonnegative combination
/// of the columns that puts positive total weight on the `must_use` columns
/// after flipping signs appropriately? Callers encode "two cones share a point
/// outside their common face" this way.
pub fn zero_combination_using(columns: &[Vec<BigInt>], must_use: &[bool]) -> bool {
    assert_eq!(columns.len(), must_use.len());
    if columns.is_empty() || !must_use.iter().any(|&b| b) {
        return false;
    }
    let dim = columns[0].len();
    let n = columns.len();

    // Constraint rows: dim equality rows with RHS 0, plus the normalization
    // row with RHS 1. Flip row signs so every RHS is >= 0 (already true).
    let rows = dim + 1;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..dim {
        a.push(
            columns
                .iter()
                .map(|c| BigRational::from(c[i].clone()))
                .collect(),
        );
    }
    a.push(
        must_use
            .iter()
            .map(|&b| {
                if b {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect(),
    );
    let mut b: Vec<BigRational> = vec![BigRational::zero(); dim];
    b.push(BigRational::one());

    feasible_eq_nonneg(&mut a, &mut b, n)
}

/// Phase-1 simplex: is `{x >= 0 : A x = b}` nonempty? `a` is row-major with
/// `n` structural columns; artificial variables are appended internally.
fn feasible_eq_nonneg(a: &mut Vec<Vec<BigRational>>, b: &mut [BigRational], n: usize) -> bool {
    let m = a.len();
    // Ensure b >= 0.
    for i in 0..m {
        if b[i].is_negative() {
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    // Tableau columns: n structural + m artificial + RHS.
    let cols = n + m;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].clone();
            row.resize(cols, BigRational::zero());
            row[n + i] = BigRational::one();
            row.push(b[i].clone());
            row
        })
        .collect();
    // Basis: the artificials.
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective: minimize z = sum of artificials. The reduced-cost row is
    // c - (sum of constraint rows) since every basic cost is 1: structural
    // columns get -(column sum), artificial columns start at 1 - 1 = 0, and
    // the last entry holds -z.
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for i in 0..m {
        for j in 0..=cols {
            let d = t[i][j].clone();
            obj[j] -= d;
        }
    }
    for j in n..cols {
        obj[j] += BigRational::one();
    }

    loop {
        // Bland: entering column = lowest structural index with negative
        // reduced cost. Artificials never re-enter once they leave.
        let Some(enter) = (0..n).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test, Bland tie-break on lowest basis variable.
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // Unbounded below is impossible for a sum of nonnegatives; treat
            // defensively as infeasible-to-improve.
            break;
        };
        // Pivot.
        let pv = t[pivot_row][enter].clone();
        for j in 0..=cols {
            t[pivot_row][j] = &t[pivot_row][j] / &pv;
        }
        for i in 0..m {
            if i != pivot_row && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=cols {
                    let d = &f * &t[pivot_row][j];
                    t[i][j] -= d;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=cols {
                let d = &f * &t[pivot_row][j];
                obj[j] -= d;
            }
        }
        basis[pivot_row] = enter;
    }
    // Feasible iff the artificial objective reaches zero. obj[cols] holds -z.
    obj[cols].is_zero()
}

/// Decide whether some `lambda >= 0` satisfies `A lambda >= 1` componentwise
/// (`a` row-major, one row per constraint). Returns `None` when the
/// machine-word tableau overflows or the pivot cap trips, in which case the
/// caller must fall back to the big-integer solver.
///
/// Phase-1 simplex with Edmonds integer pivoting: the tableau stays integer
/// with a shared positive denominator, every entry a minor of the input, so
/// arithmetic is exact; Bland's rule guarantees termination.
pub fn nonneg_solution_dominates(a: &[Vec<i128>]) -> Option<bool> {
    let t = a.len();
    if t == 0 {
        return Some(true);
    }
    let m = a[0].len();
    debug_assert!(a.iter().all(|row| row.len() == m));

    // Equational form: A lambda - s = 1 with lambda, s >= 0 and one
    // artificial per row starting in the basis. Artificial columns are never
    // read (they cannot re-enter), so the tableau stores lambda, s, rhs.
    let cols = m + t;
    let mut tab: Vec<Vec<i128>> = (0..t)
        .map(|r| {
            let mut row = a[r].clone();
            row.resize(cols, 0);
            row[m + r] = -1;
            row.push(1);
            row
        })
        .collect();
    let mut delta: i128 = 1;
    // basis[r]: Some(column) once a real variable is basic in row r; None
    // while the artificial still is.
    let mut basis: Vec<Option<usize>> = vec![None; t];

    let mul = |x: i128, y: i128| x.checked_mul(y);
    for _pivots in 0..512 {
        // Reduced cost of column j for minimizing the artificial sum is
        // -(sum of column j over artificial-basic rows)/delta; entering
        // needs that negative, i.e. a positive column sum. Bland: lowest j.
        let mut enter = None;
        'col: for j in 0..cols {
            let mut score: i128 = 0;
            for r in 0..t {
                if basis[r].is_none() {
                    score = score.checked_add(tab[r][j])?;
                }
            }
            if score > 0 {
                enter = Some(j);
                break 'col;
            }
        }
        let Some(q) = enter else {
            // Optimal: feasible iff every artificial-basic row carries zero.
            return Some(basis.iter().zip(&tab).all(|(b, row)| b.is_some() || row[cols] == 0));
        };
        // Ratio test on rhs/col, exact by cross-multiplication; Bland
        // tie-break on the lowest basis identifier (artificials count as
        // their virtual index cols + r, above every real column).
        let mut pivot: Option<usize> = None;
        for r in 0..t {
            if tab[r][q] <= 0 {
                continue;
            }
            let better = match pivot {
                None => true,
                Some(p) => {
                    let lhs = mul(tab[r][cols], tab[p][q])?;
                    let rhs = mul(tab[p][cols], tab[r][q])?;
                    match lhs.cmp(&rhs) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => {
                            let id = |row: usize| basis[row].unwrap_or(cols + row);
                            id(r) < id(p)
                        }
                    }
                }
            };
            if better {
                pivot = Some(r);
            }
        }
        // Phase-1 objective is bounded below, so a missing pivot row cannot
        // occur; bail to the exact fallback if it somehow does.
        let p = pivot?;
        let pv = tab[p][q];
        for r in 0..t {
            if r == p {
                continue;
            }
            let factor = tab[r][q];
            for j in 0..=cols {
                let num = mul(tab[r][j], pv)?.checked_sub(mul(factor, tab[p][j])?)?;
                if num % delta != 0 {
                    return None;
                }
                tab[r][j] = num / delta;
            }
        }
        delta = pv;
        basis[p] = Some(q);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
    }

    #[test]
    fn detects_overlapping_cones() {
        // Quadrant cone {(1,0),(0,1)} vs {(1,1),(1,-1)}: the ray (1,0) is a
        // common point not in the (empty) common face. Columns: C then -D.
        let c = cols(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]]);
        let used = vec![true, true, true, true];
        assert!(zero_combination_using(&c, &used));
    }

    #[test]
    fn honors_disjoint_cones() {
        // cone{(1,0)} vs cone{(0,1)} only meet at 0.
        let c = cols(&[&[1, 0], &[0, -1]]);
        let used = vec![true, true];
        assert!(!zero_combination_using(&c, &used));
    }

    #[test]
    fn adjacent_cones_share_only_their_wall() {
        // C = cone{(1,0),(0,1)}, D = cone{(0,1),(-1,0)}: any common point uses
        // only the shared ray (0,1), which is excluded from must_use.
        let c = cols(&[&[1, 0], &[0, 1], &[0, -1], &[1, 0]]);
        let used = vec![true, false, false, true];
        assert!(!zero_combination_using(&c, &used));
    }
}
