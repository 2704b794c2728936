//! Exact linear algebra over the rationals: row reduction with rank bookkeeping.

use super::scalar::Scalar;
use num_traits::Zero;
use serde::Serialize;

/// Outcome of solving an exact linear system `A x = b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Solve {
    /// Unique solution (full column rank).
    Unique(#[serde(skip)] Vec<Scalar>),
    /// Consistent but the column rank is deficient.
    Underdetermined { rank: usize, unknowns: usize },
    /// No solution exists.
    Inconsistent { rank: usize },
}

/// Rank of a matrix given as rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..ncols {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Gauss-Jordan elimination on the augmented system.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Solve {
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Scalar>> =
        a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..=n {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return Solve::Inconsistent { rank: r };
    }
    if r < n {
        return Solve::Underdetermined { rank: r, unknowns: n };
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Solve::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::{frac, int};

    #[test]
    fn unique_overdetermined() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        let b = vec![int(3), int(1), int(4)];
        assert_eq!(solve(&a, &b), Solve::Unique(vec![int(2), int(1)]));
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&a, &[int(1), int(3)]), Solve::Inconsistent { rank: 1 });
        assert_eq!(solve(&a, &[int(1), int(2)]), Solve::Underdetermined { rank: 1, unknowns: 2 });
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn fractional_solution() {
        let a = vec![vec![int(3)]];
        assert_eq!(solve(&a, &[int(1)]), Solve::Unique(vec![frac(1, 3)]));
    }
}
