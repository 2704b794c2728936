//! The edge propagator in the normalized frame:
//!
//! `V^{st}(z, w) = [delta_st Delta_s - sum_a R^s_{phi_a}(-z) R^t_{phi^a}(-w)] / (z + w)`
//!
//! with `phi^a` the dual basis. Coefficients are polynomials in `X` because the
//! `H1H2` column is.

use super::columns::RMatrix;
use crate::canonical::CanonicalData;
use crate::error::{Error, Result};
use crate::exactseries::scalar::int;
use crate::exactseries::{BiSeries, XPoly};
use crate::frobenius::{dual_basis, Sector};

#[derive(Clone, Debug)]
pub struct EdgeBivector {
    /// Largest total degree `i + j` available.
    pub max_degree: usize,
    /// `v[s][t][i][j]` is the coefficient of `z^i w^j`, `s`, `t` sector indices.
    v: Vec<Vec<Vec<Vec<XPoly>>>>,
}

impl EdgeBivector {
    pub fn get(&self, s: Sector, t: Sector, i: usize, j: usize) -> &XPoly {
        &self.v[s.index()][t.index()][i][j]
    }
}

fn signed(k: usize) -> crate::exactseries::Scalar {
    if k % 2 == 0 { int(1) } else { int(-1) }
}

/// Numerator coefficients `n_ij` for `i, j <= K`.
fn numerator(data: &CanonicalData, r: &RMatrix, s: Sector, t: Sector) -> Vec<Vec<XPoly>> {
    let tr = data.trunc();
    let dual = dual_basis(&data.params);
    let (rs, rt) = (r.sector(s), r.sector(t));
    let k = r.kmax;
    let mut n = vec![vec![XPoly::zero(tr); k + 1]; k + 1];
    for i in 0..=k {
        let row_s = rs.row_x(i);
        for j in 0..=k {
            let row_t = rt.row_x(j);
            let mut acc = XPoly::zero(tr);
            for a in 0..4 {
                let mut dual_t = XPoly::zero(tr);
                for b in 0..4 {
                    dual_t = &dual_t + &row_t[b].scale(&dual[a][b]);
                }
                acc = &acc + &(&row_s[a] * &dual_t);
            }
            n[i][j] = acc.scale(&-signed(i + j));
        }
    }
    if s == t {
        n[0][0] = &n[0][0] + &XPoly::constant(data.frame(s).delta.clone());
    }
    n
}

/// Divide every numerator by `z + w`; the quotient is exact up to total degree `K - 1`.
pub fn edge_bivector(data: &CanonicalData, r: &RMatrix) -> Result<EdgeBivector> {
    let k = r.kmax;
    if k == 0 {
        return Err(Error::InvalidConfig("the edge propagator needs K >= 1".into()));
    }
    let tr = data.trunc();
    let mut v = Vec::new();
    for s in Sector::ALL {
        let mut row = Vec::new();
        for t in Sector::ALL {
            let n = numerator(data, r, s, t);
            let where_ = || format!("{}-{}", s.label(), t.label());
            if !n[0][0].is_zero() {
                return Err(Error::Remainder(format!("{} at z^0 w^0", where_())));
            }
            let mut q = vec![vec![XPoly::zero(tr); k]; k];
            for d in 1..=k {
                // n_{d-j, j} = q_{d-1-j, j} + q_{d-j, j-1}.
                q[d - 1][0] = n[d][0].clone();
                for j in 1..d {
                    q[d - 1 - j][j] = &n[d - j][j] - &q[d - j][j - 1];
                }
                if n[0][d] != q[0][d - 1] {
                    return Err(Error::Remainder(format!("{} at total degree {d}", where_())));
                }
            }
            row.push(q);
        }
        v.push(row);
    }
    Ok(EdgeBivector { max_degree: k - 1, v })
}

/// `X`-coefficient of `V^{st}` at `z^i w^j` predicted from the column sums:
/// `2 P3 (-1)^(i+j) S^s_i S^t_j`.
pub fn predicted_x_part(data: &CanonicalData, r: &RMatrix, s: Sector, t: Sector, i: usize, j: usize) -> BiSeries {
    let v = &(&data.gens.p3 * &r.sector(s).sum(i)) * &r.sector(t).sum(j);
    v.scale(&(int(2) * signed(i + j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::Params;

    #[test]
    fn division_is_exact_and_x_enters_linearly() {
        let d = CanonicalData::new(&Params::from_ints(3, 5).unwrap(), 3).unwrap();
        let r = RMatrix::compute(&d, 3).unwrap();
        let e = edge_bivector(&d, &r).unwrap();
        assert_eq!(e.max_degree, 2);
        for s in Sector::ALL {
            for t in Sector::ALL {
                for i in 0..=2 {
                    for j in 0..=(2 - i) {
                        let v = e.get(s, t, i, j);
                        assert!(v.degree().unwrap_or(0) <= 1);
                        assert_eq!(v.coeff(1), predicted_x_part(&d, &r, s, t, i, j));
                        // Symmetry of the propagator.
                        assert_eq!(v, e.get(t, s, j, i));
                    }
                }
            }
        }
    }

    #[test]
    fn corrupted_column_leaves_a_remainder() {
        let d = CanonicalData::new(&Params::from_ints(3, 5).unwrap(), 3).unwrap();
        let mut r = RMatrix::compute(&d, 2).unwrap();
        r.sectors[2].h1[1] = &r.sectors[2].h1[1] + &BiSeries::q2(3);
        assert!(matches!(edge_bivector(&d, &r), Err(Error::Remainder(_))));
    }
}
