//! Small square matrices with series entries.

use super::scalar::Scalar;
use super::series::BiSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct SMat {
    pub rows: Vec<Vec<BiSeries>>,
}

impl SMat {
    pub fn zero(n: usize, t: u32) -> Self {
        SMat { rows: vec![vec![BiSeries::zero(t); n]; n] }
    }

    pub fn identity(n: usize, t: u32) -> Self {
        let mut m = Self::zero(n, t);
        for i in 0..n {
            m.rows[i][i] = BiSeries::one(t);
        }
        m
    }

    pub fn from_scalars(t: u32, a: &[Vec<Scalar>]) -> Self {
        SMat { rows: a.iter().map(|r| r.iter().map(|x| BiSeries::constant(t, x.clone())).collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BiSeries {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n();
        let t = self.rows[0][0].trunc();
        let mut out = Self::zero(n, t);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BiSeries::zero(t);
                for k in 0..n {
                    if self.rows[i][k].is_zero() || o.rows[k][j].is_zero() {
                        continue;
                    }
                    acc += &(&self.rows[i][k] * &o.rows[k][j]);
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        SMat {
            rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        SMat { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }

    /// Subtract `s` along the diagonal.
    pub fn minus_diag(&self, s: &BiSeries) -> Self {
        let mut m = self.clone();
        for i in 0..self.n() {
            m.rows[i][i] = &m.rows[i][i] - s;
        }
        m
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> BiSeries {
        det_rows(&self.rows)
    }

    /// First nonzero entry as `(row, col, d1, d2)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, u32, u32)> {
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if let Some((a, b, _)) = x.first_nonzero() {
                    return Some((i, j, a, b));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows.iter().map(|r| serde_json::Value::Array(r.iter().map(|x| x.to_json()).collect())).collect(),
        )
    }
}

fn det_rows(m: &[Vec<BiSeries>]) -> BiSeries {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let t = m[0][0].trunc();
    let mut acc = BiSeries::zero(t);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BiSeries>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &det_rows(&minor);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::int;

    #[test]
    fn determinant_of_triangular_and_product_rule() {
        let a = SMat::from_scalars(2, &[vec![int(2), int(1), int(0)], vec![int(0), int(3), int(5)], vec![int(0), int(0), int(-1)]]);
        assert_eq!(a.det(), BiSeries::constant(2, int(-6)));
        let mut b = SMat::identity(3, 2);
        b.rows[0][2] = BiSeries::q1(2);
        b.rows[2][0] = BiSeries::q2(2);
        assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }
}
