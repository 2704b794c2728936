//! S-matrix columns by successive differentiation of the I-function, and the
//! connection matrices read off from them.

use super::ifunction::IFamily;
use crate::error::{Error, Result};
use crate::exactseries::{Axis, BiSeries, SMat};
use crate::frobenius::{CohElem, Params};

/// `cols[j][k]` is the coefficient of `z^{-k}` in `S^* phi_j`, basis order `{1, H1, H2, H1H2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SColumns {
    pub params: Params,
    pub trunc: u32,
    pub cols: [Vec<CohElem>; 4],
}

/// `A1` and `A2` with `A_i[row][col]`, column `j` holding the coordinates of `A_i phi_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionMatrices {
    pub params: Params,
    pub a1: SMat,
    pub a2: SMat,
}

impl ConnectionMatrices {
    pub fn trunc(&self) -> u32 {
        self.a1.get(0, 0).trunc()
    }

    pub fn a(&self, axis: Axis) -> &SMat {
        match axis {
            Axis::Q1 => &self.a1,
            _ => &self.a2,
        }
    }
}

fn h_index(axis: Axis) -> usize {
    if axis == Axis::Q1 { 1 } else { 2 }
}

/// `[z^{-k}] (H_i + z q_i d/dq_i) S` for every `k` the input supports.
fn d_apply(p: &Params, axis: Axis, col: &[CohElem]) -> Vec<CohElem> {
    let t = col[0].trunc();
    let h = CohElem::basis(t, h_index(axis));
    (0..col.len() - 1).map(|k| &col[k].mul(p, &h) + &col[k + 1].euler_d(axis)).collect()
}

fn combine(a: &BiSeries, x: &CohElem, b: &BiSeries, y: &CohElem) -> CohElem {
    &x.scale_series(a) + &y.scale_series(b)
}

/// Solve the derivative cascade. Needs `kmax >= 3`.
pub fn s_columns(i: &IFamily) -> Result<SColumns> {
    let p = &i.params;
    let kmax = i.kmax();
    if kmax < 3 {
        return Err(Error::InvalidConfig(format!("z-depth {kmax} is below 3")));
    }
    let t = i.trunc;
    let s1: Vec<CohElem> = i.ik.clone();
    let d1s1 = d_apply(p, Axis::Q1, &s1);
    let d2s1 = d_apply(p, Axis::Q2, &s1);
    let j1 = d1s1[0].c[2].clone();
    let j2 = d2s1[0].c[1].clone();
    let one = BiSeries::one(t);
    let det = &(&one + &j1) + &j2;
    let inv = det.invert()?;
    let (a11, a22) = (&one + &j1, &one + &j2);
    let sh1: Vec<CohElem> =
        (0..d1s1.len()).map(|k| combine(&a22, &d1s1[k], &-&j1, &d2s1[k]).scale_series(&inv)).collect();
    let sh2: Vec<CohElem> =
        (0..d1s1.len()).map(|k| combine(&a11, &d2s1[k], &-&j2, &d1s1[k]).scale_series(&inv)).collect();
    let d1sh2 = d_apply(p, Axis::Q1, &sh2);
    let top = &d1sh2[0];
    if !top.c[1].is_zero() || !top.c[2].is_zero() {
        return Err(Error::Residual { what: "H1 derivative of S*H2".into(), index: "z^0".into() });
    }
    let (c_one, c_top) = (top.c[0].clone(), top.c[3].clone());
    let c_inv = c_top.invert()?;
    let sh12: Vec<CohElem> =
        (0..d1sh2.len()).map(|k| (&d1sh2[k] - &s1[k].scale_series(&c_one)).scale_series(&c_inv)).collect();
    Ok(SColumns { params: p.clone(), trunc: t, cols: [s1, sh1, sh2, sh12] })
}

impl SColumns {
    /// Number of trustworthy `z^{-k}` layers shared by all four columns.
    pub fn depth(&self) -> usize {
        self.cols.iter().map(|c| c.len()).min().unwrap_or(0)
    }

    /// Read `A_i` from the `z^0` layer of `D_i S^* phi_j`.
    pub fn connection(&self, axis: Axis) -> SMat {
        let t = self.trunc;
        let mut m = SMat::zero(4, t);
        for j in 0..4 {
            let v = &self.cols[j][0].mul(&self.params, &CohElem::basis(t, h_index(axis))) + &self.cols[j][1].euler_d(axis);
            for r in 0..4 {
                m.rows[r][j] = v.c[r].clone();
            }
        }
        m
    }

    pub fn connection_matrices(&self) -> ConnectionMatrices {
        ConnectionMatrices { params: self.params.clone(), a1: self.connection(Axis::Q1), a2: self.connection(Axis::Q2) }
    }

    /// Residual of `D_i S^* phi_j = sum_l (A_i)_{lj} S^* phi_l` at every available layer.
    pub fn qde_residual(&self, c: &ConnectionMatrices) -> Result<usize> {
        let p = &self.params;
        let layers = self.depth() - 1;
        for axis in [Axis::Q1, Axis::Q2] {
            let a = c.a(axis);
            for j in 0..4 {
                let d = d_apply(p, axis, &self.cols[j][..=layers]);
                for (k, lhs) in d.iter().enumerate() {
                    let mut rhs = CohElem::zero(self.trunc);
                    for l in 0..4 {
                        rhs = &rhs + &self.cols[l][k].scale_series(a.get(l, j));
                    }
                    let r = lhs - &rhs;
                    if !r.is_zero() {
                        return Err(Error::Residual {
                            what: format!("quantum differential equation along {axis:?}"),
                            index: format!("column {j}, z^-{k}"),
                        });
                    }
                }
            }
        }
        Ok(layers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::{frac, int};
    use crate::frobenius::{basis4, mul4};
    use crate::genus0::ifunction::{i1_scalar, i_function};

    fn setup(t: u32, kmax: usize) -> (SColumns, ConnectionMatrices) {
        let p = Params::from_ints(3, 5).unwrap();
        let s = s_columns(&i_function(&p, t, kmax)).unwrap();
        let c = s.connection_matrices();
        (s, c)
    }

    #[test]
    fn unital_normalization() {
        let (s, _) = setup(4, 5);
        for j in 0..4 {
            assert_eq!(s.cols[j][0], CohElem::basis(4, j));
        }
    }

    #[test]
    fn first_column_entries() {
        let (_, c) = setup(4, 4);
        let i11 = c.a1.get(2, 0);
        // Twice the Euler derivative of the I1 scalar, see the decisions ledger.
        assert_eq!(i11, &i1_scalar(4).euler_d(Axis::Q1).scale(&int(2)));
        assert_eq!(i11.coeff(1, 0), int(2));
        assert_eq!(i11.coeff(2, 0), int(6));
        assert_eq!(i11.coeff(1, 1), int(12));
        assert_eq!(&(c.a1.get(1, 0) - i11), &BiSeries::one(4));
        assert!(c.a1.get(0, 0).is_zero());
        assert_eq!(i11.coeff(3, 0), frac(20, 1));
    }

    #[test]
    fn classical_limit() {
        let (s, c) = setup(3, 4);
        for (axis, h) in [(Axis::Q1, 1), (Axis::Q2, 2)] {
            let a = c.a(axis);
            for j in 0..4 {
                let want = mul4(&s.params, &basis4(h), &basis4(j));
                for r in 0..4 {
                    assert_eq!(a.get(r, j).constant_term(), &want[r]);
                }
            }
        }
    }

    #[test]
    fn qde_holds_at_all_layers() {
        let (s, c) = setup(5, 7);
        assert_eq!(s.qde_residual(&c).unwrap(), 5);
    }

    #[test]
    fn corrupted_matrix_fails_the_qde() {
        let (s, mut c) = setup(4, 5);
        c.a1.rows[0][1] = &c.a1.rows[0][1] + &BiSeries::q2(4);
        assert!(s.qde_residual(&c).is_err());
    }

    #[test]
    fn homogeneity_under_parameter_scaling() {
        let p = Params::from_ints(3, 5).unwrap();
        let t = frac(2, 7);
        let s = s_columns(&i_function(&p, 3, 5)).unwrap();
        let st = s_columns(&i_function(&p.scaled(&t), 3, 5)).unwrap();
        let deg = [0i32, 1, 1, 2];
        for j in 0..4 {
            for k in 0..s.depth() {
                for b in 0..4 {
                    let e = k as i32 + deg[j] - deg[b];
                    if e < 0 {
                        assert!(s.cols[j][k].c[b].is_zero());
                        continue;
                    }
                    let f = crate::exactseries::scalar::pow(&t, e as u32);
                    assert_eq!(st.cols[j][k].c[b], s.cols[j][k].c[b].scale(&f), "col {j} k {k} basis {b}");
                }
            }
        }
    }
}
