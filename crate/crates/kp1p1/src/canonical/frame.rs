//! Per-sector eigenvalue series `M`, `L` and the quantities derived from them.

use crate::error::{Error, Result};
use crate::exactseries::scalar::{int, Scalar};
use crate::exactseries::{Axis, BiSeries, SMat};
use crate::frobenius::{CohElem, Params, Sector};
use crate::genus0::ConnectionMatrices;
use num_traits::Zero;

/// Solve `M^2 - lambda^2 = 4 q1 (M+L)^2`, `L^2 - mu^2 = 4 q2 (M+L)^2` with
/// constant terms `(-1)^alpha lambda`, `(-1)^beta mu`.
pub fn solve_ml(p: &Params, s: Sector, trunc: u32) -> Result<(BiSeries, BiSeries)> {
    let (h1, h2) = (s.h1(p), s.h2(p));
    let mut m = BiSeries::constant(trunc, h1.clone());
    let mut l = BiSeries::constant(trunc, h2.clone());
    let q1 = BiSeries::q1(trunc).scale(&int(4));
    let q2 = BiSeries::q2(trunc).scale(&int(4));
    let l2 = BiSeries::constant(trunc, p.l2());
    let m2 = BiSeries::constant(trunc, p.m2());
    // Each sweep fixes one more total degree.
    for _ in 0..=trunc {
        let sum = &m + &l;
        let sq = &sum * &sum;
        let nm = (&l2 + &(&q1 * &sq)).sqrt(h1 > Scalar::zero())?;
        let nl = (&m2 + &(&q2 * &sq)).sqrt(h2 > Scalar::zero())?;
        if nm == m && nl == l {
            break;
        }
        m = nm;
        l = nl;
    }
    let (r1, r2) = ml_residuals(p, &m, &l);
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::Residual { what: "eigenvalue system".into(), index: s.label() });
    }
    Ok((m, l))
}

/// Residuals of both defining equations.
pub fn ml_residuals(p: &Params, m: &BiSeries, l: &BiSeries) -> (BiSeries, BiSeries) {
    let t = m.trunc();
    let sum = m + l;
    let sq = (&sum * &sum).scale(&int(4));
    let r1 = &(&(m * m) - &BiSeries::constant(t, p.l2())) - &(&BiSeries::q1(t) * &sq);
    let r2 = &(&(l * l) - &BiSeries::constant(t, p.m2())) - &(&BiSeries::q2(t) * &sq);
    (r1, r2)
}

/// Everything downstream needs about one sector.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFrame {
    pub sector: Sector,
    pub params: Params,
    pub m: BiSeries,
    pub l: BiSeries,
    /// `lambda^2 L + mu^2 M`.
    pub n: BiSeries,
    /// `-8 (lambda^2 L + mu^2 M)`, the inverse squared norm of the idempotent.
    pub delta: BiSeries,
    /// `q_i d/dq_i` of the norm of the idempotent divided by the norm, `i = 1, 2`.
    pub log_norm: [BiSeries; 2],
}

impl CanonicalFrame {
    pub fn new(p: &Params, s: Sector, trunc: u32) -> Result<Self> {
        let (m, l) = solve_ml(p, s, trunc)?;
        let n = &l.scale(&p.l2()) + &m.scale(&p.m2());
        let delta = n.scale(&int(-8));
        let half = -Scalar::new(1.into(), 2.into());
        let log_norm = [n.log_deriv(Axis::Q1)?.scale(&half), n.log_deriv(Axis::Q2)?.scale(&half)];
        Ok(CanonicalFrame { sector: s, params: p.clone(), m, l, n, delta, log_norm })
    }

    pub fn all(p: &Params, trunc: u32) -> Result<Vec<Self>> {
        Sector::ALL.iter().map(|&s| Self::new(p, s, trunc)).collect()
    }

    pub fn trunc(&self) -> u32 {
        self.m.trunc()
    }

    /// The eigenvalue of `A_i`: `M` for `i = 1`, `L` for `i = 2`.
    pub fn eigenvalue(&self, axis: Axis) -> &BiSeries {
        if axis == Axis::Q1 { &self.m } else { &self.l }
    }

    pub fn log_norm(&self, axis: Axis) -> &BiSeries {
        if axis == Axis::Q1 { &self.log_norm[0] } else { &self.log_norm[1] }
    }

    /// Closed forms for `q_i d/dq_i` of `M` and `L` obtained by implicit differentiation.
    pub fn implicit_derivatives(&self) -> Result<[[BiSeries; 2]; 2]> {
        let p = &self.params;
        let t = self.trunc();
        let e1 = &(&self.m * &self.m) - &BiSeries::constant(t, p.l2());
        let e2 = &(&self.l * &self.l) - &BiSeries::constant(t, p.m2());
        let lm = &self.l * &self.m;
        let inv = self.n.scale(&int(2)).invert()?;
        let d1m = &(&e1 * &(&lm + &BiSeries::constant(t, p.m2()))) * &inv;
        let d2l = &(&e2 * &(&lm + &BiSeries::constant(t, p.l2()))) * &inv;
        let cross = &(&e1 * &e2) * &inv;
        Ok([[d1m, cross.clone()], [cross, d2l]])
    }
}

/// `det(A_i - E_i Id)` for both matrices and every sector; all must vanish.
pub fn eigen_check(c: &ConnectionMatrices, frames: &[CanonicalFrame]) -> Vec<(Sector, Axis, BiSeries)> {
    let mut out = Vec::new();
    for f in frames {
        for axis in [Axis::Q1, Axis::Q2] {
            out.push((f.sector, axis, c.a(axis).minus_diag(f.eigenvalue(axis)).det()));
        }
    }
    out
}

/// Solve `(A1 - M) v = (A2 - L) v = 0` with `v_0 = 1`, using three of the eight
/// rows whose minor is a unit. `A1` alone is degenerate at `q = 0`.
fn kernel_vector(c: &ConnectionMatrices, f: &CanonicalFrame) -> Result<[BiSeries; 4]> {
    let b1 = c.a1.minus_diag(&f.m);
    let b2 = c.a2.minus_diag(&f.l);
    let all: Vec<&Vec<BiSeries>> = b1.rows.iter().chain(b2.rows.iter()).collect();
    let t = f.trunc();
    for r0 in 0..8 {
        for r1 in r0 + 1..8 {
            for r2 in r1 + 1..8 {
                let rows = [all[r0], all[r1], all[r2]];
                let minor = SMat { rows: rows.iter().map(|r| r[1..4].to_vec()).collect() };
                let det = minor.det();
                if det.constant_term().is_zero() {
                    continue;
                }
                let inv = det.invert()?;
                let mut v = [BiSeries::one(t), BiSeries::zero(t), BiSeries::zero(t), BiSeries::zero(t)];
                for col in 0..3 {
                    let mut m = minor.clone();
                    for (r, row) in rows.iter().enumerate() {
                        m.rows[r][col] = -&row[0];
                    }
                    v[col + 1] = &m.det() * &inv;
                }
                return Ok(v);
            }
        }
    }
    Err(Error::NotInvertible)
}

/// Quantum idempotent of a sector: common eigenvector of `A1`, `A2`, scaled so that
/// `<e, e> = <e, 1>`, which is the idempotent normalization in a Frobenius algebra.
pub fn quantum_idempotent(c: &ConnectionMatrices, f: &CanonicalFrame) -> Result<CohElem> {
    let p = &c.params;
    let t = c.trunc();
    let v = kernel_vector(c, f)?;
    let v = CohElem { c: v };
    for (axis, a) in [(Axis::Q1, &c.a1), (Axis::Q2, &c.a2)] {
        let e = f.eigenvalue(axis);
        for r in 0..4 {
            let mut acc = BiSeries::zero(t);
            for j in 0..4 {
                acc += &(a.get(r, j) * &v.c[j]);
            }
            if acc != &v.c[r] * e {
                return Err(Error::Residual { what: format!("eigenvector of {axis:?}"), index: f.sector.label() });
            }
        }
    }
    let one = CohElem::basis(t, 0);
    let scale = &v.pairing(p, &one) * &v.pairing(p, &v).invert()?;
    Ok(v.scale_series(&scale))
}

/// Returns `<e, e> * Delta - 1`, which vanishes when the norm formula holds.
pub fn norm_check(c: &ConnectionMatrices, f: &CanonicalFrame) -> Result<BiSeries> {
    let e = quantum_idempotent(c, f)?;
    let nn = e.pairing(&c.params, &e);
    Ok(&(&nn * &f.delta) - &BiSeries::one(f.trunc()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::frac;
    use crate::genus0::relations::connection_matrices;

    fn p() -> Params {
        Params::from_ints(3, 5).unwrap()
    }

    #[test]
    fn first_order_terms() {
        let p = p();
        let (m, l) = solve_ml(&p, Sector::new(0, 0), 4).unwrap();
        assert_eq!(m.constant_term(), &int(3));
        assert_eq!(l.constant_term(), &int(5));
        // 2 (lambda + mu)^2 / lambda and 2 (lambda + mu)^2 / mu.
        assert_eq!(m.coeff(1, 0), frac(128, 3));
        assert_eq!(l.coeff(1, 0), int(0));
        assert_eq!(l.coeff(0, 1), frac(128, 5));
    }

    #[test]
    fn sectors_are_distinct_and_satisfy_the_system() {
        let p = p();
        let frames = CanonicalFrame::all(&p, 5).unwrap();
        for f in &frames {
            let (r1, r2) = ml_residuals(&p, &f.m, &f.l);
            assert!(r1.is_zero() && r2.is_zero());
            let h = (f.sector.h1(&p), f.sector.h2(&p));
            assert_eq!((f.m.constant_term().clone(), f.l.constant_term().clone()), h);
            let want = int(-8) * (p.l2() * &h.1 + p.m2() * &h.0);
            assert_eq!(f.delta.constant_term(), &want);
        }
    }

    #[test]
    fn sign_flip_relates_sectors() {
        // Replacing lambda by -lambda exchanges alpha = 0 and alpha = 1.
        let p = p();
        let flipped = Params::new(-p.lambda.clone(), p.mu.clone()).unwrap();
        let a = CanonicalFrame::new(&p, Sector::new(1, 0), 5).unwrap();
        let b = CanonicalFrame::new(&flipped, Sector::new(0, 0), 5).unwrap();
        assert_eq!(a.m, b.m);
        assert_eq!(a.l, b.l);
    }

    #[test]
    fn implicit_derivatives_match_series_derivatives() {
        let f = CanonicalFrame::new(&p(), Sector::new(0, 1), 6).unwrap();
        let d = f.implicit_derivatives().unwrap();
        assert_eq!(d[0][0], f.m.euler_d(Axis::Q1));
        assert_eq!(d[0][1], f.l.euler_d(Axis::Q1));
        assert_eq!(d[1][0], f.m.euler_d(Axis::Q2));
        assert_eq!(d[1][1], f.l.euler_d(Axis::Q2));
    }

    #[test]
    fn eigenvalues_of_connection_matrices() {
        let p = p();
        let c = connection_matrices(&p, 5).unwrap();
        let frames = CanonicalFrame::all(&p, 5).unwrap();
        for (s, axis, det) in eigen_check(&c, &frames) {
            assert!(det.is_zero(), "{s:?} {axis:?}");
        }
        let shifted = &frames[0].m + &BiSeries::q1(5);
        assert!(!c.a1.minus_diag(&shifted).det().is_zero());
    }

    #[test]
    fn idempotent_norm_matches_delta() {
        let p = p();
        let c = connection_matrices(&p, 5).unwrap();
        for f in CanonicalFrame::all(&p, 5).unwrap() {
            assert!(norm_check(&c, &f).unwrap().is_zero(), "{:?}", f.sector);
            let e = quantum_idempotent(&c, &f).unwrap();
            let classical = crate::frobenius::idempotent(&p, f.sector);
            for i in 0..4 {
                assert_eq!(e.c[i].constant_term(), &classical[i]);
            }
        }
    }
}
