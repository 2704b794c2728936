//! Membership of R-matrix entries in the graded ring `G_{m,n}`.

use crate::canonical::fit::{fit_in_g, required_trunc, FitOutcome};
use crate::canonical::CanonicalFrame;
use crate::error::Result;
use crate::exactseries::{Axis, BiSeries};
use crate::frobenius::Params;
use crate::rmatrix::wick::wick_r1;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradingLine {
    pub what: String,
    pub sector: String,
    pub m: u32,
    pub n: u32,
    pub trunc: u32,
    pub outcome: String,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub certified: bool,
}

impl GradingLine {
    fn new(what: &str, f: &CanonicalFrame, m: u32, n: u32, out: &FitOutcome) -> Self {
        let c = out.certificate();
        GradingLine {
            what: what.into(),
            sector: f.sector.label(),
            m,
            n,
            trunc: f.trunc(),
            outcome: out.label().into(),
            equations: c.equations,
            unknowns: c.unknowns,
            rank: c.rank,
            certified: out.certified(),
        }
    }
}

/// `(D1 + D2 + n1 + n2)` applied to a series in the sector's frame.
fn dn_both(f: &CanonicalFrame, s: &BiSeries) -> BiSeries {
    let d = s.euler_d(Axis::Both);
    &d + &(&(&f.log_norm[0] + &f.log_norm[1]) * s)
}

/// Fits for order `k`: `(R_k)_1` and the tail coefficient in `G_{3k,8k}`, and the
/// column sum divided by `P1` in `G_{3k,8k+1}`. Each fit runs at the smallest
/// truncation with a 25% surplus of equations.
pub fn grading_fit(p: &Params, s: crate::frobenius::Sector, k: u32) -> Result<Vec<GradingLine>> {
    let wick = wick_r1(p, k)?;
    let mut out = Vec::new();
    let f = CanonicalFrame::new(p, s, required_trunc(8 * k))?;
    let rk = wick[k as usize].eval(&f)?;
    let fit = fit_in_g(&rk, 3 * k, 8 * k, &f);
    out.push(GradingLine::new(&format!("(R_{k})_1"), &f, 3 * k, 8 * k, &fit));
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let tk = rk.scale(&crate::exactseries::scalar::int(sign));
    let fit = fit_in_g(&tk, 3 * k, 8 * k, &f);
    out.push(GradingLine::new(&format!("T_{k}"), &f, 3 * k, 8 * k, &fit));
    let f = CanonicalFrame::new(p, s, required_trunc(8 * k + 1))?;
    let rk = wick[k as usize].eval(&f)?;
    let prev = wick[k as usize - 1].eval(&f)?;
    let b = &(&(&f.m + &f.l) * &rk) + &dn_both(&f, &prev);
    let fit = fit_in_g(&b, 3 * k, 8 * k + 1, &f);
    out.push(GradingLine::new(&format!("((R_{k})_H1 + (R_{k})_H2) / P1"), &f, 3 * k, 8 * k + 1, &fit));
    Ok(out)
}

/// `(R_1)_1` does not fit over a single power of `N`.
pub fn too_small_fit(p: &Params, s: crate::frobenius::Sector) -> Result<GradingLine> {
    let f = CanonicalFrame::new(p, s, required_trunc(8))?;
    let r1 = wick_r1(p, 1)?[1].eval(&f)?;
    let fit = fit_in_g(&r1, 1, 3, &f);
    Ok(GradingLine::new("(R_1)_1 in G_{1,3}", &f, 1, 3, &fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::Sector;

    #[test]
    fn first_order_memberships() {
        let p = Params::from_ints(3, 5).unwrap();
        for line in grading_fit(&p, Sector::new(0, 0), 1).unwrap() {
            assert!(line.certified, "{line:?}");
        }
        assert_eq!(too_small_fit(&p, Sector::new(1, 1)).unwrap().outcome, "inconsistent");
        let f = CanonicalFrame::new(&p, Sector::new(0, 1), required_trunc(8)).unwrap();
        let w = &wick_r1(&p, 1).unwrap()[1];
        let fit = fit_in_g(&w.eval(&f).unwrap(), 3, 8, &f);
        assert_eq!(fit.value(), Some(w));
    }
}
