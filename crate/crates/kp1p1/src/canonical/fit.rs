//! Membership fits: find a polynomial `P(M, L)` of degree `<= n` with
//! `series * N^m = P(M, L)` to the truncation of the series.

use super::frame::CanonicalFrame;
use super::sectorfn::SectorFn;
use crate::exactseries::{BiSeries, Poly2, Scalar};
use num_traits::Zero;
use serde::Serialize;

/// Size of the exact linear system behind a fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
}

impl Certificate {
    /// Full column rank with at least a quarter more equations than unknowns.
    pub fn overdetermined(&self) -> bool {
        self.rank == self.unknowns && 4 * self.equations >= 5 * self.unknowns
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitOutcome {
    Fitted { value: SectorFn, certificate: Certificate },
    /// The truncation is too shallow to pin down every coefficient.
    Underdetermined(Certificate),
    /// No polynomial of the requested shape reproduces the series.
    Inconsistent(Certificate),
}

impl FitOutcome {
    pub fn certificate(&self) -> Certificate {
        match self {
            FitOutcome::Fitted { certificate, .. } => *certificate,
            FitOutcome::Underdetermined(c) | FitOutcome::Inconsistent(c) => *c,
        }
    }

    /// A fit that succeeded with certified overdetermination.
    pub fn certified(&self) -> bool {
        matches!(self, FitOutcome::Fitted { certificate, .. } if certificate.overdetermined())
    }

    pub fn value(&self) -> Option<&SectorFn> {
        match self {
            FitOutcome::Fitted { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FitOutcome::Fitted { certificate, .. } if certificate.overdetermined() => "fitted",
            FitOutcome::Fitted { .. } => "fitted (margin below 25%)",
            FitOutcome::Underdetermined(_) => "underdetermined",
            FitOutcome::Inconsistent(_) => "inconsistent",
        }
    }
}

/// Smallest truncation giving a 25% surplus of equations over the unknowns of `G_{m,n}`.
pub fn required_trunc(n: u32) -> u32 {
    let unknowns = ((n + 1) * (n + 2) / 2) as usize;
    (0u32..).find(|d| 4 * ((d + 1) * (d + 2) / 2) as usize >= 5 * unknowns).unwrap()
}

/// Shifted monomials `(M - h1)^a (L - h2)^b`, `a + b <= n`, as series. `M - h1` is
/// divisible by `q1` and `L - h2` by `q2`, so the shifted monomial `(a, b)` starts at
/// `q1^a q2^b` with a nonzero coefficient.
fn shifted_monomials(f: &CanonicalFrame, n: u32) -> Vec<((u32, u32), BiSeries)> {
    let t = f.trunc();
    let dm = &f.m - &BiSeries::constant(t, f.m.constant_term().clone());
    let dl = &f.l - &BiSeries::constant(t, f.l.constant_term().clone());
    let mut mp = vec![BiSeries::one(t)];
    let mut lp = vec![BiSeries::one(t)];
    for i in 1..=n as usize {
        mp.push(&mp[i - 1] * &dm);
        lp.push(&lp[i - 1] * &dl);
    }
    let mut out = Vec::new();
    for deg in 0..=n {
        for b in 0..=deg {
            let a = deg - b;
            out.push(((a, b), &mp[a as usize] * &lp[b as usize]));
        }
    }
    out
}

/// Expand `sum c_ab (M - h1)^a (L - h2)^b` into the monomials of `M`, `L`.
fn unshift(coeffs: &[((u32, u32), Scalar)], h1: &Scalar, h2: &Scalar) -> Poly2 {
    let dm = &Poly2::m() - &Poly2::constant(h1.clone());
    let dl = &Poly2::l() - &Poly2::constant(h2.clone());
    let mut out = Poly2::zero();
    for ((a, b), c) in coeffs {
        if c.is_zero() {
            continue;
        }
        out = &out + &(&dm.pow(*a) * &dl.pow(*b)).scale(c);
    }
    out
}

/// The linear system is triangular in the shifted basis: unknown `(a, b)` is solved
/// from the coefficient of `q1^a q2^b` once all unknowns below it are known. The rank is
/// the number of unknowns whose pivot lies inside the truncation, and consistency is
/// decided by checking every remaining equation.
pub fn fit_in_g(series: &BiSeries, m: u32, n: u32, f: &CanonicalFrame) -> FitOutcome {
    let t = f.trunc();
    let target = series * &f.n.pow(m);
    let basis = shifted_monomials(f, n);
    let equations = ((t + 1) * (t + 2) / 2) as usize;
    let unknowns = basis.len();
    let rank = basis.iter().filter(|((a, b), _)| a + b <= t).count();
    let mut residual = target;
    let mut coeffs = Vec::new();
    for ((a, b), s) in &basis {
        if a + b > t {
            break;
        }
        let c = residual.coeff(*a, *b) / s.coeff(*a, *b);
        residual = &residual - &s.scale(&c);
        coeffs.push(((*a, *b), c));
    }
    let certificate = Certificate { equations, unknowns, rank };
    if !residual.is_zero() {
        return FitOutcome::Inconsistent(certificate);
    }
    if rank < unknowns {
        return FitOutcome::Underdetermined(certificate);
    }
    let num = unshift(&coeffs, f.m.constant_term(), f.l.constant_term());
    FitOutcome::Fitted { value: SectorFn::new(num, m), certificate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::frac;
    use crate::exactseries::Axis;
    use crate::frobenius::{Params, Sector};

    fn frame(t: u32) -> CanonicalFrame {
        CanonicalFrame::new(&Params::from_ints(3, 5).unwrap(), Sector::new(0, 0), t).unwrap()
    }

    #[test]
    fn delta_is_linear() {
        let f = frame(4);
        let out = fit_in_g(&f.delta.scale(&frac(-1, 8)), 0, 3, &f);
        assert!(out.certified());
        let want = super::super::sectorfn::n_poly(&f.params);
        assert_eq!(out.value().unwrap().num, want);
    }

    #[test]
    fn derivatives_of_eigenvalues_and_log_norms() {
        let f = frame(required_trunc(6));
        for axis in [Axis::Q1, Axis::Q2] {
            assert!(fit_in_g(&f.m.euler_d(axis), 1, 4, &f).certified());
            assert!(fit_in_g(&f.l.euler_d(axis), 1, 4, &f).certified());
        }
        for ln in &f.log_norm {
            assert!(fit_in_g(ln, 2, 6, &f).certified());
        }
        assert!(matches!(fit_in_g(&f.log_norm[0], 1, 3, &f), FitOutcome::Inconsistent(_)));
    }

    #[test]
    fn shallow_truncation_is_underdetermined() {
        let f = frame(2);
        assert!(matches!(fit_in_g(&f.m, 0, 4, &f), FitOutcome::Underdetermined(_)));
    }

    #[test]
    fn required_truncation() {
        assert_eq!(required_trunc(8), 10);
        assert_eq!(required_trunc(3), 4);
    }
}
