//! Equivariant cohomology of P1 x P1 at the antipodal specialization of the torus weights.
//!
//! Elements are written in the fixed ordered basis `{1, H1, H2, H1H2}` with
//! `H1^2 = lambda^2` and `H2^2 = mu^2`. The pairing is the one twisted by the
//! Euler class of `O(-2,-2)`.

use crate::error::{Error, Result};
use crate::exactseries::scalar::{self, int, Scalar};
use crate::exactseries::{Axis, BiSeries};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// Coordinates of a constant class in the basis `{1, H1, H2, H1H2}`.
pub type Coh4 = [Scalar; 4];

/// Generic values of the two equivariant parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl Params {
    pub fn new(lambda: Scalar, mu: Scalar) -> Result<Self> {
        let bad = |what: &str| Err(Error::InvalidConfig(format!("{what} must be nonzero")));
        if lambda.is_zero() {
            return bad("lambda");
        }
        if mu.is_zero() {
            return bad("mu");
        }
        if (&lambda + &mu).is_zero() {
            return bad("lambda + mu");
        }
        if (&lambda - &mu).is_zero() {
            return bad("lambda - mu");
        }
        Ok(Params { lambda, mu })
    }

    pub fn from_ints(l: i64, m: i64) -> Result<Self> {
        Self::new(int(l), int(m))
    }

    pub fn l2(&self) -> Scalar {
        &self.lambda * &self.lambda
    }

    pub fn m2(&self) -> Scalar {
        &self.mu * &self.mu
    }

    /// Parameters with the two factors exchanged.
    pub fn swapped(&self) -> Params {
        Params { lambda: self.mu.clone(), mu: self.lambda.clone() }
    }

    /// Both parameters multiplied by `t`.
    pub fn scaled(&self, t: &Scalar) -> Params {
        Params { lambda: &self.lambda * t, mu: &self.mu * t }
    }
}

/// One of the four torus-fixed points, labelled by the signs `(-1)^alpha`, `(-1)^beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sector {
    pub alpha: u8,
    pub beta: u8,
}

impl Sector {
    pub const ALL: [Sector; 4] =
        [Sector { alpha: 0, beta: 0 }, Sector { alpha: 0, beta: 1 }, Sector { alpha: 1, beta: 0 }, Sector { alpha: 1, beta: 1 }];

    pub fn new(alpha: u8, beta: u8) -> Self {
        Sector { alpha: alpha & 1, beta: beta & 1 }
    }

    pub fn index(self) -> usize {
        (2 * self.alpha + self.beta) as usize
    }

    /// `(-1)^alpha * lambda`.
    pub fn h1(self, p: &Params) -> Scalar {
        if self.alpha == 0 { p.lambda.clone() } else { -p.lambda.clone() }
    }

    /// `(-1)^beta * mu`.
    pub fn h2(self, p: &Params) -> Scalar {
        if self.beta == 0 { p.mu.clone() } else { -p.mu.clone() }
    }

    pub fn label(self) -> String {
        format!("{}{}", self.alpha, self.beta)
    }
}

/// Product of constant classes.
pub fn mul4(p: &Params, a: &Coh4, b: &Coh4) -> Coh4 {
    let (l2, m2) = (p.l2(), p.m2());
    [
        &a[0] * &b[0] + &l2 * &a[1] * &b[1] + &m2 * &a[2] * &b[2] + &l2 * &m2 * &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &m2 * (&a[2] * &b[3] + &a[3] * &b[2]),
        &a[0] * &b[2] + &a[2] * &b[0] + &l2 * (&a[1] * &b[3] + &a[3] * &b[1]),
        &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1],
    ]
}

pub fn basis4(i: usize) -> Coh4 {
    let mut v: Coh4 = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    v[i] = Scalar::one();
    v
}

/// The pairing matrix in the ordered basis.
pub fn pairing_matrix(p: &Params) -> [[Scalar; 4]; 4] {
    let pre = (int(2) * (p.l2() - p.m2())).recip();
    let z = Scalar::zero();
    let raw = [
        [z.clone(), int(1), int(-1), z.clone()],
        [int(1), z.clone(), z.clone(), -p.l2()],
        [int(-1), z.clone(), z.clone(), p.m2()],
        [z.clone(), -p.l2(), p.m2(), z],
    ];
    raw.map(|row| row.map(|x| x * &pre))
}

pub fn pairing4(p: &Params, v: &Coh4, w: &Coh4) -> Scalar {
    let eta = pairing_matrix(p);
    let mut s = Scalar::zero();
    for i in 0..4 {
        for j in 0..4 {
            if !eta[i][j].is_zero() {
                s += &v[i] * &eta[i][j] * &w[j];
            }
        }
    }
    s
}

/// The classical idempotent of a sector.
pub fn idempotent(p: &Params, s: Sector) -> Coh4 {
    let (h1, h2) = (s.h1(p), s.h2(p));
    let q = scalar::frac(1, 4);
    [q.clone(), &q / &h1, &q / &h2, &q / (&h1 * &h2)]
}

/// Dual basis with respect to the pairing: `<e_i, dual_j> = delta_ij`.
pub fn dual_basis(p: &Params) -> [Coh4; 4] {
    let (l2, m2) = (p.l2(), p.m2());
    let m2_ = int(-2);
    let z = Scalar::zero;
    [
        [z(), &m2_ * &m2, &m2_ * &l2, z()],
        [&m2_ * &m2, z(), z(), m2_.clone()],
        [&m2_ * &l2, z(), z(), m2_.clone()],
        [z(), m2_.clone(), m2_.clone(), z()],
    ]
}

/// A class with series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CohElem {
    pub c: [BiSeries; 4],
}

impl CohElem {
    pub fn zero(t: u32) -> Self {
        CohElem { c: std::array::from_fn(|_| BiSeries::zero(t)) }
    }

    pub fn from_const(t: u32, v: &Coh4) -> Self {
        CohElem { c: std::array::from_fn(|i| BiSeries::constant(t, v[i].clone())) }
    }

    pub fn basis(t: u32, i: usize) -> Self {
        Self::from_const(t, &basis4(i))
    }

    pub fn trunc(&self) -> u32 {
        self.c[0].trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|s| s.is_zero())
    }

    pub fn scale_series(&self, s: &BiSeries) -> Self {
        CohElem { c: std::array::from_fn(|i| &self.c[i] * s) }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        CohElem { c: std::array::from_fn(|i| self.c[i].scale(k)) }
    }

    pub fn mul(&self, p: &Params, o: &Self) -> Self {
        let (l2, m2) = (p.l2(), p.m2());
        let (a, b) = (&self.c, &o.c);
        let pr = |i: usize, j: usize| &a[i] * &b[j];
        CohElem {
            c: [
                &(&pr(0, 0) + &pr(1, 1).scale(&l2)) + &(&pr(2, 2).scale(&m2) + &pr(3, 3).scale(&(&l2 * &m2))),
                &(&pr(0, 1) + &pr(1, 0)) + &(&pr(2, 3) + &pr(3, 2)).scale(&m2),
                &(&pr(0, 2) + &pr(2, 0)) + &(&pr(1, 3) + &pr(3, 1)).scale(&l2),
                &(&pr(0, 3) + &pr(3, 0)) + &(&pr(1, 2) + &pr(2, 1)),
            ],
        }
    }

    /// Product with a constant class.
    pub fn mul_const(&self, p: &Params, v: &Coh4) -> Self {
        self.mul(p, &CohElem::from_const(self.trunc(), v))
    }

    pub fn euler_d(&self, axis: Axis) -> Self {
        CohElem { c: std::array::from_fn(|i| self.c[i].euler_d(axis)) }
    }

    pub fn swap_q(&self) -> Self {
        CohElem { c: std::array::from_fn(|i| self.c[i].swap()) }
    }

    pub fn truncate(&self, t: u32) -> Self {
        CohElem { c: std::array::from_fn(|i| self.c[i].truncate(t)) }
    }

    pub fn pairing(&self, p: &Params, o: &Self) -> BiSeries {
        let eta = pairing_matrix(p);
        let mut s = BiSeries::zero(self.trunc());
        for i in 0..4 {
            for j in 0..4 {
                if !eta[i][j].is_zero() {
                    s += &(&self.c[i] * &o.c[j]).scale(&eta[i][j]);
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.c.iter().map(|s| s.to_json()).collect())
    }
}

impl<'a> Add<&'a CohElem> for &'a CohElem {
    type Output = CohElem;
    fn add(self, o: &CohElem) -> CohElem {
        CohElem { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl<'a> Sub<&'a CohElem> for &'a CohElem {
    type Output = CohElem;
    fn sub(self, o: &CohElem) -> CohElem {
        CohElem { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Neg for &CohElem {
    type Output = CohElem;
    fn neg(self) -> CohElem {
        CohElem { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::frac;

    fn p() -> Params {
        Params::from_ints(3, 5).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let p = p();
        let den = int(2) * (p.l2() - p.m2());
        assert_eq!(pairing4(&p, &basis4(0), &basis4(1)), den.recip());
        assert_eq!(pairing4(&p, &basis4(0), &basis4(0)), int(0));
        assert_eq!(pairing4(&p, &basis4(1), &basis4(3)), -p.l2() / den);
    }

    #[test]
    fn pairing_is_the_twisted_integral() {
        // <v,w> = sum over fixed points of v w / (e(T) * (-2H1-2H2)).
        let p = p();
        for i in 0..4 {
            for j in 0..4 {
                let prod = mul4(&p, &basis4(i), &basis4(j));
                let mut want = Scalar::zero();
                for s in Sector::ALL {
                    let (h1, h2) = (s.h1(&p), s.h2(&p));
                    let val = &prod[0] + &prod[1] * &h1 + &prod[2] * &h2 + &prod[3] * &h1 * &h2;
                    let euler = int(4) * &h1 * &h2 * int(-2) * (&h1 + &h2);
                    want += val / euler;
                }
                assert_eq!(pairing4(&p, &basis4(i), &basis4(j)), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn classical_relations() {
        let p = p();
        assert_eq!(mul4(&p, &basis4(1), &basis4(1)), [p.l2(), int(0), int(0), int(0)]);
        assert_eq!(mul4(&p, &basis4(1), &basis4(2)), basis4(3));
        assert_eq!(mul4(&p, &basis4(3), &basis4(3)), [p.l2() * p.m2(), int(0), int(0), int(0)]);
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        let p = p();
        let mut sum: Coh4 = std::array::from_fn(|_| Scalar::zero());
        for s in Sector::ALL {
            let e = idempotent(&p, s);
            for i in 0..4 {
                sum[i] += &e[i];
            }
            for t in Sector::ALL {
                let prod = mul4(&p, &e, &idempotent(&p, t));
                let want = if s == t { e.clone() } else { std::array::from_fn(|_| Scalar::zero()) };
                assert_eq!(prod, want);
            }
        }
        assert_eq!(sum, basis4(0));
        let s01 = Sector::new(0, 1);
        let e = idempotent(&p, s01);
        assert_eq!(mul4(&p, &basis4(1), &e), e.clone().map(|x| x * &p.lambda));
        assert_eq!(mul4(&p, &basis4(2), &e), e.map(|x| x * -&p.mu));
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        let p = Params::new(frac(2, 3), int(-7)).unwrap();
        let d = dual_basis(&p);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { int(1) } else { int(0) };
                assert_eq!(pairing4(&p, &basis4(i), &d[j]), want);
            }
        }
    }

    #[test]
    fn frobenius_compatibility() {
        let p = p();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (u, v, w) = (basis4(i), basis4(j), basis4(k));
                    assert_eq!(
                        pairing4(&p, &mul4(&p, &u, &v), &w),
                        pairing4(&p, &u, &mul4(&p, &v, &w))
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(Params::from_ints(0, 5).is_err());
        assert!(Params::from_ints(3, -3).is_err());
        assert!(Params::from_ints(4, 4).is_err());
    }

    #[test]
    fn series_product_matches_constant_product() {
        let p = p();
        let a = [int(1), int(2), int(-1), frac(1, 2)];
        let b = [int(0), int(3), int(1), int(5)];
        let got = CohElem::from_const(2, &a).mul(&p, &CohElem::from_const(2, &b));
        assert_eq!(got, CohElem::from_const(2, &mul4(&p, &a, &b)));
    }
}
