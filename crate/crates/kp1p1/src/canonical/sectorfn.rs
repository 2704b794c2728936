//! Exact elements of the graded ring: a polynomial in `M`, `L` over a power of
//! `N = lambda^2 L + mu^2 M`, with `q_i d/dq_i` acting through implicit differentiation.

use super::frame::CanonicalFrame;
use crate::exactseries::scalar::{frac, Scalar};
use crate::exactseries::{Axis, BiSeries, Poly2};
use crate::frobenius::Params;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct SectorFn {
    pub num: Poly2,
    pub npow: u32,
}

/// `N` as a polynomial.
pub fn n_poly(p: &Params) -> Poly2 {
    Poly2::linear(p.m2(), p.l2(), Scalar::from_integer(0.into()))
}

/// Numerators `(a_i, b_i)` with `D_i M = a_i / N`, `D_i L = b_i / N`.
fn derivative_numerators(p: &Params) -> [(Poly2, Poly2); 2] {
    let half = frac(1, 2);
    let e1 = &Poly2::m().pow(2) - &Poly2::constant(p.l2());
    let e2 = &Poly2::l().pow(2) - &Poly2::constant(p.m2());
    let lm = &Poly2::m() * &Poly2::l();
    let cross = (&e1 * &e2).scale(&half);
    let d1m = (&e1 * &(&lm + &Poly2::constant(p.m2()))).scale(&half);
    let d2l = (&e2 * &(&lm + &Poly2::constant(p.l2()))).scale(&half);
    [(d1m, cross.clone()), (cross, d2l)]
}

impl SectorFn {
    pub fn poly(num: Poly2) -> Self {
        SectorFn { num, npow: 0 }
    }

    pub fn new(num: Poly2, npow: u32) -> Self {
        SectorFn { num, npow }
    }

    pub fn m() -> Self {
        Self::poly(Poly2::m())
    }

    pub fn l() -> Self {
        Self::poly(Poly2::l())
    }

    /// Rewrite over `N^k` with `k >= npow`.
    pub fn raise(&self, p: &Params, k: u32) -> Poly2 {
        &self.num * &n_poly(p).pow(k - self.npow)
    }

    pub fn add(&self, p: &Params, o: &Self) -> Self {
        let k = self.npow.max(o.npow);
        SectorFn { num: &self.raise(p, k) + &o.raise(p, k), npow: k }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SectorFn { num: &self.num * &o.num, npow: self.npow + o.npow }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        SectorFn { num: self.num.scale(k), npow: self.npow }
    }

    /// `q_i d/dq_i`, exact.
    pub fn euler_d(&self, p: &Params, axis: Axis) -> Self {
        let n = n_poly(p);
        let (a, b) = match axis {
            Axis::Q1 => derivative_numerators(p)[0].clone(),
            Axis::Q2 => derivative_numerators(p)[1].clone(),
            Axis::Both => {
                let [(a1, b1), (a2, b2)] = derivative_numerators(p);
                (&a1 + &a2, &b1 + &b2)
            }
        };
        // D N = (mu^2 a + lambda^2 b) / N.
        let dn = &a.scale(&p.m2()) + &b.scale(&p.l2());
        let chain = &(&self.num.d_m() * &a) + &(&self.num.d_l() * &b);
        let k = Scalar::from_integer(self.npow.into());
        let num = &(&chain * &n) - &(&self.num * &dn).scale(&k);
        SectorFn { num, npow: self.npow + 2 }
    }

    pub fn eval(&self, f: &CanonicalFrame) -> Result<BiSeries> {
        let v = self.num.eval_series(&f.m, &f.l);
        if self.npow == 0 {
            return Ok(v);
        }
        Ok(&v * &f.n.pow(self.npow).invert()?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "numerator_in_M_L": self.num.to_json(), "power_of_N": self.npow })
    }

    /// Value at `q = 0`, where `M`, `L` are the sector's classical weights.
    pub fn eval_at_origin(&self, f: &CanonicalFrame) -> Scalar {
        let (m, l) = (f.m.constant_term(), f.l.constant_term());
        let n = n_poly(&f.params).eval(m, l);
        self.num.eval(m, l) / crate::exactseries::scalar::pow(&n, self.npow)
    }
}
