//! Polynomials in a formal variable `X` with series coefficients.

use super::series::BiSeries;
use super::scalar::Scalar;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct XPoly {
    trunc: u32,
    /// `coeffs[j]` multiplies `X^j`; trailing zero coefficients are trimmed.
    coeffs: Vec<BiSeries>,
}

impl XPoly {
    pub fn zero(trunc: u32) -> Self {
        XPoly { trunc, coeffs: Vec::new() }
    }

    pub fn constant(s: BiSeries) -> Self {
        Self::from_coeffs(s.trunc(), vec![s])
    }

    pub fn from_coeffs(trunc: u32, coeffs: Vec<BiSeries>) -> Self {
        let mut p = XPoly { trunc, coeffs };
        p.trim();
        p
    }

    /// The variable itself.
    pub fn x(trunc: u32) -> Self {
        Self::from_coeffs(trunc, vec![BiSeries::zero(trunc), BiSeries::one(trunc)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> BiSeries {
        self.coeffs.get(j).cloned().unwrap_or_else(|| BiSeries::zero(self.trunc))
    }

    pub fn coeffs(&self) -> &[BiSeries] {
        &self.coeffs
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::from_coeffs(self.trunc, self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    pub fn mul_series(&self, s: &BiSeries) -> Self {
        Self::from_coeffs(self.trunc, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Formal derivative in `X`.
    pub fn d_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&Scalar::from_integer((j as i64).into())))
            .collect();
        Self::from_coeffs(self.trunc, coeffs)
    }

    /// Series coefficients of `X^0, X^1, ...`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    /// Substitute a series for `X` (Horner).
    pub fn eval(&self, x: &BiSeries) -> BiSeries {
        let mut acc = BiSeries::zero(self.trunc);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        XPoly::from_coeffs(self.trunc, (0..n).map(|j| &self.coeff(j) + &o.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn sub(self, o: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        XPoly::from_coeffs(self.trunc, (0..n).map(|j| &self.coeff(j) - &o.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        if self.is_zero() || o.is_zero() {
            return XPoly::zero(self.trunc);
        }
        let mut c = vec![BiSeries::zero(self.trunc); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        XPoly::from_coeffs(self.trunc, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::int;

    #[test]
    fn derivative_rules() {
        let t = 3;
        let x = XPoly::x(t);
        assert_eq!(x.d_x(), XPoly::constant(BiSeries::one(t)));
        let p1 = BiSeries::from_fn(t, |a, b| int((a + b + 1) as i64));
        let f = (&x * &x).mul_series(&p1);
        assert_eq!(f.d_x(), x.mul_series(&p1).scale(&int(2)));
        assert!(XPoly::constant(p1.clone()).d_x().is_zero());
        assert_eq!(f.eval(&BiSeries::q1(t)), &(&BiSeries::q1(t) * &BiSeries::q1(t)) * &p1);
    }
}
