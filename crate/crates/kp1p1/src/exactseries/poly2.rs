//! Sparse polynomials over the rationals in two variables, written `M` and `L`.

use super::scalar::{self, Scalar};
use super::series::BiSeries;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(a: u32, b: u32, c: Scalar) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    /// The variable `M`.
    pub fn m() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    /// The variable `L`.
    pub fn l() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    /// `a*M + b*L + c`.
    pub fn linear(a: Scalar, b: Scalar, c: Scalar) -> Self {
        let mut p = Self::monomial(1, 0, a);
        p = &p + &Self::monomial(0, 1, b);
        &p + &Self::constant(c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Scalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn d_m(&self) -> Self {
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                p.add_term((a - 1, b), c * Scalar::from_integer(a.into()));
            }
        }
        p
    }

    pub fn d_l(&self) -> Self {
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                p.add_term((a, b - 1), c * Scalar::from_integer(b.into()));
            }
        }
        p
    }

    /// `[[a, b, "c"], ...]` for the terms `c M^a L^b`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(&(a, b), c)| serde_json::json!([a, b, scalar::to_text(c)])).collect(),
        )
    }

    /// Numerical value at rational `M`, `L`.
    pub fn eval(&self, m: &Scalar, l: &Scalar) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (&(a, b), c)| acc + c * scalar::pow(m, a) * scalar::pow(l, b))
    }

    /// Substitute series for `M` and `L`.
    pub fn eval_series(&self, m: &BiSeries, l: &BiSeries) -> BiSeries {
        let t = m.trunc();
        let mut out = BiSeries::zero(t);
        if self.is_zero() {
            return out;
        }
        let da = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let db = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut mp = vec![BiSeries::one(t)];
        for i in 1..=da as usize {
            mp.push(&mp[i - 1] * m);
        }
        let mut lp = vec![BiSeries::one(t)];
        for i in 1..=db as usize {
            lp.push(&lp[i - 1] * l);
        }
        // Group by the power of L so that each L^b is multiplied once.
        let mut by_b: BTreeMap<u32, BiSeries> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let e = by_b.entry(b).or_insert_with(|| BiSeries::zero(t));
            *e += &mp[a as usize].scale(c);
        }
        for (b, s) in by_b {
            out += &(&s * &lp[b as usize]);
        }
        out
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, -c.clone());
        }
        p
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                p.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| format!("({})*M^{}*L^{}", scalar::to_text(c), a, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::int;

    #[test]
    fn arithmetic_and_derivatives() {
        let p = &(&Poly2::m() + &Poly2::l()) * &(&Poly2::m() - &Poly2::l());
        assert_eq!(p.coeff(2, 0), int(1));
        assert_eq!(p.coeff(1, 1), int(0));
        assert_eq!(p.coeff(0, 2), int(-1));
        assert_eq!(p.d_m(), Poly2::m().scale(&int(2)));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&int(3), &int(1)), int(8));
    }

    #[test]
    fn series_substitution_matches_pointwise_products() {
        let m = BiSeries::from_fn(4, |a, b| int((a + 2 * b + 1) as i64));
        let l = BiSeries::from_fn(4, |a, b| int((3 * a + b) as i64 - 2));
        let p = &Poly2::m().pow(2) + &(&Poly2::l() * &Poly2::m()).scale(&int(-3));
        let want = &(&m * &m) - &(&(&l * &m)).scale(&int(3));
        assert_eq!(p.eval_series(&m, &l), want);
    }
}
