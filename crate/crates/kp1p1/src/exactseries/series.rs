//! Dense truncated bivariate power series in `q1, q2` with total-degree truncation.

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Which Euler operator `q_i d/dq_i` to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Q1,
    Q2,
    Both,
}

/// Truncated series `sum c_{d1,d2} q1^d1 q2^d2` with `d1 + d2 <= trunc`.
///
/// Coefficients are stored degree by degree: all exponents of total degree
/// `n` occupy a contiguous block ordered by increasing `d2`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    trunc: u32,
    c: Vec<Scalar>,
}

#[inline]
fn idx(d1: u32, d2: u32) -> usize {
    let n = (d1 + d2) as usize;
    n * (n + 1) / 2 + d2 as usize
}

fn len_for(trunc: u32) -> usize {
    let t = trunc as usize + 1;
    t * (t + 1) / 2
}

impl BiSeries {
    pub fn zero(trunc: u32) -> Self {
        BiSeries { trunc, c: vec![Scalar::zero(); len_for(trunc)] }
    }

    pub fn constant(trunc: u32, v: Scalar) -> Self {
        let mut s = Self::zero(trunc);
        s.c[0] = v;
        s
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(trunc, Scalar::one())
    }

    /// `coef * q1^d1 q2^d2`, or zero when the monomial lies beyond the truncation.
    pub fn monomial(trunc: u32, d1: u32, d2: u32, coef: Scalar) -> Self {
        let mut s = Self::zero(trunc);
        if d1 + d2 <= trunc {
            s.c[idx(d1, d2)] = coef;
        }
        s
    }

    pub fn q1(trunc: u32) -> Self {
        Self::monomial(trunc, 1, 0, Scalar::one())
    }

    pub fn q2(trunc: u32) -> Self {
        Self::monomial(trunc, 0, 1, Scalar::one())
    }

    /// Build from a coefficient function evaluated on every stored exponent.
    pub fn from_fn(trunc: u32, mut f: impl FnMut(u32, u32) -> Scalar) -> Self {
        let mut s = Self::zero(trunc);
        for n in 0..=trunc {
            for d2 in 0..=n {
                s.c[idx(n - d2, d2)] = f(n - d2, d2);
            }
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, d1: u32, d2: u32) -> Scalar {
        if d1 + d2 <= self.trunc {
            self.c[idx(d1, d2)].clone()
        } else {
            Scalar::zero()
        }
    }

    pub fn coeff_ref(&self, d1: u32, d2: u32) -> &Scalar {
        &self.c[idx(d1, d2)]
    }

    pub fn set_coeff(&mut self, d1: u32, d2: u32, v: Scalar) {
        assert!(d1 + d2 <= self.trunc, "exponent beyond truncation");
        self.c[idx(d1, d2)] = v;
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.c[0]
    }

    /// Iterate over `(d1, d2, coefficient)` in exponent-lexicographic order.
    pub fn terms(&self) -> Vec<(u32, u32, &Scalar)> {
        let mut out = Vec::new();
        for d1 in 0..=self.trunc {
            for d2 in 0..=(self.trunc - d1) {
                out.push((d1, d2, &self.c[idx(d1, d2)]));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// First nonzero coefficient in increasing total degree, if any.
    pub fn first_nonzero(&self) -> Option<(u32, u32, Scalar)> {
        for n in 0..=self.trunc {
            for d2 in 0..=n {
                let v = &self.c[idx(n - d2, d2)];
                if !v.is_zero() {
                    return Some((n - d2, d2, v.clone()));
                }
            }
        }
        None
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.first_nonzero().map(|(a, b, _)| a + b)
    }

    /// Restrict to a smaller total-degree bound.
    pub fn truncate(&self, trunc: u32) -> Self {
        let t = trunc.min(self.trunc);
        BiSeries { trunc: t, c: self.c[..len_for(t)].to_vec() }
    }

    /// Re-embed with a larger truncation label; only valid when the caller
    /// knows the missing coefficients vanish (used for exact polynomials).
    pub fn extend_with_zeros(&self, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        let m = len_for(self.trunc.min(trunc));
        s.c[..m].clone_from_slice(&self.c[..m]);
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            Err(Error::TruncationMismatch(self.trunc, other.trunc))
        } else {
            Ok(())
        }
    }

    /// Equality up to the smaller of the two truncations.
    pub fn eq_to_common(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.c[..len_for(t)] == other.c[..len_for(t)]
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        BiSeries { trunc: self.trunc, c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(BiSeries {
            trunc: self.trunc,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        })
    }

    /// Cauchy product truncated at the common bound.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let t = self.trunc;
        let mut out = Self::zero(t);
        let nz_a: Vec<(u32, u32, &Scalar)> =
            self.terms().into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
        let nz_b: Vec<(u32, u32, &Scalar)> =
            other.terms().into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
        for &(a1, a2, va) in &nz_a {
            let room = t - a1 - a2;
            for &(b1, b2, vb) in &nz_b {
                if b1 + b2 <= room {
                    out.c[idx(a1 + b1, a2 + b2)] += va * vb;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.c[0].clone();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let t = self.trunc;
        let mut out = Self::zero(t);
        out.c[0] = inv0.clone();
        // Solve a * b = 1 degree by degree: b_d = -(1/a_0) sum_{e<d} a_{d-e} b_e.
        for n in 1..=t {
            for d2 in 0..=n {
                let d1 = n - d2;
                let mut acc = Scalar::zero();
                for e1 in 0..=d1 {
                    for e2 in 0..=d2 {
                        if e1 == d1 && e2 == d2 {
                            continue;
                        }
                        let a = &self.c[idx(d1 - e1, d2 - e2)];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &out.c[idx(e1, e2)];
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                out.c[idx(d1, d2)] = -(acc * &inv0);
            }
        }
        Ok(out)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.invert()?))
    }

    /// Square root whose constant term is `branch_sign * sqrt(a_0)`.
    pub fn sqrt(&self, positive_branch: bool) -> Result<Self> {
        let c0 = &self.c[0];
        let r0 = scalar::rational_sqrt(c0).ok_or_else(|| Error::NotASquare(scalar::to_text(c0)))?;
        if r0.is_zero() {
            return Err(Error::NotASquare("0".into()));
        }
        let r0 = if positive_branch { r0 } else { -r0 };
        let t = self.trunc;
        let two_r0_inv = (r0.clone() * Scalar::from_integer(2.into())).recip();
        let mut out = Self::zero(t);
        out.c[0] = r0;
        // (r)^2 = a: 2 r_0 r_d = a_d - sum_{0<e<d} r_e r_{d-e}.
        for n in 1..=t {
            for d2 in 0..=n {
                let d1 = n - d2;
                let mut acc = self.c[idx(d1, d2)].clone();
                for e1 in 0..=d1 {
                    for e2 in 0..=d2 {
                        if (e1 == 0 && e2 == 0) || (e1 == d1 && e2 == d2) {
                            continue;
                        }
                        let x = &out.c[idx(e1, e2)];
                        let y = &out.c[idx(d1 - e1, d2 - e2)];
                        if !x.is_zero() && !y.is_zero() {
                            acc -= x * y;
                        }
                    }
                }
                out.c[idx(d1, d2)] = acc * &two_r0_inv;
            }
        }
        Ok(out)
    }

    /// `q_i d/dq_i`, or their sum for [`Axis::Both`].
    pub fn euler_d(&self, which: Axis) -> Self {
        let mut out = self.clone();
        for n in 0..=self.trunc {
            for d2 in 0..=n {
                let d1 = n - d2;
                let w = match which {
                    Axis::Q1 => d1,
                    Axis::Q2 => d2,
                    Axis::Both => n,
                };
                let k = idx(d1, d2);
                out.c[k] = &out.c[k] * Scalar::from_integer(w.into());
            }
        }
        out
    }

    /// Logarithmic Euler derivative `euler_d(a) / a`.
    pub fn log_deriv(&self, which: Axis) -> Result<Self> {
        let inv = self.invert()?;
        Ok(self.euler_d(which).mul_unchecked(&inv))
    }

    /// Plain partial derivative `d/dq_i`; the result loses one degree of accuracy.
    pub fn partial(&self, axis: Axis) -> Self {
        assert!(axis != Axis::Both, "partial derivative needs a single axis");
        let t = self.trunc.saturating_sub(1);
        let mut out = Self::zero(t);
        if self.trunc == 0 {
            return out;
        }
        for n in 0..=t {
            for d2 in 0..=n {
                let d1 = n - d2;
                let (s1, s2, f) = match axis {
                    Axis::Q1 => (d1 + 1, d2, d1 + 1),
                    _ => (d1, d2 + 1, d2 + 1),
                };
                out.c[idx(d1, d2)] = &self.c[idx(s1, s2)] * Scalar::from_integer(f.into());
            }
        }
        out
    }

    /// Exchange the roles of `q1` and `q2`.
    pub fn swap(&self) -> Self {
        BiSeries::from_fn(self.trunc, |a, b| self.c[idx(b, a)].clone())
    }

    /// Multiply by `q1^a q2^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        let mut out = Self::zero(self.trunc);
        for n in 0..=self.trunc {
            for d2 in 0..=n {
                let d1 = n - d2;
                if n + a + b <= self.trunc {
                    out.c[idx(d1 + a, d2 + b)] = self.c[idx(d1, d2)].clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.trunc);
        for _ in 0..e {
            r = r.mul_unchecked(self);
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .terms()
            .into_iter()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(a, b, v)| serde_json::json!([a, b, scalar::to_text(v)]))
            .collect();
        serde_json::json!({ "trunc": self.trunc, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Other(format!("malformed series JSON: {m}"));
        let trunc = v.get("trunc").and_then(|t| t.as_u64()).ok_or_else(|| bad("trunc"))? as u32;
        let mut s = Self::zero(trunc);
        for entry in v.get("coeffs").and_then(|c| c.as_array()).ok_or_else(|| bad("coeffs"))? {
            let a = entry.get(0).and_then(|x| x.as_u64()).ok_or_else(|| bad("d1"))? as u32;
            let b = entry.get(1).and_then(|x| x.as_u64()).ok_or_else(|| bad("d2"))? as u32;
            let c = entry
                .get(2)
                .and_then(|x| x.as_str())
                .and_then(scalar::parse)
                .ok_or_else(|| bad("coefficient"))?;
            if a + b > trunc {
                return Err(bad("exponent beyond truncation"));
            }
            s.set_coeff(a, b, c);
        }
        Ok(s)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in 0..=self.trunc {
            for d2 in 0..=n {
                let v = &self.c[idx(n - d2, d2)];
                if v.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({})", scalar::to_text(v))?;
                if n - d2 > 0 {
                    write!(f, "*q1^{}", n - d2)?;
                }
                if d2 > 0 {
                    write!(f, "*q2^{}", d2)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.trunc + 1)
    }
}

impl<'a> Add<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn add(self, o: &BiSeries) -> BiSeries {
        self.try_add(o).expect("series truncations differ")
    }
}

impl<'a> Sub<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn sub(self, o: &BiSeries) -> BiSeries {
        self.check(o).expect("series truncations differ");
        BiSeries { trunc: self.trunc, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn mul(self, o: &BiSeries) -> BiSeries {
        self.try_mul(o).expect("series truncations differ")
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        BiSeries { trunc: self.trunc, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Add for BiSeries {
    type Output = BiSeries;
    fn add(self, o: BiSeries) -> BiSeries {
        &self + &o
    }
}

impl Sub for BiSeries {
    type Output = BiSeries;
    fn sub(self, o: BiSeries) -> BiSeries {
        &self - &o
    }
}

impl Mul for BiSeries {
    type Output = BiSeries;
    fn mul(self, o: BiSeries) -> BiSeries {
        &self * &o
    }
}

impl Neg for BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        -&self
    }
}

impl AddAssign<&BiSeries> for BiSeries {
    fn add_assign(&mut self, o: &BiSeries) {
        self.check(o).expect("series truncations differ");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
}

impl SubAssign<&BiSeries> for BiSeries {
    fn sub_assign(&mut self, o: &BiSeries) {
        self.check(o).expect("series truncations differ");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::{frac, int};

    fn poly(t: u32, terms: &[(u32, u32, i64)]) -> BiSeries {
        let mut s = BiSeries::zero(t);
        for &(a, b, c) in terms {
            s.set_coeff(a, b, int(c));
        }
        s
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(5, &[(0, 0, 1), (1, 0, 1)]);
        let b = poly(5, &[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(&a * &b, poly(5, &[(0, 0, 1), (2, 0, -1)]));
    }

    #[test]
    fn multiplicative_identity() {
        let a = poly(4, &[(0, 0, 3), (1, 2, -2), (0, 4, 7)]);
        assert_eq!(&a * &BiSeries::one(4), a);
    }

    #[test]
    fn geometric_series_times_one_minus_q1() {
        let d = 7;
        let geo = BiSeries::from_fn(d, |_, b| if b == 0 { int(1) } else { int(0) });
        let one_minus = poly(d, &[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(&geo * &one_minus, BiSeries::one(d));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(BiSeries::one(3).invert().unwrap(), BiSeries::one(3));
        let a = poly(6, &[(0, 0, 1), (1, 0, 1)]);
        let inv = a.invert().unwrap();
        assert_eq!(&a * &inv, BiSeries::one(6));
        assert_eq!(inv.coeff(3, 0), int(-1));
        assert_eq!(BiSeries::constant(2, int(2)).invert().unwrap(), BiSeries::constant(2, frac(1, 2)));
        assert_eq!(BiSeries::q1(3).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn sqrt_examples() {
        let sq = poly(6, &[(0, 0, 1), (1, 0, 2), (2, 0, 1)]);
        assert_eq!(sq.sqrt(true).unwrap(), poly(6, &[(0, 0, 1), (1, 0, 1)]));
        assert_eq!(BiSeries::constant(3, int(4)).sqrt(true).unwrap(), BiSeries::constant(3, int(2)));
        let a = poly(6, &[(0, 0, 1), (1, 0, 1)]);
        let r = a.sqrt(true).unwrap();
        assert_eq!(&r * &r, a);
        assert_eq!(r.coeff(1, 0), frac(1, 2));
        assert_eq!(r.coeff(2, 0), frac(-1, 8));
        assert!(BiSeries::constant(2, int(2)).sqrt(true).is_err());
        assert_eq!(a.sqrt(false).unwrap(), -&r);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(BiSeries::q1(3).euler_d(Axis::Q1), BiSeries::q1(3));
        assert!(BiSeries::constant(3, int(9)).euler_d(Axis::Both).is_zero());
        let m = BiSeries::monomial(4, 2, 1, int(1));
        assert_eq!(m.euler_d(Axis::Both), BiSeries::monomial(4, 2, 1, int(3)));
    }

    #[test]
    fn log_deriv_examples() {
        let a = poly(6, &[(0, 0, 1), (1, 0, 1), (0, 1, 1)]);
        let l = a.log_deriv(Axis::Both).unwrap();
        assert_eq!(&l * &a, a.euler_d(Axis::Both));
        assert_eq!(l.coeff(1, 0), int(1));
        assert_eq!(l.coeff(1, 1), int(-2));
        assert!(BiSeries::one(4).log_deriv(Axis::Both).unwrap().is_zero());
        assert!(BiSeries::constant(4, int(5)).log_deriv(Axis::Both).unwrap().is_zero());
    }

    #[test]
    fn mismatched_truncations_are_rejected() {
        assert_eq!(BiSeries::one(3).try_mul(&BiSeries::one(4)), Err(Error::TruncationMismatch(3, 4)));
    }

    #[test]
    fn json_round_trip_is_lexicographic() {
        let a = poly(3, &[(0, 2, 5), (1, 0, -1), (0, 0, 2)]);
        let j = a.to_json();
        assert_eq!(j["coeffs"][0][1], 0);
        assert_eq!(j["coeffs"][1], serde_json::json!([0, 2, "5"]));
        assert_eq!(BiSeries::from_json(&j).unwrap(), a);
    }

    #[test]
    fn swap_and_shift_and_partial() {
        let a = poly(4, &[(1, 2, 3)]);
        assert_eq!(a.swap(), poly(4, &[(2, 1, 3)]));
        assert_eq!(a.shift(1, 0), poly(4, &[(2, 2, 3)]));
        assert_eq!(a.partial(Axis::Q2), poly(3, &[(1, 1, 6)]));
    }
}
