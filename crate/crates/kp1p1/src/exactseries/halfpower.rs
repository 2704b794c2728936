//! Symbolic half-integer powers of a series.
//!
//! The square root of a radicand is never formed. A value is a rational
//! coefficient series times `base^(half_exponent / 2)`, and only values with an
//! even exponent may be turned back into a plain [`BiSeries`].

use super::series::BiSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HalfPowerSeries {
    pub base: BiSeries,
    pub half_exponent: i32,
    pub coefficient: BiSeries,
}

impl HalfPowerSeries {
    pub fn new(base: BiSeries, half_exponent: i32) -> Self {
        let t = base.trunc();
        HalfPowerSeries { base, half_exponent, coefficient: BiSeries::one(t) }
    }

    pub fn with_coefficient(mut self, c: BiSeries) -> Self {
        self.coefficient = c;
        self
    }

    pub fn is_even(&self) -> bool {
        self.half_exponent % 2 == 0
    }

    /// Product of two values sharing the same radicand.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Other("half powers of different radicands".into()));
        }
        Ok(HalfPowerSeries {
            base: self.base.clone(),
            half_exponent: self.half_exponent + other.half_exponent,
            coefficient: self.coefficient.try_mul(&other.coefficient)?,
        })
    }

    /// Collapse to a rational series; fails while the exponent is odd.
    pub fn to_series(&self) -> Result<BiSeries> {
        if !self.is_even() {
            return Err(Error::Other(format!("odd half exponent {}", self.half_exponent)));
        }
        let e = self.half_exponent / 2;
        let p = if e >= 0 { self.base.pow(e as u32) } else { self.base.invert()?.pow((-e) as u32) };
        self.coefficient.try_mul(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::int;

    #[test]
    fn halves_combine_to_rational_powers() {
        let base = &BiSeries::constant(4, int(2)) + &BiSeries::q1(4);
        let h = HalfPowerSeries::new(base.clone(), 1);
        assert!(h.to_series().is_err());
        let sq = h.mul(&h).unwrap();
        assert_eq!(sq.to_series().unwrap(), base);
        let inv = HalfPowerSeries::new(base.clone(), -2).mul(&HalfPowerSeries::new(base, 2)).unwrap();
        assert_eq!(inv.to_series().unwrap(), BiSeries::one(4));
    }
}
