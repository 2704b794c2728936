//! The genus-2 holomorphic anomaly check.
//!
//! `dF_2/dX = c * P3 * (<<H>>_{1,1}^2 + <<H,H>>_{1,2} [+ 2 <<H>>_{0,1} <<H>>_{2,1}])`
//! with `H = H1 + H2`, tested for two values of `c` and with or without the
//! genus-zero split.

use crate::error::Result;
use crate::exactseries::scalar::{frac, int, to_text};
use crate::exactseries::{Axis, BiSeries, Scalar, XPoly};
use crate::frobenius::pairing4;
use crate::genus0::ifunction::IFamily;
use crate::graphsum::{h1_plus_h2, GraphSum};
use serde::Serialize;

/// Whether the `g1 = 0` and `g1 = g` terms of the split sum are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Only `1 <= g1 <= g-1`.
    StableSplits,
    /// Also `2 <<H>>_{0,1} <<H>>_{g,1}`.
    WithGenusZero,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::StableSplits => "A: 1 <= g1 <= g-1",
            Convention::WithGenusZero => "B: includes g1 = 0",
        }
    }
}

/// Everything the genus-2 equation needs, as exact series.
#[derive(Clone, Debug)]
pub struct HaeInputs {
    pub x: BiSeries,
    pub p1: BiSeries,
    pub p3: BiSeries,
    pub f2: XPoly,
    pub h_g1: XPoly,
    pub hh_g1: XPoly,
    pub h_g0: BiSeries,
}

impl HaeInputs {
    pub fn compute(gs: &GraphSum<'_>, ifam: &IFamily) -> Result<Self> {
        let data = gs.data;
        let h = h1_plus_h2();
        let t = data.trunc();
        let i2 = ifam.ik.get(2).cloned().unwrap_or_else(|| crate::frobenius::CohElem::zero(t));
        let h_g0 = BiSeries::from_fn(t, |a, b| {
            let v = [i2.c[0].coeff(a, b), i2.c[1].coeff(a, b), i2.c[2].coeff(a, b), i2.c[3].coeff(a, b)];
            pairing4(&data.params, &v, &h)
        });
        Ok(HaeInputs {
            x: data.gens.x.clone(),
            p1: data.gens.p1.clone(),
            p3: data.gens.p3.clone(),
            f2: gs.correlator(2, &[])?,
            h_g1: gs.correlator(1, &[h.clone()])?,
            hh_g1: gs.correlator(1, &[h.clone(), h])?,
            h_g0,
        })
    }

    /// `<<H>>_{2,1}` from the divisor equation, `P1 (D1 + D2) F_2`.
    pub fn h_g2(&self) -> BiSeries {
        let f = self.f2.eval(&self.x);
        &self.p1 * &(&f.euler_d(Axis::Q1) + &f.euler_d(Axis::Q2))
    }

    /// The bracket without the constant, as a series.
    pub fn rhs_bracket(&self, conv: Convention) -> BiSeries {
        let h1 = self.h_g1.eval(&self.x);
        let mut s = &(&h1 * &h1) + &self.hh_g1.eval(&self.x);
        if conv == Convention::WithGenusZero {
            s = &s + &(&self.h_g0 * &self.h_g2()).scale(&int(2));
        }
        s
    }

    pub fn residual(&self, lhs: &BiSeries, constant: &Scalar, conv: Convention) -> BiSeries {
        lhs - &(&self.p3 * &self.rhs_bracket(conv)).scale(constant)
    }

    /// The stable-split identity as polynomials in `X`, before evaluation.
    pub fn formal_residual(&self, constant: &Scalar) -> XPoly {
        let rhs = &(&self.h_g1 * &self.h_g1) + &self.hh_g1;
        &self.f2.d_x() - &rhs.mul_series(&self.p3).scale(constant)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HaeRow {
    pub constant_label: &'static str,
    pub constant: String,
    pub convention: Convention,
    pub closes: bool,
    /// Lowest-degree `(d1, d2, coefficient)` of a nonzero residual.
    pub first_nonzero: Option<(u32, u32, String)>,
}

/// The constant multiplying `P3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HaeConstant {
    /// `-1/2`, as printed alongside the equation.
    Printed,
    /// `1`: the propagator's `X`-derivative is `2 P3 S S` and cutting an edge gives `1/2`.
    Propagator,
}

impl HaeConstant {
    pub const ALL: [HaeConstant; 2] = [HaeConstant::Printed, HaeConstant::Propagator];

    pub fn value(self) -> Scalar {
        match self {
            HaeConstant::Printed => frac(-1, 2),
            HaeConstant::Propagator => int(1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HaeConstant::Printed => "printed",
            HaeConstant::Propagator => "propagator",
        }
    }
}

/// Every combination of constant and convention, with `lhs = dF_2/dX` evaluated.
pub fn hae_table(inputs: &HaeInputs, lhs: &BiSeries) -> Vec<HaeRow> {
    let mut rows = Vec::new();
    for constant in HaeConstant::ALL {
        let c = constant.value();
        for conv in [Convention::StableSplits, Convention::WithGenusZero] {
            let r = inputs.residual(lhs, &c, conv);
            rows.push(HaeRow {
                constant_label: constant.label(),
                constant: to_text(&c),
                convention: conv,
                closes: r.is_zero(),
                first_nonzero: r.first_nonzero().map(|(a, b, v)| (a, b, to_text(&v))),
            });
        }
    }
    rows
}
