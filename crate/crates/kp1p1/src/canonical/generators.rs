//! The auxiliary generators `X, P1, P2, P3, P4` built from the named entries.

use crate::error::{Error, Result};
use crate::exactseries::scalar::to_text;
use crate::exactseries::{Axis, BiSeries};
use crate::genus0::{ConnectionMatrices, NamedEntries};
use num_traits::Zero;
use serde_json::json;

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorBundle {
    /// `I(q1,q2) + I(q2,q1)` with `I` the lower-left entry of `A1`.
    pub i_bar: BiSeries,
    /// `I^1_22(q1,q2) + I^2_22(q2,q1)`.
    pub i_tilde: BiSeries,
    /// `i_tilde` plus its image under `q1 <-> q2`.
    pub i_tilde_sum: BiSeries,
    pub x: BiSeries,
    pub p1: BiSeries,
    pub p2: BiSeries,
    pub p3: BiSeries,
    pub p4: BiSeries,
}

impl GeneratorBundle {
    pub fn new(e: &NamedEntries) -> Result<Self> {
        let t = e.i11.trunc();
        let i_bar = &e.i11 + &e.i11.swap();
        let one_plus = &BiSeries::one(t) + &i_bar;
        let i_tilde = &e.i22_1 + &e.i22_2.swap();
        let i_tilde_sum = &i_tilde + &i_tilde.swap();
        let c = i_tilde_sum.constant_term();
        if c.is_zero() {
            return Err(Error::Other(format!("i_tilde sum has constant term {}", to_text(c))));
        }
        let p1 = one_plus.invert()?;
        let p2 = &e.i11 * &p1;
        let p3 = i_tilde_sum.invert()?;
        let p4 = &i_tilde * &p3;
        let x = one_plus.log_deriv(Axis::Both)?;
        Ok(GeneratorBundle { i_bar, i_tilde, i_tilde_sum, x, p1, p2, p3, p4 })
    }

    pub fn trunc(&self) -> u32 {
        self.x.trunc()
    }

    /// `(name, series)` pairs in the order `X, P1, P2, P3, P4`.
    pub fn named(&self) -> [(&'static str, &BiSeries); 5] {
        [("X", &self.x), ("P1", &self.p1), ("P2", &self.p2), ("P3", &self.p3), ("P4", &self.p4)]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, v) in self.named() {
            m.insert(k.into(), v.to_json());
        }
        m.insert("i_tilde_sum_constant".into(), json!(to_text(self.i_tilde_sum.constant_term())));
        serde_json::Value::Object(m)
    }
}

/// Sum of the `(0, j)` entries of `A1`, `A2` for `j = 1, 2`; equals
/// `(lambda^2 (1 - P4) + mu^2 P4) / P3`.
pub fn top_row_sum(c: &ConnectionMatrices) -> BiSeries {
    let mut acc = BiSeries::zero(c.trunc());
    for a in [&c.a1, &c.a2] {
        acc += a.get(0, 1);
        acc += a.get(0, 2);
    }
    acc
}

/// Sum of the `(3, j)` entries of `A1`, `A2` for `j = 1, 2`; equals `1 / P3`.
pub fn bottom_row_sum(c: &ConnectionMatrices) -> BiSeries {
    let mut acc = BiSeries::zero(c.trunc());
    for a in [&c.a1, &c.a2] {
        acc += a.get(3, 1);
        acc += a.get(3, 2);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::int;
    use crate::frobenius::Params;
    use crate::genus0::relations::connection_matrices;

    fn setup() -> (Params, ConnectionMatrices, GeneratorBundle) {
        let p = Params::from_ints(3, 5).unwrap();
        let c = connection_matrices(&p, 5).unwrap();
        let e = NamedEntries::compute(&p, 5).unwrap();
        (p, c, GeneratorBundle::new(&e).unwrap())
    }

    #[test]
    fn low_order_terms() {
        let (_, _, g) = setup();
        assert_eq!(g.x.coeff(0, 0), int(0));
        assert_eq!(g.x.coeff(1, 0), int(2));
        assert_eq!(g.x.coeff(0, 1), int(2));
        assert_eq!(g.p1.constant_term(), &int(1));
        assert_eq!(g.p2.constant_term(), &int(0));
        assert_eq!(g.i_tilde_sum.constant_term(), &int(2));
        assert_eq!(g.p3.constant_term(), &crate::exactseries::scalar::frac(1, 2));
    }

    #[test]
    fn euler_derivative_of_p1_is_minus_x_p1() {
        let (_, _, g) = setup();
        let lhs = g.p1.euler_d(Axis::Both);
        assert_eq!(lhs, -(&g.x * &g.p1));
    }

    #[test]
    fn p3_and_p4_reconstruct_row_sums() {
        let (p, c, g) = setup();
        assert_eq!(&bottom_row_sum(&c) * &g.p3, BiSeries::one(5));
        let one = BiSeries::one(5);
        let want = &(&one - &g.p4).scale(&p.l2()) + &g.p4.scale(&p.m2());
        assert_eq!(&top_row_sum(&c) * &g.p3, want);
    }
}
