//! The twisted I-function and its Picard-Fuchs equations.

use crate::error::{Error, Result};
use crate::exactseries::scalar::{factorial, int, Scalar};
use crate::exactseries::{Axis, BiSeries};
use crate::frobenius::{basis4, mul4, CohElem, Coh4, Params};
use num_traits::{One, Zero};

/// `I = z * sum_k I_k z^{-k}` truncated at `k <= kmax` and total q-degree `trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct IFamily {
    pub params: Params,
    pub trunc: u32,
    pub ik: Vec<CohElem>,
}

impl IFamily {
    pub fn kmax(&self) -> usize {
        self.ik.len() - 1
    }
}

/// `(2n-1)! / ((d1!)^2 (d2!)^2)` with `n = d1 + d2 > 0`.
pub fn scalar_factor(d1: u32, d2: u32) -> Scalar {
    let n = d1 + d2;
    assert!(n > 0, "no factor in degree zero");
    let f1 = factorial(d1);
    let f2 = factorial(d2);
    Scalar::new(factorial(2 * n - 1), &f1 * &f1 * &f2 * &f2)
}

/// Polynomial in `w` with class coefficients, truncated below `w^len`.
fn wpoly_mul(p: &Params, a: &[Coh4], b: &[Coh4], len: usize) -> Vec<Coh4> {
    let mut out: Vec<Coh4> = vec![std::array::from_fn(|_| Scalar::zero()); len];
    for (i, x) in a.iter().enumerate() {
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            let pr = mul4(p, x, y);
            for t in 0..4 {
                out[i + j][t] += &pr[t];
            }
        }
    }
    out
}

/// `(1 + c*X*w)^sign` expanded to `w^{len-1}`.
fn linear_factor(p: &Params, x: &Coh4, c: &Scalar, invert: bool, len: usize) -> Vec<Coh4> {
    let step: Coh4 = std::array::from_fn(|i| if invert { -(&x[i] * c) } else { &x[i] * c });
    let mut out = vec![basis4(0)];
    if invert {
        for j in 1..len {
            let next = mul4(p, &out[j - 1], &step);
            out.push(next);
        }
    } else if len > 1 {
        out.push(step);
    }
    out.truncate(len);
    out
}

/// The hypergeometric bracket of degree `(d1, d2)` as a polynomial in `w = 1/z`.
fn bracket(p: &Params, d1: u32, d2: u32, len: usize) -> Vec<Coh4> {
    let n = d1 + d2;
    let h1 = basis4(1);
    let h2 = basis4(2);
    let hsum: Coh4 = [int(0), int(1), int(1), int(0)];
    let mut f = vec![basis4(0)];
    for k in 1..2 * n {
        f = wpoly_mul(p, &f, &linear_factor(p, &hsum, &Scalar::new(2.into(), k.into()), false, len), len);
    }
    for k in 1..=d1 {
        f = wpoly_mul(p, &f, &linear_factor(p, &h1, &Scalar::new(2.into(), k.into()), true, len), len);
    }
    for k in 1..=d2 {
        f = wpoly_mul(p, &f, &linear_factor(p, &h2, &Scalar::new(2.into(), k.into()), true, len), len);
    }
    f
}

/// Compute `I_0, ..., I_kmax`.
pub fn i_function(p: &Params, trunc: u32, kmax: usize) -> IFamily {
    let mut ik: Vec<CohElem> = (0..=kmax).map(|_| CohElem::zero(trunc)).collect();
    ik[0] = CohElem::basis(trunc, 0);
    let two_hsum: Coh4 = [int(0), int(2), int(2), int(0)];
    for n in 1..=trunc {
        for d2 in 0..=n {
            let d1 = n - d2;
            let c = scalar_factor(d1, d2);
            let f = bracket(p, d1, d2, kmax.max(1));
            for (k, fk) in f.iter().enumerate() {
                if k + 1 > kmax {
                    break;
                }
                let v = mul4(p, &two_hsum, fk);
                for t in 0..4 {
                    if !v[t].is_zero() {
                        ik[k + 1].c[t].set_coeff(d1, d2, &v[t] * &c);
                    }
                }
            }
        }
    }
    IFamily { params: p.clone(), trunc, ik }
}

/// Laurent polynomial in `z` with class coefficients, valid on a contiguous exponent window.
#[derive(Clone, Debug, PartialEq)]
pub struct ZLaurent {
    /// Highest exponent carried.
    pub top: i32,
    /// `coeffs[j]` multiplies `z^(top - j)`; exponents below the window are unknown.
    pub coeffs: Vec<CohElem>,
}

impl ZLaurent {
    pub fn lowest(&self) -> i32 {
        self.top - self.coeffs.len() as i32 + 1
    }

    pub fn coeff(&self, e: i32) -> Option<&CohElem> {
        if e > self.top || e < self.lowest() {
            None
        } else {
            Some(&self.coeffs[(self.top - e) as usize])
        }
    }

    fn trunc(&self) -> u32 {
        self.coeffs[0].trunc()
    }

    /// `I` itself as a Laurent polynomial: exponents `1 - kmax ..= 1`.
    pub fn from_family(i: &IFamily) -> Self {
        ZLaurent { top: 1, coeffs: i.ik.clone() }
    }

    /// Apply `H_i + z q_i d/dq_i`.
    pub fn d_op(&self, p: &Params, axis: Axis) -> Self {
        let h = CohElem::basis(self.trunc(), if axis == Axis::Q1 { 1 } else { 2 });
        let top = self.top + 1;
        let low = self.lowest() + 1;
        let coeffs = (low..=top)
            .rev()
            .map(|e| {
                let mut v = match self.coeff(e) {
                    Some(c) => c.mul(p, &h),
                    None => CohElem::zero(self.trunc()),
                };
                if let Some(c) = self.coeff(e - 1) {
                    v = &v + &c.euler_d(axis);
                }
                v
            })
            .collect();
        ZLaurent { top, coeffs }
    }

    pub fn mul_z(&self) -> Self {
        ZLaurent { top: self.top + 1, coeffs: self.coeffs.clone() }
    }

    pub fn map(&self, f: impl Fn(&CohElem) -> CohElem) -> Self {
        ZLaurent { top: self.top, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Sum on the common window: missing high exponents are zero, the low end is the larger floor.
    pub fn add(&self, o: &Self) -> Self {
        let top = self.top.max(o.top);
        let low = self.lowest().max(o.lowest());
        let t = self.trunc();
        let get = |z: &ZLaurent, e: i32| z.coeff(e).cloned().unwrap_or_else(|| CohElem::zero(t));
        ZLaurent { top, coeffs: (low..=top).rev().map(|e| &get(self, e) + &get(o, e)).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.map(|c| c.scale(k))
    }

    pub fn mul_q(&self, axis: Axis) -> Self {
        let (a, b) = if axis == Axis::Q1 { (1, 0) } else { (0, 1) };
        self.map(|c| CohElem { c: std::array::from_fn(|i| c.c[i].shift(a, b)) })
    }

    /// First nonzero entry as `(z exponent, basis index, d1, d2)`.
    pub fn first_nonzero(&self) -> Option<(i32, usize, u32, u32)> {
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, s) in c.c.iter().enumerate() {
                if let Some((d1, d2, _)) = s.first_nonzero() {
                    return Some((self.top - j as i32, i, d1, d2));
                }
            }
        }
        None
    }
}

/// Both Picard-Fuchs operators applied to `I`.
pub fn picard_fuchs_residual(i: &IFamily) -> [ZLaurent; 2] {
    let p = &i.params;
    let base = ZLaurent::from_family(i);
    let d1 = base.d_op(p, Axis::Q1);
    let d2 = base.d_op(p, Axis::Q2);
    let e = d1.add(&d2).scale(&int(2));
    let e_d1 = e.d_op(p, Axis::Q1);
    let e_d2 = e.d_op(p, Axis::Q2);
    let ee = e_d1.add(&e_d2).scale(&int(2));
    let quad = ee.add(&e.mul_z());
    let r1 = d1.d_op(p, Axis::Q1).add(&base.scale(&-p.l2())).add(&quad.mul_q(Axis::Q1).scale(&-Scalar::one()));
    let r2 = d2.d_op(p, Axis::Q2).add(&base.scale(&-p.m2())).add(&quad.mul_q(Axis::Q2).scale(&-Scalar::one()));
    [r1, r2]
}

/// Error naming the first nonzero coefficient of either residual.
pub fn check_picard_fuchs(i: &IFamily) -> Result<()> {
    for (n, r) in picard_fuchs_residual(i).iter().enumerate() {
        if let Some((e, b, d1, d2)) = r.first_nonzero() {
            return Err(Error::Residual {
                what: format!("Picard-Fuchs equation {}", n + 1),
                index: format!("z^{e}, basis {b}, q1^{d1} q2^{d2}"),
            });
        }
    }
    Ok(())
}

/// The scalar `f = sum_{d != 0} c_d q^d` with `I_1 = 2(H1 + H2) f`.
pub fn i1_scalar(trunc: u32) -> BiSeries {
    BiSeries::from_fn(trunc, |a, b| if a + b == 0 { Scalar::zero() } else { scalar_factor(a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::scalar::frac;

    fn p() -> Params {
        Params::from_ints(3, 5).unwrap()
    }

    #[test]
    fn factorial_coefficients() {
        assert_eq!(scalar_factor(1, 0), int(1));
        assert_eq!(scalar_factor(1, 1), int(6));
        assert_eq!(scalar_factor(2, 0), frac(3, 2));
    }

    #[test]
    fn leading_terms() {
        let i = i_function(&p(), 4, 4);
        assert_eq!(i.ik[0], CohElem::basis(4, 0));
        for k in 1..=4 {
            assert!(i.ik[k].c.iter().all(|s| s.constant_term().is_zero()));
        }
        let f = i1_scalar(4);
        assert_eq!(i.ik[1].c[1], f.scale(&int(2)));
        assert_eq!(i.ik[1].c[2], f.scale(&int(2)));
        assert!(i.ik[1].c[0].is_zero() && i.ik[1].c[3].is_zero());
    }

    #[test]
    fn direct_expansion_of_degree_one() {
        // q1^1 term: z * (-2H1-2H2)(-2H1-2H2-z) / ((H1+z)^2 - lambda^2) = z * 2(H1+H2)(2H1+2H2+z) / (z(2H1+z)).
        // Coefficient of z^{-1} in the bracket: 2(H1+H2) * (2(H1+H2) - 2H1) = 4(H1+H2)H2.
        let p = p();
        let i = i_function(&p, 2, 3);
        let want = mul4(&p, &[int(0), int(4), int(4), int(0)], &basis4(2));
        for t in 0..4 {
            assert_eq!(i.ik[2].c[t].coeff(1, 0), want[t]);
        }
    }

    #[test]
    fn picard_fuchs_vanishes() {
        let i = i_function(&p(), 5, 6);
        check_picard_fuchs(&i).unwrap();
        let r = picard_fuchs_residual(&i);
        assert_eq!((r[0].top, r[0].lowest()), (3, -3));
    }

    #[test]
    fn corrupted_coefficient_is_located() {
        let mut i = i_function(&p(), 5, 6);
        let old = i.ik[2].c[0].coeff(2, 1);
        i.ik[2].c[0].set_coeff(2, 1, old + int(1));
        let err = check_picard_fuchs(&i).unwrap_err();
        match err {
            Error::Residual { index, .. } => assert!(index.contains("q1^2 q2^1"), "{index}"),
            other => panic!("{other:?}"),
        }
    }
}
