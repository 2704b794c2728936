//! Exact rational scalars, truncated bivariate series, and the linear algebra built on them.

pub mod halfpower;
pub mod linalg;
pub mod matrix;
pub mod poly2;
pub mod scalar;
pub mod series;
pub mod xpoly;

pub use halfpower::HalfPowerSeries;
pub use matrix::SMat;
pub use poly2::Poly2;
pub use scalar::Scalar;
pub use series::{Axis, BiSeries};
pub use xpoly::XPoly;

#[cfg(test)]
mod props {
    use super::scalar::frac;
    use super::*;
    use proptest::prelude::*;

    const T: u32 = 4;

    fn series() -> impl Strategy<Value = BiSeries> {
        proptest::collection::vec((-6i64..7, 1i64..4), 15).prop_map(|v| {
            let mut it = v.into_iter();
            BiSeries::from_fn(T, |_, _| {
                let (n, d) = it.next().unwrap();
                frac(n, d)
            })
        })
    }

    fn unit() -> impl Strategy<Value = BiSeries> {
        (series(), 1i64..5).prop_map(|(mut s, c)| {
            s.set_coeff(0, 0, frac(c, 1));
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in series(), b in series(), c in series()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn inversion_is_an_involution(a in unit()) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(&a * &inv, BiSeries::one(T));
            prop_assert_eq!(inv.invert().unwrap(), a);
        }

        #[test]
        fn sqrt_squares_back(a in unit()) {
            let sq = &a * &a;
            let r = sq.sqrt(true).unwrap();
            prop_assert_eq!(&r * &r, sq);
        }

        #[test]
        fn euler_is_a_derivation(a in series(), b in series(), w in 0usize..3) {
            let axis = [Axis::Q1, Axis::Q2, Axis::Both][w];
            let lhs = (&a * &b).euler_d(axis);
            let rhs = &(&a.euler_d(axis) * &b) + &(&a * &b.euler_d(axis));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
