//! Invariants checked on random generic parameters and random inputs.

use kp1p1::canonical::frame::{ml_residuals, solve_ml};
use kp1p1::canonical::CanonicalFrame;
use kp1p1::exactseries::scalar::{frac, int};
use kp1p1::exactseries::{BiSeries, Scalar};
use kp1p1::finitegen::fit_polyrep;
use kp1p1::frobenius::{basis4, idempotent, mul4, pairing4, Params, Sector};
use kp1p1::genus0::ifunction::check_picard_fuchs;
use kp1p1::genus0::relations::third_specialization;
use kp1p1::genus0::{i_function, run_suite};
use kp1p1::graphsum::graphs::{automorphism_mass, labeled_enumeration};
use kp1p1::graphsum::{stable_graphs, PsiCache};
use kp1p1::rmatrix::{example_r1, wick_r1};
use num_traits::Zero;
use proptest::prelude::*;

fn generic_params() -> impl Strategy<Value = Params> {
    (-9i64..10, 1i64..4, -9i64..10, 1i64..4)
        .prop_filter_map("degenerate weights", |(a, b, c, d)| Params::new(frac(a, b), frac(c, d)).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classical_algebra_is_semisimple_and_frobenius(p in generic_params()) {
        let mut sum = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        for s in Sector::ALL {
            let e = idempotent(&p, s);
            for i in 0..4 {
                sum[i] += &e[i];
            }
            for t in Sector::ALL {
                let prod = mul4(&p, &e, &idempotent(&p, t));
                prop_assert_eq!(prod.iter().all(|x| x.is_zero()), s != t);
            }
        }
        prop_assert_eq!(sum, basis4(0));
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (u, v, w) = (basis4(i), basis4(j), basis4(k));
                    prop_assert_eq!(pairing4(&p, &mul4(&p, &u, &v), &w), pairing4(&p, &u, &mul4(&p, &v, &w)));
                }
            }
        }
    }

    #[test]
    fn picard_fuchs_and_relations_hold_at_any_generic_point(p in generic_params()) {
        prop_assert!(check_picard_fuchs(&i_function(&p, 4, 4)).is_ok());
        prop_assert!(run_suite(&p, &third_specialization(&p), 4).unwrap().all_asserted_hold());
    }

    #[test]
    fn eigenvalue_system_is_solved_in_every_sector(p in generic_params()) {
        let mut origins = Vec::new();
        for s in Sector::ALL {
            let (m, l) = solve_ml(&p, s, 5).unwrap();
            let (r1, r2) = ml_residuals(&p, &m, &l);
            prop_assert!(r1.is_zero() && r2.is_zero());
            origins.push((m.constant_term().clone(), l.constant_term().clone()));
        }
        origins.sort();
        origins.dedup();
        prop_assert_eq!(origins.len(), 4);
    }

    #[test]
    fn first_wick_term_matches_the_closed_form(p in generic_params()) {
        let w = wick_r1(&p, 1).unwrap();
        prop_assert_eq!(&w[1], &example_r1(&p));
        let f = CanonicalFrame::new(&p, Sector::new(0, 0), 1).unwrap();
        let (l, m) = (&p.lambda, &p.mu);
        let want = -(l * l + l * m + m * m) / (int(24) * l * m * (l + m));
        prop_assert_eq!(w[1].eval_at_origin(&f), want);
    }

    #[test]
    fn psi_cache_obeys_string_and_dilaton(g in 0u32..4, extra in 0usize..3, seed in 0u64..1000) {
        let n = if g == 0 { 3 + extra } else { 1 + extra };
        let dim = 3 * g as usize + n - 3;
        let mut a = vec![0u32; n];
        let mut s = seed;
        for _ in 0..dim {
            a[(s % n as u64) as usize] += 1;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407) >> 7;
        }
        let c = PsiCache::new();
        c.integral(g, &a).unwrap();
        prop_assert!(c.cross_check().is_empty());
        prop_assert!(c.string_dilaton_violations().is_empty());
    }

    #[test]
    fn two_graph_enumerators_agree(g in 0u32..3, n in 0usize..4) {
        prop_assume!(2 * g as i64 - 2 + n as i64 > 0);
        let canon = stable_graphs(g, n);
        let (classes, mass) = labeled_enumeration(g, n);
        prop_assert_eq!(canon.len(), classes.len());
        prop_assert_eq!(mass, automorphism_mass(&canon));
        for gr in &canon {
            prop_assert!(gr.is_connected() && gr.is_stable());
            prop_assert_eq!(gr.total_genus(), g);
        }
    }

    #[test]
    fn fits_round_trip_and_do_not_depend_on_basis_order(
        coeffs in proptest::collection::vec(-5i64..6, 6),
        rot in 0usize..3,
    ) {
        let t = 6;
        let x = &(&BiSeries::q1(t) + &BiSeries::q2(t).scale(&int(2))) + &(&BiSeries::q1(t) * &BiSeries::q2(t));
        let basis: Vec<(String, BiSeries)> = (0..3)
            .map(|i| {
                let b = BiSeries::from_fn(t, |a, c| frac(((a * (i + 2) + c * (2 * i + 1)) % 7) as i64 - 3, 1 + i as i64));
                (format!("B{i}"), &BiSeries::constant(t, int(i as i64 + 1)) + &b)
            })
            .collect();
        let target = (0..2).fold(BiSeries::zero(t), |acc, j| {
            let xp = x.pow(j as u32);
            (0..3).fold(acc, |acc, i| &acc + &(&xp * &basis[i].1).scale(&int(coeffs[3 * j + i])))
        });
        let fit = fit_polyrep(&target, &x, &basis, 1);
        let rep = fit.rep().expect("planted fit");
        prop_assert_eq!(&rep.evaluate(&x, &basis).unwrap(), &target);
        let mut rotated = basis.clone();
        rotated.rotate_left(rot);
        let fit2 = fit_polyrep(&target, &x, &rotated, 1);
        let rep2 = fit2.rep().expect("planted fit");
        prop_assert_eq!(rep2.evaluate(&x, &rotated).unwrap(), target);
        prop_assert_eq!(
            rep.dd_x().evaluate(&x, &basis).unwrap(),
            rep2.dd_x().evaluate(&x, &rotated).unwrap()
        );
    }
}
