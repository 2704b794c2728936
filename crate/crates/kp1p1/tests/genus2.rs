//! Genus-2 graph-sum properties that need a full pipeline run.

use kp1p1::canonical::CanonicalData;
use kp1p1::exactseries::scalar::frac;
use kp1p1::exactseries::{Axis, BiSeries};
use kp1p1::frobenius::Params;
use kp1p1::graphsum::{h1_plus_h2, GraphSum, PsiCache};
use kp1p1::rmatrix::{edge_bivector, RMatrix};

fn f2_series(p: &Params, trunc: u32, psi: &PsiCache) -> BiSeries {
    let d = CanonicalData::new(p, trunc).unwrap();
    let r = RMatrix::compute(&d, 3).unwrap();
    let e = edge_bivector(&d, &r).unwrap();
    GraphSum::new(&d, &r, &e, psi, 2).unwrap().correlator(2, &[]).unwrap().eval(&d.gens.x)
}

#[test]
fn free_energy_does_not_depend_on_the_torus_weights() {
    let psi = PsiCache::new();
    let a = f2_series(&Params::from_ints(3, 5).unwrap(), 3, &psi);
    let b = f2_series(&Params::from_ints(2, 9).unwrap(), 3, &psi);
    assert_eq!(a, b);
    assert_eq!(a.coeff(1, 0), frac(-1, 120));
    assert_eq!(a.coeff(1, 1), frac(-1, 20));
    assert_eq!(a.coeff(2, 1), frac(-1, 3));
}

#[test]
fn per_graph_structure() {
    let psi = PsiCache::new();
    let d = CanonicalData::new(&Params::from_ints(3, 5).unwrap(), 3).unwrap();
    let r = RMatrix::compute(&d, 3).unwrap();
    let e = edge_bivector(&d, &r).unwrap();
    let gs = GraphSum::new(&d, &r, &e, &psi, 2).unwrap();
    let parts = gs.contributions(2, &[]).unwrap();
    assert_eq!(parts.len(), 7);
    let f2 = gs.correlator(2, &[]).unwrap();
    let mut top = BiSeries::zero(3);
    for c in &parts {
        assert!(c.value.degree().unwrap_or(0) <= c.graph.num_edges(), "{:?}", c.graph);
        assert_eq!(c.half_exponent % 2, 0);
        if c.graph.num_edges() == 3 {
            top = &top + &c.value.coeff(3);
        }
    }
    assert!(!top.is_zero());
    assert_eq!(f2.coeff(3), top);
}

#[test]
fn one_point_genus_two_satisfies_the_divisor_equation() {
    let p = Params::from_ints(3, 5).unwrap();
    let d = CanonicalData::new(&p, 2).unwrap();
    let r = RMatrix::compute(&d, 4).unwrap();
    let e = edge_bivector(&d, &r).unwrap();
    let psi = PsiCache::new();
    let gs = GraphSum::new(&d, &r, &e, &psi, 2).unwrap();
    let x = &d.gens.x;
    let f2 = gs.correlator(2, &[]).unwrap().eval(x);
    let one = gs.correlator(2, &[h1_plus_h2()]).unwrap().eval(x);
    let want = &d.gens.p1 * &(&f2.euler_d(Axis::Q1) + &f2.euler_d(Axis::Q2));
    assert_eq!(one, want);
}
