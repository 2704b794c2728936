//! The four columns of R in every sector, built from (R_k)_1 by the QDE recursion,
//! then checked against the QDE itself and against the edge propagator's divisibility.

use kp1p1::canonical::CanonicalData;
use kp1p1::frobenius::{Params, Sector};
use kp1p1::rmatrix::{edge_bivector, RMatrix};

fn main() -> kp1p1::Result<()> {
    let data = CanonicalData::new(&Params::from_ints(3, 5)?, 4)?;
    let r = RMatrix::compute(&data, 2)?;
    match r.check_qde(&data) {
        None => println!("QDE residual vanishes through z^2"),
        Some(f) => println!("QDE fails: {f:?}"),
    }
    let s = Sector::new(1, 0);
    let sr = r.sector(s);
    for k in 0..=2 {
        println!("sector {} order {k}: H1H2 column has X-degree {:?}", s.label(), sr.h12[k].degree());
    }
    let e = edge_bivector(&data, &r)?;
    println!("edge propagator exact through total degree {}", e.max_degree);
    Ok(())
}
