//! F_2 and the genus-one correlators with H1 + H2 insertions, as polynomials in X.

use kp1p1::canonical::CanonicalData;
use kp1p1::frobenius::Params;
use kp1p1::graphsum::{h1_plus_h2, GraphSum, PsiCache};
use kp1p1::rmatrix::{edge_bivector, RMatrix};

fn main() -> kp1p1::Result<()> {
    let data = CanonicalData::new(&Params::from_ints(3, 5)?, 3)?;
    let r = RMatrix::compute(&data, 3)?;
    let edge = edge_bivector(&data, &r)?;
    let psi = PsiCache::new();
    let gs = GraphSum::new(&data, &r, &edge, &psi, 2)?;
    for c in gs.contributions(2, &[])? {
        println!("{:?}", c.report());
    }
    let x = &data.gens.x;
    println!("F_2 = {}", gs.correlator(2, &[])?.eval(x).to_json());
    let h = h1_plus_h2();
    println!("<<H>>_1,1 = {}", gs.correlator(1, &[h.clone()])?.eval(x).to_json());
    println!("<<H,H>>_1,2 = {}", gs.correlator(1, &[h.clone(), h])?.eval(x).to_json());
    Ok(())
}
