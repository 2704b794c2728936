//! Eigenvalue series M, L in each sector, the normalization Delta and the generators P1..P4, X.

use kp1p1::canonical::CanonicalData;
use kp1p1::exactseries::scalar::to_text;
use kp1p1::frobenius::Params;

fn main() -> kp1p1::Result<()> {
    let data = CanonicalData::new(&Params::from_ints(3, 5)?, 4)?;
    for f in &data.frames {
        println!(
            "sector {}: M(0) = {}, L(0) = {}, Delta(0) = {}, [q1]M = {}",
            f.sector.label(),
            to_text(f.m.constant_term()),
            to_text(f.l.constant_term()),
            to_text(f.delta.constant_term()),
            to_text(&f.m.coeff(1, 0)),
        );
    }
    println!("{}", serde_json::to_string_pretty(&data.gens.to_json()).expect("json"));
    Ok(())
}
