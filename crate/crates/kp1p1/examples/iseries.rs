//! Expand the I-function and confirm both Picard-Fuchs operators annihilate it.
//!
//! `cargo run --example iseries -- 3 5 6`

use kp1p1::frobenius::Params;
use kp1p1::genus0::i_function;
use kp1p1::genus0::ifunction::{check_picard_fuchs, i1_scalar};

fn main() -> kp1p1::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, m, d) = match args[..] {
        [l, m, d, ..] => (l, m, d as u32),
        _ => (3, 5, 6),
    };
    let p = Params::from_ints(l, m)?;
    let fam = i_function(&p, d, 4);
    println!("I_1 = 2 (H1 + H2) f with f = {}", i1_scalar(d).to_json());
    for (k, ik) in fam.ik.iter().enumerate().take(3) {
        println!("I_{k} component along 1: {}", ik.c[0].to_json());
    }
    check_picard_fuchs(&fam)?;
    println!("Picard-Fuchs residuals vanish to q-degree {d}");
    Ok(())
}
