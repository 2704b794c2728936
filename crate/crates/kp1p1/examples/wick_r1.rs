//! (R_k)_1 from Gaussian moments of the Landau-Ginzburg potential, as exact
//! rational functions of M and L, compared with the five-diagram closed form at k = 1.

use kp1p1::canonical::CanonicalFrame;
use kp1p1::exactseries::scalar::to_text;
use kp1p1::frobenius::{Params, Sector};
use kp1p1::rmatrix::{example_r1, wick_r1};

fn main() -> kp1p1::Result<()> {
    let p = Params::from_ints(3, 5)?;
    let r = wick_r1(&p, 2)?;
    for (k, rk) in r.iter().enumerate() {
        println!("(R_{k})_1 = [{} terms] / N^{}", rk.num.num_terms(), rk.npow);
    }
    println!("closed form reproduced: {}", r[1] == example_r1(&p));
    for s in Sector::ALL {
        let f = CanonicalFrame::new(&p, s, 0)?;
        println!("sector {}: (R_1)_1 at q = 0 is {}", s.label(), to_text(&r[1].eval_at_origin(&f)));
    }
    Ok(())
}
