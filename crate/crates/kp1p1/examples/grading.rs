//! Membership of (R_1)_1 in the graded ring, with the rank certificate, and the
//! inconsistent fit one grading too small.

use kp1p1::frobenius::{Params, Sector};
use kp1p1::rmatrix::grading::{grading_fit, too_small_fit};

fn main() -> kp1p1::Result<()> {
    let p = Params::from_ints(3, 5)?;
    for line in grading_fit(&p, Sector::new(0, 1), 1)? {
        println!("{line:?}");
    }
    println!("{:?}", too_small_fit(&p, Sector::new(0, 1))?);
    Ok(())
}
