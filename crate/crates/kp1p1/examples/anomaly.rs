//! The genus-2 anomaly equation for both constants and both split conventions.

use kp1p1::finitegen::Genus2;
use kp1p1::frobenius::Params;
use kp1p1::graphsum::PsiCache;

fn main() -> kp1p1::Result<()> {
    let g2 = Genus2::compute(&Params::from_ints(3, 5)?, 5, &PsiCache::new())?;
    for row in g2.hae() {
        println!(
            "c = {:>4} {:<22} {}",
            row.constant,
            row.convention.name(),
            match &row.first_nonzero {
                None => "closes".to_string(),
                Some((a, b, v)) => format!("residual {v} at q1^{a} q2^{b}"),
            }
        );
    }
    Ok(())
}
