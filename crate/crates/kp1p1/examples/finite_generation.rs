//! Certified fit of F_2 as a cubic in X, with the two controls that must fail.

use kp1p1::finitegen::Genus2;
use kp1p1::frobenius::Params;
use kp1p1::graphsum::PsiCache;

fn main() -> kp1p1::Result<()> {
    let g2 = Genus2::compute(&Params::from_ints(3, 5)?, 6, &PsiCache::new())?;
    println!("fit: {} {:?}", g2.fit.label(), g2.fit.certificate());
    if let Some(rep) = g2.fit.rep() {
        println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("json"));
    }
    println!("without X: {}", g2.fit_without_x.label());
    println!("unrelated series: {}", g2.fit_control.label());
    Ok(())
}
