//! Connection matrices A1, A2 and the full identity suite, including the printed
//! formulas that are only compared.

use kp1p1::frobenius::Params;
use kp1p1::genus0::relations::third_specialization;
use kp1p1::genus0::run_suite;

fn main() -> kp1p1::Result<()> {
    let p = Params::from_ints(3, 5)?;
    let rep = run_suite(&p, &third_specialization(&p), 6)?;
    for r in &rep.results {
        let status = match (r.asserted, r.holds) {
            (_, true) => "holds",
            (true, false) => "FAILS",
            (false, false) => "differs from print",
        };
        println!("{:<55} {status}", r.name);
    }
    assert!(rep.all_asserted_hold());
    Ok(())
}
