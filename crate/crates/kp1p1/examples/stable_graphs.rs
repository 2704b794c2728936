//! Stable graphs by genus and number of legs, with automorphism orders.

use kp1p1::graphsum::graphs::{automorphism_mass, labeled_enumeration};
use kp1p1::graphsum::stable_graphs;

fn main() {
    for gr in stable_graphs(2, 0) {
        println!("{:?} edges {} |Aut| {}", gr.genus, gr.num_edges(), gr.automorphisms());
    }
    for (g, n) in [(1, 1), (0, 3), (1, 2), (2, 1), (3, 0)] {
        let canon = stable_graphs(g, n);
        let (_, mass) = labeled_enumeration(g, n);
        println!("G_{g},{n}: {} graphs, sum 1/|Aut| = {mass} (canonical: {})", canon.len(), automorphism_mass(&canon));
    }
}
