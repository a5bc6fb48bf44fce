// Every asymptotic triangulation of the Kronecker annulus up to winding 2,
// with the annihilator of its cosilting module. Non-strict entries are
// checked against all indecomposables of dimension at most 4.

use annulus_gentle::cosilting::{classify, Classification};
use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;

pub fn run_example() -> Classification {
    classify(&fixtures::kronecker(), &Fp::default(), 2, 4).expect("classification")
}

#[allow(dead_code)]
fn main() {
    let c = run_example();
    for e in &c.non_strict {
        println!("{:<40} ann = <{}>  verified: {}", e.t.join(" "), e.ann_generators.join(", "), e.verified);
    }
    for e in &c.strict {
        println!("{:<40} {}  rigid: {}", e.t.join(" "), e.parameter_slot, e.rigid);
    }
}
