// Completing a partial asymptotic triangulation without changing the
// annihilator, and checking that the result is cosilting.

use annulus_gentle::cosilting::{complete_partial, family_of, verify_cosilting_finite, PartialAsympTriangulation};
use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;
use annulus_gentle::surface::{Arc, Boundary};

pub struct CompletionSummary {
    pub given: Vec<String>,
    pub completed: Vec<String>,
    pub same_ann: bool,
    pub cosilting: bool,
}

pub fn run_example() -> CompletionSummary {
    let m = fixtures::running_example();
    let arcs = vec![Arc::Peripheral { boundary: Boundary::Inner, from: 1, to: 3 }];
    let partial = PartialAsympTriangulation::new(&m.tri.surface, arcs, None).unwrap();
    let full = complete_partial(&m, &partial, 2).unwrap();
    let before = family_of(&m, &partial).unwrap();
    let after = family_of(&m, &full.t).unwrap();
    let check = verify_cosilting_finite(&m, &Fp::default(), &after, 2, 4).unwrap();
    CompletionSummary {
        given: partial.arcs.iter().map(|a| a.to_string()).collect(),
        completed: full.t.arcs.iter().map(|a| a.to_string()).collect(),
        same_ann: before.annihilator == after.annihilator,
        cosilting: check.passed(),
    }
}

#[allow(dead_code)]
fn main() {
    let s = run_example();
    println!("{}  =>  {}", s.given.join(" "), s.completed.join(" "));
    println!("annihilator preserved: {}, cosilting: {}", s.same_ann, s.cosilting);
}
