// Annihilators of string modules: the combinatorial ideal (paths that do
// not occur in any word) against the kernel of the action on the module,
// and the quotient it leaves behind.

use annulus_gentle::algebra::{annihilator_of_words, check_gentle, quotient_presentation};
use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;
use annulus_gentle::homalg::annihilator_linear;
use annulus_gentle::representations::string_module;
use annulus_gentle::surface::{Arc, Boundary};

pub struct AnnSummary {
    pub family: Vec<String>,
    pub ideal: Vec<String>,
    pub agrees: bool,
    pub quotient_vertices: usize,
    pub quotient_gentle: bool,
}

pub fn run_example() -> AnnSummary {
    let m = fixtures::running_example();
    let f = Fp::default();
    let arcs = [Arc::Peripheral { boundary: Boundary::Inner, from: 1, to: 3 }, Arc::Bridging { outer: 1, inner: 0 }];
    let words: Vec<_> = arcs.iter().map(|a| m.word_of(a).unwrap()).collect();
    let comb = annihilator_of_words(&m.pres, &words).unwrap();
    let reps: Vec<_> = words.iter().map(|w| string_module(&m.pres, &f, w).unwrap()).collect();
    let lin = annihilator_linear(&m.pres, &reps.iter().collect::<Vec<_>>()).unwrap();
    let q = quotient_presentation(&m.pres, &comb).unwrap();
    AnnSummary {
        family: words.iter().map(|w| w.render(&m.pres)).collect(),
        ideal: comb.paths.iter().map(|p| p.render(&m.pres)).collect(),
        agrees: comb == lin,
        quotient_vertices: q.vertices.len(),
        quotient_gentle: check_gentle(&q),
    }
}

#[allow(dead_code)]
fn main() {
    let s = run_example();
    println!("family: {}", s.family.join(", "));
    println!("ann = <{}>", s.ideal.join(", "));
    println!("matches the linear computation: {}", s.agrees);
    println!("A/ann has {} vertices and is gentle: {}", s.quotient_vertices, s.quotient_gentle);
}
