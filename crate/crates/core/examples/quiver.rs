// The gentle algebra of a triangulated annulus: quiver, relations and the
// size of the path basis.
//
// ```text
// cargo run --example quiver
// ```

use annulus_gentle::algebra::{check_gentle, enumerate_path_basis};
use annulus_gentle::fixtures;
use annulus_gentle::render::quiver_dot;

pub struct QuiverSummary {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub basis: usize,
    pub gentle: bool,
    pub dot: String,
}

pub fn run_example() -> QuiverSummary {
    let m = fixtures::running_example();
    let basis = enumerate_path_basis(&m.pres).expect("finite dimensional");
    QuiverSummary {
        vertices: m.pres.vertices.len(),
        arrows: m.pres.arrows.len(),
        relations: m.pres.relations.len(),
        basis: basis.len(),
        gentle: check_gentle(&m.pres),
        dot: quiver_dot(&m.pres, "fixture-32"),
    }
}

#[allow(dead_code)]
fn main() {
    let s = run_example();
    println!(
        "{} vertices, {} arrows, {} zero relations, dim A = {}, gentle: {}",
        s.vertices, s.arrows, s.relations, s.basis, s.gentle
    );
    print!("{}", s.dot);
}
