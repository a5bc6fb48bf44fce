// An SVG of the universal cover with a few arcs drawn in, written to the
// temp directory.

use annulus_gentle::fixtures;
use annulus_gentle::render::cover_svg;
use annulus_gentle::surface::{Arc, Boundary, Spiral};

pub fn run_example() -> String {
    let m = fixtures::running_example();
    let arcs = [
        Arc::Peripheral { boundary: Boundary::Inner, from: 1, to: 3 },
        Arc::Bridging { outer: 1, inner: 0 },
        Arc::Asymptotic { boundary: Boundary::Inner, index: 1, spiral: Spiral::Clockwise },
        Arc::Band,
    ];
    cover_svg(&m.tri, &arcs, 2)
}

#[allow(dead_code)]
fn main() {
    let svg = run_example();
    let path = std::env::temp_dir().join("annulus-cover.svg");
    std::fs::write(&path, &svg).expect("writable temp dir");
    println!("wrote {} ({} bytes)", path.display(), svg.len());
}
