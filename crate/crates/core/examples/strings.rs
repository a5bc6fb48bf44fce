// Reading arcs as strings. Finite arcs give finite words, asymptotic arcs
// give eventually periodic ones, and arcs of the triangulation itself
// give nothing.

use annulus_gentle::fixtures;
use annulus_gentle::strings::{classify_asymptotic, ArcString, Word};
use annulus_gentle::surface::{Arc, Boundary, Spiral};

pub fn run_example() -> Vec<(String, String)> {
    let m = fixtures::running_example();
    let arcs = [
        Arc::Peripheral { boundary: Boundary::Inner, from: 1, to: 3 },
        Arc::Bridging { outer: 1, inner: 0 },
        Arc::Asymptotic { boundary: Boundary::Inner, index: 1, spiral: Spiral::Clockwise },
        Arc::Asymptotic { boundary: Boundary::Outer, index: 2, spiral: Spiral::Clockwise },
        Arc::Peripheral { boundary: Boundary::Outer, from: 0, to: 2 },
        Arc::Band,
    ];
    let mut out = Vec::new();
    for a in arcs {
        let text = match m.string_of_arc(&a).expect("valid arc") {
            ArcString::InTriangulation(_) => "@in-triangulation".to_string(),
            ArcString::Word(w) => {
                // Words print in a form the parser reads back.
                let back = Word::parse(&m.pres, &w.render(&m.pres)).expect("round trip");
                assert_eq!(back, w);
                match &w {
                    Word::NString { .. } => {
                        let kind = classify_asymptotic(&m.pres, &w).expect("infinite word");
                        format!("{} ({kind:?})", w.pretty(&m.pres))
                    }
                    _ => w.pretty(&m.pres),
                }
            }
        };
        out.push((a.to_string(), text));
    }
    out
}

#[allow(dead_code)]
fn main() {
    for (arc, word) in run_example() {
        println!("{arc:>10}  {word}");
    }
}
