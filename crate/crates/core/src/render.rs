//! Text exports: DOT quivers and SVG pictures of the universal cover.
//! Unfolded diagrams of complexes render through [`ComplexWindow::ascii`].
//!
//! [`ComplexWindow::ascii`]: crate::kcomplex::ComplexWindow::ascii

use std::fmt::Write as _;

use crate::algebra::GentlePresentation;
use crate::surface::{Arc, Boundary, Chord, CoverPoint, Triangulation};

/// Quiver in DOT. Each relation `ba` becomes a dashed edge from the source
/// of `a` to the target of `b`, labelled with the zero composite.
pub fn quiver_dot(pres: &GentlePresentation, name: &str) -> String {
    let mut s = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in &pres.vertices {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for a in &pres.arrows {
        let _ =
            writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", pres.vertices[a.source], pres.vertices[a.target], a.name);
    }
    for &(b, a) in &pres.relations {
        let (x, y) = (&pres.arrows[a], &pres.arrows[b]);
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [style=dashed, color=red, arrowhead=none, constraint=false, label=\"{}{}=0\"];",
            pres.vertices[x.source], pres.vertices[y.target], y.name, x.name
        );
    }
    s.push_str("}\n");
    s
}

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 320.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Horizontal placement of a window `[lo, hi]` of scaled positions.
struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, pos: i64) -> f64 {
        MARGIN + (pos as f64 - self.lo) / (self.hi - self.lo) * (WIDTH - 2.0 * MARGIN)
    }
    fn top(&self) -> f64 {
        MARGIN
    }
    fn bottom(&self) -> f64 {
        HEIGHT - MARGIN
    }
    fn mid(&self) -> f64 {
        HEIGHT / 2.0
    }

    fn y_of(&self, p: CoverPoint) -> f64 {
        match p {
            CoverPoint::Upper(_) => self.top(),
            _ => self.bottom(),
        }
    }

    /// SVG path data for a chord.
    fn chord_path(&self, c: &Chord) -> String {
        use CoverPoint::*;
        match (c.a, c.b) {
            (Lower(x), Lower(y)) | (Upper(x), Upper(y)) => {
                let (x1, x2) = (self.x(x), self.x(y));
                let y0 = self.y_of(c.a);
                let r = (x2 - x1).abs() / 2.0;
                let sweep = if y0 == self.bottom() { 1 } else { 0 };
                format!("M {x1:.1} {y0:.1} A {r:.1} {:.1} 0 0 {sweep} {x2:.1} {y0:.1}", r.min(HEIGHT - 2.0 * MARGIN))
            }
            (MinusInf, PlusInf) | (PlusInf, MinusInf) => {
                format!("M {:.1} {m:.1} L {:.1} {m:.1}", MARGIN / 2.0, WIDTH - MARGIN / 2.0, m = self.mid())
            }
            (p, PlusInf) | (PlusInf, p) | (p, MinusInf) | (MinusInf, p) if p.is_marked() => {
                let dir = if c.a == PlusInf || c.b == PlusInf { 1.0 } else { -1.0 };
                self.spiral(p, dir)
            }
            (p, q) => {
                let (x1, x2) = (self.x(p.position().unwrap_or(0)), self.x(q.position().unwrap_or(0)));
                format!("M {x1:.1} {:.1} L {x2:.1} {:.1}", self.y_of(p), self.y_of(q))
            }
        }
    }

    /// A curve leaving a marked point and winding off to `±∞`: it settles
    /// onto the core line with decaying oscillation.
    fn spiral(&self, p: CoverPoint, dir: f64) -> String {
        let x0 = self.x(p.position().unwrap());
        let y0 = self.y_of(p);
        let m = self.mid();
        let mut d = format!("M {x0:.1} {y0:.1}");
        let amp0 = (y0 - m) * 0.6;
        for k in 1..=40 {
            let t = k as f64 / 40.0;
            let x = x0 + dir * t * WIDTH;
            if !(0.0..=WIDTH).contains(&x) {
                break;
            }
            let y = m + amp0 * (-3.0 * t).exp() * (8.0 * t * std::f64::consts::PI).cos();
            let _ = write!(d, " L {x:.1} {y:.1}");
        }
        d
    }
}

/// The universal cover of the annulus over `decks` fundamental domains:
/// boundary lines, marked points, lifts of the triangulation in grey and of
/// `arcs` in colour.
pub fn cover_svg(tri: &Triangulation, arcs: &[Arc], decks: i64) -> String {
    let s = tri.surface;
    let l = s.deck();
    let decks = decks.max(1);
    let (lo, hi) = (-l / 2, decks * l + l / 2);
    let f = Frame { lo: lo as f64, hi: hi as f64 };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    let _ = writeln!(
        out,
        "<title>Annulus with universal cover U_{{{},{}}}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>",
        s.p, s.q
    );
    for y in [f.top(), f.bottom()] {
        let _ = writeln!(
            out,
            "<line x1=\"0\" y1=\"{y:.1}\" x2=\"{WIDTH}\" y2=\"{y:.1}\" stroke=\"black\" stroke-width=\"2\"/>"
        );
    }
    // Fundamental domains.
    for k in 0..=decks {
        let x = f.x(k * l);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#bbb\" stroke-dasharray=\"4 4\"/>",
            f.top(),
            f.bottom()
        );
    }
    for (_, c) in tri.lifts_in_window(lo, hi) {
        let _ = writeln!(out, "<path d=\"{}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1.2\"/>", f.chord_path(&c));
    }
    for (i, arc) in arcs.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let c = s.lift(arc);
        let shifts = if matches!(arc, Arc::Band) { 0..1 } else { 0..decks };
        for k in shifts {
            let _ = writeln!(
                out,
                "<path d=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"2\"><title>{arc}</title></path>",
                f.chord_path(&c.shift(k * l))
            );
        }
    }
    for (b, y, step, label_dy) in [
        (Boundary::Outer, f.bottom(), s.step(Boundary::Outer), 18.0),
        (Boundary::Inner, f.top(), s.step(Boundary::Inner), -8.0),
    ] {
        let n = s.period(b);
        let mut j = lo.div_euclid(step);
        while j * step <= hi {
            if j * step >= lo {
                let x = f.x(j * step);
                let mark = if b == Boundary::Inner { "'" } else { "" };
                let _ = writeln!(
                    out,
                    "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"black\"/><text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}{mark}</text>",
                    y + label_dy,
                    j.rem_euclid(n)
                );
            }
            j += 1;
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Model;
    use crate::surface::{parse_triangulation, Spiral};

    #[test]
    fn dot_lists_every_arrow_and_relation() {
        let m = Model::new(parse_triangulation(include_str!("../fixtures/fixture-32.json")).unwrap());
        let d = quiver_dot(&m.pres, "U");
        assert_eq!(d.matches("label=").count(), m.pres.arrows.len() + m.pres.relations.len());
        assert_eq!(d.matches("dashed").count(), m.pres.relations.len());
    }

    #[test]
    fn svg_is_balanced() {
        let t = parse_triangulation(include_str!("../fixtures/fixture-32.json")).unwrap();
        let arcs = [
            Arc::Peripheral { boundary: Boundary::Inner, from: 1, to: 3 },
            Arc::Asymptotic { boundary: Boundary::Outer, index: 2, spiral: Spiral::Clockwise },
            Arc::Band,
        ];
        let svg = cover_svg(&t, &arcs, 2);
        let doc = roxmltree::Document::parse(&svg).expect("well-formed SVG");
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        assert!(!svg.contains("NaN"));
    }
}
