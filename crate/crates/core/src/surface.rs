//! The annulus with `p` outer and `q` inner marked points, modelled through its
//! universal cover: a horizontal strip whose lower line covers the outer
//! boundary and whose upper line covers the inner one.
//!
//! Positions on both lines are integers scaled by `p*q`: outer lift `j` sits at
//! `j*q`, inner lift `j` at `j*p`, and the deck translation adds `p*q`. The
//! strip is a disk with two ideal points at `±∞`, so every arc lifts to a chord
//! and two lifts cross exactly when their endpoints interleave on the circle.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Outer,
    Inner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPoint {
    pub boundary: Boundary,
    pub index: i64,
}

/// Direction in which an asymptotic arc winds towards the core curve. In the
/// cover, anticlockwise spirals run to `+∞` and clockwise ones to `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spiral {
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "acw")]
    Anticlockwise,
}

impl Spiral {
    pub fn opposite(self) -> Spiral {
        match self {
            Spiral::Clockwise => Spiral::Anticlockwise,
            Spiral::Anticlockwise => Spiral::Clockwise,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Arc {
    Bridging { outer: i64, inner: i64 },
    Peripheral { boundary: Boundary, from: i64, to: i64 },
    Asymptotic { boundary: Boundary, index: i64, spiral: Spiral },
    Band,
}

impl Arc {
    pub fn is_finite(&self) -> bool {
        matches!(self, Arc::Bridging { .. } | Arc::Peripheral { .. })
    }
    pub fn is_asymptotic(&self) -> bool {
        matches!(self, Arc::Asymptotic { .. })
    }
    pub fn is_bridging(&self) -> bool {
        matches!(self, Arc::Bridging { .. })
    }
    pub fn is_peripheral(&self) -> bool {
        matches!(self, Arc::Peripheral { .. })
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Bridging { outer, inner } => write!(f, "B({outer},{inner}')"),
            Arc::Peripheral { boundary: Boundary::Outer, from, to } => write!(f, "P({from},{to})"),
            Arc::Peripheral { boundary: Boundary::Inner, from, to } => write!(f, "P({from}',{to}')"),
            Arc::Asymptotic { boundary, index, spiral } => {
                let mark = if *boundary == Boundary::Inner { "'" } else { "" };
                let s = if *spiral == Spiral::Clockwise { "cw" } else { "acw" };
                write!(f, "A({index}{mark},{s})")
            }
            Arc::Band => write!(f, "beta"),
        }
    }
}

/// A point on the boundary circle of the strip. `Lower`/`Upper` carry
/// scaled positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverPoint {
    Lower(i64),
    PlusInf,
    Upper(i64),
    MinusInf,
}

impl CoverPoint {
    /// Counterclockwise position on the circle: along the lower line to the
    /// right, round `+∞`, back along the upper line, round `-∞`.
    pub fn key(&self) -> (u8, i64) {
        match *self {
            CoverPoint::Lower(x) => (0, x),
            CoverPoint::PlusInf => (1, 0),
            CoverPoint::Upper(y) => (2, -y),
            CoverPoint::MinusInf => (3, 0),
        }
    }

    pub fn shift(&self, d: i64) -> CoverPoint {
        match *self {
            CoverPoint::Lower(x) => CoverPoint::Lower(x + d),
            CoverPoint::Upper(y) => CoverPoint::Upper(y + d),
            other => other,
        }
    }

    pub fn position(&self) -> Option<i64> {
        match *self {
            CoverPoint::Lower(x) | CoverPoint::Upper(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_marked(&self) -> bool {
        self.position().is_some()
    }
}

/// An unoriented chord, stored with `key(a) < key(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: CoverPoint,
    pub b: CoverPoint,
}

impl Chord {
    pub fn new(u: CoverPoint, v: CoverPoint) -> Chord {
        if u.key() <= v.key() {
            Chord { a: u, b: v }
        } else {
            Chord { a: v, b: u }
        }
    }

    pub fn shift(&self, d: i64) -> Chord {
        Chord::new(self.a.shift(d), self.b.shift(d))
    }

    fn inside(&self, x: CoverPoint) -> bool {
        let k = x.key();
        self.a.key() < k && k < self.b.key()
    }

    /// Strict interleaving; shared endpoints do not count.
    pub fn crosses(&self, other: &Chord) -> bool {
        let ends = [self.a, self.b];
        if ends.contains(&other.a) || ends.contains(&other.b) {
            return false;
        }
        self.inside(other.a) != self.inside(other.b)
    }

    pub fn has_endpoint(&self, x: CoverPoint) -> bool {
        self.a == x || self.b == x
    }

    pub fn other_end(&self, x: CoverPoint) -> CoverPoint {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }

    /// Finite positions of the chord, if any.
    fn extent(&self) -> Option<(i64, i64)> {
        let ps: Vec<i64> = [self.a, self.b].iter().filter_map(|x| x.position()).collect();
        if ps.is_empty() {
            None
        } else {
            Some((*ps.iter().min().unwrap(), *ps.iter().max().unwrap()))
        }
    }
}

/// Minimal intersection number of two arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Crossings {
    Finite(u64),
    Infinite,
}

impl Crossings {
    pub fn is_zero(&self) -> bool {
        *self == Crossings::Finite(0)
    }
}

impl fmt::Display for Crossings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossings::Finite(n) => write!(f, "{n}"),
            Crossings::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnnulusSurface {
    pub p: i64,
    pub q: i64,
}

impl AnnulusSurface {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::BadSurface { p, q });
        }
        Ok(AnnulusSurface { p, q })
    }

    /// Deck translation length in scaled units.
    pub fn deck(&self) -> i64 {
        self.p * self.q
    }

    pub fn period(&self, b: Boundary) -> i64 {
        match b {
            Boundary::Outer => self.p,
            Boundary::Inner => self.q,
        }
    }

    /// Scaled spacing between neighbouring lifts on the line covering `b`.
    pub fn step(&self, b: Boundary) -> i64 {
        match b {
            Boundary::Outer => self.q,
            Boundary::Inner => self.p,
        }
    }

    pub fn point(&self, b: Boundary, lift: i64) -> CoverPoint {
        match b {
            Boundary::Outer => CoverPoint::Lower(lift * self.q),
            Boundary::Inner => CoverPoint::Upper(lift * self.p),
        }
    }

    /// Boundary and lift index of a marked cover point.
    pub fn unpoint(&self, x: CoverPoint) -> Option<(Boundary, i64)> {
        match x {
            CoverPoint::Lower(v) if v % self.q == 0 => Some((Boundary::Outer, v / self.q)),
            CoverPoint::Upper(v) if v % self.p == 0 => Some((Boundary::Inner, v / self.p)),
            _ => None,
        }
    }

    pub fn canonicalize(&self, arc: &Arc) -> Result<Arc> {
        let c = self.canonicalize_curve(arc)?;
        if !self.is_simple(&c) {
            return Err(Error::InvalidArc(format!("{arc}: not simple")));
        }
        Ok(c)
    }

    /// Peripheral curves wrapping more than once round their boundary cross
    /// themselves. They are not arcs, but long strings still describe them.
    pub fn is_simple(&self, arc: &Arc) -> bool {
        match *arc {
            Arc::Peripheral { boundary, from, to } => to - from <= self.period(boundary),
            _ => true,
        }
    }

    /// Canonical representative of a curve, simple or not.
    pub fn canonicalize_curve(&self, arc: &Arc) -> Result<Arc> {
        match *arc {
            Arc::Bridging { outer, inner } => {
                let k = outer.div_euclid(self.p);
                Ok(Arc::Bridging { outer: outer - k * self.p, inner: inner - k * self.q })
            }
            Arc::Peripheral { boundary, from, to } => {
                let (from, to) = if from <= to { (from, to) } else { (to, from) };
                let n = self.period(boundary);
                let d = to - from;
                if d == 0 {
                    return Err(Error::InvalidArc(format!("{arc}: monogon")));
                }
                if d == 1 && n > 1 {
                    return Err(Error::InvalidArc(format!("{arc}: boundary digon")));
                }
                let k = from.div_euclid(n);
                Ok(Arc::Peripheral { boundary, from: from - k * n, to: to - k * n })
            }
            Arc::Asymptotic { boundary, index, spiral } => {
                Ok(Arc::Asymptotic { boundary, index: index.rem_euclid(self.period(boundary)), spiral })
            }
            Arc::Band => Ok(Arc::Band),
        }
    }

    /// The loop based at the only marked point of a one-point boundary. It
    /// is parallel to that boundary, so it meets no other arc and never takes
    /// part in a triangulation.
    pub fn is_boundary_loop(&self, arc: &Arc) -> bool {
        matches!(*arc, Arc::Peripheral { boundary, from, to }
            if to - from == 1 && self.period(boundary) == 1)
    }

    /// The distinguished lift of a canonical arc.
    pub fn lift(&self, arc: &Arc) -> Chord {
        match *arc {
            Arc::Bridging { outer, inner } => {
                Chord::new(self.point(Boundary::Outer, outer), self.point(Boundary::Inner, inner))
            }
            Arc::Peripheral { boundary, from, to } => Chord::new(self.point(boundary, from), self.point(boundary, to)),
            Arc::Asymptotic { boundary, index, spiral } => {
                let end = match spiral {
                    Spiral::Anticlockwise => CoverPoint::PlusInf,
                    Spiral::Clockwise => CoverPoint::MinusInf,
                };
                Chord::new(self.point(boundary, index), end)
            }
            Arc::Band => Chord::new(CoverPoint::MinusInf, CoverPoint::PlusInf),
        }
    }

    /// The canonical arc a chord projects to.
    pub fn arc_of_chord(&self, c: &Chord) -> Result<Arc> {
        use CoverPoint::*;
        let bad = || Error::InvalidArc(format!("chord {c:?} does not join marked points"));
        let arc = match (c.a, c.b) {
            (Lower(_), Upper(_)) => {
                let (_, o) = self.unpoint(c.a).ok_or_else(bad)?;
                let (_, i) = self.unpoint(c.b).ok_or_else(bad)?;
                Arc::Bridging { outer: o, inner: i }
            }
            (Lower(_), Lower(_)) | (Upper(_), Upper(_)) => {
                let (b, x) = self.unpoint(c.a).ok_or_else(bad)?;
                let (_, y) = self.unpoint(c.b).ok_or_else(bad)?;
                Arc::Peripheral { boundary: b, from: x.min(y), to: x.max(y) }
            }
            (MinusInf, PlusInf) | (PlusInf, MinusInf) => Arc::Band,
            (x, inf) | (inf, x) if x.is_marked() => {
                let (b, i) = self.unpoint(x).ok_or_else(bad)?;
                let spiral = if inf == PlusInf { Spiral::Anticlockwise } else { Spiral::Clockwise };
                Arc::Asymptotic { boundary: b, index: i, spiral }
            }
            _ => return Err(bad()),
        };
        self.canonicalize_curve(&arc)
    }

    /// Bridging winding: the fundamental domain of the inner endpoint when
    /// the outer endpoint lies in `[0, p)`.
    pub fn winding(&self, arc: &Arc) -> i64 {
        match *arc {
            Arc::Bridging { inner, .. } => inner.div_euclid(self.q),
            _ => 0,
        }
    }

    /// Minimal intersection number in the annulus, by case analysis.
    pub fn crossing_number(&self, a1: &Arc, a2: &Arc) -> Crossings {
        use Arc::*;
        if a1 == a2 {
            return Crossings::Finite(0);
        }
        match (a1, a2) {
            (Band, Bridging { .. }) | (Bridging { .. }, Band) => Crossings::Finite(1),
            (Band, _) | (_, Band) => Crossings::Finite(0),
            (Asymptotic { .. }, Bridging { .. }) | (Bridging { .. }, Asymptotic { .. }) => Crossings::Infinite,
            (Asymptotic { boundary: b1, spiral: s1, .. }, Asymptotic { boundary: b2, spiral: s2, .. }) => {
                if b1 == b2 && s1 != s2 {
                    Crossings::Infinite
                } else {
                    Crossings::Finite(0)
                }
            }
            (Asymptotic { boundary, index, .. }, Peripheral { boundary: pb, from, to })
            | (Peripheral { boundary: pb, from, to }, Asymptotic { boundary, index, .. }) => {
                if boundary != pb {
                    return Crossings::Finite(0);
                }
                Crossings::Finite(self.strictly_inside_translate(*pb, *from, *to, *index))
            }
            (Peripheral { boundary: b1, .. }, Peripheral { boundary: b2, .. }) if b1 != b2 => Crossings::Finite(0),
            (Peripheral { boundary, from, to }, Bridging { outer, inner })
            | (Bridging { outer, inner }, Peripheral { boundary, from, to }) => {
                let foot = if *boundary == Boundary::Outer { *outer } else { *inner };
                Crossings::Finite(self.strictly_inside_translate(*boundary, *from, *to, foot))
            }
            // Bridging pairs and same-boundary peripheral pairs: count the
            // translates of one lift that interleave with the other.
            _ => Crossings::Finite(self.count_finite_translates(&self.lift(a1), &self.lift(a2))),
        }
    }

    /// Translates of the point `x` strictly between `from` and `to`; at most
    /// one for a simple arc.
    fn strictly_inside_translate(&self, b: Boundary, from: i64, to: i64, x: i64) -> u64 {
        let n = self.period(b);
        let first = from + 1 + (x - from - 1).rem_euclid(n);
        if first >= to {
            0
        } else {
            ((to - 1 - first) / n + 1) as u64
        }
    }

    fn count_finite_translates(&self, c1: &Chord, c2: &Chord) -> u64 {
        let l = self.deck();
        let (lo1, hi1) = c1.extent().expect("finite chord");
        let (lo2, hi2) = c2.extent().expect("finite chord");
        let kmin = (lo1 - hi2).div_euclid(l) - 1;
        let kmax = (hi1 - lo2).div_euclid(l) + 1;
        (kmin..=kmax).filter(|&k| c1.crosses(&c2.shift(k * l))).count() as u64
    }

    /// Independent count used to audit the case table: translate `a2` over
    /// `[-reach, reach]` deck steps and report `Infinite` when crossings
    /// persist up to the edges of that range.
    pub fn crossing_number_bruteforce(&self, a1: &Arc, a2: &Arc, reach: i64) -> Crossings {
        if a1 == a2 {
            return Crossings::Finite(0);
        }
        if *a1 == Arc::Band || *a2 == Arc::Band {
            // β is fixed by every deck translation: count one fundamental domain.
            let other = if *a1 == Arc::Band { a2 } else { a1 };
            return Crossings::Finite(self.lift(&Arc::Band).crosses(&self.lift(other)) as u64);
        }
        let l = self.deck();
        let c1 = self.lift(a1);
        let c2 = self.lift(a2);
        let hits: Vec<i64> = (-reach..=reach).filter(|&k| c1.crosses(&c2.shift(k * l))).collect();
        if hits.contains(&reach) || hits.contains(&-reach) {
            Crossings::Infinite
        } else {
            Crossings::Finite(hits.len() as u64)
        }
    }

    /// Canonical internal finite arcs within the winding bound, then every
    /// asymptotic arc, then the band curve.
    pub fn enumerate_arcs(&self, winding_bound: i64) -> Vec<Arc> {
        let mut out = self.finite_arcs(winding_bound, true);
        for b in [Boundary::Outer, Boundary::Inner] {
            for index in 0..self.period(b) {
                for spiral in [Spiral::Clockwise, Spiral::Anticlockwise] {
                    out.push(Arc::Asymptotic { boundary: b, index, spiral });
                }
            }
        }
        out.push(Arc::Band);
        out
    }

    /// Bridging arcs ordered by |winding|, then all peripheral arcs.
    pub fn finite_arcs(&self, winding_bound: i64, with_loops: bool) -> Vec<Arc> {
        let mut bridging = Vec::new();
        for outer in 0..self.p {
            for inner in -winding_bound * self.q..(winding_bound + 1) * self.q {
                bridging.push(Arc::Bridging { outer, inner });
            }
        }
        bridging.sort_by_key(|a| (self.winding(a).abs(), self.winding(a), *a));
        let mut out = bridging;
        for b in [Boundary::Outer, Boundary::Inner] {
            let n = self.period(b);
            for from in 0..n {
                for d in 1..=n {
                    let arc = Arc::Peripheral { boundary: b, from, to: from + d };
                    if self.canonicalize(&arc).is_ok() && (with_loops || !self.is_boundary_loop(&arc)) {
                        out.push(arc);
                    }
                }
            }
        }
        out
    }
}

/// A side of a triangle: an arc of the triangulation or a boundary segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Arc(usize),
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    /// Counterclockwise, translated so the first vertex lies in `[0, p*q)`.
    pub vertices: [CoverPoint; 3],
    /// `sides[k]` joins `vertices[k]` and `vertices[(k+1) % 3]`.
    pub sides: [Side; 3],
    pub internal: bool,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub surface: AnnulusSurface,
    pub arcs: Vec<Arc>,
    /// Optional arrow names, in the default arrow order of the quiver.
    pub arrow_names: Option<Vec<String>>,
    pub triangles: Vec<Triangle>,
    index: HashMap<Arc, usize>,
    triangle_index: HashMap<[CoverPoint; 3], usize>,
    pub(crate) reach: i64,
}

/// JSON form of a triangulation file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub p: i64,
    pub q: i64,
    pub arcs: Vec<Arc>,
    #[serde(rename = "arrowNames", default, skip_serializing_if = "Option::is_none")]
    pub arrow_names: Option<Vec<String>>,
}

impl TriangulationFile {
    pub fn load(self) -> Result<Triangulation> {
        let surface = AnnulusSurface::new(self.p, self.q)?;
        let arcs = self.arcs.iter().map(|a| surface.canonicalize(a)).collect::<Result<Vec<_>>>()?;
        let mut t = validate_triangulation(&surface, &arcs)?;
        t.arrow_names = self.arrow_names;
        Ok(t)
    }
}

pub fn parse_triangulation(json: &str) -> Result<Triangulation> {
    let file: TriangulationFile = serde_json::from_str(json)?;
    file.load()
}

/// Ordering key for the triangle normal form.
fn normalize_triangle(surface: &AnnulusSurface, pts: [CoverPoint; 3]) -> [CoverPoint; 3] {
    let mut v = pts;
    v.sort_by_key(|x| x.key());
    let l = surface.deck();
    let x0 = v[0].position().expect("marked");
    let shift = -x0.div_euclid(l) * l;
    [v[0].shift(shift), v[1].shift(shift), v[2].shift(shift)]
}

pub fn validate_triangulation(surface: &AnnulusSurface, arcs: &[Arc]) -> Result<Triangulation> {
    let expected = (surface.p + surface.q) as usize;
    if arcs.len() != expected {
        return Err(Error::WrongCount { expected, got: arcs.len() });
    }
    for a in arcs {
        if !a.is_finite() || surface.canonicalize(a)? != *a {
            return Err(Error::InvalidArc(format!("{a} is not a canonical finite arc")));
        }
    }
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs[i] == arcs[j] || !surface.crossing_number(&arcs[i], &arcs[j]).is_zero() {
                return Err(Error::CrossingPair(i, j));
            }
        }
    }
    let index: HashMap<Arc, usize> = arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let reach = arcs
        .iter()
        .map(|a| {
            let (lo, hi) = surface.lift(a).extent().unwrap();
            hi - lo
        })
        .max()
        .unwrap_or(0)
        + surface.deck();
    let mut t = Triangulation {
        surface: *surface,
        arcs: arcs.to_vec(),
        arrow_names: None,
        triangles: Vec::new(),
        index,
        triangle_index: HashMap::new(),
        reach,
    };
    let mut seen: HashSet<[CoverPoint; 3]> = HashSet::new();
    for a in arcs {
        let c = surface.lift(a);
        for inside in [true, false] {
            let w = t
                .apex(&c, inside)
                .ok_or_else(|| Error::FaceDecompositionFailure(format!("no triangle on one side of {a}")))?;
            let tri = normalize_triangle(surface, [c.a, c.b, w]);
            if seen.insert(tri) {
                let sides = [0, 1, 2].map(|k| t.side_of(tri[k], tri[(k + 1) % 3]).expect("edge"));
                let internal = sides.iter().all(|s| matches!(s, Side::Arc(_)));
                t.triangle_index.insert(tri, t.triangles.len());
                t.triangles.push(Triangle { vertices: tri, sides, internal });
            }
        }
    }
    if t.triangles.len() != expected {
        return Err(Error::FaceDecompositionFailure(format!(
            "found {} triangles, expected {expected}",
            t.triangles.len()
        )));
    }
    t.triangles.sort_by_key(|tr| tr.vertices.map(|x| x.key()));
    t.triangle_index = t.triangles.iter().enumerate().map(|(i, tr)| (tr.vertices, i)).collect();
    Ok(t)
}

impl Triangulation {
    pub fn p(&self) -> i64 {
        self.surface.p
    }
    pub fn q(&self) -> i64 {
        self.surface.q
    }
    pub fn len(&self) -> usize {
        self.arcs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.index.get(arc).copied()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.index.contains_key(arc)
    }

    /// Index of the arc of which `c` is a lift, if it is one.
    pub fn vertex_of_chord(&self, c: &Chord) -> Option<usize> {
        let arc = self.surface.arc_of_chord(c).ok()?;
        self.index_of(&arc)
    }

    /// Classify the segment between two marked cover points.
    pub fn side_of(&self, u: CoverPoint, v: CoverPoint) -> Option<Side> {
        use CoverPoint::*;
        match (u, v) {
            (Lower(x), Lower(y)) if (x - y).abs() == self.surface.q => return Some(Side::Boundary),
            (Upper(x), Upper(y)) if (x - y).abs() == self.surface.p => return Some(Side::Boundary),
            _ => {}
        }
        self.vertex_of_chord(&Chord::new(u, v)).map(Side::Arc)
    }

    fn candidates(&self, lo: i64, hi: i64) -> Vec<CoverPoint> {
        let s = self.surface;
        let mut out = Vec::new();
        for (b, step) in [(Boundary::Outer, s.q), (Boundary::Inner, s.p)] {
            let first = (lo - self.reach).div_euclid(step);
            let last = (hi + self.reach).div_euclid(step) + 1;
            for j in first..=last {
                out.push(s.point(b, j));
            }
        }
        out
    }

    /// Third vertex of the triangle on one side of a lift of an arc of the
    /// triangulation. `inside` selects the counterclockwise arc from `c.a` to
    /// `c.b`.
    pub fn apex(&self, c: &Chord, inside: bool) -> Option<CoverPoint> {
        let (lo, hi) = c.extent()?;
        self.candidates(lo, hi).into_iter().find(|&w| {
            w != c.a
                && w != c.b
                && c.inside(w) == inside
                && self.side_of(c.a, w).is_some()
                && self.side_of(w, c.b).is_some()
        })
    }

    /// The triangle with these three cover vertices, with the translation
    /// that carries its normal form onto them.
    pub fn triangle_at(&self, pts: [CoverPoint; 3]) -> Option<usize> {
        let n = normalize_triangle(&self.surface, pts);
        self.triangle_index.get(&n).copied()
    }

    /// All lifts of arcs of the triangulation whose finite positions fall in
    /// `[lo, hi]`.
    pub fn lifts_in_window(&self, lo: i64, hi: i64) -> Vec<(usize, Chord)> {
        let l = self.surface.deck();
        let mut out = Vec::new();
        for (i, a) in self.arcs.iter().enumerate() {
            let c = self.surface.lift(a);
            let (clo, chi) = c.extent().unwrap();
            let kmin = (lo - clo).div_euclid(l);
            let kmax = (hi - chi).div_euclid(l) + 1;
            for k in kmin..=kmax {
                let s = c.shift(k * l);
                let (slo, shi) = s.extent().unwrap();
                if slo >= lo && shi <= hi {
                    out.push((i, s));
                }
            }
        }
        out
    }

    pub fn bridging_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_bridging()).count()
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            p: self.surface.p,
            q: self.surface.q,
            arcs: self.arcs.clone(),
            arrow_names: self.arrow_names.clone(),
        }
    }

    /// Does the arc `alpha`, leaving the corner `v` of an internal triangle,
    /// run through that triangle? Returns the triangle and the corner.
    pub fn corner_entry(&self, alpha: &Chord, v: CoverPoint) -> Option<(usize, usize)> {
        if !alpha.has_endpoint(v) {
            return None;
        }
        for (ti, tr) in self.triangles.iter().enumerate() {
            if !tr.internal {
                continue;
            }
            for corner in 0..3 {
                let x0 = tr.vertices[corner].position().unwrap();
                let Some(vx) = v.position() else { continue };
                if tr.vertices[corner].key().0 != v.key().0 {
                    continue;
                }
                let d = vx - x0;
                if d.rem_euclid(self.surface.deck()) != 0 {
                    continue;
                }
                let pts = tr.vertices.map(|x| x.shift(d));
                let opposite = Chord::new(pts[(corner + 1) % 3], pts[(corner + 2) % 3]);
                if alpha.crosses(&opposite) {
                    return Some((ti, corner));
                }
            }
        }
        None
    }
}

impl Triangulation {
    /// The internal triangle whose corner sits at `v` and whose opposite
    /// side `alpha` crosses, placed at `v`.
    fn corner_triangle(&self, alpha: &Chord, v: CoverPoint) -> Option<[CoverPoint; 3]> {
        let (ti, corner) = self.corner_entry(alpha, v)?;
        let tr = &self.triangles[ti];
        let d = v.position()? - tr.vertices[corner].position()?;
        let pts = tr.vertices.map(|x| x.shift(d));
        Some([pts[corner], pts[(corner + 1) % 3], pts[(corner + 2) % 3]])
    }

    /// `x` leaves a corner of an internal triangle through it and `y` cuts
    /// off that corner.
    fn crossing_at_corner(&self, x: &Chord, y: &Chord) -> bool {
        [x.a, x.b].into_iter().filter(|v| v.is_marked()).any(|v| {
            self.corner_triangle(x, v)
                .is_some_and(|[v, u1, u2]| y.crosses(&Chord::new(v, u1)) && y.crosses(&Chord::new(v, u2)))
        })
    }

    /// Does every crossing between the two arcs happen in a 3-cycle: one arc
    /// leaving a corner of an internal triangle while the other cuts off
    /// that corner?
    pub fn crossings_in_3cycles_only(&self, a1: &Arc, a2: &Arc) -> bool {
        let s = &self.surface;
        match s.crossing_number(a1, a2) {
            Crossings::Finite(0) => return true,
            Crossings::Infinite => return false,
            Crossings::Finite(_) => {}
        }
        let c1 = s.lift(a1);
        let c2 = s.lift(a2);
        let ks: Vec<i64> = match (c1.extent(), c2.extent()) {
            (Some((lo1, hi1)), Some((lo2, hi2))) if *a1 != Arc::Band && *a2 != Arc::Band => {
                let l = s.deck();
                ((lo1 - hi2).div_euclid(l) - 1..=(hi1 - lo2).div_euclid(l) + 1).collect()
            }
            _ => vec![0],
        };
        ks.into_iter()
            .map(|k| c2.shift(k * s.deck()))
            .filter(|y| c1.crosses(y))
            .all(|y| self.crossing_at_corner(&c1, &y) || self.crossing_at_corner(&y, &c1))
    }
}

/// Every triangulation whose arcs have bridging winding at most the bound.
pub fn enumerate_triangulations(surface: &AnnulusSurface, winding_bound: i64) -> Vec<Triangulation> {
    let arcs = surface.finite_arcs(winding_bound, false);
    let n = arcs.len();
    let compatible: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && surface.crossing_number(&arcs[i], &arcs[j]).is_zero()).collect())
        .collect();
    let target = (surface.p + surface.q) as usize;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        target: usize,
        compatible: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == target {
            found.push(chosen.clone());
            return;
        }
        for i in start..n {
            if chosen.iter().all(|&j| compatible[i][j]) {
                chosen.push(i);
                rec(i + 1, n, target, compatible, chosen, found);
                chosen.pop();
            }
        }
    }
    let mut found = Vec::new();
    rec(0, n, target, &compatible, &mut chosen, &mut found);
    for set in found {
        let mut subset: Vec<Arc> = set.iter().map(|&i| arcs[i]).collect();
        subset.sort();
        if let Ok(t) = validate_triangulation(surface, &subset) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> AnnulusSurface {
        AnnulusSurface::new(p, q).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let s32 = s(3, 2);
        assert_eq!(
            s32.canonicalize(&Arc::Bridging { outer: 3, inner: 2 }).unwrap(),
            Arc::Bridging { outer: 0, inner: 0 }
        );
        let digon = Arc::Peripheral { boundary: Boundary::Outer, from: 0, to: 1 };
        assert!(s32.canonicalize(&digon).is_err());
        assert!(s(1, 3).canonicalize(&digon).is_ok());
        let big = Arc::Peripheral { boundary: Boundary::Outer, from: 4, to: 6 };
        assert_eq!(s32.canonicalize(&big).unwrap(), Arc::Peripheral { boundary: Boundary::Outer, from: 1, to: 3 });
    }

    #[test]
    fn kronecker_crossings() {
        let s11 = s(1, 1);
        let b0 = Arc::Bridging { outer: 0, inner: 0 };
        let b2 = Arc::Bridging { outer: 0, inner: 2 };
        assert_eq!(s11.crossing_number(&b0, &b2), Crossings::Finite(1));
        let cw = Arc::Asymptotic { boundary: Boundary::Outer, index: 0, spiral: Spiral::Clockwise };
        let acw = Arc::Asymptotic { boundary: Boundary::Outer, index: 0, spiral: Spiral::Anticlockwise };
        assert_eq!(s11.crossing_number(&cw, &acw), Crossings::Infinite);
    }

    #[test]
    fn case_table_matches_bruteforce() {
        for (p, q) in [(1, 1), (2, 1), (3, 2), (2, 3)] {
            let surf = s(p, q);
            let arcs = surf.enumerate_arcs(2);
            for a in &arcs {
                for b in &arcs {
                    let table = surf.crossing_number(a, b);
                    let brute = surf.crossing_number_bruteforce(a, b, 40);
                    assert_eq!(table, brute, "{a} vs {b} on ({p},{q})");
                    assert_eq!(table, surf.crossing_number(b, a));
                }
            }
        }
    }

    #[test]
    fn kronecker_triangulation() {
        let s11 = s(1, 1);
        let t =
            validate_triangulation(&s11, &[Arc::Bridging { outer: 0, inner: 0 }, Arc::Bridging { outer: 0, inner: 1 }])
                .unwrap();
        assert_eq!(t.triangles.len(), 2);
        assert!(t.triangles.iter().all(|tr| !tr.internal));
        let one = validate_triangulation(&s11, &[Arc::Bridging { outer: 0, inner: 0 }]);
        assert!(matches!(one, Err(Error::WrongCount { .. })));
    }

    #[test]
    fn arc_enumeration_shape() {
        let s11 = s(1, 1);
        let arcs = s11.enumerate_arcs(0);
        assert_eq!(arcs.iter().filter(|a| a.is_bridging()).count(), 1);
        assert_eq!(arcs.iter().filter(|a| a.is_peripheral()).count(), 2);
        assert_eq!(arcs.iter().filter(|a| a.is_asymptotic()).count(), 4);
        assert_eq!(*arcs.last().unwrap(), Arc::Band);
        let s32 = s(3, 2);
        assert_eq!(s32.enumerate_arcs(1).iter().filter(|a| a.is_asymptotic()).count(), 10);
    }

    #[test]
    fn triangulations_are_valid_and_sized() {
        for (p, q) in [(1, 1), (2, 1), (3, 2)] {
            let surf = s(p, q);
            let ts = enumerate_triangulations(&surf, 1);
            assert!(!ts.is_empty());
            for t in &ts {
                assert_eq!(t.len() as i64, p + q);
                assert_eq!(t.triangles.len() as i64, p + q);
            }
        }
        let ts = enumerate_triangulations(&s(1, 1), 1);
        assert!(ts
            .iter()
            .any(|t| t.arcs == vec![Arc::Bridging { outer: 0, inner: 0 }, Arc::Bridging { outer: 0, inner: 1 }]));
    }

    #[test]
    fn json_round_trip() {
        let text =
            r#"{"p":1,"q":1,"arcs":[{"type":"bridging","outer":0,"inner":0},{"type":"bridging","outer":0,"inner":1}]}"#;
        let t = parse_triangulation(text).unwrap();
        let back = serde_json::to_string(&t.to_file()).unwrap();
        assert_eq!(back, text);
        let a: Arc =
            serde_json::from_str(r#"{"type":"asymptotic","boundary":"inner","index":0,"spiral":"cw"}"#).unwrap();
        assert!(a.is_asymptotic());
    }
}
