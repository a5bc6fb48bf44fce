//! Letters and words (finite, eventually periodic, bi-periodic) and the
//! dictionary between arcs and strings.
//!
//! Words are stored in *path order*: `letters[0]` is the rightmost letter
//! `a_1` of the printed word, and `a_j` runs from vertex `i_{j-1}` to `i_j`.
//! The printed form reverses this, so `h-dgfe` has `letters = [e,f,g,d,h⁻¹]`.

use crate::algebra::{GentlePresentation, Model, Path};
use crate::error::{Error, Result};
use crate::surface::{Arc, Boundary, Chord, CoverPoint, Spiral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Letter {
    Direct(usize),
    Inverse(usize),
}

impl Letter {
    pub fn arrow(self) -> usize {
        match self {
            Letter::Direct(a) | Letter::Inverse(a) => a,
        }
    }
    pub fn is_direct(self) -> bool {
        matches!(self, Letter::Direct(_))
    }
    pub fn inverse(self) -> Letter {
        match self {
            Letter::Direct(a) => Letter::Inverse(a),
            Letter::Inverse(a) => Letter::Direct(a),
        }
    }
    pub fn source(self, pres: &GentlePresentation) -> usize {
        match self {
            Letter::Direct(a) => pres.arrows[a].source,
            Letter::Inverse(a) => pres.arrows[a].target,
        }
    }
    pub fn target(self, pres: &GentlePresentation) -> usize {
        match self {
            Letter::Direct(a) => pres.arrows[a].target,
            Letter::Inverse(a) => pres.arrows[a].source,
        }
    }
}

/// Can `next` follow `prev` (in path order) in a string?
pub fn composable(pres: &GentlePresentation, prev: Letter, next: Letter) -> bool {
    if prev.target(pres) != next.source(pres) || next == prev.inverse() {
        return false;
    }
    match (prev, next) {
        (Letter::Direct(x), Letter::Direct(y)) => !pres.is_relation(y, x),
        (Letter::Inverse(x), Letter::Inverse(y)) => !pres.is_relation(x, y),
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Word {
    Finite {
        start: usize,
        letters: Vec<Letter>,
    },
    /// `…period period preperiod`, repeating to the left.
    NString {
        start: usize,
        preperiod: Vec<Letter>,
        period: Vec<Letter>,
    },
    ZPeriodic {
        start: usize,
        period: Vec<Letter>,
    },
}

/// Arrow-level description of a word's vertex and letter sequence.
impl Word {
    pub fn trivial(v: usize) -> Word {
        Word::Finite { start: v, letters: Vec::new() }
    }

    pub fn finite(start: usize, letters: Vec<Letter>) -> Word {
        Word::Finite { start, letters }
    }

    pub fn start(&self) -> usize {
        match self {
            Word::Finite { start, .. } | Word::NString { start, .. } | Word::ZPeriodic { start, .. } => *start,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Word::Finite { .. })
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            Word::Finite { letters, .. } => letters,
            _ => panic!("letters() on an infinite word"),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Finite { letters, .. } => letters.len(),
            _ => usize::MAX,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// First `n` letters in path order (all of them for finite words).
    pub fn unroll(&self, n: usize) -> Vec<Letter> {
        match self {
            Word::Finite { letters, .. } => letters.iter().take(n).copied().collect(),
            Word::NString { preperiod, period, .. } => {
                preperiod.iter().chain(period.iter().cycle()).take(n).copied().collect()
            }
            Word::ZPeriodic { period, .. } => period.iter().cycle().take(n).copied().collect(),
        }
    }

    /// An ℕ-string with the shortest preperiod and a primitive period.
    pub fn nstring(start: usize, mut preperiod: Vec<Letter>, mut period: Vec<Letter>) -> Word {
        let s = period.len();
        if let Some(d) = (1..=s).find(|&d| s.is_multiple_of(d) && (0..s).all(|i| period[i] == period[i % d])) {
            period.truncate(d);
        }
        while preperiod.last().is_some_and(|l| l == period.last().unwrap()) {
            preperiod.pop();
            period.rotate_right(1);
        }
        Word::NString { start, preperiod, period }
    }

    /// Letters from position `k` on, as a word starting at that vertex.
    pub fn suffix_from(&self, pres: &GentlePresentation, k: usize) -> Word {
        match self {
            Word::Finite { letters, .. } => {
                let start = if k == 0 { self.start() } else { letters[k - 1].target(pres) };
                Word::Finite { start, letters: letters[k..].to_vec() }
            }
            Word::NString { preperiod, period, .. } => {
                let start = if k == 0 { self.start() } else { self.unroll(k)[k - 1].target(pres) };
                if k <= preperiod.len() {
                    Word::nstring(start, preperiod[k..].to_vec(), period.clone())
                } else {
                    let mut p = period.clone();
                    p.rotate_left((k - preperiod.len()) % period.len());
                    Word::nstring(start, Vec::new(), p)
                }
            }
            Word::ZPeriodic { period, .. } => {
                let start = if k == 0 { self.start() } else { self.unroll(k)[k - 1].target(pres) };
                let mut p = period.clone();
                p.rotate_left(k % period.len());
                Word::ZPeriodic { start, period: p }
            }
        }
    }

    /// `prefix` followed by this word (the prefix must end at its start).
    pub fn prepend(&self, start: usize, prefix: &[Letter]) -> Word {
        match self {
            Word::Finite { letters, .. } => {
                Word::Finite { start, letters: prefix.iter().chain(letters).copied().collect() }
            }
            Word::NString { preperiod, period, .. } => {
                Word::nstring(start, prefix.iter().chain(preperiod).copied().collect(), period.clone())
            }
            Word::ZPeriodic { .. } => panic!("cannot prepend to a bi-periodic word"),
        }
    }

    /// The same bi-periodic word read the other way.
    pub fn reversed_band(&self) -> Word {
        let Word::ZPeriodic { start, period } = self else { panic!("not a bi-periodic word") };
        Word::ZPeriodic { start: *start, period: period.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Vertex sequence `i_0, …, i_n` of a finite word.
    pub fn vertices(&self, pres: &GentlePresentation) -> Vec<usize> {
        let mut out = vec![self.start()];
        for l in self.letters() {
            out.push(l.target(pres));
        }
        out
    }

    pub fn end(&self, pres: &GentlePresentation) -> usize {
        *self.vertices(pres).last().unwrap()
    }

    pub fn inverse(&self, pres: &GentlePresentation) -> Word {
        match self {
            Word::Finite { letters, .. } => {
                Word::Finite { start: self.end(pres), letters: letters.iter().rev().map(|l| l.inverse()).collect() }
            }
            _ => panic!("inverse of an infinite word"),
        }
    }

    /// The representative of `{w, w⁻¹}` used as a module label.
    pub fn canonical(&self, pres: &GentlePresentation) -> Word {
        match self {
            Word::Finite { .. } => {
                let inv = self.inverse(pres);
                if inv < *self {
                    inv
                } else {
                    self.clone()
                }
            }
            _ => self.clone(),
        }
    }

    pub fn validate(&self, pres: &GentlePresentation) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidWord(format!("{}: {why}", self.render(pres))));
        if self.start() >= pres.vertex_count() {
            return bad("unknown vertex");
        }
        let (letters, cyclic) = match self {
            Word::Finite { letters, .. } => (letters.clone(), false),
            Word::NString { preperiod, period, .. } => {
                if period.is_empty() {
                    return bad("empty period");
                }
                (self.unroll(preperiod.len() + 2 * period.len() + 1), false)
            }
            Word::ZPeriodic { period, .. } => {
                if period.is_empty() {
                    return bad("empty period");
                }
                (self.unroll(2 * period.len() + 1), true)
            }
        };
        if letters.iter().any(|l| l.arrow() >= pres.arrows.len()) {
            return bad("unknown arrow");
        }
        if let Some(first) = letters.first() {
            if first.source(pres) != self.start() {
                return bad("first letter does not leave the start vertex");
            }
        }
        for w in letters.windows(2) {
            if !composable(pres, w[0], w[1]) {
                return bad("letters do not compose");
            }
        }
        if cyclic {
            let period = match self {
                Word::ZPeriodic { period, .. } => period,
                _ => unreachable!(),
            };
            if period.last().unwrap().target(pres) != self.start() {
                return bad("period does not close up");
            }
        }
        if let Word::NString { preperiod, period, .. } = self {
            let at = |k: usize| letters[k].source(pres);
            if at(preperiod.len()) != at(preperiod.len() + period.len()) {
                return bad("period does not close up");
            }
        }
        Ok(())
    }

    /// Does the path `p` or its inverse occur in the word?
    pub fn contains_path(&self, pres: &GentlePresentation, p: &Path) -> bool {
        if p.is_trivial() {
            return match self {
                Word::Finite { .. } => self.vertices(pres).contains(&p.start),
                _ => {
                    let n = self.window_len(p.len());
                    let ls = self.unroll(n);
                    self.start() == p.start || ls.iter().any(|l| l.target(pres) == p.start)
                }
            };
        }
        let n = self.window_len(p.len());
        let ls = self.unroll(n);
        let fwd: Vec<Letter> = p.arrows.iter().map(|&a| Letter::Direct(a)).collect();
        let bwd: Vec<Letter> = p.arrows.iter().rev().map(|&a| Letter::Inverse(a)).collect();
        ls.windows(fwd.len()).any(|w| w == fwd.as_slice() || w == bwd.as_slice())
    }

    fn window_len(&self, k: usize) -> usize {
        match self {
            Word::Finite { letters, .. } => letters.len(),
            Word::NString { preperiod, period, .. } => preperiod.len() + period.len() * (k / period.len() + 2),
            Word::ZPeriodic { period, .. } => period.len() * (k / period.len() + 2),
        }
    }

    pub fn render(&self, pres: &GentlePresentation) -> String {
        let long = pres.arrows.iter().any(|a| a.name.chars().count() != 1);
        let text = |ls: &[Letter]| -> String {
            let parts: Vec<String> = ls
                .iter()
                .rev()
                .map(|l| {
                    let n = &pres.arrows[l.arrow()].name;
                    if l.is_direct() {
                        n.clone()
                    } else {
                        format!("{n}-")
                    }
                })
                .collect();
            parts.join(if long { "." } else { "" })
        };
        match self {
            Word::Finite { start, letters } if letters.is_empty() => {
                format!("e_{}", pres.vertices[*start])
            }
            Word::Finite { letters, .. } => text(letters),
            Word::NString { preperiod, period, .. } => format!("({})*{}", text(period), text(preperiod)),
            Word::ZPeriodic { period, .. } => format!("({})^Z", text(period)),
        }
    }

    /// Pretty form with superscript inverses, e.g. `h⁻¹dgfe`.
    pub fn pretty(&self, pres: &GentlePresentation) -> String {
        self.render(pres).replace('-', "⁻¹")
    }

    pub fn parse(pres: &GentlePresentation, text: &str) -> Result<Word> {
        let err = |reason: &str| Error::WordSyntax { text: text.to_string(), reason: reason.to_string() };
        let t = text.trim().replace("⁻¹", "-");
        if let Some(v) = t.strip_prefix("e_") {
            let start = pres.vertex_named(v).ok_or_else(|| err("unknown vertex"))?;
            return Ok(Word::trivial(start));
        }
        let word = if let Some(body) = t.strip_suffix(")^Z") {
            let inner = body.strip_prefix('(').ok_or_else(|| err("missing ("))?;
            let period = parse_letters(pres, inner).map_err(|r| err(&r))?;
            let start = period.first().ok_or_else(|| err("empty period"))?.source(pres);
            Word::ZPeriodic { start, period }
        } else if let Some(rest) = t.strip_prefix('(') {
            let (inner, pre) = rest.split_once(")*").ok_or_else(|| err("expected (period)*"))?;
            let period = parse_letters(pres, inner).map_err(|r| err(&r))?;
            let preperiod = parse_letters(pres, pre).map_err(|r| err(&r))?;
            let first = preperiod.first().or(period.first()).ok_or_else(|| err("empty period"))?;
            Word::NString { start: first.source(pres), preperiod, period }
        } else {
            let letters = parse_letters(pres, &t).map_err(|r| err(&r))?;
            let first = letters.first().ok_or_else(|| err("empty word"))?;
            Word::Finite { start: first.source(pres), letters }
        };
        word.validate(pres)?;
        Ok(word)
    }
}

/// Parse printed letters (leftmost last in path order).
fn parse_letters(pres: &GentlePresentation, s: &str) -> std::result::Result<Vec<Letter>, String> {
    let tokens: Vec<String> = if s.contains('.') {
        s.split('.').filter(|x| !x.is_empty()).map(str::to_string).collect()
    } else {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut tok = chars[i].to_string();
            i += 1;
            if i < chars.len() && chars[i] == '-' {
                tok.push('-');
                i += 1;
            }
            out.push(tok);
        }
        out
    };
    let mut letters = Vec::new();
    for tok in tokens.iter().rev() {
        let (name, inv) = match tok.strip_suffix('-') {
            Some(n) => (n, true),
            None => (tok.as_str(), false),
        };
        let a = pres.arrow_named(name).ok_or_else(|| format!("unknown arrow {name:?}"))?;
        letters.push(if inv { Letter::Inverse(a) } else { Letter::Direct(a) });
    }
    Ok(letters)
}

/// Maximal runs of direct or inverse letters, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub direct: bool,
    pub letters: Vec<Letter>,
}

pub fn factorize(word: &Word) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for &l in word.letters() {
        match runs.last_mut() {
            Some(r) if r.direct == l.is_direct() => r.letters.push(l),
            _ => runs.push(Run { direct: l.is_direct(), letters: vec![l] }),
        }
    }
    runs
}

/// Every finite string of length at most `max_len`, one per inverse pair.
pub fn enumerate_strings(pres: &GentlePresentation, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = (0..pres.vertex_count()).map(Word::trivial).collect();
    for len in 0..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            if w.canonical(pres) == *w {
                out.push(w.clone());
            }
            if len == max_len {
                continue;
            }
            let end = w.end(pres);
            let last = w.letters().last().copied();
            let mut cands = Vec::new();
            for a in pres.arrows_out(end) {
                cands.push(Letter::Direct(a));
            }
            for a in pres.arrows_in(end) {
                cands.push(Letter::Inverse(a));
            }
            for l in cands {
                if last.is_none_or(|x| composable(pres, x, l)) {
                    let mut ls = w.letters().to_vec();
                    ls.push(l);
                    next.push(Word::Finite { start: w.start(), letters: ls });
                }
            }
        }
        frontier = next;
    }
    out
}

/// Result of reading an arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcString {
    Word(Word),
    InTriangulation(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Asymptotics {
    Expanding,
    Contracting,
}

impl Model {
    /// Lifts of arcs of the triangulation crossing `c`, ordered from `from`
    /// towards the other end of `c`.
    pub fn crossings_along(&self, c: &Chord, from: CoverPoint, count_hint: usize) -> Vec<(usize, Chord)> {
        let s = &self.tri.surface;
        let l = s.deck();
        let to = c.other_end(from);
        let span = (count_hint as i64 + 2) * l;
        let positions: Vec<i64> = [from, to].iter().filter_map(|x| x.position()).collect();
        let (mut lo, mut hi) = (*positions.iter().min().unwrap_or(&0), *positions.iter().max().unwrap_or(&0));
        for end in [from, to] {
            match end {
                CoverPoint::PlusInf => hi += span,
                CoverPoint::MinusInf => lo -= span,
                _ => {}
            }
        }
        let reach = self.tri.reach + l;
        let mut hits: Vec<(usize, Chord)> =
            self.tri.lifts_in_window(lo - reach, hi + reach).into_iter().filter(|(_, g)| c.crosses(g)).collect();
        let kf = from.key();
        let kt = to.key();
        let side1 = |k: (u8, i64)| {
            if kf < kt {
                kf < k && k < kt
            } else {
                k > kf || k < kt
            }
        };
        let d1 = |k: (u8, i64)| if k > kf { (0, k) } else { (1, k) };
        let d2 = |k: (u8, i64)| {
            if k < kf {
                (0, std::cmp::Reverse(k))
            } else {
                (1, std::cmp::Reverse(k))
            }
        };
        hits.sort_by_key(|(_, g)| {
            let (e1, e2) = if side1(g.a.key()) { (g.a, g.b) } else { (g.b, g.a) };
            (d1(e1.key()), d2(e2.key()))
        });
        hits
    }

    /// Letter read when passing from lift `c1` to the next crossed lift `c2`.
    pub fn letter_between(&self, c1: &Chord, c2: &Chord) -> Option<Letter> {
        let v = [c1.a, c1.b].into_iter().find(|&x| c2.has_endpoint(x))?;
        let u1 = c1.other_end(v);
        let u2 = c2.other_end(v);
        let ti = self.tri.triangle_at([v, u1, u2])?;
        let tr = &self.tri.triangles[ti];
        let l = self.tri.surface.deck();
        let vx = v.position()?;
        let corner = (0..3).find(|&k| {
            let w = tr.vertices[k];
            w.key().0 == v.key().0 && (vx - w.position().unwrap()).rem_euclid(l) == 0 && {
                let d = vx - w.position().unwrap();
                let pts = tr.vertices.map(|x| x.shift(d));
                pts.contains(&u1) && pts.contains(&u2)
            }
        })?;
        let arrow = *self.corner_arrow.get(&(ti, corner))?;
        let d = vx - tr.vertices[corner].position().unwrap();
        let prev_vertex = tr.vertices[(corner + 2) % 3].shift(d);
        // The arrow at a corner runs from the side met first counterclockwise
        // (the side towards the previous vertex) under the default convention.
        let c1_is_prev = u1 == prev_vertex;
        let forward = match self.orientation {
            crate::algebra::Orientation::Counterclockwise => c1_is_prev,
            crate::algebra::Orientation::Clockwise => !c1_is_prev,
        };
        Some(if forward { Letter::Direct(arrow) } else { Letter::Inverse(arrow) })
    }

    fn word_from_crossings(&self, crossings: &[(usize, Chord)]) -> Result<Word> {
        let start = crossings[0].0;
        let mut letters = Vec::new();
        for w in crossings.windows(2) {
            let l = self
                .letter_between(&w[0].1, &w[1].1)
                .ok_or_else(|| Error::InvalidArc("consecutive crossings share no triangle".into()))?;
            letters.push(l);
        }
        Ok(Word::Finite { start, letters })
    }

    /// The string of an arc, read from its first endpoint (the outer end of
    /// a bridging arc, `from` of a peripheral arc, the marked end of an
    /// asymptotic arc).
    pub fn string_of_arc(&self, arc: &Arc) -> Result<ArcString> {
        let s = &self.tri.surface;
        let arc = s.canonicalize_curve(arc)?;
        if let Some(i) = self.tri.index_of(&arc) {
            return Ok(ArcString::InTriangulation(i));
        }
        let c = s.lift(&arc);
        match arc {
            Arc::Bridging { outer, .. } | Arc::Peripheral { from: outer, .. } => {
                let from = match arc {
                    Arc::Bridging { .. } => s.point(Boundary::Outer, outer),
                    Arc::Peripheral { boundary, .. } => s.point(boundary, outer),
                    _ => unreachable!(),
                };
                let hits = self.crossings_along(&c, from, 0);
                if hits.is_empty() {
                    return Err(Error::InvalidArc(format!("{arc} is parallel to the boundary")));
                }
                Ok(ArcString::Word(self.word_from_crossings(&hits)?))
            }
            Arc::Asymptotic { boundary, index, .. } => {
                let from = s.point(boundary, index);
                let sb = self.tri.bridging_count();
                let n = self.tri.len();
                let hits = self.crossings_along(&c, from, n + 4);
                let m = hits
                    .iter()
                    .position(|(i, _)| self.tri.arcs[*i].is_bridging())
                    .ok_or_else(|| Error::InvalidArc("asymptotic arc meets no bridging arc".into()))?;
                let need = &hits[..=m + sb];
                let w = self.word_from_crossings(need)?;
                let ls = w.letters();
                Ok(ArcString::Word(Word::NString {
                    start: w.start(),
                    preperiod: ls[..m].to_vec(),
                    period: ls[m..m + sb].to_vec(),
                }))
            }
            Arc::Band => Ok(ArcString::Word(self.band_of().word)),
        }
    }

    /// Convenience: the word of an arc that is not in the triangulation.
    pub fn word_of(&self, arc: &Arc) -> Result<Word> {
        match self.string_of_arc(arc)? {
            ArcString::Word(w) => Ok(w),
            ArcString::InTriangulation(i) => {
                Err(Error::InvalidArc(format!("{} belongs to the triangulation", self.tri.arcs[i])))
            }
        }
    }

    /// The band curve's bi-periodic string, the band `b = a_s…a_1`, its
    /// anchor `i_0` and `s`. The anchor is the least vertex at which the
    /// incoming letter `a_0` is inverse and `a_1` is direct.
    pub fn band_of(&self) -> BandData {
        let s = &self.tri.surface;
        let sb = self.tri.bridging_count();
        let c = s.lift(&Arc::Band);
        // The vertex sequence is read leftwards in the cover.
        let hits = self.crossings_along(&c, CoverPoint::PlusInf, 3 * sb + 4);
        let take = 3 * sb + 1;
        let mid = hits.len() / 2 - sb;
        let seq = &hits[mid..mid + take];
        let w = self.word_from_crossings(seq).expect("band crossings");
        let ls = w.letters();
        let verts: Vec<usize> = seq.iter().map(|(i, _)| *i).collect();
        let mut best: Option<usize> = None;
        for j in sb..2 * sb {
            // Vertex verts[j] with a_0 = ls[j-1] and a_1 = ls[j].
            if !ls[j - 1].is_direct() && ls[j].is_direct() && best.is_none_or(|b| verts[j] < verts[b]) {
                best = Some(j);
            }
        }
        let j = best.expect("bridging arcs change orientation");
        let period: Vec<Letter> = ls[j..j + sb].to_vec();
        BandData {
            word: Word::ZPeriodic { start: verts[j], period: period.clone() },
            band: period,
            anchor: verts[j],
            s: sb,
        }
    }

    /// The arc whose string is `word` (finite or ℕ-string).
    pub fn arc_of_string(&self, word: &Word) -> Result<Arc> {
        let s = &self.tri.surface;
        let (start, letters, periodic) = match word {
            Word::Finite { start, letters } => (*start, letters.clone(), None),
            Word::NString { start, preperiod, period } => {
                let mut ls = preperiod.clone();
                ls.extend(period.iter().copied());
                (*start, ls, Some(preperiod.len()))
            }
            Word::ZPeriodic { .. } => return Ok(Arc::Band),
        };
        if start >= self.tri.len() {
            return Err(Error::InvalidWord("unknown start vertex".into()));
        }
        let c0 = s.lift(&self.tri.arcs[start]);
        'side: for inside in [true, false] {
            let Some(a) = self.tri.apex(&c0, inside) else {
                continue;
            };
            let mut chords = vec![c0];
            for &l in &letters {
                let cur = *chords.last().unwrap();
                let Some(w) = self.tri.apex(&cur, !cur_inside(&cur, a)) else {
                    continue 'side;
                };
                let mut found = None;
                for v in [cur.a, cur.b] {
                    let cand = Chord::new(v, w);
                    if self.tri.vertex_of_chord(&cand).is_some() && self.letter_between(&cur, &cand) == Some(l) {
                        found = Some(cand);
                    }
                }
                match found {
                    Some(n) => chords.push(n),
                    None => continue 'side,
                }
            }
            return match periodic {
                None => {
                    let last = *chords.last().unwrap();
                    let b = self
                        .tri
                        .apex(&last, !cur_inside(&last, a))
                        .ok_or_else(|| Error::InvalidWord("walk left the surface".into()))?;
                    s.arc_of_chord(&Chord::new(a, b))
                }
                Some(m) => {
                    let first = chords[m];
                    let last = *chords.last().unwrap();
                    let shift = last.a.position().unwrap() - first.a.position().unwrap();
                    let spiral = if shift > 0 { Spiral::Anticlockwise } else { Spiral::Clockwise };
                    let (boundary, index) = s.unpoint(a).unwrap();
                    s.canonicalize(&Arc::Asymptotic { boundary, index, spiral })
                }
            };
        }
        Err(Error::InvalidWord(format!("{} is not realised by an arc", word.render(&self.pres))))
    }

    /// Is a finite word realised by the same arc read backwards?
    pub fn same_module(&self, w1: &Word, w2: &Word) -> bool {
        w1.canonical(&self.pres) == w2.canonical(&self.pres)
    }

    /// First `n` letters of an ℕ-string and the finite arc they describe.
    pub fn truncate(&self, word: &Word, n: usize) -> Result<(Word, Arc)> {
        let Word::NString { start, .. } = word else {
            return Err(Error::InvalidWord("truncate needs an ℕ-string".into()));
        };
        let w = Word::Finite { start: *start, letters: word.unroll(n) };
        let arc = self.arc_of_string(&w)?;
        Ok((w, arc))
    }
}

fn cur_inside(c: &Chord, x: CoverPoint) -> bool {
    let k = x.key();
    c.a.key() < k && k < c.b.key()
}

#[derive(Clone, Debug)]
pub struct BandData {
    pub word: Word,
    /// `a_1, …, a_s` in path order.
    pub band: Vec<Letter>,
    pub anchor: usize,
    pub s: usize,
}

/// Expanding or contracting, from the letter that first closes the period.
pub fn classify_asymptotic(pres: &GentlePresentation, word: &Word) -> Result<Asymptotics> {
    let Word::NString { start, preperiod, period } = word else {
        return Err(Error::InvalidWord("classification needs an ℕ-string".into()));
    };
    let p = preperiod.len();
    let ls = word.unroll(p + period.len() + 1);
    let mut verts = vec![*start];
    for l in &ls {
        verts.push(l.target(pres));
    }
    let n = (1..=period.len()).find(|&n| verts[p + n] == verts[p]).unwrap_or(period.len());
    Ok(if ls[p + n - 1].is_direct() { Asymptotics::Expanding } else { Asymptotics::Contracting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{validate_triangulation, AnnulusSurface};

    pub(crate) fn kronecker() -> Model {
        let s = AnnulusSurface::new(1, 1).unwrap();
        let t =
            validate_triangulation(&s, &[Arc::Bridging { outer: 0, inner: 0 }, Arc::Bridging { outer: 0, inner: 1 }])
                .unwrap();
        Model::new(t)
    }

    #[test]
    fn parse_print_round_trip() {
        let m = kronecker();
        for text in ["a", "b-a", "e_1", "ab-a", "(b-a)*", "(ab-)*a", "(b-a)^Z"] {
            let w = Word::parse(&m.pres, text).unwrap();
            assert_eq!(w.render(&m.pres), text);
        }
        assert!(Word::parse(&m.pres, "aa").is_err());
        assert!(Word::parse(&m.pres, "a-a").is_err());
    }

    #[test]
    fn kronecker_strings_of_arcs() {
        let m = kronecker();
        for k in -4..=4i64 {
            let arc = Arc::Bridging { outer: 0, inner: k };
            match m.string_of_arc(&arc).unwrap() {
                ArcString::InTriangulation(_) => assert!(k == 0 || k == 1),
                ArcString::Word(w) => {
                    w.validate(&m.pres).unwrap();
                    // Winding k crosses |k| + |k-1| lifts.
                    assert_eq!(w.len() as i64 + 1, k.abs() + (k - 1).abs() - 2);
                    let back = m.arc_of_string(&w).unwrap();
                    assert_eq!(back, arc);
                }
            }
        }
    }

    #[test]
    fn kronecker_band() {
        let m = kronecker();
        let b = m.band_of();
        assert_eq!(b.s, 2);
        b.word.validate(&m.pres).unwrap();
    }

    #[test]
    fn enumeration_counts_are_inverse_free() {
        let m = kronecker();
        let ws = enumerate_strings(&m.pres, 3);
        for w in &ws {
            assert_eq!(w.canonical(&m.pres), *w);
            w.validate(&m.pres).unwrap();
        }
        // e1, e2, a, b, b-a, a-b, ab-a, ba-b... up to inversion.
        assert_eq!(ws.iter().filter(|w| w.is_empty()).count(), 2);
        assert_eq!(ws.iter().filter(|w| w.len() == 1).count(), 2);
        assert_eq!(ws.iter().filter(|w| w.len() == 2).count(), 2);
    }

    #[test]
    fn factorization_concatenates() {
        let m = kronecker();
        let w = Word::parse(&m.pres, "ab-a").unwrap();
        let runs = factorize(&w);
        assert_eq!(runs.len(), 3);
        let flat: Vec<Letter> = runs.iter().flat_map(|r| r.letters.clone()).collect();
        assert_eq!(flat, w.letters());
    }
}
