//! Projective resolutions as string and band complexes, and maps between
//! them in the homotopy category.
//!
//! A complex is kept as its unfolded diagram: indecomposable projectives
//! `P(v)` placed in degrees `0, −1, …, −D`, joined by edges labelled with
//! paths. An edge `P(x) → P(y)` labelled `p` uses a path `p: y → x` and
//! sends a path `w` out of `x` to `p` followed by `w`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{enumerate_path_basis, GentlePresentation, Model, Path};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::Projectives;
use crate::linalg::Matrix;
use crate::representations::{
    band_module, cokernel, find_isomorphism, projective_of_vertex, string_module, Flavor, Morphism, Representation,
};
use crate::strings::{classify_asymptotic, composable, Asymptotics, Letter, Word};

use std::sync::Arc as Shared;

/// Deepest window any operation will build.
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tail {
    None,
    /// The antipath repeats this cycle of arrows forever.
    Periodic(Vec<usize>),
}

/// `a_0, a_1, …` with `a_{i+1} a_i ∈ I`: a finite prefix, then possibly a
/// repeating cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntipathDescriptor {
    pub arrows: Vec<usize>,
    pub tail: Tail,
}

impl AntipathDescriptor {
    pub fn is_infinite(&self) -> bool {
        matches!(self.tail, Tail::Periodic(_))
    }

    /// `a_k`, if the antipath is that long.
    pub fn arrow(&self, k: usize) -> Option<usize> {
        if k < self.arrows.len() {
            return Some(self.arrows[k]);
        }
        match &self.tail {
            Tail::Periodic(c) => Some(c[(k - self.arrows.len()) % c.len()]),
            Tail::None => None,
        }
    }

    pub fn render(&self, pres: &GentlePresentation) -> String {
        let name = |a: &usize| pres.arrows[*a].name.clone();
        let mut s: Vec<String> = self.arrows.iter().map(name).collect();
        if let Tail::Periodic(c) = &self.tail {
            s.push(format!("({})*", c.iter().map(name).collect::<Vec<_>>().join(" ")));
        }
        s.join(" ")
    }
}

/// The longest antipath starting at `a0`.
pub fn antipath_from(pres: &GentlePresentation, a0: usize) -> AntipathDescriptor {
    let mut seq = vec![a0];
    loop {
        let last = *seq.last().unwrap();
        let Some(&(next, _)) = pres.relations.iter().find(|&&(_, a)| a == last) else {
            return AntipathDescriptor { arrows: seq, tail: Tail::None };
        };
        if let Some(j) = seq.iter().position(|&a| a == next) {
            let cycle = seq.split_off(j);
            return AntipathDescriptor { arrows: seq, tail: Tail::Periodic(cycle) };
        }
        seq.push(next);
    }
}

/// A string with an antipath hanging off each end it can be extended at.
/// Ends that cannot be extended lose their last run of letters pointing
/// into the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyString {
    pub core: Word,
    /// Antipath `a_0 a_1 …` attached at the start (path order).
    pub start_tail: Option<AntipathDescriptor>,
    /// Antipath `c_0 c_1 …` attached at the end; absent for ℕ- and ℤ-strings.
    pub end_tail: Option<AntipathDescriptor>,
}

/// The arrow `a_0` with `a_0⁻¹` extending the word at its start.
fn start_extension(pres: &GentlePresentation, word: &Word) -> Option<usize> {
    let start = word.start();
    let first = word.unroll(1).first().copied();
    let mut outs = pres.arrows_out(start);
    match first {
        Some(l) => outs.find(|&a| composable(pres, Letter::Inverse(a), l)),
        None => outs.next(),
    }
}

/// The arrow `c_0` with `c_0` extending a finite word at its end.
fn end_extension(pres: &GentlePresentation, word: &Word, avoid: Option<usize>) -> Option<usize> {
    let Word::Finite { letters, .. } = word else { return None };
    let end = word.end(pres);
    let mut outs = pres.arrows_out(end).filter(|&a| Some(a) != avoid || !letters.is_empty());
    match letters.last() {
        Some(&l) => outs.find(|&a| composable(pres, l, Letter::Direct(a))),
        None => outs.next(),
    }
}

pub fn homotopy_string_of(pres: &GentlePresentation, word: &Word) -> Result<HomotopyString> {
    word.validate(pres)?;
    if let Word::ZPeriodic { .. } = word {
        return Ok(HomotopyString { core: word.clone(), start_tail: None, end_tail: None });
    }
    let a0 = start_extension(pres, word);
    let c0 = end_extension(pres, word, a0);
    let mut core = word.clone();
    if a0.is_none() {
        // Drop the leading inverse run.
        let k = word.unroll(word.len().min(64)).iter().take_while(|l| !l.is_direct()).count();
        core = core.suffix_from(pres, k);
    }
    if c0.is_none() {
        if let Word::Finite { start, letters } = &core {
            let keep = letters.len() - letters.iter().rev().take_while(|l| l.is_direct()).count();
            core = Word::Finite { start: *start, letters: letters[..keep].to_vec() };
        }
    }
    Ok(HomotopyString {
        core,
        start_tail: a0.map(|a| antipath_from(pres, a)),
        end_tail: c0.map(|c| antipath_from(pres, c)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub degree: i32,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub path: Path,
    pub coeff: i64,
}

/// A window `[−D, 0]` of a string or band complex.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexWindow {
    pub label: String,
    pub depth: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// Nodes in unfolded-diagram order.
    pub line: Vec<usize>,
    /// `line_edges[k]` joins `line[k]` to the next node, cyclically for bands.
    pub line_edges: Vec<usize>,
    /// Band complexes repeat the line `copies` times: copy `c` of node `x`
    /// is `x + c`, of edge `e` is `e + c`.
    pub copies: usize,
    pub cyclic: bool,
    pub flavor: Option<Flavor>,
    /// Only part of an infinite string was laid out.
    pub truncated: bool,
}

/// `first` followed by `then`, if the composite is a nonzero path.
fn concat(pres: &GentlePresentation, first: &Path, then: &Path) -> Option<Path> {
    if first.end(pres) != then.start {
        return None;
    }
    if let (Some(&x), Some(&y)) = (first.arrows.last(), then.arrows.first()) {
        if pres.is_relation(y, x) {
            return None;
        }
    }
    let mut arrows = first.arrows.clone();
    arrows.extend(&then.arrows);
    Some(Path { start: first.start, arrows })
}

fn path_of(start: usize, arrows: Vec<usize>) -> Path {
    Path { start, arrows }
}

struct Builder {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl Builder {
    fn node(&mut self, degree: i32, vertex: usize) -> usize {
        self.nodes.push(Node { degree, vertex });
        self.nodes.len() - 1
    }
    fn edge(&mut self, from: usize, to: usize, path: Path, coeff: i64) {
        self.edges.push(Edge { from, to, path, coeff });
    }
    /// Antipath nodes below `top`, returned top first.
    fn tail(&mut self, pres: &GentlePresentation, top: usize, ap: &AntipathDescriptor, depth: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev = top;
        for k in 1..depth {
            let Some(a) = ap.arrow(k) else { break };
            let n = self.node(-(k as i32) - 1, pres.arrows[a].target);
            self.edge(n, prev, path_of(pres.arrows[a].source, vec![a]), 1);
            out.push(n);
            prev = n;
        }
        out
    }
}

/// Runs of a finite letter sequence, padded to start with an inverse run and
/// end with a direct run.
fn runs(letters: &[Letter]) -> Vec<(bool, Vec<Letter>)> {
    let mut out: Vec<(bool, Vec<Letter>)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((d, run)) if *d == l.is_direct() => run.push(l),
            _ => out.push((l.is_direct(), vec![l])),
        }
    }
    if out.first().is_none_or(|r| r.0) {
        out.insert(0, (false, Vec::new()));
    }
    if out.last().is_none_or(|r| !r.0) {
        out.push((true, Vec::new()));
    }
    out
}

/// The path read along a run: a direct run as written, an inverse run
/// backwards.
fn run_path(pres: &GentlePresentation, from_vertex: usize, dir: bool, run: &[Letter]) -> Path {
    if dir {
        path_of(from_vertex, run.iter().map(|l| l.arrow()).collect())
    } else {
        let start = run.last().map_or(from_vertex, |l| l.target(pres));
        path_of(start, run.iter().rev().map(|l| l.arrow()).collect())
    }
}

/// The string complex of a finite word or an ℕ-string, down to degree
/// `−depth`. An ℕ-string is laid out along `periods` copies of its period.
pub fn string_complex(pres: &GentlePresentation, word: &Word, depth: usize, periods: usize) -> Result<ComplexWindow> {
    if !(2..=MAX_DEPTH).contains(&depth) {
        return Err(Error::WindowTooShallow(depth));
    }
    let h = homotopy_string_of(pres, word)?;
    let (letters, truncated, flavor) = match word {
        Word::Finite { letters, .. } => (letters.clone(), false, None),
        Word::NString { preperiod, period, .. } => {
            let n = preperiod.len() + period.len() * periods.max(1);
            let flavor = match classify_asymptotic(pres, word)? {
                Asymptotics::Expanding => Flavor::Product,
                Asymptotics::Contracting => Flavor::DirectSum,
            };
            (word.unroll(n), true, Some(flavor))
        }
        Word::ZPeriodic { .. } => return Err(Error::InvalidWord("use band_complex for a band".into())),
    };
    let rs = runs(&letters);
    let mut verts = vec![word.start()];
    for l in &letters {
        verts.push(l.target(pres));
    }
    let mut b = Builder { nodes: Vec::new(), edges: Vec::new() };
    let mut line = Vec::new();
    let mut pos = 0;
    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    // rs = inv_0, dir_0, inv_1, dir_1, …, inv_n, dir_n
    let mut paths = Vec::new();
    for (dir, run) in &rs {
        let p = run_path(pres, verts[pos], *dir, run);
        if *dir {
            peaks.push(b.node(0, verts[pos]));
            pos += run.len();
            valleys.push(verts[pos]);
        } else {
            pos += run.len();
        }
        paths.push(p);
    }
    valleys.pop();
    let n = peaks.len() - 1;
    // Start side: P(t(a_0)) --a_0 q_0--> P(s(p_0)).
    let mut start_nodes = Vec::new();
    if let Some(ap) = &h.start_tail {
        let a0 = ap.arrow(0).unwrap();
        let q0 = &paths[0];
        let lab = concat(pres, q0, &path_of(pres.arrows[a0].source, vec![a0])).expect("a_0 q_0 is a path");
        let top = b.node(-1, pres.arrows[a0].target);
        b.edge(top, peaks[0], lab, 1);
        start_nodes.push(top);
        start_nodes.extend(b.tail(pres, top, ap, depth));
    }
    for &x in start_nodes.iter().rev() {
        line.push(x);
    }
    for i in 0..=n {
        line.push(peaks[i]);
        if i < n {
            let v = b.node(-1, valleys[i]);
            b.edge(v, peaks[i], paths[2 * i + 1].clone(), 1);
            b.edge(v, peaks[i + 1], paths[2 * i + 2].clone(), 1);
            line.push(v);
        }
    }
    if let (Some(ap), false) = (&h.end_tail, truncated) {
        let c0 = ap.arrow(0).unwrap();
        let pn = &paths[2 * n + 1];
        let lab = concat(pres, pn, &path_of(pres.arrows[c0].source, vec![c0])).expect("c_0 p_n is a path");
        let top = b.node(-1, pres.arrows[c0].target);
        b.edge(top, peaks[n], lab, 1);
        line.push(top);
        line.extend(b.tail(pres, top, ap, depth));
    }
    let line_edges = line
        .windows(2)
        .map(|p| b.edges.iter().position(|e| (e.from, e.to) == (p[0], p[1]) || (e.from, e.to) == (p[1], p[0])).unwrap())
        .collect();
    Ok(ComplexWindow {
        label: word.render(pres),
        depth,
        nodes: b.nodes,
        edges: b.edges,
        line_edges,
        line,
        copies: 1,
        cyclic: false,
        flavor,
        truncated,
    })
}

/// The band complex `B_{λ,n}`: the complex of the band string with the
/// Jordan block `J_n(λ)` on one edge.
///
/// The block sits on the run sharing a valley with the run of the band's
/// first letter, scaled by `(−1)^t` for `t` peaks, which makes
/// `H⁰ ≅ M(λ,n)` with the band module's own normalisation.
pub fn band_complex(pres: &GentlePresentation, band: &Word, lambda: i64, n: usize) -> Result<ComplexWindow> {
    let Word::ZPeriodic { start, period } = band else {
        return Err(Error::InvalidWord("band complexes need a bi-periodic word".into()));
    };
    if lambda == 0 {
        return Err(Error::ZeroBandParameter);
    }
    if n == 0 {
        return Err(Error::ZeroBandSize);
    }
    let s = period.len();
    let mut verts = vec![*start];
    for l in &period[..s - 1] {
        verts.push(l.target(pres));
    }
    // Rotate to begin at a peak: inverse letter in, direct letter out.
    let r = (0..s)
        .find(|&k| !period[(k + s - 1) % s].is_direct() && period[k].is_direct())
        .ok_or_else(|| Error::InvalidWord("band without a peak".into()))?;
    let letters: Vec<Letter> = (0..s).map(|k| period[(r + k) % s]).collect();
    let vs: Vec<usize> = (0..s).map(|k| verts[(r + k) % s]).collect();
    // Position of the original first letter after rotation.
    let marked = (s - r) % s;
    let mut rs: Vec<(bool, usize, usize)> = Vec::new(); // (direct, from, len)
    for (k, l) in letters.iter().enumerate() {
        match rs.last_mut() {
            Some((d, _, len)) if *d == l.is_direct() => *len += 1,
            _ => rs.push((l.is_direct(), k, 1)),
        }
    }
    let t = rs.len() / 2;
    let jordan_run = rs.iter().position(|&(_, from, len)| (from..from + len).contains(&marked)).unwrap() ^ 1;
    let coeff = if t % 2 == 1 { -lambda } else { lambda };
    let mut b = Builder { nodes: Vec::new(), edges: Vec::new() };
    let copies = |b: &mut Builder, deg: i32, v: usize| (0..n).map(|_| b.node(deg, v)).collect::<Vec<_>>();
    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    for i in 0..t {
        let (_, from, len) = rs[2 * i];
        peaks.push(copies(&mut b, 0, vs[from]));
        valleys.push(copies(&mut b, -1, vs[(from + len) % s]));
    }
    let mut line = Vec::new();
    for i in 0..t {
        line.push(peaks[i][0]);
        line.push(valleys[i][0]);
    }
    let mut line_edges = Vec::new();
    let mut jordan_path = None;
    for (k, &(dir, from, len)) in rs.iter().enumerate() {
        let i = k / 2;
        let run = &letters[from..from + len];
        let p = run_path(pres, vs[from], dir, run);
        let (val, peak) = if dir { (&valleys[i], &peaks[i]) } else { (&valleys[i], &peaks[(i + 1) % t]) };
        let jordan = k == jordan_run;
        line_edges.push(b.edges.len());
        for c in 0..n {
            b.edge(val[c], peak[c], p.clone(), if jordan { coeff } else { 1 });
        }
        if jordan {
            jordan_path = Some((k, p));
        }
    }
    let (k, p) = jordan_path.expect("band has a marked run");
    let i = k / 2;
    let peak = if rs[k].0 { &peaks[i] } else { &peaks[(i + 1) % t] };
    for c in 0..n - 1 {
        b.edge(valleys[i][c + 1], peak[c], p.clone(), 1);
    }
    Ok(ComplexWindow {
        label: format!("B({lambda},{n})"),
        depth: 1,
        nodes: b.nodes,
        edges: b.edges,
        line,
        line_edges,
        copies: n,
        cyclic: true,
        flavor: None,
        truncated: false,
    })
}

/// Basis of `P(v)` in the order used by [`projective_of_vertex`].
struct ProjBasis {
    /// For each vertex `x`: paths out of `x`, with their local index.
    paths: Vec<Vec<(Path, usize)>>,
    dims: Vec<Vec<usize>>,
}

impl ProjBasis {
    fn new(pres: &GentlePresentation) -> Result<Self> {
        let all = enumerate_path_basis(pres)?;
        let n = pres.vertex_count();
        let mut paths = vec![Vec::new(); n];
        let mut dims = vec![vec![0; n]; n];
        for p in all {
            let e = p.end(pres);
            let x = p.start;
            paths[x].push((p, dims[x][e]));
            dims[x][e] += 1;
        }
        Ok(ProjBasis { paths, dims })
    }
}

impl ComplexWindow {
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.nodes.iter().map(|n| n.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn nodes_in(&self, degree: i32) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].degree == degree).collect()
    }

    /// `P^k` as a representation.
    pub fn term<F: Field>(
        &self,
        pres: &Shared<GentlePresentation>,
        field: &F,
        degree: i32,
    ) -> Result<Representation<F>> {
        let parts = self
            .nodes_in(degree)
            .iter()
            .map(|&i| projective_of_vertex(pres, field, self.nodes[i].vertex))
            .collect::<Result<Vec<_>>>()?;
        Ok(if parts.is_empty() {
            Representation::zero(pres.clone(), field.clone())
        } else {
            Representation::direct_sum(&parts.iter().collect::<Vec<_>>())
        })
    }

    /// `d^k: P^k → P^{k+1}` vertex by vertex.
    pub fn differential<F: Field>(&self, pres: &GentlePresentation, field: &F, degree: i32) -> Result<Morphism<F>> {
        let pb = ProjBasis::new(pres)?;
        let src = self.nodes_in(degree);
        let tgt = self.nodes_in(degree + 1);
        let nv = pres.vertex_count();
        let offsets = |list: &[usize]| -> (Vec<HashMap<usize, usize>>, Vec<usize>) {
            let mut off = vec![HashMap::new(); nv];
            let mut tot = vec![0; nv];
            for &i in list {
                for v in 0..nv {
                    off[v].insert(i, tot[v]);
                    tot[v] += pb.dims[self.nodes[i].vertex][v];
                }
            }
            (off, tot)
        };
        let (so, st) = offsets(&src);
        let (to, tt) = offsets(&tgt);
        let mut d: Morphism<F> = (0..nv).map(|v| Matrix::zeros(field, tt[v], st[v])).collect();
        for e in self.edges.iter().filter(|e| self.nodes[e.from].degree == degree) {
            let (x, y) = (self.nodes[e.from].vertex, self.nodes[e.to].vertex);
            let c = field.from_i64(e.coeff);
            for (w, li) in &pb.paths[x] {
                if let Some(img) = concat(pres, &e.path, w) {
                    let v = img.end(pres);
                    let lj = pb.paths[y].iter().find(|(q, _)| *q == img).map(|(_, l)| *l).expect("nonzero path");
                    d[v].add_at(to[v][&e.to] + lj, so[v][&e.from] + li, &c);
                }
            }
        }
        Ok(d)
    }

    /// `d² = 0` at every degree of the window.
    pub fn is_complex<F: Field>(&self, pres: &GentlePresentation, field: &F) -> Result<bool> {
        for k in -(self.depth as i32)..-1 {
            let d1 = self.differential(pres, field, k)?;
            let d2 = self.differential(pres, field, k + 1)?;
            if d2.iter().zip(&d1).any(|(a, b)| a.cols() > 0 && b.rows() > 0 && !a.mul(b).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `H^{-k} = 0` for `0 < k < depth`, vertex by vertex.
    pub fn is_acyclic_below_zero<F: Field>(&self, pres: &GentlePresentation, field: &F) -> Result<bool> {
        for k in 1..self.depth as i32 {
            let out = self.differential(pres, field, -k)?;
            let inc = self.differential(pres, field, -k - 1)?;
            for v in 0..out.len() {
                let kernel = out[v].cols() - out[v].rank();
                if kernel != inc[v].rank() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `H⁰ = coker d^{-1}`.
    pub fn h0<F: Field>(&self, pres: &Shared<GentlePresentation>, field: &F) -> Result<Representation<F>> {
        let p0 = self.term(pres, field, 0)?;
        let d = self.differential(pres, field, -1)?;
        Ok(cokernel(&p0, &d).0)
    }

    /// ASCII unfolded diagram: degrees above, projectives below, arrows
    /// between neighbours pointing along the differential.
    pub fn ascii(&self, pres: &GentlePresentation) -> String {
        let mut top = String::new();
        let mut mid = String::new();
        for (k, &i) in self.line.iter().enumerate() {
            let cell = format!("P{}", pres.vertices[self.nodes[i].vertex]);
            let deg = self.nodes[i].degree.to_string();
            let w = cell.len().max(deg.len());
            let _ = write!(top, "{deg:^w$}");
            let _ = write!(mid, "{cell:^w$}");
            if k + 1 < self.line.len() || self.cyclic {
                let e = &self.edges[self.line_edges[k]];
                let lab =
                    if e.coeff == 1 { e.path.render(pres) } else { format!("{}{}", e.coeff, e.path.render(pres)) };
                let arrow = if e.from == i { format!(" -{lab}-> ") } else { format!(" <-{lab}- ") };
                let _ = write!(top, "{:w$}", "", w = arrow.chars().count());
                mid.push_str(&arrow);
            }
        }
        if self.cyclic {
            mid.push_str(" (cyclic)");
        }
        format!("{}\n{}\n", top.trim_end(), mid.trim_end())
    }
}

/// Checks that a finite string complex resolves its module: `d² = 0`,
/// `H⁰ ≅ M(u)` and `H^{-k} = 0` for `0 < k < depth`.
pub fn check_string_window<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    word: &Word,
    depth: usize,
) -> Result<bool> {
    let w = string_complex(pres, word, depth, 1)?;
    let m = string_module(pres, field, word)?;
    let h0 = w.h0(pres, field)?;
    Ok(w.is_complex(pres, field)? && w.is_acyclic_below_zero(pres, field)? && find_isomorphism(&h0, &m).is_some())
}

/// Band version: `d² = 0` holds trivially for two terms; checks that
/// `d^{-1}` is injective and `H⁰ ≅ M(λ,n)`.
pub fn check_band_window<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    band: &Word,
    lambda: i64,
    n: usize,
) -> Result<bool> {
    let w = band_complex(pres, band, lambda, n)?;
    let d = w.differential(pres, field, -1)?;
    let injective = d.iter().all(|m| m.rank() == m.cols());
    let m = band_module(pres, field, band, &field.from_i64(lambda), n)?;
    Ok(injective && find_isomorphism(&w.h0(pres, field)?, &m).is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StandardMapKind {
    GraphMap,
    SingletonSingle,
    SingletonDouble,
    /// A homotopy class with no graph or singleton representative.
    QuasiGraph,
}

/// One component `P(m) → P(n)` of a map, given by a path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub source: usize,
    pub target: usize,
    pub path: Path,
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardMapWitness {
    pub kind: StandardMapKind,
    /// Components with their coefficients, rendered.
    pub components: Vec<(Component, String)>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StandardMapReport {
    pub witnesses: Vec<StandardMapWitness>,
    /// `dim Hom_K(P_M, P_N[1])`, computed from the windows.
    pub hom_dim: usize,
    /// Graph maps and singleton maps are independent up to homotopy.
    pub independent: bool,
}

/// Linear algebra of graded maps `P_M → P_N[1]` between two windows.
struct MapSpace<'a, F: Field> {
    pres: &'a GentlePresentation,
    field: &'a F,
    m: &'a ComplexWindow,
    n: &'a ComplexWindow,
    atoms: Vec<Component>,
    index: HashMap<Component, usize>,
}

impl<'a, F: Field> MapSpace<'a, F> {
    fn new(
        pres: &'a GentlePresentation,
        field: &'a F,
        m: &'a ComplexWindow,
        n: &'a ComplexWindow,
        shift: i32,
    ) -> Result<Self> {
        let pb = ProjBasis::new(pres)?;
        let mut atoms = Vec::new();
        for (i, a) in m.nodes.iter().enumerate() {
            for (j, b) in n.nodes.iter().enumerate() {
                if b.degree != a.degree + shift {
                    continue;
                }
                // Paths from the target's vertex to the source's vertex.
                for (p, _) in &pb.paths[b.vertex] {
                    if p.end(pres) == a.vertex {
                        atoms.push(Component { source: i, target: j, path: p.clone() });
                    }
                }
            }
        }
        let index = atoms.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        Ok(MapSpace { pres, field, m, n, atoms, index })
    }

    /// `d_N ∘ f − f ∘ d_M` for a map with one component, as a sparse vector
    /// over components `P(m) → P(n')` one degree higher. With `plus` the
    /// second term is added instead, giving the boundary of a homotopy.
    fn defect(&self, c: &Component, plus: bool) -> BTreeMap<Component, F::Elem> {
        let f = self.field;
        let mut out: BTreeMap<Component, F::Elem> = BTreeMap::new();
        let mut add = |k: Component, v: F::Elem| {
            let e = out.entry(k).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        };
        for e in self.n.edges.iter().filter(|e| e.from == c.target) {
            if let Some(p) = concat(self.pres, &e.path, &c.path) {
                add(Component { source: c.source, target: e.to, path: p }, f.from_i64(e.coeff));
            }
        }
        // Only sources inside the window contribute: the window of M is a
        // subcomplex.
        for e in self.m.edges.iter().filter(|e| e.to == c.source) {
            if let Some(p) = concat(self.pres, &c.path, &e.path) {
                let x = f.from_i64(e.coeff);
                add(Component { source: e.from, target: c.target, path: p }, if plus { x } else { f.neg(&x) });
            }
        }
        out.retain(|_, v| !f.is_zero(v));
        out
    }
}

/// Sparse map as a dense vector over a component index.
fn densify<F: Field>(
    field: &F,
    len: usize,
    index: &HashMap<Component, usize>,
    v: &BTreeMap<Component, F::Elem>,
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (k, x) in v {
        out[index[k]] = x.clone();
    }
    out
}

/// Standard maps `P_M → P_N[1]` between two windows: graph maps along
/// common stretches of the unfolded diagrams, single and double maps, and
/// one representative for each remaining homotopy class (quasi-graph
/// maps). The homotopy category computation uses `M` truncated at its
/// window, which is exact for `depth ≥ 2`.
pub fn find_standard_maps<F: Field>(
    pres: &GentlePresentation,
    field: &F,
    wm: &ComplexWindow,
    wn: &ComplexWindow,
) -> Result<StandardMapReport> {
    if wm.depth < 2 && !wm.cyclic {
        return Err(Error::WindowTooShallow(wm.depth));
    }
    let maps = MapSpace::new(pres, field, wm, wn, 1)?;
    let homs = MapSpace::new(pres, field, wm, wn, 0)?;
    let na = maps.atoms.len();
    if na == 0 {
        return Ok(StandardMapReport { witnesses: Vec::new(), hom_dim: 0, independent: true });
    }
    // Defects of each atom, over an index of defect components.
    let defects: Vec<BTreeMap<Component, F::Elem>> = maps.atoms.iter().map(|c| maps.defect(c, false)).collect();
    let mut dindex: HashMap<Component, usize> = HashMap::new();
    for d in &defects {
        for k in d.keys() {
            let l = dindex.len();
            dindex.entry(k.clone()).or_insert(l);
        }
    }
    let dl = dindex.len();
    let dcols: Vec<Vec<F::Elem>> = defects.iter().map(|d| densify(field, dl, &dindex, d)).collect();
    let dmat = if dl == 0 { Matrix::zeros(field, 0, na) } else { Matrix::from_columns(field, dl, &dcols) };
    let cycles_dim = na - dmat.rank();
    // Null-homotopic maps: d_N h + h d_M.
    let boundary: Vec<Vec<F::Elem>> =
        homs.atoms.iter().map(|c| densify(field, na, &maps.index, &homs.defect(c, true))).collect();
    let brank = crate::linalg::span_dim(field, na, &boundary);
    let hom_dim = cycles_dim - brank;

    // Candidate pool.
    let mut pool: Vec<(StandardMapKind, BTreeMap<Component, F::Elem>)> = Vec::new();
    for g in graph_maps(&maps, &defects) {
        pool.push((StandardMapKind::GraphMap, g));
    }
    for (k, d) in defects.iter().enumerate() {
        if d.is_empty() && !maps.atoms[k].path.is_trivial() {
            pool.push((StandardMapKind::SingletonSingle, [(maps.atoms[k].clone(), field.one())].into()));
        }
    }
    let mut by_support: HashMap<Vec<Component>, Vec<usize>> = HashMap::new();
    for (k, d) in defects.iter().enumerate() {
        if !d.is_empty() {
            by_support.entry(d.keys().cloned().collect()).or_default().push(k);
        }
    }
    for group in by_support.values() {
        for (x, &i) in group.iter().enumerate() {
            for &j in &group[x + 1..] {
                if let Some(mu) = proportional(field, &dcols[i], &dcols[j]) {
                    // d_i = mu d_j, so atom_i − mu atom_j is a chain map.
                    let v: BTreeMap<Component, F::Elem> =
                        [(maps.atoms[i].clone(), field.one()), (maps.atoms[j].clone(), field.neg(&mu))].into();
                    pool.push((StandardMapKind::SingletonDouble, v));
                }
            }
        }
    }
    pool.sort_by(|a, b| a.1.keys().cmp(b.1.keys()));
    pool.dedup_by(|a, b| a.1 == b.1);
    let vecs: Vec<Vec<F::Elem>> = pool.iter().map(|(_, v)| densify(field, na, &maps.index, v)).collect();
    let rank_with = |extra: &[&Vec<F::Elem>]| {
        let mut all = boundary.clone();
        all.extend(extra.iter().map(|v| (*v).clone()));
        crate::linalg::span_dim(field, na, &all)
    };
    let nonzero: Vec<usize> = (0..pool.len()).filter(|&i| rank_with(&[&vecs[i]]) > brank).collect();
    // f ≡ μ g modulo homotopy for some other g and μ ≠ 0.
    let shares_class = |i: usize| {
        nonzero.iter().any(|&j| {
            j != i && {
                let r = rank_with(&[&vecs[i], &vecs[j]]);
                r == brank + 1
            }
        })
    };
    let mut witnesses = Vec::new();
    let mut chosen: Vec<&Vec<F::Elem>> = Vec::new();
    for &i in &nonzero {
        let kind = pool[i].0;
        if kind == StandardMapKind::GraphMap || !shares_class(i) {
            witnesses.push((kind, i));
            chosen.push(&vecs[i]);
        }
    }
    let independent = rank_with(&chosen) == brank + chosen.len();
    for &i in &nonzero {
        if witnesses.iter().any(|&(_, j)| j == i) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(&vecs[i]);
        if rank_with(&trial) > rank_with(&chosen) {
            witnesses.push((StandardMapKind::QuasiGraph, i));
            chosen.push(&vecs[i]);
        }
    }
    let witnesses = witnesses
        .into_iter()
        .map(|(kind, i)| StandardMapWitness {
            kind,
            components: pool[i].1.iter().map(|(c, x)| (c.clone(), field.render(x))).collect(),
        })
        .collect();
    Ok(StandardMapReport { witnesses, hom_dim, independent })
}

/// `μ` with `a = μ b`, if both are nonzero and proportional.
fn proportional<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<F::Elem> {
    let k = b.iter().position(|x| !field.is_zero(x))?;
    let mu = field.mul(&a[k], &field.inv(&b[k]));
    if field.is_zero(&mu) {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| field.is_zero(&field.sub(x, &field.mul(&mu, y)))).then_some(mu)
}

/// Identity components along maximal common stretches of the two unfolded
/// diagrams, completed at the ends by path components where needed.
fn graph_maps<F: Field>(
    maps: &MapSpace<'_, F>,
    defects: &[BTreeMap<Component, F::Elem>],
) -> Vec<BTreeMap<Component, F::Elem>> {
    let (wm, wn) = (maps.m, maps.n);
    let f = maps.field;
    // Positions are (copy, index along the line).
    let node = |w: &ComplexWindow, (c, k): (usize, usize)| w.line[k] + c;
    // The edge crossed when stepping from `k` in direction `dir`, with its
    // orientation along the step.
    let step = |w: &ComplexWindow, (c, k): (usize, usize), dir: i64| -> Option<((usize, usize), (bool, Path, i64))> {
        let len = w.line.len() as i64;
        let q = k as i64 + dir;
        let q = if w.cyclic {
            q.rem_euclid(len)
        } else if (0..len).contains(&q) {
            q
        } else {
            return None;
        } as usize;
        let ei = if dir > 0 { w.line_edges[k] } else { w.line_edges[q] } + c;
        let e = &w.edges[ei];
        Some(((c, q), (e.from == w.line[k] + c, e.path.clone(), e.coeff)))
    };
    let matches = |a: (usize, usize), b: (usize, usize)| {
        let (x, y) = (&wm.nodes[node(wm, a)], &wn.nodes[node(wn, b)]);
        x.vertex == y.vertex && y.degree == x.degree + 1
    };
    let positions =
        |w: &ComplexWindow| (0..w.copies).flat_map(|c| (0..w.line.len()).map(move |k| (c, k))).collect::<Vec<_>>();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &p0 in &positions(wm) {
        for &q0 in &positions(wn) {
            if !matches(p0, q0) {
                continue;
            }
            for orient in [1i64, -1] {
                // Grow in both directions along M's line.
                let mut pairs = vec![(p0, q0)];
                for dir in [1i64, -1] {
                    let (mut p, mut q) = (p0, q0);
                    while let (Some((p2, em)), Some((q2, en))) = (step(wm, p, dir), step(wn, q, dir * orient)) {
                        if pairs.contains(&(p2, q2)) || !matches(p2, q2) || em != en {
                            break;
                        }
                        pairs.push((p2, q2));
                        (p, q) = (p2, q2);
                    }
                }
                let mut comps: Vec<(usize, usize)> = pairs.iter().map(|&(p, q)| (node(wm, p), node(wn, q))).collect();
                comps.sort_unstable();
                comps.dedup();
                if !seen.insert(comps.clone()) {
                    continue;
                }
                let mut map: BTreeMap<Component, F::Elem> = BTreeMap::new();
                for &(a, b) in &comps {
                    let c = Component { source: a, target: b, path: Path::trivial(wm.nodes[a].vertex) };
                    map.insert(c, f.one());
                }
                if let Some(g) = complete_graph_map(maps, defects, map, &comps) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Adds path components next to the ends of a stretch so that the map
/// becomes a chain map, if possible.
fn complete_graph_map<F: Field>(
    maps: &MapSpace<'_, F>,
    defects: &[BTreeMap<Component, F::Elem>],
    map: BTreeMap<Component, F::Elem>,
    comps: &[(usize, usize)],
) -> Option<BTreeMap<Component, F::Elem>> {
    let f = maps.field;
    let mut residual: BTreeMap<Component, F::Elem> = BTreeMap::new();
    for (c, x) in &map {
        let k = maps.index[c];
        for (d, y) in &defects[k] {
            let e = residual.entry(d.clone()).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(x, y));
        }
    }
    residual.retain(|_, v| !f.is_zero(v));
    if residual.is_empty() {
        return Some(map);
    }
    // Nodes adjacent to the stretch.
    let near = |w: &ComplexWindow, set: &dyn Fn(usize) -> bool| -> Vec<usize> {
        let mut v: Vec<usize> = w
            .edges
            .iter()
            .flat_map(|e| [(e.from, e.to), (e.to, e.from)])
            .filter(|&(a, _)| set(a))
            .map(|(_, b)| b)
            .collect();
        v.extend((0..w.nodes.len()).filter(|&a| set(a)));
        v.sort_unstable();
        v.dedup();
        v
    };
    let near_m = near(maps.m, &|a| comps.iter().any(|&(x, _)| x == a));
    let near_n = near(maps.n, &|b| comps.iter().any(|&(_, y)| y == b));
    let cand: Vec<usize> = (0..maps.atoms.len())
        .filter(|&k| {
            let c = &maps.atoms[k];
            near_m.contains(&c.source) && near_n.contains(&c.target) && !map.contains_key(c)
        })
        .collect();
    let mut dindex: HashMap<Component, usize> = HashMap::new();
    for d in cand.iter().map(|&k| &defects[k]).chain(std::iter::once(&residual)) {
        for k in d.keys() {
            let l = dindex.len();
            dindex.entry(k.clone()).or_insert(l);
        }
    }
    let dl = dindex.len();
    if cand.is_empty() {
        return None;
    }
    let cols: Vec<Vec<F::Elem>> = cand.iter().map(|&k| densify(f, dl, &dindex, &defects[k])).collect();
    let a = Matrix::from_columns(f, dl, &cols);
    let rhs: Vec<F::Elem> = densify(f, dl, &dindex, &residual).iter().map(|x| f.neg(x)).collect();
    let x = a.solve(&rhs)?;
    let mut map = map;
    for (t, &k) in cand.iter().enumerate() {
        if !f.is_zero(&x[t]) {
            map.insert(maps.atoms[k].clone(), x[t].clone());
        }
    }
    Some(map)
}

/// `Ext¹(M(u), M(λ,n)) = 0 ⟺ Ext¹(M(u), M(λ,1)) = 0`, and the same with
/// the arguments swapped.
pub fn lift_predicate_check<F: Field>(model: &Model, field: &F, word: &Word, lambda: i64, n: usize) -> Result<bool> {
    let pres = &model.pres;
    let proj = Projectives::new(pres, field)?;
    let m = string_module(pres, field, word)?;
    let band = model.band_of().word;
    let l = field.from_i64(lambda);
    let b1 = band_module(pres, field, &band, &l, 1)?;
    let bn = band_module(pres, field, &band, &l, n)?;
    let fwd = (proj.ext1(&m, &bn) == 0) == (proj.ext1(&m, &b1) == 0);
    let bwd = (proj.ext1(&bn, &m) == 0) == (proj.ext1(&b1, &m) == 0);
    Ok(fwd && bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::surface::parse_triangulation;

    fn model(json: &str) -> Model {
        Model::new(parse_triangulation(json).unwrap())
    }

    #[test]
    fn kronecker_simple_resolution() {
        let m = model(include_str!("../fixtures/fixture-11.json"));
        let src = m.pres.arrows[0].source;
        let w = string_complex(&m.pres, &Word::trivial(src), 2, 1).unwrap();
        assert_eq!(w.nodes.iter().filter(|n| n.degree == -1).count(), 2);
        assert!(w.nodes.iter().filter(|n| n.degree == -1).all(|n| n.vertex != src));
        assert!(check_string_window(&m.pres, &Fp::default(), &Word::trivial(src), 4).unwrap());
        assert!(m.pres.arrows.iter().all(|a| !antipath_from(&m.pres, 0).is_infinite() && a.source == src));
    }

    #[test]
    fn three_cycle_antipaths_are_periodic() {
        let m = model(include_str!("../fixtures/fixture-32.json"));
        let (b, a) = *m.pres.relations.iter().next().unwrap();
        let ap = antipath_from(&m.pres, a);
        assert!(ap.is_infinite());
        assert_eq!(ap.arrow(1), Some(b));
        let Tail::Periodic(c) = &ap.tail else { unreachable!() };
        assert_eq!(c.len() + ap.arrows.len(), 3);
    }

    #[test]
    fn kronecker_standard_maps_count_ext() {
        let m = model(include_str!("../fixtures/fixture-11.json"));
        let f = Fp::default();
        let (src, tgt) = (m.pres.arrows[0].source, m.pres.arrows[0].target);
        let ws = string_complex(&m.pres, &Word::trivial(src), 4, 1).unwrap();
        let wt = string_complex(&m.pres, &Word::trivial(tgt), 4, 1).unwrap();
        let r = find_standard_maps(&m.pres, &f, &ws, &wt).unwrap();
        assert_eq!(r.hom_dim, 2);
        assert_eq!(r.witnesses.len(), 2);
        assert!(find_standard_maps(&m.pres, &f, &wt, &ws).unwrap().witnesses.is_empty());
    }

    #[test]
    fn band_windows_resolve() {
        let m = model(include_str!("../fixtures/fixture-11.json"));
        let f = Fp::default();
        let band = m.band_of().word;
        for n in 1..=3 {
            for l in [1, 2] {
                assert!(check_band_window(&m.pres, &f, &band, l, n).unwrap(), "λ={l} n={n}");
            }
        }
    }
}
