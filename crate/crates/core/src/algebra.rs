//! Quivers with length-two monomial relations, the gentle presentation of a
//! triangulation, path bases, annihilator ideals and quotient presentations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc as Shared;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::strings::Word;
use crate::surface::{Arc, Side, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    #[serde(rename = "src")]
    pub source: usize,
    #[serde(rename = "tgt")]
    pub target: usize,
}

/// Quiver plus relations `(b, a)` meaning `b∘a ∈ I` (`a` first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentlePresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: BTreeSet<(usize, usize)>,
    /// For quotients: index in the parent of each vertex and arrow.
    pub parent_vertex: Option<Vec<usize>>,
    pub parent_arrow: Option<Vec<usize>>,
}

/// A path, stored in traversal order (first arrow first). Trivial paths have
/// no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { start: v, arrows: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn end(&self, pres: &GentlePresentation) -> usize {
        self.arrows.last().map_or(self.start, |&a| pres.arrows[a].target)
    }
    pub fn render(&self, pres: &GentlePresentation) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", pres.vertices[self.start]);
        }
        // Composition order: last arrow leftmost.
        self.arrows.iter().rev().map(|&a| pres.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
    }
}

/// Orientation convention for arrows inside a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// At each corner the arrow runs from the side met first to the side met
    /// second when turning counterclockwise in the cover.
    Counterclockwise,
    Clockwise,
}

/// The convention used throughout; see the README for why.
pub const ORIENTATION: Orientation = Orientation::Counterclockwise;

impl GentlePresentation {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: BTreeSet<(usize, usize)>) -> Self {
        GentlePresentation { vertices, arrows, relations, parent_vertex: None, parent_arrow: None }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_named(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn is_relation(&self, b: usize, a: usize) -> bool {
        self.relations.contains(&(b, a))
    }

    pub fn arrows_out(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_in(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Arrows `b` that can follow `a` without a relation.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let t = self.arrows[a].target;
        self.arrows_out(t).filter(move |&b| !self.is_relation(b, a))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "arrows": self.arrows,
            "relations": self.relations.iter()
                .map(|&(b, a)| [self.arrows[b].name.clone(), self.arrows[a].name.clone()])
                .collect::<Vec<_>>(),
        })
    }

    /// Maximal length of a nonzero path, or an error if there is none.
    pub fn max_path_length(&self) -> Result<usize> {
        // Longest path in the graph on arrows with non-relation successors.
        let n = self.arrows.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        let mut state = vec![0u8; n];
        fn longest(pres: &GentlePresentation, a: usize, memo: &mut [Option<usize>], state: &mut [u8]) -> Result<usize> {
            if let Some(v) = memo[a] {
                return Ok(v);
            }
            if state[a] == 1 {
                return Err(Error::NonFiniteDimensional);
            }
            state[a] = 1;
            let mut best = 0;
            let succ: Vec<usize> = pres.successors(a).collect();
            for b in succ {
                best = best.max(longest(pres, b, memo, state)?);
            }
            state[a] = 2;
            memo[a] = Some(best + 1);
            Ok(best + 1)
        }
        let mut best = 0;
        for a in 0..n {
            best = best.max(longest(self, a, &mut memo, &mut state)?);
        }
        Ok(best)
    }
}

impl fmt::Display for GentlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {:?}; arrows", self.vertices)?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.name, self.vertices[a.source], self.vertices[a.target])?;
        }
        write!(f, "; relations")?;
        for &(b, a) in &self.relations {
            write!(f, " {}{}", self.arrows[b].name, self.arrows[a].name)?;
        }
        Ok(())
    }
}

/// Gentle axioms and finite dimensionality.
pub fn check_gentle(pres: &GentlePresentation) -> bool {
    let n = pres.vertex_count();
    for a in &pres.arrows {
        if a.source >= n || a.target >= n {
            return false;
        }
    }
    for &(b, a) in &pres.relations {
        if b >= pres.arrows.len() || a >= pres.arrows.len() || pres.arrows[a].target != pres.arrows[b].source {
            return false;
        }
    }
    for v in 0..n {
        if pres.arrows_in(v).count() > 2 || pres.arrows_out(v).count() > 2 {
            return false;
        }
    }
    for a in 0..pres.arrows.len() {
        let after: Vec<usize> = pres.arrows_out(pres.arrows[a].target).collect();
        let rel = after.iter().filter(|&&b| pres.is_relation(b, a)).count();
        if rel > 1 || after.len() - rel > 1 {
            return false;
        }
        let before: Vec<usize> = pres.arrows_in(pres.arrows[a].source).collect();
        let rel = before.iter().filter(|&&c| pres.is_relation(a, c)).count();
        if rel > 1 || before.len() - rel > 1 {
            return false;
        }
    }
    pres.max_path_length().is_ok()
}

/// All nonzero paths: trivial ones first, then by length.
pub fn enumerate_path_basis(pres: &GentlePresentation) -> Result<Vec<Path>> {
    pres.max_path_length()?;
    let mut out: Vec<Path> = (0..pres.vertex_count()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> =
        (0..pres.arrows.len()).map(|a| Path { start: pres.arrows[a].source, arrows: vec![a] }).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let last = *p.arrows.last().unwrap();
            for b in pres.successors(last) {
                let mut q = p.clone();
                q.arrows.push(b);
                next.push(q);
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    Ok(out)
}

/// A two-sided ideal spanned by paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub paths: BTreeSet<Path>,
}

impl IdealBasis {
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.paths.iter().filter(|p| p.is_trivial()).map(|p| p.start).collect()
    }
    pub fn arrows(&self) -> BTreeSet<usize> {
        self.paths.iter().filter(|p| p.len() == 1).map(|p| p.arrows[0]).collect()
    }
    pub fn len(&self) -> usize {
        self.paths.len()
    }
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
    pub fn contains(&self, p: &Path) -> bool {
        self.paths.contains(p)
    }

    /// Paths that pass through a generator vertex or use a generator arrow.
    pub fn generated_by(
        pres: &GentlePresentation,
        vertices: &BTreeSet<usize>,
        arrows: &BTreeSet<usize>,
    ) -> Result<IdealBasis> {
        let basis = enumerate_path_basis(pres)?;
        let paths = basis
            .into_iter()
            .filter(|p| {
                vertices.contains(&p.start)
                    || p.arrows.iter().any(|&a| arrows.contains(&a) || vertices.contains(&pres.arrows[a].target))
            })
            .collect();
        Ok(IdealBasis { paths })
    }

    /// Every path of length at least two lies in the ideal exactly when one
    /// of its arrows does.
    pub fn satisfies_paths_arrows(&self, pres: &GentlePresentation) -> Result<bool> {
        let arrows = self.arrows();
        for p in enumerate_path_basis(pres)? {
            if p.len() >= 2 {
                let by_arrow = p.arrows.iter().any(|a| arrows.contains(a));
                if self.contains(&p) != by_arrow {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Remove the vertices and arrows of a degree-one-generated ideal.
pub fn quotient_presentation(pres: &GentlePresentation, ideal: &IdealBasis) -> Result<GentlePresentation> {
    let vs = ideal.vertices();
    let ars = ideal.arrows();
    let regenerated = IdealBasis::generated_by(pres, &vs, &ars)?;
    if regenerated != *ideal {
        return Err(Error::IdealNotDegreeOne);
    }
    let keep_v: Vec<usize> = (0..pres.vertex_count()).filter(|v| !vs.contains(v)).collect();
    let vmap: HashMap<usize, usize> = keep_v.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let keep_a: Vec<usize> = (0..pres.arrows.len())
        .filter(|a| {
            !ars.contains(a) && vmap.contains_key(&pres.arrows[*a].source) && vmap.contains_key(&pres.arrows[*a].target)
        })
        .collect();
    let amap: HashMap<usize, usize> = keep_a.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let arrows = keep_a
        .iter()
        .map(|&a| Arrow {
            name: pres.arrows[a].name.clone(),
            source: vmap[&pres.arrows[a].source],
            target: vmap[&pres.arrows[a].target],
        })
        .collect();
    let relations = pres.relations.iter().filter_map(|(b, a)| Some((*amap.get(b)?, *amap.get(a)?))).collect();
    // Compose with the parent's own embedding so indices always refer to the
    // original presentation.
    let up_v = |v: usize| pres.parent_vertex.as_ref().map_or(v, |m| m[v]);
    let up_a = |a: usize| pres.parent_arrow.as_ref().map_or(a, |m| m[a]);
    Ok(GentlePresentation {
        vertices: keep_v.iter().map(|&v| pres.vertices[v].clone()).collect(),
        arrows,
        relations,
        parent_vertex: Some(keep_v.iter().map(|&v| up_v(v)).collect()),
        parent_arrow: Some(keep_a.iter().map(|&a| up_a(a)).collect()),
    })
}

/// The algebra of a triangulation with the bookkeeping that ties arrows to
/// triangle corners.
#[derive(Clone, Debug)]
pub struct Model {
    pub tri: Triangulation,
    pub pres: Shared<GentlePresentation>,
    pub orientation: Orientation,
    /// (triangle, corner) -> arrow.
    pub corner_arrow: HashMap<(usize, usize), usize>,
}

impl Model {
    pub fn new(tri: Triangulation) -> Model {
        Model::with_orientation(tri, ORIENTATION)
    }

    pub fn with_orientation(tri: Triangulation, orientation: Orientation) -> Model {
        let mut arrows = Vec::new();
        let mut corner_arrow = HashMap::new();
        let mut relations = BTreeSet::new();
        for (ti, tr) in tri.triangles.iter().enumerate() {
            let mut local = [None; 3];
            for k in 0..3 {
                // Corner k sits between sides k-1 and k.
                let (Side::Arc(prev), Side::Arc(next)) = (tr.sides[(k + 2) % 3], tr.sides[k]) else {
                    continue;
                };
                let (source, target) = match orientation {
                    Orientation::Counterclockwise => (prev, next),
                    Orientation::Clockwise => (next, prev),
                };
                local[k] = Some(arrows.len());
                corner_arrow.insert((ti, k), arrows.len());
                arrows.push(Arrow { name: String::new(), source, target });
            }
            if tr.internal {
                for k in 0..3 {
                    let (x, y) = (local[k].unwrap(), local[(k + 1) % 3].unwrap());
                    // x: side k-1 -> side k; y: side k -> side k+1 (counterclockwise).
                    match orientation {
                        Orientation::Counterclockwise => relations.insert((y, x)),
                        Orientation::Clockwise => relations.insert((x, y)),
                    };
                }
            }
        }
        let names = default_names(arrows.len());
        let names = match &tri.arrow_names {
            Some(custom) if custom.len() == arrows.len() => custom.clone(),
            _ => names,
        };
        for (a, n) in arrows.iter_mut().zip(names) {
            a.name = n;
        }
        let vertices = (1..=tri.len()).map(|i| i.to_string()).collect();
        let pres = GentlePresentation::new(vertices, arrows, relations);
        Model { tri, pres: Shared::new(pres), orientation, corner_arrow }
    }
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

/// The gentle presentation of a triangulation.
pub fn quiver_from_triangulation(tri: &Triangulation) -> GentlePresentation {
    (*Model::new(tri.clone()).pres).clone()
}

/// Quotient by the idempotents of the peripheral arcs.
pub fn cut_peripheral(pres: &GentlePresentation, tri: &Triangulation) -> Result<GentlePresentation> {
    let vs: BTreeSet<usize> = (0..tri.len()).filter(|&i| tri.arcs[i].is_peripheral()).collect();
    let ideal = IdealBasis::generated_by(pres, &vs, &BTreeSet::new())?;
    quotient_presentation(pres, &ideal)
}

/// Paths occurring (directly or inversely) in none of the words.
pub fn annihilator_of_words(pres: &GentlePresentation, words: &[Word]) -> Result<IdealBasis> {
    for w in words {
        w.validate(pres)?;
    }
    let paths =
        enumerate_path_basis(pres)?.into_iter().filter(|p| !words.iter().any(|w| w.contains_path(pres, p))).collect();
    Ok(IdealBasis { paths })
}

/// Degree-one part of an annihilator, predicted from the arcs alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnCriterion {
    pub arrows_in_ann: BTreeSet<usize>,
    pub vertices_in_ann: BTreeSet<usize>,
}

impl Model {
    /// Arrows at corners of internal triangles that some arc of `arcs`
    /// leaves through the opposite side.
    pub fn corner_arrows_crossed(&self, arcs: &[Arc]) -> BTreeSet<usize> {
        let s = &self.tri.surface;
        let mut out = BTreeSet::new();
        for arc in arcs.iter().filter(|a| !self.tri.contains(a)) {
            let c = s.lift(arc);
            for v in [c.a, c.b].into_iter().filter(|v| v.is_marked()) {
                if let Some(corner) = self.tri.corner_entry(&c, v) {
                    if let Some(&a) = self.corner_arrow.get(&corner) {
                        out.insert(a);
                    }
                }
            }
        }
        out
    }

    /// `e_i` is in the annihilator iff `γ_i` is one of the arcs; an arrow is
    /// iff one of its end arcs is, or an arc crosses it in a 3-cycle.
    pub fn arrow_vertex_ann_criterion(&self, arcs: &[Arc]) -> AnnCriterion {
        let vertices_in_ann: BTreeSet<usize> = arcs.iter().filter_map(|a| self.tri.index_of(a)).collect();
        let crossed = self.corner_arrows_crossed(arcs);
        let arrows_in_ann = (0..self.pres.arrows.len())
            .filter(|&a| {
                let ar = &self.pres.arrows[a];
                vertices_in_ann.contains(&ar.source) || vertices_in_ann.contains(&ar.target) || crossed.contains(&a)
            })
            .collect();
        AnnCriterion { arrows_in_ann, vertices_in_ann }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{validate_triangulation, AnnulusSurface, Arc};

    fn kronecker() -> Model {
        let s = AnnulusSurface::new(1, 1).unwrap();
        let t =
            validate_triangulation(&s, &[Arc::Bridging { outer: 0, inner: 0 }, Arc::Bridging { outer: 0, inner: 1 }])
                .unwrap();
        Model::new(t)
    }

    #[test]
    fn kronecker_quiver() {
        let m = kronecker();
        let p = &m.pres;
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(p.arrows.len(), 2);
        assert!(p.relations.is_empty());
        assert_eq!((p.arrows[0].source, p.arrows[0].target), (p.arrows[1].source, p.arrows[1].target));
        assert!(check_gentle(p));
        assert_eq!(enumerate_path_basis(p).unwrap().len(), 4);
    }

    #[test]
    fn cyclic_without_relations_is_not_gentle() {
        let arrows = (0..3).map(|i| Arrow { name: format!("{i}"), source: i, target: (i + 1) % 3 }).collect();
        let p = GentlePresentation::new(vec!["1".into(), "2".into(), "3".into()], arrows, BTreeSet::new());
        assert!(!check_gentle(&p));
        assert!(matches!(enumerate_path_basis(&p), Err(Error::NonFiniteDimensional)));
        let lone = GentlePresentation::new(vec!["1".into()], vec![], BTreeSet::new());
        assert!(check_gentle(&lone));
        assert_eq!(enumerate_path_basis(&lone).unwrap().len(), 1);
    }

    #[test]
    fn quotients() {
        let m = kronecker();
        let p = &m.pres;
        let zero = IdealBasis { paths: BTreeSet::new() };
        let q = quotient_presentation(p, &zero).unwrap();
        assert_eq!(q.arrows.len(), 2);
        let full = IdealBasis { paths: enumerate_path_basis(p).unwrap().into_iter().collect() };
        let q = quotient_presentation(p, &full).unwrap();
        assert_eq!(q.vertex_count(), 0);
        let one = IdealBasis::generated_by(p, &BTreeSet::new(), &[0].into()).unwrap();
        let q = quotient_presentation(p, &one).unwrap();
        assert_eq!(q.arrows.len(), 1);
        assert_eq!(enumerate_path_basis(&q).unwrap().len(), 3);
        assert!(one.satisfies_paths_arrows(p).unwrap());
    }
}
