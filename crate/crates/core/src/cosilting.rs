//! Asymptotic triangulations and the cosilting modules they parametrise.
//!
//! A (partial) asymptotic triangulation is a set of pairwise non-crossing
//! arcs; when it contains an asymptotic arc it is *strict* and carries a pair
//! of disjoint scalar sets `(P₁, P₂)` selecting Prüfer and adic band modules.
//! Finite arcs are unbounded in number, so every maximality claim is made
//! relative to a winding bound that travels with the result.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{annihilator_of_words, quotient_presentation, GentlePresentation, IdealBasis, Model};
use crate::error::{Error, Result};
use crate::extensions::{ext_vanishing_pair, find_extensions, standard_extension_to_ses, SesCertificate};
use crate::field::Field;
use crate::homalg::{cogen_member, cotilting_check, id_le1_string, CotiltingReport};
use crate::representations::{
    band_module, descriptor_of_arc, hom_dim, string_module, BandSize, ModuleDescriptor, Representation,
};
use crate::strings::{enumerate_strings, Letter, Word};
use crate::surface::{AnnulusSurface, Arc};

use std::sync::Arc as Shared;

/// A set of nonzero scalars, stored finitely or as the complement of a
/// finite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "elements")]
pub enum ScalarSet {
    Finite(BTreeSet<i64>),
    Cofinite(BTreeSet<i64>),
}

impl ScalarSet {
    pub fn empty() -> Self {
        ScalarSet::Finite(BTreeSet::new())
    }
    pub fn everything() -> Self {
        ScalarSet::Cofinite(BTreeSet::new())
    }
    pub fn contains(&self, x: i64) -> bool {
        match self {
            ScalarSet::Finite(s) => x != 0 && s.contains(&x),
            ScalarSet::Cofinite(s) => x != 0 && !s.contains(&x),
        }
    }
    pub fn complement(&self) -> Self {
        match self {
            ScalarSet::Finite(s) => ScalarSet::Cofinite(s.clone()),
            ScalarSet::Cofinite(s) => ScalarSet::Finite(s.clone()),
        }
    }
    pub fn is_empty(&self) -> bool {
        matches!(self, ScalarSet::Finite(s) if s.is_empty())
    }
    pub fn is_disjoint(&self, other: &Self) -> bool {
        use ScalarSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.is_disjoint(b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => a.is_subset(b),
            // Two cofinite sets of an infinite field always meet.
            (Cofinite(_), Cofinite(_)) => false,
        }
    }
    /// A small positive element, if there is one.
    pub fn representative(&self) -> Option<i64> {
        match self {
            ScalarSet::Finite(s) => s.iter().next().copied(),
            ScalarSet::Cofinite(s) => (1..).find(|x| !s.contains(x)),
        }
    }
}

impl fmt::Display for ScalarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<i64>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ScalarSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            ScalarSet::Cofinite(s) if s.is_empty() => write!(f, "k*"),
            ScalarSet::Cofinite(s) => write!(f, "k*\\{{{}}}", list(s)),
        }
    }
}

/// Prüfer and adic parameters of a strict triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandParameters {
    pub p1: ScalarSet,
    pub p2: ScalarSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialAsympTriangulation {
    pub arcs: BTreeSet<Arc>,
    /// Present exactly when some arc is asymptotic.
    pub params: Option<BandParameters>,
}

impl PartialAsympTriangulation {
    /// Checks that no two arcs cross, that `β` is absent, and that the band
    /// parameters match strictness.
    pub fn new(
        surface: &AnnulusSurface,
        arcs: impl IntoIterator<Item = Arc>,
        params: Option<BandParameters>,
    ) -> Result<Self> {
        let arcs: BTreeSet<Arc> = arcs.into_iter().map(|a| surface.canonicalize(&a)).collect::<Result<_>>()?;
        if arcs.contains(&Arc::Band) {
            return Err(Error::InvalidArc("the band curve is not an arc of a triangulation".into()));
        }
        let v: Vec<&Arc> = arcs.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !surface.crossing_number(v[i], v[j]).is_zero() {
                    return Err(Error::InvalidArc(format!("{} crosses {}", v[i], v[j])));
                }
            }
        }
        let strict = arcs.iter().any(Arc::is_asymptotic);
        match (&params, strict) {
            (Some(p), true) if !p.p1.is_disjoint(&p.p2) => {
                Err(Error::Input(format!("P1 = {} and P2 = {} overlap", p.p1, p.p2)))
            }
            (Some(_), true) | (None, false) => Ok(PartialAsympTriangulation { arcs, params }),
            (None, true) => Err(Error::Input("strict triangulation needs band parameters".into())),
            (Some(_), false) => Err(Error::Input("band parameters given without an asymptotic arc".into())),
        }
    }

    pub fn empty() -> Self {
        PartialAsympTriangulation { arcs: BTreeSet::new(), params: None }
    }

    pub fn is_strict(&self) -> bool {
        self.params.is_some()
    }
}

impl fmt::Display for PartialAsympTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", arcs.join(", "))?;
        if let Some(p) = &self.params {
            write!(f, " P1={} P2={}", p.p1, p.p2)?;
        }
        Ok(())
    }
}

/// A maximal non-crossing collection. Maximality among finite arcs holds
/// up to `bound`; among asymptotic and peripheral arcs it is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsympTriangulation {
    #[serde(flatten)]
    pub t: PartialAsympTriangulation,
    pub bound: i64,
}

impl AsympTriangulation {
    pub fn is_strict(&self) -> bool {
        self.t.is_strict()
    }
}

/// Arcs that may appear in an asymptotic triangulation at winding bound
/// `bound`: bridging, then peripheral, then asymptotic, each sorted by
/// winding. The arcs of the reference triangulation are always included.
pub fn arc_universe(model: &Model, bound: i64) -> Vec<Arc> {
    let s = &model.tri.surface;
    let mut set: BTreeSet<Arc> =
        s.enumerate_arcs(bound).into_iter().filter(|a| *a != Arc::Band && !s.is_boundary_loop(a)).collect();
    set.extend(model.tri.arcs.iter().copied());
    let mut out: Vec<Arc> = set.into_iter().collect();
    let rank = |a: &Arc| match a {
        Arc::Bridging { .. } => 0,
        Arc::Peripheral { .. } => 1,
        Arc::Asymptotic { .. } => 2,
        Arc::Band => 3,
    };
    out.sort_by_key(|a| (rank(a), s.winding(a).abs(), *a));
    out
}

/// `N_t` with its annihilator and quotient.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CosiltingDescriptor {
    /// String modules of the arcs outside `Γ`, and `G` when strict.
    pub members: BTreeSet<ModuleDescriptor>,
    /// `M(λ,+∞)` for `λ ∈ P₁` and `M(λ,−∞)` for `λ ∈ P₂`.
    pub bands: Option<BandParameters>,
    #[serde(skip)]
    pub words: Vec<Word>,
    #[serde(skip)]
    pub annihilator: IdealBasis,
    #[serde(skip)]
    pub quotient: Shared<GentlePresentation>,
}

impl CosiltingDescriptor {
    pub fn is_strict(&self) -> bool {
        self.bands.is_some()
    }

    /// The members, with the band part listed for the given parameters.
    pub fn materialize(&self, lambdas: &[i64]) -> Vec<ModuleDescriptor> {
        let mut out: Vec<ModuleDescriptor> = self.members.iter().cloned().collect();
        if let Some(b) = &self.bands {
            for &l in lambdas {
                if b.p1.contains(l) {
                    out.push(ModuleDescriptor::Band { lambda: l, size: BandSize::PlusInf });
                }
                if b.p2.contains(l) {
                    out.push(ModuleDescriptor::Band { lambda: l, size: BandSize::MinusInf });
                }
            }
        }
        out
    }

    /// Parameters at which every band member is represented.
    pub fn sample_lambdas(&self) -> Vec<i64> {
        let mut ls: BTreeSet<i64> = [1, 2, 3].into();
        if let Some(b) = &self.bands {
            ls.extend(b.p1.representative());
            ls.extend(b.p2.representative());
        }
        ls.into_iter().collect()
    }

    pub fn is_finite_dimensional(&self) -> bool {
        !self.is_strict() && self.members.iter().all(ModuleDescriptor::is_finite_dimensional)
    }
}

impl Model {
    fn arc_words(&self, arcs: &BTreeSet<Arc>) -> Result<Vec<Word>> {
        let mut words: Vec<Word> =
            arcs.iter().filter(|a| !self.tri.contains(a)).map(|a| self.word_of(a)).collect::<Result<_>>()?;
        if arcs.iter().any(Arc::is_asymptotic) {
            words.push(self.band_of().word);
        }
        Ok(words)
    }

    /// Annihilator of the family of a set of arcs; the band string counts
    /// as soon as one arc is asymptotic.
    pub fn ann_of_arcs(&self, arcs: &BTreeSet<Arc>) -> Result<IdealBasis> {
        annihilator_of_words(&self.pres, &self.arc_words(arcs)?)
    }
}

/// The family `N_t`, its annihilator and the quotient algebra.
pub fn family_of(model: &Model, t: &PartialAsympTriangulation) -> Result<CosiltingDescriptor> {
    let mut members: BTreeSet<ModuleDescriptor> =
        t.arcs.iter().filter(|a| !model.tri.contains(a)).map(|a| descriptor_of_arc(model, a)).collect::<Result<_>>()?;
    if t.is_strict() {
        members.insert(ModuleDescriptor::Generic);
    }
    let words = model.arc_words(&t.arcs)?;
    let annihilator = annihilator_of_words(&model.pres, &words)?;
    let quotient = Shared::new(quotient_presentation(&model.pres, &annihilator)?);
    Ok(CosiltingDescriptor { members, bands: t.params.clone(), words, annihilator, quotient })
}

/// The same word read in a quotient presentation, if it avoids every
/// removed vertex and arrow.
pub fn word_in_quotient(quotient: &GentlePresentation, word: &Word) -> Option<Word> {
    let inv = |m: &Option<Vec<usize>>, x: usize| match m {
        Some(v) => v.iter().position(|&y| y == x),
        None => Some(x),
    };
    let v = |x: usize| inv(&quotient.parent_vertex, x);
    let l = |ls: &[Letter]| -> Option<Vec<Letter>> {
        ls.iter()
            .map(|&l| {
                let a = inv(&quotient.parent_arrow, l.arrow())?;
                Some(if l.is_direct() { Letter::Direct(a) } else { Letter::Inverse(a) })
            })
            .collect()
    };
    Some(match word {
        Word::Finite { start, letters } => Word::Finite { start: v(*start)?, letters: l(letters)? },
        Word::NString { start, preperiod, period } => {
            Word::NString { start: v(*start)?, preperiod: l(preperiod)?, period: l(period)? }
        }
        Word::ZPeriodic { start, period } => Word::ZPeriodic { start: v(*start)?, period: l(period)? },
    })
}

/// The word of a member, if it is a string or band module.
fn member_word(model: &Model, d: &ModuleDescriptor) -> Result<Word> {
    match d {
        ModuleDescriptor::StringFinite(a) | ModuleDescriptor::StringInfinite(a, _) => model.word_of(a),
        ModuleDescriptor::Band { .. } | ModuleDescriptor::Generic => Ok(model.band_of().word),
    }
}

/// Injective dimension at most one over the quotient and Ext-orthogonality
/// of every pair, including each member with itself.
pub fn is_rigid_system(model: &Model, members: &[ModuleDescriptor], quotient: &GentlePresentation) -> bool {
    let id_ok = members.iter().all(|d| {
        let Ok(w) = member_word(model, d) else { return false };
        match word_in_quotient(quotient, &w) {
            None => false,
            // Band-type modules have injective dimension at most one.
            Some(_) if matches!(d, ModuleDescriptor::Band { .. } | ModuleDescriptor::Generic) => true,
            Some(q) => id_le1_string(quotient, &q).unwrap_or(false),
        }
    });
    id_ok && (0..members.len()).all(|i| (i..members.len()).all(|j| ext_vanishing_pair(model, &members[i], &members[j])))
}

/// Outcome of a bounded maximality search.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalityReport {
    pub maximal: bool,
    /// Modules that could be added while staying rigid.
    pub addable: Vec<String>,
    /// Finite arcs were searched up to this winding.
    pub bound: i64,
}

/// Searches the arcs up to `bound`, band modules at `lambdas` (finite,
/// Prüfer and adic) and `G` for a module over the quotient that keeps the
/// system rigid.
pub fn is_maximal_rigid(
    model: &Model,
    members: &[ModuleDescriptor],
    quotient: &GentlePresentation,
    bound: i64,
    lambdas: &[i64],
) -> MaximalityReport {
    let present: BTreeSet<&ModuleDescriptor> = members.iter().collect();
    let mut candidates: Vec<ModuleDescriptor> = arc_universe(model, bound)
        .iter()
        .filter(|a| !model.tri.contains(a))
        .filter_map(|a| descriptor_of_arc(model, a).ok())
        .collect();
    for &l in lambdas {
        for size in [BandSize::Finite(1), BandSize::PlusInf, BandSize::MinusInf] {
            candidates.push(ModuleDescriptor::Band { lambda: l, size });
        }
    }
    candidates.push(ModuleDescriptor::Generic);
    let addable: Vec<String> = candidates
        .par_iter()
        .filter(|c| !present.contains(c))
        .filter(|c| {
            let mut ext = members.to_vec();
            ext.push((*c).clone());
            is_rigid_system(model, &ext, quotient)
        })
        .map(|c| c.to_string())
        .collect();
    MaximalityReport { maximal: addable.is_empty(), addable, bound }
}

/// Extends a partial triangulation to a full one with the same
/// annihilator. Arcs of `Γ` that cross nothing go in first, then for each
/// annihilated arrow that nothing accounts for yet an arc crossing it in its
/// 3-cycle, then the remaining arcs in universe order whenever they keep
/// the annihilator.
pub fn complete_partial(model: &Model, t: &PartialAsympTriangulation, bound: i64) -> Result<AsympTriangulation> {
    let s = &model.tri.surface;
    let ann = model.ann_of_arcs(&t.arcs)?;
    let universe = arc_universe(model, bound);
    let fits = |set: &BTreeSet<Arc>, a: &Arc| !set.contains(a) && set.iter().all(|b| s.crossing_number(a, b).is_zero());
    let keeps_ann = |set: &BTreeSet<Arc>, a: &Arc| -> Result<bool> {
        let mut bigger = set.clone();
        bigger.insert(*a);
        Ok(model.ann_of_arcs(&bigger)? == ann)
    };

    let mut set = t.arcs.clone();
    for g in &model.tri.arcs {
        if t.arcs.iter().all(|b| s.crossing_number(g, b).is_zero()) {
            set.insert(*g);
        }
    }
    let ann_vertices = ann.vertices();
    let arcs_vec: Vec<Arc> = t.arcs.iter().copied().collect();
    let crossed = model.corner_arrows_crossed(&arcs_vec);
    for a in ann.arrows() {
        let ar = &model.pres.arrows[a];
        if ann_vertices.contains(&ar.source) || ann_vertices.contains(&ar.target) || crossed.contains(&a) {
            continue;
        }
        let current: Vec<Arc> = set.iter().copied().collect();
        if model.corner_arrows_crossed(&current).contains(&a) {
            continue;
        }
        let mut found = None;
        for c in &universe {
            if fits(&set, c) && model.corner_arrows_crossed(&[*c]).contains(&a) && keeps_ann(&set, c)? {
                found = Some(*c);
                break;
            }
        }
        match found {
            Some(c) => {
                set.insert(c);
            }
            None => return Err(Error::CompletionBlocked(bound)),
        }
    }
    for c in &universe {
        if fits(&set, c) && keeps_ann(&set, c)? {
            set.insert(*c);
        }
    }
    if universe.iter().any(|c| fits(&set, c)) {
        return Err(Error::CompletionBlocked(bound));
    }
    let strict = set.iter().any(Arc::is_asymptotic);
    let params = strict.then(|| {
        let p1 = t.params.as_ref().map_or_else(ScalarSet::empty, |p| p.p1.clone());
        BandParameters { p2: p1.complement(), p1 }
    });
    let t = PartialAsympTriangulation::new(s, set, params)?;
    Ok(AsympTriangulation { t, bound })
}

/// Every maximal non-crossing collection within the bound. Non-strict ones
/// are the ordinary triangulations; strict ones consist of peripheral and
/// asymptotic arcs only and get the parameter slot `P₁ = ∅, P₂ = k*`.
pub fn enumerate_asymptotic_triangulations(model: &Model, bound: i64) -> Vec<AsympTriangulation> {
    let s = &model.tri.surface;
    let universe = arc_universe(model, bound);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut finite: Vec<Arc> = universe.iter().copied().filter(Arc::is_finite).collect();
    finite.sort();
    for tri in crate::surface::enumerate_triangulations(s, bound) {
        let arcs: BTreeSet<Arc> = tri.arcs.iter().copied().collect();
        if seen.insert(arcs.clone()) {
            out.push(AsympTriangulation { t: PartialAsympTriangulation { arcs, params: None }, bound });
        }
    }
    let pool: Vec<Arc> = universe.iter().copied().filter(|a| !a.is_bridging()).collect();
    let n = pool.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && s.crossing_number(&pool[i], &pool[j]).is_zero()).collect()).collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut cliques);
    let mut strict: Vec<BTreeSet<Arc>> = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| pool[i]).collect::<BTreeSet<Arc>>())
        .filter(|c| c.iter().any(Arc::is_asymptotic))
        .collect();
    strict.sort();
    for arcs in strict {
        let params = Some(BandParameters { p1: ScalarSet::empty(), p2: ScalarSet::everything() });
        out.push(AsympTriangulation { t: PartialAsympTriangulation { arcs, params }, bound });
    }
    out
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
    let mut p = p;
    let mut x = x;
    for v in p.clone() {
        if adj[pivot][v] {
            continue;
        }
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// A random partial asymptotic triangulation: arcs drawn in random order
/// and kept when they cross nothing so far.
pub fn random_partial(model: &Model, bound: i64, rng: &mut ChaCha8Rng) -> PartialAsympTriangulation {
    let s = &model.tri.surface;
    let mut universe = arc_universe(model, bound);
    universe.shuffle(rng);
    let target = rng.gen_range(0..=model.tri.len());
    let mut arcs = BTreeSet::new();
    for a in universe {
        if arcs.len() >= target {
            break;
        }
        if arcs.iter().all(|b| s.crossing_number(&a, b).is_zero()) {
            arcs.insert(a);
        }
    }
    let params = arcs.iter().any(Arc::is_asymptotic).then(|| {
        let mut p1 = BTreeSet::new();
        let mut p2 = BTreeSet::new();
        for l in 1..=4 {
            match rng.gen_range(0..3) {
                0 => p1.insert(l),
                1 => p2.insert(l),
                _ => false,
            };
        }
        BandParameters { p1: ScalarSet::Finite(p1), p2: ScalarSet::Finite(p2) }
    });
    PartialAsympTriangulation { arcs, params }
}

/// Seeded generator for [`random_partial`].
pub fn partial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The finite-dimensional modules of a descriptor, realised over the
/// quotient, and the product (here a direct sum) `M(t)`.
pub fn realize<F: Field>(model: &Model, field: &F, desc: &CosiltingDescriptor) -> Result<Representation<F>> {
    let q = &desc.quotient;
    let mut parts = Vec::new();
    for d in &desc.members {
        let ModuleDescriptor::StringFinite(a) = d else {
            return Err(Error::Input(format!("{d} is not finite-dimensional")));
        };
        let w = word_in_quotient(q, &model.word_of(a)?)
            .ok_or_else(|| Error::InvalidWord(format!("{d} is not a module over the quotient")))?;
        parts.push(string_module(q, field, &w)?);
    }
    let refs: Vec<&Representation<F>> = parts.iter().collect();
    Ok(if refs.is_empty() { Representation::zero(q.clone(), field.clone()) } else { Representation::direct_sum(&refs) })
}

/// String modules up to dimension `dim_bound` and band modules `M(λ,n)`
/// with `s·n ≤ dim_bound`, over `pres`.
pub fn indecomposables<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    band: Option<&Word>,
    dim_bound: usize,
    lambdas: &[i64],
) -> Result<Vec<(String, Word, Representation<F>)>> {
    let mut out = Vec::new();
    if dim_bound == 0 {
        return Ok(out);
    }
    for w in enumerate_strings(pres, dim_bound - 1) {
        out.push((w.render(pres), w.clone(), string_module(pres, field, &w)?));
    }
    if let Some(b) = band {
        let s = match b {
            Word::ZPeriodic { period, .. } => period.len().max(1),
            _ => 1,
        };
        for n in 1..=dim_bound / s {
            for &l in lambdas {
                out.push((format!("M({l},{n})"), b.clone(), band_module(pres, field, b, &field.from_i64(l), n)?));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CosiltingVerification {
    pub rigid: bool,
    pub maximality: MaximalityReport,
    pub cotilting: CotiltingReport,
    /// Middle terms of extensions inside `Cogen M(t)` that fall outside it.
    pub torsion_free_violations: Vec<String>,
    pub tests: usize,
}

impl CosiltingVerification {
    pub fn passed(&self) -> bool {
        self.rigid && self.maximality.maximal && self.cotilting.is_clean() && self.torsion_free_violations.is_empty()
    }
}

/// Desk-scale cosilting check of a finite-dimensional descriptor over its
/// quotient: rigidity and bounded maximality, `Cogen = ⊥₁` on all
/// indecomposables up to `test_bound`, and closure of `Cogen` under the
/// middle terms of standard extensions.
pub fn verify_cosilting_finite<F: Field>(
    model: &Model,
    field: &F,
    desc: &CosiltingDescriptor,
    bound: i64,
    test_bound: usize,
) -> Result<CosiltingVerification> {
    if !desc.is_finite_dimensional() {
        return Err(Error::Input("verification needs a non-strict descriptor".into()));
    }
    let lambdas = desc.sample_lambdas();
    let members = desc.materialize(&lambdas);
    let rigid = is_rigid_system(model, &members, &desc.quotient);
    let maximality = is_maximal_rigid(model, &members, &desc.quotient, bound, &lambdas);
    let m = realize(model, field, desc)?;
    let q = &desc.quotient;
    let band = word_in_quotient(q, &model.band_of().word);
    let tests = indecomposables(q, field, band.as_ref(), test_bound, &lambdas)?;
    let named: Vec<(String, Representation<F>)> = tests.iter().map(|(n, _, r)| (n.clone(), r.clone())).collect();
    let cotilting = if q.vertex_count() == 0 { CotiltingReport::default() } else { cotilting_check(&m, &named)? };

    let cogen: Vec<usize> = (0..tests.len()).filter(|&i| cogen_member(&tests[i].2, &m)).collect();
    let pairs: Vec<(usize, usize)> = cogen.iter().flat_map(|&i| cogen.iter().map(move |&j| (i, j))).collect();
    let violations: Vec<Vec<String>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<String>> {
            let (sub, quo) = (&tests[i], &tests[j]);
            let mut bad = Vec::new();
            for w in find_extensions(q, &sub.1, &quo.1, band.as_ref())? {
                if !w.is_finite_dimensional() {
                    continue;
                }
                let lam = lambda_of(&sub.0).or_else(|| lambda_of(&quo.0)).unwrap_or(1);
                if let SesCertificate::Verified(ses) = standard_extension_to_ses(q, field, &w, &field.from_i64(lam))? {
                    if !cogen_member(&ses.middle, &m) {
                        bad.push(w.describe(q));
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(CosiltingVerification {
        rigid,
        maximality,
        cotilting,
        torsion_free_violations: violations.into_iter().flatten().collect(),
        tests: tests.len(),
    })
}

fn lambda_of(label: &str) -> Option<i64> {
    label.strip_prefix("M(")?.split(',').next()?.parse().ok()
}

/// `(⊥₀C, Cogen C)` restricted to named test modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TorsionPair {
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
    /// `Hom(X, Y) = 0` for every torsion `X` and torsion-free `Y`.
    pub orthogonal: bool,
}

pub fn torsion_pair_of<F: Field>(c: &Representation<F>, tests: &[(String, Representation<F>)]) -> TorsionPair {
    let flags: Vec<(bool, bool)> = tests.par_iter().map(|(_, t)| (hom_dim(t, c) == 0, cogen_member(t, c))).collect();
    let torsion: Vec<usize> = (0..tests.len()).filter(|&i| flags[i].0).collect();
    let free: Vec<usize> = (0..tests.len()).filter(|&i| flags[i].1).collect();
    let orthogonal = torsion.iter().all(|&x| free.iter().all(|&y| hom_dim(&tests[x].1, &tests[y].1) == 0));
    TorsionPair {
        torsion: torsion.iter().map(|&i| tests[i].0.clone()).collect(),
        torsion_free: free.iter().map(|&i| tests[i].0.clone()).collect(),
        orthogonal,
    }
}

/// `M(t)` as a module over the whole algebra.
pub fn realize_over_algebra<F: Field>(
    model: &Model,
    field: &F,
    desc: &CosiltingDescriptor,
) -> Result<Representation<F>> {
    let mut parts = Vec::new();
    for d in &desc.members {
        let ModuleDescriptor::StringFinite(a) = d else {
            return Err(Error::Input(format!("{d} is not finite-dimensional")));
        };
        parts.push(string_module(&model.pres, field, &model.word_of(a)?)?);
    }
    let refs: Vec<&Representation<F>> = parts.iter().collect();
    Ok(if refs.is_empty() {
        Representation::zero(model.pres.clone(), field.clone())
    } else {
        Representation::direct_sum(&refs)
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NonStrictEntry {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub ann_generators: Vec<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrictEntry {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub parameter_slot: String,
    pub rigid: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub non_strict: Vec<NonStrictEntry>,
    pub strict: Vec<StrictEntry>,
}

/// Degree-one generators of an ideal, printed.
pub fn ann_generators(pres: &GentlePresentation, ideal: &IdealBasis) -> Vec<String> {
    let mut out: Vec<String> = ideal.vertices().iter().map(|&v| format!("e{}", pres.vertices[v])).collect();
    out.extend(ideal.arrows().iter().map(|&a| pres.arrows[a].name.clone()));
    out
}

/// All asymptotic triangulations within `bound`, non-strict ones verified
/// against indecomposables up to `test_bound`.
pub fn classify<F: Field>(model: &Model, field: &F, bound: i64, test_bound: usize) -> Result<Classification> {
    let all = enumerate_asymptotic_triangulations(model, bound);
    let mut non_strict = Vec::new();
    let mut strict = Vec::new();
    for t in &all {
        let desc = family_of(model, &t.t)?;
        let arcs = t.t.arcs.iter().map(|a| a.to_string()).collect();
        if t.is_strict() {
            let reps = desc.materialize(&desc.sample_lambdas());
            strict.push(StrictEntry {
                t: arcs,
                parameter_slot: "P(k*)".into(),
                rigid: is_rigid_system(model, &reps, &desc.quotient),
            });
        } else {
            let v = verify_cosilting_finite(model, field, &desc, bound, test_bound)?;
            non_strict.push(NonStrictEntry {
                t: arcs,
                ann_generators: ann_generators(&model.pres, &desc.annihilator),
                verified: v.passed(),
            });
        }
    }
    Ok(Classification { non_strict, strict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::surface::parse_triangulation;

    fn kronecker() -> Model {
        Model::new(parse_triangulation(include_str!("../fixtures/fixture-11.json")).unwrap())
    }

    #[test]
    fn scalar_sets() {
        let a = ScalarSet::Finite([1, 2].into());
        assert!(a.is_disjoint(&ScalarSet::Cofinite([1, 2, 5].into())));
        assert!(!a.is_disjoint(&a.complement().complement()));
        assert!(a.is_disjoint(&a.complement()));
        assert_eq!(a.complement().representative(), Some(3));
        assert!(!ScalarSet::everything().contains(0));
    }

    #[test]
    fn gamma_family_is_zero() {
        let m = kronecker();
        let t = PartialAsympTriangulation::new(&m.tri.surface, m.tri.arcs.clone(), None).unwrap();
        let d = family_of(&m, &t).unwrap();
        assert!(d.members.is_empty());
        assert_eq!(d.quotient.vertex_count(), 0);
        let v = verify_cosilting_finite(&m, &Fp::default(), &d, 2, 4).unwrap();
        assert!(v.passed(), "{v:#?}");
    }

    #[test]
    fn empty_completes_to_gamma() {
        let m = kronecker();
        let s = complete_partial(&m, &PartialAsympTriangulation::empty(), 3).unwrap();
        assert_eq!(s.t.arcs, m.tri.arcs.iter().copied().collect());
    }

    #[test]
    fn empty_family_over_whole_algebra_is_not_maximal() {
        let m = kronecker();
        assert!(!is_maximal_rigid(&m, &[], &m.pres, 2, &[1]).maximal);
    }

    #[test]
    fn kronecker_enumeration() {
        let m = kronecker();
        let all = enumerate_asymptotic_triangulations(&m, 2);
        let strict = all.iter().filter(|t| t.is_strict()).count();
        assert!(strict > 0);
        for t in &all {
            if t.is_strict() {
                assert!(t.t.arcs.iter().all(|a| !a.is_bridging()));
            }
            let d = family_of(&m, &t.t).unwrap();
            let reps = d.materialize(&d.sample_lambdas());
            assert!(is_rigid_system(&m, &reps, &d.quotient), "{}", t.t);
        }
    }

    #[test]
    fn two_finite_bands_of_one_parameter_are_not_rigid() {
        let m = kronecker();
        let b = ModuleDescriptor::Band { lambda: 1, size: BandSize::Finite(1) };
        assert!(!is_rigid_system(&m, &[b], &m.pres));
    }
}
