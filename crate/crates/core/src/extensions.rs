//! Standard extensions between string and band modules: overlap and arrow
//! extensions found on words, explicit short exact sequences for the
//! finite-dimensional ones, the Ext-vanishing predicate read off the
//! surface, and a harness comparing all three with the linear-algebra oracle.

use std::collections::BTreeSet;
use std::sync::Arc as Shared;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GentlePresentation, Model};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::Projectives;
use crate::linalg::{span_dim, Matrix};
use crate::representations::{
    band_module, cokernel, compose, descriptor_of_word, find_isomorphism, hom_space, is_morphism, kernel,
    random_combination, string_basis, string_module, BandSize, ModuleDescriptor, Morphism, Representation,
};
use crate::strings::{enumerate_strings, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OverlapCase {
    StringString,
    /// The band module is the submodule.
    BandToString,
    /// The band module is the quotient.
    StringToBand,
}

/// How an infinite middle term is completed. `StarDelta`/`StarAlpha` follow
/// the tail of the sub/quotient word (product if that tail expands, direct
/// sum otherwise); `Plus`/`Minus` mark the two gluings onto the band word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MiddleFlavor {
    Finite,
    StarDelta,
    StarAlpha,
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Middle {
    pub word: Word,
    pub flavor: MiddleFlavor,
}

/// A standard extension `0 → M(sub) → middle → M(quotient) → 0`. Words are
/// stored in the orientation used for the gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionWitness {
    Overlap {
        case: OverlapCase,
        sub: Word,
        quotient: Word,
        /// Vertex positions of the common factor `m` in each word (for a
        /// band word, a position in its period).
        sub_at: usize,
        quotient_at: usize,
        overlap_len: usize,
        middle: Vec<Middle>,
    },
    Arrow {
        arrow: usize,
        sub: Word,
        quotient: Word,
        middle: Middle,
    },
}

impl ExtensionWitness {
    pub fn middle(&self) -> Vec<&Middle> {
        match self {
            ExtensionWitness::Overlap { middle, .. } => middle.iter().collect(),
            ExtensionWitness::Arrow { middle, .. } => vec![middle],
        }
    }

    pub fn is_finite_dimensional(&self) -> bool {
        let (sub, quotient) = match self {
            ExtensionWitness::Overlap { sub, quotient, .. } | ExtensionWitness::Arrow { sub, quotient, .. } => {
                (sub, quotient)
            }
        };
        !matches!(sub, Word::NString { .. })
            && !matches!(quotient, Word::NString { .. })
            && self.middle().iter().all(|m| m.word.is_finite())
    }

    pub fn describe(&self, pres: &GentlePresentation) -> String {
        let mids: Vec<String> = self.middle().iter().map(|m| m.word.render(pres)).collect();
        match self {
            ExtensionWitness::Overlap { case, sub, quotient, .. } => {
                format!("{case:?}: {} -> [{}] -> {}", sub.render(pres), mids.join(" + "), quotient.render(pres))
            }
            ExtensionWitness::Arrow { arrow, sub, quotient, .. } => format!(
                "Arrow {}: {} -> [{}] -> {}",
                pres.arrows[*arrow].name,
                sub.render(pres),
                mids.join(" + "),
                quotient.render(pres)
            ),
        }
    }
}

fn orientations(pres: &GentlePresentation, w: &Word) -> Vec<Word> {
    match w {
        Word::Finite { .. } if w.is_empty() => vec![w.clone()],
        Word::Finite { .. } => vec![w.clone(), w.inverse(pres)],
        Word::NString { .. } => vec![w.clone()],
        Word::ZPeriodic { .. } => vec![w.clone(), w.reversed_band()],
    }
}

/// Letters and vertices of a word, unrolled far enough for any scan.
struct Walk {
    ls: Vec<Letter>,
    vs: Vec<usize>,
    finite: bool,
    /// Last vertex position at which a factor may start.
    limit: usize,
}

impl Walk {
    fn new(pres: &GentlePresentation, w: &Word, window: usize) -> Walk {
        let (ls, finite, limit) = match w {
            Word::Finite { letters, .. } => (letters.clone(), true, letters.len()),
            Word::NString { preperiod, period, .. } => (w.unroll(window), false, preperiod.len() + 2 * period.len()),
            Word::ZPeriodic { .. } => unreachable!(),
        };
        let mut vs = vec![w.start()];
        vs.extend(ls.iter().map(|l| l.target(pres)));
        Walk { ls, vs, finite, limit }
    }
    fn has(&self, k: usize) -> bool {
        !self.finite || k < self.ls.len()
    }
}

fn window_for(a: &Word, b: &Word) -> usize {
    let size = |w: &Word| match w {
        Word::Finite { letters, .. } => letters.len(),
        Word::NString { preperiod, period, .. } => preperiod.len() + period.len(),
        Word::ZPeriodic { period, .. } => period.len(),
    };
    4 * (size(a) + size(b)) + 16
}

fn flavor_of(w: &Word, infinite: MiddleFlavor) -> MiddleFlavor {
    if w.is_finite() {
        MiddleFlavor::Finite
    } else {
        infinite
    }
}

fn sorted_middles(mut m: Vec<Middle>, pres: &GentlePresentation) -> Vec<Middle> {
    for x in &mut m {
        x.word = x.word.canonical(pres);
    }
    m.sort();
    m
}

/// Overlap extensions with `delta` as the submodule and `alpha` as the
/// quotient: a common factor `m` sitting at a peak of `delta` and in a
/// valley of `alpha`.
pub fn find_overlap_extensions(pres: &GentlePresentation, delta: &Word, alpha: &Word) -> Result<Vec<ExtensionWitness>> {
    delta.validate(pres)?;
    alpha.validate(pres)?;
    Ok(match (delta, alpha) {
        (Word::ZPeriodic { .. }, Word::ZPeriodic { .. }) => Vec::new(),
        (Word::ZPeriodic { .. }, _) => band_overlaps(pres, alpha, delta, false),
        (_, Word::ZPeriodic { .. }) => band_overlaps(pres, delta, alpha, true),
        _ => string_overlaps(pres, delta, alpha),
    })
}

fn string_overlaps(pres: &GentlePresentation, delta: &Word, alpha: &Word) -> Vec<ExtensionWitness> {
    let window = window_for(delta, alpha);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in orientations(pres, delta) {
        let sw = Walk::new(pres, &s, window);
        for q in orientations(pres, alpha) {
            let qw = Walk::new(pres, &q, window);
            for i in 0..=sw.limit {
                for j in 0..=qw.limit {
                    if sw.vs[i] != qw.vs[j] {
                        continue;
                    }
                    let mut len = 0;
                    while sw.has(i + len) && qw.has(j + len) && sw.ls.get(i + len) == qw.ls.get(j + len) {
                        len += 1;
                        if i + len >= sw.ls.len() && j + len >= qw.ls.len() && !sw.finite && !qw.finite {
                            break;
                        }
                    }
                    if (!sw.finite && i + len >= sw.ls.len()) || (!qw.finite && j + len >= qw.ls.len()) {
                        continue;
                    }
                    let s_before = i == 0 || !sw.ls[i - 1].is_direct();
                    let s_after = !sw.has(i + len) || sw.ls[i + len].is_direct();
                    let q_before = j == 0 || qw.ls[j - 1].is_direct();
                    let q_after = !qw.has(j + len) || !qw.ls[j + len].is_direct();
                    let ends_ok = !(i == 0 && j == 0) && (sw.has(i + len) || qw.has(j + len));
                    if !(s_before && s_after && q_before && q_after && ends_ok) {
                        continue;
                    }
                    let e1 = s.suffix_from(pres, i + len).prepend(q.start(), &qw.ls[..j + len]);
                    let e2 = q.suffix_from(pres, j + len).prepend(s.start(), &sw.ls[..i + len]);
                    if e1.validate(pres).is_err() || e2.validate(pres).is_err() {
                        continue;
                    }
                    let middle = vec![
                        Middle { flavor: flavor_of(&e1, MiddleFlavor::StarDelta), word: e1 },
                        Middle { flavor: flavor_of(&e2, MiddleFlavor::StarAlpha), word: e2 },
                    ];
                    if seen.insert(sorted_middles(middle.clone(), pres)) {
                        out.push(ExtensionWitness::Overlap {
                            case: OverlapCase::StringString,
                            sub: s.clone(),
                            quotient: q.clone(),
                            sub_at: i,
                            quotient_at: j,
                            overlap_len: len,
                            middle,
                        });
                    }
                }
            }
        }
    }
    out
}

/// A finite string overlapping the band word. The middle term is the string
/// with `m` replaced by one full turn of the band starting and ending in `m`.
fn band_overlaps(pres: &GentlePresentation, string: &Word, band: &Word, string_is_sub: bool) -> Vec<ExtensionWitness> {
    let Word::Finite { .. } = string else {
        return Vec::new();
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in orientations(pres, string) {
        let ww = Walk::new(pres, &w, 0);
        let n = ww.ls.len();
        for b in orientations(pres, band) {
            let Word::ZPeriodic { period, .. } = &b else { unreachable!() };
            let s = period.len();
            let at = |k: isize| period[k.rem_euclid(s as isize) as usize];
            let mut bv = vec![b.start()];
            bv.extend(period.iter().map(|l| l.target(pres)));
            for r in 0..s {
                for i in 0..=n {
                    if ww.vs[i] != bv[r] {
                        continue;
                    }
                    let mut len = 0;
                    while i + len < n && ww.ls[i + len] == at((r + len) as isize) {
                        len += 1;
                    }
                    let before = at(r as isize - 1);
                    let after = at((r + len) as isize);
                    let (w_before, w_after, b_before, b_after) =
                        if string_is_sub { (false, true, true, false) } else { (true, false, false, true) };
                    let ok = (i == 0 || ww.ls[i - 1].is_direct() == w_before)
                        && (i + len == n || ww.ls[i + len].is_direct() == w_after)
                        && before.is_direct() == b_before
                        && after.is_direct() == b_after;
                    if !ok {
                        continue;
                    }
                    let mut ls = ww.ls[..i].to_vec();
                    ls.extend((0..s + len).map(|k| at((r + k) as isize)));
                    ls.extend_from_slice(&ww.ls[i + len..]);
                    let eps = Word::finite(w.start(), ls);
                    if eps.validate(pres).is_err() || !seen.insert(eps.canonical(pres)) {
                        continue;
                    }
                    let (case, sub, quotient, sub_at, quotient_at) = if string_is_sub {
                        (OverlapCase::StringToBand, w.clone(), b.clone(), i, r)
                    } else {
                        (OverlapCase::BandToString, b.clone(), w.clone(), r, i)
                    };
                    out.push(ExtensionWitness::Overlap {
                        case,
                        sub,
                        quotient,
                        sub_at,
                        quotient_at,
                        overlap_len: len,
                        middle: vec![Middle { word: eps, flavor: MiddleFlavor::Finite }],
                    });
                }
            }
        }
    }
    out
}

/// Arrow extensions `0 → M(delta) → M(ε) → M(alpha) → 0` with
/// `ε = alpha·a⁻¹·delta⁻¹`. Two ℕ-strings only glue when the result is the
/// band word, which gives the `Plus`/`Minus` cases; `band` supplies it.
pub fn find_arrow_extensions(
    pres: &GentlePresentation,
    delta: &Word,
    alpha: &Word,
    band: Option<&Word>,
) -> Result<Vec<ExtensionWitness>> {
    delta.validate(pres)?;
    alpha.validate(pres)?;
    if matches!(delta, Word::ZPeriodic { .. }) || matches!(alpha, Word::ZPeriodic { .. }) {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in orientations(pres, delta) {
        for q in orientations(pres, alpha) {
            for x in pres.arrows_in(d.start()).filter(|&x| pres.arrows[x].source == q.start()) {
                let middle = match (&d, &q) {
                    (Word::NString { .. }, Word::NString { .. }) => {
                        match band.and_then(|b| glue_to_band(pres, &d, &q, x, b)) {
                            Some(m) => m,
                            None => continue,
                        }
                    }
                    (Word::NString { .. }, _) => {
                        // Read from the finite end of alpha: alpha⁻¹ · a · delta.
                        let mut pre: Vec<Letter> = q.inverse(pres).letters().to_vec();
                        pre.push(Letter::Direct(x));
                        Middle { word: d.prepend(q.end(pres), &pre), flavor: MiddleFlavor::StarDelta }
                    }
                    _ => {
                        let mut pre: Vec<Letter> = d.inverse(pres).letters().to_vec();
                        pre.push(Letter::Inverse(x));
                        let word = q.prepend(d.end(pres), &pre);
                        Middle { flavor: flavor_of(&word, MiddleFlavor::StarAlpha), word }
                    }
                };
                if middle.word.validate(pres).is_err() {
                    continue;
                }
                if seen.insert(sorted_middles(vec![middle.clone()], pres)) {
                    out.push(ExtensionWitness::Arrow { arrow: x, sub: d.clone(), quotient: q.clone(), middle });
                }
            }
        }
    }
    Ok(out)
}

/// Is `…delta⁻¹ a⁻¹ alpha…` the band word, read along or against `band`?
fn glue_to_band(pres: &GentlePresentation, d: &Word, q: &Word, x: usize, band: &Word) -> Option<Middle> {
    let Word::ZPeriodic { period, .. } = band else {
        return None;
    };
    let s = period.len();
    let n = window_for(d, q);
    let (dl, ql) = (d.unroll(n), q.unroll(n));
    for (b, flavor) in [(band.clone(), MiddleFlavor::Plus), (band.reversed_band(), MiddleFlavor::Minus)] {
        let Word::ZPeriodic { period, .. } = &b else { unreachable!() };
        let at = |k: isize| period[k.rem_euclid(s as isize) as usize];
        for r in 0..s as isize {
            let ok = at(r - 1) == Letter::Inverse(x)
                && (0..n).all(|t| at(r + t as isize) == ql[t])
                && (0..n).all(|t| at(r - 2 - t as isize) == dl[t].inverse());
            if ok {
                let _ = pres;
                return Some(Middle { word: band.clone(), flavor });
            }
        }
    }
    None
}

/// Every standard extension with `delta` as sub and `alpha` as quotient.
pub fn find_extensions(
    pres: &GentlePresentation,
    delta: &Word,
    alpha: &Word,
    band: Option<&Word>,
) -> Result<Vec<ExtensionWitness>> {
    let mut out = find_overlap_extensions(pres, delta, alpha)?;
    out.extend(find_arrow_extensions(pres, delta, alpha, band)?);
    Ok(out)
}

/// An explicit short exact sequence.
#[derive(Clone, Debug)]
pub struct VerifiedSes<F: Field> {
    pub sub: Representation<F>,
    pub middle: Representation<F>,
    pub quotient: Representation<F>,
    pub iota: Morphism<F>,
    pub pi: Morphism<F>,
}

#[derive(Clone, Debug)]
pub enum SesCertificate<F: Field> {
    Verified(Box<VerifiedSes<F>>),
    /// Infinite-dimensional terms: only the shape of the sequence is known.
    Symbolic(String),
}

/// Basis positions of each word inside `⊕ M(words)`.
fn sum_positions(pres: &GentlePresentation, words: &[&Word]) -> Vec<Vec<(usize, usize)>> {
    let mut offset = vec![0; pres.vertex_count()];
    words
        .iter()
        .map(|w| {
            let b = string_basis(pres, w);
            let shifted = b.iter().map(|&(v, k)| (v, k + offset[v])).collect();
            for &(v, _) in &b {
                offset[v] += 1;
            }
            shifted
        })
        .collect()
}

fn morphism_from<F: Field>(
    field: &F,
    src: &Representation<F>,
    dst: &Representation<F>,
    entries: &[((usize, usize), (usize, usize), i64)],
) -> Morphism<F> {
    let mut f: Morphism<F> = (0..src.dims.len()).map(|v| Matrix::zeros(field, dst.dims[v], src.dims[v])).collect();
    for &((v, k), (w, l), c) in entries {
        debug_assert_eq!(v, w);
        f[v].set(l, k, field.from_i64(c));
    }
    f
}

/// Exactness by ranks, then non-splitness: `ι` splits iff the identity of
/// the submodule factors through it.
pub fn check_ses<F: Field>(ses: &VerifiedSes<F>) -> Result<()> {
    let VerifiedSes { sub, middle, quotient, iota, pi } = ses;
    let fail = |why: &str| Err(Error::ExactnessFailure(why.to_string()));
    if !is_morphism(sub, middle, iota) || !is_morphism(middle, quotient, pi) {
        return fail("maps are not module homomorphisms");
    }
    for v in 0..sub.dims.len() {
        if sub.dims[v] + quotient.dims[v] != middle.dims[v] {
            return fail("dimension vectors are not additive");
        }
        if iota[v].rank() != sub.dims[v] || pi[v].rank() != quotient.dims[v] || !pi[v].mul(&iota[v]).is_zero() {
            return fail("sequence is not exact");
        }
    }
    let field = &sub.field;
    let flat = |f: &Morphism<F>| -> Vec<F::Elem> {
        f.iter().flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec())).collect()
    };
    let id: Morphism<F> = sub.dims.iter().map(|&d| Matrix::identity(field, d)).collect();
    let back = hom_space(middle, sub);
    let mut vecs: Vec<Vec<F::Elem>> = back.basis.iter().map(|h| flat(&compose(h, iota))).collect();
    let len = flat(&id).len();
    let before = span_dim(field, len, &vecs);
    vecs.push(flat(&id));
    if span_dim(field, len, &vecs) == before {
        return fail("sequence splits");
    }
    Ok(())
}

/// Builds and verifies the short exact sequence of a witness. Band terms
/// are `M(λ,1)`.
pub fn standard_extension_to_ses<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    witness: &ExtensionWitness,
    lambda: &F::Elem,
) -> Result<SesCertificate<F>> {
    if !witness.is_finite_dimensional() {
        return Ok(SesCertificate::Symbolic(witness.describe(pres)));
    }
    let ses = match witness {
        ExtensionWitness::Overlap {
            case: OverlapCase::StringString,
            sub,
            quotient,
            sub_at,
            quotient_at,
            overlap_len,
            middle,
        } => {
            let (i, j, len) = (*sub_at, *quotient_at, *overlap_len);
            let (e1, e2) = (&middle[0].word, &middle[1].word);
            let a = string_module(pres, field, sub)?;
            let c = string_module(pres, field, quotient)?;
            let m1 = string_module(pres, field, e1)?;
            let m2 = string_module(pres, field, e2)?;
            let mid = Representation::direct_sum(&[&m1, &m2]);
            let pos = sum_positions(pres, &[e1, e2]);
            let sb = string_basis(pres, sub);
            let qb = string_basis(pres, quotient);
            let mut iota = Vec::new();
            for (k, &x) in sb.iter().enumerate() {
                if k >= i {
                    iota.push((x, pos[0][j + k - i], 1));
                }
                if k <= i + len {
                    iota.push((x, pos[1][k], 1));
                }
            }
            let mut pi = Vec::new();
            for (t, &y) in pos[0].iter().enumerate().take(j + len + 1) {
                pi.push((y, qb[t], 1));
            }
            for (t, &y) in pos[1].iter().enumerate().skip(i) {
                pi.push((y, qb[j + t - i], -1));
            }
            let iota = morphism_from(field, &a, &mid, &iota);
            let pi = morphism_from(field, &mid, &c, &pi);
            VerifiedSes { sub: a, middle: mid, quotient: c, iota, pi }
        }
        ExtensionWitness::Arrow { sub, quotient, middle, .. } => {
            let a = string_module(pres, field, sub)?;
            let c = string_module(pres, field, quotient)?;
            let mid = string_module(pres, field, &middle.word)?;
            let eb = string_basis(pres, &middle.word);
            let n = sub.len();
            let iota: Vec<_> =
                string_basis(pres, sub).into_iter().enumerate().map(|(k, x)| (x, eb[n - k], 1)).collect();
            let pi: Vec<_> =
                string_basis(pres, quotient).into_iter().enumerate().map(|(t, y)| (eb[n + 1 + t], y, 1)).collect();
            let iota = morphism_from(field, &a, &mid, &iota);
            let pi = morphism_from(field, &mid, &c, &pi);
            VerifiedSes { sub: a, middle: mid, quotient: c, iota, pi }
        }
        ExtensionWitness::Overlap { sub, quotient, middle, .. } => {
            let build = |w: &Word| match w {
                Word::ZPeriodic { .. } => band_module(pres, field, w, lambda, 1),
                _ => string_module(pres, field, w),
            };
            let a = build(sub)?;
            let c = build(quotient)?;
            let mid = string_module(pres, field, &middle[0].word)?;
            search_band_ses(a, mid, c, witness.describe(pres))?
        }
    };
    check_ses(&ses)?;
    Ok(SesCertificate::Verified(Box::new(ses)))
}

/// Random monomorphisms `sub → middle` until the cokernel is the quotient.
fn search_band_ses<F: Field>(
    sub: Representation<F>,
    middle: Representation<F>,
    quotient: Representation<F>,
    label: String,
) -> Result<VerifiedSes<F>> {
    let field = sub.field.clone();
    let space = hom_space(&sub, &middle);
    let mut rng = ChaCha8Rng::seed_from_u64(0xE57);
    for _ in 0..400 {
        let Some(iota) = random_combination(&field, &space, &mut rng) else {
            break;
        };
        if (0..sub.dims.len()).any(|v| iota[v].rank() != sub.dims[v]) {
            continue;
        }
        let (coker, proj) = cokernel(&middle, &iota);
        if let Some(iso) = find_isomorphism(&coker, &quotient) {
            let pi = compose(&iso, &proj);
            return Ok(VerifiedSes { sub, middle, quotient, iota, pi });
        }
    }
    Err(Error::ExactnessFailure(format!("no sequence realises {label}")))
}

/// Vanishing of Ext¹ in both directions, read off the surface. Pairs of band
/// type are decided by their parameters: the same parameter gives
/// extensions unless one of the two is generic.
pub fn ext_vanishing_pair(model: &Model, d1: &ModuleDescriptor, d2: &ModuleDescriptor) -> bool {
    use ModuleDescriptor::*;
    match (d1, d2) {
        (Band { lambda: l1, size: s1 }, Band { lambda: l2, size: s2 }) => {
            if l1 != l2 {
                return true;
            }
            matches!((s1, s2), (BandSize::PlusInf, BandSize::PlusInf) | (BandSize::MinusInf, BandSize::MinusInf))
        }
        (Generic, Band { .. } | Generic) | (Band { .. }, Generic) => true,
        _ => {
            let (a1, a2) = (d1.arc(), d2.arc());
            model.tri.contains(&a1) || model.tri.contains(&a2) || model.tri.crossings_in_3cycles_only(&a1, &a2)
        }
    }
}

/// A finite-dimensional test module with its word and label.
#[derive(Clone, Debug)]
pub struct TestModule<F: Field> {
    pub label: String,
    pub word: Word,
    pub descriptor: ModuleDescriptor,
    pub rep: Representation<F>,
}

/// String modules of words up to `length_bound`, then `M(λ,1)` for each `λ`.
pub fn test_modules<F: Field>(
    model: &Model,
    field: &F,
    length_bound: usize,
    lambdas: &[i64],
) -> Result<Vec<TestModule<F>>> {
    let pres = &model.pres;
    let mut out = Vec::new();
    for w in enumerate_strings(pres, length_bound) {
        out.push(TestModule {
            label: w.render(pres),
            descriptor: descriptor_of_word(model, &w)?,
            rep: string_module(pres, field, &w)?,
            word: w,
        });
    }
    let band = model.band_of().word;
    for &l in lambdas {
        out.push(TestModule {
            label: format!("M({l},1)"),
            descriptor: ModuleDescriptor::Band { lambda: l, size: BandSize::Finite(1) },
            rep: band_module(pres, field, &band, &field.from_i64(l), 1)?,
            word: band.clone(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Disagreement {
    pub left: String,
    pub right: String,
    pub predicate: bool,
    /// `dim Ext¹(left, right)` and the reverse.
    pub ext_lr: usize,
    pub ext_rl: usize,
    /// Witnesses with `right` as sub and `left` as quotient, and the reverse.
    pub witnesses_lr: usize,
    pub witnesses_rl: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HarnessReport {
    pub modules: usize,
    pub pairs: usize,
    pub witnesses_checked: usize,
    pub disagreements: Vec<Disagreement>,
    pub witness_failures: Vec<String>,
}

impl HarnessReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.witness_failures.is_empty()
    }
}

/// Compares the surface predicate, the Ext oracle and the witness search on
/// every unordered pair of distinct test modules.
pub fn consistency_harness<F: Field>(
    model: &Model,
    field: &F,
    length_bound: usize,
    lambdas: &[i64],
) -> Result<HarnessReport> {
    consistency_harness_with(model, field, length_bound, lambdas, |a, b| ext_vanishing_pair(model, a, b))
}

/// [`consistency_harness`] with a replaceable predicate.
pub fn consistency_harness_with<F: Field>(
    model: &Model,
    field: &F,
    length_bound: usize,
    lambdas: &[i64],
    predicate: impl Fn(&ModuleDescriptor, &ModuleDescriptor) -> bool + Sync,
) -> Result<HarnessReport> {
    let pres = &model.pres;
    let mods = test_modules(model, field, length_bound, lambdas)?;
    let proj = Projectives::new(pres, field)?;
    let pres_ref: &GentlePresentation = pres;
    let band = model.band_of().word;
    // Top and syzygy once per module.
    let syz: Vec<_> = mods
        .par_iter()
        .map(|m| {
            let (top, cover, p0) = proj.cover(&m.rep);
            (top, kernel(&p0, &cover).0)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..mods.len()).flat_map(|i| (i + 1..mods.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<(Option<Disagreement>, usize, Vec<String>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&mods[i], &mods[j]);
            let pred = predicate(&x.descriptor, &y.descriptor);
            let ext_lr = proj.ext1_with(&syz[i].0, &syz[i].1, &x.rep, &y.rep);
            let ext_rl = proj.ext1_with(&syz[j].0, &syz[j].1, &y.rep, &x.rep);
            let w_lr = find_extensions(pres_ref, &y.word, &x.word, Some(&band))?;
            let w_rl = find_extensions(pres_ref, &x.word, &y.word, Some(&band))?;
            let mut failures = Vec::new();
            let mut checked = 0;
            for (w, lam) in w_lr.iter().chain(&w_rl).map(|w| (w, band_lambda(x, y))) {
                checked += 1;
                if let Err(e) = standard_extension_to_ses(pres, field, w, &field.from_i64(lam)) {
                    failures.push(format!("{}: {e}", w.describe(pres)));
                }
            }
            let ok = pred == (ext_lr == 0 && ext_rl == 0)
                && (ext_lr == 0) == w_lr.is_empty()
                && (ext_rl == 0) == w_rl.is_empty();
            let dis = (!ok).then(|| Disagreement {
                left: x.label.clone(),
                right: y.label.clone(),
                predicate: pred,
                ext_lr,
                ext_rl,
                witnesses_lr: w_lr.len(),
                witnesses_rl: w_rl.len(),
            });
            Ok((dis, checked, failures))
        })
        .collect();
    let mut report = HarnessReport { modules: mods.len(), pairs: pairs.len(), ..Default::default() };
    for r in results {
        let (dis, checked, failures) = r?;
        report.disagreements.extend(dis);
        report.witnesses_checked += checked;
        report.witness_failures.extend(failures);
    }
    Ok(report)
}

/// The band parameter involved in a pair, if any.
fn band_lambda<F: Field>(x: &TestModule<F>, y: &TestModule<F>) -> i64 {
    [x, y]
        .iter()
        .find_map(|m| match m.descriptor {
            ModuleDescriptor::Band { lambda, .. } => Some(lambda),
            _ => None,
        })
        .unwrap_or(1)
}

/// Rows and columns labelled by the test modules; a cell is nonzero when
/// `Ext¹(row, column) ≠ 0`.
pub fn ext_table<F: Field>(
    model: &Model,
    field: &F,
    length_bound: usize,
    lambdas: &[i64],
) -> Result<(Vec<String>, Vec<Vec<usize>>)> {
    let mods = test_modules(model, field, length_bound, lambdas)?;
    let proj = Projectives::new(&model.pres, field)?;
    let rows: Vec<Vec<usize>> = mods
        .par_iter()
        .map(|x| {
            let (top, cover, p0) = proj.cover(&x.rep);
            let omega = kernel(&p0, &cover).0;
            mods.iter().map(|y| proj.ext1_with(&top, &omega, &x.rep, &y.rep)).collect()
        })
        .collect();
    Ok((mods.into_iter().map(|m| m.label).collect(), rows))
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
    fn kronecker_arrow_extension() {
        let m = kronecker();
        let f = Fp::default();
        let a = 0;
        let (src, tgt) = (m.pres.arrows[a].source, m.pres.arrows[a].target);
        let ws = find_extensions(&m.pres, &Word::trivial(tgt), &Word::trivial(src), None).unwrap();
        assert_eq!(ws.len(), 2);
        for w in &ws {
            let ExtensionWitness::Arrow { middle, .. } = w else { panic!("expected arrow witness") };
            assert_eq!(middle.word.len(), 1);
            assert!(matches!(standard_extension_to_ses(&m.pres, &f, w, &1).unwrap(), SesCertificate::Verified(_)));
        }
        assert!(find_extensions(&m.pres, &Word::trivial(src), &Word::trivial(tgt), None).unwrap().is_empty());
    }

    #[test]
    fn kronecker_band_self_extension() {
        let m = kronecker();
        let f = Fp::default();
        let band = m.band_of().word;
        let b = band_module(&m.pres, &f, &band, &2, 1).unwrap();
        let proj = Projectives::new(&m.pres, &f).unwrap();
        assert_eq!(proj.ext1(&b, &b), 1);
        assert!(!ext_vanishing_pair(
            &m,
            &ModuleDescriptor::Band { lambda: 2, size: BandSize::Finite(1) },
            &ModuleDescriptor::Band { lambda: 2, size: BandSize::Finite(1) }
        ));
        assert!(!ext_vanishing_pair(
            &m,
            &ModuleDescriptor::Band { lambda: 2, size: BandSize::PlusInf },
            &ModuleDescriptor::Band { lambda: 2, size: BandSize::MinusInf }
        ));
    }

    #[test]
    fn kronecker_harness_is_clean() {
        let m = kronecker();
        let r = consistency_harness(&m, &Fp::default(), 4, &[1, 2]).unwrap();
        assert!(r.is_clean(), "{:#?}", r);
        assert!(r.witnesses_checked > 0);
    }

    #[test]
    fn harness_detects_a_corrupted_predicate() {
        let m = kronecker();
        let r = consistency_harness_with(&m, &Fp::default(), 3, &[1], |_, _| true).unwrap();
        assert!(!r.disagreements.is_empty());
    }
}
