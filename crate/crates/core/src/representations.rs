//! Finite-dimensional representations: string and band modules, projectives
//! and injectives, Hom spaces, and symbolic labels for the infinite-dimensional
//! modules that are never built as matrices.

use std::fmt;
use std::sync::Arc as Shared;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{enumerate_path_basis, GentlePresentation, Model, Path};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::strings::{classify_asymptotic, Asymptotics, Letter, Word};
use crate::surface::Arc;

#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    pub pres: Shared<GentlePresentation>,
    pub field: F,
    pub dims: Vec<usize>,
    /// `mats[a]` has shape `dims[t(a)] × dims[s(a)]`.
    pub mats: Vec<Matrix<F>>,
}

/// A morphism, one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

impl<F: Field> Representation<F> {
    pub fn new(pres: Shared<GentlePresentation>, field: F, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self> {
        let rep = Representation { pres, field, dims, mats };
        rep.check()?;
        Ok(rep)
    }

    fn check(&self) -> Result<()> {
        let p = &self.pres;
        if self.dims.len() != p.vertex_count() || self.mats.len() != p.arrows.len() {
            return Err(Error::NotARepresentation("wrong number of vertices or arrows".into()));
        }
        for (a, m) in self.mats.iter().enumerate() {
            let ar = &p.arrows[a];
            if (m.rows(), m.cols()) != (self.dims[ar.target], self.dims[ar.source]) {
                return Err(Error::NotARepresentation(format!("matrix of {} has the wrong shape", ar.name)));
            }
        }
        if !self.satisfies_relations() {
            return Err(Error::NotARepresentation("a relation acts nonzero".into()));
        }
        Ok(())
    }

    pub fn zero(pres: Shared<GentlePresentation>, field: F) -> Self {
        let dims = vec![0; pres.vertex_count()];
        let mats = pres.arrows.iter().map(|_| Matrix::zeros(&field, 0, 0)).collect();
        Representation { pres, field, dims, mats }
    }

    pub fn simple(pres: Shared<GentlePresentation>, field: F, i: usize) -> Self {
        string_module(&pres, &field, &Word::trivial(i)).expect("trivial word")
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn satisfies_relations(&self) -> bool {
        self.pres.relations.iter().all(|&(b, a)| self.mats[b].mul(&self.mats[a]).is_zero())
    }

    /// Action of a path (identity for a trivial path).
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(&self.field, self.dims[p.start]);
        for &a in &p.arrows {
            m = self.mats[a].mul(&m);
        }
        m
    }

    pub fn direct_sum(parts: &[&Representation<F>]) -> Self {
        let first = parts[0];
        let pres = first.pres.clone();
        let field = first.field.clone();
        let n = pres.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let mats = pres
            .arrows
            .iter()
            .enumerate()
            .map(|(a, ar)| {
                let mut m = Matrix::zeros(&field, dims[ar.target], dims[ar.source]);
                let (mut r, mut c) = (0, 0);
                for part in parts {
                    m.put(r, c, &part.mats[a]);
                    r += part.dims[ar.target];
                    c += part.dims[ar.source];
                }
                m
            })
            .collect();
        Representation { pres, field, dims, mats }
    }

    /// `{dim:{vertex:d}, mats:{arrow:[[…]]}}`.
    pub fn to_json(&self) -> Value {
        let mut dim = Map::new();
        for (v, name) in self.pres.vertices.iter().enumerate() {
            dim.insert(name.clone(), json!(self.dims[v]));
        }
        let mut mats = Map::new();
        for (a, ar) in self.pres.arrows.iter().enumerate() {
            mats.insert(ar.name.clone(), json!(self.mats[a].to_strings()));
        }
        json!({ "dim": dim, "mats": mats })
    }
}

/// Vertex-local basis index for each position of a vertex sequence.
fn local_indices(seq: &[usize], n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dims = vec![0; n];
    let local = seq
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    (dims, local)
}

/// `(vertex, index within that vertex)` of each basis vector of a finite
/// string module, in word order.
pub fn string_basis(pres: &GentlePresentation, word: &Word) -> Vec<(usize, usize)> {
    let seq = word.vertices(pres);
    let (_, local) = local_indices(&seq, pres.vertex_count());
    seq.into_iter().zip(local).collect()
}

pub fn string_module<F: Field>(pres: &Shared<GentlePresentation>, field: &F, word: &Word) -> Result<Representation<F>> {
    if !word.is_finite() {
        return Err(Error::InvalidWord("string modules are built for finite words only".into()));
    }
    word.validate(pres)?;
    let seq = word.vertices(pres);
    let (dims, local) = local_indices(&seq, pres.vertex_count());
    let mut mats: Vec<Matrix<F>> =
        pres.arrows.iter().map(|ar| Matrix::zeros(field, dims[ar.target], dims[ar.source])).collect();
    for (j, l) in word.letters().iter().enumerate() {
        let (from, to) = (local[j], local[j + 1]);
        match *l {
            Letter::Direct(a) => mats[a].set(to, from, field.one()),
            Letter::Inverse(a) => mats[a].set(from, to, field.one()),
        }
    }
    Representation::new(pres.clone(), field.clone(), dims, mats)
}

/// Jordan block with `lambda` on the diagonal and ones just above it.
pub fn jordan_block<F: Field>(field: &F, lambda: &F::Elem, n: usize) -> Matrix<F> {
    let mut j = Matrix::zeros(field, n, n);
    for i in 0..n {
        j.set(i, i, lambda.clone());
        if i + 1 < n {
            j.set(i, i + 1, field.one());
        }
    }
    j
}

/// Band module of a bi-periodic word, with `J_n(λ)` on the first letter of
/// the period (its inverse if that letter is inverse, so that the monodromy
/// read along the word is always `J_n(λ)`).
pub fn band_module<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    band: &Word,
    lambda: &F::Elem,
    n: usize,
) -> Result<Representation<F>> {
    let Word::ZPeriodic { start, period } = band else {
        return Err(Error::InvalidWord("band modules need a bi-periodic word".into()));
    };
    if field.is_zero(lambda) {
        return Err(Error::ZeroBandParameter);
    }
    if n == 0 {
        return Err(Error::ZeroBandSize);
    }
    band.validate(pres)?;
    let s = period.len();
    let mut seq = vec![*start];
    for l in &period[..s - 1] {
        seq.push(l.target(pres));
    }
    let (count, local) = local_indices(&seq, pres.vertex_count());
    let dims: Vec<usize> = count.iter().map(|c| c * n).collect();
    let mut mats: Vec<Matrix<F>> =
        pres.arrows.iter().map(|ar| Matrix::zeros(field, dims[ar.target], dims[ar.source])).collect();
    let j = jordan_block(field, lambda, n);
    let j_inv = j.inverse().expect("λ ≠ 0");
    let id = Matrix::identity(field, n);
    for (k, l) in period.iter().enumerate() {
        let (from, to) = (local[k] * n, local[(k + 1) % s] * n);
        let block = match (k, l.is_direct()) {
            (0, true) => &j,
            (0, false) => &j_inv,
            _ => &id,
        };
        match *l {
            Letter::Direct(a) => mats[a].put(to, from, block),
            Letter::Inverse(a) => mats[a].put(from, to, block),
        }
    }
    Representation::new(pres.clone(), field.clone(), dims, mats)
}

/// `M(λ, n)` for the band of a triangulation.
pub fn band_module_of<F: Field>(model: &Model, field: &F, lambda: &F::Elem, n: usize) -> Result<Representation<F>> {
    band_module(&model.pres, field, &model.band_of().word, lambda, n)
}

/// `P(i)`: basis the nonzero paths starting at `i`.
pub fn projective_of_vertex<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    i: usize,
) -> Result<Representation<F>> {
    let paths: Vec<Path> = enumerate_path_basis(pres)?.into_iter().filter(|p| p.start == i).collect();
    let ends: Vec<usize> = paths.iter().map(|p| p.end(pres)).collect();
    let (dims, local) = local_indices(&ends, pres.vertex_count());
    let mut mats: Vec<Matrix<F>> =
        pres.arrows.iter().map(|ar| Matrix::zeros(field, dims[ar.target], dims[ar.source])).collect();
    for (k, p) in paths.iter().enumerate() {
        for a in pres.arrows_out(ends[k]) {
            let mut longer = p.clone();
            longer.arrows.push(a);
            if let Some(m) = paths.iter().position(|q| *q == longer) {
                mats[a].set(local[m], local[k], field.one());
            }
        }
    }
    Representation::new(pres.clone(), field.clone(), dims, mats)
}

/// `I(i)`: basis dual to the nonzero paths ending at `i`.
pub fn injective_of_vertex<F: Field>(
    pres: &Shared<GentlePresentation>,
    field: &F,
    i: usize,
) -> Result<Representation<F>> {
    let paths: Vec<Path> = enumerate_path_basis(pres)?.into_iter().filter(|p| p.end(pres) == i).collect();
    let starts: Vec<usize> = paths.iter().map(|p| p.start).collect();
    let (dims, local) = local_indices(&starts, pres.vertex_count());
    let mut mats: Vec<Matrix<F>> =
        pres.arrows.iter().map(|ar| Matrix::zeros(field, dims[ar.target], dims[ar.source])).collect();
    // The dual of `q·a` is sent by `a` to the dual of `q`.
    for (k, p) in paths.iter().enumerate() {
        if let Some(&a) = p.arrows.first() {
            let shorter = Path { start: pres.arrows[a].target, arrows: p.arrows[1..].to_vec() };
            let m = paths.iter().position(|q| *q == shorter).expect("suffix of a nonzero path");
            mats[a].set(local[m], local[k], field.one());
        }
    }
    Representation::new(pres.clone(), field.clone(), dims, mats)
}

/// The regular representation `⊕ P(i)`.
pub fn regular<F: Field>(pres: &Shared<GentlePresentation>, field: &F) -> Result<Representation<F>> {
    let ps = (0..pres.vertex_count()).map(|i| projective_of_vertex(pres, field, i)).collect::<Result<Vec<_>>>()?;
    if ps.is_empty() {
        return Ok(Representation::zero(pres.clone(), field.clone()));
    }
    Ok(Representation::direct_sum(&ps.iter().collect::<Vec<_>>()))
}

/// Basis of `Hom(m, n)`.
pub struct HomSpace<F: Field> {
    pub dim: usize,
    pub basis: Vec<Morphism<F>>,
}

/// Offsets of the per-vertex blocks of unknowns in a Hom computation.
fn hom_offsets<F: Field>(m: &Representation<F>, n: &Representation<F>) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for v in 0..m.dims.len() {
        offs.push(total);
        total += m.dims[v] * n.dims[v];
    }
    (offs, total)
}

/// Linear equations `N_a f_s − f_t M_a = 0` on the entries of `f`.
fn hom_equations<F: Field>(m: &Representation<F>, n: &Representation<F>) -> (Matrix<F>, Vec<usize>, usize) {
    let f = &m.field;
    let (offs, unknowns) = hom_offsets(m, n);
    let rows: usize = m.pres.arrows.iter().map(|ar| n.dims[ar.target] * m.dims[ar.source]).sum();
    let mut eq = Matrix::zeros(f, rows, unknowns);
    let mut row = 0;
    for (a, ar) in m.pres.arrows.iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        let (ma, na) = (&m.mats[a], &n.mats[a]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                // (N_a f_s)[r][c] = Σ_k N_a[r][k] f_s[k][c]
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if !f.is_zero(x) {
                        eq.add_at(row, offs[s] + k * m.dims[s] + c, x);
                    }
                }
                // (f_t M_a)[r][c] = Σ_k f_t[r][k] M_a[k][c]
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if !f.is_zero(x) {
                        eq.add_at(row, offs[t] + r * m.dims[t] + k, &f.neg(x));
                    }
                }
                row += 1;
            }
        }
    }
    (eq, offs, unknowns)
}

fn unpack<F: Field>(m: &Representation<F>, n: &Representation<F>, offs: &[usize], v: &[F::Elem]) -> Morphism<F> {
    (0..m.dims.len())
        .map(|x| {
            let (r, c) = (n.dims[x], m.dims[x]);
            Matrix::from_rows(&m.field, r, c, v[offs[x]..offs[x] + r * c].to_vec())
        })
        .collect()
}

pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> usize {
    let (eq, _, unknowns) = hom_equations(m, n);
    unknowns - eq.rank()
}

pub fn hom_space<F: Field>(m: &Representation<F>, n: &Representation<F>) -> HomSpace<F> {
    let (eq, offs, unknowns) = hom_equations(m, n);
    let null = if eq.rows() == 0 { Matrix::identity(&m.field, unknowns) } else { eq.nullspace() };
    let basis: Vec<Morphism<F>> = (0..null.cols()).map(|j| unpack(m, n, &offs, &null.column(j))).collect();
    HomSpace { dim: basis.len(), basis }
}

/// Does the family of vertex maps commute with all arrows?
pub fn is_morphism<F: Field>(m: &Representation<F>, n: &Representation<F>, f: &Morphism<F>) -> bool {
    m.pres.arrows.iter().enumerate().all(|(a, ar)| n.mats[a].mul(&f[ar.source]) == f[ar.target].mul(&m.mats[a]))
}

pub fn compose<F: Field>(g: &Morphism<F>, f: &Morphism<F>) -> Morphism<F> {
    g.iter().zip(f).map(|(x, y)| x.mul(y)).collect()
}

/// Kernel of `f: m → n` with its inclusion into `m`.
pub fn kernel<F: Field>(m: &Representation<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>) {
    let incl: Morphism<F> = f.iter().map(|x| x.nullspace()).collect();
    let dims: Vec<usize> = incl.iter().map(|k| k.cols()).collect();
    let mats = m
        .pres
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            let image = m.mats[a].mul(&incl[ar.source]);
            incl[ar.target].solve_matrix(&image).expect("kernel is a subrepresentation")
        })
        .collect();
    let k = Representation { pres: m.pres.clone(), field: m.field.clone(), dims, mats };
    (k, incl)
}

/// Cokernel of `f: m → n` with the projection from `n`.
pub fn cokernel<F: Field>(n: &Representation<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>) {
    let field = &n.field;
    let mut proj = Vec::with_capacity(f.len());
    let mut sect = Vec::with_capacity(f.len());
    for (v, fv) in f.iter().enumerate() {
        let d = n.dims[v];
        let image: Vec<Vec<F::Elem>> = {
            let piv = fv.rref().pivots;
            piv.iter().map(|&c| fv.column(c)).collect()
        };
        let comp = fv.column_space_complement();
        let s = Matrix::from_columns(
            field,
            d,
            &comp
                .iter()
                .map(|&i| (0..d).map(|r| if r == i { field.one() } else { field.zero() }).collect())
                .collect::<Vec<_>>(),
        );
        let basis = Matrix::hstack(&[&Matrix::from_columns(field, d, &image), &s]);
        let inv = basis.inverse().expect("image plus complement is a basis");
        proj.push(inv.submatrix(image.len(), comp.len(), 0, d));
        sect.push(s);
    }
    let dims: Vec<usize> = sect.iter().map(|s| s.cols()).collect();
    let mats =
        n.pres.arrows.iter().enumerate().map(|(a, ar)| proj[ar.target].mul(&n.mats[a]).mul(&sect[ar.source])).collect();
    let c = Representation { pres: n.pres.clone(), field: field.clone(), dims, mats };
    (c, proj)
}

/// Seeded random element of a Hom space.
pub fn random_combination<F: Field>(field: &F, space: &HomSpace<F>, rng: &mut ChaCha8Rng) -> Option<Morphism<F>> {
    let first = space.basis.first()?;
    let mut acc: Morphism<F> = first.iter().map(|m| Matrix::zeros(field, m.rows(), m.cols())).collect();
    for b in &space.basis {
        let c = field.from_i64(rng.gen_range(-50..50));
        for (x, y) in acc.iter_mut().zip(b) {
            *x = x.add(&y.scale(&c));
        }
    }
    Some(acc)
}

/// An explicit isomorphism, if one is found. Exhaustive over the basis and
/// seeded random combinations; meant for modules with local endomorphism
/// rings, where a random element is an isomorphism with high probability.
pub fn find_isomorphism<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Option<Morphism<F>> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(m.dims.iter().map(|_| Matrix::zeros(&m.field, 0, 0)).collect());
    }
    let space = hom_space(m, n);
    let invertible = |f: &Morphism<F>| f.iter().all(|x| x.is_invertible());
    if let Some(f) = space.basis.iter().find(|f| invertible(f)) {
        return Some(f.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150u64.wrapping_add(m.total_dim() as u64));
    (0..24).find_map(|_| random_combination(&m.field, &space, &mut rng).filter(|f| invertible(f)))
}

/// Size parameter of a band module: finite, Prüfer (`+∞`) or adic (`−∞`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BandSize {
    Finite(usize),
    PlusInf,
    MinusInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Flavor {
    DirectSum,
    Product,
}

/// Symbolic name of an indecomposable pure-injective module. Band parameters
/// are small nonzero integers read in the working field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModuleDescriptor {
    StringFinite(Arc),
    StringInfinite(Arc, Flavor),
    Band { lambda: i64, size: BandSize },
    Generic,
}

impl ModuleDescriptor {
    pub fn arc(&self) -> Arc {
        match self {
            ModuleDescriptor::StringFinite(a) | ModuleDescriptor::StringInfinite(a, _) => *a,
            _ => Arc::Band,
        }
    }
    pub fn is_band(&self) -> bool {
        matches!(self, ModuleDescriptor::Band { .. })
    }
    pub fn is_finite_dimensional(&self) -> bool {
        matches!(self, ModuleDescriptor::StringFinite(_) | ModuleDescriptor::Band { size: BandSize::Finite(_), .. })
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::StringFinite(a) => write!(f, "M({a})"),
            ModuleDescriptor::StringInfinite(a, Flavor::DirectSum) => write!(f, "M+({a})"),
            ModuleDescriptor::StringInfinite(a, Flavor::Product) => write!(f, "MΠ({a})"),
            ModuleDescriptor::Band { lambda, size } => match size {
                BandSize::Finite(n) => write!(f, "M({lambda},{n})"),
                BandSize::PlusInf => write!(f, "M({lambda},+inf)"),
                BandSize::MinusInf => write!(f, "M({lambda},-inf)"),
            },
            ModuleDescriptor::Generic => write!(f, "G"),
        }
    }
}

/// Descriptor of the module of a word read in `model`. Expanding ℕ-strings
/// get the product flavour, contracting ones the direct sum.
pub fn descriptor_of_word(model: &Model, word: &Word) -> Result<ModuleDescriptor> {
    match word {
        Word::Finite { .. } => Ok(ModuleDescriptor::StringFinite(model.arc_of_string(word)?)),
        Word::NString { .. } => {
            let flavor = match classify_asymptotic(&model.pres, word)? {
                Asymptotics::Expanding => Flavor::Product,
                Asymptotics::Contracting => Flavor::DirectSum,
            };
            Ok(ModuleDescriptor::StringInfinite(model.arc_of_string(word)?, flavor))
        }
        Word::ZPeriodic { .. } => Ok(ModuleDescriptor::Generic),
    }
}

/// Descriptor of the module attached to an arc (not in the triangulation).
pub fn descriptor_of_arc(model: &Model, arc: &Arc) -> Result<ModuleDescriptor> {
    match arc {
        Arc::Band => Ok(ModuleDescriptor::Generic),
        _ => descriptor_of_word(model, &model.word_of(arc)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::surface::parse_triangulation;

    fn kronecker() -> Model {
        let t = parse_triangulation(
            r#"{"p":1,"q":1,"arcs":[{"type":"bridging","outer":0,"inner":0},{"type":"bridging","outer":0,"inner":1}]}"#,
        )
        .unwrap();
        Model::new(t)
    }

    #[test]
    fn simples_and_projectives() {
        let m = kronecker();
        let f = Fp::default();
        let s0 = Representation::simple(m.pres.clone(), f, 0);
        let s1 = Representation::simple(m.pres.clone(), f, 1);
        assert_eq!(hom_dim(&s0, &s0), 1);
        assert_eq!(hom_dim(&s0, &s1), 0);
        let src = m.pres.arrows[0].source;
        let p = projective_of_vertex(&m.pres, &f, src).unwrap();
        assert_eq!(p.dims[src], 1);
        assert_eq!(p.dims[1 - src], 2);
        assert_eq!(hom_dim(&p, &p), 1);
        let reg = regular(&m.pres, &f).unwrap();
        assert_eq!(reg.total_dim(), enumerate_path_basis(&m.pres).unwrap().len());
    }

    #[test]
    fn string_module_of_an_arrow() {
        let m = kronecker();
        let f = Fp::default();
        let w = Word::finite(m.pres.arrows[0].source, vec![Letter::Direct(0)]);
        let r = string_module(&m.pres, &f, &w).unwrap();
        assert_eq!(r.dims, vec![1, 1]);
        assert_eq!(r.mats[0].to_strings(), vec![vec!["1"]]);
        assert_eq!(r.mats[1].to_strings(), vec![vec!["0"]]);
        let inv = string_module(&m.pres, &f, &w.inverse(&m.pres)).unwrap();
        assert!(find_isomorphism(&r, &inv).is_some());
    }

    #[test]
    fn band_modules_scale_and_differ() {
        let m = kronecker();
        let f = Fp::default();
        let b1 = band_module_of(&m, &f, &1, 1).unwrap();
        assert_eq!(b1.dims, vec![1, 1]);
        let b3 = band_module_of(&m, &f, &2, 3).unwrap();
        assert_eq!(b3.dims, vec![3, 3]);
        assert!(b3.satisfies_relations());
        let b2 = band_module_of(&m, &f, &2, 1).unwrap();
        assert_eq!(hom_dim(&b1, &b1), 1);
        assert_eq!(hom_dim(&b1, &b2), 0);
        assert!(matches!(band_module_of(&m, &f, &0, 1), Err(Error::ZeroBandParameter)));
    }

    #[test]
    fn injective_duality() {
        let m = kronecker();
        let f = Fp::default();
        for i in 0..2 {
            let inj = injective_of_vertex(&m.pres, &f, i).unwrap();
            for j in 0..2 {
                let s = Representation::simple(m.pres.clone(), f, j);
                assert_eq!(hom_dim(&s, &inj), usize::from(i == j));
            }
        }
    }
}
