//! The universal cosovereign Hopf algebra `H(F)`: generators `u_{ij}`,
//! `v_{ij}` and relations `u ᵗv = ᵗv u = I = v F ᵗu F⁻¹ = F ᵗu F⁻¹ v`,
//! with comultiplication, counit and antipode on generators.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{self, Rational, RationalMatrix};
use crate::fpquot::{Certification, GradedQuotient, Grading, Presentation};
use crate::freealg::{AlgebraHom, Block, FreeElement, GeneratorSet, HomImage, TensorElement, Word};

/// An invertible `t × t` rational matrix with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrix {
    f: RationalMatrix,
    f_inv: RationalMatrix,
}

impl FMatrix {
    pub fn new(f: RationalMatrix) -> Result<Self> {
        if f.nrows() == 0 {
            return Err(Error::Precondition("F must be at least 1x1".into()));
        }
        let f_inv = exactlin::inverse(&f)?;
        Ok(FMatrix { f, f_inv })
    }

    pub fn identity(t: usize) -> Result<Self> {
        Self::new(RationalMatrix::identity(t))
    }

    pub fn diag(entries: &[Rational]) -> Result<Self> {
        let t = entries.len();
        let triplets = entries.iter().enumerate().map(|(i, x)| (i, i, x.clone())).collect();
        Self::new(RationalMatrix::from_triplets(t, t, triplets)?)
    }

    /// Upper-triangular unipotent: ones on the diagonal and superdiagonal.
    pub fn jordan(t: usize) -> Result<Self> {
        let mut triplets = Vec::new();
        for i in 0..t {
            triplets.push((i, i, Rational::one()));
            if i + 1 < t {
                triplets.push((i, i + 1, Rational::one()));
            }
        }
        Self::new(RationalMatrix::from_triplets(t, t, triplets)?)
    }

    /// Random invertible matrix with entries `p/q`, `|p| ≤ 3`, `1 ≤ q ≤ 3`.
    pub fn random<R: Rng>(t: usize, rng: &mut R) -> Self {
        loop {
            let rows: Vec<Vec<Rational>> = (0..t)
                .map(|_| (0..t).map(|_| Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
                .collect();
            if let Ok(f) = Self::new(RationalMatrix::from_dense(&rows).unwrap()) {
                return f;
            }
        }
    }

    /// JSON `t × t` array of exact rational strings, e.g. `[["1","0"],["0","2"]]`.
    pub fn from_json(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let t = rows.len();
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::Parse("F must be a square array".into()));
        }
        Self::new(RationalMatrix::from_dense(&rows)?)
    }

    pub fn t(&self) -> usize {
        self.f.nrows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.f
    }

    pub fn inverse(&self) -> &RationalMatrix {
        &self.f_inv
    }

    pub fn is_diagonal(&self) -> bool {
        self.f.rows().iter().enumerate().all(|(i, r)| r.iter().all(|(c, _)| c == i))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.f.to_dense().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().iter().map(|r| format!("[{}]", r.join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationFamily {
    /// `u ᵗv − I`
    UVt,
    /// `ᵗv u − I`
    VtU,
    /// `v F ᵗu F⁻¹ − I`
    VFUtFinv,
    /// `F ᵗu F⁻¹ v − I`
    FUtFinvV,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 4] =
        [RelationFamily::UVt, RelationFamily::VtU, RelationFamily::VFUtFinv, RelationFamily::FUtFinvV];

    pub fn label(self) -> &'static str {
        match self {
            RelationFamily::UVt => "u*vT-I",
            RelationFamily::VtU => "vT*u-I",
            RelationFamily::VFUtFinv => "v*F*uT*Finv-I",
            RelationFamily::FUtFinvV => "F*uT*Finv*v-I",
        }
    }
}

/// One entry `(i, j)` of one relation matrix.
#[derive(Clone, Debug)]
pub struct RelationEntry {
    pub family: RelationFamily,
    pub i: usize,
    pub j: usize,
    pub element: FreeElement,
}

impl RelationEntry {
    pub fn label(&self) -> String {
        format!("({})[{},{}]", self.family.label(), self.i, self.j)
    }
}

/// Square matrix of free-algebra elements.
type ElemMatrix = Vec<Vec<FreeElement>>;

fn elem_mul(a: &ElemMatrix, b: &ElemMatrix) -> ElemMatrix {
    let t = a.len();
    (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    let mut acc = FreeElement::zero(a[0][0].algebra());
                    for k in 0..t {
                        acc.add_scaled(&Rational::one(), &(&a[i][k] * &b[k][j])).unwrap();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn elem_transpose(a: &ElemMatrix) -> ElemMatrix {
    let t = a.len();
    (0..t).map(|i| (0..t).map(|j| a[j][i].clone()).collect()).collect()
}

fn scalar_matrix(g: &Arc<GeneratorSet>, m: &RationalMatrix) -> ElemMatrix {
    m.to_dense().into_iter().map(|r| r.into_iter().map(|x| FreeElement::scalar(g, x)).collect()).collect()
}

/// A Laurent polynomial in one variable `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, Rational>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(exp, c);
        }
        Laurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.0
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        let e = self.0.entry(exp).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&exp);
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(e, c)| format!("{c}*z^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H(F)` as a presentation on `2t²` generators with its structure maps.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    f: FMatrix,
    algebra: Arc<GeneratorSet>,
    presentation: Arc<Presentation>,
    entries: Vec<RelationEntry>,
    delta: AlgebraHom,
    antipode: AlgebraHom,
    quotients: Arc<QuotientCache>,
}

/// Truncated quotients of one presentation, keyed by `d`.
#[derive(Default)]
struct QuotientCache {
    by_d: Mutex<BTreeMap<usize, Arc<GradedQuotient>>>,
    dir: Mutex<Option<PathBuf>>,
}

impl fmt::Debug for QuotientCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<usize> = self.by_d.lock().unwrap().keys().copied().collect();
        f.debug_struct("QuotientCache").field("d", &ds).finish()
    }
}

pub fn build_hf(f: &FMatrix) -> Result<HopfPresentation> {
    HopfPresentation::new(f)
}

impl HopfPresentation {
    pub fn new(f: &FMatrix) -> Result<Self> {
        let t = f.t();
        let g = GeneratorSet::with_blocks(
            &format!("H(F) t={t}"),
            vec![Block { symbol: "u".into(), rows: t, cols: t }, Block { symbol: "v".into(), rows: t, cols: t }],
        )?;
        let gen_matrix = |block: usize| -> ElemMatrix {
            (1..=t).map(|i| (1..=t).map(|j| FreeElement::generator(&g, g.letter_in(block, i, j))).collect()).collect()
        };
        let u = gen_matrix(0);
        let v = gen_matrix(1);
        let fm = scalar_matrix(&g, f.matrix());
        let finv = scalar_matrix(&g, f.inverse());
        let ut = elem_transpose(&u);
        let vt = elem_transpose(&v);
        let products = [
            (RelationFamily::UVt, elem_mul(&u, &vt)),
            (RelationFamily::VtU, elem_mul(&vt, &u)),
            (RelationFamily::VFUtFinv, elem_mul(&elem_mul(&elem_mul(&v, &fm), &ut), &finv)),
            (RelationFamily::FUtFinvV, elem_mul(&elem_mul(&elem_mul(&fm, &ut), &finv), &v)),
        ];
        let mut entries = Vec::with_capacity(4 * t * t);
        for (family, m) in products {
            for i in 0..t {
                for j in 0..t {
                    let mut e = m[i][j].clone();
                    if i == j {
                        e.add_term(Word::empty(), &-Rational::one());
                    }
                    entries.push(RelationEntry { family, i: i + 1, j: j + 1, element: e });
                }
            }
        }

        let ungraded = Presentation::new(&g, entries.iter().map(|e| e.element.clone()).collect())?;
        let presentation = Arc::new(Self::finest_grading(&g, t, ungraded)?);

        let delta_images = (0..2)
            .flat_map(|block| (1..=t).flat_map(move |i| (1..=t).map(move |j| (block, i, j))))
            .map(|(block, i, j)| {
                let mut img = TensorElement::zero(&g, &g);
                for k in 1..=t {
                    img.add_term(Word::letter(g.letter_in(block, i, k)), Word::letter(g.letter_in(block, k, j)), &Rational::one());
                }
                HomImage::Tensor(img)
            })
            .collect();
        let delta = AlgebraHom::new(&g, delta_images)?;

        // S(u) = ᵗv, S(v) = F ᵗu F⁻¹.
        let s_v = elem_mul(&elem_mul(&fm, &ut), &finv);
        let mut s_images = Vec::with_capacity(2 * t * t);
        for i in 0..t {
            for j in 0..t {
                s_images.push(HomImage::Free(v[j][i].clone()));
            }
        }
        for row in s_v.iter() {
            for x in row {
                s_images.push(HomImage::Free(x.clone()));
            }
        }
        let antipode = AlgebraHom::new(&g, s_images)?;

        let h = HopfPresentation {
            f: f.clone(),
            algebra: g,
            presentation,
            entries,
            delta,
            antipode,
            quotients: Arc::default(),
        };
        for e in &h.entries {
            if !h.grading_specialize(&e.element).is_zero() {
                return Err(Error::Internal(format!("grading specialization does not kill {}", e.label())));
            }
        }
        Ok(h)
    }

    /// `u ↦ +1, v ↦ −1`, refined by torus weights `u_{ab} ↦ α_a − β_b`,
    /// `v_{ab} ↦ β_b − α_a` whenever all relations are homogeneous for them
    /// (e.g. diagonal `F`).
    fn finest_grading(g: &Arc<GeneratorSet>, t: usize, p: Presentation) -> Result<Presentation> {
        let weights = |torus: bool| -> Vec<Vec<i32>> {
            (0..g.len() as u16)
                .map(|l| {
                    let (block, a, b) = g.describe(l);
                    let sign = if block == 0 { 1 } else { -1 };
                    let mut w = vec![sign];
                    if torus {
                        let mut tw = vec![0; 2 * t];
                        tw[a - 1] += sign;
                        tw[t + b - 1] -= sign;
                        w.extend(tw);
                    }
                    w
                })
                .collect()
        };
        match p.clone().with_grading(Grading::new(weights(true))?) {
            Ok(graded) => Ok(graded),
            Err(Error::Inhomogeneous(_)) => p.with_grading(Grading::new(weights(false))?),
            Err(e) => Err(e),
        }
    }

    pub fn t(&self) -> usize {
        self.f.t()
    }

    /// Persist truncated-quotient components under `dir` from now on.
    pub fn set_cache_dir(&self, dir: impl AsRef<Path>) {
        *self.quotients.dir.lock().unwrap() = Some(dir.as_ref().to_path_buf());
    }

    /// The shared truncated quotient at `d`; built lazily, component by component.
    pub fn quotient(&self, d: usize) -> Result<Arc<GradedQuotient>> {
        let mut by_d = self.quotients.by_d.lock().unwrap();
        if let Some(q) = by_d.get(&d) {
            return Ok(q.clone());
        }
        let mut q = GradedQuotient::new(&self.presentation, d)?;
        if let Some(dir) = self.quotients.dir.lock().unwrap().as_ref() {
            q = q.with_cache_dir(dir);
        }
        let q = Arc::new(q);
        by_d.insert(d, q.clone());
        Ok(q)
    }

    pub fn f(&self) -> &FMatrix {
        &self.f
    }

    /// The free cover `K⟨u_{ij}, v_{ij}⟩`.
    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    /// All `4t²` relation entries (the presentation keeps distinct ones only).
    pub fn relation_entries(&self) -> &[RelationEntry] {
        &self.entries
    }

    pub fn u(&self, i: usize, j: usize) -> u16 {
        self.algebra.letter_in(0, i, j)
    }

    pub fn v(&self, i: usize, j: usize) -> u16 {
        self.algebra.letter_in(1, i, j)
    }

    pub fn is_u(&self, l: u16) -> bool {
        (l as usize) < self.t() * self.t()
    }

    pub fn delta(&self, x: &FreeElement) -> Result<TensorElement> {
        Ok(self.delta.apply(x)?.into_tensor().unwrap())
    }

    pub fn delta_word(&self, w: &Word) -> TensorElement {
        self.delta.apply_word(w).unwrap().into_tensor().unwrap()
    }

    fn letter_counit(&self, l: u16) -> bool {
        let (_, i, j) = self.algebra.describe(l);
        i == j
    }

    pub fn counit_word(&self, w: &Word) -> Rational {
        if w.letters().iter().all(|&l| self.letter_counit(l)) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    pub fn counit(&self, x: &FreeElement) -> Rational {
        x.terms().iter().filter(|(w, _)| self.counit_word(w).is_one()).map(|(_, c)| c.clone()).sum()
    }

    /// Anti-multiplicative: `S(w₁w₂) = S(w₂)S(w₁)`.
    pub fn antipode(&self, x: &FreeElement) -> Result<FreeElement> {
        Ok(self.antipode.apply_reversed(x)?.into_free().unwrap())
    }

    pub fn antipode_word(&self, w: &Word) -> FreeElement {
        self.antipode.apply_word_reversed(w).unwrap().into_free().unwrap()
    }

    /// `u_{ij} ↦ δ_{ij} z`, `v_{ij} ↦ δ_{ij} z⁻¹`.
    pub fn grading_specialize(&self, x: &FreeElement) -> Laurent {
        let mut out = Laurent::zero();
        for (w, c) in x.terms() {
            if let Some(e) = self.specialize_word(w) {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Exponent of `z` for a word, `None` when it specializes to zero.
    pub fn specialize_word(&self, w: &Word) -> Option<i64> {
        let mut e = 0i64;
        for &l in w.letters() {
            if !self.letter_counit(l) {
                return None;
            }
            e += if self.is_u(l) { 1 } else { -1 };
        }
        Some(e)
    }
}

pub fn delta(h: &HopfPresentation, x: &FreeElement) -> Result<TensorElement> {
    h.delta(x)
}

pub fn antipode(h: &HopfPresentation, x: &FreeElement) -> Result<FreeElement> {
    h.antipode(x)
}

pub fn grading_specialize(h: &HopfPresentation, x: &FreeElement) -> Laurent {
    h.grading_specialize(x)
}

/// Per-relation outcome of [`check_hopf_compat`].
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `ε(r) = 0`, exact.
    pub counit_zero: bool,
    /// `Δ(r) ∈ I⊗F + F⊗I`, via the truncated oracle on each leg.
    pub delta: Certification,
    /// `S(r) ∈ I_{≤d}`.
    pub antipode: Certification,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfCompatReport {
    pub t: usize,
    pub d: usize,
    pub relations: Vec<RelationCheck>,
    pub coassociative_on_generators: bool,
    pub counital_on_generators: bool,
}

impl HopfCompatReport {
    /// Any exact identity failing is a genuine error.
    pub fn exact_ok(&self) -> bool {
        self.coassociative_on_generators && self.counital_on_generators && self.relations.iter().all(|r| r.counit_zero)
    }

    pub fn all_certified(&self) -> bool {
        self.relations.iter().all(|r| r.delta.is_certified() && r.antipode.is_certified())
    }

    pub fn certified_count(&self) -> usize {
        self.relations
            .iter()
            .map(|r| r.counit_zero as usize + r.delta.is_certified() as usize + r.antipode.is_certified() as usize)
            .sum()
    }
}

type Triple = BTreeMap<(Word, Word, Word), Rational>;

fn add_triple(acc: &mut Triple, key: (Word, Word, Word), c: &Rational) {
    let e = acc.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// `(Δ⊗id)Δ(x) = (id⊗Δ)Δ(x)` in the free cover.
pub fn coassociative_on(h: &HopfPresentation, x: &FreeElement) -> bool {
    let d = h.delta(x).unwrap();
    let mut lhs = Triple::new();
    let mut rhs = Triple::new();
    for ((a, b), c) in d.terms() {
        for ((a1, a2), c1) in h.delta_word(a).terms() {
            add_triple(&mut lhs, (a1.clone(), a2.clone(), b.clone()), &(c * c1));
        }
        for ((b1, b2), c2) in h.delta_word(b).terms() {
            add_triple(&mut rhs, (a.clone(), b1.clone(), b2.clone()), &(c * c2));
        }
    }
    lhs == rhs
}

/// `(ε⊗id)Δ(x) = x = (id⊗ε)Δ(x)` in the free cover.
pub fn counital_on(h: &HopfPresentation, x: &FreeElement) -> bool {
    let d = h.delta(x).unwrap();
    let mut left = FreeElement::zero(h.algebra());
    let mut right = FreeElement::zero(h.algebra());
    for ((a, b), c) in d.terms() {
        left.add_term(b.clone(), &(c * &h.counit_word(a)));
        right.add_term(a.clone(), &(c * &h.counit_word(b)));
    }
    &left == x && &right == x
}

/// Checks the Hopf structure against the relations at truncation `d ≥ 4`.
pub fn check_hopf_compat(h: &HopfPresentation, d: usize) -> Result<HopfCompatReport> {
    if d < 4 {
        return Err(Error::TruncationTooSmall { needed: 4, got: d });
    }
    let q = h.quotient(d)?;
    let checks: Vec<Result<RelationCheck>> = crate::par::map(h.relation_entries(), |entry| {
        let r = &entry.element;
        let counit_zero = h.counit(r).is_zero();
        let antipode = q.is_zero_mod(&h.antipode(r)?)?;
        // (π⊗π)Δ(r) = 0 certifies Δ(r) ∈ I⊗F + F⊗I.
        let mut reduced: BTreeMap<(Word, Word), Rational> = BTreeMap::new();
        for ((a, b), c) in h.delta(r)?.terms() {
            let na = q.normal_form(&FreeElement::word(h.algebra(), a.clone()))?;
            let nb = q.normal_form(&FreeElement::word(h.algebra(), b.clone()))?;
            for (wa, xa) in na.terms() {
                for (wb, xb) in nb.terms() {
                    let e = reduced.entry((wa.clone(), wb.clone())).or_default();
                    *e += &(&(c * xa) * xb);
                }
            }
        }
        let delta = if reduced.values().all(Rational::is_zero) {
            Certification::CertifiedZero
        } else {
            Certification::NotCertified
        };
        Ok(RelationCheck { relation: entry.label(), counit_zero, delta, antipode })
    });
    let relations = checks.into_iter().collect::<Result<Vec<_>>>()?;
    let gens: Vec<FreeElement> = (0..h.algebra().len() as u16).map(|l| FreeElement::generator(h.algebra(), l)).collect();
    Ok(HopfCompatReport {
        t: h.t(),
        d,
        relations,
        coassociative_on_generators: gens.iter().all(|g| coassociative_on(h, g)),
        counital_on_generators: gens.iter().all(|g| counital_on(h, g)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn t1_relations_collapse() {
        let h = build_hf(&FMatrix::identity(1).unwrap()).unwrap();
        let rels: Vec<String> = h.presentation().relations().iter().map(ToString::to_string).collect();
        assert_eq!(rels, ["-1 + u*v", "-1 + v*u"]);
        assert_eq!(h.relation_entries().len(), 4);
    }

    #[test]
    fn t2_identity_relations() {
        let h = build_hf(&FMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(h.presentation().relations().len(), 16);
        assert_eq!(h.relation_entries()[0].element.to_string(), "-1 + u11*v11 + u12*v12");
        // Diagonal F admits the torus refinement.
        assert_eq!(h.presentation().grading().unwrap().dim(), 5);
    }

    #[test]
    fn diag_f_has_half_coefficients() {
        let f = FMatrix::diag(&[q(1, 1), q(2, 1)]).unwrap();
        let h = build_hf(&f).unwrap();
        let e = h.relation_entries().iter().find(|e| e.family == RelationFamily::VFUtFinv && e.i == 1 && e.j == 2).unwrap();
        // Σ_k v_{1k} F_kk u_{2k} / F_22 = (1/2) v11 u21 + v12 u22
        assert_eq!(e.element.to_string(), "1/2*v11*u21 + v12*u22");
    }

    #[test]
    fn jordan_f_uses_coarse_grading() {
        let h = build_hf(&FMatrix::jordan(2).unwrap()).unwrap();
        assert_eq!(h.presentation().grading().unwrap().dim(), 1);
    }

    #[test]
    fn singular_f_rejected() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(FMatrix::new(m), Err(Error::Singular));
    }

    #[test]
    fn delta_examples() {
        let h = build_hf(&FMatrix::identity(2).unwrap()).unwrap();
        let g = h.algebra();
        let d = h.delta(&FreeElement::generator(g, h.u(1, 1))).unwrap();
        assert_eq!(d.to_string(), "1*(u11 ⊗ u11) + 1*(u12 ⊗ u21)");
        assert_eq!(h.delta(&FreeElement::one(g)).unwrap(), TensorElement::one(g, g));

        let h1 = build_hf(&FMatrix::identity(1).unwrap()).unwrap();
        let uv = FreeElement::word(h1.algebra(), Word::from_letters(&[h1.u(1, 1), h1.v(1, 1)]));
        assert_eq!(h1.delta(&uv).unwrap().to_string(), "1*(u*v ⊗ u*v)");
    }

    #[test]
    fn antipode_examples() {
        let h = build_hf(&FMatrix::identity(2).unwrap()).unwrap();
        let g = h.algebra();
        let s = h.antipode(&FreeElement::generator(g, h.u(1, 2))).unwrap();
        assert_eq!(s, FreeElement::generator(g, h.v(2, 1)));
        let w = FreeElement::word(g, Word::from_letters(&[h.u(1, 1), h.u(1, 2)]));
        assert_eq!(h.antipode(&w).unwrap().to_string(), "v21*v11");

        let hd = build_hf(&FMatrix::diag(&[q(1, 1), q(2, 1)]).unwrap()).unwrap();
        let s = hd.antipode(&FreeElement::generator(hd.algebra(), hd.v(1, 1))).unwrap();
        assert_eq!(s, FreeElement::generator(hd.algebra(), hd.u(1, 1)));
        let s = hd.antipode(&FreeElement::generator(hd.algebra(), hd.v(1, 2))).unwrap();
        assert_eq!(s.to_string(), "1/2*u21");
    }

    #[test]
    fn specialization_examples() {
        let h = build_hf(&FMatrix::identity(2).unwrap()).unwrap();
        let g = h.algebra();
        assert_eq!(h.grading_specialize(&FreeElement::generator(g, h.u(1, 1))), Laurent::monomial(1, q(1, 1)));
        assert_eq!(h.grading_specialize(&FreeElement::generator(g, h.v(2, 2))), Laurent::monomial(-1, q(1, 1)));
        assert!(h.grading_specialize(&FreeElement::generator(g, h.u(1, 2))).is_zero());
        assert!(h.grading_specialize(&h.relation_entries()[0].element).is_zero());
        let h1 = build_hf(&FMatrix::identity(1).unwrap()).unwrap();
        let w = FreeElement::word(h1.algebra(), Word::from_letters(&[h1.u(1, 1), h1.v(1, 1), h1.u(1, 1)]));
        assert_eq!(h1.grading_specialize(&w), Laurent::monomial(1, q(1, 1)));
    }

    #[test]
    fn counit_kills_relations() {
        for f in [FMatrix::identity(2).unwrap(), FMatrix::jordan(3).unwrap()] {
            let h = build_hf(&f).unwrap();
            assert!(h.relation_entries().iter().all(|e| h.counit(&e.element).is_zero()));
        }
    }

    #[test]
    fn hopf_compat_t1() {
        let h = build_hf(&FMatrix::identity(1).unwrap()).unwrap();
        let rep = check_hopf_compat(&h, 4).unwrap();
        assert!(rep.exact_ok() && rep.all_certified());
        assert!(check_hopf_compat(&h, 3).is_err());
    }

    #[test]
    fn hopf_compat_t2_identity() {
        let h = build_hf(&FMatrix::identity(2).unwrap()).unwrap();
        let rep = check_hopf_compat(&h, 4).unwrap();
        assert_eq!(rep.relations.len(), 16);
        assert_eq!(rep.certified_count(), 48);
        assert!(rep.exact_ok());
    }

    #[test]
    fn f_from_json() {
        let f = FMatrix::from_json(r#"[["1","0"],["0","2"]]"#).unwrap();
        assert!(f.is_diagonal());
        assert_eq!(f.to_string(), "[[1,0],[0,2]]");
        assert!(FMatrix::from_json(r#"[["1","1"],["1","1"]]"#).is_err());
        assert!(FMatrix::from_json(r#"[["1","0"]]"#).is_err());
        assert!(FMatrix::from_json(r#"[["a"]]"#).is_err());
    }
}
