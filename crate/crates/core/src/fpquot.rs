//! Finitely presented algebras `F/I` studied through filtration truncation.
//!
//! `I_{≤d}` is the span of all `a·r·b` with `deg a + deg r + deg b ≤ d`. It is
//! a subspace of `I ∩ F_{≤d}`, possibly a proper one, so the membership test
//! here is sound but not complete: [`Certification::CertifiedZero`] proves an
//! element vanishes in `F/I`, while [`Certification::NotCertified`] only says
//! no witness of degree `≤ d` exists.
//!
//! Columns are words of degree `≤ d` ordered from the largest word (degree,
//! then lexicographic) to the smallest, so the first-nonzero-column pivot of
//! a row is its leading word and normal forms rewrite large words into
//! combinations of smaller ones.
//!
//! When the presentation carries a grading for which every relation is
//! homogeneous, `I_{≤d}` splits into weight components and
//! [`GradedQuotient`] builds only the components that are actually queried.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Rational, SparseVec, Subspace};
use crate::freealg::{FreeElement, GeneratorSet, Letter, Word};

pub type Weight = Vec<i32>;

/// Integer weight vector for each generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    letter_weights: Vec<Weight>,
    lo: Weight,
    hi: Weight,
}

impl Grading {
    pub fn new(letter_weights: Vec<Weight>) -> Result<Self> {
        let dim = letter_weights.first().map_or(0, Vec::len);
        if letter_weights.iter().any(|w| w.len() != dim) {
            return Err(Error::Precondition("grading weights have unequal lengths".into()));
        }
        let lo = (0..dim).map(|c| letter_weights.iter().map(|w| w[c]).min().unwrap_or(0)).collect();
        let hi = (0..dim).map(|c| letter_weights.iter().map(|w| w[c]).max().unwrap_or(0)).collect();
        Ok(Grading { letter_weights, lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn letter_weight(&self, l: Letter) -> &Weight {
        &self.letter_weights[l as usize]
    }

    pub fn word_weight(&self, w: &Word) -> Weight {
        let mut acc = vec![0; self.dim()];
        for &l in w.letters() {
            for (a, x) in acc.iter_mut().zip(&self.letter_weights[l as usize]) {
                *a += x;
            }
        }
        acc
    }

    /// Weight of a homogeneous element; `None` if it mixes weights or is zero.
    pub fn element_weight(&self, x: &FreeElement) -> Option<Weight> {
        let mut it = x.terms().keys().map(|w| self.word_weight(w));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Whether `remaining` more letters can move `current` onto `target`.
    fn reachable(&self, current: &[i32], target: &[i32], remaining: usize) -> bool {
        let r = remaining as i64;
        (0..self.dim()).all(|c| {
            let need = target[c] as i64 - current[c] as i64;
            need >= r * self.lo[c] as i64 && need <= r * self.hi[c] as i64
        })
    }
}

/// Generators plus relations `r = 0`, optionally graded.
#[derive(Clone, Debug)]
pub struct Presentation {
    generators: Arc<GeneratorSet>,
    relations: Vec<FreeElement>,
    grading: Option<Grading>,
}

impl Presentation {
    /// Zero relations are rejected; repeated relations are kept once.
    pub fn new(generators: &Arc<GeneratorSet>, relations: Vec<FreeElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (i, r) in relations.into_iter().enumerate() {
            if r.is_zero() {
                return Err(Error::Precondition(format!("relation {i} is zero")));
            }
            if r.algebra() != generators {
                return Err(Error::AlgebraMismatch { left: generators.name().into(), right: r.algebra().name().into() });
            }
            let key: Vec<(Word, Rational)> = r.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
            if seen.insert(key) {
                kept.push(r);
            }
        }
        Ok(Presentation { generators: generators.clone(), relations: kept, grading: None })
    }

    /// Attaches a grading; every relation must be homogeneous for it.
    pub fn with_grading(mut self, grading: Grading) -> Result<Self> {
        if grading.letter_weights.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), found: grading.letter_weights.len() });
        }
        for (i, r) in self.relations.iter().enumerate() {
            if grading.element_weight(r).is_none() {
                return Err(Error::Inhomogeneous(i));
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.generators
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(FreeElement::degree).max().unwrap_or(0)
    }

    /// Content hash of generators, relations and grading.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:?}|", self.generators);
        for r in &self.relations {
            for (w, c) in r.terms() {
                let _ = write!(s, "{:?}:{};", w, c);
            }
            s.push('|');
        }
        let _ = write!(s, "{:?}", self.grading);
        hex(&Sha256::digest(s.as_bytes()))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Outcome of the sound membership oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certification {
    CertifiedZero,
    NotCertified,
}

impl Certification {
    pub fn is_certified(self) -> bool {
        self == Certification::CertifiedZero
    }
}

/// Words of degree `deg` in lexicographic order, restricted to a weight.
fn words_of_degree(alphabet: usize, deg: usize, filter: Option<(&Grading, &Weight)>) -> Vec<Word> {
    let Some((g, target)) = filter else {
        let count = alphabet.pow(deg as u32);
        return (0..count).map(|r| Word::from_lex_rank(r, deg, alphabet)).collect();
    };
    let mut out = Vec::new();
    let mut letters: Vec<Letter> = Vec::with_capacity(deg);
    let mut weight = vec![0i32; g.dim()];
    fn rec(
        g: &Grading,
        alphabet: usize,
        deg: usize,
        target: &[i32],
        letters: &mut Vec<Letter>,
        weight: &mut Vec<i32>,
        out: &mut Vec<Word>,
    ) {
        if letters.len() == deg {
            if weight.as_slice() == target {
                out.push(Word::from_letters(letters));
            }
            return;
        }
        for l in 0..alphabet as Letter {
            let lw = g.letter_weight(l);
            for (a, x) in weight.iter_mut().zip(lw) {
                *a += x;
            }
            if g.reachable(weight, target, deg - letters.len() - 1) {
                letters.push(l);
                rec(g, alphabet, deg, target, letters, weight, out);
                letters.pop();
            }
            for (a, x) in weight.iter_mut().zip(lw) {
                *a -= x;
            }
        }
    }
    if g.reachable(&weight, target, deg) {
        rec(g, alphabet, deg, target, &mut letters, &mut weight, &mut out);
    }
    out
}

#[derive(Clone, Debug)]
struct WordColumns {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordColumns {
    fn new(alphabet: usize, d: usize, filter: Option<(&Grading, &Weight)>) -> Self {
        let mut words = Vec::new();
        for deg in (0..=d).rev() {
            let mut w = words_of_degree(alphabet, deg, filter);
            w.reverse();
            words.extend(w);
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordColumns { words, index }
    }

    fn vector(&self, x: &FreeElement) -> Option<SparseVec> {
        let mut e = Vec::with_capacity(x.terms().len());
        for (w, c) in x.terms() {
            e.push((*self.index.get(w)?, c.clone()));
        }
        Some(SparseVec::from_entries(e))
    }
}

/// `F_{≤d} / I_{≤d}`, or one weight component of it.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    presentation: Arc<Presentation>,
    d: usize,
    component: Option<Weight>,
    columns: WordColumns,
    echelon: Echelon,
    quotient_basis: Vec<Word>,
}

impl TruncatedQuotient {
    /// The whole truncated quotient (all weights).
    pub fn build(p: &Arc<Presentation>, d: usize) -> Result<Self> {
        Self::build_inner(p, d, None, None)
    }

    /// Only the words of the given weight; requires a graded presentation.
    pub fn build_component(p: &Arc<Presentation>, d: usize, weight: &Weight) -> Result<Self> {
        if p.grading.is_none() {
            return Err(Error::Precondition("presentation has no grading".into()));
        }
        Self::build_inner(p, d, Some(weight.clone()), None)
    }

    fn build_inner(p: &Arc<Presentation>, d: usize, component: Option<Weight>, echelon: Option<Echelon>) -> Result<Self> {
        let needed = p.max_relation_degree();
        if d < needed {
            return Err(Error::TruncationTooSmall { needed, got: d });
        }
        let alphabet = p.generators.len();
        let filter = component.as_ref().map(|w| (p.grading.as_ref().unwrap(), w));
        let columns = WordColumns::new(alphabet, d, filter);
        let echelon = match echelon {
            Some(e) if e.ncols() == columns.words.len() => e,
            Some(_) => return Err(Error::Internal("cached echelon does not match column layout".into())),
            None => Self::reduce_spanning_set(p, d, &component, &columns),
        };
        let mut quotient_basis: Vec<Word> =
            (0..columns.words.len()).filter(|&c| !echelon.is_pivot(c)).map(|c| columns.words[c].clone()).collect();
        quotient_basis.reverse();
        Ok(TruncatedQuotient { presentation: p.clone(), d, component, columns, echelon, quotient_basis })
    }

    fn reduce_spanning_set(p: &Presentation, d: usize, component: &Option<Weight>, columns: &WordColumns) -> Echelon {
        let alphabet = p.generators.len();
        // One task per (relation, multiplier degree).
        let mut tasks = Vec::new();
        for (ri, r) in p.relations.iter().enumerate() {
            let rdeg = r.degree().unwrap_or(0);
            let want = match (component, &p.grading) {
                (Some(w), Some(g)) => {
                    let rw = g.element_weight(r).expect("homogeneous relation");
                    Some(w.iter().zip(&rw).map(|(a, b)| a - b).collect::<Weight>())
                }
                _ => None,
            };
            for s in 0..=(d - rdeg) {
                tasks.push((ri, s, want.clone()));
            }
        }
        let mut rows: Vec<SparseVec> = crate::par::flat_map(&tasks, |(ri, s, want)| {
            let r = &p.relations[*ri];
            let filter = want.as_ref().map(|w| (p.grading.as_ref().unwrap(), w));
            let mut out = Vec::new();
            for c in words_of_degree(alphabet, *s, filter) {
                for split in 0..=*s {
                    let (a, b) = c.split_at(split);
                    let entries = r
                        .terms()
                        .iter()
                        .map(|(w, x)| {
                            let full = a.concat(w).concat(&b);
                            (columns.index[&full], x.clone())
                        })
                        .collect();
                    out.push(SparseVec::from_entries(entries));
                }
            }
            out
        });
        rows.retain(|r| !r.is_zero());
        rows.sort_by(|a, b| {
            (a.leading().unwrap().0, a.nnz()).cmp(&(b.leading().unwrap().0, b.nnz())).then_with(|| a.entries().cmp(b.entries()))
        });
        rows.dedup();
        let mut ech = Echelon::new(columns.words.len());
        for row in rows {
            ech.insert(row);
        }
        ech
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn component(&self) -> Option<&Weight> {
        self.component.as_ref()
    }

    /// Words of degree `≤ d` (in this component), largest first.
    pub fn column_words(&self) -> &[Word] {
        &self.columns.words
    }

    /// Complement basis: the non-pivot words, smallest first.
    pub fn quotient_basis(&self) -> &[Word] {
        &self.quotient_basis
    }

    pub fn ideal_dim(&self) -> usize {
        self.echelon.rank()
    }

    /// `I_{≤d}` in reduced row-echelon form over [`Self::column_words`].
    pub fn ideal_span(&self) -> Subspace {
        Subspace::from_echelon(&self.echelon)
    }

    fn vectorize(&self, x: &FreeElement) -> Result<SparseVec> {
        if x.algebra() != &self.presentation.generators {
            return Err(Error::AlgebraMismatch {
                left: self.presentation.generators.name().into(),
                right: x.algebra().name().into(),
            });
        }
        if let Some(deg) = x.degree() {
            if deg > self.d {
                return Err(Error::DegreeOverflow { degree: deg, limit: self.d });
            }
        }
        self.columns
            .vector(x)
            .ok_or_else(|| Error::Precondition("element has words outside this weight component".into()))
    }

    /// The representative of `x` supported on quotient-basis words.
    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement> {
        let v = self.echelon.reduce(&self.vectorize(x)?);
        Ok(FreeElement::from_terms(
            x.algebra(),
            v.iter().map(|(c, val)| (self.columns.words[c].clone(), val.clone())),
        ))
    }

    /// Normal form as a coordinate vector over [`Self::quotient_basis`].
    pub fn normal_form_coords(&self, x: &FreeElement) -> Result<Vec<Rational>> {
        let nf = self.normal_form(x)?;
        Ok(self.quotient_basis.iter().map(|w| nf.coefficient(w)).collect())
    }

    pub fn is_zero_mod(&self, x: &FreeElement) -> Result<Certification> {
        Ok(if self.echelon.contains(&self.vectorize(x)?) {
            Certification::CertifiedZero
        } else {
            Certification::NotCertified
        })
    }
}

/// Span of `{a·r·b : deg ≤ d}` over all words of degree `≤ d`.
pub fn ideal_component(p: &Arc<Presentation>, d: usize) -> Result<Subspace> {
    Ok(TruncatedQuotient::build(p, d)?.ideal_span())
}

pub fn quotient_basis(p: &Arc<Presentation>, d: usize) -> Result<Vec<Word>> {
    Ok(TruncatedQuotient::build(p, d)?.quotient_basis)
}

pub fn normal_form(q: &TruncatedQuotient, x: &FreeElement) -> Result<Vec<Rational>> {
    q.normal_form_coords(x)
}

pub fn is_zero_mod(q: &TruncatedQuotient, x: &FreeElement) -> Result<Certification> {
    q.is_zero_mod(x)
}

#[derive(Serialize, Deserialize)]
struct PersistedComponent {
    fingerprint: String,
    d: usize,
    component: Option<Weight>,
    echelon: Echelon,
}

type Cell = Arc<OnceLock<std::result::Result<Arc<TruncatedQuotient>, Error>>>;

/// Truncated quotient assembled lazily from weight components.
///
/// Components are built at most once; concurrent requests for the same
/// component wait on a single build while distinct components build in
/// parallel. An optional directory persists component bases between runs,
/// content-addressed by presentation fingerprint, `d` and weight.
pub struct GradedQuotient {
    presentation: Arc<Presentation>,
    d: usize,
    fingerprint: String,
    cells: Mutex<HashMap<Weight, Cell>>,
    cache_dir: Option<PathBuf>,
}

impl GradedQuotient {
    pub fn new(p: &Arc<Presentation>, d: usize) -> Result<Self> {
        let needed = p.max_relation_degree();
        if d < needed {
            return Err(Error::TruncationTooSmall { needed, got: d });
        }
        Ok(GradedQuotient {
            presentation: p.clone(),
            d,
            fingerprint: p.fingerprint(),
            cells: Mutex::new(HashMap::new()),
            cache_dir: None,
        })
    }

    pub fn with_cache_dir(mut self, dir: impl AsRef<Path>) -> Self {
        self.cache_dir = Some(dir.as_ref().to_path_buf());
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    fn weight_of(&self, w: &Word) -> Weight {
        match &self.presentation.grading {
            Some(g) => g.word_weight(w),
            None => Vec::new(),
        }
    }

    pub fn component(&self, weight: &Weight) -> Result<Arc<TruncatedQuotient>> {
        let cell = {
            let mut cells = self.cells.lock().unwrap();
            cells.entry(weight.clone()).or_default().clone()
        };
        cell.get_or_init(|| self.load_or_build(weight).map(Arc::new)).clone()
    }

    /// Builds the listed components, in parallel when enabled.
    pub fn prepare(&self, weights: &[Weight]) -> Result<()> {
        let mut uniq: Vec<Weight> = weights.to_vec();
        uniq.sort();
        uniq.dedup();
        for r in crate::par::map(&uniq, |w| self.component(w).map(|_| ())) {
            r?;
        }
        Ok(())
    }

    fn cache_path(&self, weight: &Weight) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let key = format!("{}|{}|{:?}", self.fingerprint, self.d, weight);
        Some(dir.join(format!("{}.json", hex(&Sha256::digest(key.as_bytes())))))
    }

    fn load_or_build(&self, weight: &Weight) -> Result<TruncatedQuotient> {
        let comp = self.presentation.grading.as_ref().map(|_| weight.clone());
        if let Some(path) = self.cache_path(weight) {
            if let Ok(bytes) = std::fs::read(&path) {
                if let Ok(pc) = serde_json::from_slice::<PersistedComponent>(&bytes) {
                    if pc.fingerprint == self.fingerprint && pc.d == self.d && pc.component == comp {
                        return TruncatedQuotient::build_inner(&self.presentation, self.d, comp, Some(pc.echelon));
                    }
                }
            }
            let q = TruncatedQuotient::build_inner(&self.presentation, self.d, comp.clone(), None)?;
            let pc = PersistedComponent { fingerprint: self.fingerprint.clone(), d: self.d, component: comp, echelon: q.echelon.clone() };
            let io = |e: std::io::Error| Error::Io(e.to_string());
            std::fs::create_dir_all(path.parent().unwrap()).map_err(io)?;
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            std::fs::write(&tmp, serde_json::to_vec(&pc).map_err(|e| Error::Io(e.to_string()))?).map_err(io)?;
            std::fs::rename(&tmp, &path).map_err(io)?;
            return Ok(q);
        }
        TruncatedQuotient::build_inner(&self.presentation, self.d, comp, None)
    }

    fn split(&self, x: &FreeElement) -> Result<Vec<(Weight, FreeElement)>> {
        if x.algebra() != &self.presentation.generators {
            return Err(Error::AlgebraMismatch {
                left: self.presentation.generators.name().into(),
                right: x.algebra().name().into(),
            });
        }
        if let Some(deg) = x.degree() {
            if deg > self.d {
                return Err(Error::DegreeOverflow { degree: deg, limit: self.d });
            }
        }
        let mut parts: HashMap<Weight, FreeElement> = HashMap::new();
        for (w, c) in x.terms() {
            parts
                .entry(self.weight_of(w))
                .or_insert_with(|| FreeElement::zero(x.algebra()))
                .add_term(w.clone(), c);
        }
        let mut v: Vec<_> = parts.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(v)
    }

    /// Weights of the components `x` touches.
    pub fn weights_of(&self, x: &FreeElement) -> Vec<Weight> {
        let mut v: Vec<Weight> = x.terms().keys().map(|w| self.weight_of(w)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement> {
        let mut out = FreeElement::zero(x.algebra());
        for (w, part) in self.split(x)? {
            out.add_scaled(&Rational::one(), &self.component(&w)?.normal_form(&part)?)?;
        }
        Ok(out)
    }

    pub fn is_zero_mod(&self, x: &FreeElement) -> Result<Certification> {
        for (w, part) in self.split(x)? {
            if !self.component(&w)?.is_zero_mod(&part)?.is_certified() {
                return Ok(Certification::NotCertified);
            }
        }
        Ok(Certification::CertifiedZero)
    }
}
