//! Free associative algebras on matrix-indexed generators, their tensor
//! products, and algebra morphisms given by generator images.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix, SparseVec};

pub type Letter = u16;

/// A rectangular family of generators `g_{ij}`, `1 ≤ i ≤ rows`, `1 ≤ j ≤ cols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub symbol: String,
    pub rows: usize,
    pub cols: usize,
}

/// Generators of a free algebra, grouped in blocks. Letters are numbered
/// block by block, row-major inside each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSet {
    name: String,
    blocks: Vec<Block>,
}

impl GeneratorSet {
    /// `A(rows, cols)` with generators named `symbol_{ij}`.
    pub fn matrix(symbol: &str, rows: usize, cols: usize) -> Result<Arc<Self>> {
        Self::with_blocks(
            &format!("A_{symbol}({rows},{cols})"),
            vec![Block { symbol: symbol.to_string(), rows, cols }],
        )
    }

    pub fn with_blocks(name: &str, blocks: Vec<Block>) -> Result<Arc<Self>> {
        if blocks.is_empty() || blocks.iter().any(|b| b.rows == 0 || b.cols == 0) {
            return Err(Error::Precondition("generator blocks need rows ≥ 1 and cols ≥ 1".into()));
        }
        let total: usize = blocks.iter().map(|b| b.rows * b.cols).sum();
        if total > Letter::MAX as usize {
            return Err(Error::Precondition(format!("{total} generators exceed the letter width")));
        }
        Ok(Arc::new(GeneratorSet { name: name.to_string(), blocks }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.rows * b.cols).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn block_offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().map(|b| b.rows * b.cols).sum()
    }

    /// Letter for `g_{ij}` in the given block, 1-based indices.
    pub fn letter_in(&self, block: usize, i: usize, j: usize) -> Letter {
        let b = &self.blocks[block];
        assert!((1..=b.rows).contains(&i) && (1..=b.cols).contains(&j), "generator index out of range");
        (self.block_offset(block) + (i - 1) * b.cols + (j - 1)) as Letter
    }

    /// Letter for `g_{ij}` in the first block.
    pub fn letter(&self, i: usize, j: usize) -> Letter {
        self.letter_in(0, i, j)
    }

    /// `(block, i, j)` with 1-based `i, j`.
    pub fn describe(&self, letter: Letter) -> (usize, usize, usize) {
        let mut l = letter as usize;
        for (k, b) in self.blocks.iter().enumerate() {
            if l < b.rows * b.cols {
                return (k, l / b.cols + 1, l % b.cols + 1);
            }
            l -= b.rows * b.cols;
        }
        panic!("letter {letter} out of range for {}", self.name);
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        let (k, i, j) = self.describe(letter);
        let b = &self.blocks[k];
        match (b.rows, b.cols) {
            (1, 1) => b.symbol.clone(),
            (_, 1) => format!("{}{}", b.symbol, i),
            (1, _) => format!("{}{}", b.symbol, j),
            (r, c) if r < 10 && c < 10 => format!("{}{}{}", b.symbol, i, j),
            _ => format!("{}_{{{},{}}}", b.symbol, i, j),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters().iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join("*")
    }
}

fn same_algebra(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch { left: a.name.clone(), right: b.name.clone() })
    }
}

/// A monomial: a finite sequence of letters. The empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(SmallVec<[Letter; 12]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word(smallvec::smallvec![l])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn split_at(&self, at: usize) -> (Word, Word) {
        (Word::from_letters(&self.0[..at]), Word::from_letters(&self.0[at..]))
    }

    /// Position of this word among the degree-`len` words over `alphabet`
    /// letters in lexicographic order.
    pub fn lex_rank(&self, alphabet: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * alphabet + l as usize)
    }

    pub fn from_lex_rank(mut rank: usize, degree: usize, alphabet: usize) -> Word {
        let mut letters: SmallVec<[Letter; 12]> = smallvec::smallvec![0; degree];
        for slot in letters.iter_mut().rev() {
            *slot = (rank % alphabet) as Letter;
            rank /= alphabet;
        }
        Word(letters)
    }

    /// Degree first, then lexicographic.
    pub fn deglex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All `alphabet^k` words of degree `k` in lexicographic order.
pub fn degree_basis(algebra: &GeneratorSet, k: usize) -> Vec<Word> {
    let n = algebra.len();
    let count = n.pow(k as u32);
    (0..count).map(|r| Word::from_lex_rank(r, k, n)).collect()
}

/// A finite rational combination of words in one free algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeElement {
    algebra: Arc<GeneratorSet>,
    terms: BTreeMap<Word, Rational>,
}

impl FreeElement {
    pub fn zero(algebra: &Arc<GeneratorSet>) -> Self {
        FreeElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Arc<GeneratorSet>, c: Rational) -> Self {
        Self::monomial(algebra, Word::empty(), c)
    }

    pub fn one(algebra: &Arc<GeneratorSet>) -> Self {
        Self::scalar(algebra, Rational::one())
    }

    pub fn generator(algebra: &Arc<GeneratorSet>, l: Letter) -> Self {
        Self::monomial(algebra, Word::letter(l), Rational::one())
    }

    pub fn word(algebra: &Arc<GeneratorSet>, w: Word) -> Self {
        Self::monomial(algebra, w, Rational::one())
    }

    pub fn monomial(algebra: &Arc<GeneratorSet>, w: Word, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElement { algebra: algebra.clone(), terms }
    }

    pub fn from_terms(algebra: &Arc<GeneratorSet>, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut e = Self::zero(algebra);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn add_term(&mut self, w: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &FreeElement) -> Result<()> {
        same_algebra(&self.algebra, &other.algebra)?;
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(c * x));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FreeElement) -> Result<FreeElement> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> FreeElement {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        FreeElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Product: bilinear extension of word concatenation.
    pub fn mul(&self, other: &FreeElement) -> Result<FreeElement> {
        same_algebra(&self.algebra, &other.algebra)?;
        let mut out = Self::zero(&self.algebra);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn homogeneous_component(&self, k: usize) -> FreeElement {
        FreeElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.degree() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Coordinates over the degree-`k` lexicographic basis (other degrees ignored).
    pub fn degree_coords(&self, k: usize) -> SparseVec {
        let n = self.algebra.len();
        SparseVec::from_entries(
            self.terms.iter().filter(|(w, _)| w.degree() == k).map(|(w, c)| (w.lex_rank(n), c.clone())).collect(),
        )
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut words: Vec<(&Word, &Rational)> = self.terms.iter().collect();
        words.sort_by(|a, b| a.0.deglex_cmp(b.0));
        for (idx, (w, c)) in words.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", self.algebra.format_word(w))?;
            } else {
                write!(f, "{mag}*{}", self.algebra.format_word(w))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({self})")
    }
}

// Operator sugar. These panic on mismatched algebras; use the `Result`
// methods where the algebras are not known to agree.
impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        self.try_add(rhs).expect("algebra mismatch in +")
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs).expect("algebra mismatch in -");
        out
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        FreeElement::mul(self, rhs).expect("algebra mismatch in *")
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.scaled(&-Rational::one())
    }
}

/// Element of `A ⊗ B` for free algebras `A`, `B`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    left: Arc<GeneratorSet>,
    right: Arc<GeneratorSet>,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorElement {
    pub fn zero(left: &Arc<GeneratorSet>, right: &Arc<GeneratorSet>) -> Self {
        TensorElement { left: left.clone(), right: right.clone(), terms: BTreeMap::new() }
    }

    pub fn one(left: &Arc<GeneratorSet>, right: &Arc<GeneratorSet>) -> Self {
        let mut t = Self::zero(left, right);
        t.add_term(Word::empty(), Word::empty(), &Rational::one());
        t
    }

    /// `a ⊗ b`.
    pub fn pure(a: &FreeElement, b: &FreeElement) -> Self {
        let mut t = Self::zero(&a.algebra, &b.algebra);
        for (wa, x) in &a.terms {
            for (wb, y) in &b.terms {
                t.add_term(wa.clone(), wb.clone(), &(x * y));
            }
        }
        t
    }

    pub fn left(&self) -> &Arc<GeneratorSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GeneratorSet> {
        &self.right
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &Word, b: &Word) -> Rational {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &TensorElement) -> Result<()> {
        same_algebra(&self.left, &other.left)?;
        same_algebra(&self.right, &other.right)
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &TensorElement) -> Result<()> {
        self.check_same(other)?;
        for ((a, b), x) in &other.terms {
            self.add_term(a.clone(), b.clone(), &(c * x));
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> TensorElement {
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), b.clone(), &(x * c));
        }
        out
    }

    /// `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), x) in &self.terms {
            for ((a2, b2), y) in &other.terms {
                out.add_term(a.concat(a2), b.concat(b2), &(x * y));
            }
        }
        Ok(out)
    }

    /// `τ`: swaps the two legs.
    pub fn flip(&self) -> TensorElement {
        let mut out = Self::zero(&self.right, &self.left);
        for ((a, b), x) in &self.terms {
            out.add_term(b.clone(), a.clone(), x);
        }
        out
    }

    /// Applies a linear map to the right leg.
    pub fn map_right(&self, target: &Arc<GeneratorSet>, f: impl Fn(&Word) -> FreeElement) -> TensorElement {
        let mut out = Self::zero(&self.left, target);
        for ((a, b), x) in &self.terms {
            for (w, y) in f(b).terms {
                out.add_term(a.clone(), w, &(x * &y));
            }
        }
        out
    }

    /// Applies a linear map to the left leg.
    pub fn map_left(&self, target: &Arc<GeneratorSet>, f: impl Fn(&Word) -> FreeElement) -> TensorElement {
        let mut out = Self::zero(target, &self.right);
        for ((a, b), x) in &self.terms {
            for (w, y) in f(a).terms {
                out.add_term(w, b.clone(), &(x * &y));
            }
        }
        out
    }

    /// Bidegree `(i, j)` part.
    pub fn bidegree_component(&self, i: usize, j: usize) -> TensorElement {
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), x) in &self.terms {
            if a.degree() == i && b.degree() == j {
                out.add_term(a.clone(), b.clone(), x);
            }
        }
        out
    }

    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|(a, b)| (a.degree(), b.degree())).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{c}*({} ⊗ {})", self.left.format_word(a), self.right.format_word(b)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

/// Value of an algebra morphism: either a free-algebra or a tensor element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomImage {
    Free(FreeElement),
    Tensor(TensorElement),
}

impl HomImage {
    fn unit_like(&self) -> HomImage {
        match self {
            HomImage::Free(e) => HomImage::Free(FreeElement::one(&e.algebra)),
            HomImage::Tensor(t) => HomImage::Tensor(TensorElement::one(&t.left, &t.right)),
        }
    }

    fn zero_like(&self) -> HomImage {
        match self {
            HomImage::Free(e) => HomImage::Free(FreeElement::zero(&e.algebra)),
            HomImage::Tensor(t) => HomImage::Tensor(TensorElement::zero(&t.left, &t.right)),
        }
    }

    fn mul(&self, other: &HomImage) -> Result<HomImage> {
        match (self, other) {
            (HomImage::Free(a), HomImage::Free(b)) => Ok(HomImage::Free(a.mul(b)?)),
            (HomImage::Tensor(a), HomImage::Tensor(b)) => Ok(HomImage::Tensor(a.mul(b)?)),
            _ => Err(Error::Precondition("mixed free/tensor images".into())),
        }
    }

    fn add_scaled(&mut self, c: &Rational, other: &HomImage) -> Result<()> {
        match (self, other) {
            (HomImage::Free(a), HomImage::Free(b)) => a.add_scaled(c, b),
            (HomImage::Tensor(a), HomImage::Tensor(b)) => a.add_scaled(c, b),
            _ => Err(Error::Precondition("mixed free/tensor images".into())),
        }
    }

    pub fn as_free(&self) -> Option<&FreeElement> {
        match self {
            HomImage::Free(e) => Some(e),
            HomImage::Tensor(_) => None,
        }
    }

    pub fn as_tensor(&self) -> Option<&TensorElement> {
        match self {
            HomImage::Tensor(t) => Some(t),
            HomImage::Free(_) => None,
        }
    }

    pub fn into_tensor(self) -> Option<TensorElement> {
        match self {
            HomImage::Tensor(t) => Some(t),
            HomImage::Free(_) => None,
        }
    }

    pub fn into_free(self) -> Option<FreeElement> {
        match self {
            HomImage::Free(e) => Some(e),
            HomImage::Tensor(_) => None,
        }
    }
}

/// Unital algebra morphism out of a free algebra, fixed by generator images.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Arc<GeneratorSet>,
    images: Vec<HomImage>,
}

impl AlgebraHom {
    pub fn new(source: &Arc<GeneratorSet>, images: Vec<HomImage>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::DimensionMismatch { expected: source.len(), found: images.len() });
        }
        if let Some(first) = images.first() {
            let zero = first.zero_like();
            for img in &images[1..] {
                // Adding to a zero of the first image's type checks targets agree.
                zero.clone().add_scaled(&Rational::one(), img)?;
            }
        }
        Ok(AlgebraHom { source: source.clone(), images })
    }

    pub fn source(&self) -> &Arc<GeneratorSet> {
        &self.source
    }

    pub fn image_of(&self, l: Letter) -> Result<&HomImage> {
        self.images.get(l as usize).ok_or(Error::UnknownGenerator(l as usize))
    }

    /// Image of a word: product of letter images, left to right.
    pub fn apply_word(&self, w: &Word) -> Result<HomImage> {
        let mut acc = self.images[0].unit_like();
        for &l in w.letters() {
            acc = acc.mul(self.image_of(l)?)?;
        }
        Ok(acc)
    }

    /// Anti-multiplicative extension: the image of `l₁⋯lₖ` is `h(lₖ)⋯h(l₁)`.
    pub fn apply_word_reversed(&self, w: &Word) -> Result<HomImage> {
        self.apply_word(&w.reversed())
    }

    pub fn apply(&self, x: &FreeElement) -> Result<HomImage> {
        same_algebra(&self.source, &x.algebra)?;
        let mut out = self.images[0].zero_like();
        for (w, c) in &x.terms {
            out.add_scaled(c, &self.apply_word(w)?)?;
        }
        Ok(out)
    }

    pub fn apply_reversed(&self, x: &FreeElement) -> Result<HomImage> {
        same_algebra(&self.source, &x.algebra)?;
        let mut out = self.images[0].zero_like();
        for (w, c) in &x.terms {
            out.add_scaled(c, &self.apply_word_reversed(w)?)?;
        }
        Ok(out)
    }
}

/// Free function form of [`AlgebraHom::apply`].
pub fn apply_hom(h: &AlgebraHom, x: &FreeElement) -> Result<HomImage> {
    h.apply(x)
}

/// Basis of the bidegree-`(i, j)` part of `A ⊗ B`: pairs of lexicographic
/// degree bases, indexed `rank(a) * |B_j| + rank(b)`.
#[derive(Clone, Debug)]
pub struct BidegreeBasis {
    pub left: Arc<GeneratorSet>,
    pub right: Arc<GeneratorSet>,
    pub i: usize,
    pub j: usize,
    left_count: usize,
    right_count: usize,
}

impl BidegreeBasis {
    pub fn new(left: &Arc<GeneratorSet>, right: &Arc<GeneratorSet>, i: usize, j: usize) -> Self {
        BidegreeBasis {
            left: left.clone(),
            right: right.clone(),
            i,
            j,
            left_count: left.len().pow(i as u32),
            right_count: right.len().pow(j as u32),
        }
    }

    pub fn len(&self) -> usize {
        self.left_count * self.right_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, a: &Word, b: &Word) -> usize {
        debug_assert!(a.degree() == self.i && b.degree() == self.j);
        a.lex_rank(self.left.len()) * self.right_count + b.lex_rank(self.right.len())
    }

    pub fn pair(&self, idx: usize) -> (Word, Word) {
        (
            Word::from_lex_rank(idx / self.right_count, self.i, self.left.len()),
            Word::from_lex_rank(idx % self.right_count, self.j, self.right.len()),
        )
    }

    /// Coordinates of the bidegree-`(i,j)` part of `x`.
    pub fn coords(&self, x: &TensorElement) -> SparseVec {
        SparseVec::from_entries(
            x.terms
                .iter()
                .filter(|((a, b), _)| a.degree() == self.i && b.degree() == self.j)
                .map(|((a, b), c)| (self.index(a, b), c.clone()))
                .collect(),
        )
    }

    pub fn element(&self, v: &SparseVec) -> TensorElement {
        let mut t = TensorElement::zero(&self.left, &self.right);
        for (idx, c) in v.iter() {
            let (a, b) = self.pair(idx);
            t.add_term(a, b, c);
        }
        t
    }
}

/// The three free algebras of the comparison map and `θ` itself.
#[derive(Clone, Debug)]
pub struct ThetaSetting {
    pub x: Arc<GeneratorSet>,
    pub y: Arc<GeneratorSet>,
    pub z: Arc<GeneratorSet>,
    pub theta: AlgebraHom,
    pub m: usize,
    pub n: usize,
    pub t: usize,
}

impl ThetaSetting {
    /// `θ : A(m,n) → A(m,t) ⊗ A(t,n)`, `x_{ij} ↦ Σ_k y_{ik} ⊗ z_{kj}`.
    pub fn new(m: usize, n: usize, t: usize) -> Result<Self> {
        let x = GeneratorSet::matrix("x", m, n)?;
        let y = GeneratorSet::matrix("y", m, t)?;
        let z = GeneratorSet::matrix("z", t, n)?;
        let mut images = Vec::with_capacity(m * n);
        for i in 1..=m {
            for j in 1..=n {
                let mut img = TensorElement::zero(&y, &z);
                for k in 1..=t {
                    img.add_term(Word::letter(y.letter(i, k)), Word::letter(z.letter(k, j)), &Rational::one());
                }
                images.push(HomImage::Tensor(img));
            }
        }
        let theta = AlgebraHom::new(&x, images)?;
        Ok(ThetaSetting { x, y, z, theta, m, n, t })
    }

    pub fn bidegree_basis(&self, i: usize, j: usize) -> BidegreeBasis {
        BidegreeBasis::new(&self.y, &self.z, i, j)
    }

    pub fn theta_word(&self, w: &Word) -> TensorElement {
        self.theta.apply_word(w).expect("letters of A(m,n)").into_tensor().unwrap()
    }
}

/// `θ` on the degree-`k` part of `A(m,n)` with its rank.
#[derive(Clone, Debug)]
pub struct ThetaComponent {
    /// Rows index the bidegree-`(k,k)` basis, columns the degree-`k` words.
    pub matrix: RationalMatrix,
    pub rank: usize,
}

pub fn theta_matrix(m: usize, n: usize, t: usize, k: usize) -> Result<ThetaComponent> {
    let setting = ThetaSetting::new(m, n, t)?;
    let basis = setting.bidegree_basis(k, k);
    let words = degree_basis(&setting.x, k);
    let columns: Vec<SparseVec> = crate::par::map(&words, |w| basis.coords(&setting.theta_word(w)));
    let as_rows = RationalMatrix::from_rows(basis.len(), columns)?;
    let rank = crate::exactlin::rank(&as_rows);
    Ok(ThetaComponent { matrix: as_rows.transpose(), rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_generators() {
        let a = GeneratorSet::matrix("y", 1, 2).unwrap();
        let y1 = FreeElement::generator(&a, a.letter(1, 1));
        let y2 = FreeElement::generator(&a, a.letter(1, 2));
        let p = &y1 * &y2;
        assert_eq!(p.coefficient(&Word::from_letters(&[0, 1])), Rational::one());
        assert_eq!(p.terms().len(), 1);
        let s = &(&y1 + &y2) * &y1;
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.coefficient(&Word::from_letters(&[0, 0])), Rational::one());
        assert_eq!(s.coefficient(&Word::from_letters(&[1, 0])), Rational::one());
    }

    #[test]
    fn mismatched_algebras_error() {
        let a = GeneratorSet::matrix("y", 1, 2).unwrap();
        let b = GeneratorSet::matrix("z", 2, 1).unwrap();
        let e = FreeElement::one(&a).mul(&FreeElement::one(&b));
        assert!(matches!(e, Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn degree_basis_counts_and_order() {
        let a22 = GeneratorSet::matrix("x", 2, 2).unwrap();
        assert_eq!(degree_basis(&a22, 2).len(), 16);
        let a11 = GeneratorSet::matrix("x", 1, 1).unwrap();
        assert_eq!(degree_basis(&a11, 3).len(), 1);
        let a21 = GeneratorSet::matrix("y", 2, 1).unwrap();
        let b = degree_basis(&a21, 2);
        let names: Vec<String> = b.iter().map(|w| a21.format_word(w)).collect();
        assert_eq!(names, ["y1*y1", "y1*y2", "y2*y1", "y2*y2"]);
        assert_eq!(degree_basis(&a21, 0), vec![Word::empty()]);
    }

    #[test]
    fn lex_rank_roundtrip() {
        for r in 0..81 {
            assert_eq!(Word::from_lex_rank(r, 4, 3).lex_rank(3), r);
        }
    }

    #[test]
    fn theta_on_generators() {
        let s = ThetaSetting::new(2, 2, 2).unwrap();
        let img = s.theta_word(&Word::letter(s.x.letter(1, 1)));
        let mut expect = TensorElement::zero(&s.y, &s.z);
        expect.add_term(Word::letter(s.y.letter(1, 1)), Word::letter(s.z.letter(1, 1)), &Rational::one());
        expect.add_term(Word::letter(s.y.letter(1, 2)), Word::letter(s.z.letter(2, 1)), &Rational::one());
        assert_eq!(img, expect);

        let s1 = ThetaSetting::new(2, 2, 1).unwrap();
        let img = s1.theta_word(&Word::letter(s1.x.letter(1, 2)));
        assert_eq!(img.to_string(), "1*(y1 ⊗ z2)");
        let w = Word::from_letters(&[s1.x.letter(1, 1), s1.x.letter(1, 2)]);
        assert_eq!(s1.theta_word(&w).to_string(), "1*(y1*y1 ⊗ z1*z2)");
    }

    #[test]
    fn theta_unit() {
        let s = ThetaSetting::new(2, 1, 2).unwrap();
        assert_eq!(s.theta_word(&Word::empty()), TensorElement::one(&s.y, &s.z));
    }

    #[test]
    fn theta_ranks() {
        let c = theta_matrix(2, 2, 1, 2).unwrap();
        assert_eq!(c.rank, 16);
        assert_eq!(theta_matrix(1, 1, 1, 5).unwrap().rank, 1);
        let c = theta_matrix(2, 2, 2, 1).unwrap();
        assert_eq!((c.matrix.nrows(), c.matrix.ncols()), (16, 4));
        assert_eq!(c.rank, 4);
    }

    #[test]
    fn display_element() {
        let a = GeneratorSet::with_blocks(
            "H",
            vec![Block { symbol: "u".into(), rows: 1, cols: 1 }, Block { symbol: "v".into(), rows: 1, cols: 1 }],
        )
        .unwrap();
        let e = FreeElement::from_terms(
            &a,
            [(Word::from_letters(&[0, 1]), Rational::one()), (Word::empty(), -Rational::one())],
        );
        assert_eq!(e.to_string(), "-1 + u*v");
    }
}
