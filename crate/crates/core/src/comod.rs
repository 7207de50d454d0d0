//! Coactions of `H(F)` on `A(m,t)` and `A(t,n)`, the tensor coaction on
//! `A(m,t) ⊗ A(t,n)`, coinvariants per bidegree and the squeeze check
//! against the image of `θ`.
//!
//! `A(m,t)` is a right comodule algebra through `ρ(y_{ij}) = Σ_k y_{ik} ⊗ u_{kj}`
//! and is turned into a left comodule by `ρ′ = τ ∘ (id ⊗ S) ∘ ρ`. `A(t,n)` is a
//! left comodule algebra through `λ(z_{ij}) = Σ_k u_{ik} ⊗ z_{kj}`.
//!
//! Coinvariance is decided in the truncated quotient, which can only
//! certify that an element vanishes. The computed coinvariant space is
//! therefore a subspace of the true one, and an equality of dimensions with
//! the image of `θ` pins both down.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Rational, RationalMatrix, SparseVec, Subspace};
use crate::fpquot::{Certification, GradedQuotient};
use crate::freealg::{theta_matrix, BidegreeBasis, FreeElement, GeneratorSet, TensorElement, ThetaSetting, Word};
use crate::hopf::{build_hf, FMatrix, HopfPresentation, Laurent};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Per-generator image `Σ c · h ⊗ a` as `(h, a, c)` triples.
type Image = Vec<(Word, Word, Rational)>;

/// Extends per-letter images to a word. With `reversed`, H-legs multiply
/// in the opposite order to the module legs.
fn expand(images: &[Image], w: &Word, reversed: bool) -> Vec<(Word, Word, Rational)> {
    let mut acc = vec![(Word::empty(), Word::empty(), Rational::one())];
    for &l in w.letters() {
        let img = &images[l as usize];
        let mut next = Vec::with_capacity(acc.len() * img.len());
        for (h, a, c) in &acc {
            for (hl, al, cl) in img {
                let h2 = if reversed { hl.concat(h) } else { h.concat(hl) };
                next.push((h2, a.concat(al), c * cl));
            }
        }
        acc = next;
    }
    acc
}

fn check_shape(g: &GeneratorSet, rows: Option<usize>, cols: Option<usize>) -> Result<()> {
    let b = g.blocks().first().ok_or_else(|| Error::Precondition("empty generator set".into()))?;
    if g.blocks().len() != 1 || rows.is_some_and(|r| r != b.rows) || cols.is_some_and(|c| c != b.cols) {
        return Err(Error::Precondition(format!("generator set {} has the wrong shape", g.name())));
    }
    Ok(())
}

type Triple = BTreeMap<(Word, Word, Word), Rational>;

fn add_triple(acc: &mut Triple, key: (Word, Word, Word), c: Rational) {
    let e = acc.entry(key.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// `(Δ⊗id)α = (id⊗α)α` for a left coaction given by its word expansion.
fn left_coassociative(h: &HopfPresentation, g: &GeneratorSet, expand_word: impl Fn(&Word) -> Vec<(Word, Word, Rational)>) -> bool {
    (0..g.len() as u16).all(|l| {
        let mut lhs = Triple::new();
        let mut rhs = Triple::new();
        for (hw, a, c) in expand_word(&Word::letter(l)) {
            for ((h1, h2), c1) in h.delta_word(&hw).terms() {
                add_triple(&mut lhs, (h1.clone(), h2.clone(), a.clone()), &c * c1);
            }
            for (h2, a2, c2) in expand_word(&a) {
                add_triple(&mut rhs, (hw.clone(), h2, a2), &c * &c2);
            }
        }
        lhs == rhs
    })
}

fn counital(h: &HopfPresentation, g: &GeneratorSet, expand_word: impl Fn(&Word) -> Vec<(Word, Word, Rational)>) -> bool {
    (0..g.len() as u16).all(|l| {
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
        for (hw, a, c) in expand_word(&Word::letter(l)) {
            *acc.entry(a).or_default() += &(&c * &h.counit_word(&hw));
        }
        acc.retain(|_, c| !c.is_zero());
        acc.len() == 1 && acc.get(&Word::letter(l)).is_some_and(Rational::is_one)
    })
}

/// `ρ : A(m,t) → A(m,t) ⊗ H`, `y_{ij} ↦ Σ_k y_{ik} ⊗ u_{kj}`.
#[derive(Clone, Debug)]
pub struct RightCoaction {
    algebra: Arc<GeneratorSet>,
    hopf: Arc<HopfPresentation>,
    images: Vec<Image>,
}

impl RightCoaction {
    pub fn new(y: &Arc<GeneratorSet>, hopf: &Arc<HopfPresentation>) -> Result<Self> {
        let t = hopf.t();
        check_shape(y, None, Some(t))?;
        let m = y.blocks()[0].rows;
        let mut images = Vec::with_capacity(m * t);
        for i in 1..=m {
            for j in 1..=t {
                images.push((1..=t).map(|k| (Word::letter(hopf.u(k, j)), Word::letter(y.letter(i, k)), Rational::one())).collect());
            }
        }
        Ok(RightCoaction { algebra: y.clone(), hopf: hopf.clone(), images })
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    /// Terms `(h, a, c)` of `ρ(w) = Σ c · a ⊗ h`.
    pub fn expand_word(&self, w: &Word) -> Vec<(Word, Word, Rational)> {
        expand(&self.images, w, false)
    }

    pub fn apply_word(&self, w: &Word) -> TensorElement {
        let mut out = TensorElement::zero(&self.algebra, self.hopf.algebra());
        for (h, a, c) in self.expand_word(w) {
            out.add_term(a, h, &c);
        }
        out
    }

    /// `(ρ⊗id)ρ = (id⊗Δ)ρ` on generators, exactly in the free cover.
    pub fn coassociative_on_generators(&self) -> bool {
        (0..self.algebra.len() as u16).all(|l| {
            let mut lhs = Triple::new();
            let mut rhs = Triple::new();
            for (hw, a, c) in self.expand_word(&Word::letter(l)) {
                for (h2, a2, c2) in self.expand_word(&a) {
                    add_triple(&mut lhs, (h2, hw.clone(), a2), &c * &c2);
                }
                for ((h1, h2), c1) in self.hopf.delta_word(&hw).terms() {
                    add_triple(&mut rhs, (h1.clone(), h2.clone(), a.clone()), &c * c1);
                }
            }
            lhs == rhs
        })
    }

    /// `(id⊗ε)ρ = id` on generators.
    pub fn counital_on_generators(&self) -> bool {
        counital(&self.hopf, &self.algebra, |w| self.expand_word(w))
    }
}

/// `λ : A(t,n) → H ⊗ A(t,n)`, `z_{ij} ↦ Σ_k u_{ik} ⊗ z_{kj}`.
#[derive(Clone, Debug)]
pub struct LeftCoaction {
    algebra: Arc<GeneratorSet>,
    hopf: Arc<HopfPresentation>,
    images: Vec<Image>,
}

impl LeftCoaction {
    pub fn new(z: &Arc<GeneratorSet>, hopf: &Arc<HopfPresentation>) -> Result<Self> {
        let t = hopf.t();
        check_shape(z, Some(t), None)?;
        let n = z.blocks()[0].cols;
        let mut images = Vec::with_capacity(n * t);
        for i in 1..=t {
            for j in 1..=n {
                images.push((1..=t).map(|k| (Word::letter(hopf.u(i, k)), Word::letter(z.letter(k, j)), Rational::one())).collect());
            }
        }
        Ok(LeftCoaction { algebra: z.clone(), hopf: hopf.clone(), images })
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    pub fn expand_word(&self, w: &Word) -> Vec<(Word, Word, Rational)> {
        expand(&self.images, w, false)
    }

    pub fn apply_word(&self, w: &Word) -> TensorElement {
        let mut out = TensorElement::zero(self.hopf.algebra(), &self.algebra);
        for (h, b, c) in self.expand_word(w) {
            out.add_term(h, b, &c);
        }
        out
    }

    pub fn coassociative_on_generators(&self) -> bool {
        left_coassociative(&self.hopf, &self.algebra, |w| self.expand_word(w))
    }

    pub fn counital_on_generators(&self) -> bool {
        counital(&self.hopf, &self.algebra, |w| self.expand_word(w))
    }
}

/// `ρ′ = τ ∘ (id ⊗ S) ∘ ρ`, given on generators by `y_{ij} ↦ Σ_k v_{jk} ⊗ y_{ik}`
/// and extended with H-legs in reversed order.
#[derive(Clone, Debug)]
pub struct FlippedCoaction {
    rho: RightCoaction,
    images: Vec<Image>,
}

impl FlippedCoaction {
    pub fn new(rho: &RightCoaction) -> Self {
        let h = &rho.hopf;
        let y = &rho.algebra;
        let t = h.t();
        let m = y.blocks()[0].rows;
        let mut images = Vec::with_capacity(m * t);
        for i in 1..=m {
            for j in 1..=t {
                images.push((1..=t).map(|k| (Word::letter(h.v(j, k)), Word::letter(y.letter(i, k)), Rational::one())).collect());
            }
        }
        FlippedCoaction { rho: rho.clone(), images }
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.rho.algebra
    }

    pub fn expand_word(&self, w: &Word) -> Vec<(Word, Word, Rational)> {
        expand(&self.images, w, true)
    }

    pub fn apply_word(&self, w: &Word) -> TensorElement {
        let mut out = TensorElement::zero(self.rho.hopf.algebra(), &self.rho.algebra);
        for (h, a, c) in self.expand_word(w) {
            out.add_term(h, a, &c);
        }
        out
    }

    /// `τ ∘ (id ⊗ S) ∘ ρ` applied literally: expand `ρ(w)`, then the antipode.
    pub fn apply_word_via_antipode(&self, w: &Word) -> TensorElement {
        let h = &self.rho.hopf;
        let mut out = TensorElement::zero(h.algebra(), &self.rho.algebra);
        for (hw, a, c) in self.rho.expand_word(w) {
            for (sw, sc) in h.antipode_word(&hw).terms() {
                out.add_term(sw.clone(), a.clone(), &(&c * sc));
            }
        }
        out
    }

    pub fn coassociative_on_generators(&self) -> bool {
        left_coassociative(&self.rho.hopf, &self.rho.algebra, |w| self.expand_word(w))
    }

    pub fn counital_on_generators(&self) -> bool {
        counital(&self.rho.hopf, &self.rho.algebra, |w| self.expand_word(w))
    }
}

/// The tensor coaction on one bidegree: for each source basis index, the
/// terms `(target index, H-word, coefficient)` of `α(source)`.
#[derive(Clone, Debug)]
pub struct TensorCoaction {
    pub basis: BidegreeBasis,
    pub entries: Vec<Vec<(usize, Word, Rational)>>,
}

impl TensorCoaction {
    /// `α(src)` as a tensor element `Σ h ⊗ (a ⊗ b)`, with the target basis
    /// pair flattened to its index.
    pub fn column(&self, hopf: &HopfPresentation, src: usize) -> Vec<(usize, FreeElement)> {
        let mut by_target: BTreeMap<usize, FreeElement> = BTreeMap::new();
        for (s, h, c) in &self.entries[src] {
            by_target.entry(*s).or_insert_with(|| FreeElement::zero(hopf.algebra())).add_term(h.clone(), c);
        }
        by_target.into_iter().collect()
    }

    /// Equations `Σ_w c_w h_{w,s} − c_s ≡ 0`, one per target `s`.
    fn coinvariance_equations(&self, hopf: &HopfPresentation) -> Vec<Vec<(usize, FreeElement)>> {
        let mut eqs: Vec<BTreeMap<usize, FreeElement>> = vec![BTreeMap::new(); self.basis.len()];
        for (w, terms) in self.entries.iter().enumerate() {
            for (s, h, c) in terms {
                eqs[*s].entry(w).or_insert_with(|| FreeElement::zero(hopf.algebra())).add_term(h.clone(), c);
            }
        }
        for (s, eq) in eqs.iter_mut().enumerate() {
            eq.entry(s).or_insert_with(|| FreeElement::zero(hopf.algebra())).add_term(Word::empty(), &-Rational::one());
        }
        eqs.into_iter().map(|m| m.into_iter().collect()).collect()
    }
}

/// Solves `Σ_u c_u e_{q,u} ∈ I_{≤d}` for every equation `q`.
///
/// Returns the space of coefficient vectors `c ∈ ℚ^n_unknowns` for which
/// every equation reduces to zero modulo the truncated ideal.
pub fn solve_congruences(q: &GradedQuotient, n_unknowns: usize, equations: &[Vec<(usize, FreeElement)>]) -> Result<Subspace> {
    let blocks: Vec<Result<Vec<SparseVec>>> = crate::par::map(equations, |eq| {
        let mut rows: BTreeMap<Word, Vec<(usize, Rational)>> = BTreeMap::new();
        for (u, e) in eq {
            if *u >= n_unknowns {
                return Err(Error::DimensionMismatch { expected: n_unknowns, found: u + 1 });
            }
            for (w, c) in q.normal_form(e)?.into_terms() {
                rows.entry(w).or_default().push((*u, c));
            }
        }
        Ok(rows.into_values().map(SparseVec::from_entries).filter(|r| !r.is_zero()).collect())
    });
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    Ok(kernel_basis(&RationalMatrix::from_rows(n_unknowns, rows)?))
}

/// Proof that all coinvariants of an off-diagonal bidegree vanish.
///
/// Specializing `u ↦ zI`, `v ↦ z⁻¹I` sends the coaction to `z^{j−i}·id`;
/// the certificate records that this was checked on every basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingCertificate {
    pub bidegree: (usize, usize),
    pub exponent: i64,
    pub basis_len: usize,
}

/// One bidegree of the comparison between coinvariants and `Im θ`.
#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub f: String,
    pub bidegree: (usize, usize),
    pub d: usize,
    pub computed_subspace: Subspace,
    pub theta_image: Option<Subspace>,
    pub dim_coinv: usize,
    pub dim_theta: usize,
    /// `(mn)^k`
    pub expected_dim: usize,
    pub theta_contained: bool,
    /// Smallest tried truncation at which every `θ(w)` was certified coinvariant.
    pub witness_degree: Option<usize>,
    pub certified: bool,
    pub off_diagonal_vanishing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Inconclusive,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Inconclusive => "inconclusive",
            Status::Mismatch => "mismatch",
        }
    }

    /// The worse of two outcomes.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

impl CoinvariantReport {
    pub fn status(&self) -> Status {
        if self.certified {
            Status::Certified
        } else if self.dim_theta != self.expected_dim || !self.theta_contained {
            Status::Mismatch
        } else {
            Status::Inconclusive
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraReport {
    pub seed: u64,
    pub samples: usize,
    pub d: usize,
    pub certified: usize,
    pub failures: Vec<String>,
}

/// `θ`, `H(F)` and the three coactions for one `(m, n, t, F)`.
#[derive(Clone, Debug)]
pub struct CoinvSetting {
    pub theta: ThetaSetting,
    pub hopf: Arc<HopfPresentation>,
    pub rho: RightCoaction,
    pub flipped: FlippedCoaction,
    pub lambda: LeftCoaction,
}

impl CoinvSetting {
    pub fn new(m: usize, n: usize, f: &FMatrix) -> Result<Self> {
        Self::with_hopf(m, n, Arc::new(build_hf(f)?))
    }

    pub fn with_hopf(m: usize, n: usize, hopf: Arc<HopfPresentation>) -> Result<Self> {
        let theta = ThetaSetting::new(m, n, hopf.t())?;
        let rho = RightCoaction::new(&theta.y, &hopf)?;
        let flipped = FlippedCoaction::new(&rho);
        let lambda = LeftCoaction::new(&theta.z, &hopf)?;
        Ok(CoinvSetting { theta, hopf, rho, flipped, lambda })
    }

    pub fn m(&self) -> usize {
        self.theta.m
    }

    pub fn n(&self) -> usize {
        self.theta.n
    }

    pub fn t(&self) -> usize {
        self.theta.t
    }

    /// `α(a ⊗ b) = Σ ρ′(a)_{(−1)} λ(b)_{(−1)} ⊗ ρ′(a)_{(0)} ⊗ λ(b)_{(0)}` on the
    /// bidegree-`(i,j)` basis.
    pub fn tensor_coaction(&self, i: usize, j: usize) -> TensorCoaction {
        let basis = self.theta.bidegree_basis(i, j);
        let entries = crate::par::map_range(basis.len(), |src| {
            let (a, b) = basis.pair(src);
            let left = self.flipped.expand_word(&a);
            let right = self.lambda.expand_word(&b);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for (ha, a2, ca) in &left {
                for (hb, b2, cb) in &right {
                    out.push((basis.index(a2, b2), ha.concat(hb), ca * cb));
                }
            }
            out
        });
        TensorCoaction { basis, entries }
    }

    fn check_truncation(i: usize, j: usize, d: usize) -> Result<()> {
        if d < i + j {
            return Err(Error::TruncationTooSmall { needed: i + j, got: d });
        }
        Ok(())
    }

    /// Coinvariants of bidegree `(i,j)` certified at truncation `d`, in the
    /// coordinates of the bidegree basis.
    pub fn coinvariants(&self, i: usize, j: usize, d: usize) -> Result<Subspace> {
        Self::check_truncation(i, j, d)?;
        let q = self.hopf.quotient(d.max(self.hopf.presentation().max_relation_degree()))?;
        let alpha = self.tensor_coaction(i, j);
        solve_congruences(&q, alpha.basis.len(), &alpha.coinvariance_equations(&self.hopf))
    }

    /// Whether `α(x) − 1 ⊗ x` is certified to vanish at truncation `d`.
    pub fn is_coinvariant(&self, x: &TensorElement, d: usize) -> Result<Certification> {
        let q = self.hopf.quotient(d.max(self.hopf.presentation().max_relation_degree()))?;
        for (i, j) in x.bidegrees() {
            Self::check_truncation(i, j, d)?;
            let alpha = self.tensor_coaction(i, j);
            let coords = alpha.basis.coords(x);
            let mut per_target: BTreeMap<usize, FreeElement> = BTreeMap::new();
            for (w, c) in coords.iter() {
                for (s, h, hc) in &alpha.entries[w] {
                    per_target.entry(*s).or_insert_with(|| FreeElement::zero(self.hopf.algebra())).add_term(h.clone(), &(c * hc));
                }
                per_target.entry(w).or_insert_with(|| FreeElement::zero(self.hopf.algebra())).add_term(Word::empty(), &-c);
            }
            for e in per_target.values() {
                if !q.is_zero_mod(e)?.is_certified() {
                    return Ok(Certification::NotCertified);
                }
            }
        }
        Ok(Certification::CertifiedZero)
    }

    /// Exact vanishing of all coinvariants in bidegree `(i,j)`, `i ≠ j`.
    pub fn off_diagonal_vanish(&self, i: usize, j: usize) -> Result<VanishingCertificate> {
        if i == j {
            return Err(Error::Precondition("off-diagonal vanishing needs i != j".into()));
        }
        let exponent = j as i64 - i as i64;
        let alpha = self.tensor_coaction(i, j);
        let ok = crate::par::map_range(alpha.basis.len(), |src| {
            let mut by_target: BTreeMap<usize, Laurent> = BTreeMap::new();
            for (s, h, c) in &alpha.entries[src] {
                if let Some(e) = self.hopf.specialize_word(h) {
                    by_target.entry(*s).or_default().add_term(e, c);
                }
            }
            by_target.retain(|_, l| !l.is_zero());
            by_target.len() == 1 && by_target.get(&src) == Some(&Laurent::monomial(exponent, Rational::one()))
        });
        if ok.iter().all(|&b| b) {
            Ok(VanishingCertificate { bidegree: (i, j), exponent, basis_len: alpha.basis.len() })
        } else {
            Err(Error::Internal(format!("specialized coaction in bidegree ({i},{j}) is not z^{exponent}*id")))
        }
    }

    /// Compares the coinvariants of bidegree `(k,k)` with `Im θ_k`.
    ///
    /// Aborts with [`Error::Internal`] if more than `(mn)^k` coinvariants are
    /// certified, which soundness rules out.
    pub fn certify_fft(&self, k: usize, d: usize) -> Result<CoinvariantReport> {
        if d < 2 * k {
            return Err(Error::TruncationTooSmall { needed: 2 * k, got: d });
        }
        let expected_dim = (self.m() * self.n()).pow(k as u32);
        let v = self.coinvariants(k, k, d)?;
        if v.dim() > expected_dim {
            return Err(Error::Internal(format!(
                "certified {} coinvariants in bidegree ({k},{k}), more than (mn)^k = {expected_dim}",
                v.dim()
            )));
        }
        let theta = theta_matrix(self.m(), self.n(), self.t(), k)?;
        let image = Subspace::row_space(&theta.matrix.transpose());
        let theta_contained = image.is_subspace_of(&v)?;
        let witness_degree = if theta_contained { self.theta_witness_degree(k, d)? } else { None };
        let certified = theta_contained && v.dim() == image.dim() && image.dim() == expected_dim;
        Ok(CoinvariantReport {
            m: self.m(),
            n: self.n(),
            t: self.t(),
            f: self.hopf.f().to_string(),
            bidegree: (k, k),
            d,
            dim_coinv: v.dim(),
            dim_theta: image.dim(),
            computed_subspace: v,
            theta_image: Some(image),
            expected_dim,
            theta_contained,
            witness_degree,
            certified,
            off_diagonal_vanishing: false,
        })
    }

    /// Smallest of `2k` and `d` at which every `θ(w)` of degree `k` is certified.
    fn theta_witness_degree(&self, k: usize, d: usize) -> Result<Option<usize>> {
        let words = crate::freealg::degree_basis(&self.theta.x, k);
        for dd in [2 * k, d] {
            let mut all = true;
            for w in &words {
                if !self.is_coinvariant(&self.theta.theta_word(w), dd)?.is_certified() {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(dd));
            }
        }
        Ok(None)
    }

    /// Random products of certified coinvariants, re-checked for coinvariance.
    ///
    /// Factors are drawn from diagonal bidegrees `(a,a)`, `a ≤ 2`, with the
    /// product bidegree at most `(2,2)` (`(4,4)` when `t = 1`). Each product
    /// of bidegree `(c,c)` is checked at truncation `max(d, 2c)`.
    pub fn subalgebra_check(&self, samples: usize, d: usize, seed: u64) -> Result<SubalgebraReport> {
        let max_sum = if self.t() == 1 { 4 } else { 2 };
        let mut spaces = Vec::new();
        for a in 0..=2usize.min(max_sum) {
            let basis = self.theta.bidegree_basis(a, a);
            let v = self.coinvariants(a, a, d.max(2 * a))?;
            spaces.push((a, basis, v));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::with_capacity(samples);
        for _ in 0..samples {
            let (a, b) = loop {
                let a = rng.gen_range(0..spaces.len());
                let b = rng.gen_range(0..spaces.len());
                if spaces[a].0 + spaces[b].0 <= max_sum && spaces[a].2.dim() > 0 && spaces[b].2.dim() > 0 {
                    break (a, b);
                }
            };
            let x = random_element(&spaces[a].1, &spaces[a].2, &mut rng);
            let y = random_element(&spaces[b].1, &spaces[b].2, &mut rng);
            pairs.push((spaces[a].0 + spaces[b].0, x, y));
        }
        let outcomes = crate::par::map(&pairs, |(c, x, y)| -> Result<Option<String>> {
            let p = x.mul(y)?;
            Ok(match self.is_coinvariant(&p, d.max(2 * c))? {
                Certification::CertifiedZero => None,
                Certification::NotCertified => Some(format!("product of bidegree ({c},{c}) not certified: {p}")),
            })
        });
        let mut failures = Vec::new();
        for o in outcomes {
            if let Some(f) = o? {
                failures.push(f);
            }
        }
        Ok(SubalgebraReport { seed, samples, d, certified: samples - failures.len(), failures })
    }
}

/// Random nonzero integer combination of the basis of `v`.
fn random_element(basis: &BidegreeBasis, v: &Subspace, rng: &mut ChaCha8Rng) -> TensorElement {
    loop {
        let mut acc = SparseVec::default();
        for row in v.basis_vectors() {
            let c = Rational::from_int(rng.gen_range(-3..=3));
            if !c.is_zero() {
                acc = acc.add_scaled(&c, row);
            }
        }
        if !acc.is_zero() {
            return basis.element(&acc);
        }
    }
}

pub fn tensor_coaction(m: usize, n: usize, f: &FMatrix, i: usize, j: usize) -> Result<TensorCoaction> {
    Ok(CoinvSetting::new(m, n, f)?.tensor_coaction(i, j))
}

pub fn coinvariants(m: usize, n: usize, f: &FMatrix, i: usize, j: usize, d: usize) -> Result<Subspace> {
    CoinvSetting::new(m, n, f)?.coinvariants(i, j, d)
}

/// The certificate does not depend on `F`; the identity is used.
pub fn off_diagonal_vanish(m: usize, n: usize, t: usize, i: usize, j: usize) -> Result<VanishingCertificate> {
    CoinvSetting::new(m, n, &FMatrix::identity(t)?)?.off_diagonal_vanish(i, j)
}

pub fn certify_fft(m: usize, n: usize, f: &FMatrix, k: usize, d: usize) -> Result<CoinvariantReport> {
    CoinvSetting::new(m, n, f)?.certify_fft(k, d)
}

pub fn subalgebra_check(m: usize, n: usize, f: &FMatrix, samples: usize, d: usize, seed: u64) -> Result<SubalgebraReport> {
    CoinvSetting::new(m, n, f)?.subalgebra_check(samples, d, seed)
}
