//! Finite-dimensional comodules of `H(F)`, intertwiner spaces, explicit
//! duality morphisms, and the comparison of the two ways of turning words of
//! `A(m,n)` into morphisms `(Uᵐ)^{⊗k} → (Uⁿ)^{⊗k}`.
//!
//! Tensor powers use nested bases ordered left to right: the basis vector
//! `e_{a₁} ⊗ ⋯ ⊗ e_{aₖ}` has index `(…(a₁·D + a₂)·D + …)·D + aₖ`, so all
//! associators are identities. The basis of `Uᵐ` indexes copy `i` and
//! vector `a` as `i·t + a` (zero-based).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::comod::{solve_congruences, CoinvSetting};
use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational, RationalMatrix, SparseVec};
use crate::fpquot::Certification;
use crate::freealg::{degree_basis, FreeElement, Word};
use crate::hopf::HopfPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `β(e_a) = Σ_b h_{ab} ⊗ e_b`
    Left,
    /// `α(e_a) = Σ_b e_b ⊗ h_{ab}`
    Right,
}

/// A comodule with basis `e_0 … e_{dim−1}` and coaction coefficients `h_{ab}`.
#[derive(Clone, Debug)]
pub struct ComoduleSpace {
    hopf: Arc<HopfPresentation>,
    side: Side,
    label: String,
    /// Row `a` lists the nonzero `(b, h_{ab})`.
    coaction: Vec<Vec<(usize, FreeElement)>>,
}

impl ComoduleSpace {
    pub fn unit(hopf: &Arc<HopfPresentation>, side: Side) -> Self {
        ComoduleSpace {
            hopf: hopf.clone(),
            side,
            label: "I".into(),
            coaction: vec![vec![(0, FreeElement::one(hopf.algebra()))]],
        }
    }

    fn fundamental(hopf: &Arc<HopfPresentation>, side: Side) -> Self {
        let t = hopf.t();
        let g = hopf.algebra();
        let coaction = (1..=t)
            .map(|a| {
                (1..=t)
                    .map(|b| {
                        let l = if side == Side::Left { hopf.u(a, b) } else { hopf.u(b, a) };
                        (b - 1, FreeElement::generator(g, l))
                    })
                    .collect()
            })
            .collect();
        let label = if side == Side::Left { "U_l" } else { "U_r" };
        ComoduleSpace { hopf: hopf.clone(), side, label: label.into(), coaction }
    }

    /// `β(e_i) = Σ_j u_{ij} ⊗ e_j`.
    pub fn u_left(hopf: &Arc<HopfPresentation>) -> Self {
        Self::fundamental(hopf, Side::Left)
    }

    /// `α(e_i) = Σ_j e_j ⊗ u_{ji}`.
    pub fn u_right(hopf: &Arc<HopfPresentation>) -> Self {
        Self::fundamental(hopf, Side::Right)
    }

    pub fn dim(&self) -> usize {
        self.coaction.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn hopf(&self) -> &Arc<HopfPresentation> {
        &self.hopf
    }

    pub fn coaction(&self) -> &[Vec<(usize, FreeElement)>] {
        &self.coaction
    }

    fn compatible(&self, other: &ComoduleSpace) -> Result<()> {
        if !Arc::ptr_eq(&self.hopf, &other.hopf) || self.side != other.side {
            return Err(Error::Precondition(format!("{} and {} are comodules of different kinds", self.label, other.label)));
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[&ComoduleSpace]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        let mut coaction = Vec::new();
        let mut offset = 0;
        for p in parts {
            first.compatible(p)?;
            coaction.extend(p.coaction.iter().map(|row| row.iter().map(|(b, h)| (b + offset, h.clone())).collect()));
            offset += p.dim();
        }
        let label = parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join("+");
        Ok(ComoduleSpace { hopf: first.hopf.clone(), side: first.side, label, coaction })
    }

    /// `n` copies of `self`.
    pub fn multiple(&self, n: usize) -> Result<Self> {
        let mut s = Self::direct_sum(&vec![self; n.max(1)])?;
        if n == 0 {
            s.coaction.clear();
        }
        s.label = format!("{}^{n}", self.label);
        Ok(s)
    }

    /// Coefficients multiply as `h_{ab} h′_{a′b′}` for either side.
    pub fn tensor(&self, other: &ComoduleSpace) -> Result<Self> {
        self.compatible(other)?;
        let d2 = other.dim();
        let mut coaction = Vec::with_capacity(self.dim() * d2);
        for row in &self.coaction {
            for row2 in &other.coaction {
                let mut out = Vec::with_capacity(row.len() * row2.len());
                for (b, h) in row {
                    for (b2, h2) in row2 {
                        out.push((b * d2 + b2, h * h2));
                    }
                }
                coaction.push(out);
            }
        }
        Ok(ComoduleSpace { hopf: self.hopf.clone(), side: self.side, label: format!("({})⊗({})", self.label, other.label), coaction })
    }

    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        let mut acc = Self::unit(&self.hopf, self.side);
        for _ in 0..n {
            acc = acc.tensor(self)?;
        }
        acc.label = format!("({})^⊗{n}", self.label);
        Ok(acc)
    }

    /// Dual space with `β*(f_a) = Σ_b S(h_{ba}) ⊗ f_b`, so that evaluation
    /// `e_a ⊗ f_b ↦ δ_{ab}` is a comodule map. Left comodules only.
    pub fn dual(&self) -> Result<Self> {
        if self.side != Side::Left {
            return Err(Error::Precondition("duals are built for left comodules".into()));
        }
        let mut coaction = vec![Vec::new(); self.dim()];
        for (b, row) in self.coaction.iter().enumerate() {
            for (a, h) in row {
                coaction[*a].push((b, self.hopf.antipode(h)?));
            }
        }
        for row in &mut coaction {
            row.sort_by_key(|(b, _)| *b);
        }
        Ok(ComoduleSpace { hopf: self.hopf.clone(), side: Side::Left, label: format!("({})*", self.label), coaction })
    }

    /// Coassociativity on the basis, exactly in the free cover.
    pub fn is_coassociative(&self) -> bool {
        type Key = (Word, Word, usize);
        let mut ok = true;
        for row in &self.coaction {
            let mut lhs: BTreeMap<Key, Rational> = BTreeMap::new();
            let mut rhs: BTreeMap<Key, Rational> = BTreeMap::new();
            for (b, h) in row {
                for ((h1, h2), c) in self.hopf.delta(h).unwrap().terms() {
                    *lhs.entry((h1.clone(), h2.clone(), *b)).or_default() += c;
                }
                for (c_idx, h2) in &self.coaction[*b] {
                    let (first, second) = match self.side {
                        Side::Left => (h, h2),
                        Side::Right => (h2, h),
                    };
                    for (w1, c1) in first.terms() {
                        for (w2, c2) in second.terms() {
                            *rhs.entry((w1.clone(), w2.clone(), *c_idx)).or_default() += &(c1 * c2);
                        }
                    }
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            rhs.retain(|_, c| !c.is_zero());
            ok &= lhs == rhs;
        }
        ok
    }

    pub fn is_counital(&self) -> bool {
        self.coaction.iter().enumerate().all(|(a, row)| {
            let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
            for (b, h) in row {
                *v.entry(*b).or_default() += &self.hopf.counit(h);
            }
            v.retain(|_, c| !c.is_zero());
            v.len() == 1 && v.get(&a).is_some_and(Rational::is_one)
        })
    }

    /// `e` such that `u ↦ zI, v ↦ z⁻¹I` sends the coaction to `z^e · id`.
    pub fn specialized_degree(&self) -> Option<i64> {
        let mut exp = None;
        for (a, row) in self.coaction.iter().enumerate() {
            for (b, h) in row {
                let l = self.hopf.grading_specialize(h);
                if l.is_zero() {
                    continue;
                }
                if *b != a || l.terms().len() != 1 {
                    return None;
                }
                let (&e, c) = l.terms().iter().next().unwrap();
                if !c.is_one() || exp.is_some_and(|x| x != e) {
                    return None;
                }
                exp = Some(e);
            }
        }
        exp
    }
}

/// A linear map between comodules; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub source: ComoduleSpace,
    pub target: ComoduleSpace,
    pub matrix: RationalMatrix,
}

/// The elements `Σ_c T_{ca} h^W_{cd} − Σ_b T_{db} h^V_{ab}` that must vanish
/// for `T : V → W` to commute with the coactions, as linear forms in `T`.
/// Unknown `(c, a)` has index `c · dim V + a`.
fn morphism_equations(source: &ComoduleSpace, target: &ComoduleSpace) -> Vec<Vec<(usize, FreeElement)>> {
    let dv = source.dim();
    let dw = target.dim();
    let mut eqs: Vec<BTreeMap<usize, FreeElement>> = vec![BTreeMap::new(); dv * dw];
    let zero = || FreeElement::zero(source.hopf.algebra());
    for a in 0..dv {
        for (c, row) in target.coaction.iter().enumerate() {
            for (d, h) in row {
                let e = eqs[a * dw + d].entry(c * dv + a).or_insert_with(zero);
                e.add_scaled(&Rational::one(), h).unwrap();
            }
        }
        for (b, h) in &source.coaction[a] {
            for d in 0..dw {
                let e = eqs[a * dw + d].entry(d * dv + b).or_insert_with(zero);
                e.add_scaled(&-Rational::one(), h).unwrap();
            }
        }
    }
    eqs.into_iter().map(|m| m.into_iter().collect()).collect()
}

/// Whether `t : source → target` is certified to be a comodule map at truncation `d`.
pub fn is_morphism(source: &ComoduleSpace, target: &ComoduleSpace, t: &RationalMatrix, d: usize) -> Result<Certification> {
    source.compatible(target)?;
    if t.nrows() != target.dim() || t.ncols() != source.dim() {
        return Err(Error::DimensionMismatch { expected: target.dim() * source.dim(), found: t.nrows() * t.ncols() });
    }
    let q = source.hopf.quotient(d)?;
    let coeffs = t.flatten();
    let checks = crate::par::map(&morphism_equations(source, target), |eq| -> Result<bool> {
        let mut e = FreeElement::zero(source.hopf.algebra());
        for (u, h) in eq {
            let c = coeffs.get(*u);
            if !c.is_zero() {
                e.add_scaled(&c, h)?;
            }
        }
        Ok(q.is_zero_mod(&e)?.is_certified())
    });
    for c in checks {
        if !c? {
            return Ok(Certification::NotCertified);
        }
    }
    Ok(Certification::CertifiedZero)
}

/// Basis of the maps `source → target` certified to be comodule maps at truncation `d`.
pub fn intertwiners(source: &ComoduleSpace, target: &ComoduleSpace, d: usize) -> Result<Vec<Intertwiner>> {
    source.compatible(target)?;
    let q = source.hopf.quotient(d.max(source.hopf.presentation().max_relation_degree()))?;
    let space = solve_congruences(&q, source.dim() * target.dim(), &morphism_equations(source, target))?;
    space
        .basis_vectors()
        .iter()
        .map(|v| {
            Ok(Intertwiner {
                source: source.clone(),
                target: target.clone(),
                matrix: RationalMatrix::unflatten(target.dim(), source.dim(), v)?,
            })
        })
        .collect()
}

/// `Hom((Uᵐ)^{⊗i}, (Uⁿ)^{⊗j})` for `U = U_l`, certified at truncation `d ≥ i + j`.
pub fn intertwiner_space(hopf: &Arc<HopfPresentation>, m: usize, n: usize, i: usize, j: usize, d: usize) -> Result<Vec<Intertwiner>> {
    if d < i + j {
        return Err(Error::TruncationTooSmall { needed: i + j, got: d });
    }
    let u = ComoduleSpace::u_left(hopf);
    let source = u.multiple(m)?.tensor_power(i)?;
    let target = u.multiple(n)?.tensor_power(j)?;
    intertwiners(&source, &target, d)
}

/// Exact vanishing of `Hom(V, W)` when the specialized coactions are
/// `z^e·id` and `z^f·id` with `e ≠ f`. Returns `(e, f)`.
pub fn hom_vanishing(source: &ComoduleSpace, target: &ComoduleSpace) -> Option<(i64, i64)> {
    match (source.specialized_degree(), target.specialized_degree()) {
        (Some(e), Some(f)) if e != f => Some((e, f)),
        _ => None,
    }
}

/// Evaluation and coevaluation for a left comodule and its dual.
#[derive(Clone, Debug)]
pub struct DualityData {
    pub space: ComoduleSpace,
    pub dual: ComoduleSpace,
    /// `V ⊗ V* → I`, a `1 × D²` matrix.
    pub e: RationalMatrix,
    /// `I → V* ⊗ V`, a `D² × 1` matrix.
    pub d: RationalMatrix,
}

impl DualityData {
    pub fn new(space: &ComoduleSpace) -> Result<Self> {
        let dual = space.dual()?;
        let n = space.dim();
        let e = RationalMatrix::from_triplets(1, n * n, (0..n).map(|a| (0, a * n + a, Rational::one())).collect())?;
        let d = RationalMatrix::from_triplets(n * n, 1, (0..n).map(|a| (a * n + a, 0, Rational::one())).collect())?;
        Ok(DualityData { space: space.clone(), dual, e, d })
    }

    /// `(e_n, d_n)` for `V^{⊗n}` and `V*^{⊗n}`:
    /// `e_n = e ∘ (1 ⊗ e_{n−1} ⊗ 1)` and `d_n = (1 ⊗ d ⊗ 1) ∘ d_{n−1}`.
    pub fn power(&self, n: usize) -> (RationalMatrix, RationalMatrix) {
        let dim = self.space.dim();
        let mut e_n = RationalMatrix::identity(1);
        let mut d_n = RationalMatrix::identity(1);
        for k in 0..n {
            let id = RationalMatrix::identity(dim);
            e_n = self.e.mul(&id.kron(&e_n).kron(&id)).unwrap();
            let idk = RationalMatrix::identity(dim.pow(k as u32));
            d_n = idk.kron(&self.d).kron(&idk).mul(&d_n).unwrap();
        }
        (e_n, d_n)
    }

    /// `(e_n ⊗ 1)(1 ⊗ d_n) = 1` and `(1 ⊗ e_n)(d_n ⊗ 1) = 1` on `V^{⊗n}`.
    pub fn snakes_hold(&self, n: usize) -> bool {
        let (e_n, d_n) = self.power(n);
        let id = RationalMatrix::identity(self.space.dim().pow(n as u32));
        let first = e_n.kron(&id).mul(&id.kron(&d_n)).unwrap();
        let second = id.kron(&e_n).mul(&d_n.kron(&id)).unwrap();
        first == id && second == id
    }

    /// Comodule-map certification of `e_n` and `d_n` at truncation `trunc`.
    pub fn morphisms_certified(&self, n: usize, trunc: usize) -> Result<(Certification, Certification)> {
        let (e_n, d_n) = self.power(n);
        let x = self.space.tensor_power(n)?;
        let xs = self.dual.tensor_power(n)?;
        let unit = ComoduleSpace::unit(self.space.hopf(), Side::Left);
        let e_ok = is_morphism(&x.tensor(&xs)?, &unit, &e_n, trunc)?;
        let d_ok = is_morphism(&unit, &xs.tensor(&x)?, &d_n, trunc)?;
        Ok((e_ok, d_ok))
    }
}

/// Duality data for `U_l`, with snake identities verified for `n ≤ 3`.
pub fn build_duality(hopf: &Arc<HopfPresentation>) -> Result<DualityData> {
    let data = DualityData::new(&ComoduleSpace::u_left(hopf))?;
    for n in 1..=3 {
        if !data.snakes_hold(n) {
            return Err(Error::Internal(format!("snake identity fails for n = {n}")));
        }
    }
    Ok(data)
}

/// `u_j ∘ p_i : Uᵐ → Uⁿ` for the letter `x_{ij}`.
fn psi_letter(m: usize, n: usize, t: usize, i: usize, j: usize) -> RationalMatrix {
    let triplets = (0..t).map(|a| ((j - 1) * t + a, (i - 1) * t + a, Rational::one())).collect();
    RationalMatrix::from_triplets(n * t, m * t, triplets).unwrap()
}

/// `(u_{j₁} ⊗ ⋯ ⊗ u_{jₖ}) ∘ (p_{i₁} ⊗ ⋯ ⊗ p_{iₖ})` for `w = x_{i₁j₁}⋯x_{iₖjₖ}`.
pub fn psi(setting: &CoinvSetting, w: &Word) -> RationalMatrix {
    let (m, n, t) = (setting.m(), setting.n(), setting.t());
    let mut acc = RationalMatrix::identity(1);
    for &l in w.letters() {
        let (_, i, j) = setting.theta.x.describe(l);
        acc = acc.kron(&psi_letter(m, n, t, i, j));
    }
    acc
}

/// Morphism `(Uᵐ)^{⊗k} → (Uⁿ)^{⊗k}` attached to a coinvariant of bidegree `(k,k)`.
///
/// `y_{ij} ↦ v_i(e_j)*` (words reversed, since `(X⊗Y)* ≅ Y*⊗X*`) and
/// `z_{ij} ↦ u_j(e_i)` give an element `f ∈ X* ⊗ Z`, which is sent to
/// `(e_k ⊗ 1_Z) ∘ (1_X ⊗ f)`.
pub fn coinv_to_hom(setting: &CoinvSetting, coords: &SparseVec, k: usize, d: usize) -> Result<Intertwiner> {
    let basis = setting.theta.bidegree_basis(k, k);
    let x = basis.element(coords);
    if !setting.is_coinvariant(&x, d)?.is_certified() {
        return Err(Error::NotCoinvariant);
    }
    let (m, n, t) = (setting.m(), setting.n(), setting.t());
    let dm = m * t;
    let dn = n * t;
    let u = ComoduleSpace::u_left(&setting.hopf);
    let duality = DualityData::new(&u.multiple(m)?)?;
    let source = duality.space.tensor_power(k)?;
    let target = u.multiple(n)?.tensor_power(k)?;
    let dx = dm.pow(k as u32);
    let dz = dn.pow(k as u32);

    let mut f = Vec::new();
    for ((a, b), c) in x.terms() {
        let mut xs_idx = 0;
        for &l in a.letters().iter().rev() {
            let (_, i, j) = setting.theta.y.describe(l);
            xs_idx = xs_idx * dm + (i - 1) * t + (j - 1);
        }
        let mut z_idx = 0;
        for &l in b.letters() {
            let (_, i, j) = setting.theta.z.describe(l);
            z_idx = z_idx * dn + (j - 1) * t + (i - 1);
        }
        f.push((xs_idx * dz + z_idx, 0, c.clone()));
    }
    let f = RationalMatrix::from_triplets(dx * dz, 1, f)?;
    let (e_k, _) = duality.power(k);
    let lhs = e_k.kron(&RationalMatrix::identity(dz));
    let rhs = RationalMatrix::identity(dx).kron(&f);
    let matrix = lhs.mul(&rhs)?;
    Ok(Intertwiner { source, target, matrix })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub d: usize,
    pub end_u_dim: usize,
    pub words: usize,
    pub equalities: usize,
    /// Rank of the `ψ(w)` over all degree-`k` words.
    pub psi_rank: usize,
    pub psi_independent: bool,
    pub mismatches: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.end_u_dim == 1 && self.psi_independent && self.mismatches.is_empty() && self.equalities == self.words
    }
}

/// `coinv_to_hom(θ(w)) = ψ(w)` for every degree-`k` word `w`, after checking
/// that `End(U_l)` is one-dimensional.
pub fn main_correspondence_check(setting: &CoinvSetting, k: usize, d: usize) -> Result<CorrespondenceReport> {
    if d < 2 * k {
        return Err(Error::TruncationTooSmall { needed: 2 * k, got: d });
    }
    let u = ComoduleSpace::u_left(&setting.hopf);
    let end_u_dim = intertwiners(&u, &u, d.max(2))?.len();
    let words = degree_basis(&setting.theta.x, k);
    let basis = setting.theta.bidegree_basis(k, k);
    let mut mismatches = Vec::new();
    let mut equalities = 0;
    let mut psis = Vec::with_capacity(words.len());
    if end_u_dim == 1 {
        let outcomes = crate::par::map(&words, |w| -> Result<(RationalMatrix, bool)> {
            let p = psi(setting, w);
            let h = coinv_to_hom(setting, &basis.coords(&setting.theta.theta_word(w)), k, d)?;
            let eq = h.matrix == p;
            Ok((p, eq))
        });
        for (w, o) in words.iter().zip(outcomes) {
            let (p, eq) = o?;
            if eq {
                equalities += 1;
            } else {
                mismatches.push(setting.theta.x.format_word(w));
            }
            psis.push(p.flatten());
        }
    } else {
        mismatches.push(format!("dim End(U) = {end_u_dim}"));
    }
    let cols = (setting.n() * setting.t()).pow(k as u32) * (setting.m() * setting.t()).pow(k as u32);
    let psi_rank = rank(&RationalMatrix::from_rows(cols, psis)?);
    Ok(CorrespondenceReport {
        m: setting.m(),
        n: setting.n(),
        t: setting.t(),
        k,
        d,
        end_u_dim,
        words: words.len(),
        equalities,
        psi_rank,
        psi_independent: psi_rank == words.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_hf, FMatrix};

    fn hopf(f: FMatrix) -> Arc<HopfPresentation> {
        Arc::new(build_hf(&f).unwrap())
    }

    #[test]
    fn fundamental_comodules_are_comodules() {
        let h = hopf(FMatrix::jordan(2).unwrap());
        for s in [ComoduleSpace::u_left(&h), ComoduleSpace::u_right(&h)] {
            assert!(s.is_coassociative() && s.is_counital());
            let p = s.tensor_power(2).unwrap();
            assert!(p.is_coassociative() && p.is_counital());
            let sum = ComoduleSpace::direct_sum(&[&s, &p]).unwrap();
            assert!(sum.is_coassociative() && sum.is_counital());
        }
        let dual = ComoduleSpace::u_left(&h).dual().unwrap();
        assert!(dual.is_coassociative() && dual.is_counital());
        assert!(ComoduleSpace::u_right(&h).dual().is_err());
    }

    #[test]
    fn end_u_is_scalars() {
        let h = hopf(FMatrix::identity(2).unwrap());
        let maps = intertwiner_space(&h, 1, 1, 1, 1, 4).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].matrix, RationalMatrix::identity(2));
    }

    #[test]
    fn hom_to_u_from_u2() {
        let h = hopf(FMatrix::identity(1).unwrap());
        assert_eq!(intertwiner_space(&h, 2, 1, 1, 1, 2).unwrap().len(), 2);
    }

    #[test]
    fn off_diagonal_hom_vanishes() {
        let h = hopf(FMatrix::identity(2).unwrap());
        let u = ComoduleSpace::u_left(&h);
        assert_eq!(hom_vanishing(&u, &u.tensor_power(2).unwrap()), Some((1, 2)));
        assert!(intertwiner_space(&h, 1, 1, 1, 2, 3).unwrap().is_empty());
        assert!(intertwiner_space(&h, 1, 1, 1, 2, 2).is_err());
    }

    #[test]
    fn duality_snakes_and_morphisms() {
        for f in [FMatrix::identity(1).unwrap(), FMatrix::identity(2).unwrap(), FMatrix::jordan(2).unwrap()] {
            let data = build_duality(&hopf(f)).unwrap();
            let (e, d) = data.morphisms_certified(1, 4).unwrap();
            assert!(e.is_certified() && d.is_certified());
        }
        let data = build_duality(&hopf(FMatrix::identity(1).unwrap())).unwrap();
        assert_eq!(data.e, RationalMatrix::identity(1));
        assert_eq!(data.d, RationalMatrix::identity(1));
    }

    #[test]
    fn psi_examples() {
        let s = CoinvSetting::new(1, 1, &FMatrix::identity(2).unwrap()).unwrap();
        let x11 = s.theta.x.letter(1, 1);
        assert_eq!(psi(&s, &Word::from_letters(&[x11, x11])), RationalMatrix::identity(4));
        let s = CoinvSetting::new(2, 2, &FMatrix::identity(2).unwrap()).unwrap();
        let p = psi(&s, &Word::letter(s.theta.x.letter(1, 1)));
        assert_eq!((p.nrows(), p.ncols(), p.nnz()), (4, 4, 2));
        let words = degree_basis(&s.theta.x, 2);
        let mut seen = std::collections::HashSet::new();
        for w in &words {
            for (r, row) in psi(&s, w).rows().iter().enumerate() {
                for (c, _) in row.iter() {
                    assert!(seen.insert((r, c)), "supports overlap");
                }
            }
        }
    }

    #[test]
    fn psi_multiplicative() {
        let s = CoinvSetting::new(2, 3, &FMatrix::identity(2).unwrap()).unwrap();
        let a = Word::letter(s.theta.x.letter(1, 3));
        let b = Word::letter(s.theta.x.letter(2, 1));
        assert_eq!(psi(&s, &a.concat(&b)), psi(&s, &a).kron(&psi(&s, &b)));
    }

    #[test]
    fn coinv_to_hom_examples() {
        let s = CoinvSetting::new(1, 1, &FMatrix::identity(1).unwrap()).unwrap();
        let h = coinv_to_hom(&s, &SparseVec::unit(0), 0, 0).unwrap();
        assert_eq!(h.matrix, RationalMatrix::identity(1));
        let h = coinv_to_hom(&s, &SparseVec::unit(0), 1, 2).unwrap();
        assert_eq!(h.matrix, RationalMatrix::identity(1));
        let s = CoinvSetting::new(1, 1, &FMatrix::identity(2).unwrap()).unwrap();
        assert!(matches!(coinv_to_hom(&s, &SparseVec::unit(1), 1, 2), Err(Error::NotCoinvariant)));
    }

    #[test]
    fn correspondence_examples() {
        for (m, n, t, k) in [(1, 1, 1, 3), (2, 2, 1, 2), (2, 2, 2, 1)] {
            let s = CoinvSetting::new(m, n, &FMatrix::identity(t).unwrap()).unwrap();
            let r = main_correspondence_check(&s, k, 2 * k).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.equalities, (m * n).pow(k as u32));
        }
    }
}
