//! Commutative invariant theory of `GL_t` acting on `M_{m,t} × M_{t,n}` by
//! `(A, B) ↦ (A g⁻¹, g B)`, checked degree by degree over ℚ.
//!
//! Invariance is tested through the polarization derivations `E_{ab}`, the
//! infinitesimal form of the action; over a field of characteristic zero
//! this is equivalent to invariance under the connected group `GL_t`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::exactlin::{kernel_basis, Rational, RationalMatrix, SparseVec, Subspace};

/// Exponent vector.
pub type Monomial = Vec<u16>;

/// All monomials of total degree `k` in `nvars` variables, in descending lex order.
pub fn monomials(nvars: usize, k: usize) -> Vec<Monomial> {
    fn rec(pos: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, k, &mut vec![0; nvars], &mut out);
    out
}

/// Polynomial over ℚ as a map from exponent vectors to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = vec![0; nvars];
        m[v] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, &Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Poly) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(c * x));
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(m, &(x * y));
            }
        }
        out
    }

    pub fn pow(&self, e: u16) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coordinates in a monomial basis; `None` if a term falls outside it.
    pub fn coords(&self, index: &HashMap<Monomial, usize>) -> Option<SparseVec> {
        let mut entries = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            entries.push((*index.get(m)?, c.clone()));
        }
        Some(SparseVec::from_entries(entries))
    }
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// Variables `X_{ij}` of `O(M_{m,n})` and `Y_{ik}`, `Z_{kj}` of
/// `O(M_{m,t}) ⊗ O(M_{t,n})`, all indexed from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub m: usize,
    pub n: usize,
    pub t: usize,
}

impl PolyRing {
    pub fn new(m: usize, n: usize, t: usize) -> Self {
        PolyRing { m, n, t }
    }

    pub fn x_vars(&self) -> usize {
        self.m * self.n
    }

    pub fn yz_vars(&self) -> usize {
        self.m * self.t + self.t * self.n
    }

    pub fn x(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    pub fn y(&self, i: usize, k: usize) -> usize {
        (i - 1) * self.t + (k - 1)
    }

    pub fn z(&self, k: usize, j: usize) -> usize {
        self.m * self.t + (k - 1) * self.n + (j - 1)
    }

    /// `θ*(X_{ij}) = Σ_k Y_{ik} Z_{kj}`.
    pub fn theta_star_var(&self, i: usize, j: usize) -> Poly {
        let mut p = Poly::zero(self.yz_vars());
        for k in 1..=self.t {
            p.add_scaled(&Rational::one(), &Poly::var(self.yz_vars(), self.y(i, k)).mul(&Poly::var(self.yz_vars(), self.z(k, j))));
        }
        p
    }

    pub fn theta_star_monomial(&self, mono: &Monomial) -> Poly {
        let mut acc = Poly::constant(self.yz_vars(), Rational::one());
        for i in 1..=self.m {
            for j in 1..=self.n {
                let e = mono[self.x(i, j)];
                if e > 0 {
                    acc = acc.mul(&self.theta_star_var(i, j).pow(e));
                }
            }
        }
        acc
    }

    /// `E_{ab}` applied to a variable of the `Y, Z` ring.
    fn derivation_var(&self, a: usize, b: usize, v: usize) -> Poly {
        let nv = self.yz_vars();
        if v < self.m * self.t {
            let (i, c) = (v / self.t + 1, v % self.t + 1);
            if c == b {
                let mut p = Poly::var(nv, self.y(i, a));
                p.terms.values_mut().for_each(|x| *x = -x.clone());
                return p;
            }
        } else {
            let w = v - self.m * self.t;
            let (c, j) = (w / self.n + 1, w % self.n + 1);
            if c == a {
                return Poly::var(nv, self.z(b, j));
            }
        }
        Poly::zero(nv)
    }

    /// `E_{ab}(Y_{ic}) = −δ_{bc} Y_{ia}`, `E_{ab}(Z_{cj}) = δ_{ac} Z_{bj}`,
    /// extended by the Leibniz rule.
    pub fn derivation(&self, a: usize, b: usize, p: &Poly) -> Poly {
        let nv = self.yz_vars();
        let mut out = Poly::zero(nv);
        for (mono, c) in p.terms() {
            for v in 0..nv {
                let e = mono[v];
                if e == 0 {
                    continue;
                }
                let image = self.derivation_var(a, b, v);
                if image.is_zero() {
                    continue;
                }
                let mut rest = mono.clone();
                rest[v] -= 1;
                let mut r = Poly::zero(nv);
                r.add_term(rest, &(c * &Rational::from_int(e as i64)));
                out.add_scaled(&Rational::one(), &r.mul(&image));
            }
        }
        out
    }
}

/// Kernel of `θ*` on degree-`k` polynomials in the `X_{ij}`, in the
/// coordinates of [`monomials`]`(mn, k)`.
pub fn theta_star_kernel(m: usize, n: usize, t: usize, k: usize) -> Subspace {
    let ring = PolyRing::new(m, n, t);
    let xs = monomials(ring.x_vars(), k);
    let yz = monomials(ring.yz_vars(), 2 * k);
    let yz_index = index_of(&yz);
    let cols: Vec<SparseVec> = crate::par::map(&xs, |mono| ring.theta_star_monomial(mono).coords(&yz_index).unwrap());
    // Rows of `as_rows` are images of monomials; the kernel of θ* is the left kernel.
    let as_rows = RationalMatrix::from_rows(yz.len(), cols).unwrap();
    kernel_basis(&as_rows.transpose())
}

/// Image of `θ*` on degree-`k` polynomials, inside total degree `2k` of the `Y, Z` ring.
pub fn theta_star_image(m: usize, n: usize, t: usize, k: usize) -> Subspace {
    let ring = PolyRing::new(m, n, t);
    let yz = monomials(ring.yz_vars(), 2 * k);
    let yz_index = index_of(&yz);
    let cols = crate::par::map(&monomials(ring.x_vars(), k), |mono| ring.theta_star_monomial(mono).coords(&yz_index).unwrap());
    Subspace::from_vectors(yz.len(), cols).unwrap()
}

fn determinant(ring: &PolyRing, rows: &[usize], cols: &[usize]) -> Poly {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(Vec::new(), true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // Inserting at `pos` adds `len − pos` inversions.
                out.push((q, even == ((p.len() - pos) % 2 == 0)));
            }
        }
        out
    }
    let nv = ring.x_vars();
    let mut det = Poly::zero(nv);
    for (p, even) in perms(rows.len()) {
        let mut term = Poly::constant(nv, if even { Rational::one() } else { -Rational::one() });
        for (r, &c) in rows.iter().zip(&p) {
            term = term.mul(&Poly::var(nv, ring.x(*r, cols[c])));
        }
        det.add_scaled(&Rational::one(), &term);
    }
    det
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// All `(t+1) × (t+1)` minors of `(X_{ij})`; empty when `t ≥ min(m, n)`.
pub fn minors(m: usize, n: usize, t: usize) -> Vec<Poly> {
    let ring = PolyRing::new(m, n, t);
    let mut out = Vec::new();
    for rows in subsets(m, t + 1) {
        for cols in subsets(n, t + 1) {
            out.push(determinant(&ring, &rows, &cols));
        }
    }
    out
}

/// Degree-`k` part of the ideal generated by the `(t+1)`-minors.
pub fn minors_component(m: usize, n: usize, t: usize, k: usize) -> Subspace {
    let ring = PolyRing::new(m, n, t);
    let xs = monomials(ring.x_vars(), k);
    let index = index_of(&xs);
    if k < t + 1 {
        return Subspace::zero(xs.len());
    }
    let multipliers = monomials(ring.x_vars(), k - t - 1);
    let mut vectors = Vec::new();
    for det in minors(m, n, t) {
        for mono in &multipliers {
            let mut mp = Poly::zero(ring.x_vars());
            mp.add_term(mono.clone(), &Rational::one());
            vectors.push(det.mul(&mp).coords(&index).unwrap());
        }
    }
    Subspace::from_vectors(xs.len(), vectors).unwrap()
}

/// Joint kernel of all `E_{ab}` on total degree `k` of the `Y, Z` ring.
pub fn glt_invariants(m: usize, n: usize, t: usize, k: usize) -> Subspace {
    let ring = PolyRing::new(m, n, t);
    let basis = monomials(ring.yz_vars(), k);
    let index = index_of(&basis);
    let pairs: Vec<(usize, usize)> = (1..=t).flat_map(|a| (1..=t).map(move |b| (a, b))).collect();
    // Column `c` of each block holds E_{ab}(basis[c]); stack the blocks as rows of the transpose.
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (a, b) in pairs {
        let images = crate::par::map(&basis, |mono| {
            let mut p = Poly::zero(ring.yz_vars());
            p.add_term(mono.clone(), &Rational::one());
            ring.derivation(a, b, &p).coords(&index).unwrap()
        });
        let mut block: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); basis.len()];
        for (c, img) in images.iter().enumerate() {
            for (r, x) in img.iter() {
                block[r].push((c, x.clone()));
            }
        }
        rows.extend(block.into_iter().filter(|r| !r.is_empty()));
    }
    let m = RationalMatrix::from_rows(basis.len(), rows.into_iter().map(SparseVec::from_entries).collect()).unwrap();
    kernel_basis(&m)
}

#[derive(Clone, Debug, Serialize)]
pub struct Fft1Row {
    /// Degree in the `X_{ij}`; invariants are compared in total degree `2k`.
    pub degree: usize,
    pub invariants_dim: usize,
    pub image_dim: usize,
    /// Invariants of odd total degree `2k − 1`, which must vanish.
    pub odd_invariants_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fft1Report {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub rows: Vec<Fft1Row>,
    pub failures: Vec<String>,
}

impl Fft1Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `k ≤ max_degree`: invariants of total degree `2k` equal `Im θ*_k`,
/// and invariants of total degree `2k − 1` are zero.
pub fn fft1_check(m: usize, n: usize, t: usize, max_degree: usize) -> Fft1Report {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for k in 0..=max_degree {
        let inv = glt_invariants(m, n, t, 2 * k);
        let img = theta_star_image(m, n, t, k);
        let odd = if k > 0 { glt_invariants(m, n, t, 2 * k - 1).dim() } else { 0 };
        let equal = inv == img && odd == 0;
        if !equal {
            failures.push(format!(
                "degree {k}: invariants {} vs image {}, odd-degree invariants {odd}",
                inv.dim(),
                img.dim()
            ));
        }
        rows.push(Fft1Row { degree: k, invariants_dim: inv.dim(), image_dim: img.dim(), odd_invariants_dim: odd, equal });
    }
    Fft1Report { m, n, t, rows, failures }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fft2Row {
    pub degree: usize,
    pub kernel_dim: usize,
    pub minors_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fft2Report {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub rows: Vec<Fft2Row>,
    pub failures: Vec<String>,
}

impl Fft2Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `k ≤ max_degree`: `ker θ*_k` equals the degree-`k` part of the minors ideal.
pub fn fft2_check(m: usize, n: usize, t: usize, max_degree: usize) -> Fft2Report {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for k in 0..=max_degree {
        let ker = theta_star_kernel(m, n, t, k);
        let min = minors_component(m, n, t, k);
        let equal = ker == min;
        if !equal {
            failures.push(format!("degree {k}: kernel {} vs minors {}", ker.dim(), min.dim()));
        }
        rows.push(Fft2Row { degree: k, kernel_dim: ker.dim(), minors_dim: min.dim(), equal });
    }
    Fft2Report { m, n, t, rows, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials(3, 2).last().unwrap(), &vec![0, 0, 2]);
        assert_eq!(monomials(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn kernel_examples() {
        let k = theta_star_kernel(2, 2, 1, 2);
        assert_eq!(k.dim(), 1);
        // X11 X22 − X12 X21
        let xs = monomials(4, 2);
        let ix = index_of(&xs);
        let det = SparseVec::from_entries(vec![(ix[&vec![1, 0, 0, 1]], Rational::one()), (ix[&vec![0, 1, 1, 0]], -Rational::one())]);
        assert!(k.contains_sparse(&det).unwrap());
        assert_eq!(theta_star_kernel(2, 2, 2, 3).dim(), 0);
        assert_eq!(theta_star_kernel(3, 3, 2, 3).dim(), 1);
    }

    #[test]
    fn minors_examples() {
        assert_eq!(minors_component(2, 2, 1, 2).dim(), 1);
        assert_eq!(minors_component(2, 2, 1, 3).dim(), 4);
        assert_eq!(minors_component(3, 3, 2, 2).dim(), 0);
        assert!(minors(2, 3, 2).is_empty());
        assert_eq!(minors(3, 3, 1).len(), 9);
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(glt_invariants(2, 2, 1, 2).dim(), 4);
        assert_eq!(glt_invariants(2, 2, 1, 0).dim(), 1);
        assert_eq!(glt_invariants(2, 2, 2, 2).dim(), theta_star_image(2, 2, 2, 1).dim());
    }

    #[test]
    fn fft_reports() {
        let r = fft2_check(2, 2, 1, 4);
        assert!(r.passed());
        let dims: Vec<usize> = r.rows.iter().map(|r| r.kernel_dim).collect();
        assert_eq!(dims, [0, 0, 1, 4, 10]);
        assert!(fft1_check(2, 2, 1, 3).passed());
    }

    #[test]
    fn free_theta_is_injective_where_commutative_is_not() {
        assert_eq!(theta_star_kernel(2, 2, 1, 2).dim(), 1);
        assert_eq!(crate::freealg::theta_matrix(2, 2, 1, 2).unwrap().rank, 16);
    }
}
