use std::sync::Arc;

use coinv_core::exactlin::Rational;
use coinv_core::fpquot::{Certification, Presentation, TruncatedQuotient};
use coinv_core::freealg::{degree_basis, theta_matrix, FreeElement, GeneratorSet, ThetaSetting, Word};
use coinv_core::hopf::{build_hf, FMatrix, HopfPresentation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, letters: usize, degree: usize) -> Word {
    let ls: Vec<u16> = (0..degree).map(|_| rng.gen_range(0..letters) as u16).collect();
    Word::from_letters(&ls)
}

fn random_element(rng: &mut ChaCha8Rng, g: &Arc<GeneratorSet>, max_degree: usize) -> FreeElement {
    let mut x = FreeElement::zero(g);
    for _ in 0..rng.gen_range(1..=4) {
        let deg = rng.gen_range(0..=max_degree);
        let c = Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        x.add_term(random_word(rng, g.len(), deg), &c);
    }
    x
}

/// `Σ c · a r b` with `deg a + deg r + deg b ≤ d`.
fn random_ideal_element(rng: &mut ChaCha8Rng, p: &Presentation, d: usize) -> FreeElement {
    let g = p.generators();
    let mut x = FreeElement::zero(g);
    for _ in 0..rng.gen_range(1..=3) {
        let r = &p.relations()[rng.gen_range(0..p.relations().len())];
        let room = d - r.degree().unwrap();
        let da = rng.gen_range(0..=room);
        let db = rng.gen_range(0..=room - da);
        let a = FreeElement::word(g, random_word(rng, g.len(), da));
        let b = FreeElement::word(g, random_word(rng, g.len(), db));
        let c = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        x.add_scaled(&c, &(&(&a * r) * &b)).unwrap();
    }
    x
}

fn hopf_cases() -> Vec<HopfPresentation> {
    vec![
        build_hf(&FMatrix::identity(1).unwrap()).unwrap(),
        build_hf(&FMatrix::identity(2).unwrap()).unwrap(),
        build_hf(&FMatrix::diag(&[Rational::from_int(1), Rational::from_int(2)]).unwrap()).unwrap(),
        build_hf(&FMatrix::jordan(2).unwrap()).unwrap(),
    ]
}

#[test]
fn hundred_ideal_elements_certify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for h in hopf_cases() {
        let q = h.quotient(4).unwrap();
        for _ in 0..100 {
            let x = random_ideal_element(&mut rng, h.presentation(), 4);
            assert_eq!(q.is_zero_mod(&x).unwrap(), Certification::CertifiedZero, "{x}");
            assert!(h.grading_specialize(&x).is_zero());
        }
    }
}

#[test]
fn theta_ranks_are_full() {
    for (m, n, t, kmax) in [(1, 1, 1, 4), (2, 1, 1, 3), (2, 2, 1, 3), (1, 1, 2, 3), (2, 2, 2, 2), (3, 2, 2, 2)] {
        for k in 0..=kmax {
            let c = theta_matrix(m, n, t, k).unwrap();
            assert_eq!(c.rank, (m * n).pow(k as u32), "({m},{n},{t}) k={k}");
        }
    }
}

#[test]
fn degree_basis_counts() {
    for (r, c) in [(1, 1), (2, 1), (2, 3)] {
        let g = GeneratorSet::matrix("x", r, c).unwrap();
        for k in 0..=4 {
            assert_eq!(degree_basis(&g, k).len(), (r * c).pow(k as u32));
        }
    }
}

/// Words of degree `≤ d − 2` in the quotient basis do not change between
/// truncations `d − 1` and `d`.
#[test]
fn stabilization_probe() {
    let low = |q: &TruncatedQuotient, e: usize| -> Vec<Word> {
        q.quotient_basis().iter().filter(|w| w.degree() <= e).cloned().collect()
    };
    let t1 = build_hf(&FMatrix::identity(1).unwrap()).unwrap();
    for d in 3..=6 {
        let a = TruncatedQuotient::build(t1.presentation(), d - 1).unwrap();
        let b = TruncatedQuotient::build(t1.presentation(), d).unwrap();
        assert_eq!(low(&a, d - 2), low(&b, d - 2), "t=1 d={d}");
    }
    for h in &hopf_cases()[1..] {
        for d in [4, 5, 6] {
            for z in [0, 1] {
                let (qa, qb) = (h.quotient(d - 1).unwrap(), h.quotient(d).unwrap());
                for wt in weights_with_z(h, z, d) {
                    let a = qa.component(&wt).unwrap();
                    let b = qb.component(&wt).unwrap();
                    assert_eq!(low(&a, d - 2), low(&b, d - 2), "{} d={d} weight={wt:?}", h.f());
                }
            }
        }
    }
}

/// Weight vectors of the presentation's grading with first coordinate `z`,
/// as realised by words of degree `≤ d`.
fn weights_with_z(h: &HopfPresentation, z: i32, d: usize) -> Vec<Vec<i32>> {
    let g = h.presentation().grading().unwrap();
    let mut out = std::collections::BTreeSet::new();
    let letters = h.algebra().len();
    let mut frontier = vec![Word::empty()];
    for _ in 0..d.min(3) {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..letters as u16 {
                next.push(w.concat(&Word::letter(l)));
            }
        }
        for w in &next {
            let wt = g.word_weight(w);
            if wt[0] == z {
                out.insert(wt);
            }
        }
        frontier = next;
    }
    out.into_iter().take(3).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = ThetaSetting::new(2, 2, 2).unwrap();
        let a = random_element(&mut rng, &s.x, 2);
        let b = random_element(&mut rng, &s.x, 2);
        let lhs = s.theta.apply(&(&a * &b)).unwrap().into_tensor().unwrap();
        let rhs = s.theta.apply(&a).unwrap().into_tensor().unwrap().mul(&s.theta.apply(&b).unwrap().into_tensor().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_product_adds_bidegrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = ThetaSetting::new(2, 2, 2).unwrap();
        let wa = degree_basis(&s.x, 1);
        let x = s.theta_word(&wa[rng.gen_range(0..wa.len())]);
        let y = s.theta_word(&random_word(&mut rng, s.x.len(), 2));
        let p = x.mul(&y).unwrap();
        prop_assert_eq!(p.bidegrees(), vec![(3, 3)]);
    }

    #[test]
    fn random_ideal_elements_certify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = build_hf(&FMatrix::jordan(2).unwrap()).unwrap();
        let q = h.quotient(4).unwrap();
        let x = random_ideal_element(&mut rng, h.presentation(), 4);
        prop_assert_eq!(q.is_zero_mod(&x).unwrap(), Certification::CertifiedZero);
    }

    #[test]
    fn certification_and_ideal_dimension_are_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = GeneratorSet::matrix("g", 1, 2).unwrap();
        let rels: Vec<FreeElement> = (0..2)
            .map(|_| {
                let mut r = random_element(&mut rng, &g, 2);
                r.add_term(Word::from_letters(&[0, 1]), &Rational::one());
                r
            })
            .filter(|r| !r.is_zero())
            .collect();
        let p = Arc::new(Presentation::new(&g, rels).unwrap());
        let probes: Vec<FreeElement> = (0..6).map(|_| random_element(&mut rng, &g, 3)).collect();
        let mut prev: Option<(usize, Vec<bool>)> = None;
        for d in 3..=5 {
            let q = TruncatedQuotient::build(&p, d).unwrap();
            let certs: Vec<bool> = probes.iter().map(|x| q.is_zero_mod(x).unwrap().is_certified()).collect();
            if let Some((dim, before)) = &prev {
                prop_assert!(*dim <= q.ideal_dim());
                for (b, a) in before.iter().zip(&certs) {
                    prop_assert!(!*b || *a);
                }
            }
            prev = Some((q.ideal_dim(), certs));
        }
    }

    #[test]
    fn counit_antipode_and_specialization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for h in hopf_cases() {
            let g = h.algebra().clone();
            let a = random_element(&mut rng, &g, 3);
            let b = random_element(&mut rng, &g, 3);
            prop_assert_eq!(h.counit(&h.antipode(&a).unwrap()), h.counit(&a));
            let sab = h.antipode(&(&a * &b)).unwrap();
            let sbsa = &h.antipode(&b).unwrap() * &h.antipode(&a).unwrap();
            prop_assert_eq!(sab, sbsa);
            prop_assert_eq!(h.grading_specialize(&(&a * &b)), h.grading_specialize(&a).mul(&h.grading_specialize(&b)));
        }
    }
}

#[test]
fn relations_specialize_to_zero_and_delta_is_coassociative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 1..=3 {
        for _ in 0..5 {
            let h = build_hf(&FMatrix::random(t, &mut rng)).unwrap();
            assert_eq!(h.relation_entries().len(), 4 * t * t);
            for e in h.relation_entries() {
                assert!(h.grading_specialize(&e.element).is_zero());
                assert!(h.counit(&e.element).is_zero());
            }
            for l in 0..h.algebra().len() as u16 {
                assert!(coinv_core::hopf::coassociative_on(&h, &FreeElement::generator(h.algebra(), l)));
            }
        }
    }
}
