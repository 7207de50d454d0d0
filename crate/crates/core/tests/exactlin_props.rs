use coinv_core::exactlin::{kernel_basis, rank, rref, Rational, RationalMatrix, Subspace};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(Rational::zero()),
        2 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q)),
    ]
}

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(rational(), c), r)
            .prop_map(|rows| RationalMatrix::from_dense(&rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(twice.pivot_cols, once.pivot_cols);
    }

    #[test]
    fn rank_of_transpose(m in matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rows_lie_in_row_space(m in matrix()) {
        let s = Subspace::row_space(&m);
        for row in m.to_dense() {
            prop_assert!(s.contains(&row).unwrap());
        }
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.ncols());
        for v in k.basis_vectors() {
            let image = m.mul_vec(&v.to_dense(m.ncols())).unwrap();
            prop_assert!(image.iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.recip() {
            prop_assert!((&a * &inv).is_one());
        }
        let parsed: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }
}
