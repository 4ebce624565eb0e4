//! Property tests for the algebraic invariants: field axioms on the exact
//! kinds, Kronecker/vec identities, and linearity plus bijectivity of the
//! rearrangement operators.

use proptest::prelude::*;

use kronroot::{
    inverse_rearrange_factor, kth_root_scalar, rank, rearrange_factor, rearrange_sum,
    FieldElement, FieldKind, Matrix, Shape,
};

const Q: FieldKind = FieldKind::Rational;

fn gf(p: u32) -> FieldKind {
    FieldKind::prime_field(p).unwrap()
}

fn rational(den_free: bool) -> impl Strategy<Value = FieldElement> {
    (any::<i32>(), 1i32..=40).prop_map(move |(n, d)| {
        let d = if den_free { d as i64 } else { 1 };
        FieldElement::parse(Q, &format!("{}/{}", n, d)).unwrap()
    })
}

fn int_matrix(kind: FieldKind, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-6i64..=6, rows * cols).prop_map(move |v| {
        Matrix::from_fn(rows, cols, kind, |r, c| {
            FieldElement::from_i64(kind, v[r + c * rows])
        })
        .unwrap()
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(true), b in rational(true), c in rational(true)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), FieldElement::one(Q));
        }
    }

    #[test]
    fn prime_field_axioms(a in 0u64..13, b in 0u64..13, c in 0u64..13) {
        let k = gf(13);
        let (a, b, c) = (
            FieldElement::from_i64(k, a as i64),
            FieldElement::from_i64(k, b as i64),
            FieldElement::from_i64(k, c as i64),
        );
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), FieldElement::one(k));
        }
    }

    #[test]
    fn rational_kth_roots_recover_powers(x in rational(true), k in 1u32..=5) {
        let s = x.pow(k);
        let roots = kth_root_scalar(&s, k);
        // The generating value is among the roots, and every root powers
        // back to s exactly.
        prop_assert!(roots.iter().any(|r| r == &x || r == &(-&x)));
        for r in roots {
            prop_assert_eq!(r.pow(k), s.clone());
        }
    }

    #[test]
    fn vec_unvec_round_trip(m in 1usize..=4, n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = kronroot::testing::TestRng::new(seed);
        let a = kronroot::testing::random_matrix(Q, m, n, &mut rng);
        prop_assert_eq!(a.vec().unvec(m, n).unwrap(), a);
    }

    #[test]
    fn kron_is_associative(a in int_matrix(Q, 2, 2), b in int_matrix(Q, 2, 3), c in int_matrix(Q, 1, 2)) {
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kron_is_bilinear(
        a in int_matrix(Q, 2, 2),
        a2 in int_matrix(Q, 2, 2),
        b in int_matrix(Q, 2, 2),
        alpha in -5i64..=5,
    ) {
        let alpha = FieldElement::from_i64(Q, alpha);
        let lhs = a.scalar_mul(&alpha).unwrap().add(&a2).unwrap().kron(&b).unwrap();
        let rhs = a.kron(&b).unwrap().scalar_mul(&alpha).unwrap()
            .add(&a2.kron(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_product_identity(
        a in int_matrix(Q, 2, 2),
        b in int_matrix(Q, 2, 2),
        c in int_matrix(Q, 2, 2),
        d in int_matrix(Q, 2, 2),
    ) {
        let lhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rearrangement_round_trip_gf3(mat in int_matrix(gf(3), 8, 8), j in 1usize..=3) {
        let shape = Shape::new(2, 2, 3).unwrap();
        let r = rearrange_factor(&mat, shape, j).unwrap();
        prop_assert_eq!(inverse_rearrange_factor(&r, shape, j).unwrap(), mat);
    }

    #[test]
    fn rearrangement_linearity_k2(
        m1 in int_matrix(Q, 4, 4),
        m2 in int_matrix(Q, 4, 4),
        alpha in -5i64..=5,
    ) {
        let shape = Shape::new(2, 2, 2).unwrap();
        let alpha = FieldElement::from_i64(Q, alpha);
        let combo = m1.scalar_mul(&alpha).unwrap().add(&m2).unwrap();
        for j in 1..=2 {
            let lhs = rearrange_factor(&combo, shape, j).unwrap();
            let rhs = rearrange_factor(&m1, shape, j).unwrap().scalar_mul(&alpha).unwrap()
                .add(&rearrange_factor(&m2, shape, j).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let lhs = rearrange_sum(&combo, shape).unwrap();
        let rhs = rearrange_sum(&m1, shape).unwrap().scalar_mul(&alpha).unwrap()
            .add(&rearrange_sum(&m2, shape).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn outer_products_have_rank_at_most_one(
        u in proptest::collection::vec(-6i64..=6, 4),
        v in proptest::collection::vec(-6i64..=6, 3),
    ) {
        let u = Matrix::from_fn(4, 1, Q, |r, _| FieldElement::from_i64(Q, u[r])).unwrap();
        let v = Matrix::from_fn(3, 1, Q, |r, _| FieldElement::from_i64(Q, v[r])).unwrap();
        let m = u.matmul(&v.transpose()).unwrap();
        let r = rank(&m, 0.0);
        prop_assert!(r <= 1);
        prop_assert_eq!(r == 1, !u.is_zero() && !v.is_zero());
    }
}
