use ddg_forge_core::matrix::IntMatrix;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |data| IntMatrix::from_vec(rows, cols, data).unwrap())
}

fn square(max: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |n| matrix(n, n, range))
}

proptest! {
    #[test]
    fn kronecker_mixed_product(
        (a, c) in (1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(p, q, r)| (matrix(p, q, 3), matrix(q, r, 3))),
        (b, d) in (1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(p, q, r)| (matrix(p, q, 3), matrix(q, r, 3))),
    ) {
        let lhs = a.kronecker(&b).try_mul(&c.kronecker(&d)).unwrap();
        let rhs = a.try_mul(&c).unwrap().kronecker(&b.try_mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_transpose(a in square(4, 5), b in square(4, 5)) {
        prop_assert_eq!(a.kronecker(&b).transpose(), a.transpose().kronecker(&b.transpose()));
    }

    #[test]
    fn alpha_beta_round_trip(n in 2usize..12, alpha in -50i64..50, beta in -50i64..50) {
        let m = &IntMatrix::identity(n).scale(alpha) + &IntMatrix::ones(n, n).scale(beta);
        prop_assert_eq!(m.detect_alpha_beta().unwrap(), Some((alpha, beta)));
    }

    #[test]
    fn alpha_beta_rejects_perturbation(
        n in 2usize..8, alpha in -9i64..9, beta in -9i64..9, i in 0usize..8, j in 0usize..8, delta in 1i64..4,
    ) {
        let (i, j) = (i % n, j % n);
        let mut m = &IntMatrix::identity(n).scale(alpha) + &IntMatrix::ones(n, n).scale(beta);
        m[(i, j)] += delta;
        // A diagonal hit breaks the constant diagonal, an off-diagonal one breaks symmetry.
        prop_assert_eq!(m.detect_alpha_beta().unwrap(), None);
    }

    #[test]
    fn text_round_trip(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c, 1000))) {
        prop_assert_eq!(IntMatrix::from_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn permutation_is_similarity(m in square(6, 4), seed in any::<u64>()) {
        let n = m.rows();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(k, (s >> 33) as usize % (k + 1));
        }
        let p = IntMatrix::from_fn(n, n, |i, j| i64::from(order[i] == j));
        let expected = p.try_mul(&m).unwrap().try_mul(&p.transpose()).unwrap();
        prop_assert_eq!(m.permuted(&order), expected);
    }

    #[test]
    fn mul_associative(a in matrix(3, 4, 9), b in matrix(4, 2, 9), c in matrix(2, 5, 9)) {
        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn overflow_is_reported() {
    let big = IntMatrix::from_rows(&[[i64::MAX / 2 + 1]]);
    assert!(big.try_add(&big).is_err());
    assert!(big.try_mul(&big).is_err());
}
