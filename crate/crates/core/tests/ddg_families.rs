use ddg_forge_core::ddg::{
    construct_ddg_family, decompose_to_rq, rshcd_recursion, spectrum_factorization_check, verify_ddg, Classification,
    Family, Ps22Variant, RecursionInput,
};
use ddg_forge_core::designs::{hadamard_sylvester, menon_check, rshcd_base, rshcd_of_order, MenonParameters, Sign};
use ddg_forge_core::graphs::Partition;
use ddg_forge_core::matrix::IntMatrix;
use proptest::prelude::*;

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for k in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        order.swap(k, (s >> 33) as usize % (k + 1));
    }
    order
}

fn small_families() -> Vec<Family> {
    let mut out = Vec::new();
    for eps in [Sign::Plus, Sign::Minus] {
        out.push(Family::Multipartite { t: 6, u: 1, eps });
        out.push(Family::Bipartite { u: 1, eps });
        out.push(Family::PairOfCliques { u: 1, delta: eps });
    }
    for variant in [Ps22Variant::A, Ps22Variant::B] {
        out.push(Family::Ps22 { t: 2, variant });
        out.push(Family::Ps22 { t: 6, variant });
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_preserves_parameters(index in 0usize..10, seed in any::<u64>()) {
        let family = small_families()[index];
        let built = construct_ddg_family(family).unwrap();
        let g = built.ddg.graph();
        let order = shuffled(g.n(), seed);
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let classes = built
            .ddg
            .partition()
            .classes()
            .iter()
            .map(|c| c.iter().map(|&x| new_of_old[x]).collect())
            .collect();
        let p = Partition::new(classes, g.n()).unwrap();
        let rec = verify_ddg(&g.relabeled(&order), &p).unwrap();
        prop_assert_eq!(rec.params, family.expected_parameters());
        prop_assert_eq!(rec.classification, built.ddg.classification());
    }
}

#[test]
fn every_small_family_round_trips() {
    for family in small_families() {
        let built = construct_ddg_family(family).unwrap();
        let back = decompose_to_rq(&built.ddg).unwrap();
        assert_eq!(back.r(), built.pair.r(), "{}", family.name());
        assert_eq!(back.q().matrix(), built.pair.q().matrix(), "{}", family.name());
        assert!(spectrum_factorization_check(&built.ddg).unwrap(), "{}", family.name());
    }
}

#[test]
fn families_at_u_two() {
    for eps in [Sign::Plus, Sign::Minus] {
        for family in [
            Family::Multipartite { t: 6, u: 2, eps },
            Family::Bipartite { u: 2, eps },
            Family::PairOfCliques { u: 2, delta: eps },
        ] {
            let built = construct_ddg_family(family).unwrap();
            let expected = family.expected_parameters();
            assert_eq!(built.ddg.params(), expected, "{}", family.name());
            let class = if expected.is_proper() { Classification::Proper } else { Classification::AlmostProper };
            assert_eq!(built.ddg.classification(), class, "{}", family.name());
        }
    }
}

#[test]
fn ps22_parameters() {
    for t in [2usize, 6, 10] {
        let a = construct_ddg_family(Family::Ps22 { t, variant: Ps22Variant::A }).unwrap();
        let t = t as i64;
        let p = a.ddg.params();
        assert_eq!((p.v, p.k, p.lambda1, p.lambda2, p.m, p.n), (8 * t, 4 * t + 2, 6, 2 * t + 2, 4 * t, 2));
    }
}

#[test]
fn bad_family_parameters() {
    assert!(construct_ddg_family(Family::Bipartite { u: 3, eps: Sign::Plus }).is_err());
    assert!(construct_ddg_family(Family::Multipartite { t: 2, u: 1, eps: Sign::Plus }).is_err());
    assert!(construct_ddg_family(Family::Ps22 { t: 4, variant: Ps22Variant::A }).is_err());
}

#[test]
fn recursion_a_on_equal_inputs_is_kronecker() {
    for kind in [Sign::Plus, Sign::Minus] {
        let x = rshcd_of_order(1, kind, Sign::Minus).unwrap();
        let out = rshcd_recursion(RecursionInput::A { h1: &x, h2: &x, h: x.matrix() }).unwrap();
        let k = rshcd_base(Sign::Plus, Sign::Plus);
        assert_eq!(out.matrix(), &k.matrix().kronecker(x.matrix()));
        assert_eq!(out.kind(), kind);
        assert_eq!(out.order(), 16);
    }
}

#[test]
fn recursion_b_on_equal_inputs_is_kronecker() {
    let x = rshcd_of_order(1, Sign::Minus, Sign::Minus).unwrap();
    let h = x.matrix();
    let out = rshcd_recursion(RecursionInput::B { h, h1: h, h2: h }).unwrap();
    let k = IntMatrix::from_rows(&[[1, 1, -1, 1], [1, 1, 1, -1], [-1, 1, 1, 1], [1, -1, 1, 1]]);
    assert_eq!(out.matrix(), &k.kronecker(h));
    assert_eq!(out.kind(), Sign::Minus);
}

#[test]
fn recursions_at_u_two() {
    let h = hadamard_sylvester(4).unwrap();
    for kind in [Sign::Plus, Sign::Minus] {
        let x = rshcd_of_order(2, kind, Sign::Minus).unwrap();
        let out = rshcd_recursion(RecursionInput::A { h1: &x, h2: &x, h: &h }).unwrap();
        assert_eq!((out.order(), out.kind()), (64, kind));
    }
    let cliques = rshcd_of_order(2, Sign::Minus, Sign::Minus).unwrap();
    for reg in [cliques.clone(), cliques.negated()] {
        let out = rshcd_recursion(RecursionInput::B { h: reg.matrix(), h1: cliques.matrix(), h2: cliques.matrix() }).unwrap();
        assert_eq!((out.order(), out.kind()), (64, -Sign::of(reg.row_sum())));
    }
}

#[test]
fn recursion_rejects_bad_inputs() {
    let plus = rshcd_of_order(1, Sign::Plus, Sign::Minus).unwrap();
    let minus = rshcd_of_order(1, Sign::Minus, Sign::Minus).unwrap();
    let h = hadamard_sylvester(2).unwrap();
    assert!(rshcd_recursion(RecursionInput::A { h1: &plus, h2: &minus, h: &h }).is_err());
    let positive_diag = rshcd_of_order(1, Sign::Plus, Sign::Plus).unwrap();
    assert!(rshcd_recursion(RecursionInput::A { h1: &positive_diag, h2: &positive_diag, h: &h }).is_err());
    // Sylvester is not regular.
    assert!(rshcd_recursion(RecursionInput::B { h: &h, h1: minus.matrix(), h2: minus.matrix() }).is_err());
}

#[test]
fn menon_designs() {
    for u in [1usize, 2, 4] {
        for kind in [Sign::Plus, Sign::Minus] {
            for diag in [Sign::Plus, Sign::Minus] {
                let h = rshcd_of_order(u, kind, diag).unwrap();
                let (u, d) = (u as i64, Sign::of(h.row_sum()).value());
                assert_eq!(
                    menon_check(&h).unwrap(),
                    MenonParameters { v: 4 * u * u, k: 2 * u * u + d * u, lambda: u * u + d * u }
                );
            }
        }
    }
}
