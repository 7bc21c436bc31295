use ddg_forge_core::designs::two_squares_check;
use proptest::prelude::*;

fn naive_two_squares(v: u64) -> bool {
    (0..).take_while(|a| a * a <= v).any(|a| {
        let rest = v - a * a;
        let b = (rest as f64).sqrt() as u64;
        (b.saturating_sub(1)..=b + 1).any(|b| b * b == rest)
    })
}

#[test]
fn exhaustive_up_to_ten_thousand() {
    for v in 0..=10_000 {
        assert_eq!(two_squares_check(v), naive_two_squares(v), "v = {v}");
    }
}

#[test]
fn anchors() {
    assert!(!two_squares_check(21));
    assert!(two_squares_check(45));
    assert!(two_squares_check(0));
    assert!(!two_squares_check(3));
}

proptest! {
    #[test]
    fn closed_under_products(a in 0u64..100_000, b in 0u64..100_000) {
        if two_squares_check(a) && two_squares_check(b) {
            prop_assert!(two_squares_check(a * b));
        }
    }

    #[test]
    fn large_values_match_naive(v in 10_000u64..50_000_000) {
        prop_assert_eq!(two_squares_check(v), naive_two_squares(v));
    }
}
