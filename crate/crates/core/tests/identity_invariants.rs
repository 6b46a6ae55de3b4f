use qzeta_core::identity::{eisenstein_h, lambert_lhs, rhs_product, verify_theorem};
use qzeta_core::numerics::{default_q_points, zeta_recovery_check};
use qzeta_core::ParitySupport;

const ORDER: usize = 120;

#[test]
fn lambert_side_equals_h_for_small_k() {
    for k in 1..=6 {
        let lhs = lambert_lhs(k, ORDER).unwrap();
        assert_eq!(lhs, eisenstein_h(k, ORDER), "k = {k}");
    }
}

#[test]
fn odd_k_difference_lives_on_odd_exponents() {
    for k in [1, 3, 5] {
        let t = lambert_lhs(k, ORDER)
            .unwrap()
            .sub(&rhs_product(k, ORDER).unwrap());
        let p = t.parity_support();
        assert!(
            matches!(p, ParitySupport::Odd | ParitySupport::Zero),
            "k = {k}: {p}"
        );
    }
}

#[test]
fn even_k_difference_lives_on_even_exponents() {
    for k in [2, 4, 6] {
        let t = lambert_lhs(k, ORDER)
            .unwrap()
            .sub(&rhs_product(k, ORDER).unwrap());
        let p = t.parity_support();
        assert!(
            matches!(p, ParitySupport::Even | ParitySupport::Zero),
            "k = {k}: {p}"
        );
    }
}

#[test]
fn difference_vanishes_exactly_for_k_one_and_two() {
    for k in 1..=6 {
        let report = verify_theorem(k, ORDER).unwrap();
        assert!(report.passed(), "k = {k}");
        assert_eq!(report.t_is_zero, k <= 2, "k = {k}");
    }
}

#[test]
fn zeta_recovery_errors_shrink() {
    let points = default_q_points();
    for k in 1..=4 {
        let report = zeta_recovery_check(k, &points).unwrap();
        assert!(report.converging, "k = {k}");
        assert!(report.relative_errors.windows(2).all(|w| w[1] < w[0]));
    }
}
