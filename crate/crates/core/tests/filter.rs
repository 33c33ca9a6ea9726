mod common;

use common::{REFERENCE_C, REFERENCE_OPT, SYNTH};
use hyperfilter::filter::closed_form::ClosedForm;
use hyperfilter::filter::{
    convert, denominator_of, expand_params, round_trip_residual, solve_denominator, Branch,
    HyperFilter1, RealTransfer3,
};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn free_parameters_keep_the_transfer_function(a3 in -2.0..2.0f64, b2 in -2.0..2.0f64) {
        let f = SYNTH.realize(a3, b2).unwrap();
        prop_assert!(round_trip_residual(&f, &RealTransfer3::reference()) < 1e-9);
        prop_assert_eq!(f.free().a3, a3);
        prop_assert_eq!(f.free().b2, b2);
        prop_assert_eq!(f.a().coeffs()[0], 0.287589);
    }

    #[test]
    fn denominator_depends_on_c_only(
        a in prop::array::uniform3(-3.0..3.0f64),
        b in prop::array::uniform3(-3.0..3.0f64),
        c in prop::array::uniform3(-2.0..2.0f64),
    ) {
        let e = HyperFilter1::new(a, b, c).expand();
        let d = denominator_of(&c);
        for k in 0..3 {
            prop_assert!((e.denominator[k] - d[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_forms_agree_with_expansion(p in prop::array::uniform9(-2.0..2.0f64)) {
        let oracle = expand_params(&p);
        let corrected = ClosedForm::corrected().evaluate(&p);
        prop_assert!(oracle.max_deviation(&corrected) < 1e-10);
        let printed = ClosedForm::printed().evaluate(&p);
        prop_assert!((printed.denominator[1] - oracle.denominator[1]).abs() < 1e-10);
        prop_assert!((printed.denominator[2] - oracle.denominator[2]).abs() < 1e-10);
    }

    #[test]
    fn evaluation_paths_agree(
        a in prop::array::uniform3(-3.0..3.0f64),
        b in prop::array::uniform3(-3.0..3.0f64),
        c in prop::array::uniform3(-0.5..0.5f64),
        theta in 0.0..std::f64::consts::TAU,
    ) {
        let f = HyperFilter1::new(a, b, c);
        let z = Complex64::from_polar(1.0, theta);
        if let (Ok(x), Ok(y)) = (f.evaluate_rationalized(z), f.evaluate_direct(z)) {
            prop_assert!((x - y).norm() / (1.0 + x.norm()) < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Targets built from a known `C` always admit a real solution.
    #[test]
    fn realizable_stable_denominators_are_solved(c in prop::array::uniform3(-0.6..0.6f64)) {
        let psi = denominator_of(&c);
        let target = RealTransfer3::new([1.0, 0.5, 0.25, 0.125], psi).unwrap();
        prop_assume!(target.is_stable());
        let branch = if c[1] <= 0.0 { Branch::Negative } else { Branch::Positive };
        let found = solve_denominator(&target, branch).unwrap();
        let d = denominator_of(found.coeffs());
        for k in 0..3 {
            prop_assert!((d[k] - psi[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn reference_conversion_reproduces_known_coefficients() {
    let f = convert(&RealTransfer3::reference(), 0.0, 0.0, Branch::Negative).unwrap();
    for k in 0..3 {
        assert!((f.c().coeffs()[k] - REFERENCE_C[k]).abs() < 1e-7);
    }
    let expected_a = [0.287589, 8.446312201, 0.0];
    let expected_b = [3.749468903, 0.0, -2.973890946];
    for k in 0..3 {
        assert!((f.a().coeffs()[k] - expected_a[k]).abs() < 1e-4);
        assert!((f.b().coeffs()[k] - expected_b[k]).abs() < 1e-4);
    }
}

#[test]
fn branches_differ_only_in_c2() {
    let neg = solve_denominator(&RealTransfer3::reference(), Branch::Negative).unwrap();
    let pos = solve_denominator(&RealTransfer3::reference(), Branch::Positive).unwrap();
    assert!((neg.coeffs()[0] - pos.coeffs()[0]).abs() < 1e-10);
    assert!((neg.coeffs()[1] + pos.coeffs()[1]).abs() < 1e-10);
    assert!((neg.coeffs()[2] - pos.coeffs()[2]).abs() < 1e-10);
    let f = convert(&RealTransfer3::reference(), 0.4, -0.3, Branch::Positive).unwrap();
    assert!(round_trip_residual(&f, &RealTransfer3::reference()) < 1e-9);
}

#[test]
fn identity_filter_converts_to_unit() {
    let f = convert(&RealTransfer3::identity(), 0.0, 0.0, Branch::Negative).unwrap();
    let p = f.parameter_array();
    let expected = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for k in 0..9 {
        assert!((p[k] - expected[k]).abs() < 1e-12, "{p:?}");
    }
}

#[test]
fn large_z_approaches_leading_coefficient() {
    let f = SYNTH.realize(REFERENCE_OPT.0, REFERENCE_OPT.1).unwrap();
    let h = f.evaluate_direct(Complex64::new(1e6, 0.0)).unwrap();
    assert!((h.re - 0.287589).abs() < 1e-4 && h.im.abs() < 1e-12);
    let h = RealTransfer3::reference()
        .evaluate(Complex64::new(0.0, 1e6))
        .unwrap();
    assert!((h - Complex64::new(0.287589, 0.0)).norm() < 1e-4);
}

#[test]
fn printed_trace_formula_contradicts_reference_solution() {
    let [c1, c2, c3] = REFERENCE_C;
    assert!((3.0 * c1 - 3.0 * c3 - 0.418204).abs() < 1e-9);
    assert!((3.0 * c1 - 3.0 * c2 - 0.418204).abs() > 1.0);
}
