use mzv_core::numerics::{mzv_eval, Prec};
use mzv_core::symbolic::{
    drin_coefficient, euler_reduction, evaluate_symbolic, markett_reduction, period1_newton,
    period1_reduce, Symbolic,
};
use mzv_core::word_algebra::Composition;

#[test]
fn drin_coefficients_symmetric_and_homogeneous() {
    for m in 0..=8u32 {
        for n in 0..=8 - m {
            let p = drin_coefficient(m, n);
            assert_eq!(p, drin_coefficient(n, m), "({m},{n})");
            assert!(p.is_homogeneous_of_weight(m + n + 2), "({m},{n}): {p}");
        }
    }
}

#[test]
fn drin_coefficient_values() {
    let prec = Prec::digits(30);
    for (m, n) in [(0, 0), (1, 0), (1, 1), (2, 1), (3, 2)] {
        let mut parts = vec![m + 2];
        parts.extend(std::iter::repeat_n(1, n as usize));
        let direct = mzv_eval(&Composition(parts), prec).unwrap();
        let sym = evaluate_symbolic(&Symbolic::Poly(drin_coefficient(m, n)), prec).unwrap();
        assert!(direct.distance_upper(&sym) < 1e-25, "({m},{n})");
    }
}

#[test]
fn reductions_at_three() {
    let prec = Prec::digits(35);
    let e = evaluate_symbolic(&Symbolic::Poly(euler_reduction(3).unwrap()), prec).unwrap();
    assert!(e.distance_upper(&mzv_eval(&Composition(vec![3, 1]), prec).unwrap()) < 1e-25);
    let m = evaluate_symbolic(&Symbolic::Poly(markett_reduction(3).unwrap()), prec).unwrap();
    assert!(m.distance_upper(&mzv_eval(&Composition(vec![3, 1, 1]), prec).unwrap()) < 1e-25);
    assert!(euler_reduction(1).is_err());
    assert!(markett_reduction(2).is_err());
}

#[test]
fn period_one_partition_formula_is_newton() {
    for k in 0..=8 {
        assert_eq!(period1_reduce(k), period1_newton(k), "k={k}");
    }
}
