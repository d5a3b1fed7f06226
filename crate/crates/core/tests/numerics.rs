use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use mzv_core::numerics::{
    euler_sum_direct, euler_sum_eval, multiple_polylog_eval, mzv_eval, zeta_riemann, Ball,
    ComplexBall, Prec, SignedComposition,
};
use mzv_core::word_algebra::Composition;
use mzv_core::Error;

const ZETA3: &str = "1.2020569031595942853997381615114499907649862923405";

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap();
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(num, den)
}

#[test]
fn zeta3_matches_reference_digits() {
    let z = zeta_riemann(3, Prec::digits(45)).unwrap();
    let reference = Ball::from_rational(&decimal(ZETA3), 200).add_error(1e-49);
    assert!(z.overlaps(&reference));
    assert!(z.rad() < 1e-45);
    let z21 = mzv_eval(&Composition(vec![2, 1]), Prec::digits(45)).unwrap();
    assert!(z21.overlaps(&reference));
}

#[test]
fn mzv_agrees_with_euler_sum_route_through_weight_7() {
    let prec = Prec::digits(30);
    for w in 2..=7 {
        for s in Composition::admissible_of_weight(w) {
            let a = mzv_eval(&s, prec).unwrap();
            let b = euler_sum_eval(&SignedComposition::from_composition(&s), prec).unwrap();
            assert!(a.overlaps(&b), "{s}: {a:.30} vs {b:.30}");
        }
    }
}

#[test]
fn mzv_against_truncated_nested_sum() {
    // An independent check of the accelerated route: the plain nested sum to
    // 4000 terms, whose tail for s_1 ≥ 3 is below 1e-6 on these arguments.
    for parts in [vec![3], vec![3, 1], vec![4, 2], vec![3, 1, 1], vec![5, 1, 1]] {
        let s = Composition(parts);
        let a = mzv_eval(&s, Prec::digits(20)).unwrap();
        let b = euler_sum_direct(&SignedComposition::from_composition(&s), 4000, 128).unwrap();
        let gap = (a.mid_f64() - b.mid_f64()).abs();
        assert!(gap < 1e-5, "{s}: gap {gap}");
    }
}

#[test]
fn polylog_at_real_point_equals_euler_sum() {
    let prec = Prec::digits(30);
    for parts in [vec![1], vec![2, 1], vec![1, 1], vec![3, 1, 2]] {
        for x in [r(1, 2), r(1, 3), r(9, 10)] {
            let mut z = vec![ComplexBall::real(Ball::from_rational(&x, prec.bits))];
            z.extend((1..parts.len()).map(|_| ComplexBall::real(Ball::one(prec.bits))));
            let li = multiple_polylog_eval(&parts, &z, prec).unwrap();
            let arg = SignedComposition::new(parts.iter().map(|&p| (p, 1)).collect(), x.clone()).unwrap();
            let es = euler_sum_eval(&arg, prec).unwrap();
            assert!(li.re.overlaps(&es), "{parts:?} x={x}");
            assert!(li.im.contains_zero());
        }
    }
}

#[test]
fn divergent_arguments_rejected() {
    let arg = SignedComposition::from_signed(&[1, 1], BigRational::one()).unwrap();
    assert!(matches!(euler_sum_eval(&arg, Prec::digits(20)), Err(Error::Divergent(_))));
    // the alternating version converges
    let alt = SignedComposition::from_signed(&[-1, 1], BigRational::one()).unwrap();
    assert!(euler_sum_eval(&alt, Prec::digits(20)).is_ok());
    assert!(Prec::digits(100_000).check().is_err());
}

#[test]
fn enclosure_survives_doubled_precision() {
    for parts in [vec![2], vec![3, 1], vec![2, 2, 1], vec![4, 1, 2]] {
        let s = Composition(parts);
        let lo = mzv_eval(&s, Prec::digits(20)).unwrap();
        let hi = mzv_eval(&s, Prec::digits(40)).unwrap();
        assert!(lo.overlaps(&hi), "{s}");
        assert!(hi.rad() <= lo.rad());
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| r(n, d))
}

proptest! {
    #[test]
    fn ball_arithmetic_encloses_exact_value(
        a in small_rational(), b in small_rational(), c in small_rational(), d in 1i64..500
    ) {
        let exact = (&a * &b + &c) / BigRational::from_integer(d.into());
        for bits in [64u32, 128] {
            let ball = |v: &BigRational| Ball::from_rational(v, bits);
            let v = (&(&ball(&a) * &ball(&b)) + &ball(&c)).div_int(d);
            prop_assert!(v.contains_rational(&exact));
        }
        let lo = (&(&Ball::from_rational(&a, 64) * &Ball::from_rational(&b, 64)) + &Ball::from_rational(&c, 64)).div_int(d);
        let hi = (&(&Ball::from_rational(&a, 128) * &Ball::from_rational(&b, 128)) + &Ball::from_rational(&c, 128)).div_int(d);
        prop_assert!(lo.overlaps(&hi));
    }

    #[test]
    fn euler_sums_on_unit_disk_are_deterministic(x in 1i64..9, s1 in 1u32..4, s2 in 1u32..3) {
        let arg = SignedComposition::new(vec![(s1, 1), (s2, -1)], r(x, 10)).unwrap();
        let a = euler_sum_eval(&arg, Prec::digits(20)).unwrap();
        let b = euler_sum_eval(&arg, Prec::digits(20)).unwrap();
        prop_assert_eq!(a.mid_raw(), b.mid_raw());
        let c = euler_sum_eval(&arg, Prec::digits(35)).unwrap();
        prop_assert!(a.overlaps(&c));
    }
}
