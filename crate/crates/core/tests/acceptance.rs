//! The acceptance gate: one line per criterion, non-zero exit on any failure.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use mzv_core::combinatorics::{
    nonpositive_limit, stuffle_count, stuffle_count_closed_a, stuffle_count_closed_b,
    stuffle_count_recursive, tau_brute_force, tau_factorizations, LimitOrder,
};
use mzv_core::identities::{
    check_cyclic_insertion, check_double_shuffle, check_duality, check_generating_function,
    check_mfact, check_new_integral, check_q_limit, check_q_shuffle, check_q_shuffle_sweep,
    check_sum_formula, check_tbinom, CheckResult, GfFamily, GfParams,
};
use mzv_core::numerics::{mzv_eval, q_word_value_exact, sinc_zeta_product, Ball, Prec};
use mzv_core::symbolic::{
    closed_form, drin_coefficient, evaluate_symbolic, period1_even_rational, period1_newton,
    period1_reduce, ClosedFormName, ExactPiMultiple,
};
use mzv_core::word_algebra::{stuffle, Composition, Word};
use mzv_core::Result;

type Outcome = Result<(bool, String)>;

fn prec() -> Prec {
    Prec::digits(40)
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn comp(v: &[u32]) -> Composition {
    Composition(v.to_vec())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// Folds a batch of results into a verdict with the worst residual against a
/// common bound.
fn all_below(results: &[CheckResult], bound: f64) -> (bool, String) {
    let worst = results.iter().map(|c| c.residual).fold(0.0, f64::max);
    let ok = !results.is_empty() && results.iter().all(|c| c.pass && c.residual < bound);
    (ok, format!("{} checks, max residual {worst:.2e} (bound {bound:.0e})", results.len()))
}

fn c1() -> Outcome {
    let lhs = mzv_eval(&comp(&[2, 1]), prec())?;
    let rhs = mzv_eval(&comp(&[3]), prec())?;
    let d = lhs.distance_upper(&rhs);
    Ok((d < 1e-30, format!("residual {d:.2e}")))
}

fn c2() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let s = comp(&ClosedFormName::Z31.composition(n));
        let exact = closed_form(ClosedFormName::Z31, n);
        let expected = ExactPiMultiple::new(BigRational::new(2.into(), factorial(4 * n + 2)), 4 * n);
        assert_eq!(exact, mzv_core::symbolic::Symbolic::Pi(expected));
        worst = worst.max(mzv_eval(&s, prec())?.distance_upper(&evaluate_symbolic(&exact, prec())?));
    }
    Ok((worst < 1e-25, format!("n=1..3, max residual {worst:.2e}")))
}

fn c3() -> Outcome {
    Ok(all_below(&check_duality(9, prec())?, 1e-20))
}

fn c4() -> Outcome {
    let mut out = Vec::new();
    for n in 3..=8u32 {
        for k in 1..n as usize {
            out.push(check_sum_formula(n, k, prec())?);
        }
    }
    Ok(all_below(&out, 1e-20))
}

fn c5() -> Outcome {
    let mut ok = true;
    for m in 0..=8u64 {
        for n in 0..=8u64 {
            let u = Composition((1..=m as u32).collect());
            let v = Composition((1..=n as u32).map(|i| 10 + i).collect());
            let brute = BigInt::from(stuffle(&u, &v).len());
            ok &= brute == stuffle_count(m, n)
                && brute == stuffle_count_closed_a(m, n)
                && brute == stuffle_count_closed_b(m, n)
                && brute == stuffle_count_recursive(m, n)
                && stuffle_count(m, n) == stuffle_count(n, m);
        }
    }
    Ok((ok, format!("81 pairs, f(8,8) = {}", stuffle_count(8, 8))))
}

fn c6() -> Outcome {
    let res = check_double_shuffle(&comp(&[2]), &comp(&[2]), prec())?;
    // check the two expansions also against the expected exact combinations
    let z22 = mzv_eval(&comp(&[2, 2]), prec())?;
    let z4 = mzv_eval(&comp(&[4]), prec())?;
    let z31 = mzv_eval(&comp(&[3, 1]), prec())?;
    let z2 = mzv_eval(&comp(&[2]), prec())?;
    let sq = &z2 * &z2;
    let two = Ball::from_i64_ratio(2, 1, prec().bits);
    let four = Ball::from_i64_ratio(4, 1, prec().bits);
    let st = &(&two * &z22) + &z4;
    let sh = &(&two * &z22) + &(&four * &z31);
    let d = sq.distance_upper(&st).max(sq.distance_upper(&sh));
    let ok = res.pass && res.residual < 1e-25 && d < 1e-25;
    Ok((ok, format!("suite residual {:.2e}, direct {d:.2e}", res.residual)))
}

fn c7() -> Outcome {
    let mut ok = true;
    for k in 1..=4u32 {
        for m in 1..=2000u64 {
            ok &= tau_factorizations(m, k) == BigInt::from(tau_brute_force(m, k));
        }
    }
    let t = tau_factorizations(12, 2);
    ok &= t == BigInt::from(3);
    Ok((ok, format!("m<=2000, k<=4; tau_2(12) = {t}")))
}

fn c8() -> Outcome {
    let mut out = Vec::new();
    for (m, n) in [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2), (6, 2)] {
        out.extend(check_cyclic_insertion(m, n, prec(), false)?);
    }
    let (num_ok, msg) = all_below(&out, 1e-12);
    let mut zero_rows = Vec::new();
    for m in 0..=6 {
        zero_rows.extend(check_cyclic_insertion(m, 0, prec(), false)?);
    }
    let exact_ok = zero_rows.iter().all(|c| c.pass && c.residual == 0.0);
    Ok((num_ok && exact_ok, format!("{msg}; n=0 rows exact for m<=6: {exact_ok}")))
}

fn c9() -> Outcome {
    let mut out = Vec::new();
    let mut symmetric = true;
    for m in 0..=6u32 {
        for n in 0..=6 - m {
            let p = GfParams { m, n, ..GfParams::defaults(GfFamily::Drin) };
            out.push(check_generating_function(GfFamily::Drin, &p, prec())?);
            symmetric &= drin_coefficient(m, n) == drin_coefficient(n, m);
        }
    }
    let (ok, msg) = all_below(&out, 1e-20);
    Ok((ok && symmetric, format!("{msg}; symmetric: {symmetric}")))
}

fn c10() -> Outcome {
    let mut out = Vec::new();
    for f in [GfFamily::Zfact, GfFamily::Z313gf, GfFamily::Mgf] {
        out.push(check_generating_function(f, &GfParams::defaults(f), prec())?);
    }
    let zf = &GfParams::defaults(GfFamily::Zfact);
    let point_ok = zf.x == r(1, 2) && zf.z == r(3, 10) && zf.trunc == 6;
    let (ok, msg) = all_below(&out, 1e-10);
    Ok((ok && point_ok, msg))
}

fn c11() -> Outcome {
    let mfact = check_mfact(12);
    let tb: Vec<CheckResult> = (0..=6).map(check_tbinom).collect();
    let ok = mfact.len() == 13 && mfact.iter().chain(&tb).all(|c| c.pass);
    Ok((ok, "MFact degrees 0..12, T-Binom m=0..6".to_string()))
}

fn c12() -> Outcome {
    let h = r(1, 2);
    let mut out = Vec::new();
    for s in [&[1u32][..], &[2], &[1, 1], &[2, 1]] {
        out.push(check_new_integral(&comp(s), &vec![h.clone(); s.len()], prec())?);
    }
    Ok(all_below(&out, 1e-8))
}

fn c13() -> Outcome {
    let mut ok = true;
    let mut pairs = Vec::new();
    for (x, q) in [(r(1, 1), r(1, 2)), (r(4, 5), r(7, 10))] {
        let c = check_q_shuffle_sweep(4, &x, &q)?;
        ok &= c.pass;
        pairs.push(c.lhs.to_string());
    }
    let a: Word = "a".parse()?;
    let b: Word = "b".parse()?;
    let (one, half) = (r(1, 1), r(1, 2));
    ok &= check_q_shuffle(&a, &b, &one, &half)?.pass;
    let product = q_word_value_exact(&a, &one, &half)? * q_word_value_exact(&b, &one, &half)?;
    ok &= product == r(2, 3);
    let mut lim = Vec::new();
    for w in ["ab", "b", "bca", "a[1]b"] {
        let c = check_q_limit(&w.parse()?, &r(4, 5), 12)?;
        ok &= c.pass;
        lim.push(c.residual);
    }
    let worst = lim.iter().cloned().fold(0.0, f64::max);
    Ok((ok, format!("{}; example = {product}; O(1-q) ratio drift {worst:.1e}", pairs.join(" / "))))
}

fn c14() -> Outcome {
    let a = nonpositive_limit(0, 2, LimitOrder::S1First);
    let b = nonpositive_limit(0, 2, LimitOrder::SkFirst);
    Ok((a == r(1, 3) && b == r(5, 12), format!("{a} and {b}")))
}

fn c15() -> Outcome {
    let mut ok = true;
    for k in 1..=8u32 {
        let expected = ExactPiMultiple::new(BigRational::new(1.into(), factorial(2 * k + 1)), 2 * k);
        ok &= period1_reduce(k).instantiate(2).to_pi_multiple() == Some(expected.clone());
        ok &= period1_even_rational(2, k) == expected.coefficient;
        ok &= period1_reduce(k) == period1_newton(k);
    }
    let mut worst: f64 = 0.0;
    for (n, t) in [(1, r(1, 2)), (2, r(1, 3))] {
        let (lhs, rhs) = sinc_zeta_product(&Ball::from_rational(&t, prec().bits), n, prec())?;
        let rhs_re = rhs.re.clone();
        ok &= lhs.overlaps(&rhs_re) && rhs.im.contains_zero();
        worst = worst.max(lhs.distance_upper(&rhs_re));
    }
    Ok((ok, format!("k<=8 exact; sincs residual {worst:.2e}")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("zeta(2,1) = zeta(3)", c1),
        ("zeta({3,1}^n) closed form", c2),
        ("duality through weight 9", c3),
        ("sum formula 3 <= n <= 8", c4),
        ("stuffle counts", c5),
        ("double shuffle zeta(2)^2", c6),
        ("factorisatio numerorum", c7),
        ("cyclic insertion", c8),
        ("drin coefficients", c9),
        ("zfact, z313gf, mgf", c10),
        ("MFact and T-Binom", c11),
        ("chain integral quadrature", c12),
        ("q-shuffle", c13),
        ("non-positive limits", c14),
        ("period one", c15),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {detail} ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of 15 criteria passed in {:.1}s", 15 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
