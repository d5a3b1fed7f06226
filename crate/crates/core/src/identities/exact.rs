use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{comp_text, params, CheckResult, QUADRATURE_TOLERANCE};
use crate::combinatorics::binomial;
use crate::error::Result;
use crate::numerics::{
    classical_word_value, multiple_polylog_eval, new_integral_eval, q_poly_value_exact,
    q_word_value_exact, Ball, ComplexBall, Prec,
};
use crate::word_algebra::{
    broadhurst_series_words, qshuffle, shuffle, t_word_sum, Composition, GaussianRational, Letter,
    NcPoly, Word,
};

fn ab_pow(n: usize) -> Word {
    Word(vec![Letter::A, Letter::B]).pow(n)
}

/// Both sides of the shuffle convolution formula, as the coefficients of
/// `x^k y^{m-k}` for `k = 0..=m`.
fn tbinom_sides(m: usize) -> (Vec<NcPoly>, Vec<NcPoly>) {
    let lhs: Vec<NcPoly> = (0..=m).map(|k| shuffle(&ab_pow(k), &ab_pow(m - k))).collect();
    let mut rhs = vec![NcPoly::zero(); m + 1];
    for n in 0..=m / 2 {
        let t = t_word_sum(m, n);
        // (4xy)^n (x+y)^{m-2n} = 4^n Σ_j C(m-2n, j) x^{n+j} y^{m-n-j}
        for j in 0..=m - 2 * n {
            let c = BigInt::from(4u32).pow(n as u32) * binomial((m - 2 * n) as u64, j as u64);
            let c = GaussianRational::real(BigRational::from_integer(c));
            rhs[n + j].add_assign_scaled(&t, &c);
        }
    }
    (lhs, rhs)
}

/// Exact equality of the shuffle convolution formula in two formal variables.
pub fn check_tbinom(m: usize) -> CheckResult {
    let start = Instant::now();
    let (lhs, rhs) = tbinom_sides(m);
    let equal = lhs == rhs;
    let show = |v: &[NcPoly]| {
        v.iter()
            .enumerate()
            .map(|(k, p)| format!("x^{k} y^{}: {p}", m - k))
            .collect::<Vec<_>>()
            .join("; ")
    };
    CheckResult::exact("tbinom", params([("m", m.to_string())]), show(&lhs), show(&rhs), equal, start)
}

/// `A(z/(1-i)) ⧢ A(z/(1+i)) = M(z)`, one result per degree in `z`.
pub fn check_mfact(max_degree: usize) -> Vec<CheckResult> {
    let start = Instant::now();
    let (a, m) = broadhurst_series_words(max_degree);
    let half = BigRational::new(1.into(), 2.into());
    // 1/(1-i) = (1+i)/2 and 1/(1+i) = (1-i)/2
    let plus = a.scale_argument(&GaussianRational::new(half.clone(), half.clone()));
    let minus = a.scale_argument(&GaussianRational::new(half.clone(), -half));
    let lhs = plus.shuffle(&minus);
    (0..=max_degree)
        .map(|d| {
            let (l, r) = (lhs.coeff(d), m.coeff(d));
            CheckResult::exact("mfact", params([("degree", d.to_string())]), l.to_string(), r.to_string(), l == r, start)
        })
        .collect()
}

/// The shuffle convolution formula for `m ≤ tbinom_max` and the Broadhurst
/// factorization through `z^{mfact_degree}`.
pub fn check_shuffle_theorems(tbinom_max: usize, mfact_degree: usize) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = (0..=tbinom_max).map(check_tbinom).collect();
    out.extend(check_mfact(mfact_degree));
    out
}

/// The chain-integral quadrature against the nested series.
pub fn check_new_integral(s: &Composition, x: &[BigRational], prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let quad = new_integral_eval(s, x, 10)?;
    let bits = prec.check()?.bits;
    let z: Vec<ComplexBall> = x.iter().map(|v| ComplexBall::real(Ball::from_rational(v, bits))).collect();
    let series = multiple_polylog_eval(s.parts(), &z, prec)?;
    let xs = x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let p = params([("s", comp_text(s.parts())), ("x", xs), ("rigorous", quad.rigorous.to_string())]);
    Ok(CheckResult::real("new_integral", p, quad.value, series.re, QUADRATURE_TOLERANCE, start))
}

fn word_text(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

/// `∫ u ⧢_q v = (∫ u)(∫ v)` exactly.
pub fn check_q_shuffle(u: &Word, v: &Word, x: &BigRational, q: &BigRational) -> Result<CheckResult> {
    let start = Instant::now();
    let lhs = q_poly_value_exact(&qshuffle(u, v), x, q)?;
    let rhs = GaussianRational::real(q_word_value_exact(u, x, q)? * q_word_value_exact(v, x, q)?);
    let p = params([("u", word_text(u)), ("v", word_text(v)), ("x", x.to_string()), ("q", q.to_string())]);
    Ok(CheckResult::exact("q_shuffle", p, lhs.to_string(), rhs.to_string(), lhs == rhs, start))
}

/// The two displayed expansions of `ω_1 ⧢_q ω_2ω_3`, with `ω_1, ω_2, ω_3` the
/// forms `a`, `b`, `c`, have equal exact values, and both equal the product.
pub fn check_q_expansions(x: &BigRational, q: &BigRational) -> Result<CheckResult> {
    let start = Instant::now();
    let poly = |terms: &[&str]| -> NcPoly {
        let mut p = NcPoly::zero();
        for t in terms {
            p.add_term(t.parse().expect("literal word"), GaussianRational::one());
        }
        p
    };
    let first = q_poly_value_exact(&poly(&["abc", "ba[1]c", "bca[2]"]), x, q)?;
    let second = q_poly_value_exact(&poly(&["abc", "ba[1]c[1]", "bca[1]"]), x, q)?;
    let product = GaussianRational::real(
        q_word_value_exact(&"a".parse()?, x, q)? * q_word_value_exact(&"bc".parse()?, x, q)?,
    );
    let equal = first == second && first == product;
    let p = params([("x", x.to_string()), ("q", q.to_string())]);
    Ok(CheckResult::exact(
        "q_expansions",
        p,
        format!("{first} = {second}"),
        product.to_string(),
        equal,
        start,
    ))
}

fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Vec<Word>> {
    let mut by_len = vec![vec![Word::empty()]];
    for len in 1..=max_len {
        let next = by_len[len - 1]
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&l| w.concat(&Word(vec![l]))))
            .collect();
        by_len.push(next);
    }
    by_len
}

/// The q-shuffle product rule for every pair of words over `a, b, c, b[1]` with
/// `|u| + |v| ≤ max_len`, reported as a single exact result.
pub fn check_q_shuffle_sweep(max_len: usize, x: &BigRational, q: &BigRational) -> Result<CheckResult> {
    let start = Instant::now();
    let alphabet = [Letter::new('a', 0), Letter::new('b', 0), Letter::new('c', 0), Letter::new('b', 1)];
    let words = words_up_to(&alphabet, max_len);
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    for lu in 0..=max_len {
        for lv in 0..=max_len - lu {
            for u in &words[lu] {
                for v in &words[lv] {
                    pairs += 1;
                    if !check_q_shuffle(u, v, x, q)?.pass {
                        failures.push(format!("{} * {}", word_text(u), word_text(v)));
                    }
                }
            }
        }
    }
    let p = params([("max_len", max_len.to_string()), ("x", x.to_string()), ("q", q.to_string())]);
    Ok(CheckResult::exact(
        "q_shuffle",
        p,
        format!("{pairs} pairs, {} failures", failures.len()),
        failures.join(", "),
        failures.is_empty(),
        start,
    ))
}

/// As `q = 1 - 2^{-j} → 1`, the q-value of `w` approaches the classical
/// iterated integral with error `C(1-q) + O((1-q)²)`. The residual is the
/// relative change of `error/(1-q)` over the last halving.
pub fn check_q_limit(w: &Word, x: &BigRational, steps: u32) -> Result<CheckResult> {
    let start = Instant::now();
    let classical = classical_word_value(w, x)?;
    let mut ratios = Vec::new();
    for j in 1..=steps.max(3) {
        let gap = BigRational::new(BigInt::one(), BigInt::one() << j);
        let q = BigRational::one() - &gap;
        let err = (q_word_value_exact(w, x, &q)? - &classical).abs();
        ratios.push((err / gap).to_f64().unwrap_or(f64::INFINITY));
    }
    let (last, prev) = (ratios[ratios.len() - 1], ratios[ratios.len() - 2]);
    let residual = if last == 0.0 && prev == 0.0 {
        0.0
    } else {
        (last - prev).abs() / prev.abs().max(f64::MIN_POSITIVE)
    };
    let p = params([("w", word_text(w)), ("x", x.to_string()), ("steps", steps.to_string())]);
    Ok(CheckResult::new(
        "q_limit",
        p,
        super::CheckValue::Exact(format!("error/(1-q) = {last:.6e}")),
        super::CheckValue::Exact(classical.to_string()),
        residual,
        1e-2,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tbinom_small() {
        for m in 0..=4 {
            assert!(check_tbinom(m).pass, "m={m}");
        }
        // m = 2: (x² + y² + 2xy) abab + 4xy aabb
        let (lhs, rhs) = tbinom_sides(2);
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(rhs[1].coeff(&w("abab")), GaussianRational::from_int(2));
        assert_eq!(rhs[1].coeff(&w("aabb")), GaussianRational::from_int(4));
        assert_eq!(lhs[0], NcPoly::from_word(w("abab")));
    }

    #[test]
    fn mfact_small() {
        assert!(check_mfact(6).iter().all(|r| r.pass));
    }

    #[test]
    fn q_checks() {
        let one = BigRational::one();
        assert!(check_q_shuffle(&"a".parse().unwrap(), &"b".parse().unwrap(), &one, &r(1, 2)).unwrap().pass);
        assert!(check_q_shuffle(&Word::empty(), &"ab".parse().unwrap(), &one, &r(1, 2)).unwrap().pass);
        assert!(check_q_expansions(&r(4, 5), &r(7, 10)).unwrap().pass);
        assert!(check_q_shuffle_sweep(2, &one, &r(1, 2)).unwrap().pass);
        assert!(check_q_limit(&"ab".parse().unwrap(), &one, 12).unwrap().pass);
    }

    #[test]
    fn new_integral() {
        let h = r(1, 2);
        assert!(check_new_integral(&Composition(vec![2, 1]), &[h.clone(), h], Prec::digits(20)).unwrap().pass);
    }
}
