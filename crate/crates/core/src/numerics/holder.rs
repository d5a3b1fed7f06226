use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use super::ball::{Ball, Prec};
use super::euler_sum::{geometric_cutoff, nested_sum, SignedComposition};
use super::with_retry;
use crate::error::{Error, Result};
use crate::word_algebra::Composition;

const GUARD_BITS: u32 = 20;

/// Evaluates Euler sums at `x = 1` by Hölder convolution at `1/2`.
///
/// The value is written as `(-1)^k ∫_0^1 a^{s_1-1} ω(y_1) ⋯ a^{s_k-1} ω(y_k)` with
/// letters `ω(y) = dt/(t-y)`, `a = ω(0)` and `y_j = σ_1⋯σ_j`. Splitting the
/// simplex at `1/2` and reflecting `t ↦ 1-t` on the upper part turns every
/// factor into an integral over `[0, 1/2]`,
/// `∫_0^{1/2} a^{r_1-1} ω(p_1) ⋯ a^{r_m-1} ω(p_m) = (-1)^m Li_r(1/(2p_1), p_1/p_2, …)`,
/// whose nested sum converges at least like `2^-n`.
///
/// Pieces are cached, so evaluating many related arguments with one evaluator
/// shares work.
pub struct HolderEvaluator {
    bits: u32,
    cache: Mutex<HashMap<Vec<i8>, Ball>>,
}

impl HolderEvaluator {
    pub fn new(bits: u32) -> Self {
        Self {
            bits,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn eval(&self, arg: &SignedComposition) -> Result<Ball> {
        if !arg.x_is_one() {
            return Err(Error::OutOfDomain(
                "Hölder convolution is used only at x = 1".into(),
            ));
        }
        if !arg.is_admissible() {
            return Err(Error::Divergent("x=s1=σ1=1 excluded".into()));
        }
        let w = self.bits + GUARD_BITS;
        let letters = letters_of(arg);
        let n = letters.len();
        let mut total = Ball::zero(w);
        for i in 0..=n {
            let upper: Vec<i8> = letters[..i].iter().rev().map(|&y| 1 - y).collect();
            let lower = &letters[i..];
            let term = &self.piece(&upper, w) * &self.piece(lower, w);
            total = if i % 2 == 0 { &total + &term } else { &total - &term };
        }
        if arg.depth() % 2 == 1 {
            total = -total;
        }
        Ok(total.set_prec(self.bits))
    }

    pub fn eval_composition(&self, s: &Composition) -> Result<Ball> {
        self.eval(&SignedComposition::from_composition(s))
    }

    /// `∫_0^{1/2}` of the letter sequence given by its points.
    fn piece(&self, points: &[i8], w: u32) -> Ball {
        if points.is_empty() {
            return Ball::one(w);
        }
        if let Some(v) = self.cache.lock().unwrap().get(points) {
            return v.clone();
        }
        let v = piece_value(points, w);
        self.cache.lock().unwrap().insert(points.to_vec(), v.clone());
        v
    }
}

/// Points of the letters, `0` standing for `a`.
fn letters_of(arg: &SignedComposition) -> Vec<i8> {
    let mut out = Vec::with_capacity(arg.weight() as usize);
    for (&(s, _), y) in arg.parts.iter().zip(arg.sign_prefixes()) {
        out.extend(std::iter::repeat_n(0, s as usize - 1));
        out.push(y);
    }
    out
}

fn piece_value(points: &[i8], w: u32) -> Ball {
    assert!(
        *points.last().unwrap() != 0,
        "pieces end in a letter with a nonzero point"
    );
    let mut r = Vec::new();
    let mut ys = Vec::new();
    let mut run = 1u32;
    for &p in points {
        if p == 0 {
            run += 1;
        } else {
            r.push(run);
            ys.push(p);
            run = 1;
        }
    }
    // prefix products 1/(2 p_j), all of modulus at most 1/2
    let prefix: Vec<Ball> = ys
        .iter()
        .map(|&p| Ball::from_ratio(&BigInt::from(p.signum()), &BigInt::from(2 * p.unsigned_abs()), w))
        .collect();
    let rho = ys
        .iter()
        .map(|&p| 0.5 / (p as f64).abs())
        .fold(0.0, f64::max);
    let (n, tail) = geometric_cutoff(rho, r.len(), w);
    let v = nested_sum(&r, &prefix, n, w).add_error(tail);
    if r.len() % 2 == 1 {
        -v
    } else {
        v
    }
}

pub(crate) fn holder_signed(arg: &SignedComposition, bits: u32) -> Result<Ball> {
    HolderEvaluator::new(bits).eval(arg)
}

/// `ζ(s_1, …, s_k)` for `s_1 ≥ 2` by Hölder convolution.
pub fn mzv_eval(s: &Composition, prec: Prec) -> Result<Ball> {
    if s.parts().first() == Some(&1) {
        return Err(Error::Divergent(format!("ζ{s} diverges: s1 = 1")));
    }
    let arg = SignedComposition::from_composition(s);
    with_retry(prec, |bits| holder_signed(&arg, bits), Ball::rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::elementary::{ln2, pi};
    use crate::numerics::euler_sum::euler_sum_direct;
    use crate::numerics::zeta::zeta_int;
    use num_rational::BigRational;
    use num_traits::One;

    fn c(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn euler_relation() {
        let p = Prec::digits(40);
        let z21 = mzv_eval(&c(&[2, 1]), p).unwrap();
        let z3 = zeta_int(3, p.bits);
        assert!(z21.distance_upper(&z3) < 1e-40);
    }

    #[test]
    fn single_arguments() {
        for s in 2..8 {
            let v = mzv_eval(&c(&[s]), Prec::digits(30)).unwrap();
            assert!(v.overlaps(&zeta_int(s, 140)), "s={s}");
        }
    }

    #[test]
    fn closed_forms() {
        let bits = 160;
        let ev = HolderEvaluator::new(bits);
        let pi4 = pi(bits).pow(4);
        assert!(ev.eval_composition(&c(&[3, 1])).unwrap().overlaps(&pi4.div_int(360)));
        let pi6 = pi(bits).pow(6);
        assert!(ev.eval_composition(&c(&[2, 2, 2])).unwrap().overlaps(&pi6.div_int(5040)));
    }

    #[test]
    fn alternating_values() {
        let bits = 150;
        let ev = HolderEvaluator::new(bits);
        let one = BigRational::one();
        // ζ(1̄) = -log 2
        let a = SignedComposition::parse("-1", one.clone()).unwrap();
        assert!(ev.eval(&a).unwrap().overlaps(&-ln2(bits)));
        // ζ(2̄) = -π²/12
        let a = SignedComposition::parse("-2", one.clone()).unwrap();
        assert!(ev.eval(&a).unwrap().overlaps(&-pi(bits).sqr().div_int(12)));
        // ζ(1̄,1) = log²2 / 2
        let a = SignedComposition::parse("-1,1", one).unwrap();
        assert!(ev.eval(&a).unwrap().overlaps(&ln2(bits).sqr().mul_pow2(-1)));
    }

    #[test]
    fn agrees_with_direct_summation() {
        let ev = HolderEvaluator::new(100);
        for text in ["2,1", "3,1,1", "-2,1", "2,-1", "-1,-1", "3,-2"] {
            let a = SignedComposition::parse(text, BigRational::one()).unwrap();
            let h = ev.eval(&a).unwrap();
            let d = euler_sum_direct(&a, 20000, 60).unwrap();
            assert!(h.overlaps(&d), "{text}");
            assert!(d.rad() < 1e-2, "{text}: {}", d.rad());
        }
    }

    #[test]
    fn divergent() {
        assert!(matches!(mzv_eval(&c(&[1, 2]), Prec::digits(10)), Err(Error::Divergent(_))));
    }
}
