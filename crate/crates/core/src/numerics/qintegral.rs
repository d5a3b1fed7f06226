use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word_algebra::{GaussianRational, Letter, NcPoly, Word};

/// The q-difference form `ω = η^j(t^p d_q t) = (tq^j)^{p+1}(1-q)`.
///
/// In words, a letter with symbol `'a' + p` and shift `j` stands for this form,
/// so `a` is `d_q t` and `b` is `t d_q t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialQForm {
    pub p: u32,
    pub shift: u32,
}

impl MonomialQForm {
    pub fn new(p: u32, shift: u32) -> Self {
        Self { p, shift }
    }

    pub fn from_letter(l: Letter) -> Result<Self> {
        if !l.symbol.is_ascii_lowercase() {
            return Err(Error::NotConvertible(format!(
                "letter {l} does not name a monomial form"
            )));
        }
        Ok(Self {
            p: l.symbol as u32 - 'a' as u32,
            shift: l.shift,
        })
    }

    pub fn to_letter(self) -> Result<Letter> {
        char::from_u32('a' as u32 + self.p)
            .filter(char::is_ascii_lowercase)
            .map(|c| Letter::new(c, self.shift))
            .ok_or_else(|| Error::NotConvertible(format!("exponent {} has no letter", self.p)))
    }

    fn c(self) -> u32 {
        self.p + 1
    }
}

fn forms_of(w: &Word) -> Result<Vec<MonomialQForm>> {
    w.letters().iter().map(|&l| MonomialQForm::from_letter(l)).collect()
}

fn check_q(q: &BigRational) -> Result<()> {
    if !q.is_positive() || *q >= BigRational::one() {
        return Err(Error::OutOfDomain(format!("q = {q} is not in (0, 1)")));
    }
    Ok(())
}

fn rpow(r: &BigRational, e: u32) -> BigRational {
    num_traits::pow(r.clone(), e as usize)
}

/// Exact iterated Jackson integral `∫_0^x ω_1⋯ω_k` of monomial forms:
/// `(1-q)^k q^{Σ j_r c_r} x^{Σ c_r} ∏_i (1 - q^{c_i+⋯+c_k})^{-1}`, `c_r = p_r + 1`.
pub fn q_word_value_exact(w: &Word, x: &BigRational, q: &BigRational) -> Result<BigRational> {
    check_q(q)?;
    let forms = forms_of(w)?;
    let one = BigRational::one();
    let mut value = rpow(&(&one - q), forms.len() as u32);
    let mut suffix = 0u32;
    for f in forms.iter().rev() {
        suffix += f.c();
        value /= &one - rpow(q, suffix);
        value *= rpow(q, f.shift * f.c());
    }
    Ok(value * rpow(x, suffix))
}

/// Linear extension of [`q_word_value_exact`] to polynomials.
pub fn q_poly_value_exact(
    p: &NcPoly,
    x: &BigRational,
    q: &BigRational,
) -> Result<GaussianRational> {
    check_q(q)?;
    let mut total = GaussianRational::zero();
    for (w, c) in p.terms() {
        total += &(c * &GaussianRational::real(q_word_value_exact(w, x, q)?));
    }
    Ok(total)
}

/// The `q → 1` limit: the ordinary iterated integral `x^{Σc} / ∏_i (c_i+⋯+c_k)`.
/// Shifts do not matter in the limit.
pub fn classical_word_value(w: &Word, x: &BigRational) -> Result<BigRational> {
    let forms = forms_of(w)?;
    let mut den = BigInt::one();
    let mut suffix = 0u32;
    for f in forms.iter().rev() {
        suffix += f.c();
        den *= suffix;
    }
    Ok(rpow(x, suffix) / BigRational::from_integer(den))
}

/// Values of the word at each `q` of a sequence approaching `1` from below.
pub fn q_limit_check(w: &Word, x: &BigRational, qs: &[BigRational]) -> Result<Vec<BigRational>> {
    qs.iter().map(|q| q_word_value_exact(w, x, q)).collect()
}

/// Truncated direct evaluation of the defining sum
/// `(1-q)^k Σ_{0 ≤ l_1 ≤ ⋯ ≤ l_k ≤ L} ∏_r x q^{l_r} f_r(x q^{l_r})`, used as an
/// independent check of the closed form.
pub fn q_word_value_truncated(
    w: &Word,
    x: &BigRational,
    q: &BigRational,
    max_l: usize,
) -> Result<BigRational> {
    check_q(q)?;
    let forms = forms_of(w)?;
    let one = BigRational::one();
    // acc[l] = sum over the suffix forms with the leading index at l; the
    // empty suffix is a unit mass at max_l so that every l ≤ max_l sees it
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); max_l + 1];
    acc[max_l] = one.clone();
    for f in forms.iter().rev() {
        let mut next = vec![BigRational::zero(); max_l + 1];
        let mut tail = BigRational::zero();
        for l in (0..=max_l).rev() {
            tail += &acc[l];
            let t = x * rpow(q, l as u32 + f.shift);
            next[l] = rpow(&t, f.c()) * &tail;
        }
        acc = next;
    }
    let total: BigRational = acc.iter().sum();
    Ok(total * rpow(&(&one - q), forms.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::qshuffle;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn single_forms() {
        let one = BigRational::one();
        assert_eq!(q_word_value_exact(&w("a"), &one, &r(1, 3)).unwrap(), one);
        let x = r(3, 5);
        let q = r(2, 7);
        assert_eq!(q_word_value_exact(&w("b"), &x, &q).unwrap(), &x * &x / (&one + &q));
    }

    #[test]
    fn word_ab() {
        let v = q_word_value_exact(&w("ab"), &BigRational::one(), &r(1, 2)).unwrap();
        assert_eq!(v, r(8, 21));
        assert_eq!(classical_word_value(&w("ab"), &BigRational::one()).unwrap(), r(1, 6));
    }

    #[test]
    fn product_rule_example() {
        let (x, q) = (BigRational::one(), r(1, 2));
        let prod = qshuffle(&w("a"), &w("b"));
        let lhs = q_poly_value_exact(&prod, &x, &q).unwrap();
        let rhs = q_word_value_exact(&w("a"), &x, &q).unwrap() * q_word_value_exact(&w("b"), &x, &q).unwrap();
        assert_eq!(rhs, r(2, 3));
        assert_eq!(lhs, GaussianRational::real(rhs));
    }

    #[test]
    fn truncated_sum_approaches_closed_form() {
        let (x, q) = (r(4, 5), r(1, 2));
        for s in ["ab", "ba", "a[1]c", "bab"] {
            let exact = q_word_value_exact(&w(s), &x, &q).unwrap();
            let approx = q_word_value_truncated(&w(s), &x, &q, 60).unwrap();
            assert!(approx <= exact, "{s}");
            assert!(&exact - &approx < r(1, 1 << 50), "{s}");
        }
    }

    #[test]
    fn limit() {
        let qs: Vec<BigRational> = (1..12).map(|j| BigRational::one() - r(1, 1 << j)).collect();
        let vals = q_limit_check(&w("b"), &BigRational::one(), &qs).unwrap();
        let err = (vals.last().unwrap() - r(1, 2)).abs();
        assert!(err < r(1, 1000));
    }

    #[test]
    fn q_out_of_range() {
        let one = BigRational::one();
        assert!(matches!(q_word_value_exact(&w("a"), &one, &one), Err(Error::OutOfDomain(_))));
    }
}
