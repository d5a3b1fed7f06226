use std::collections::BTreeSet;

use super::coeff::GaussianRational;
use super::ncpoly::NcPoly;
use super::products::shuffle;
use super::word::{Composition, Letter, Word};
use crate::error::{Error, Result};

fn ab() -> Word {
    Word(vec![Letter::A, Letter::B])
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

/// The distinct words of `(ab)^n ⧢ (ab)^{m-n}` containing exactly `n` factors `aa`.
pub fn s_word_set(m: usize, n: usize) -> BTreeSet<Word> {
    if m < 2 * n {
        return BTreeSet::new();
    }
    let p = shuffle(&ab().pow(n), &ab().pow(m - n));
    p.words().filter(|w| w.count_aa() == n).cloned().collect()
}

/// Sum of the words of [`s_word_set`], each with coefficient 1; zero unless `m >= 2n`.
pub fn t_word_sum(m: usize, n: usize) -> NcPoly {
    let mut out = NcPoly::zero();
    for w in s_word_set(m, n) {
        out.add_term(w, GaussianRational::one());
    }
    out
}

/// `(m_0, ..., m_{2n})` ↦ `(ab)^{m_0} ∏_k (a²b)(ab)^{m_{2k-1}} b (ab)^{m_{2k}}`.
pub fn phi_insertion(mvec: &[usize]) -> Result<Word> {
    if mvec.len().is_multiple_of(2) {
        return Err(Error::BadArity(format!(
            "insertion vector must have odd length, got {}",
            mvec.len()
        )));
    }
    let mut out = ab().pow(mvec[0]);
    for pair in mvec[1..].chunks(2) {
        out = out
            .concat(&word("aab"))
            .concat(&ab().pow(pair[0]))
            .concat(&word("b"))
            .concat(&ab().pow(pair[1]));
    }
    Ok(out)
}

/// The composition `({2}^{m_0}, 3, {2}^{m_1}, 1, ..., 1, {2}^{m_{2n}})` obtained by
/// inserting runs of twos into `{3,1}^n`.
pub fn insertion_composition(mvec: &[usize]) -> Result<Composition> {
    if mvec.len().is_multiple_of(2) {
        return Err(Error::BadArity(format!(
            "insertion vector must have odd length, got {}",
            mvec.len()
        )));
    }
    let mut parts = Vec::new();
    for (j, &mj) in mvec.iter().enumerate() {
        if j > 0 {
            parts.push(if j % 2 == 1 { 3 } else { 1 });
        }
        parts.extend(std::iter::repeat_n(2, mj));
    }
    Ok(Composition(parts))
}

/// A polynomial in `z` with word-polynomial coefficients, truncated at a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    pub coeffs: Vec<NcPoly>,
}

impl ZSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![NcPoly::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &NcPoly {
        &self.coeffs[d]
    }

    /// Substitute `z ↦ c·z`.
    pub fn scale_argument(&self, c: &GaussianRational) -> ZSeries {
        let mut pow = GaussianRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for p in &self.coeffs {
            coeffs.push(p.scale(&pow));
            pow = &pow * c;
        }
        ZSeries { coeffs }
    }

    /// Shuffle product in `z`, truncated at the smaller of the two orders.
    pub fn shuffle(&self, other: &ZSeries) -> ZSeries {
        let order = self.order().min(other.order());
        let mut out = ZSeries::zero(order);
        for (i, p) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, q) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j].add_assign_scaled(&p.bilinear(q, shuffle), &GaussianRational::one());
            }
        }
        out
    }
}

/// `A(z) = Σ (z²ab)^n (1 + za)` and `M(z) = Σ (z⁴a²b²)^n (1 + za + z²a² + z³a²b)`,
/// truncated beyond degree `order`.
pub fn broadhurst_series_words(order: usize) -> (ZSeries, ZSeries) {
    let mut a = ZSeries::zero(order);
    let mut m = ZSeries::zero(order);
    for d in 0..=order {
        let w = if d % 2 == 0 {
            ab().pow(d / 2)
        } else {
            ab().pow(d / 2).concat(&word("a"))
        };
        a.coeffs[d] = NcPoly::from_word(w);
        let tail = ["1", "a", "aa", "aab"][d % 4];
        m.coeffs[d] = NcPoly::from_word(word("aabb").pow(d / 4).concat(&word(tail)));
    }
    (a, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::word::word_to_composition;

    #[test]
    fn t_examples() {
        assert_eq!(t_word_sum(2, 1).to_string(), "aabb");
        assert_eq!(t_word_sum(3, 0).to_string(), "ababab");
        assert!(t_word_sum(1, 1).is_zero());
    }

    #[test]
    fn t_counts_are_binomial() {
        // m! / ((2n)! (m-2n)!)
        for m in 0..=6usize {
            for n in 0..=m / 2 {
                let choose = (0..2 * n).fold(1usize, |acc, i| acc * (m - i) / (i + 1));
                assert_eq!(s_word_set(m, n).len(), choose, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_insertion(&[0, 0, 0]).unwrap().to_string(), "aabb");
        assert_eq!(phi_insertion(&[1, 0, 0]).unwrap().to_string(), "abaabb");
        assert_eq!(phi_insertion(&[3]).unwrap().to_string(), "ababab");
        assert!(matches!(phi_insertion(&[1, 0]), Err(Error::BadArity(_))));
    }

    #[test]
    fn insertion_matches_word_encoding() {
        for v in [[0, 0, 0], [1, 0, 0], [0, 2, 1], [1, 1, 1]] {
            let w = phi_insertion(&v).unwrap();
            assert_eq!(word_to_composition(&w).unwrap(), insertion_composition(&v).unwrap());
        }
        assert_eq!(insertion_composition(&[1, 0, 0]).unwrap(), Composition(vec![2, 3, 1]));
    }

    #[test]
    fn broadhurst_coefficients() {
        let (a, m) = broadhurst_series_words(8);
        assert_eq!(a.coeff(0).to_string(), "1");
        assert_eq!(a.coeff(2).to_string(), "ab");
        assert_eq!(a.coeff(3).to_string(), "aba");
        assert_eq!(m.coeff(3).to_string(), "aab");
        assert_eq!(m.coeff(4).to_string(), "aabb");
        assert_eq!(m.coeff(7).to_string(), "aabbaab");
    }
}
