use std::collections::BTreeMap;
use std::fmt;

use super::ncpoly::NcPoly;
use super::word::{Composition, Letter, Word};

/// Shuffle product by the left recursion `au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)`.
///
/// Letters are interleaved as given; shifts play no role.
pub fn shuffle(u: &Word, v: &Word) -> NcPoly {
    interleave(u, v, |l, _| l)
}

/// Shuffle product by the right recursion `ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b`.
pub fn shuffle_right_recursive(u: &Word, v: &Word) -> NcPoly {
    let (m, n) = (u.len(), v.len());
    // table[i][j] = shuffle of u[..i] and v[..j]
    let mut table: Vec<Vec<NcPoly>> = vec![vec![NcPoly::zero(); n + 1]; m + 1];
    for i in 0..=m {
        for j in 0..=n {
            table[i][j] = if i == 0 {
                NcPoly::from_word(Word(v.0[..j].to_vec()))
            } else if j == 0 {
                NcPoly::from_word(Word(u.0[..i].to_vec()))
            } else {
                let a = Word(vec![u.0[i - 1]]);
                let b = Word(vec![v.0[j - 1]]);
                let left = table[i - 1][j].map_words(|w| w.concat(&a));
                let right = table[i][j - 1].map_words(|w| w.concat(&b));
                &left + &right
            };
        }
    }
    table.pop().unwrap().pop().unwrap()
}

/// q-shuffle product by the recursion `au ⧢_q bv = a(u ⧢_q bv) + b(η(au) ⧢_q v)`,
/// always splitting on the leading letters of the left operand first.
pub fn qshuffle(u: &Word, v: &Word) -> NcPoly {
    interleave(u, v, |l, consumed| l.eta(consumed as u32))
}

/// Suffix recursion shared by the shuffle and q-shuffle: `left(letter, j)`
/// transforms a letter of `u` placed after `j` letters of `v` were consumed.
fn interleave(u: &Word, v: &Word, left: impl Fn(Letter, usize) -> Letter) -> NcPoly {
    let (m, n) = (u.len(), v.len());
    // table[i][j] = product of the suffixes u[i..] (shifted per j) and v[j..]
    let mut table: Vec<Vec<NcPoly>> = vec![vec![NcPoly::zero(); n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            table[i][j] = if i == m {
                NcPoly::from_word(Word(v.0[j..].to_vec()))
            } else if j == n {
                NcPoly::from_word(Word(u.0[i..].iter().map(|&l| left(l, j)).collect()))
            } else {
                let a = Word(vec![left(u.0[i], j)]);
                let b = Word(vec![v.0[j]]);
                &table[i + 1][j].prepend(&a) + &table[i][j + 1].prepend(&b)
            };
        }
    }
    std::mem::take(&mut table[0][0])
}

pub fn shuffle_poly(p: &NcPoly, q: &NcPoly) -> NcPoly {
    p.bilinear(q, shuffle)
}

pub fn qshuffle_poly(p: &NcPoly, q: &NcPoly) -> NcPoly {
    p.bilinear(q, qshuffle)
}

/// Apply `η^j` to every letter.
pub fn eta_shift(p: &NcPoly, j: u32) -> NcPoly {
    p.map_words(|w| w.eta(j))
}

/// Replace every shift by zero (η acting as the identity).
pub fn forget_shifts(p: &NcPoly) -> NcPoly {
    p.map_words(|w| Word(w.0.iter().map(|l| Letter::new(l.symbol, 0)).collect()))
}

/// A multiset of compositions, kept as composition → multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CompositionMultiset(pub BTreeMap<Composition, u64>);

impl CompositionMultiset {
    pub fn singleton(c: Composition) -> Self {
        let mut m = BTreeMap::new();
        m.insert(c, 1);
        Self(m)
    }

    /// Total size counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, u64)> {
        self.0.iter().map(|(c, &m)| (c, m))
    }

    fn insert(&mut self, c: Composition, mult: u64) {
        *self.0.entry(c).or_insert(0) += mult;
    }

    fn prepend_into(&self, head: u32, out: &mut CompositionMultiset) {
        for (c, &m) in &self.0 {
            let mut parts = Vec::with_capacity(c.depth() + 1);
            parts.push(head);
            parts.extend_from_slice(c.parts());
            out.insert(Composition(parts), m);
        }
    }
}

impl fmt::Display for CompositionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, &m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{m}*{c}")?;
            }
        }
        Ok(())
    }
}

/// Stuffle (quasi-shuffle) product
/// `(s,u) * (t,v) = s(u * (t,v)) + t((s,u) * v) + (s+t)(u * v)`.
pub fn stuffle(u: &Composition, v: &Composition) -> CompositionMultiset {
    let (a, b) = (u.parts(), v.parts());
    let (m, n) = (a.len(), b.len());
    let mut table: Vec<Vec<CompositionMultiset>> =
        vec![vec![CompositionMultiset::default(); n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            table[i][j] = if i == m {
                CompositionMultiset::singleton(Composition(b[j..].to_vec()))
            } else if j == n {
                CompositionMultiset::singleton(Composition(a[i..].to_vec()))
            } else {
                let mut out = CompositionMultiset::default();
                table[i + 1][j].prepend_into(a[i], &mut out);
                table[i][j + 1].prepend_into(b[j], &mut out);
                table[i + 1][j + 1].prepend_into(a[i] + b[j], &mut out);
                out
            };
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Shuffle of two compositions through their word encodings, read back as
/// compositions with integer multiplicities.
pub fn shuffle_compositions(u: &Composition, v: &Composition) -> CompositionMultiset {
    let p = shuffle(&u.to_word(), &v.to_word());
    let mut out = CompositionMultiset::default();
    for (w, c) in p.terms() {
        let comp = super::word::word_to_composition(w)
            .expect("shuffle of words ending in b ends in b");
        let mult = c.re.to_integer();
        out.insert(comp, u64::try_from(mult).expect("positive multiplicity"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::coeff::GaussianRational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn c(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn shuffle_examples() {
        let p = shuffle(&w("ab"), &w("ab"));
        assert_eq!(p.coeff(&w("abab")), gr(2));
        assert_eq!(p.coeff(&w("aabb")), gr(4));
        assert_eq!(p.len(), 2);
        assert_eq!(shuffle(&Word::empty(), &w("ab")), NcPoly::from_word(w("ab")));
        assert_eq!(shuffle(&w("a"), &w("b")).to_string(), "ab + ba");
    }

    #[test]
    fn qshuffle_examples() {
        assert_eq!(qshuffle(&w("a"), &w("b")).to_string(), "ab + ba[1]");
        assert_eq!(
            qshuffle(&w("a"), &w("bc")).to_string(),
            "abc + ba[1]c + bca[2]"
        );
        assert_eq!(qshuffle(&Word::empty(), &w("bc")), NcPoly::from_word(w("bc")));
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(stuffle(&c(&[2]), &c(&[3])).to_string(), "(2,3) + (3,2) + (5)");
        let r = stuffle(&c(&[1, 2]), &c(&[4]));
        let expect = [c(&[1, 2, 4]), c(&[1, 6]), c(&[1, 4, 2]), c(&[5, 2]), c(&[4, 1, 2])];
        assert_eq!(r.len(), 5);
        for e in expect {
            assert_eq!(r.0.get(&e), Some(&1));
        }
        assert_eq!(stuffle(&Composition::empty(), &c(&[2, 1])).to_string(), "(2,1)");
        assert_eq!(stuffle(&c(&[2]), &c(&[2])).to_string(), "2*(2,2) + (4)");
    }

    #[test]
    fn shuffle_of_compositions() {
        assert_eq!(
            shuffle_compositions(&c(&[2]), &c(&[2])).to_string(),
            "2*(2,2) + 4*(3,1)"
        );
    }

    #[test]
    fn eta_action() {
        let p = NcPoly::from_word(w("ab"));
        assert_eq!(eta_shift(&p, 1).to_string(), "a[1]b[1]");
        assert_eq!(eta_shift(&p, 0), p);
        assert_eq!(eta_shift(&eta_shift(&p, 1), 2), eta_shift(&p, 3));
    }
}
