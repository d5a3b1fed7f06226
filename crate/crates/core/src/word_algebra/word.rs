use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the word alphabet: a symbol together with the number of
/// times the shift automorphism has been applied to it.
///
/// The classical alphabet uses `a` (the form dt/t) and `b` (dt/(1-t)) with
/// shift 0. The q-alphabet reuses arbitrary lowercase symbols as abstract
/// forms and carries nonnegative shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: char,
    pub shift: u32,
}

impl Letter {
    pub const A: Letter = Letter { symbol: 'a', shift: 0 };
    pub const B: Letter = Letter { symbol: 'b', shift: 0 };

    pub fn new(symbol: char, shift: u32) -> Self {
        Self { symbol, shift }
    }

    pub fn eta(self, j: u32) -> Self {
        Self {
            symbol: self.symbol,
            shift: self.shift + j,
        }
    }

    /// Exchange `a` and `b`; other symbols are left alone.
    pub fn swap_ab(self) -> Self {
        match self.symbol {
            'a' => Self { symbol: 'b', ..self },
            'b' => Self { symbol: 'a', ..self },
            _ => self,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.symbol)
        } else {
            write!(f, "{}[{}]", self.symbol, self.shift)
        }
    }
}

/// A word in the free monoid over [`Letter`]s; the empty word is the identity.
///
/// Words are ordered by length first and then lexicographically on
/// `(symbol, shift)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self(letters.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(n * self.len()).collect())
    }

    pub fn eta(&self, j: u32) -> Word {
        Word(self.0.iter().map(|l| l.eta(j)).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn swap_ab(&self) -> Word {
        Word(self.0.iter().map(|l| l.swap_ab()).collect())
    }

    pub fn is_classical(&self) -> bool {
        self.0
            .iter()
            .all(|l| l.shift == 0 && (l.symbol == 'a' || l.symbol == 'b'))
    }

    /// Nonempty, begins with `a` and ends with `b`: the integral over [0,1] converges.
    pub fn is_admissible(&self) -> bool {
        self.is_classical()
            && self.0.first() == Some(&Letter::A)
            && self.0.last() == Some(&Letter::B)
    }

    /// Number of occurrences of the factor `aa`.
    pub fn count_aa(&self) -> usize {
        self.0
            .windows(2)
            .filter(|w| w[0] == Letter::A && w[1] == Letter::A)
            .count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses letters `a`..`z`, each optionally followed by `[k]`; `1` or the
    /// empty string is the empty word. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Word> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_ascii_lowercase() {
                return Err(Error::parse(pos, format!("unexpected character '{c}' in word")));
            }
            i += 1;
            let mut shift = 0u32;
            if i < chars.len() && chars[i].1 == '[' {
                let open = chars[i].0;
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if i == start || i >= chars.len() || chars[i].1 != ']' {
                    return Err(Error::parse(open, "malformed shift, expected [k]"));
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                shift = digits
                    .parse()
                    .map_err(|_| Error::parse(open, "shift out of range"))?;
                i += 1;
            }
            out.push(Letter::new(c, shift));
        }
        Ok(Word(out))
    }
}

/// A finite sequence of positive integers `(s_1, ..., s_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::NotAdmissible(format!(
                "part {} of composition is zero",
                i + 1
            )));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `s_1 >= 2` (or empty): the multiple zeta value converges.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&s| s >= 2)
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// `(s_1, ..., s_k)` ↦ `a^{s_1-1} b ... a^{s_k-1} b`.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &s in &self.0 {
            letters.extend(std::iter::repeat_n(Letter::A, s as usize - 1));
            letters.push(Letter::B);
        }
        Word(letters)
    }

    /// Every admissible composition of the given weight (`s_1 >= 2`).
    pub fn admissible_of_weight(weight: u32) -> Vec<Composition> {
        let mut out = Vec::new();
        if weight < 2 {
            return out;
        }
        let mut cur = Vec::new();
        fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            let lo = if cur.is_empty() { 2 } else { 1 };
            for p in lo..=rem {
                cur.push(p);
                rec(rem - p, cur, out);
                cur.pop();
            }
        }
        rec(weight, &mut cur, &mut out);
        out
    }

    /// Every composition of `weight` into exactly `depth` positive parts.
    pub fn of_weight_and_depth(weight: u32, depth: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if left == 0 {
                if rem == 0 {
                    out.push(Composition(cur.clone()));
                }
                return;
            }
            if rem < left as u32 {
                return;
            }
            for p in 1..=rem - (left as u32 - 1) {
                cur.push(p);
                rec(rem - p, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(weight, depth, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers; `()` or the empty string is the empty list.
    fn from_str(s: &str) -> Result<Composition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let offset = s.find(t).unwrap_or(0);
        let mut parts = Vec::new();
        let mut pos = offset;
        for field in t.split(',') {
            let v: u32 = field
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos, format!("expected positive integer, found '{}'", field.trim())))?;
            if v == 0 {
                return Err(Error::parse(pos, "composition parts must be positive"));
            }
            parts.push(v);
            pos += field.len() + 1;
        }
        Ok(Composition(parts))
    }
}

/// Inverse of [`Composition::to_word`]; fails unless the word is over `{a, b}`
/// and ends in `b`.
pub fn word_to_composition(w: &Word) -> Result<Composition> {
    if !w.is_classical() {
        return Err(Error::NotConvertible(format!(
            "word {w} contains letters outside {{a, b}}"
        )));
    }
    if w.is_empty() {
        return Ok(Composition::empty());
    }
    if w.0.last() != Some(&Letter::B) {
        return Err(Error::NotConvertible(format!("word {w} does not end in b")));
    }
    let mut parts = Vec::new();
    let mut run = 0u32;
    for l in &w.0 {
        if *l == Letter::A {
            run += 1;
        } else {
            parts.push(run + 1);
            run = 0;
        }
    }
    Ok(Composition(parts))
}

pub fn composition_to_word(s: &Composition) -> Word {
    s.to_word()
}

/// Dual composition: reverse the word and exchange `a` with `b`.
pub fn dual_composition(s: &Composition) -> Result<Composition> {
    if s.depth() == 0 {
        return Ok(Composition::empty());
    }
    if !s.is_admissible() {
        return Err(Error::NotAdmissible(format!(
            "{s}: first argument must be at least 2"
        )));
    }
    word_to_composition(&s.to_word().reversed().swap_ab())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(comp(&[3, 1]).to_word().to_string(), "aabb");
        assert_eq!(word_to_composition(&"ab".parse().unwrap()).unwrap(), comp(&[2]));
        assert!(matches!(
            word_to_composition(&"aba".parse().unwrap()),
            Err(Error::NotConvertible(_))
        ));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_composition(&comp(&[3])).unwrap(), comp(&[2, 1]));
        assert_eq!(dual_composition(&comp(&[2])).unwrap(), comp(&[2]));
        assert_eq!(dual_composition(&comp(&[4, 1, 1])).unwrap(), comp(&[4, 1, 1]));
        assert!(matches!(
            dual_composition(&comp(&[1, 2])),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn dual_is_weight_preserving_involution() {
        for w in 2..=9 {
            for s in Composition::admissible_of_weight(w) {
                let d = dual_composition(&s).unwrap();
                assert_eq!(d.weight(), w);
                assert_eq!(dual_composition(&d).unwrap(), s);
            }
        }
    }

    #[test]
    fn dual_block_form() {
        // (s+2, {1}^r) <-> (r+2, {1}^s) in depth one blocks
        for s in 0..4u32 {
            for r in 0..4u32 {
                let mut p = vec![s + 2];
                p.extend(std::iter::repeat_n(1, r as usize));
                let mut q = vec![r + 2];
                q.extend(std::iter::repeat_n(1, s as usize));
                assert_eq!(dual_composition(&Composition(p)).unwrap(), Composition(q));
            }
        }
    }

    #[test]
    fn word_text_format() {
        let w: Word = "a[2]bb[1]".parse().unwrap();
        assert_eq!(w.0, vec![Letter::new('a', 2), Letter::B, Letter::new('b', 1)]);
        assert_eq!(w.to_string(), "a[2]bb[1]");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!(matches!("a[x]".parse::<Word>(), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!("aB".parse::<Word>(), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn composition_text_format() {
        assert_eq!("3,1".parse::<Composition>().unwrap(), comp(&[3, 1]));
        assert_eq!("(2, 3)".parse::<Composition>().unwrap(), comp(&[2, 3]));
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
        assert!(matches!("2,0".parse::<Composition>(), Err(Error::Parse { pos: 2, .. })));
        assert!("2,x".parse::<Composition>().is_err());
        assert_eq!(comp(&[2, 3]).to_string(), "(2,3)");
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut v: Vec<Word> = ["ba", "b", "aab", "ab", "a[1]"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, vec!["a[1]", "b", "ab", "ba", "aab"]);
    }

    #[test]
    fn admissible_counts() {
        // 2^{w-2} admissible compositions of weight w
        for w in 2..=9 {
            assert_eq!(Composition::admissible_of_weight(w).len(), 1 << (w - 2));
        }
    }
}
