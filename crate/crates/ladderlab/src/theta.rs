//! The alternating word monoid and its index poset.
//!
//! Words are finite alternating sequences over the two-letter alphabet
//! `{Tl, Tr}`, together with an adjoined empty word.  Multiplication
//! concatenates and deletes one letter at the junction when the tail of the
//! left factor equals the head of the right factor, so a product of reduced
//! words is again reduced.  The partial order is "longer is smaller": the
//! empty word is the top element and each level consists of exactly two
//! words, one per tail letter.
//!
//! An alternating word is determined, back to front, by its length and tail
//! letter.  This gives the order isomorphism `gamma` onto the index poset of
//! canonical pairs `(i, m)` with `(1, 0)` identified to `(0, 0)`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the two generating letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Tl,
    Tr,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::Tl => Letter::Tr,
            Letter::Tr => Letter::Tl,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Tl => 'l',
            Letter::Tr => 'r',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A reduced alternating word; the empty sequence is the adjoined identity.
///
/// Adjacent letters always differ.  Constructors reject non-alternating
/// input, so equality of `Word`s is equality in the monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    /// The one-letter word.
    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Builds a word from a letter sequence, rejecting repeated adjacent
    /// letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Word, Error> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for pair in letters.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::NotAlternating(
                    letters.iter().map(|l| l.as_char()).collect(),
                ));
            }
        }
        Ok(Word { letters })
    }

    /// The unique alternating word of length `len` ending in `tail`.
    pub fn with_tail(len: usize, tail: Letter) -> Word {
        let mut letters = Vec::with_capacity(len);
        let mut l = if len % 2 == 1 { tail } else { tail.other() };
        for _ in 0..len {
            letters.push(l);
            l = l.other();
        }
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn head(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn tail(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Reverses the letter sequence; an involution and anti-homomorphism.
    pub fn mirror(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Monoid multiplication: concatenate, dropping the right factor's head
    /// when it equals the left factor's tail.  Both factors alternate
    /// internally, so one junction check suffices.
    pub fn multiply(&self, rhs: &Word) -> Word {
        if self.is_empty() {
            return rhs.clone();
        }
        if rhs.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        let skip = usize::from(self.tail() == rhs.head());
        letters.extend_from_slice(&rhs.letters[skip..]);
        Word { letters }
    }

    /// The word order: `self <= other` iff `self` is strictly longer or the
    /// words are equal.  The empty word is the top element.
    pub fn leq(&self, other: &Word) -> bool {
        self.len() > other.len() || self == other
    }

    /// The index of this word: the empty word maps to `(0, 0)`, a nonempty
    /// word of length `m` to `(0, m)` when it ends in `Tr` and `(1, m)` when
    /// it ends in `Tl`.
    pub fn gamma(&self) -> LambdaIndex {
        match self.tail() {
            None => LambdaIndex::new(0, 0),
            Some(Letter::Tr) => LambdaIndex::new(0, self.len()),
            Some(Letter::Tl) => LambdaIndex::new(1, self.len()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "e")
        } else {
            for l in &self.letters {
                write!(f, "{}", l.as_char())?;
            }
            Ok(())
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the textual syntax: `e` for the empty word, otherwise a string
    /// over `l` and `r`.  Non-alternating strings are rejected.
    fn from_str(s: &str) -> Result<Word, Error> {
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::WordSyntax(s.to_string()));
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                'l' => letters.push(Letter::Tl),
                'r' => letters.push(Letter::Tr),
                _ => return Err(Error::WordSyntax(s.to_string())),
            }
        }
        Word::from_letters(letters)
    }
}

/// A canonical index pair `(i, m)`: `i` in `{0, 1}` and `m = 0` forces
/// `i = 0`, housing the identification of `(1, 0)` with `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaIndex {
    i: u8,
    m: usize,
}

impl LambdaIndex {
    /// Canonicalizes `(i, 0)` to `(0, 0)`.  Panics if `i > 1`.
    pub fn new(i: u8, m: usize) -> LambdaIndex {
        assert!(i <= 1, "index component i must be 0 or 1");
        LambdaIndex {
            i: if m == 0 { 0 } else { i },
            m,
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The index order: `self <= other` iff `self.m > other.m` or the pairs
    /// are equal.
    pub fn leq(&self, other: &LambdaIndex) -> bool {
        self.m > other.m || self == other
    }

    /// The unique word mapped to this index by `gamma`: length `m`, ending
    /// in `Tr` when `i = 0` and in `Tl` when `i = 1`.
    pub fn to_word(&self) -> Word {
        if self.m == 0 {
            Word::empty()
        } else {
            let tail = if self.i == 0 { Letter::Tr } else { Letter::Tl };
            Word::with_tail(self.m, tail)
        }
    }
}

impl fmt::Display for LambdaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.m)
    }
}

impl FromStr for LambdaIndex {
    type Err = Error;

    /// Parses `(i,m)` or `i,m`.
    fn from_str(s: &str) -> Result<LambdaIndex, Error> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s.trim());
        let mut parts = inner.splitn(2, ',');
        let bad = || Error::IndexSyntax(s.to_string());
        let i: u8 = parts
            .next()
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let m: usize = parts
            .next()
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if i > 1 {
            return Err(bad());
        }
        Ok(LambdaIndex::new(i, m))
    }
}

/// All words of length at most `max_len`, ordered by length and then tail
/// letter (`Tl` before `Tr`); exactly `2 * max_len + 1` words.
pub fn enumerate_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(2 * max_len + 1);
    out.push(Word::empty());
    for len in 1..=max_len {
        out.push(Word::with_tail(len, Letter::Tl));
        out.push(Word::with_tail(len, Letter::Tr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(w("l").multiply(&w("r")), w("lr"));
        assert_eq!(w("lr").multiply(&w("rl")), w("lrl"));
        assert_eq!(w("e").multiply(&w("l")), w("l"));
        assert_eq!(w("l").multiply(&w("e")), w("l"));
    }

    #[test]
    fn letter_idempotence() {
        assert_eq!(w("l").multiply(&w("l")), w("l"));
        assert_eq!(w("r").multiply(&w("r")), w("r"));
    }

    #[test]
    fn accessors() {
        let rlr = w("rlr");
        assert_eq!(rlr.len(), 3);
        assert_eq!(rlr.head(), Some(Letter::Tr));
        assert_eq!(rlr.tail(), Some(Letter::Tr));
        assert_eq!(rlr.mirror(), rlr);

        assert_eq!(w("lr").mirror(), w("rl"));

        let e = Word::empty();
        assert_eq!(e.len(), 0);
        assert_eq!(e.head(), None);
        assert_eq!(e.tail(), None);
        assert_eq!(e.mirror(), e);
    }

    #[test]
    fn word_order() {
        assert!(w("lr").leq(&w("r")));
        assert!(!w("l").leq(&w("r")));
        assert!(w("lrl").leq(&w("lrl")));
        // The empty word is the top.
        assert!(w("l").leq(&w("e")));
        assert!(!w("e").leq(&w("l")));
    }

    #[test]
    fn enumerate_counts_and_order() {
        assert_eq!(enumerate_words(0), vec![Word::empty()]);
        assert_eq!(enumerate_words(1), vec![w("e"), w("l"), w("r")]);
        let three = enumerate_words(3);
        assert_eq!(three.len(), 7);
        assert_eq!(
            three,
            vec![w("e"), w("l"), w("r"), w("rl"), w("lr"), w("lrl"), w("rlr")]
        );
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(Word::empty().gamma(), LambdaIndex::new(0, 0));
        assert_eq!(w("rlr").gamma(), LambdaIndex::new(0, 3));
        assert_eq!(w("l").gamma(), LambdaIndex::new(1, 1));
    }

    #[test]
    fn gamma_inverse_examples() {
        assert_eq!(LambdaIndex::new(0, 0).to_word(), w("e"));
        assert_eq!(LambdaIndex::new(0, 2).to_word(), w("lr"));
        assert_eq!(LambdaIndex::new(1, 3).to_word(), w("lrl"));
    }

    #[test]
    fn lambda_canonical_and_order() {
        assert_eq!(LambdaIndex::new(1, 0), LambdaIndex::new(0, 0));
        assert!(LambdaIndex::new(0, 3).leq(&LambdaIndex::new(1, 1)));
        assert!(!LambdaIndex::new(0, 2).leq(&LambdaIndex::new(1, 2)));
        assert!(LambdaIndex::new(0, 0).leq(&LambdaIndex::new(0, 0)));
    }

    #[test]
    fn lambda_parse() {
        assert_eq!(
            "(1,3)".parse::<LambdaIndex>().unwrap(),
            LambdaIndex::new(1, 3)
        );
        assert_eq!(
            "0,2".parse::<LambdaIndex>().unwrap(),
            LambdaIndex::new(0, 2)
        );
        assert!("(2,1)".parse::<LambdaIndex>().is_err());
    }

    #[test]
    fn parser_rejects_bad_words() {
        assert!("ll".parse::<Word>().is_err());
        assert!("rr".parse::<Word>().is_err());
        assert!("lx".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn associativity_exhaustive_len5() {
        let words = enumerate_words(5);
        assert_eq!(words.len(), 11);
        for a in &words {
            for b in &words {
                let ab = a.multiply(b);
                for c in &words {
                    assert_eq!(ab.multiply(c), a.multiply(&b.multiply(c)));
                }
            }
        }
    }

    #[test]
    fn length_law_exhaustive_len5() {
        for a in enumerate_words(5) {
            for b in enumerate_words(5) {
                let ab = a.multiply(&b);
                if !a.is_empty() && !b.is_empty() && a.tail() == b.head() {
                    assert_eq!(ab.len(), a.len() + b.len() - 1);
                } else {
                    assert_eq!(ab.len(), a.len() + b.len());
                }
            }
        }
    }

    #[test]
    fn mirror_antihomomorphism_exhaustive_len5() {
        for a in enumerate_words(5) {
            assert_eq!(a.mirror().mirror(), a);
            for b in enumerate_words(5) {
                assert_eq!(a.multiply(&b).mirror(), b.mirror().multiply(&a.mirror()));
            }
        }
    }

    #[test]
    fn gamma_is_order_isomorphism_len12() {
        let words = enumerate_words(12);
        assert_eq!(words.len(), 25);
        // Bijectivity onto the canonical indices of level <= 12.
        for a in &words {
            assert_eq!(a.gamma().to_word(), *a);
        }
        for a in &words {
            for b in &words {
                assert_eq!(a.leq(b), a.gamma().leq(&b.gamma()), "at {a}, {b}");
            }
        }
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        (0..=max_len, prop::bool::ANY)
            .prop_map(|(len, tl)| Word::with_tail(len, if tl { Letter::Tl } else { Letter::Tr }))
    }

    proptest! {
        #[test]
        fn prop_product_is_reduced(a in arb_word(40), b in arb_word(40)) {
            let ab = a.multiply(&b);
            prop_assert!(Word::from_letters(ab.letters().to_vec()).is_ok());
        }

        #[test]
        fn prop_display_parse_roundtrip(a in arb_word(40)) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Word>().unwrap(), a);
        }

        #[test]
        fn prop_associative(a in arb_word(12), b in arb_word(12), c in arb_word(12)) {
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }
    }
}
