//! Symbolic component forms.
//!
//! A condition-clean ladder determines an intersection expression over
//! upper operators indexed by mirrored words: the root contributes a plain
//! `K`-exponent term, a carrier value at a word `t` contributes
//! `value^{K mirror(t)}`, and the three specials contribute `S`, `LNB` and
//! `RNB` terms with plain word exponents.  Emission is purely symbolic: the
//! expressions are never evaluated, only rendered deterministically so that
//! outputs can be diffed.
//!
//! Words deeper than the emitted range repeat the tail value, so the form
//! carries one schema term per tail letter (rendered with a `...` exponent)
//! recording that repetition.

use std::fmt;

use crate::error::Error;
use crate::ladder::Ladder;
use crate::model::ExtElem;
use crate::relations::contains_bands;
use crate::theta::{Letter, Word};

/// The base symbol of a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    /// A carrier symbol, by name.
    Sym(String),
    /// The semilattice term contributed by `T*` positions.
    S,
    /// The left-normal-band term contributed by `L*` positions.
    Lnb,
    /// The right-normal-band term contributed by `R*` positions.
    Rnb,
    /// The whole-lattice term.
    Cr,
    /// The opaque band-interval upper bound used by the split form.
    BUpper,
}

impl Base {
    fn name(&self) -> &str {
        match self {
            Base::Sym(s) => s,
            Base::S => "S",
            Base::Lnb => "LNB",
            Base::Rnb => "RNB",
            Base::Cr => "CR",
            Base::BUpper => "V^B",
        }
    }
}

/// The exponent of a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    /// No exponent (`CR`, `V^B`).
    None,
    /// Plain `^K` (the root term).
    K,
    /// `^{K w}` for a mirrored word `w`.
    KWord(Word),
    /// `^{w}` for a mirrored word `w`.
    Word(Word),
    /// Tail schema: `^{K p...}` for every longer mirrored word starting
    /// with the letter `p`.
    KTail(Letter),
    /// Tail schema: `^{p...}`.
    Tail(Letter),
}

/// One term of a component form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub base: Base,
    pub exponent: Exponent,
}

impl Term {
    fn sort_key(&self) -> (usize, String, String, u8) {
        let (len, word, kind) = match &self.exponent {
            Exponent::None => (0, String::new(), 0),
            Exponent::K => (0, String::new(), 1),
            Exponent::KWord(w) => (w.len(), w.to_string(), 2),
            Exponent::Word(w) => (w.len(), w.to_string(), 3),
            Exponent::KTail(p) => (usize::MAX, p.to_string(), 4),
            Exponent::Tail(p) => (usize::MAX, p.to_string(), 5),
        };
        (len, self.base.name().to_string(), word, kind)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base.name())?;
        match &self.exponent {
            Exponent::None => Ok(()),
            Exponent::K => write!(f, "^K"),
            Exponent::KWord(w) => write!(f, "^{{K {w}}}"),
            Exponent::Word(w) => write!(f, "^{{{w}}}"),
            Exponent::KTail(p) => write!(f, "^{{K {p}...}}"),
            Exponent::Tail(p) => write!(f, "^{{{p}...}}"),
        }
    }
}

/// A deduplicated, deterministically ordered intersection of terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentForm {
    pub terms: Vec<Term>,
}

impl ComponentForm {
    fn normalized(mut terms: Vec<Term>) -> ComponentForm {
        terms.sort_by_key(|t| t.sort_key());
        terms.dedup();
        ComponentForm { terms }
    }

    /// Single-line rendering with `&` for intersection.
    pub fn render_text(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        parts.join(" & ")
    }

    /// One record per line for machine diffing: `term <base> <kind> <exp>`.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let (kind, exp) = match &t.exponent {
                Exponent::None => ("none", "-".to_string()),
                Exponent::K => ("K", "-".to_string()),
                Exponent::KWord(w) => ("Kword", w.to_string()),
                Exponent::Word(w) => ("word", w.to_string()),
                Exponent::KTail(p) => ("Ktail", p.to_string()),
                Exponent::Tail(p) => ("tail", p.to_string()),
            };
            out.push_str(&format!("term {} {} {}\n", t.base.name(), kind, exp));
        }
        out
    }

    pub fn has_base(&self, base: &Base) -> bool {
        self.terms.iter().any(|t| &t.base == base)
    }
}

impl fmt::Display for ComponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

fn require_clean(l: &Ladder) -> Result<(), Error> {
    let report = l.check_phi();
    if report.is_clean() {
        Ok(())
    } else {
        Err(Error::DirtyLadder(
            report
                .violations
                .first()
                .map(|v| v.to_string())
                .unwrap_or_default(),
        ))
    }
}

fn special_term(value: ExtElem, exponent: Exponent) -> Term {
    let base = match value {
        ExtElem::TStar => Base::S,
        ExtElem::LStar => Base::Lnb,
        ExtElem::RStar => Base::Rnb,
        ExtElem::Carrier(_) => unreachable!("special_term expects a special"),
    };
    Term { base, exponent }
}

fn emitted_words(l: &Ladder) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=l.depth() + 1 {
        for tail in [Letter::Tl, Letter::Tr] {
            out.push(Word::with_tail(len, tail));
        }
    }
    out
}

/// The full component form of a clean ladder: the root's `K` term, one
/// `^{K mirror}` term per carrier-valued word, the special terms, and the
/// two tail schema terms.
pub fn component_form(l: &Ladder) -> Result<ComponentForm, Error> {
    require_clean(l)?;
    let m = l.model();
    let mut terms = Vec::new();

    let root_name = m.ext_name(l.root());
    terms.push(Term {
        base: Base::Sym(root_name),
        exponent: Exponent::K,
    });

    for w in emitted_words(l) {
        let mirrored = w.mirror();
        match l.evaluate(&w) {
            ExtElem::Carrier(v) => terms.push(Term {
                base: Base::Sym(m.elem_name(v).to_string()),
                exponent: Exponent::KWord(mirrored),
            }),
            special => terms.push(special_term(special, Exponent::Word(mirrored))),
        }
    }

    // Deeper words repeat the tail value; the mirror of a word with tail p
    // starts with p.
    let (tail_l, tail_r) = l.tail_values();
    for (letter, value) in [(Letter::Tl, tail_l), (Letter::Tr, tail_r)] {
        match value {
            ExtElem::Carrier(v) => terms.push(Term {
                base: Base::Sym(m.elem_name(v).to_string()),
                exponent: Exponent::KTail(letter),
            }),
            special => terms.push(special_term(special, Exponent::Tail(letter))),
        }
    }

    Ok(ComponentForm::normalized(terms))
}

/// The band-interval upper bound of a clean ladder: the single term `CR`
/// when the ladder contains bands, otherwise `CR` intersected with one
/// special term per special-valued word.
pub fn b_upper_form(l: &Ladder) -> Result<ComponentForm, Error> {
    require_clean(l)?;
    if contains_bands(l)? {
        return Ok(ComponentForm {
            terms: vec![Term {
                base: Base::Cr,
                exponent: Exponent::None,
            }],
        });
    }
    let mut terms = vec![Term {
        base: Base::Cr,
        exponent: Exponent::None,
    }];
    for w in emitted_words(l) {
        let value = l.evaluate(&w);
        if value.is_special() {
            terms.push(special_term(value, Exponent::Word(w.mirror())));
        }
    }
    let (tail_l, tail_r) = l.tail_values();
    for (letter, value) in [(Letter::Tl, tail_l), (Letter::Tr, tail_r)] {
        if value.is_special() {
            terms.push(special_term(value, Exponent::Tail(letter)));
        }
    }
    Ok(ComponentForm::normalized(terms))
}

/// The case-split form: for a band-containing ladder the pure
/// `^{K mirror}` schema over all emitted words; otherwise the root's `K`
/// term, the carrier-valued terms, and a single opaque `V^B` term standing
/// for [`b_upper_form`].
pub fn band_split_form(l: &Ladder) -> Result<ComponentForm, Error> {
    require_clean(l)?;
    let m = l.model();
    let mut terms = vec![Term {
        base: Base::Sym(m.ext_name(l.root())),
        exponent: Exponent::K,
    }];
    let band = contains_bands(l)?;

    for w in emitted_words(l) {
        if let ExtElem::Carrier(v) = l.evaluate(&w) {
            terms.push(Term {
                base: Base::Sym(m.elem_name(v).to_string()),
                exponent: Exponent::KWord(w.mirror()),
            });
        }
    }
    let (tail_l, tail_r) = l.tail_values();
    for (letter, value) in [(Letter::Tl, tail_l), (Letter::Tr, tail_r)] {
        if let ExtElem::Carrier(v) = value {
            terms.push(Term {
                base: Base::Sym(m.elem_name(v).to_string()),
                exponent: Exponent::KTail(letter),
            });
        }
    }
    if !band {
        terms.push(Term {
            base: Base::BUpper,
            exponent: Exponent::None,
        });
    }
    Ok(ComponentForm::normalized(terms))
}
