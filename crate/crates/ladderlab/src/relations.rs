//! The relation calculus on ladders.
//!
//! Two ladders are `K`-related when their roots agree, `Tl`-related when
//! they agree at every word with head `Tl` (dually `Tr`), and `Kl`/`Kr`
//! combine the two.  The `B` relation compares only the positions of the
//! three special values.  All quantifiers are finite: past the maximal
//! stabilization depth the compared values repeat.

use crate::error::Error;
use crate::ladder::Ladder;
use crate::model::ExtElem;
use crate::theta::{Letter, Word};

/// The six ladder relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationTag {
    K,
    Tl,
    Tr,
    Kl,
    Kr,
    B,
}

impl RelationTag {
    pub const ALL: [RelationTag; 6] = [
        RelationTag::K,
        RelationTag::Tl,
        RelationTag::Tr,
        RelationTag::Kl,
        RelationTag::Kr,
        RelationTag::B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationTag::K => "K",
            RelationTag::Tl => "Tl",
            RelationTag::Tr => "Tr",
            RelationTag::Kl => "Kl",
            RelationTag::Kr => "Kr",
            RelationTag::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<RelationTag> {
        RelationTag::ALL.iter().copied().find(|t| t.name() == s)
    }
}

fn ensure_same_model(l1: &Ladder, l2: &Ladder) -> Result<(), Error> {
    if std::sync::Arc::ptr_eq(l1.model(), l2.model()) || l1.model() == l2.model() {
        Ok(())
    } else {
        Err(Error::ModelMismatch(
            l1.model().name().to_string(),
            l2.model().name().to_string(),
        ))
    }
}

fn quantifier_bound(l1: &Ladder, l2: &Ladder) -> usize {
    l1.depth().max(l2.depth()) + 2
}

/// Agreement at every word with the given head letter; one word per length.
fn heads_agree(l1: &Ladder, l2: &Ladder, head: Letter) -> bool {
    let bound = quantifier_bound(l1, l2);
    (1..=bound).all(|len| {
        let tail = if len % 2 == 1 { head } else { head.other() };
        let w = Word::with_tail(len, tail);
        l1.evaluate(&w) == l2.evaluate(&w)
    })
}

/// Whether the two ladders are related under `tag`.
pub fn related(tag: RelationTag, l1: &Ladder, l2: &Ladder) -> Result<bool, Error> {
    ensure_same_model(l1, l2)?;
    let ok = match tag {
        RelationTag::K => l1.root() == l2.root(),
        RelationTag::Tl => heads_agree(l1, l2, Letter::Tl),
        RelationTag::Tr => heads_agree(l1, l2, Letter::Tr),
        RelationTag::Kl => l1.root() == l2.root() && heads_agree(l1, l2, Letter::Tl),
        RelationTag::Kr => l1.root() == l2.root() && heads_agree(l1, l2, Letter::Tr),
        RelationTag::B => {
            let bound = quantifier_bound(l1, l2);
            let mut ok = true;
            'outer: for len in 1..=bound {
                for tail in [Letter::Tl, Letter::Tr] {
                    let w = Word::with_tail(len, tail);
                    let (a, b) = (l1.evaluate(&w), l2.evaluate(&w));
                    for special in [ExtElem::TStar, ExtElem::LStar, ExtElem::RStar] {
                        if (a == special) != (b == special) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            ok
        }
    };
    Ok(ok)
}

/// Whether the ladder's variety contains all bands: no word may take the
/// value `T*`.  Expects a condition-clean ladder and cross-checks the
/// equivalent reading "no special value anywhere"; a ladder with some
/// special but no `T*` is reported as inconsistent, since order
/// preservation forces `T*` two levels below any special.
pub fn contains_bands(l: &Ladder) -> Result<bool, Error> {
    let m = l.model();
    let bound = l.depth() + 2;
    let mut has_tstar = matches!(l.root(), ExtElem::TStar);
    let mut has_special = l.root().is_special();
    for len in 1..=bound {
        for tail in [Letter::Tl, Letter::Tr] {
            let v = l.evaluate(&Word::with_tail(len, tail));
            has_tstar |= v == ExtElem::TStar;
            has_special |= v.is_special();
        }
    }
    if has_special && !has_tstar {
        return Err(Error::InconsistentLadder(format!(
            "ladder over '{}' has a special value but no T* anywhere",
            m.name()
        )));
    }
    Ok(!has_tstar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::Ladder;
    use crate::model::{self, ExtElem::*};
    use std::sync::Arc;

    fn chain3() -> Arc<model::KernelModel> {
        Arc::new(model::orthodox_chain(3).unwrap())
    }

    fn embed_shape(m: &Arc<model::KernelModel>, p: &str, u: &str) -> Ladder {
        let p = Carrier(m.elem(p).unwrap());
        let u = Carrier(m.elem(u).unwrap());
        Ladder::constant(Arc::clone(m), p, u)
    }

    fn lro_shape(m: &Arc<model::KernelModel>, u: &str) -> Ladder {
        let top = Carrier(m.top().unwrap());
        let u = Carrier(m.elem(u).unwrap());
        Ladder::new(
            Arc::clone(m),
            top,
            vec![TStar, TStar],
            vec![u, TStar],
            TStar,
            TStar,
        )
        .unwrap()
    }

    #[test]
    fn embed_pairs_share_k_but_not_tl() {
        let m = chain3();
        let phi_u = embed_shape(&m, "G", "T");
        let phi_w = embed_shape(&m, "G", "A");
        assert!(related(RelationTag::K, &phi_u, &phi_w).unwrap());
        assert!(!related(RelationTag::Tl, &phi_u, &phi_w).unwrap());
        assert!(!related(RelationTag::Kl, &phi_u, &phi_w).unwrap());
        assert!(related(RelationTag::B, &phi_u, &phi_u).unwrap());
    }

    #[test]
    fn lro_pairs_share_tl_but_not_tr() {
        let m = chain3();
        let a = lro_shape(&m, "T");
        let b = lro_shape(&m, "A");
        assert!(related(RelationTag::K, &a, &b).unwrap());
        assert!(related(RelationTag::Tl, &a, &b).unwrap());
        assert!(!related(RelationTag::Tr, &a, &b).unwrap());
        assert!(related(RelationTag::B, &a, &b).unwrap());
    }

    #[test]
    fn kl_is_k_and_tl() {
        let m = chain3();
        let ladders = [
            embed_shape(&m, "G", "T"),
            embed_shape(&m, "G", "A"),
            embed_shape(&m, "A", "T"),
            lro_shape(&m, "A"),
        ];
        for a in &ladders {
            for b in &ladders {
                let kl = related(RelationTag::Kl, a, b).unwrap();
                let conj = related(RelationTag::K, a, b).unwrap()
                    && related(RelationTag::Tl, a, b).unwrap();
                assert_eq!(kl, conj);
            }
        }
    }

    #[test]
    fn band_containment() {
        let m = chain3();
        // All-carrier ladder: contains bands.
        assert!(contains_bands(&embed_shape(&m, "G", "A")).unwrap());
        // T* from depth two: does not.
        assert!(!contains_bands(&lro_shape(&m, "G")).unwrap());
        // A special with no T* anywhere is inconsistent.
        let weird = Ladder::new(
            Arc::clone(&m),
            Carrier(m.elem("G").unwrap()),
            vec![Carrier(m.elem("A").unwrap())],
            vec![LStar],
            Carrier(m.elem("A").unwrap()),
            LStar,
        )
        .unwrap();
        assert!(matches!(
            contains_bands(&weird),
            Err(Error::InconsistentLadder(_))
        ));
        // L* at r with T* below it: consistent, no bands.
        let lstar = Ladder::new(
            Arc::clone(&m),
            Carrier(m.elem("G").unwrap()),
            vec![TStar, TStar],
            vec![LStar, TStar],
            TStar,
            TStar,
        )
        .unwrap();
        assert!(!contains_bands(&lstar).unwrap());
    }

    #[test]
    fn tail_differences_are_detected() {
        // Depth-zero ladders differing only in a tail value must not be
        // Tl-related: the head-Tl word of length two ends in Tr.
        let m = chain3();
        let t = Carrier(m.elem("T").unwrap());
        let a = Carrier(m.elem("A").unwrap());
        let g = Carrier(m.elem("G").unwrap());
        let x = Ladder::new(Arc::clone(&m), g, vec![], vec![], t, t).unwrap();
        let y = Ladder::new(Arc::clone(&m), g, vec![], vec![], t, a).unwrap();
        assert!(!related(RelationTag::Tl, &x, &y).unwrap());
        assert!(!related(RelationTag::Tr, &x, &y).unwrap());
    }
}
