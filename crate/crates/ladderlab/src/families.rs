//! Family membership predicates and the embedding constructions.
//!
//! The four families classify clean ladders over models whose carrier
//! elements carry a group-part/CS-part tagging: the band-containing
//! families take values entirely in the tagged parts, the complements
//! additionally admit the specials but must hit `T*` somewhere.  The barred
//! families replace the general lower-image conditions by their
//! single-letter instances, which suffice on models whose lower maps crush
//! everything to the bottom after two letters.

use std::sync::Arc;

use crate::error::Error;
use crate::ladder::{Condition, ConditionReport, ConditionViolation, Ladder};
use crate::model::{ElemId, ExtElem, KernelModel, Part};
use crate::relations::{related, RelationTag};
use crate::theta::{Letter, Word};

/// The four family tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// Order-preserving maps into the group part.
    Bo,
    /// Group part plus specials, with `T*` attained.
    BoBar,
    /// Order-preserving maps into the CS and group parts.
    Blo,
    /// CS and group parts plus specials, with `T*` attained and the
    /// single-letter lower conditions.
    BloBar,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 4] = [
        FamilyTag::Bo,
        FamilyTag::BoBar,
        FamilyTag::Blo,
        FamilyTag::BloBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Bo => "bo",
            FamilyTag::BoBar => "bo-bar",
            FamilyTag::Blo => "blo",
            FamilyTag::BloBar => "blo-bar",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyTag> {
        FamilyTag::ALL.iter().copied().find(|t| t.name() == s)
    }
}

fn require_parts(m: &KernelModel) -> Result<(), Error> {
    if (0..m.carrier_len()).any(|v| m.part(v).is_some()) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "model '{}' lacks the group/cs part classification",
            m.name()
        )))
    }
}

fn in_parts(m: &KernelModel, value: ExtElem, parts: &[Part], allow_specials: bool) -> bool {
    match value {
        ExtElem::Carrier(v) => m.part(v).is_some_and(|p| parts.contains(&p)),
        _ => allow_specials,
    }
}

/// Membership report for a family; empty iff the ladder belongs to it.
pub fn in_family(tag: FamilyTag, l: &Ladder) -> Result<ConditionReport, Error> {
    let m = l.model();
    require_parts(m)?;
    let mut report = ConditionReport::default();

    let (parts, specials): (&[Part], bool) = match tag {
        FamilyTag::Bo => (&[Part::Group], false),
        FamilyTag::BoBar => (&[Part::Group], true),
        FamilyTag::Blo => (&[Part::Group, Part::Cs], false),
        FamilyTag::BloBar => (&[Part::Group, Part::Cs], true),
    };
    let what = match tag {
        FamilyTag::Bo => "the group part",
        FamilyTag::BoBar => "the group part plus specials",
        FamilyTag::Blo => "the group and cs parts",
        FamilyTag::BloBar => "the group and cs parts plus specials",
    };

    // Pointwise membership, root included.
    if !in_parts(m, l.root(), parts, false) {
        report.violations.push(ConditionViolation {
            condition: Condition::P1,
            witnesses: vec![Word::empty()],
            message: format!("root {} lies outside {what}", m.ext_name(l.root())),
        });
    }
    report
        .violations
        .extend(l.membership_violations(Condition::P1, what, |v| in_parts(m, v, parts, specials)));

    report.violations.extend(l.order_violations());

    if matches!(tag, FamilyTag::BoBar | FamilyTag::BloBar) {
        if let Some(v) = l.root_violation(Condition::P1) {
            report.violations.push(v);
        }
        report.violations.extend(l.special_placement_violations());
        if !l.has_tstar() {
            report.violations.push(ConditionViolation {
                condition: Condition::TStar,
                witnesses: vec![],
                message: "no nonempty word takes the value T*".to_string(),
            });
        }
    }

    if tag == FamilyTag::BloBar {
        // Single-letter instances of the lower-image conditions: for the
        // root and for every k0-valued word, one letter deep.
        if let ExtElem::Carrier(root) = l.root() {
            if m.in_k0(root) {
                for letter in [Letter::Tl, Letter::Tr] {
                    let tau = Word::letter(letter);
                    let low = m.lower_star(root, &tau);
                    let val = l.evaluate(&tau);
                    if !m.ext_leq(low, val) {
                        report.violations.push(ConditionViolation {
                            condition: Condition::P5Star,
                            witnesses: vec![tau],
                            message: format!(
                                "single-letter lower image {} of the root is not below {}",
                                m.ext_name(low),
                                m.ext_name(val)
                            ),
                        });
                    }
                }
            }
        }
        for slen in 1..=l.depth() + 2 {
            for stail in [Letter::Tl, Letter::Tr] {
                let sigma = Word::with_tail(slen, stail);
                let ExtElem::Carrier(v) = l.evaluate(&sigma) else {
                    continue;
                };
                if !m.in_k0(v) {
                    continue;
                }
                let tau = Word::letter(stail.other());
                let low = m.lower_star(v, &tau);
                let val = l.evaluate(&sigma.multiply(&tau));
                if !m.ext_leq(low, val) {
                    report.violations.push(ConditionViolation {
                        condition: Condition::P6Star,
                        witnesses: vec![sigma, tau],
                        message: format!(
                            "single-letter lower image {} is not below {}",
                            m.ext_name(low),
                            m.ext_name(val)
                        ),
                    });
                }
            }
        }
    }

    Ok(report)
}

fn named(m: &KernelModel, name: &str) -> Result<ElemId, Error> {
    m.elem(name)
}

/// Root `p`, every other word `u`; requires both symbols group-tagged with
/// `u` below `p`.
pub fn embed_pk(m: &Arc<KernelModel>, p: &str, u: &str) -> Result<Ladder, Error> {
    let pid = named(m, p)?;
    let uid = named(m, u)?;
    if m.part(pid) != Some(Part::Group) || m.part(uid) != Some(Part::Group) {
        return Err(Error::Precondition(format!(
            "embed pk needs group-part symbols; got '{p}' and '{u}'"
        )));
    }
    if !m.leq_ids(uid, pid) {
        return Err(Error::Precondition(format!("'{u}' is not below '{p}'")));
    }
    Ok(Ladder::constant(
        Arc::clone(m),
        ExtElem::Carrier(pid),
        ExtElem::Carrier(uid),
    ))
}

/// Root `q`, every other word `u`; requires a cs-tagged `q` and an
/// admissible `u` below it.
pub fn embed_qk(m: &Arc<KernelModel>, q: &str, u: &str) -> Result<Ladder, Error> {
    let qid = named(m, q)?;
    let uid = named(m, u)?;
    if m.part(qid) != Some(Part::Cs) {
        return Err(Error::Precondition(format!(
            "embed qk needs a cs-part root; '{q}' is not cs-tagged"
        )));
    }
    if !m.admissible_ids().contains(&uid) {
        return Err(Error::Precondition(format!(
            "'{u}' is outside the model's admissible image set"
        )));
    }
    if !m.leq_ids(uid, qid) {
        return Err(Error::Precondition(format!("'{u}' is not below '{q}'")));
    }
    Ok(Ladder::constant(
        Arc::clone(m),
        ExtElem::Carrier(qid),
        ExtElem::Carrier(uid),
    ))
}

/// Root at the carrier top, `u` at the single-letter `Tr` word, `T*`
/// everywhere else; requires a group-tagged `u` and a top element.
pub fn lro_ladder(m: &Arc<KernelModel>, u: &str) -> Result<Ladder, Error> {
    let uid = named(m, u)?;
    if m.part(uid) != Some(Part::Group) {
        return Err(Error::Precondition(format!(
            "lro needs a group-part argument; '{u}' is not group-tagged"
        )));
    }
    let Some(top) = m.top() else {
        return Err(Error::Precondition(format!(
            "model '{}' has no top element",
            m.name()
        )));
    };
    Ladder::new(
        Arc::clone(m),
        ExtElem::Carrier(top),
        vec![ExtElem::TStar, ExtElem::TStar],
        vec![ExtElem::Carrier(uid), ExtElem::TStar],
        ExtElem::TStar,
        ExtElem::TStar,
    )
}

/// Which embedding construction to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedConstruct {
    /// Arguments range over the group part below `p`.
    Pk { p: String },
    /// Arguments range over the admissible set below `q`.
    Qk { q: String },
    /// Arguments range over the whole group part.
    Lro,
}

/// Outcome of an embedding check; empty iff every verification passed.
#[derive(Debug, Clone, Default)]
pub struct EmbedCheckReport {
    pub failures: Vec<String>,
}

impl EmbedCheckReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies, over all argument pairs of the construction, that it is an
/// injective lattice homomorphism into the clean ladders, that all images
/// share a root (one K-class), and that distinct arguments are separated by
/// the expected trace relation: the constant constructions differ at every
/// nonempty word (distinct Tl-classes), while the `lro` images agree on all
/// `Tl`-headed words and differ on the `Tr` side.
pub fn embedding_check(
    m: &Arc<KernelModel>,
    construct: &EmbedConstruct,
) -> Result<EmbedCheckReport, Error> {
    let mut report = EmbedCheckReport::default();

    let args: Vec<ElemId> = match construct {
        EmbedConstruct::Pk { p } => {
            let pid = named(m, p)?;
            (0..m.carrier_len())
                .filter(|&v| m.part(v) == Some(Part::Group) && m.leq_ids(v, pid))
                .collect()
        }
        EmbedConstruct::Qk { q } => {
            let qid = named(m, q)?;
            m.admissible_ids()
                .into_iter()
                .filter(|&v| m.leq_ids(v, qid))
                .collect()
        }
        EmbedConstruct::Lro => (0..m.carrier_len())
            .filter(|&v| m.part(v) == Some(Part::Group))
            .collect(),
    };
    if args.is_empty() {
        return Err(Error::Precondition(
            "embedding check has no admissible arguments".to_string(),
        ));
    }

    let build = |v: ElemId| -> Result<Ladder, Error> {
        let name = m.elem_name(v);
        match construct {
            EmbedConstruct::Pk { p } => embed_pk(m, p, name),
            EmbedConstruct::Qk { q } => embed_qk(m, q, name),
            EmbedConstruct::Lro => lro_ladder(m, name),
        }
    };

    let images: Vec<(ElemId, Ladder)> = args
        .iter()
        .map(|&v| build(v).map(|l| (v, l)))
        .collect::<Result<_, _>>()?;

    for (v, l) in &images {
        if !l.check_phi().is_clean() {
            report
                .failures
                .push(format!("image of {} is not clean", m.elem_name(*v)));
        }
    }

    for (u, lu) in &images {
        for (w, lw) in &images {
            let join_arg = m.join_ids(*u, *w);
            let meet_arg = m.meet_ids(*u, *w);
            if args.contains(&join_arg) {
                let expected = build(join_arg)?;
                if lu.join(lw)? != expected {
                    report.failures.push(format!(
                        "join is not preserved at ({}, {})",
                        m.elem_name(*u),
                        m.elem_name(*w)
                    ));
                }
            } else {
                report.failures.push(format!(
                    "argument set is not join-closed at ({}, {})",
                    m.elem_name(*u),
                    m.elem_name(*w)
                ));
            }
            if args.contains(&meet_arg) {
                let expected = build(meet_arg)?;
                if lu.meet(lw)? != expected {
                    report.failures.push(format!(
                        "meet is not preserved at ({}, {})",
                        m.elem_name(*u),
                        m.elem_name(*w)
                    ));
                }
            } else {
                report.failures.push(format!(
                    "argument set is not meet-closed at ({}, {})",
                    m.elem_name(*u),
                    m.elem_name(*w)
                ));
            }

            if u != w {
                if lu == lw {
                    report.failures.push(format!(
                        "not injective at ({}, {})",
                        m.elem_name(*u),
                        m.elem_name(*w)
                    ));
                }
                if !related(RelationTag::K, lu, lw)? {
                    report.failures.push(format!(
                        "images of {} and {} do not share a K-class",
                        m.elem_name(*u),
                        m.elem_name(*w)
                    ));
                }
                let (tag, expect) = match construct {
                    EmbedConstruct::Lro => (RelationTag::Tr, false),
                    _ => (RelationTag::Tl, false),
                };
                if related(tag, lu, lw)? != expect {
                    report.failures.push(format!(
                        "images of {} and {} are unexpectedly {}-related",
                        m.elem_name(*u),
                        m.elem_name(*w),
                        tag.name()
                    ));
                }
                if matches!(construct, EmbedConstruct::Lro) && !related(RelationTag::Tl, lu, lw)? {
                    report.failures.push(format!(
                        "lro images of {} and {} should share their Tl-chain",
                        m.elem_name(*u),
                        m.elem_name(*w)
                    ));
                }
            }
        }
    }

    // The lro image is an interval: every clean ladder between the images
    // of the bottom and top arguments is itself an image.
    if matches!(construct, EmbedConstruct::Lro) {
        let max_depth = images
            .iter()
            .map(|(_, l)| l.depth())
            .max()
            .unwrap_or(1)
            .max(1);
        let lowest = build(*args.iter().min_by_key(|&&v| rank_key(m, v)).unwrap())?;
        let highest = build(*args.iter().max_by_key(|&&v| rank_key(m, v)).unwrap())?;
        for candidate in crate::ladder::enumerate_phi(m, max_depth)? {
            if lowest.leq(&candidate)? && candidate.leq(&highest)? {
                let in_image = images.iter().any(|(_, l)| l == &candidate);
                if !in_image {
                    report.failures.push(format!(
                        "image is not order-convex: a clean ladder between the extremes is missing\n{}",
                        candidate.emit()
                    ));
                }
            }
        }
    }

    Ok(report)
}

fn rank_key(m: &KernelModel, v: ElemId) -> usize {
    (0..m.carrier_len()).filter(|&x| m.leq_ids(x, v)).count()
}
