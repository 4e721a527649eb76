//! Finite, pluggable kernel-lattice models.
//!
//! A model carries a finite carrier lattice of variety symbols together with
//! the operator data needed to evaluate lower operators symbolically: the
//! two single-letter lower maps (`lowL`, `lowR`), the K-lower map (`kmap`)
//! into the designated sublattice `k0`, and an assignment of the six special
//! roles `T, S, LZ, RZ, LNB, RNB` to carrier elements.  Three extra elements
//! `T*`, `L*`, `R*` live outside the carrier and are ordered below every
//! carrier element, with `T* < L*`, `T* < R*` and `L*`, `R*` incomparable.
//!
//! Models are plain data: the validator reports axiom violations instead of
//! refusing construction, so defective models can be loaded, inspected and
//! reported on.  All ladder-level machinery assumes a validated model.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::theta::{Letter, Word};

/// Index of a carrier element within its model.
pub type ElemId = usize;

/// The six designated roles a carrier element may play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    T,
    S,
    Lz,
    Rz,
    Lnb,
    Rnb,
}

impl Role {
    pub const ALL: [Role; 6] = [Role::T, Role::S, Role::Lz, Role::Rz, Role::Lnb, Role::Rnb];

    pub fn name(self) -> &'static str {
        match self {
            Role::T => "T",
            Role::S => "S",
            Role::Lz => "LZ",
            Role::Rz => "RZ",
            Role::Lnb => "LNB",
            Role::Rnb => "RNB",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        Role::ALL.iter().copied().find(|r| r.name() == s)
    }
}

/// Carrier part classification used by the family predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Group,
    Cs,
}

/// An element of the extended lattice: one of the three adjoined specials or
/// a carrier element.
///
/// The derived `Ord` is a fixed canonical order used for deterministic
/// sorting and deduplication only; the lattice order is `KernelModel::ext_leq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElem {
    TStar,
    LStar,
    RStar,
    Carrier(ElemId),
}

impl ExtElem {
    pub fn is_special(self) -> bool {
        !matches!(self, ExtElem::Carrier(_))
    }

    pub fn carrier(self) -> Option<ElemId> {
        match self {
            ExtElem::Carrier(v) => Some(v),
            _ => None,
        }
    }
}

/// A single validator finding: the violated axiom plus witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.axiom, self.message)
    }
}

/// Raw model data, as read from a model file or assembled in code.
///
/// `order` lists pairs `a < b`; the reflexive-transitive closure is taken at
/// build time.  Entries missing from `low_l`, `low_r` or `kmap` default to
/// the identity.
#[derive(Debug, Clone, Default)]
pub struct ModelSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub k0: Vec<String>,
    pub designated: Vec<(Role, String)>,
    pub low_l: Vec<(String, String)>,
    pub low_r: Vec<(String, String)>,
    pub kmap: Vec<(String, String)>,
    pub parts: Vec<(String, Part)>,
    pub admissible: Vec<String>,
}

/// A finite kernel-lattice model.  Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelModel {
    name: String,
    names: Vec<String>,
    index: BTreeMap<String, ElemId>,
    /// Reflexive-transitive order matrix: `leq[a * n + b]` iff `a <= b`.
    leq: Vec<bool>,
    /// Join/meet tables; `None` when the order is not a lattice.
    joins: Option<Vec<ElemId>>,
    meets: Option<Vec<ElemId>>,
    k0: Vec<bool>,
    designated: [Option<ElemId>; 6],
    low_l: Vec<ElemId>,
    low_r: Vec<ElemId>,
    kmap: Vec<ElemId>,
    parts: Vec<Option<Part>>,
    admissible: Option<Vec<bool>>,
    bottom: Option<ElemId>,
    top: Option<ElemId>,
    /// Carrier ids in a fixed linear extension of the order (rank, then name).
    topo: Vec<ElemId>,
    /// Length (in edges) of a longest chain in the carrier.
    height: usize,
    violations: Vec<Violation>,
}

fn resolve(index: &BTreeMap<String, ElemId>, name: &str) -> Result<ElemId, Error> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "T*"
        && name != "L*"
        && name != "R*"
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

impl ModelSpec {
    pub fn build(self) -> Result<KernelModel, Error> {
        let n = self.elements.len();
        let mut index = BTreeMap::new();
        for (id, name) in self.elements.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Precondition(format!(
                    "invalid element name '{name}'"
                )));
            }
            if index.insert(name.clone(), id).is_some() {
                return Err(Error::Precondition(format!("duplicate element '{name}'")));
            }
        }

        let mut leq = vec![false; n * n];
        for id in 0..n {
            leq[id * n + id] = true;
        }
        for (a, b) in &self.order {
            let a = resolve(&index, a)?;
            let b = resolve(&index, b)?;
            leq[a * n + b] = true;
        }
        // Transitive closure (Warshall).
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }

        let mut k0 = vec![false; n];
        for name in &self.k0 {
            k0[resolve(&index, name)?] = true;
        }

        let mut designated = [None; 6];
        for (role, name) in &self.designated {
            let slot = &mut designated[*role as usize];
            if slot.is_some() {
                return Err(Error::Precondition(format!(
                    "role {} designated twice",
                    role.name()
                )));
            }
            *slot = Some(resolve(&index, name)?);
        }

        let table = |pairs: &[(String, String)], what: &str| -> Result<Vec<ElemId>, Error> {
            let mut t: Vec<ElemId> = (0..n).collect();
            let mut seen = vec![false; n];
            for (a, b) in pairs {
                let a = resolve(&index, a)?;
                let b = resolve(&index, b)?;
                if seen[a] {
                    return Err(Error::Precondition(format!(
                        "duplicate {what} entry for '{}'",
                        self.elements[a]
                    )));
                }
                seen[a] = true;
                t[a] = b;
            }
            Ok(t)
        };
        let low_l = table(&self.low_l, "lowL")?;
        let low_r = table(&self.low_r, "lowR")?;
        let kmap = table(&self.kmap, "kmap")?;

        let mut parts = vec![None; n];
        for (name, part) in &self.parts {
            parts[resolve(&index, name)?] = Some(*part);
        }

        let admissible = if self.admissible.is_empty() {
            None
        } else {
            let mut adm = vec![false; n];
            for name in &self.admissible {
                adm[resolve(&index, name)?] = true;
            }
            Some(adm)
        };

        Ok(KernelModel::assemble(
            self.name,
            self.elements,
            index,
            leq,
            k0,
            designated,
            low_l,
            low_r,
            kmap,
            parts,
            admissible,
        ))
    }
}

impl KernelModel {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        names: Vec<String>,
        index: BTreeMap<String, ElemId>,
        leq: Vec<bool>,
        k0: Vec<bool>,
        designated: [Option<ElemId>; 6],
        low_l: Vec<ElemId>,
        low_r: Vec<ElemId>,
        kmap: Vec<ElemId>,
        parts: Vec<Option<Part>>,
        admissible: Option<Vec<bool>>,
    ) -> KernelModel {
        let n = names.len();
        let le = |a: ElemId, b: ElemId| leq[a * n + b];

        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))));

        let bottom = (0..n).find(|&b| (0..n).all(|v| le(b, v)));
        let top = (0..n).find(|&t| (0..n).all(|v| le(v, t)));

        // Longest-chain rank; only meaningful on an antisymmetric order.
        let mut rank = vec![0usize; n];
        if antisymmetric {
            let mut changed = true;
            while changed {
                changed = false;
                for a in 0..n {
                    for b in 0..n {
                        if a != b && le(a, b) && rank[b] < rank[a] + 1 {
                            rank[b] = rank[a] + 1;
                            changed = true;
                        }
                    }
                }
            }
        }
        let height = rank.iter().copied().max().unwrap_or(0);

        let mut topo: Vec<ElemId> = (0..n).collect();
        topo.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then_with(|| names[a].cmp(&names[b])));

        let bound = |a: ElemId, b: ElemId, upper: bool| -> Option<ElemId> {
            let bounds: Vec<ElemId> = (0..n)
                .filter(|&c| {
                    if upper {
                        le(a, c) && le(b, c)
                    } else {
                        le(c, a) && le(c, b)
                    }
                })
                .collect();
            let extreme: Vec<ElemId> = bounds
                .iter()
                .copied()
                .filter(|&c| {
                    bounds.iter().all(|&d| {
                        if upper {
                            !(le(d, c) && d != c)
                        } else {
                            !(le(c, d) && d != c)
                        }
                    })
                })
                .collect();
            match extreme.as_slice() {
                [one] => Some(*one),
                _ => None,
            }
        };
        let mut joins = Some(vec![0; n * n]);
        let mut meets = Some(vec![0; n * n]);
        for a in 0..n {
            for b in 0..n {
                match (bound(a, b, true), joins.as_mut()) {
                    (Some(j), Some(t)) => t[a * n + b] = j,
                    _ => joins = None,
                }
                match (bound(a, b, false), meets.as_mut()) {
                    (Some(m), Some(t)) => t[a * n + b] = m,
                    _ => meets = None,
                }
            }
        }
        if !antisymmetric {
            joins = None;
            meets = None;
        }

        let mut model = KernelModel {
            name,
            names,
            index,
            leq,
            joins,
            meets,
            k0,
            designated,
            low_l,
            low_r,
            kmap,
            parts,
            admissible,
            bottom,
            top,
            topo,
            height,
            violations: Vec::new(),
        };
        model.violations = model.compute_violations(antisymmetric);
        model
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier_len(&self) -> usize {
        self.names.len()
    }

    pub fn elem(&self, name: &str) -> Result<ElemId, Error> {
        resolve(&self.index, name)
    }

    pub fn elem_name(&self, id: ElemId) -> &str {
        &self.names[id]
    }

    pub fn ext_name(&self, e: ExtElem) -> String {
        match e {
            ExtElem::TStar => "T*".to_string(),
            ExtElem::LStar => "L*".to_string(),
            ExtElem::RStar => "R*".to_string(),
            ExtElem::Carrier(v) => self.names[v].clone(),
        }
    }

    /// Parses `T*`, `L*`, `R*` or a carrier element name.
    pub fn ext_parse(&self, s: &str) -> Result<ExtElem, Error> {
        match s {
            "T*" => Ok(ExtElem::TStar),
            "L*" => Ok(ExtElem::LStar),
            "R*" => Ok(ExtElem::RStar),
            name => Ok(ExtElem::Carrier(self.elem(name)?)),
        }
    }

    pub fn bottom(&self) -> Option<ElemId> {
        self.bottom
    }

    pub fn top(&self) -> Option<ElemId> {
        self.top
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn in_k0(&self, id: ElemId) -> bool {
        self.k0[id]
    }

    pub fn k0_ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.topo.iter().copied().filter(|&v| self.k0[v])
    }

    /// True when `e` lies in the ladder codomain `k0` plus specials.
    pub fn in_k(&self, e: ExtElem) -> bool {
        match e {
            ExtElem::Carrier(v) => self.k0[v],
            _ => true,
        }
    }

    pub fn designated(&self, role: Role) -> Option<ElemId> {
        self.designated[role as usize]
    }

    pub fn part(&self, id: ElemId) -> Option<Part> {
        self.parts[id]
    }

    pub fn low(&self, letter: Letter, v: ElemId) -> ElemId {
        match letter {
            Letter::Tl => self.low_l[v],
            Letter::Tr => self.low_r[v],
        }
    }

    pub fn kmap(&self, v: ElemId) -> ElemId {
        self.kmap[v]
    }

    /// Carrier ids in a fixed linear extension of the order.
    pub fn topo_carrier(&self) -> &[ElemId] {
        &self.topo
    }

    pub fn leq_ids(&self, a: ElemId, b: ElemId) -> bool {
        self.leq[a * self.names.len() + b]
    }

    pub fn is_lattice(&self) -> bool {
        self.joins.is_some() && self.meets.is_some()
    }

    /// Carrier join.  Panics when the model order is not a lattice; validate
    /// first.
    pub fn join_ids(&self, a: ElemId, b: ElemId) -> ElemId {
        let t = self.joins.as_ref().expect("model order is not a lattice");
        t[a * self.names.len() + b]
    }

    /// Carrier meet.  Panics when the model order is not a lattice.
    pub fn meet_ids(&self, a: ElemId, b: ElemId) -> ElemId {
        let t = self.meets.as_ref().expect("model order is not a lattice");
        t[a * self.names.len() + b]
    }

    /// The extended order: `T*` below everything, `L*` and `R*` incomparable
    /// and below every carrier element, carrier pairs per the carrier order.
    pub fn ext_leq(&self, a: ExtElem, b: ExtElem) -> bool {
        use ExtElem::*;
        match (a, b) {
            (TStar, _) => true,
            (LStar, LStar) | (RStar, RStar) => true,
            (LStar, Carrier(_)) | (RStar, Carrier(_)) => true,
            (LStar, _) | (RStar, _) => false,
            (Carrier(x), Carrier(y)) => self.leq_ids(x, y),
            (Carrier(_), _) => false,
        }
    }

    /// Join in the extended lattice.  `join(L*, R*)` is the carrier bottom.
    pub fn ext_join(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        use ExtElem::*;
        match (a, b) {
            (TStar, x) | (x, TStar) => x,
            (LStar, LStar) => LStar,
            (RStar, RStar) => RStar,
            (LStar, RStar) | (RStar, LStar) => {
                ExtElem::Carrier(self.bottom.expect("join(L*, R*) needs a carrier bottom"))
            }
            (LStar, Carrier(v)) | (Carrier(v), LStar) => Carrier(v),
            (RStar, Carrier(v)) | (Carrier(v), RStar) => Carrier(v),
            (Carrier(x), Carrier(y)) => Carrier(self.join_ids(x, y)),
        }
    }

    /// Meet in the extended lattice.  `meet(L*, R*) = T*`.
    pub fn ext_meet(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        use ExtElem::*;
        match (a, b) {
            (TStar, _) | (_, TStar) => TStar,
            (LStar, LStar) => LStar,
            (RStar, RStar) => RStar,
            (LStar, RStar) | (RStar, LStar) => TStar,
            (LStar, Carrier(_)) | (Carrier(_), LStar) => LStar,
            (RStar, Carrier(_)) | (Carrier(_), RStar) => RStar,
            (Carrier(x), Carrier(y)) => Carrier(self.meet_ids(x, y)),
        }
    }

    /// The K*-image of a carrier element: `T*` for the `T`/`S` roles, `L*`
    /// for `LZ`/`LNB`, `R*` for `RZ`/`RNB`, otherwise the `kmap` image.
    pub fn kstar(&self, v: ElemId) -> ExtElem {
        let is = |role: Role| self.designated[role as usize] == Some(v);
        if is(Role::T) || is(Role::S) {
            ExtElem::TStar
        } else if is(Role::Lz) || is(Role::Lnb) {
            ExtElem::LStar
        } else if is(Role::Rz) || is(Role::Rnb) {
            ExtElem::RStar
        } else {
            ExtElem::Carrier(self.kmap[v])
        }
    }

    /// Applies the single-letter lower maps along the letters of `tau`
    /// (left to right) and then `kstar`.  `tau` is expected to be nonempty.
    pub fn lower_star(&self, v: ElemId, tau: &Word) -> ExtElem {
        debug_assert!(!tau.is_empty(), "lower_star expects a nonempty word");
        let mut cur = v;
        for &letter in tau.letters() {
            cur = self.low(letter, cur);
        }
        self.kstar(cur)
    }

    /// The admissible image set for the rectangular embedding construction:
    /// the listed elements if the model supplies them, otherwise every
    /// part-tagged carrier element.
    pub fn admissible_ids(&self) -> Vec<ElemId> {
        match &self.admissible {
            Some(adm) => self.topo.iter().copied().filter(|&v| adm[v]).collect(),
            None => self
                .topo
                .iter()
                .copied()
                .filter(|&v| self.parts[v].is_some())
                .collect(),
        }
    }

    /// All axiom violations found in this model; empty iff the model is
    /// well-formed.
    pub fn validate(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn compute_violations(&self, antisymmetric: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.names.len();
        let name = |v: ElemId| self.names[v].as_str();

        if !antisymmetric {
            for a in 0..n {
                for b in (a + 1)..n {
                    if self.leq_ids(a, b) && self.leq_ids(b, a) {
                        out.push(Violation {
                            axiom: "antisymmetry",
                            message: format!("order is cyclic at ({}, {})", name(a), name(b)),
                        });
                    }
                }
            }
        }

        if self.bottom.is_none() {
            out.push(Violation {
                axiom: "bottom",
                message: "carrier order has no bottom element".to_string(),
            });
        }

        if antisymmetric {
            let pair_bound = |a: ElemId, b: ElemId, upper: bool| -> Option<ElemId> {
                let bounds: Vec<ElemId> = (0..n)
                    .filter(|&c| {
                        if upper {
                            self.leq_ids(a, c) && self.leq_ids(b, c)
                        } else {
                            self.leq_ids(c, a) && self.leq_ids(c, b)
                        }
                    })
                    .collect();
                let extreme: Vec<ElemId> = bounds
                    .iter()
                    .copied()
                    .filter(|&c| {
                        bounds.iter().all(|&d| {
                            if upper {
                                !(self.leq_ids(d, c) && d != c)
                            } else {
                                !(self.leq_ids(c, d) && d != c)
                            }
                        })
                    })
                    .collect();
                if extreme.len() == 1 {
                    Some(extreme[0])
                } else {
                    None
                }
            };
            for a in 0..n {
                for b in (a + 1)..n {
                    if pair_bound(a, b, true).is_none() {
                        out.push(Violation {
                            axiom: "lattice-join",
                            message: format!(
                                "no unique least upper bound for ({}, {})",
                                name(a),
                                name(b)
                            ),
                        });
                    }
                    if pair_bound(a, b, false).is_none() {
                        out.push(Violation {
                            axiom: "lattice-meet",
                            message: format!(
                                "no unique greatest lower bound for ({}, {})",
                                name(a),
                                name(b)
                            ),
                        });
                    }
                }
            }
        }

        if let (Some(t), Some(bot)) = (self.designated(Role::T), self.bottom) {
            if t != bot {
                out.push(Violation {
                    axiom: "T-is-bottom",
                    message: format!("designated T = {} but the bottom is {}", name(t), name(bot)),
                });
            }
        }

        let maps: [(&'static str, &Vec<ElemId>); 3] = [
            ("lowL", &self.low_l),
            ("lowR", &self.low_r),
            ("kmap", &self.kmap),
        ];
        for (label, map) in maps {
            for a in 0..n {
                if !self.leq_ids(map[a], a) {
                    out.push(Violation {
                        axiom: match label {
                            "lowL" => "lowL-decreasing",
                            "lowR" => "lowR-decreasing",
                            _ => "kmap-decreasing",
                        },
                        message: format!("{label}({}) = {} is not below it", name(a), name(map[a])),
                    });
                }
                if map[map[a]] != map[a] {
                    out.push(Violation {
                        axiom: match label {
                            "lowL" => "lowL-idempotent",
                            "lowR" => "lowR-idempotent",
                            _ => "kmap-idempotent",
                        },
                        message: format!(
                            "{label} not idempotent at {}: {label}({}) = {}",
                            name(a),
                            name(map[a]),
                            name(map[map[a]])
                        ),
                    });
                }
                for b in 0..n {
                    if self.leq_ids(a, b) && !self.leq_ids(map[a], map[b]) {
                        out.push(Violation {
                            axiom: match label {
                                "lowL" => "lowL-order-preserving",
                                "lowR" => "lowR-order-preserving",
                                _ => "kmap-order-preserving",
                            },
                            message: format!(
                                "{label} not order-preserving at ({}, {})",
                                name(a),
                                name(b)
                            ),
                        });
                    }
                }
            }
        }

        for v in 0..n {
            if !self.k0[self.kmap[v]] {
                out.push(Violation {
                    axiom: "kmap-into-k0",
                    message: format!("kmap({}) = {} is not in k0", name(v), name(self.kmap[v])),
                });
            }
            if self.k0[v] && self.kmap[v] != v {
                out.push(Violation {
                    axiom: "kmap-fixes-k0",
                    message: format!(
                        "kmap must fix the k0 element {} but maps it to {}",
                        name(v),
                        name(self.kmap[v])
                    ),
                });
            }
        }

        if let Some(t) = self.designated(Role::T) {
            if self.low_l[t] != t || self.low_r[t] != t || self.kmap[t] != t {
                out.push(Violation {
                    axiom: "T-fixed-point",
                    message: format!(
                        "designated T = {} must be fixed by lowL, lowR and kmap",
                        name(t)
                    ),
                });
            }
        }

        for (i, a) in Role::ALL.iter().enumerate() {
            for b in &Role::ALL[i + 1..] {
                if let (Some(x), Some(y)) = (self.designated(*a), self.designated(*b)) {
                    if x == y {
                        out.push(Violation {
                            axiom: "designated-distinct",
                            message: format!(
                                "roles {} and {} share the element {}",
                                a.name(),
                                b.name(),
                                name(x)
                            ),
                        });
                    }
                }
            }
        }

        for role in [Role::S, Role::Lz, Role::Rz, Role::Lnb, Role::Rnb] {
            if let Some(v) = self.designated(role) {
                if self.k0[v] {
                    out.push(Violation {
                        axiom: "designated-not-in-k0",
                        message: format!(
                            "designated {} = {} must not lie in k0",
                            role.name(),
                            name(v)
                        ),
                    });
                }
            }
        }

        out
    }
}

/// Parses the line-oriented model file format.
///
/// Sections: `[elements]`, `[order]` (pairs `a < b`), `[k0]`, `[designated]`
/// (`ROLE = element`), `[lowL]`, `[lowR]`, `[kmap]` (pairs `a -> b`), and the
/// optional `[parts]` (`element = group|cs`) and `[admissible]` sections.
/// `#` starts a comment.
pub fn parse_model(name: &str, text: &str) -> Result<ModelSpec, Error> {
    let mut spec = ModelSpec {
        name: name.to_string(),
        ..ModelSpec::default()
    };
    let mut section: Option<String> = None;
    let err = |line: usize, msg: String| Error::Parse {
        file: name.to_string(),
        line,
        msg,
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let Some(sec) = rest.strip_suffix(']') else {
                return Err(err(line, format!("malformed section header '{content}'")));
            };
            let sec = sec.trim();
            match sec {
                "elements" | "order" | "k0" | "designated" | "lowL" | "lowR" | "kmap" | "parts"
                | "admissible" => section = Some(sec.to_string()),
                _ => return Err(err(line, format!("unknown section '[{sec}]'"))),
            }
            continue;
        }
        let Some(section) = section.as_deref() else {
            return Err(err(line, format!("'{content}' appears before any section")));
        };
        match section {
            "elements" => spec.elements.push(content.to_string()),
            "k0" => spec.k0.push(content.to_string()),
            "admissible" => spec.admissible.push(content.to_string()),
            "order" => {
                let mut it = content.splitn(2, '<');
                let a = it.next().unwrap_or("").trim();
                let b = it.next().unwrap_or("").trim();
                if a.is_empty() || b.is_empty() {
                    return Err(err(line, format!("expected 'a < b', got '{content}'")));
                }
                spec.order.push((a.to_string(), b.to_string()));
            }
            "designated" => {
                let mut it = content.splitn(2, '=');
                let role = it.next().unwrap_or("").trim();
                let elem = it.next().unwrap_or("").trim();
                let Some(role) = Role::parse(role) else {
                    return Err(err(line, format!("unknown role '{role}'")));
                };
                if elem.is_empty() {
                    return Err(err(
                        line,
                        format!("expected 'ROLE = element', got '{content}'"),
                    ));
                }
                spec.designated.push((role, elem.to_string()));
            }
            "lowL" | "lowR" | "kmap" => {
                let mut it = content.splitn(2, "->");
                let a = it.next().unwrap_or("").trim();
                let b = it.next().unwrap_or("").trim();
                if a.is_empty() || b.is_empty() {
                    return Err(err(line, format!("expected 'a -> b', got '{content}'")));
                }
                let pair = (a.to_string(), b.to_string());
                match section {
                    "lowL" => spec.low_l.push(pair),
                    "lowR" => spec.low_r.push(pair),
                    _ => spec.kmap.push(pair),
                }
            }
            "parts" => {
                let mut it = content.splitn(2, '=');
                let elem = it.next().unwrap_or("").trim();
                let part = it.next().unwrap_or("").trim();
                let part = match part {
                    "group" => Part::Group,
                    "cs" => Part::Cs,
                    _ => {
                        return Err(err(
                            line,
                            format!("expected 'element = group|cs', got '{content}'"),
                        ))
                    }
                };
                spec.parts.push((elem.to_string(), part));
            }
            _ => unreachable!(),
        }
    }
    Ok(spec)
}

/// Builds an orthodox-style model over a user-supplied group lattice: every
/// element is in k0 and group-tagged, the bottom is the designated `T`, both
/// single-letter lower maps are constant at the bottom and `kmap` is the
/// identity.  Rejects a lattice without a bottom.
pub fn orthodox_model(
    name: &str,
    elements: &[&str],
    order: &[(&str, &str)],
) -> Result<KernelModel, Error> {
    let probe = ModelSpec {
        name: name.to_string(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        order: order
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        ..ModelSpec::default()
    }
    .build()?;
    let Some(bottom) = probe.bottom() else {
        return Err(Error::Precondition(format!(
            "group lattice '{name}' has no bottom element"
        )));
    };
    let bottom_name = probe.elem_name(bottom).to_string();

    let spec = ModelSpec {
        name: name.to_string(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        order: order
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        k0: elements.iter().map(|s| s.to_string()).collect(),
        designated: vec![(Role::T, bottom_name.clone())],
        low_l: elements
            .iter()
            .map(|s| (s.to_string(), bottom_name.clone()))
            .collect(),
        low_r: elements
            .iter()
            .map(|s| (s.to_string(), bottom_name.clone()))
            .collect(),
        kmap: Vec::new(),
        parts: elements
            .iter()
            .map(|s| (s.to_string(), Part::Group))
            .collect(),
        admissible: Vec::new(),
    };
    spec.build()
}

/// An orthodox model over a chain of `n` group symbols.
pub fn orthodox_chain(n: usize) -> Result<KernelModel, Error> {
    if n == 0 {
        return Err(Error::Precondition(
            "chain must have at least one element".into(),
        ));
    }
    let names: Vec<String> = match n {
        1 => vec!["T".into()],
        2 => vec!["T".into(), "A".into()],
        3 => vec!["T".into(), "A".into(), "G".into()],
        _ => {
            let mut v = vec!["T".to_string()];
            v.extend((1..n).map(|i| format!("G{i}")));
            v
        }
    };
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let order: Vec<(&str, &str)> = refs.windows(2).map(|w| (w[0], w[1])).collect();
    orthodox_model(&format!("chain{n}"), &refs, &order)
}

/// An orthodox model over the divisor lattice of `n` (ordered by
/// divisibility).
pub fn orthodox_divisors(n: u64) -> Result<KernelModel, Error> {
    if n == 0 {
        return Err(Error::Precondition("divisor lattice needs n >= 1".into()));
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let names: Vec<String> = divisors.iter().map(|d| d.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut order = Vec::new();
    for (i, &a) in divisors.iter().enumerate() {
        for (j, &b) in divisors.iter().enumerate() {
            if i != j && b % a == 0 {
                order.push((refs[i], refs[j]));
            }
        }
    }
    orthodox_model(&format!("div{n}"), &refs, &order)
}

/// A synthetic eight-element band-variety fixture exercising all three
/// specials: the free distributive closure of the atoms `LZ`, `RZ`, `S`
/// with `RB = LZ v RZ`, `LNB = LZ v S`, `RNB = S v RZ` and top `NB`, all six
/// roles designated and `k0 = {T, RB, NB}`.
///
/// The operator tables satisfy the model axioms but do not assert
/// semigroup-theoretic truth, except for the pinned entries
/// `lowR(LNB) = LNB`, `lowL(LZ) = T` and `lowR(LZ) = LZ`.
pub fn demo_band_model() -> KernelModel {
    let spec = ModelSpec {
        name: "demo-band".into(),
        elements: ["T", "LZ", "S", "RZ", "LNB", "RB", "RNB", "NB"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        order: [
            ("T", "LZ"),
            ("T", "S"),
            ("T", "RZ"),
            ("LZ", "LNB"),
            ("S", "LNB"),
            ("LZ", "RB"),
            ("RZ", "RB"),
            ("S", "RNB"),
            ("RZ", "RNB"),
            ("LNB", "NB"),
            ("RB", "NB"),
            ("RNB", "NB"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        k0: vec!["T".into(), "RB".into(), "NB".into()],
        designated: vec![
            (Role::T, "T".into()),
            (Role::S, "S".into()),
            (Role::Lz, "LZ".into()),
            (Role::Rz, "RZ".into()),
            (Role::Lnb, "LNB".into()),
            (Role::Rnb, "RNB".into()),
        ],
        low_l: [("LZ", "T"), ("RB", "RZ"), ("LNB", "S"), ("NB", "RNB")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        low_r: [("RZ", "T"), ("RB", "LZ"), ("RNB", "S"), ("NB", "LNB")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        kmap: [
            ("LZ", "T"),
            ("S", "T"),
            ("RZ", "T"),
            ("LNB", "T"),
            ("RNB", "T"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        parts: vec![("T".into(), Part::Group)],
        admissible: Vec::new(),
    };
    spec.build().expect("demo band model is well-formed")
}

/// A small model with a group part and a completely-simple part.
///
/// The carrier is the chain `T < A < G < Q < CS` of k0 elements plus the two
/// plumbing elements `LZ`, `RZ` sitting between `T` and `Q`; the lower maps
/// of the CS-type elements land in `{T, LZ, RZ}` and the meet of k0
/// representatives equals `kmap` of the carrier meet.
pub fn cs_model() -> KernelModel {
    let spec = ModelSpec {
        name: "cs".into(),
        elements: ["T", "LZ", "RZ", "A", "G", "Q", "CS"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        order: [
            ("T", "LZ"),
            ("T", "RZ"),
            ("T", "A"),
            ("A", "G"),
            ("G", "Q"),
            ("LZ", "Q"),
            ("RZ", "Q"),
            ("Q", "CS"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        k0: vec!["T".into(), "A".into(), "G".into(), "Q".into(), "CS".into()],
        designated: vec![
            (Role::T, "T".into()),
            (Role::Lz, "LZ".into()),
            (Role::Rz, "RZ".into()),
        ],
        low_l: [
            ("LZ", "T"),
            ("A", "T"),
            ("G", "T"),
            ("Q", "RZ"),
            ("CS", "RZ"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        low_r: [
            ("RZ", "T"),
            ("A", "T"),
            ("G", "T"),
            ("Q", "LZ"),
            ("CS", "LZ"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        kmap: [("LZ", "T"), ("RZ", "T")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        parts: vec![
            ("T".into(), Part::Group),
            ("A".into(), Part::Group),
            ("G".into(), Part::Group),
            ("Q".into(), Part::Cs),
            ("CS".into(), Part::Cs),
        ],
        admissible: Vec::new(),
    };
    spec.build().expect("cs model is well-formed")
}

/// Looks up a built-in model by id: `chain<n>`, `div<n>`, `demo-band` or
/// `cs`.
pub fn builtin_model(id: &str) -> Result<KernelModel, Error> {
    match id {
        "demo-band" => Ok(demo_band_model()),
        "cs" => Ok(cs_model()),
        _ => {
            if let Some(n) = id.strip_prefix("chain") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::UnknownElement(format!("builtin:{id}")))?;
                return orthodox_chain(n);
            }
            if let Some(n) = id.strip_prefix("div") {
                let n: u64 = n
                    .parse()
                    .map_err(|_| Error::UnknownElement(format!("builtin:{id}")))?;
                return orthodox_divisors(n);
            }
            Err(Error::UnknownElement(format!("builtin:{id}")))
        }
    }
}
