//! In-memory problem-frames model: diagrams, domains, requirements, interfaces,
//! analyst correlation judgments and merge hints, plus structural validation.
//!
//! All types are plain immutable values once built. Facilities are labels
//! attached to domains; the same facility may appear on many domains across
//! many diagrams.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

id_type!(
    /// Identifier of a problem diagram, e.g. `P8`.
    DiagramId
);
id_type!(
    /// Identifier of a domain (machine or problem domain).
    DomainId
);
id_type!(
    /// Identifier of a basic hardware facility.
    FacilityId
);
id_type!(RequirementId);
id_type!(
    /// Label of a microservice in a decomposition, `M1`, `M2`, ...
    MicroserviceId
);

/// Unordered pair of diagram ids. `(a, b)` and `(b, a)` compare, hash and
/// look up identically; the pair is stored normalized (lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramPair {
    lo: DiagramId,
    hi: DiagramId,
}

impl DiagramPair {
    pub fn new(a: impl Into<DiagramId>, b: impl Into<DiagramId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn first(&self) -> &DiagramId {
        &self.lo
    }

    pub fn second(&self) -> &DiagramId {
        &self.hi
    }

    pub fn is_self_pair(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, id: &DiagramId) -> bool {
        &self.lo == id || &self.hi == id
    }
}

impl fmt::Display for DiagramPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainKind {
    Machine,
    /// People; can be asked but not compelled.
    Biddable,
    /// Physical devices with predictable behaviour.
    Causal,
    /// Data representations.
    Lexical,
}

impl DomainKind {
    /// Letter used in problem-diagram notation. The machine has none.
    pub fn letter(self) -> Option<char> {
        match self {
            DomainKind::Machine => None,
            DomainKind::Biddable => Some('B'),
            DomainKind::Causal => Some('C'),
            DomainKind::Lexical => Some('X'),
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "B" => Some(DomainKind::Biddable),
            "C" => Some(DomainKind::Causal),
            "X" => Some(DomainKind::Lexical),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Machine => "machine",
            DomainKind::Biddable => "biddable",
            DomainKind::Causal => "causal",
            DomainKind::Lexical => "lexical",
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainNode {
    pub id: DomainId,
    pub name: String,
    pub kind: DomainKind,
    pub facilities: BTreeSet<FacilityId>,
}

impl DomainNode {
    pub fn new(id: impl Into<DomainId>, name: impl Into<String>, kind: DomainKind) -> Self {
        Self {
            id: id.into(),
            name: name.into(),
            kind,
            facilities: BTreeSet::new(),
        }
    }

    pub fn with_facilities<I, F>(mut self, facilities: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: Into<FacilityId>,
    {
        self.facilities
            .extend(facilities.into_iter().map(Into::into));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Requirement {
    pub id: RequirementId,
    pub text: String,
    /// Domains whose behaviour the requirement imposes.
    pub constrains: BTreeSet<DomainId>,
    /// Domains the requirement only mentions.
    pub refers: BTreeSet<DomainId>,
}

/// A solid-line interface between two domains annotated with shared phenomena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interface {
    pub a: DomainId,
    pub b: DomainId,
    pub phenomena: Vec<String>,
}

impl Interface {
    pub fn connects(&self, x: &DomainId, y: &DomainId) -> bool {
        (&self.a == x && &self.b == y) || (&self.a == y && &self.b == x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemDiagram {
    pub id: DiagramId,
    pub title: String,
    pub machine: DomainNode,
    pub domains: Vec<DomainNode>,
    pub requirements: Vec<Requirement>,
    pub interfaces: Vec<Interface>,
}

impl ProblemDiagram {
    /// Machine plus problem domains, machine first.
    pub fn all_domains(&self) -> impl Iterator<Item = &DomainNode> {
        std::iter::once(&self.machine).chain(self.domains.iter())
    }

    pub fn domain(&self, id: &DomainId) -> Option<&DomainNode> {
        self.all_domains().find(|d| &d.id == id)
    }

    pub fn has_problem_domain(&self, id: &DomainId) -> bool {
        self.domains.iter().any(|d| &d.id == id)
    }
}

/// Union of the facilities attached to every domain of the diagram, machine included.
pub fn facility_set(diagram: &ProblemDiagram) -> BTreeSet<FacilityId> {
    diagram
        .all_domains()
        .flat_map(|d| d.facilities.iter().cloned())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorrelationLevel {
    High,
    Low,
    None,
}

impl CorrelationLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationLevel::High => "high",
            CorrelationLevel::Low => "low",
            CorrelationLevel::None => "none",
        }
    }
}

impl fmt::Display for CorrelationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Analyst judgments over unordered diagram pairs. Absent pairs read as `none`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrelationMatrix {
    entries: BTreeMap<DiagramPair, CorrelationLevel>,
}

impl CorrelationMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Setting `none` removes the entry.
    pub fn set(&mut self, pair: DiagramPair, level: CorrelationLevel) {
        if level == CorrelationLevel::None {
            self.entries.remove(&pair);
        } else {
            self.entries.insert(pair, level);
        }
    }

    pub fn get(&self, pair: &DiagramPair) -> CorrelationLevel {
        self.entries
            .get(pair)
            .copied()
            .unwrap_or(CorrelationLevel::None)
    }

    pub fn contains(&self, pair: &DiagramPair) -> bool {
        self.entries.contains_key(pair)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiagramPair, CorrelationLevel)> {
        self.entries.iter().map(|(p, l)| (p, *l))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Explicit analyst decision about a low-correlation pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeHint {
    pub pair: DiagramPair,
    pub accepted: bool,
    pub note: Option<String>,
}

/// Declared shared-facility counts, used instead of computing them from facility sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimilarityOverride {
    pub pairwise: BTreeMap<DiagramPair, u32>,
    pub global: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    /// Declared facilities with their optional description.
    pub facilities: BTreeMap<FacilityId, Option<String>>,
    pub diagrams: Vec<ProblemDiagram>,
    pub correlations: CorrelationMatrix,
    pub hints: Vec<MergeHint>,
    pub similarity_override: Option<SimilarityOverride>,
}

impl Model {
    pub fn diagram(&self, id: &DiagramId) -> Option<&ProblemDiagram> {
        self.diagrams.iter().find(|d| &d.id == id)
    }

    /// Position of the diagram in model order.
    pub fn diagram_index(&self, id: &DiagramId) -> Option<usize> {
        self.diagrams.iter().position(|d| &d.id == id)
    }

    pub fn diagram_ids(&self) -> Vec<DiagramId> {
        self.diagrams.iter().map(|d| d.id.clone()).collect()
    }

    pub fn hint(&self, pair: &DiagramPair) -> Option<&MergeHint> {
        self.hints.iter().find(|h| &h.pair == pair)
    }

    /// All unordered pairs of distinct diagrams, in model order (i < j).
    pub fn diagram_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.diagrams.len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// What a diagnostic is about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Model,
    Facility(FacilityId),
    Diagram(DiagramId),
    Domain(DiagramId, DomainId),
    Requirement(DiagramId, RequirementId),
    /// Interface by position inside its diagram.
    Interface(DiagramId, usize),
    Correlation(DiagramPair),
    Hint(DiagramPair),
    SimilarityPair(DiagramPair),
    SimilarityGlobal,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Model => f.write_str("model"),
            Subject::Facility(id) => write!(f, "facility {id}"),
            Subject::Diagram(id) => write!(f, "diagram {id}"),
            Subject::Domain(d, id) => write!(f, "{d}/{id}"),
            Subject::Requirement(d, id) => write!(f, "{d}/{id}"),
            Subject::Interface(d, i) => write!(f, "{d}/interface#{}", i + 1),
            Subject::Correlation(p) => write!(f, "correlation {p}"),
            Subject::Hint(p) => write!(f, "hint {p}"),
            Subject::SimilarityPair(p) => write!(f, "similarity {p}"),
            Subject::SimilarityGlobal => f.write_str("similarity-all"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub subject: Subject,
    pub message: String,
}

impl Diagnostic {
    fn error(subject: Subject, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            subject,
            message: message.into(),
        }
    }

    fn warning(subject: Subject, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            subject,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.subject, self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

/// Checks every structural invariant of the model.
///
/// Diagnostics come out in traversal order: facilities, then diagrams in model
/// order (domains, requirements, interfaces in declaration order), then
/// correlations, hints and the similarity override. The function is pure.
pub fn validate(model: &Model) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut used_facilities = HashSet::new();
    let mut seen_diagrams = HashSet::new();

    for diagram in &model.diagrams {
        if !seen_diagrams.insert(&diagram.id) {
            out.push(Diagnostic::error(
                Subject::Diagram(diagram.id.clone()),
                format!("duplicate diagram id `{}`", diagram.id),
            ));
        }
        for node in diagram.all_domains() {
            used_facilities.extend(node.facilities.iter());
        }
        validate_diagram(model, diagram, &mut out);
    }

    let mut facility_diags: Vec<Diagnostic> = model
        .facilities
        .keys()
        .filter(|f| !used_facilities.contains(f))
        .map(|f| {
            Diagnostic::warning(
                Subject::Facility(f.clone()),
                format!("facility `{f}` is declared but not attached to any domain"),
            )
        })
        .collect();
    facility_diags.append(&mut out);
    out = facility_diags;

    let known = |id: &DiagramId| model.diagram(id).is_some();
    let check_pair = |pair: &DiagramPair, subject: Subject, out: &mut Vec<Diagnostic>| -> bool {
        if pair.is_self_pair() {
            out.push(Diagnostic::error(
                subject,
                format!("pair {pair} relates a diagram to itself"),
            ));
            return false;
        }
        let mut ok = true;
        for id in [pair.first(), pair.second()] {
            if !known(id) {
                out.push(Diagnostic::error(
                    subject.clone(),
                    format!("unknown diagram `{id}`"),
                ));
                ok = false;
            }
        }
        ok
    };

    for (pair, _) in model.correlations.iter() {
        check_pair(pair, Subject::Correlation(pair.clone()), &mut out);
    }

    let mut seen_hints = HashSet::new();
    for hint in &model.hints {
        let subject = Subject::Hint(hint.pair.clone());
        if !seen_hints.insert(&hint.pair) {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("duplicate merge hint for {}", hint.pair),
            ));
            continue;
        }
        if check_pair(&hint.pair, subject.clone(), &mut out) {
            let level = model.correlations.get(&hint.pair);
            if level != CorrelationLevel::Low {
                out.push(Diagnostic::error(
                    subject,
                    format!(
                        "merge hint on {} requires correlation low, found {level}",
                        hint.pair
                    ),
                ));
            }
        }
    }

    if let Some(ov) = &model.similarity_override {
        for pair in ov.pairwise.keys() {
            check_pair(pair, Subject::SimilarityPair(pair.clone()), &mut out);
        }
        for (i, j) in model.diagram_pairs() {
            let pair = DiagramPair::new(model.diagrams[i].id.clone(), model.diagrams[j].id.clone());
            if !ov.pairwise.contains_key(&pair) {
                out.push(Diagnostic::error(
                    Subject::SimilarityGlobal,
                    format!("similarity override is missing pair {pair}"),
                ));
            }
        }
        if let Some((pair, min)) = ov.pairwise.iter().min_by_key(|(_, v)| **v) {
            if ov.global > *min {
                out.push(Diagnostic::error(
                    Subject::SimilarityGlobal,
                    format!(
                        "similarity-all {} exceeds the pairwise count {min} of {pair}",
                        ov.global
                    ),
                ));
            }
        }
    }

    out
}

fn validate_diagram(model: &Model, diagram: &ProblemDiagram, out: &mut Vec<Diagnostic>) {
    let did = &diagram.id;
    let mut seen = HashSet::new();

    if diagram.machine.kind != DomainKind::Machine {
        out.push(Diagnostic::error(
            Subject::Domain(did.clone(), diagram.machine.id.clone()),
            format!(
                "machine `{}` has kind {}, expected machine",
                diagram.machine.id, diagram.machine.kind
            ),
        ));
    }
    for node in diagram.all_domains() {
        let subject = Subject::Domain(did.clone(), node.id.clone());
        if !seen.insert(&node.id) {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("duplicate domain id `{}` in diagram {did}", node.id),
            ));
        }
        if node.kind == DomainKind::Machine && node.id != diagram.machine.id {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("diagram {did} has more than one machine domain"),
            ));
        }
        for f in &node.facilities {
            if !model.facilities.contains_key(f) {
                out.push(Diagnostic::error(
                    subject.clone(),
                    format!("unknown facility `{f}` on domain `{}`", node.id),
                ));
            }
        }
    }

    if diagram.requirements.is_empty() {
        out.push(Diagnostic::warning(
            Subject::Diagram(did.clone()),
            format!("diagram {did} has no requirement"),
        ));
    }

    let mut seen_reqs = HashSet::new();
    for req in &diagram.requirements {
        let subject = Subject::Requirement(did.clone(), req.id.clone());
        if !seen_reqs.insert(&req.id) {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("duplicate requirement id `{}` in diagram {did}", req.id),
            ));
        }
        if req.constrains.is_empty() && req.refers.is_empty() {
            out.push(Diagnostic::error(
                subject.clone(),
                format!(
                    "requirement `{}` neither constrains nor refers to any domain",
                    req.id
                ),
            ));
        }
        for both in req.constrains.intersection(&req.refers) {
            out.push(Diagnostic::error(
                subject.clone(),
                format!(
                    "requirement `{}` both constrains and refers to `{both}`",
                    req.id
                ),
            ));
        }
        for d in req.constrains.iter().chain(req.refers.iter()) {
            if diagram.domain(d).is_none() {
                out.push(Diagnostic::error(
                    subject.clone(),
                    format!("requirement `{}` references unknown domain `{d}`", req.id),
                ));
            }
        }
        if req.constrains.contains(&diagram.machine.id) {
            out.push(Diagnostic::error(
                subject.clone(),
                format!(
                    "requirement `{}` constrains the machine `{}`",
                    req.id, diagram.machine.id
                ),
            ));
        }
    }

    for (i, iface) in diagram.interfaces.iter().enumerate() {
        let subject = Subject::Interface(did.clone(), i);
        if iface.a == iface.b {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("interface connects `{}` to itself", iface.a),
            ));
        }
        if iface.phenomena.is_empty() {
            out.push(Diagnostic::error(
                subject.clone(),
                format!("interface `{}` -- `{}` has no phenomena", iface.a, iface.b),
            ));
        }
        for end in [&iface.a, &iface.b] {
            if diagram.domain(end).is_none() {
                out.push(Diagnostic::error(
                    subject.clone(),
                    format!("interface references unknown domain `{end}`"),
                ));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(id: &str, domains: Vec<DomainNode>) -> ProblemDiagram {
        let first = domains.first().map(|d| d.id.clone());
        ProblemDiagram {
            id: id.into(),
            title: format!("{id} title"),
            machine: DomainNode::new("S", "System", DomainKind::Machine),
            domains,
            requirements: vec![Requirement {
                id: "R".into(),
                text: "req".into(),
                constrains: first.into_iter().collect(),
                refers: BTreeSet::new(),
            }],
            interfaces: vec![],
        }
    }

    fn small_model() -> Model {
        let mut m = Model {
            name: "m".into(),
            ..Model::default()
        };
        m.facilities.insert("a".into(), None);
        m.facilities.insert("b".into(), None);
        m.diagrams.push(diagram(
            "P1",
            vec![DomainNode::new("D", "D", DomainKind::Causal).with_facilities(["a"])],
        ));
        m.diagrams.push(diagram(
            "P2",
            vec![DomainNode::new("E", "E", DomainKind::Causal).with_facilities(["b"])],
        ));
        m
    }

    #[test]
    fn valid_model_has_no_diagnostics() {
        assert!(validate(&small_model()).is_empty());
    }

    #[test]
    fn duplicate_diagram_id_is_one_error() {
        let mut m = small_model();
        let dup = m.diagrams[0].clone();
        m.diagrams.push(dup);
        let diags = validate(&m);
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert!(diags[0].is_error());
        assert_eq!(diags[0].subject, Subject::Diagram("P1".into()));
        assert!(diags[0].message.contains("P1"));
    }

    #[test]
    fn hint_on_high_pair_is_error() {
        let mut m = small_model();
        let pair = DiagramPair::new("P1", "P2");
        m.correlations.set(pair.clone(), CorrelationLevel::High);
        m.hints.push(MergeHint {
            pair: pair.clone(),
            accepted: true,
            note: None,
        });
        let diags = validate(&m);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].is_error());
        assert_eq!(diags[0].subject, Subject::Hint(pair));
    }

    #[test]
    fn hint_on_low_pair_is_fine() {
        let mut m = small_model();
        let pair = DiagramPair::new("P2", "P1");
        m.correlations.set(pair.clone(), CorrelationLevel::Low);
        m.hints.push(MergeHint {
            pair,
            accepted: false,
            note: Some("no".into()),
        });
        assert!(validate(&m).is_empty());
    }

    #[test]
    fn requirement_and_interface_invariants() {
        let mut m = small_model();
        let d = &mut m.diagrams[0];
        d.requirements[0].refers.insert("D".into());
        d.requirements.push(Requirement {
            id: "R2".into(),
            text: String::new(),
            constrains: BTreeSet::new(),
            refers: BTreeSet::new(),
        });
        d.interfaces.push(Interface {
            a: "D".into(),
            b: "D".into(),
            phenomena: vec![],
        });
        d.interfaces.push(Interface {
            a: "S".into(),
            b: "Nope".into(),
            phenomena: vec!["x".into()],
        });
        let diags = validate(&m);
        let msgs: Vec<_> = diags.iter().map(|d| d.message.as_str()).collect();
        assert_eq!(diags.len(), 5, "{msgs:#?}");
        assert!(diags.iter().all(Diagnostic::is_error));
    }

    #[test]
    fn unknown_facility_and_unused_facility() {
        let mut m = small_model();
        m.diagrams[0].domains[0].facilities.insert("zzz".into());
        m.facilities.insert("idle".into(), None);
        let diags = validate(&m);
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert_eq!(diags[0].subject, Subject::Facility("idle".into()));
        assert!(diags[1].is_error());
    }

    #[test]
    fn override_must_cover_all_pairs_and_respect_global() {
        let mut m = small_model();
        m.similarity_override = Some(SimilarityOverride {
            pairwise: BTreeMap::new(),
            global: 0,
        });
        assert_eq!(validate(&m).len(), 1);
        let mut ov = SimilarityOverride::default();
        ov.pairwise.insert(DiagramPair::new("P1", "P2"), 1);
        ov.global = 2;
        m.similarity_override = Some(ov);
        let diags = validate(&m);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].subject, Subject::SimilarityGlobal);
    }

    #[test]
    fn facility_set_unions_all_domains_including_machine() {
        let mut d = diagram(
            "P",
            vec![
                DomainNode::new("X", "X", DomainKind::Causal).with_facilities(["a", "b"]),
                DomainNode::new("Y", "Y", DomainKind::Lexical).with_facilities(["b", "c"]),
            ],
        );
        let expect: BTreeSet<FacilityId> = ["a", "b", "c"].into_iter().map(Into::into).collect();
        assert_eq!(facility_set(&d), expect);
        d.machine.facilities.insert("m".into());
        assert_eq!(facility_set(&d).len(), 4);
    }

    #[test]
    fn facility_set_of_people_only_diagram_is_empty() {
        let d = diagram(
            "P",
            vec![
                DomainNode::new("A", "Admin", DomainKind::Biddable),
                DomainNode::new("U", "User", DomainKind::Biddable),
            ],
        );
        assert!(facility_set(&d).is_empty());
    }

    #[test]
    fn pair_keys_are_unordered() {
        let mut c = CorrelationMatrix::new();
        c.set(DiagramPair::new("P9", "P10"), CorrelationLevel::Low);
        assert_eq!(c.get(&DiagramPair::new("P10", "P9")), CorrelationLevel::Low);
        assert_eq!(c.get(&DiagramPair::new("P1", "P9")), CorrelationLevel::None);
        c.set(DiagramPair::new("P10", "P9"), CorrelationLevel::None);
        assert!(c.is_empty());
    }
}
