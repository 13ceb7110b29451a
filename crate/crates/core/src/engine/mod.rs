//! Decomposition of a problem-frames model into microservices.
//!
//! Three rules produce merge edges between diagrams:
//!
//! * a `high` correlation always co-locates the pair;
//! * a pair sharing strictly more hardware facilities than the number shared by
//!   every diagram is co-located;
//! * an accepted merge hint co-locates a `low` pair.
//!
//! The microservices are the connected components of those edges. Problem
//! domains used by several microservices are then owned by the one with the
//! most member diagrams containing them and replicated elsewhere, and each
//! group is folded into a single merged problem diagram.

mod assign;
mod merge;
mod partition;
mod similarity;

use std::fmt;

use thiserror::Error;

use crate::model::{
    has_errors, validate, CorrelationLevel, Diagnostic, DiagramId, DiagramPair, DomainId,
    DomainKind, MicroserviceId, Model, ProblemDiagram,
};

pub use assign::{assign_domains, DomainAssignment};
pub use merge::merge_group;
pub use partition::partition;
pub use similarity::{
    build_similarity, global_shared_count, pairwise_shared_count, similarity_edges,
    FacilitySimilarity, SimilaritySource,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown diagram `{0}`")]
    UnknownDiagram(DiagramId),
    #[error("diagram `{0}` cannot be paired with itself")]
    SelfPair(DiagramId),
    #[error("model has {} validation error(s)", .0.iter().filter(|d| d.is_error()).count())]
    InvalidModel(Vec<Diagnostic>),
    #[error("invalid facility similarity: {0}")]
    InvalidSimilarity(String),
    #[error("microservice {0} has no member diagrams")]
    EmptyGroup(MicroserviceId),
    #[error(
        "merge conflict in {microservice}: domain `{domain}` is {} in {} but {} in {}",
        first.1, first.0, second.1, second.0
    )]
    MergeConflict {
        microservice: MicroserviceId,
        domain: DomainId,
        first: (DiagramId, DomainKind),
        second: (DiagramId, DomainKind),
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MergeReason {
    CorrelationHigh,
    FacilityThreshold,
    HintAccepted,
}

impl MergeReason {
    pub fn as_str(self) -> &'static str {
        match self {
            MergeReason::CorrelationHigh => "correlation-high",
            MergeReason::FacilityThreshold => "facility-threshold",
            MergeReason::HintAccepted => "hint-accepted",
        }
    }
}

impl fmt::Display for MergeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A co-location constraint between two diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MergeEdge {
    /// Endpoints as produced by the rule, earlier diagram first.
    pub pair: [DiagramId; 2],
    pub reason: MergeReason,
}

impl MergeEdge {
    pub fn new(a: DiagramId, b: DiagramId, reason: MergeReason) -> Self {
        Self {
            pair: [a, b],
            reason,
        }
    }

    pub fn unordered(&self) -> DiagramPair {
        DiagramPair::new(self.pair[0].clone(), self.pair[1].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Microservice {
    pub id: MicroserviceId,
    /// Member diagrams in model order.
    pub members: Vec<DiagramId>,
    pub owned_domains: Vec<DomainId>,
    pub replicated_domains: Vec<DomainId>,
    pub merged: ProblemDiagram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TraceLevel {
    Info,
    Warning,
}

impl TraceLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceLevel::Info => "info",
            TraceLevel::Warning => "warning",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub level: TraceLevel,
    pub message: String,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.level.as_str(), self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionResult {
    pub microservices: Vec<Microservice>,
    pub assignments: Vec<DomainAssignment>,
    pub edges: Vec<MergeEdge>,
    pub trace: Vec<TraceRecord>,
}

impl DecompositionResult {
    pub fn microservice(&self, id: &MicroserviceId) -> Option<&Microservice> {
        self.microservices.iter().find(|m| &m.id == id)
    }

    pub fn microservice_of(&self, diagram: &DiagramId) -> Option<&Microservice> {
        self.microservices
            .iter()
            .find(|m| m.members.contains(diagram))
    }

    pub fn warnings(&self) -> impl Iterator<Item = &TraceRecord> {
        self.trace.iter().filter(|t| t.level == TraceLevel::Warning)
    }
}

pub(crate) fn microservice_id(index: usize) -> MicroserviceId {
    MicroserviceId(format!("M{}", index + 1))
}

/// Stored judgment for two distinct diagrams; absent pairs are `none`.
pub fn correlation(
    model: &Model,
    a: &DiagramId,
    b: &DiagramId,
) -> Result<CorrelationLevel, EngineError> {
    if a == b {
        return Err(EngineError::SelfPair(a.clone()));
    }
    for id in [a, b] {
        if model.diagram(id).is_none() {
            return Err(EngineError::UnknownDiagram(id.clone()));
        }
    }
    Ok(model
        .correlations
        .get(&DiagramPair::new(a.clone(), b.clone())))
}

/// One edge per `high` pair, in model order.
pub fn mandatory_edges(model: &Model) -> Vec<MergeEdge> {
    model
        .diagram_pairs()
        .into_iter()
        .filter_map(|(i, j)| {
            let (a, b) = (&model.diagrams[i].id, &model.diagrams[j].id);
            let level = model
                .correlations
                .get(&DiagramPair::new(a.clone(), b.clone()));
            (level == CorrelationLevel::High)
                .then(|| MergeEdge::new(a.clone(), b.clone(), MergeReason::CorrelationHigh))
        })
        .collect()
}

fn model_ordered(model: &Model, pair: &DiagramPair) -> (DiagramId, DiagramId) {
    let rank = |id| model.diagram_index(id).unwrap_or(usize::MAX);
    let (a, b) = (pair.first().clone(), pair.second().clone());
    if rank(&b) < rank(&a) {
        (b, a)
    } else {
        (a, b)
    }
}

/// One edge per accepted hint, in hint order.
pub fn hint_edges(model: &Model) -> Vec<MergeEdge> {
    model
        .hints
        .iter()
        .filter(|h| h.accepted)
        .map(|h| {
            let (a, b) = model_ordered(model, &h.pair);
            MergeEdge::new(a, b, MergeReason::HintAccepted)
        })
        .collect()
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs the full pipeline: validation, merge edges, grouping, domain
/// ownership and diagram merging. The trace lists every decision in a fixed
/// order, so identical models give identical results.
pub fn decompose(model: &Model) -> Result<DecompositionResult, EngineError> {
    let diagnostics = validate(model);
    if has_errors(&diagnostics) {
        return Err(EngineError::InvalidModel(
            diagnostics
                .into_iter()
                .filter(Diagnostic::is_error)
                .collect(),
        ));
    }

    let mut trace = Trace::default();
    let sim = build_similarity(model)?;
    let ids = model.diagram_ids();
    let source = match sim.source() {
        SimilaritySource::Override => "taken from the declared override",
        SimilaritySource::Computed => "computed from facility sets",
    };
    trace.info(format!(
        "shared facility counts {source}; {} facilities shared by all diagrams",
        sim.global()
    ));
    if ids.is_empty() {
        trace
            .warn("model has no diagrams; the all-diagram facility count is taken as 0".to_owned());
    } else if sim.global() == 0 && ids.len() > 1 {
        trace.warn(
            "no facility is shared by all diagrams; any shared facility triggers a merge (degenerate threshold)"
                .to_owned(),
        );
    }

    let mandatory = mandatory_edges(model);
    let facility = similarity_edges(&sim);
    let hints = hint_edges(model);

    for e in &mandatory {
        trace.info(format!(
            "merge {} + {}: correlation high",
            e.pair[0], e.pair[1]
        ));
    }
    for e in &facility {
        let count = sim.get(&e.pair[0], &e.pair[1]).unwrap_or_default();
        trace.info(format!(
            "merge {} + {}: {count} shared facilities > {}",
            e.pair[0],
            e.pair[1],
            sim.global()
        ));
    }

    // Hints are judged against the grouping the two mandatory rules already force.
    let mut edges = mandatory;
    edges.extend(facility);
    let forced = partition(&ids, &edges)?;
    let forced_group = |id: &DiagramId| forced.iter().position(|g| g.contains(id));
    for h in &model.hints {
        let (a, b) = model_ordered(model, &h.pair);
        let note = h
            .note
            .as_deref()
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        if !h.accepted {
            trace.info(format!("hint {a} + {b} rejected{note}: no merge"));
        } else if forced_group(&a) == forced_group(&b) {
            trace.warn(format!(
                "accepted hint {a} + {b}{note} is redundant: correlation and facility rules already co-locate the pair"
            ));
        } else {
            trace.info(format!("merge {a} + {b}: accepted hint{note}"));
        }
    }

    edges.extend(hints);
    let groups = partition(&ids, &edges)?;
    for (k, g) in groups.iter().enumerate() {
        trace.info(format!("{} = {{{}}}", microservice_id(k), join(g)));
    }

    let assignments = assign_domains(&groups, model);
    for a in &assignments {
        let counts = join(a.counts.iter().map(|(m, c)| format!("{m}={c}")));
        let replicas = join(a.replicas());
        if a.tied {
            let max = a.count_for(&a.owner).unwrap_or_default();
            let tied = join(a.counts.iter().filter(|(_, c)| *c == max).map(|(m, _)| m));
            trace.warn(format!(
                "domain {}: counts {counts}; tie between {tied}, owner {} by smallest id; replicated in {replicas}",
                a.domain, a.owner
            ));
        } else {
            trace.info(format!(
                "domain {}: counts {counts}; owner {}; replicated in {replicas}",
                a.domain, a.owner
            ));
        }
    }

    let mut microservices = Vec::with_capacity(groups.len());
    for (k, members) in groups.into_iter().enumerate() {
        let id = microservice_id(k);
        let merged = merge_group(&id, &members, model)?;
        let (mut owned_domains, mut replicated_domains) = (Vec::new(), Vec::new());
        for d in &merged.domains {
            match assignments.iter().find(|a| a.domain == d.id) {
                Some(a) if a.owner != id => replicated_domains.push(d.id.clone()),
                _ => owned_domains.push(d.id.clone()),
            }
        }
        microservices.push(Microservice {
            id,
            members,
            owned_domains,
            replicated_domains,
            merged,
        });
    }

    Ok(DecompositionResult {
        microservices,
        assignments,
        edges,
        trace: trace.0,
    })
}

#[derive(Default)]
struct Trace(Vec<TraceRecord>);

impl Trace {
    fn info(&mut self, message: String) {
        self.0.push(TraceRecord {
            level: TraceLevel::Info,
            message,
        });
    }

    fn warn(&mut self, message: String) {
        self.0.push(TraceRecord {
            level: TraceLevel::Warning,
            message,
        });
    }
}
