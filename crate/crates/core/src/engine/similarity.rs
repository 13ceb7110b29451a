//! Shared-facility counts between diagrams and the all-diagram threshold.

use std::collections::BTreeSet;

use super::{EngineError, MergeEdge, MergeReason};
use crate::model::{facility_set, DiagramId, DiagramPair, FacilityId, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimilaritySource {
    /// Counted from the facility sets attached to each diagram's domains.
    Computed,
    /// Taken verbatim from the model's declared counts.
    Override,
}

/// Pairwise shared-facility counts plus the count shared by every diagram.
///
/// Stored as a dense symmetric matrix indexed by model diagram order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacilitySimilarity {
    diagrams: Vec<DiagramId>,
    counts: Vec<u32>,
    global: u32,
    source: SimilaritySource,
}

impl FacilitySimilarity {
    /// Builds the matrix from a count function over index pairs `i < j`.
    ///
    /// Fails if `global` exceeds any pairwise count.
    pub fn new(
        diagrams: Vec<DiagramId>,
        global: u32,
        source: SimilaritySource,
        mut count: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self, EngineError> {
        let n = diagrams.len();
        let mut counts = vec![0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = count(i, j);
                counts[i * n + j] = c;
                counts[j * n + i] = c;
            }
        }
        let sim = Self {
            diagrams,
            counts,
            global,
            source,
        };
        if let Some((a, b, min)) = sim.pairs().min_by_key(|(_, _, c)| *c) {
            if global > min {
                return Err(EngineError::InvalidSimilarity(format!(
                    "global count {global} exceeds the count {min} shared by {a} and {b}"
                )));
            }
        }
        Ok(sim)
    }

    pub fn diagrams(&self) -> &[DiagramId] {
        &self.diagrams
    }

    pub fn global(&self) -> u32 {
        self.global
    }

    pub fn source(&self) -> SimilaritySource {
        self.source
    }

    fn index(&self, id: &DiagramId) -> Option<usize> {
        self.diagrams.iter().position(|d| d == id)
    }

    pub fn by_index(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.diagrams.len() + j]
    }

    /// Shared count for two distinct diagrams, in either argument order.
    pub fn get(&self, a: &DiagramId, b: &DiagramId) -> Option<u32> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        (i != j).then(|| self.by_index(i, j))
    }

    /// Every unordered pair once, in model order.
    pub fn pairs(&self) -> impl Iterator<Item = (&DiagramId, &DiagramId, u32)> + '_ {
        let n = self.diagrams.len();
        (0..n).flat_map(move |i| {
            ((i + 1)..n).map(move |j| (&self.diagrams[i], &self.diagrams[j], self.by_index(i, j)))
        })
    }

    pub fn min_pairwise(&self) -> Option<u32> {
        self.pairs().map(|(_, _, c)| c).min()
    }

    pub fn exceeds_threshold(&self, a: &DiagramId, b: &DiagramId) -> bool {
        self.get(a, b).is_some_and(|c| c > self.global)
    }
}

fn diagram_facilities(model: &Model, id: &DiagramId) -> Result<BTreeSet<FacilityId>, EngineError> {
    model
        .diagram(id)
        .map(facility_set)
        .ok_or_else(|| EngineError::UnknownDiagram(id.clone()))
}

/// Number of facilities used by both diagrams, always computed from their facility sets.
pub fn pairwise_shared_count(
    model: &Model,
    a: &DiagramId,
    b: &DiagramId,
) -> Result<u32, EngineError> {
    if a == b {
        return Err(EngineError::SelfPair(a.clone()));
    }
    let fa = diagram_facilities(model, a)?;
    let fb = diagram_facilities(model, b)?;
    Ok(fa.intersection(&fb).count() as u32)
}

/// Number of facilities used by every diagram. Zero for an empty model.
pub fn global_shared_count(model: &Model) -> u32 {
    let mut sets = model.diagrams.iter().map(facility_set);
    let Some(first) = sets.next() else {
        return 0;
    };
    sets.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
        .len() as u32
}

/// Declared counts when the model carries an override, computed counts otherwise.
pub fn build_similarity(model: &Model) -> Result<FacilitySimilarity, EngineError> {
    let ids = model.diagram_ids();
    match &model.similarity_override {
        Some(ov) => {
            for (i, j) in model.diagram_pairs() {
                let pair = DiagramPair::new(ids[i].clone(), ids[j].clone());
                if !ov.pairwise.contains_key(&pair) {
                    return Err(EngineError::InvalidSimilarity(format!(
                        "declared counts are missing pair {pair}"
                    )));
                }
            }
            let lookup = ids.clone();
            FacilitySimilarity::new(ids, ov.global, SimilaritySource::Override, |i, j| {
                ov.pairwise[&DiagramPair::new(lookup[i].clone(), lookup[j].clone())]
            })
        }
        None => {
            let sets: Vec<BTreeSet<FacilityId>> = model.diagrams.iter().map(facility_set).collect();
            FacilitySimilarity::new(
                ids,
                global_shared_count(model),
                SimilaritySource::Computed,
                |i, j| sets[i].intersection(&sets[j]).count() as u32,
            )
        }
    }
}

/// A facility-threshold edge for every pair sharing strictly more than the global count.
pub fn similarity_edges(sim: &FacilitySimilarity) -> Vec<MergeEdge> {
    sim.pairs()
        .filter(|(_, _, c)| *c > sim.global())
        .map(|(a, b, _)| MergeEdge::new(a.clone(), b.clone(), MergeReason::FacilityThreshold))
        .collect()
}
