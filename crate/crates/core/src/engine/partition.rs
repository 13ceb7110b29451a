//! Connected components over merge edges.

use std::collections::HashMap;

use super::{EngineError, MergeEdge};
use crate::model::DiagramId;

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns false when both were already in one set.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }
}

/// The finest partition of `ids` that puts both endpoints of every edge together.
///
/// Groups are ordered by their earliest member in `ids`; members keep `ids` order.
pub fn partition(
    ids: &[DiagramId],
    edges: &[MergeEdge],
) -> Result<Vec<Vec<DiagramId>>, EngineError> {
    let index: HashMap<&DiagramId, usize> = ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let mut set = DisjointSet::new(ids.len());
    for edge in edges {
        let [a, b] = &edge.pair;
        let ia = *index
            .get(a)
            .ok_or_else(|| EngineError::UnknownDiagram(a.clone()))?;
        let ib = *index
            .get(b)
            .ok_or_else(|| EngineError::UnknownDiagram(b.clone()))?;
        set.union(ia, ib);
    }

    let mut slot_of_root: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<Vec<DiagramId>> = Vec::new();
    for (i, id) in ids.iter().enumerate() {
        let root = set.find(i);
        let slot = *slot_of_root.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(id.clone());
    }
    Ok(groups)
}
