//! Ownership of problem domains shared by several microservices.

use super::microservice_id;
use crate::model::{DiagramId, DomainId, MicroserviceId, Model};

/// Ownership decision for one domain used by two or more microservices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainAssignment {
    pub domain: DomainId,
    /// Member diagrams containing the domain, per microservice that uses it,
    /// in microservice order.
    pub counts: Vec<(MicroserviceId, u32)>,
    pub owner: MicroserviceId,
    /// The maximum count was reached by more than one microservice.
    pub tied: bool,
}

impl DomainAssignment {
    pub fn count_for(&self, ms: &MicroserviceId) -> Option<u32> {
        self.counts.iter().find(|(m, _)| m == ms).map(|(_, c)| *c)
    }

    /// Microservices that use the domain without owning it.
    pub fn replicas(&self) -> impl Iterator<Item = &MicroserviceId> {
        self.counts
            .iter()
            .map(|(m, _)| m)
            .filter(move |m| *m != &self.owner)
    }
}

/// Assigns every problem domain that appears in two or more groups to the
/// group with the most member diagrams containing it. Ties go to the earliest
/// group and are flagged. Machine domains are never assigned.
///
/// `groups[k]` is microservice `M{k+1}`. Records come out in order of the
/// domain's first appearance in the model.
pub fn assign_domains(groups: &[Vec<DiagramId>], model: &Model) -> Vec<DomainAssignment> {
    let mut order: Vec<&DomainId> = Vec::new();
    for d in &model.diagrams {
        for dom in &d.domains {
            if !order.contains(&&dom.id) {
                order.push(&dom.id);
            }
        }
    }

    let mut out = Vec::new();
    for domain in order {
        let counts: Vec<(MicroserviceId, u32)> = groups
            .iter()
            .enumerate()
            .filter_map(|(k, members)| {
                let c = members
                    .iter()
                    .filter_map(|id| model.diagram(id))
                    .filter(|d| d.has_problem_domain(domain))
                    .count() as u32;
                (c > 0).then(|| (microservice_id(k), c))
            })
            .collect();
        if counts.len() < 2 {
            continue;
        }
        let max = counts.iter().map(|(_, c)| *c).max().unwrap_or(0);
        let mut winners = counts.iter().filter(|(_, c)| *c == max);
        let owner = winners
            .next()
            .map(|(m, _)| m.clone())
            .expect("non-empty counts");
        let tied = winners.next().is_some();
        out.push(DomainAssignment {
            domain: domain.clone(),
            counts,
            owner,
            tied,
        });
    }
    out
}
