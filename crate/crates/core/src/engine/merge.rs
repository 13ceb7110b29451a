//! Folding a group of problem diagrams into one diagram per microservice.

use std::collections::{BTreeSet, HashSet};

use super::EngineError;
use crate::model::{
    DiagramId, DomainId, DomainKind, DomainNode, Interface, MicroserviceId, Model, ProblemDiagram,
    Requirement, RequirementId,
};

/// Merges the member diagrams of one microservice.
///
/// Problem domains are unified by id with their facility sets unioned; the
/// member machines collapse into one machine named after the microservice.
/// Requirements are concatenated in member order (an id already taken is
/// qualified as `<diagram>_<id>`), and interfaces are deduplicated by
/// endpoints and phenomena.
pub fn merge_group(
    ms: &MicroserviceId,
    members: &[DiagramId],
    model: &Model,
) -> Result<ProblemDiagram, EngineError> {
    if members.is_empty() {
        return Err(EngineError::EmptyGroup(ms.clone()));
    }
    let diagrams: Vec<&ProblemDiagram> = members
        .iter()
        .map(|id| {
            model
                .diagram(id)
                .ok_or_else(|| EngineError::UnknownDiagram(id.clone()))
        })
        .collect::<Result<_, _>>()?;

    let mut domains: Vec<DomainNode> = Vec::new();
    let mut origin: Vec<&DiagramId> = Vec::new();
    for d in &diagrams {
        for node in &d.domains {
            match domains.iter().position(|x| x.id == node.id) {
                Some(i) => {
                    if domains[i].kind != node.kind {
                        return Err(EngineError::MergeConflict {
                            microservice: ms.clone(),
                            domain: node.id.clone(),
                            first: (origin[i].clone(), domains[i].kind),
                            second: (d.id.clone(), node.kind),
                        });
                    }
                    domains[i]
                        .facilities
                        .extend(node.facilities.iter().cloned());
                }
                None => {
                    domains.push(node.clone());
                    origin.push(&d.id);
                }
            }
        }
    }

    let mut machine_id = DomainId(ms.as_str().to_owned());
    while domains.iter().any(|d| d.id == machine_id) {
        machine_id = DomainId(format!("{machine_id}_machine"));
    }
    let machine = DomainNode {
        id: machine_id.clone(),
        name: ms.as_str().to_owned(),
        kind: DomainKind::Machine,
        facilities: diagrams
            .iter()
            .flat_map(|d| d.machine.facilities.iter().cloned())
            .collect(),
    };

    let mut requirements: Vec<Requirement> = Vec::new();
    let mut interfaces: Vec<Interface> = Vec::new();
    let mut seen_interfaces: HashSet<(DomainId, DomainId, BTreeSet<String>)> = HashSet::new();
    for d in &diagrams {
        let remap = |id: &DomainId| {
            if id == &d.machine.id {
                machine_id.clone()
            } else {
                id.clone()
            }
        };
        for r in &d.requirements {
            let mut id = r.id.clone();
            while requirements.iter().any(|x| x.id == id) {
                id = RequirementId(format!("{}_{}", d.id, id));
            }
            requirements.push(Requirement {
                id,
                text: r.text.clone(),
                constrains: r.constrains.iter().map(remap).collect(),
                refers: r.refers.iter().map(remap).collect(),
            });
        }
        for i in &d.interfaces {
            let (a, b) = (remap(&i.a), remap(&i.b));
            let key_ends = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            let key = (
                key_ends.0,
                key_ends.1,
                i.phenomena.iter().cloned().collect(),
            );
            if seen_interfaces.insert(key) {
                interfaces.push(Interface {
                    a,
                    b,
                    phenomena: i.phenomena.clone(),
                });
            }
        }
    }

    let title = diagrams
        .iter()
        .map(|d| d.title.as_str())
        .collect::<Vec<_>>()
        .join("; ");

    Ok(ProblemDiagram {
        id: DiagramId(ms.as_str().to_owned()),
        title,
        machine,
        domains,
        requirements,
        interfaces,
    })
}
