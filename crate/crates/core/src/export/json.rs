//! JSON report of a decomposition.
//!
//! Keys appear in a fixed order and arrays follow result order, so identical
//! results serialize to identical bytes:
//!
//! ```text
//! {"microservices":[{"id","members","owned_domains","replicated_domains","requirements":[{"id","text"}]}],
//!  "assignments":[{"domain","counts":{"M1":4,...},"owner","tied"}],
//!  "edges":[{"pair":["P2","P3"],"reason":"correlation-high"}],
//!  "trace":[{"level":"info","message":"..."}]}
//! ```

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::engine::DecompositionResult;
use crate::model::MicroserviceId;

#[derive(Serialize)]
struct JsonResult<'a> {
    microservices: Vec<JsonMicroservice<'a>>,
    assignments: Vec<JsonAssignment<'a>>,
    edges: Vec<JsonEdge<'a>>,
    trace: Vec<JsonTrace<'a>>,
}

#[derive(Serialize)]
struct JsonMicroservice<'a> {
    id: &'a str,
    members: Vec<&'a str>,
    owned_domains: Vec<&'a str>,
    replicated_domains: Vec<&'a str>,
    requirements: Vec<JsonRequirement<'a>>,
}

#[derive(Serialize)]
struct JsonRequirement<'a> {
    id: &'a str,
    text: &'a str,
}

#[derive(Serialize)]
struct JsonAssignment<'a> {
    domain: &'a str,
    counts: OrderedCounts<'a>,
    owner: &'a str,
    tied: bool,
}

/// Counts keyed by microservice id, kept in microservice order.
struct OrderedCounts<'a>(&'a [(MicroserviceId, u32)]);

impl Serialize for OrderedCounts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (ms, count) in self.0 {
            map.serialize_entry(ms.as_str(), count)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct JsonEdge<'a> {
    pair: [&'a str; 2],
    reason: &'a str,
}

#[derive(Serialize)]
struct JsonTrace<'a> {
    level: &'a str,
    message: &'a str,
}

pub fn emit_json(result: &DecompositionResult) -> String {
    let doc = JsonResult {
        microservices: result
            .microservices
            .iter()
            .map(|m| JsonMicroservice {
                id: m.id.as_str(),
                members: m.members.iter().map(|d| d.as_str()).collect(),
                owned_domains: m.owned_domains.iter().map(|d| d.as_str()).collect(),
                replicated_domains: m.replicated_domains.iter().map(|d| d.as_str()).collect(),
                requirements: m
                    .merged
                    .requirements
                    .iter()
                    .map(|r| JsonRequirement {
                        id: r.id.as_str(),
                        text: &r.text,
                    })
                    .collect(),
            })
            .collect(),
        assignments: result
            .assignments
            .iter()
            .map(|a| JsonAssignment {
                domain: a.domain.as_str(),
                counts: OrderedCounts(&a.counts),
                owner: a.owner.as_str(),
                tied: a.tied,
            })
            .collect(),
        edges: result
            .edges
            .iter()
            .map(|e| JsonEdge {
                pair: [e.pair[0].as_str(), e.pair[1].as_str()],
                reason: e.reason.as_str(),
            })
            .collect(),
        trace: result
            .trace
            .iter()
            .map(|t| JsonTrace {
                level: t.level.as_str(),
                message: &t.message,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("report types always serialize")
}
