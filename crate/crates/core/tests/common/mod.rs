#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;

use graphviz_rust::dot_structures::{EdgeTy, Graph, Id, Stmt, Vertex};
use pfms::dsl::parse;
use pfms::model::{
    CorrelationLevel, DiagramPair, DomainKind, DomainNode, FacilityId, Interface, MergeHint, Model,
    ProblemDiagram, Requirement, SimilarityOverride,
};
use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/smart_campus.pfm")
}

pub fn fixture_source() -> String {
    std::fs::read_to_string(fixture_path()).expect("fixture readable")
}

pub fn fixture_model() -> Model {
    parse(&fixture_source()).expect("fixture parses")
}

/// Fixture without the similarity override, so counts come from facility sets.
pub fn fixture_model_computed() -> Model {
    let mut m = fixture_model();
    m.similarity_override = None;
    m
}

// ---- random models ----

#[derive(Clone, Debug)]
pub struct RawDiagram {
    pub title: String,
    pub machine_mask: u16,
    pub domains: Vec<(usize, u16, String)>,
    pub requirement: Option<String>,
    pub phenomena: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RawModel {
    pub name: String,
    pub facility_count: usize,
    pub descriptions: Vec<Option<String>>,
    pub diagrams: Vec<RawDiagram>,
    pub correlations: Vec<u8>,
    pub hints: Vec<(u8, Option<String>)>,
    pub overrides: Option<(Vec<u32>, u32)>,
}

const DOMAIN_KINDS: [DomainKind; 6] = [
    DomainKind::Biddable,
    DomainKind::Causal,
    DomainKind::Lexical,
    DomainKind::Causal,
    DomainKind::Biddable,
    DomainKind::Lexical,
];

/// Free text including characters the DSL has to escape.
pub fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 _.,:;!?'()\\-\"\\\\\n\té]{0,12}"
}

fn raw_diagram() -> impl Strategy<Value = RawDiagram> {
    (
        text(),
        any::<u16>(),
        vec((0..DOMAIN_KINDS.len(), any::<u16>(), text()), 0..4),
        option::weighted(0.9, text()),
        vec("[a-z ]{1,8}", 1..4),
    )
        .prop_map(
            |(title, machine_mask, domains, requirement, phenomena)| RawDiagram {
                title,
                machine_mask,
                domains,
                requirement,
                phenomena,
            },
        )
}

/// Up to `max_diagrams` diagrams over at most `max_facilities` facilities.
/// When `with_override` is false the model never carries a similarity table.
pub fn raw_model(
    max_diagrams: usize,
    max_facilities: usize,
    with_override: bool,
) -> impl Strategy<Value = RawModel> {
    (0..=max_diagrams, 0..=max_facilities).prop_flat_map(move |(n, nf)| {
        let pairs = n * n.saturating_sub(1) / 2;
        let overrides = if with_override {
            option::of((vec(0u32..6, pairs), 0u32..3)).boxed()
        } else {
            Just(None).boxed()
        };
        (
            text(),
            vec(option::of(text()), nf),
            vec(raw_diagram(), n),
            vec(0u8..3, pairs),
            vec((0u8..3, option::of(text())), pairs),
            overrides,
        )
            .prop_map(
                move |(name, descriptions, diagrams, correlations, hints, overrides)| RawModel {
                    name,
                    facility_count: nf,
                    descriptions,
                    diagrams,
                    correlations,
                    hints,
                    overrides,
                },
            )
    })
}

fn facilities_from_mask(mask: u16, count: usize) -> BTreeSet<FacilityId> {
    (0..count)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| FacilityId(format!("f{i}")))
        .collect()
}

/// Turns raw draws into a model that passes validation.
pub fn build_model(raw: &RawModel) -> Model {
    let nf = raw.facility_count;
    let mut model = Model {
        name: raw.name.clone(),
        ..Model::default()
    };
    for (i, d) in raw.descriptions.iter().enumerate() {
        model
            .facilities
            .insert(FacilityId(format!("f{i}")), d.clone());
    }
    for (i, rd) in raw.diagrams.iter().enumerate() {
        let machine = DomainNode::new("S", "S", DomainKind::Machine)
            .with_facilities(facilities_from_mask(rd.machine_mask, nf));
        let mut domains: Vec<DomainNode> = Vec::new();
        for (k, mask, name) in &rd.domains {
            let id = format!("D{k}");
            if domains.iter().any(|d| d.id.as_str() == id) {
                continue;
            }
            domains.push(
                DomainNode::new(id.as_str(), name.as_str(), DOMAIN_KINDS[*k])
                    .with_facilities(facilities_from_mask(*mask, nf)),
            );
        }
        let mut requirements = Vec::new();
        if let Some(text) = &rd.requirement {
            requirements.push(Requirement {
                id: "R".into(),
                text: text.clone(),
                constrains: domains.iter().take(1).map(|d| d.id.clone()).collect(),
                refers: std::iter::once(machine.id.clone())
                    .chain(domains.iter().skip(1).map(|d| d.id.clone()))
                    .collect(),
            });
        }
        let interfaces = domains
            .iter()
            .enumerate()
            .map(|(k, d)| Interface {
                a: machine.id.clone(),
                b: d.id.clone(),
                phenomena: vec![rd.phenomena[k % rd.phenomena.len()].clone()],
            })
            .collect();
        model.diagrams.push(ProblemDiagram {
            id: format!("P{}", i + 1).into(),
            title: rd.title.clone(),
            machine,
            domains,
            requirements,
            interfaces,
        });
    }

    let pairs = model.diagram_pairs();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let pair = DiagramPair::new(model.diagrams[i].id.clone(), model.diagrams[j].id.clone());
        let level = match raw.correlations[k] {
            0 => CorrelationLevel::None,
            1 => CorrelationLevel::Low,
            _ => CorrelationLevel::High,
        };
        model.correlations.set(pair.clone(), level);
        if level == CorrelationLevel::Low && raw.hints[k].0 > 0 {
            model.hints.push(MergeHint {
                pair,
                accepted: raw.hints[k].0 == 1,
                note: raw.hints[k].1.clone(),
            });
        }
    }

    if let Some((values, slack)) = &raw.overrides {
        let pairwise: BTreeMap<DiagramPair, u32> = pairs
            .iter()
            .zip(values)
            .map(|(&(i, j), v)| {
                (
                    DiagramPair::new(model.diagrams[i].id.clone(), model.diagrams[j].id.clone()),
                    *v,
                )
            })
            .collect();
        let min = pairwise.values().copied().min().unwrap_or(0);
        model.similarity_override = Some(SimilarityOverride {
            pairwise,
            global: min.saturating_sub(*slack),
        });
    }
    model
}

// ---- oracles ----

/// Facilities of every domain of a diagram, machine included.
pub fn oracle_facilities(d: &ProblemDiagram) -> HashSet<String> {
    let mut out = HashSet::new();
    for f in &d.machine.facilities {
        out.insert(f.0.clone());
    }
    for dom in &d.domains {
        for f in &dom.facilities {
            out.insert(f.0.clone());
        }
    }
    out
}

pub fn oracle_pairwise(model: &Model, i: usize, j: usize) -> u32 {
    let a = oracle_facilities(&model.diagrams[i]);
    let b = oracle_facilities(&model.diagrams[j]);
    a.intersection(&b).count() as u32
}

pub fn oracle_global(model: &Model) -> u32 {
    let mut sets = model.diagrams.iter().map(oracle_facilities);
    let Some(first) = sets.next() else { return 0 };
    sets.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
        .len() as u32
}

/// Index pairs the rules require to share a microservice.
pub fn oracle_required_pairs(model: &Model) -> Vec<(usize, usize)> {
    let n = model.diagrams.len();
    let id = |i: usize| model.diagrams[i].id.clone();
    let (counts, global): (Box<dyn Fn(usize, usize) -> u32>, u32) = match &model.similarity_override
    {
        Some(ov) => (
            Box::new(move |i, j| ov.pairwise[&DiagramPair::new(id(i), id(j))]),
            ov.global,
        ),
        None => (
            Box::new(|i, j| oracle_pairwise(model, i, j)),
            oracle_global(model),
        ),
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pair = DiagramPair::new(id(i), id(j));
            let high = model.correlations.get(&pair) == CorrelationLevel::High;
            let hinted = model.hints.iter().any(|h| h.pair == pair && h.accepted);
            if high || hinted || counts(i, j) > global {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every set partition of `0..n` as block labels (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// `fine` refines `coarse` when equal labels in `fine` imply equal labels in `coarse`.
pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|i| (0..fine.len()).all(|j| fine[i] != fine[j] || coarse[i] == coarse[j]))
}

/// Which diagrams are reachable from each other through the required pairs.
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![start];
        row[start] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
    }
    reach
}

// ---- DOT inspection ----

fn unquote(id: &Id) -> String {
    match id {
        Id::Escaped(s) => s
            .strip_prefix('"')
            .and_then(|s| s.strip_suffix('"'))
            .unwrap_or(s)
            .replace("\\\"", "\""),
        Id::Html(s) | Id::Plain(s) | Id::Anonymous(s) => s.clone(),
    }
}

fn collect(
    stmts: &[Stmt],
    nodes: &mut Vec<String>,
    edge_ends: &mut Vec<String>,
    clusters: &mut Vec<String>,
) {
    for s in stmts {
        match s {
            Stmt::Node(n) => nodes.push(unquote(&n.id.0)),
            Stmt::Subgraph(sg) => {
                clusters.push(unquote(&sg.id));
                collect(&sg.stmts, nodes, edge_ends, clusters);
            }
            Stmt::Edge(e) => {
                let vs: Vec<&Vertex> = match &e.ty {
                    EdgeTy::Pair(a, b) => vec![a, b],
                    EdgeTy::Chain(v) => v.iter().collect(),
                };
                for v in vs {
                    if let Vertex::N(id) = v {
                        edge_ends.push(unquote(&id.0));
                    }
                }
            }
            _ => {}
        }
    }
}

/// Node ids, edge endpoints and subgraph ids of a parsed DOT graph.
pub struct DotSummary {
    pub directed: bool,
    pub nodes: Vec<String>,
    pub edge_ends: Vec<String>,
    pub clusters: Vec<String>,
}

pub fn inspect_dot(text: &str) -> Result<DotSummary, String> {
    let graph = graphviz_rust::parse(text)?;
    let (directed, stmts) = match &graph {
        Graph::Graph { stmts, .. } => (false, stmts),
        Graph::DiGraph { stmts, .. } => (true, stmts),
    };
    let mut s = DotSummary {
        directed,
        nodes: Vec::new(),
        edge_ends: Vec::new(),
        clusters: Vec::new(),
    };
    collect(stmts, &mut s.nodes, &mut s.edge_ends, &mut s.clusters);
    Ok(s)
}

/// Node ids a diagram's DOT rendering must declare.
pub fn expected_diagram_nodes(d: &ProblemDiagram) -> BTreeSet<String> {
    d.all_domains()
        .map(|n| n.id.to_string())
        .chain(d.requirements.iter().map(|r| format!("req:{}", r.id)))
        .collect()
}
