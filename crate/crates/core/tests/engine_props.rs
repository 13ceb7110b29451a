mod common;

use std::collections::{BTreeSet, HashMap};

use common::*;
use pfms::engine::{
    build_similarity, decompose, global_shared_count, pairwise_shared_count, DecompositionResult,
};
use pfms::export::{emit_json, render_architecture_dot, render_diagram_dot};
use pfms::model::{validate, Model};
use proptest::prelude::*;

fn group_of(result: &DecompositionResult, model: &Model) -> Vec<usize> {
    model
        .diagrams
        .iter()
        .map(|d| {
            result
                .microservices
                .iter()
                .position(|m| m.members.contains(&d.id))
                .expect("every diagram is placed")
        })
        .collect()
}

proptest! {
    #[test]
    fn generated_models_are_valid(raw in raw_model(8, 10, true)) {
        let model = build_model(&raw);
        let errors: Vec<_> = validate(&model).into_iter().filter(|d| d.is_error()).collect();
        prop_assert!(errors.is_empty(), "{:?}", errors);
    }

    #[test]
    fn counts_match_brute_force(raw in raw_model(8, 10, false)) {
        let model = build_model(&raw);
        let global = global_shared_count(&model);
        prop_assert_eq!(global, oracle_global(&model));
        for i in 0..model.diagrams.len() {
            for j in 0..model.diagrams.len() {
                let (a, b) = (&model.diagrams[i].id, &model.diagrams[j].id);
                if i == j {
                    prop_assert!(pairwise_shared_count(&model, a, b).is_err());
                } else {
                    let c = pairwise_shared_count(&model, a, b).unwrap();
                    prop_assert_eq!(c, oracle_pairwise(&model, i, j));
                    prop_assert!(global <= c);
                }
            }
        }
    }

    #[test]
    fn groups_are_reachability_classes(raw in raw_model(8, 10, true)) {
        let model = build_model(&raw);
        let result = decompose(&model).unwrap();
        let n = model.diagrams.len();
        let members: usize = result.microservices.iter().map(|m| m.members.len()).sum();
        prop_assert_eq!(members, n);
        let group = group_of(&result, &model);
        let reach = reachability(n, &oracle_required_pairs(&model));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(group[i] == group[j], reach[i][j], "P{} P{}", i + 1, j + 1);
            }
        }
        // Members keep model order and groups are ordered by first member.
        let firsts: Vec<usize> = result
            .microservices
            .iter()
            .map(|m| model.diagram_index(&m.members[0]).unwrap())
            .collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
        for m in &result.microservices {
            let idx: Vec<usize> = m.members.iter().map(|d| model.diagram_index(d).unwrap()).collect();
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ownership_follows_majority(raw in raw_model(8, 10, false)) {
        let model = build_model(&raw);
        let result = decompose(&model).unwrap();
        let group = group_of(&result, &model);
        // domain -> per-group count of member diagrams using it
        let mut usage: HashMap<String, Vec<u32>> = HashMap::new();
        for (i, d) in model.diagrams.iter().enumerate() {
            for dom in &d.domains {
                usage.entry(dom.id.to_string()).or_insert_with(|| vec![0; result.microservices.len()])[group[i]] += 1;
            }
        }
        let shared: BTreeSet<&String> = usage
            .iter()
            .filter(|(_, c)| c.iter().filter(|x| **x > 0).count() >= 2)
            .map(|(d, _)| d)
            .collect();
        let assigned: BTreeSet<String> = result.assignments.iter().map(|a| a.domain.to_string()).collect();
        prop_assert_eq!(shared.into_iter().cloned().collect::<BTreeSet<_>>(), assigned);
        for a in &result.assignments {
            let counts = &usage[a.domain.as_str()];
            let max = *counts.iter().max().unwrap();
            let first_max = counts.iter().position(|c| *c == max).unwrap();
            prop_assert_eq!(a.owner.to_string(), format!("M{}", first_max + 1));
            prop_assert_eq!(a.tied, counts.iter().filter(|c| **c == max).count() > 1);
            prop_assert_eq!(a.tied, result.warnings().any(|w| w.message.contains(&format!("domain {}:", a.domain))));
        }
        for m in &result.microservices {
            let merged: BTreeSet<_> = m.merged.domains.iter().map(|d| d.id.clone()).collect();
            let owned: BTreeSet<_> = m.owned_domains.iter().cloned().collect();
            let replicated: BTreeSet<_> = m.replicated_domains.iter().cloned().collect();
            prop_assert!(owned.is_disjoint(&replicated));
            prop_assert_eq!(&owned | &replicated, merged);
        }
    }

    #[test]
    fn merged_diagrams_drop_nothing(raw in raw_model(8, 10, true)) {
        let model = build_model(&raw);
        let result = decompose(&model).unwrap();
        for m in &result.microservices {
            let members: Vec<_> = m.members.iter().map(|id| model.diagram(id).unwrap()).collect();
            let reqs: usize = members.iter().map(|d| d.requirements.len()).sum();
            prop_assert_eq!(m.merged.requirements.len(), reqs);
            let ids: BTreeSet<_> = m.merged.requirements.iter().map(|r| r.id.clone()).collect();
            prop_assert_eq!(ids.len(), reqs);
            let doms: BTreeSet<_> = members.iter().flat_map(|d| d.domains.iter().map(|x| x.id.clone())).collect();
            let merged: BTreeSet<_> = m.merged.domains.iter().map(|x| x.id.clone()).collect();
            prop_assert_eq!(doms, merged);
            let alone = Model {
                diagrams: vec![m.merged.clone()],
                facilities: model.facilities.clone(),
                ..Model::default()
            };
            let errors: Vec<_> = validate(&alone).into_iter().filter(|d| d.is_error()).collect();
            prop_assert!(errors.is_empty(), "{:?}", errors);
        }
    }

    #[test]
    fn outputs_are_deterministic_and_well_formed(raw in raw_model(6, 6, true)) {
        let model = build_model(&raw);
        let a = decompose(&model).unwrap();
        let b = decompose(&model).unwrap();
        prop_assert_eq!(&a, &b);
        let json = emit_json(&a);
        prop_assert_eq!(&json, &emit_json(&b));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(v["microservices"].as_array().unwrap().len(), a.microservices.len());

        let arch = inspect_dot(&render_architecture_dot(&a)).unwrap();
        prop_assert_eq!(arch.clusters.len(), a.microservices.len());
        let expected: usize = a
            .microservices
            .iter()
            .map(|m| 1 + m.merged.requirements.len() + m.merged.domains.len())
            .sum();
        prop_assert_eq!(arch.nodes.len(), expected);
        for d in model.diagrams.iter().chain(a.microservices.iter().map(|m| &m.merged)) {
            let s = inspect_dot(&render_diagram_dot(d)).unwrap();
            let nodes: BTreeSet<String> = s.nodes.iter().cloned().collect();
            prop_assert_eq!(nodes.len(), s.nodes.len());
            prop_assert_eq!(nodes, expected_diagram_nodes(d));
            prop_assert_eq!(s.edge_ends.len(), 2 * (d.interfaces.len()
                + d.requirements.iter().map(|r| r.constrains.len() + r.refers.len()).sum::<usize>()));
        }
    }

    #[test]
    fn override_is_used_verbatim(raw in raw_model(6, 6, true)) {
        let model = build_model(&raw);
        let sim = build_similarity(&model).unwrap();
        match &model.similarity_override {
            Some(ov) => {
                prop_assert_eq!(sim.global(), ov.global);
                for (pair, v) in &ov.pairwise {
                    prop_assert_eq!(sim.get(pair.first(), pair.second()), Some(*v));
                }
            }
            None => prop_assert_eq!(sim.global(), oracle_global(&model)),
        }
    }
}

#[test]
fn degenerate_threshold_is_warned() {
    let model = pfms::dsl::parse(
        "facility f\n\
         diagram P1 \"a\" {\n machine S facilities [f]\n requirement R \"r\" refers [S]\n}\n\
         diagram P2 \"b\" {\n machine S\n requirement R \"r\" refers [S]\n}\n",
    )
    .unwrap();
    let result = decompose(&model).unwrap();
    assert_eq!(result.microservices.len(), 2);
    assert!(result.warnings().any(|w| w.message.contains("degenerate")));
}

#[test]
fn empty_model_decomposes_to_nothing() {
    let result = decompose(&Model::default()).unwrap();
    assert!(result.microservices.is_empty());
    assert!(result.assignments.is_empty());
    assert_eq!(result.warnings().count(), 1);
}
