//! Graphviz DOT rendering.
//!
//! Notation mapping: the machine is a double-bordered box, problem domains are
//! boxes whose label ends with the kind letter (B, C or X), requirements are
//! dashed ellipses. Interfaces are solid undirected edges labelled with their
//! phenomena; `constrains` arcs are dashed arrows and `refers` arcs are dashed
//! undirected edges.

use std::fmt::Write;

use crate::engine::{DecompositionResult, Microservice};
use crate::model::{DomainKind, DomainNode, ProblemDiagram};

/// Escapes text for use inside a double-quoted DOT string.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out
}

fn q(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

fn domain_label(node: &DomainNode) -> String {
    match node.kind.letter() {
        Some(letter) => format!("{}\n{letter}", node.name),
        None => node.name.clone(),
    }
}

fn domain_attrs(node: &DomainNode) -> &'static str {
    if node.kind == DomainKind::Machine {
        "shape=box, peripheries=2"
    } else {
        "shape=box"
    }
}

fn requirement_node(id: &str) -> String {
    format!("req:{id}")
}

fn write_header(out: &mut String, name: &str, label: &str) {
    let _ = writeln!(out, "digraph {} {{", q(name));
    let _ = writeln!(out, "  label={};", q(label));
    out.push_str("  labelloc=t;\n");
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\"];\n");
}

/// One problem diagram as a standalone digraph.
pub fn render_diagram_dot(diagram: &ProblemDiagram) -> String {
    let mut out = String::new();
    write_header(
        &mut out,
        diagram.id.as_str(),
        &format!("{}: {}", diagram.id, diagram.title),
    );
    for node in diagram.all_domains() {
        let _ = writeln!(
            out,
            "  {} [label={}, {}];",
            q(node.id.as_str()),
            q(&domain_label(node)),
            domain_attrs(node)
        );
    }
    for r in &diagram.requirements {
        let _ = writeln!(
            out,
            "  {} [label={}, shape=ellipse, style=dashed];",
            q(&requirement_node(r.id.as_str())),
            q(&r.text)
        );
    }
    for i in &diagram.interfaces {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, dir=none];",
            q(i.a.as_str()),
            q(i.b.as_str()),
            q(&i.phenomena.join(", "))
        );
    }
    for r in &diagram.requirements {
        let rn = q(&requirement_node(r.id.as_str()));
        for d in &r.constrains {
            let _ = writeln!(out, "  {rn} -> {} [style=dashed];", q(d.as_str()));
        }
        for d in &r.refers {
            let _ = writeln!(out, "  {rn} -> {} [style=dashed, dir=none];", q(d.as_str()));
        }
    }
    out.push_str("}\n");
    out
}

fn cluster_node(ms: &Microservice, local: &str) -> String {
    format!("{}/{local}", ms.id)
}

/// The whole architecture: one cluster per microservice holding its machine,
/// requirements and domains. Shared domains are marked `owner` in the owning
/// cluster and `replica` elsewhere, with a dotted edge from each replica to
/// the owner's copy.
pub fn render_architecture_dot(result: &DecompositionResult) -> String {
    let mut out = String::new();
    write_header(&mut out, "architecture", "Microservice architecture");
    out.push_str("  compound=true;\n");
    for ms in &result.microservices {
        let merged = &ms.merged;
        let _ = writeln!(out, "  subgraph {} {{", q(&format!("cluster_{}", ms.id)));
        let members: Vec<&str> = ms.members.iter().map(|m| m.as_str()).collect();
        let _ = writeln!(
            out,
            "    label={};",
            q(&format!("{} ({})", ms.id, members.join(", ")))
        );
        let _ = writeln!(
            out,
            "    {} [label={}, {}];",
            q(&cluster_node(ms, "machine")),
            q(&merged.machine.name),
            domain_attrs(&merged.machine)
        );
        for r in &merged.requirements {
            let _ = writeln!(
                out,
                "    {} [label={}, shape=ellipse, style=dashed];",
                q(&cluster_node(ms, &requirement_node(r.id.as_str()))),
                q(&r.text)
            );
        }
        for d in &merged.domains {
            let shared = result.assignments.iter().any(|a| a.domain == d.id);
            let (label, style) = if ms.replicated_domains.contains(&d.id) {
                (format!("{}\n(replica)", domain_label(d)), ", style=dashed")
            } else if shared {
                (format!("{}\n(owner)", domain_label(d)), ", style=bold")
            } else {
                (domain_label(d), "")
            };
            let _ = writeln!(
                out,
                "    {} [label={}, shape=box{style}];",
                q(&cluster_node(ms, &format!("dom:{}", d.id))),
                q(&label)
            );
        }
        out.push_str("  }\n");
    }
    for a in &result.assignments {
        let Some(owner) = result.microservice(&a.owner) else {
            continue;
        };
        for replica in a.replicas() {
            let Some(ms) = result.microservice(replica) else {
                continue;
            };
            let _ = writeln!(
                out,
                "  {} -> {} [style=dotted, label=\"replica of\"];",
                q(&cluster_node(ms, &format!("dom:{}", a.domain))),
                q(&cluster_node(owner, &format!("dom:{}", a.domain)))
            );
        }
    }
    out.push_str("}\n");
    out
}
