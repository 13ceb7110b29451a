use std::fmt::Write;

use super::FORMAT_VERSION;
use crate::model::{CorrelationLevel, DiagramPair, DomainNode, Model};

/// Canonical `.pfm` text for a model.
///
/// Section order is fixed (header, facilities, diagrams, correlations, hints,
/// similarity override). Facilities are sorted by id; pair-keyed entries follow
/// model diagram order. Output always ends with a newline.
pub fn serialize(model: &Model) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pfm-version {FORMAT_VERSION}");
    let _ = writeln!(out, "model {}", quote(&model.name));

    if !model.facilities.is_empty() {
        out.push('\n');
        for (id, label) in &model.facilities {
            match label {
                Some(label) => {
                    let _ = writeln!(out, "facility {id} {}", quote(label));
                }
                None => {
                    let _ = writeln!(out, "facility {id}");
                }
            }
        }
    }

    for d in &model.diagrams {
        out.push('\n');
        let _ = writeln!(out, "diagram {} {} {{", d.id, quote(&d.title));
        let m = &d.machine;
        let _ = write!(out, "  machine {}", m.id);
        if m.name != m.id.as_str() {
            let _ = write!(out, " {}", quote(&m.name));
        }
        facilities_clause(&mut out, m);
        out.push('\n');
        for dom in &d.domains {
            let letter = dom.kind.letter().unwrap_or('?');
            let _ = write!(
                out,
                "  domain {} {} kind {letter}",
                dom.id,
                quote(&dom.name)
            );
            facilities_clause(&mut out, dom);
            out.push('\n');
        }
        for r in &d.requirements {
            let _ = write!(out, "  requirement {} {}", r.id, quote(&r.text));
            if !r.constrains.is_empty() {
                let ids: Vec<&str> = r.constrains.iter().map(|d| d.as_str()).collect();
                let _ = write!(out, " constrains [{}]", ids.join(", "));
            }
            if !r.refers.is_empty() {
                let ids: Vec<&str> = r.refers.iter().map(|d| d.as_str()).collect();
                let _ = write!(out, " refers [{}]", ids.join(", "));
            }
            out.push('\n');
        }
        for i in &d.interfaces {
            let ph: Vec<String> = i.phenomena.iter().map(|p| quote(p)).collect();
            let _ = writeln!(
                out,
                "  interface {} -- {} phenomena [{}]",
                i.a,
                i.b,
                ph.join(", ")
            );
        }
        out.push_str("}\n");
    }

    let correlations = ordered_pairs(
        model,
        model.correlations.iter().map(|(p, l)| (p.clone(), l)),
    );
    if !correlations.is_empty() {
        out.push('\n');
        for ((a, b), level) in correlations {
            let word = match level {
                CorrelationLevel::High => "high",
                CorrelationLevel::Low | CorrelationLevel::None => "low",
            };
            let _ = writeln!(out, "correlation {a} {b} {word}");
        }
    }

    if !model.hints.is_empty() {
        out.push('\n');
        for h in &model.hints {
            let (a, b) = in_model_order(model, &h.pair);
            let decision = if h.accepted { "accepted" } else { "rejected" };
            let _ = write!(out, "hint merge {a} {b} {decision}");
            if let Some(note) = &h.note {
                let _ = write!(out, " {}", quote(note));
            }
            out.push('\n');
        }
    }

    if let Some(ov) = &model.similarity_override {
        out.push('\n');
        let pairs = ordered_pairs(model, ov.pairwise.iter().map(|(p, c)| (p.clone(), *c)));
        for ((a, b), count) in pairs {
            let _ = writeln!(out, "similarity {a} {b} {count}");
        }
        let _ = writeln!(out, "similarity-all {}", ov.global);
    }
    out
}

fn facilities_clause(out: &mut String, node: &DomainNode) {
    if !node.facilities.is_empty() {
        let ids: Vec<&str> = node.facilities.iter().map(|f| f.as_str()).collect();
        let _ = write!(out, " facilities [{}]", ids.join(", "));
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            '\t' => q.push_str("\\t"),
            '\r' => q.push_str("\\r"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

/// The pair's ids with the earlier diagram first; unknown ids sort last.
fn in_model_order<'a>(model: &Model, pair: &'a DiagramPair) -> (&'a str, &'a str) {
    let rank = |id| model.diagram_index(id).unwrap_or(usize::MAX);
    let (a, b) = (pair.first(), pair.second());
    if (rank(b), b) < (rank(a), a) {
        (b.as_str(), a.as_str())
    } else {
        (a.as_str(), b.as_str())
    }
}

fn ordered_pairs<T>(
    model: &Model,
    entries: impl Iterator<Item = (DiagramPair, T)>,
) -> Vec<((String, String), T)> {
    let rank = |id: &str| {
        model
            .diagrams
            .iter()
            .position(|d| d.id.as_str() == id)
            .unwrap_or(usize::MAX)
    };
    let mut v: Vec<_> = entries
        .map(|(pair, value)| {
            let (a, b) = in_model_order(model, &pair);
            let key = (rank(a), rank(b), a.to_owned(), b.to_owned());
            (key, value)
        })
        .collect();
    v.sort_by(|x, y| x.0.cmp(&y.0));
    v.into_iter()
        .map(|((_, _, a, b), value)| ((a, b), value))
        .collect()
}
