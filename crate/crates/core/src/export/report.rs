//! Plain-text tables: requirements per microservice, correlations, shared
//! facility counts, and shared-domain usage per microservice.

use std::fmt::Write;

use crate::engine::{DecompositionResult, FacilitySimilarity};
use crate::model::{CorrelationLevel, DiagramPair, Model};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportDocument {
    pub correlation_table: String,
    pub similarity_table: String,
    pub assignment_table: String,
    pub summary: String,
    /// Count shared by all diagrams; cells above it carry a trailing `*`.
    pub threshold: u32,
}

impl ReportDocument {
    /// All four tables with headings, as written to `report.txt`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sections = [
            ("Requirements per microservice", &self.summary),
            ("Correlation between problem diagrams", &self.correlation_table),
            (
                &*format!(
                    "Shared basic hardware facilities (shared by all diagrams: {}; * marks pairs above it)",
                    self.threshold
                ),
                &self.similarity_table,
            ),
            (
                "Problem diagrams per microservice involving each shared problem domain",
                &self.assignment_table,
            ),
        ];
        for (i, (title, body)) in sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{title}");
            if body.is_empty() {
                out.push_str("(empty)\n");
            } else {
                out.push_str(body);
            }
        }
        out
    }
}

/// Renders rows as a pipe-delimited table padded to column width.
fn render_table(rows: &[Vec<String>]) -> String {
    let Some(cols) = rows.iter().map(Vec::len).max() else {
        return String::new();
    };
    let cell =
        |row: &Vec<String>, c: usize| row.get(c).cloned().unwrap_or_default().replace('|', "\\|");
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .map(|r| cell(r, c).chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        out.push('|');
        for (c, w) in widths.iter().enumerate() {
            let text = cell(row, c);
            let pad = w - text.chars().count();
            let _ = write!(out, " {text}{} |", " ".repeat(pad));
        }
        out.push('\n');
        if i == 0 {
            out.push('|');
            for w in &widths {
                let _ = write!(out, "{}|", "-".repeat(w + 2));
            }
            out.push('\n');
        }
    }
    out
}

fn upper_triangle(model: &Model, cell: impl Fn(usize, usize) -> String) -> String {
    if model.diagrams.is_empty() {
        return String::new();
    }
    let n = model.diagrams.len();
    let mut rows = Vec::with_capacity(n + 1);
    let mut header = vec![String::new()];
    header.extend(model.diagrams.iter().map(|d| d.id.to_string()));
    rows.push(header);
    for i in 0..n {
        let mut row = vec![model.diagrams[i].id.to_string()];
        for j in 0..n {
            row.push(match j.cmp(&i) {
                std::cmp::Ordering::Less => String::new(),
                std::cmp::Ordering::Equal => "/".to_owned(),
                std::cmp::Ordering::Greater => cell(i, j),
            });
        }
        rows.push(row);
    }
    render_table(&rows)
}

pub fn emit_report(
    model: &Model,
    sim: &FacilitySimilarity,
    result: &DecompositionResult,
) -> ReportDocument {
    let correlation_table = upper_triangle(model, |i, j| {
        let pair = DiagramPair::new(model.diagrams[i].id.clone(), model.diagrams[j].id.clone());
        match model.correlations.get(&pair) {
            CorrelationLevel::None => "/".to_owned(),
            level => level.to_string(),
        }
    });

    let similarity_table = upper_triangle(model, |i, j| {
        let count = sim
            .get(&model.diagrams[i].id, &model.diagrams[j].id)
            .unwrap_or(0);
        if count > sim.global() {
            format!("{count}*")
        } else {
            count.to_string()
        }
    });

    let assignment_table = if result.microservices.is_empty() {
        String::new()
    } else {
        let mut rows = Vec::new();
        let mut header = vec!["Problem Domain".to_owned()];
        header.extend(result.microservices.iter().map(|m| m.id.to_string()));
        rows.push(header);
        for a in &result.assignments {
            let mut row = vec![a.domain.to_string()];
            for ms in &result.microservices {
                let using: Vec<&str> = ms
                    .members
                    .iter()
                    .filter(|id| {
                        model
                            .diagram(id)
                            .is_some_and(|d| d.has_problem_domain(&a.domain))
                    })
                    .map(|id| id.as_str())
                    .collect();
                row.push(if using.is_empty() {
                    "/".to_owned()
                } else {
                    using.join(", ")
                });
            }
            rows.push(row);
        }
        render_table(&rows)
    };

    let summary = if result.microservices.is_empty() {
        String::new()
    } else {
        let mut rows = vec![vec![
            "Microservice".to_owned(),
            "Diagram".to_owned(),
            "Requirements".to_owned(),
        ]];
        for ms in &result.microservices {
            for id in &ms.members {
                let Some(d) = model.diagram(id) else { continue };
                let texts: Vec<&str> = d.requirements.iter().map(|r| r.text.as_str()).collect();
                rows.push(vec![ms.id.to_string(), id.to_string(), texts.join("; ")]);
            }
        }
        render_table(&rows)
    };

    ReportDocument {
        correlation_table,
        similarity_table,
        assignment_table,
        summary,
        threshold: sim.global(),
    }
}
