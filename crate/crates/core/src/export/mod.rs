//! Renderers for diagrams and decomposition results.

mod dot;
mod json;
mod report;

pub use dot::{escape as escape_dot, render_architecture_dot, render_diagram_dot};
pub use json::emit_json;
pub use report::{emit_report, ReportDocument};
