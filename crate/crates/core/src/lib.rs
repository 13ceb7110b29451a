//! Problem-frames models decomposed into microservices.
//!
//! A model is a set of problem diagrams plus analyst judgments: pairwise
//! correlations, merge hints, and optionally a table of shared hardware
//! facility counts. [`dsl`] reads and writes the `.pfm` text format,
//! [`engine`] groups diagrams into microservices and decides which
//! microservice owns each shared problem domain, and [`export`] renders the
//! result as DOT, JSON and text tables.
//!
//! ```
//! let src = r#"
//! facility server
//! diagram P1 "Log in" {
//!   machine S facilities [server]
//!   domain U "User" kind B
//!   requirement R "Let users log in" refers [U]
//!   interface U -- S phenomena ["credentials"]
//! }
//! "#;
//! let model = pfms::dsl::parse(src).unwrap();
//! let result = pfms::engine::decompose(&model).unwrap();
//! assert_eq!(result.microservices.len(), 1);
//! ```

pub mod cli;
pub mod dsl;
pub mod engine;
pub mod export;
pub mod model;
