//! The ΣΠΣΠ circuit model, its text format, validation, normalization and
//! seeded generators.

pub mod generate;
pub mod model;
pub mod normalize;
pub mod text;
pub mod validate;

pub use model::{Circuit, Term};
pub use normalize::{normalize, pairwise_coprime, NormalizationReport};
pub use text::{parse_circuit, parse_circuit_with, serialize_circuit, ParseError};
pub use validate::{has_errors, validate, Issue, IssueKind, Severity};
