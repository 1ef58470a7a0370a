//! Colored projective point configurations and exhaustive line finders.

mod config;
mod fixtures;
mod lines;
mod point;

pub use config::{
    circuit_to_configuration, parse_configuration, serialize_configuration, span_dim, span_dim_of, Configuration,
    IncidenceError, SpanDim,
};
pub use fixtures::{hesse_configuration, hesse_points, random_configuration, random_points, RandomConfigParams};
pub use lines::{find_line_two_sets, find_ordinary_line, line_points, TwoSetLine};
pub use point::{Line, ProjPoint};
