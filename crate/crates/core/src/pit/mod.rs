//! Identity-testing pipelines. Every ZERO comes from a complete expansion,
//! possibly after a variable reduction that provably keeps the verdict.

mod essential;
mod general;
mod oracle;
mod pit31;
mod pit32;

use thiserror::Error;

use crate::circuit::{has_errors, validate, Circuit, Issue};
use crate::membership::{MembershipError, ProductMode};
use crate::trdeg::{TrdegError, DEFAULT_GRID_BOUND};
use crate::verdict::{Status, Verdict};

pub use essential::essential_space;
pub use general::pit_general;
pub use oracle::{expand_circuit, oracle_expand};
pub use pit31::pit31;
pub use pit32::pit32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Subset bound for product membership; `None` decides whole products.
    pub f_max: Option<usize>,
    /// Largest grid side tried by the faithful reduction.
    pub grid_bound: u64,
    /// Largest number of monomials any expansion may hold.
    pub budget: usize,
    /// Cross-check every verdict against a direct expansion.
    pub strict_oracle: bool,
}

pub const DEFAULT_BUDGET: usize = 2_000_000;

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { f_max: None, grid_bound: DEFAULT_GRID_BOUND, budget: DEFAULT_BUDGET, strict_oracle: false }
    }
}

impl PipelineConfig {
    pub fn mode(&self) -> ProductMode {
        self.f_max.map_or(ProductMode::Direct, ProductMode::Subset)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("wrong shape for {pipeline}: {reason}")]
    WrongShape { pipeline: &'static str, reason: String },
    #[error("invalid circuit: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
    #[error(transparent)]
    Membership(#[from] MembershipError),
    #[error(transparent)]
    Trdeg(#[from] TrdegError),
    #[error("{pipeline} said {got} but the expansion says {oracle}")]
    OracleMismatch { pipeline: &'static str, got: Status, oracle: Status },
    #[error("factor of degree {0} where at most 2 is supported")]
    DegreeTooHigh(u32),
}

/// Pipelines need homogeneous, valid input; the header flag itself is not
/// required, only the property.
fn require_valid(c: &Circuit) -> Result<(), PipelineError> {
    let mut h = c.clone();
    h.homogeneous = true;
    let issues = validate(&h);
    if has_errors(&issues) {
        return Err(PipelineError::Invalid(issues.into_iter().filter(|i| i.severity == crate::circuit::Severity::Error).collect()));
    }
    Ok(())
}

/// Applies the strict-oracle cross-check when configured.
fn finish(pipeline: &'static str, c: &Circuit, v: Verdict, cfg: &PipelineConfig) -> Result<Verdict, PipelineError> {
    let v = v.with_fact("pipeline", pipeline);
    if !cfg.strict_oracle || v.status == Status::Indeterminate {
        return Ok(v);
    }
    let o = oracle_expand(c, cfg.budget);
    if o.status == Status::Indeterminate {
        return Ok(v.with_fact("oracle_check", "skipped"));
    }
    if o.status != v.status {
        return Err(PipelineError::OracleMismatch { pipeline, got: v.status, oracle: o.status });
    }
    Ok(v.with_fact("oracle_check", "agree"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Three terms, linear factors only.
    ThreeOne,
    /// Three terms, two all-linear and one holding a quadratic.
    ThreeTwoSubclass,
    General,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::ThreeOne => "pit31",
            Shape::ThreeTwoSubclass => "pit32",
            Shape::General => "pit",
        }
    }
}

pub fn detect_shape(c: &Circuit) -> Shape {
    if c.k() != 3 {
        return Shape::General;
    }
    if c.r() <= 1 {
        return Shape::ThreeOne;
    }
    let quad_terms = c.terms.iter().filter(|t| !t.is_all_linear()).count();
    if c.r() == 2 && quad_terms == 1 {
        Shape::ThreeTwoSubclass
    } else {
        Shape::General
    }
}

/// Most specific pipeline first: (3,1), then the (3,2) subclass, then the
/// general one.
pub fn pit_auto(c: &Circuit, cfg: &PipelineConfig) -> Result<Verdict, PipelineError> {
    match detect_shape(c) {
        Shape::ThreeOne => pit31(c, cfg),
        Shape::ThreeTwoSubclass => pit32(c, cfg),
        Shape::General => pit_general(c, cfg),
    }
}

/// Expands `c` (after an optional reduction) into a verdict.
fn expand_verdict(c: &Circuit, budget: usize) -> Verdict {
    oracle_expand(c, budget)
}
