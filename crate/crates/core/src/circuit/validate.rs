//! Structural checks on parsed circuits.

use std::fmt;

use crate::quadratic::quad_rank;

use super::model::Circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Notice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IssueKind {
    NonHomogeneousFactor,
    MixedTermDegrees { degrees: Vec<u32> },
    DegreeExceedsBound { degree: u32, bound: u32 },
    ReducibleQuadratic { rank: usize },
    /// Degree ≥ 3 factors are taken to be irreducible without proof.
    UnverifiedIrreducibility { degree: u32 },
    EmptyTerm,
    VariableCount { found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    /// 0-based term and factor position, when the issue is local.
    pub term: Option<usize>,
    pub factor: Option<usize>,
    pub kind: IssueKind,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Notice => "notice",
        };
        write!(f, "{sev}")?;
        if let Some(t) = self.term {
            write!(f, " term {}", t + 1)?;
        }
        if let Some(j) = self.factor {
            write!(f, " factor {}", j + 1)?;
        }
        match &self.kind {
            IssueKind::NonHomogeneousFactor => write!(f, ": non-homogeneous factor"),
            IssueKind::MixedTermDegrees { degrees } => write!(f, ": terms have different degrees {degrees:?}"),
            IssueKind::DegreeExceedsBound { degree, bound } => {
                write!(f, ": factor degree {degree} exceeds r={bound}")
            }
            IssueKind::ReducibleQuadratic { rank } => write!(f, ": reducible quadratic (Gram rank {rank})"),
            IssueKind::UnverifiedIrreducibility { degree } => {
                write!(f, ": irreducibility of degree-{degree} factor unverified")
            }
            IssueKind::EmptyTerm => write!(f, ": term without factors"),
            IssueKind::VariableCount { found } => write!(f, ": factor has {found} variables"),
        }
    }
}

impl Issue {
    fn at(severity: Severity, term: usize, factor: Option<usize>, kind: IssueKind) -> Self {
        Issue { severity, term: Some(term), factor, kind }
    }
}

/// Reports every violation; an empty list (or notices only) means the
/// circuit is fit for the pipelines.
pub fn validate(c: &Circuit) -> Vec<Issue> {
    let mut out = Vec::new();
    for (i, t) in c.terms.iter().enumerate() {
        if t.factors.is_empty() {
            out.push(Issue::at(Severity::Error, i, None, IssueKind::EmptyTerm));
        }
        for (j, f) in t.factors.iter().enumerate() {
            if f.nvars() != c.nvars {
                out.push(Issue::at(Severity::Error, i, Some(j), IssueKind::VariableCount { found: f.nvars() }));
                continue;
            }
            let deg = f.degree().unwrap_or(0);
            if let Some(bound) = c.max_degree {
                if deg > bound {
                    out.push(Issue::at(Severity::Error, i, Some(j), IssueKind::DegreeExceedsBound { degree: deg, bound }));
                }
            }
            let homog = f.is_homogeneous();
            if c.homogeneous && !homog {
                out.push(Issue::at(Severity::Error, i, Some(j), IssueKind::NonHomogeneousFactor));
            }
            if deg == 2 && homog {
                let rank = quad_rank(f).expect("homogeneous quadratic");
                if rank < 3 {
                    out.push(Issue::at(Severity::Error, i, Some(j), IssueKind::ReducibleQuadratic { rank }));
                }
            } else if deg >= 3 {
                out.push(Issue::at(Severity::Notice, i, Some(j), IssueKind::UnverifiedIrreducibility { degree: deg }));
            }
        }
    }
    if c.homogeneous {
        let degrees: Vec<u32> = c.terms.iter().map(|t| t.degree()).collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            out.push(Issue { severity: Severity::Error, term: None, factor: None, kind: IssueKind::MixedTermDegrees { degrees } });
        }
    }
    out
}

pub fn has_errors(issues: &[Issue]) -> bool {
    issues.iter().any(|i| i.severity == Severity::Error)
}
