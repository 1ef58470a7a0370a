//! Identity-test outcomes with checkable certificates.

use std::fmt;

use crate::algebra::{FieldElem, Matrix, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Zero,
    Nonzero,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Zero => "ZERO",
            Status::Nonzero => "NONZERO",
            Status::Indeterminate => "INDETERMINATE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A necessary condition for vanishing that failed. Each variant is a
/// consequence of `C = 0`, so its failure proves `C ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailedCondition {
    /// Two linear factors from different terms whose span contains no
    /// factor of the remaining term. Since `⟨l1, l2⟩` is prime, the
    /// remaining product is not in it.
    LinearSpan { first: Poly, second: Poly, third_term: usize },
    /// Restricting the quadratic to `linear = 0` leaves Gram rank above 2,
    /// so the restricted quadratic term is not a product of linear forms.
    RestrictionRank { linear: Poly, quadratic: Poly, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The complete expansion (after `reduction`, if any) is empty.
    ExpansionEmpty,
    /// A monomial with nonzero coefficient in the complete expansion
    /// (after `reduction`, if any).
    NonzeroMonomial { exponents: Vec<u32>, coeff: FieldElem },
    FailedCondition(FailedCondition),
    /// Term `term` is not in the ideal generated by the chosen factors
    /// (`tuple[t]` indexes a factor of the t-th other term).
    SgWitness { term: usize, tuple: Vec<usize>, gens: Vec<Poly> },
    /// Two terms share the factor `shared`, which is not an associate of any
    /// factor of `lone`: modulo `shared` only `lone` survives.
    EarlyNormalization { shared: Poly, pair: (usize, usize), lone: usize },
    /// Expansion would exceed the monomial budget.
    BudgetExceeded { budget: usize },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ExpansionEmpty => "expansion-empty",
            Certificate::NonzeroMonomial { .. } => "nonzero-monomial",
            Certificate::FailedCondition(_) => "failed-necessary-condition",
            Certificate::SgWitness { .. } => "sg-witness",
            Certificate::EarlyNormalization { .. } => "early-normalization",
            Certificate::BudgetExceeded { .. } => "budget-exceeded",
        }
    }

    /// Whether the verdict rests on a necessary condition rather than on an
    /// expansion.
    pub fn is_theory_certified(&self) -> bool {
        matches!(
            self,
            Certificate::FailedCondition(_) | Certificate::SgWitness { .. } | Certificate::EarlyNormalization { .. }
        )
    }
}

/// A stated bound that the run observed to fail. Recorded only; never used
/// to decide a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClaimViolation {
    /// Quadratic factor of the third term has Gram rank other than 3.
    QuadraticRankEqThree { rank: usize },
    /// Linear factors of the two all-linear terms span more than 3 dims.
    LinearSpanDimLeThree { dim: usize },
    /// Linear factors of a circuit passing the span conditions span more
    /// than 5 dims.
    SpanDimLeFive { dim: usize },
}

impl ClaimViolation {
    pub fn name(&self) -> &'static str {
        match self {
            ClaimViolation::QuadraticRankEqThree { .. } => "quadratic_rank_eq_3",
            ClaimViolation::LinearSpanDimLeThree { .. } => "linear_span_dim_le_3",
            ClaimViolation::SpanDimLeFive { .. } => "span_dim_le_5",
        }
    }

    pub fn observed(&self) -> usize {
        match *self {
            ClaimViolation::QuadraticRankEqThree { rank } => rank,
            ClaimViolation::LinearSpanDimLeThree { dim } | ClaimViolation::SpanDimLeFive { dim } => dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    /// Substitution (old variables in rows) applied before the final
    /// expansion, if any.
    pub reduction: Option<Matrix>,
    pub diagnostics: Vec<ClaimViolation>,
    /// Ordered key/value observations (dimensions, ranks, pipeline name).
    pub facts: Vec<(String, String)>,
}

impl Verdict {
    pub fn new(status: Status, certificate: Certificate) -> Self {
        Verdict { status, certificate, reduction: None, diagnostics: Vec::new(), facts: Vec::new() }
    }

    pub fn zero() -> Self {
        Verdict::new(Status::Zero, Certificate::ExpansionEmpty)
    }

    pub fn nonzero(certificate: Certificate) -> Self {
        Verdict::new(Status::Nonzero, certificate)
    }

    pub fn budget(budget: usize) -> Self {
        Verdict::new(Status::Indeterminate, Certificate::BudgetExceeded { budget })
    }

    pub fn with_fact(mut self, key: &str, value: impl ToString) -> Self {
        self.facts.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fact(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn has_violation(&self, name: &str) -> bool {
        self.diagnostics.iter().any(|d| d.name() == name)
    }
}
