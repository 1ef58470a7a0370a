//! Three terms of linear factors.
//!
//! If `C = 0` and `l1 | F_a`, `l2 | F_b`, then `F_c ∈ ⟨l1, l2⟩`, a prime
//! ideal, so some factor of `F_c` lies in `span{l1, l2}`. These conditions
//! are necessary but not sufficient, so the verdict always comes from the
//! expansion over the span of the factors.

use crate::algebra::Matrix;
use crate::circuit::{normalize, Circuit};
use crate::membership::linear_factor_member;
use crate::verdict::{Certificate, ClaimViolation, FailedCondition, Verdict};

use super::essential::reduce_to;
use super::{expand_verdict, finish, require_valid, PipelineConfig, PipelineError};

const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];

/// First failing span condition in pair order (terms 1,2 | 1,3 | 2,3),
/// factors lexicographic.
pub(crate) fn span_conditions(c: &Circuit) -> Option<FailedCondition> {
    for (a, b, third) in PAIRS {
        for l1 in &c.terms[a].factors {
            for l2 in &c.terms[b].factors {
                if !c.terms[third].factors.iter().any(|l| linear_factor_member(l, l1, l2)) {
                    return Some(FailedCondition::LinearSpan { first: l1.clone(), second: l2.clone(), third_term: third });
                }
            }
        }
    }
    None
}

pub(crate) fn linear_rows(c: &Circuit) -> Matrix {
    let rows = c.factors().filter(|f| f.degree() == Some(1)).map(|f| f.linear_coeffs().unwrap()).collect();
    Matrix::from_rows_with_cols(rows, c.nvars).row_space_basis()
}

pub fn pit31(c: &Circuit, cfg: &PipelineConfig) -> Result<Verdict, PipelineError> {
    if c.k() != 3 || c.r() > 1 {
        return Err(PipelineError::WrongShape {
            pipeline: "pit31",
            reason: format!("needs k=3 and linear factors, got k={} r={}", c.k(), c.r()),
        });
    }
    require_valid(c)?;
    let norm = normalize(c);
    if let Some(v) = norm.early_verdict {
        return finish("pit31", c, v, cfg);
    }
    let n = norm.circuit;
    if let Some(fail) = span_conditions(&n) {
        return finish("pit31", c, Verdict::nonzero(Certificate::FailedCondition(fail)), cfg);
    }
    let basis = linear_rows(&n);
    let dim = basis.rows();
    let (reduced, a) = reduce_to(&n, &basis);
    let mut v = expand_verdict(&reduced, cfg.budget);
    v.reduction = Some(a);
    if dim > 5 {
        v.diagnostics.push(ClaimViolation::SpanDimLeFive { dim });
    }
    finish("pit31", c, v.with_fact("span_dim", dim), cfg)
}
