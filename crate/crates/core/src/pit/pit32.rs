//! Three terms: two products of linear forms and one holding at least one
//! irreducible quadratic.
//!
//! If `C = 0` and `l | F_1`, then `F_3` restricted to `l = 0` equals
//! `-F_2` there, a product of linear forms; so each quadratic of `F_3`
//! restricts to Gram rank at most 2. Failure of that proves `C ≠ 0`.
//! Further bounds (quadratic rank exactly 3, linear span at most 3) are
//! only recorded: `xy + zw - (xy+zw)` is zero and violates both.

use crate::circuit::{normalize, Circuit};
use crate::quadratic::{quad_rank, restricted_rank};
use crate::verdict::{Certificate, ClaimViolation, FailedCondition, Verdict};

use super::essential::{essential_space, reduce_to};
use super::pit31::{linear_rows, pit31};
use super::{expand_verdict, finish, require_valid, PipelineConfig, PipelineError};

pub fn pit32(c: &Circuit, cfg: &PipelineConfig) -> Result<Verdict, PipelineError> {
    if c.k() != 3 || c.r() > 2 {
        return Err(PipelineError::WrongShape {
            pipeline: "pit32",
            reason: format!("needs k=3 and factors of degree at most 2, got k={} r={}", c.k(), c.r()),
        });
    }
    require_valid(c)?;
    let norm = normalize(c);
    if let Some(v) = norm.early_verdict {
        return finish("pit32", c, v, cfg);
    }
    let mut n = norm.circuit;
    let quad_terms: Vec<usize> = (0..3).filter(|&i| !n.terms[i].is_all_linear()).collect();
    match quad_terms[..] {
        [] => return pit31(&n, cfg).map(|v| v.with_fact("delegated_from", "pit32")),
        [q] => {
            let t = n.terms.remove(q);
            n.terms.push(t);
        }
        _ => {
            return Err(PipelineError::WrongShape {
                pipeline: "pit32",
                reason: format!("{} terms hold quadratic factors", quad_terms.len()),
            })
        }
    }
    let quads: Vec<_> = n.terms[2].factors.iter().filter(|f| f.degree() == Some(2)).cloned().collect();
    for l in n.terms[0].factors.iter().chain(&n.terms[1].factors) {
        for q in &quads {
            let rank = restricted_rank(q, l).expect("linear and quadratic");
            if rank > 2 {
                let fail = FailedCondition::RestrictionRank { linear: l.clone(), quadratic: q.clone(), rank };
                return finish("pit32", c, Verdict::nonzero(Certificate::FailedCondition(fail)), cfg);
            }
        }
    }
    let q_rank = quad_rank(&quads[0]).expect("quadratic");
    let lin_only = crate::circuit::Circuit::new(n.nvars, n.terms[..2].to_vec());
    let lin_dim = linear_rows(&lin_only).rows();
    let basis = essential_space(&n)?;
    let dim = basis.rows();
    let (reduced, a) = reduce_to(&n, &basis);
    let mut v = expand_verdict(&reduced, cfg.budget);
    v.reduction = Some(a);
    if q_rank != 3 {
        v.diagnostics.push(ClaimViolation::QuadraticRankEqThree { rank: q_rank });
    }
    if lin_dim > 3 {
        v.diagnostics.push(ClaimViolation::LinearSpanDimLeThree { dim: lin_dim });
    }
    let v = v.with_fact("quad_rank", q_rank).with_fact("linear_span_dim", lin_dim).with_fact("essential_dim", dim);
    finish("pit32", c, v, cfg)
}
