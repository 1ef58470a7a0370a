//! Brute-force expansion: the ground truth every pipeline is checked
//! against.

use crate::algebra::Poly;
use crate::circuit::Circuit;
use crate::verdict::{Certificate, Verdict};

/// Full expansion `Σ sᵢ ∏ l_ij`, or `Err(budget)` as soon as an
/// intermediate product or partial sum holds more than `budget` monomials.
pub fn expand_circuit(c: &Circuit, budget: usize) -> Result<Poly, usize> {
    let mut sum = Poly::zero(c.nvars);
    for t in &c.terms {
        let mut p = Poly::constant(c.nvars, t.scale.clone());
        for f in &t.factors {
            p = &p * f;
            if p.num_terms() > budget {
                return Err(budget);
            }
        }
        sum.add_assign_ref(&p);
        if sum.num_terms() > budget {
            return Err(budget);
        }
    }
    Ok(sum)
}

/// ZERO on an empty expansion, otherwise NONZERO with the graded-lex
/// leading monomial as witness.
pub fn oracle_expand(c: &Circuit, budget: usize) -> Verdict {
    match expand_circuit(c, budget) {
        Err(b) => Verdict::budget(b),
        Ok(p) => match p.leading_term() {
            None => Verdict::zero(),
            Some((m, coeff)) => {
                Verdict::nonzero(Certificate::NonzeroMonomial { exponents: m.exponents().to_vec(), coeff: coeff.clone() })
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldElem;
    use crate::circuit::parse_circuit;
    use crate::verdict::Status;

    #[test]
    fn counterexample_witness() {
        let c = parse_circuit("circuit vars=2\nterm\nlin: 1, 0\nterm\nlin: 0, 1\nterm\nlin: 1, 2\n").unwrap();
        let v = oracle_expand(&c, 100);
        assert_eq!(v.status, Status::Nonzero);
        assert_eq!(v.certificate, Certificate::NonzeroMonomial { exponents: vec![1, 0], coeff: FieldElem::from_int(2) });
    }

    #[test]
    fn cancellations() {
        let squares = "circuit vars=2\nterm\nlin: 1, 1\nlin: 1, -1\nterm scale=-1\nlin: 1, 0\nlin: 1, 0\nterm\nlin: 0, 1\nlin: 0, 1\n";
        assert_eq!(oracle_expand(&parse_circuit(squares).unwrap(), 100).status, Status::Zero);
        let gap = "circuit vars=4\nterm\nlin: 1, 0, 0, 0\nlin: 0, 1, 0, 0\nterm\nlin: 0, 0, 1, 0\nlin: 0, 0, 0, 1\nterm scale=-1\nquad: 0, 1, 0, 0, 0, 0, 0, 0, 1, 0\n";
        assert_eq!(oracle_expand(&parse_circuit(gap).unwrap(), 100).status, Status::Zero);
    }

    #[test]
    fn budget_is_a_resource_outcome() {
        let c = parse_circuit("circuit vars=3\nterm\nlin: 1, 1, 1\nlin: 1, 1, 1\nlin: 1, 1, 1\n").unwrap();
        let v = oracle_expand(&c, 5);
        assert_eq!(v.status, Status::Indeterminate);
        assert_eq!(oracle_expand(&c, 10).status, Status::Nonzero);
    }
}
