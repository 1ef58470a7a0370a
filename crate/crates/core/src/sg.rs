//! The SG condition: every term lies in the ideal generated by any choice
//! of one factor from each other term.

use crate::algebra::Poly;
use crate::circuit::Circuit;
use crate::membership::{member_homogeneous, product_in_ideal, product_member, MembershipCertificate, MembershipError, ProductMode};

/// A failed instance: term `term` is not in the ideal generated by
/// `gens`, where `tuple[t]` picks a factor of the t-th other term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgWitness {
    /// 0-based.
    pub term: usize,
    /// 0-based factor indices, one per term other than `term`, in term order.
    pub tuple: Vec<usize>,
    pub gens: Vec<Poly>,
}

impl SgWitness {
    /// `term,tuple` in 1-based form, e.g. `(3; 1,1)`.
    pub fn display_one_based(&self) -> String {
        let t: Vec<String> = self.tuple.iter().map(|j| (j + 1).to_string()).collect();
        format!("({}; {})", self.term + 1, t.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgReport {
    pub is_sg: bool,
    pub witness: Option<SgWitness>,
    /// One per passing instance, filled only by [`sg_check_certified`].
    pub certificates: Vec<MembershipCertificate>,
    /// Membership instances decided.
    pub instances: usize,
    /// Subset-mode instances where no subset within the bound was a member
    /// but the whole product was; these count as passing.
    pub subset_misses: usize,
}

/// Cartesian product of `0..sizes[t]`, lexicographic.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out.into_iter().flat_map(|p| (0..s).map(move |j| [p.clone(), vec![j]].concat())).collect();
    }
    out
}

fn run(c: &Circuit, mode: ProductMode, certify: bool) -> Result<SgReport, MembershipError> {
    let mut report = SgReport { is_sg: true, witness: None, certificates: Vec::new(), instances: 0, subset_misses: 0 };
    for i in (0..c.k()).rev() {
        let others: Vec<usize> = (0..c.k()).filter(|&t| t != i).collect();
        let sizes: Vec<usize> = others.iter().map(|&t| c.terms[t].factors.len()).collect();
        let target = &c.terms[i].factors;
        for tuple in tuples(&sizes) {
            let gens: Vec<Poly> = others.iter().zip(&tuple).map(|(&t, &j)| c.terms[t].factors[j].clone()).collect();
            report.instances += 1;
            let ok = match (mode, certify) {
                (ProductMode::Direct, false) => product_in_ideal(target, &gens)?,
                (ProductMode::Direct, true) => {
                    let prod = c.terms[i].product(c.nvars);
                    match member_homogeneous(&prod, &gens)? {
                        Some(cert) => {
                            report.certificates.push(cert);
                            true
                        }
                        None => false,
                    }
                }
                (ProductMode::Subset(_), _) => match product_member(target, &gens, mode)? {
                    Some(ev) => {
                        if certify {
                            report.certificates.push(ev.certificate);
                        }
                        true
                    }
                    None if product_in_ideal(target, &gens)? => {
                        report.subset_misses += 1;
                        if certify {
                            let prod = c.terms[i].product(c.nvars);
                            report.certificates.extend(member_homogeneous(&prod, &gens)?);
                        }
                        true
                    }
                    None => false,
                },
            };
            if !ok {
                report.is_sg = false;
                report.witness = Some(SgWitness { term: i, tuple, gens });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks the SG condition, stopping at the first failure. Terms are
/// scanned last to first, tuples lexicographically within a term.
pub fn sg_check(c: &Circuit, mode: ProductMode) -> Result<SgReport, MembershipError> {
    run(c, mode, false)
}

/// As [`sg_check`], also returning a membership certificate for every
/// passing instance.
pub fn sg_check_certified(c: &Circuit, mode: ProductMode) -> Result<SgReport, MembershipError> {
    run(c, mode, true)
}
