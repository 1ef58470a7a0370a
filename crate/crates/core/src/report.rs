//! Line-oriented `key=value` run reports. Everything but `elapsed_ms` is a
//! function of the input bytes and the flags.

use sha2::{Digest, Sha256};

use crate::algebra::Poly;
use crate::verdict::{Certificate, FailedCondition, Verdict};

pub const TIMING_KEY: &str = "elapsed_ms";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
    elapsed_ms: Option<u128>,
}

pub fn input_digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

fn join_polys(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        let mut r = Report::default();
        r.push("command", command);
        r.push("input_sha256", input_digest(input));
        r
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_elapsed_ms(&mut self, ms: u128) {
        self.elapsed_ms = Some(ms);
    }

    /// Verdict, certificate detail, reduction shape, violated claims and
    /// facts, in that order.
    pub fn push_verdict(&mut self, v: &Verdict) {
        self.push("verdict", v.status);
        self.push_certificate(&v.certificate);
        if let Some(a) = &v.reduction {
            self.push("reduction", format!("{}x{}", a.rows(), a.cols()));
        }
        for d in &v.diagnostics {
            self.push("paper_claim_violated", d.name());
            self.push(&format!("observed.{}", d.name()), d.observed());
        }
        for (k, val) in &v.facts {
            self.push(k, val);
        }
    }

    pub fn push_certificate(&mut self, c: &Certificate) {
        self.push("certificate", c.kind());
        self.push("theory_certified", c.is_theory_certified());
        match c {
            Certificate::ExpansionEmpty => {}
            Certificate::NonzeroMonomial { exponents, coeff } => {
                let e: Vec<String> = exponents.iter().map(|e| e.to_string()).collect();
                self.push("witness_exponents", e.join(","));
                self.push("witness_coeff", coeff);
            }
            Certificate::FailedCondition(FailedCondition::LinearSpan { first, second, third_term }) => {
                self.push("condition", "linear_span");
                self.push("first", first);
                self.push("second", second);
                self.push("third_term", third_term + 1);
            }
            Certificate::FailedCondition(FailedCondition::RestrictionRank { linear, quadratic, rank }) => {
                self.push("condition", "restriction_rank");
                self.push("linear", linear);
                self.push("quadratic", quadratic);
                self.push("restricted_rank", rank);
            }
            Certificate::SgWitness { term, tuple, gens } => {
                let t: Vec<String> = tuple.iter().map(|j| (j + 1).to_string()).collect();
                self.push("witness", format!("({}; {})", term + 1, t.join(",")));
                self.push("gens", join_polys(gens));
            }
            Certificate::EarlyNormalization { shared, pair, lone } => {
                self.push("shared", shared);
                self.push("pair", format!("{},{}", pair.0 + 1, pair.1 + 1));
                self.push("lone", lone + 1);
            }
            Certificate::BudgetExceeded { budget } => self.push("budget", budget),
        }
    }

    /// The report without the timing line; equal for equal inputs.
    pub fn render_stable(&self) -> String {
        self.lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn render(&self) -> String {
        let mut out = self.render_stable();
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("{TIMING_KEY}={ms}\n"));
        }
        out
    }
}

/// Drops `elapsed_ms` lines from a rendered report.
pub fn strip_timing(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with(&format!("{TIMING_KEY}="))).map(|l| format!("{l}\n")).collect()
}
