//! Seeded batches of circuits run through the pipelines and the expansion
//! oracle, with per-entry reports and a summary table.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::circuit::generate::{gen_perturbed_zero, gen_random_circuit, gen_zero_circuit, RandomParams, ZeroParams};
use crate::circuit::{normalize, serialize_circuit, Circuit};
use crate::membership::ProductMode;
use crate::pit::{detect_shape, oracle_expand, pit_auto, PipelineConfig, Shape};
use crate::report::Report;
use crate::sg::{sg_check, sg_check_certified};
use crate::verdict::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Zero,
    Perturbed,
    Random,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Zero => "zero",
            Origin::Perturbed => "perturbed",
            Origin::Random => "random",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: usize,
    pub seed: u64,
    pub origin: Origin,
    /// Template name for zero entries, parameters otherwise.
    pub label: String,
    pub circuit: Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub seed: u64,
    pub zero: usize,
    pub perturbed: usize,
    pub random: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { seed: 0, zero: 200, perturbed: 100, random: 250 }
    }
}

/// Zero circuits over 2..=6 variables, their perturbations, then random
/// circuits with `k ≤ 3`, `r ≤ 2`, degree at most 6 and `n ≤ 6`.
pub fn build_corpus(p: &CorpusParams) -> Vec<CorpusEntry> {
    let mut out = Vec::with_capacity(p.zero + p.perturbed + p.random);
    for i in 0..p.zero {
        let seed = p.seed.wrapping_add(i as u64);
        let params = ZeroParams { nvars: 2 + i % 5, ..Default::default() };
        let z = gen_zero_circuit(seed, &params);
        out.push(CorpusEntry { id: out.len(), seed, origin: Origin::Zero, label: z.template.name().into(), circuit: z.circuit });
    }
    for i in 0..p.perturbed {
        let seed = p.seed.wrapping_add(10_000 + i as u64);
        let params = ZeroParams { nvars: 2 + i % 5, ..Default::default() };
        out.push(CorpusEntry {
            id: out.len(),
            seed,
            origin: Origin::Perturbed,
            label: format!("n={}", params.nvars),
            circuit: gen_perturbed_zero(seed, &params),
        });
    }
    for i in 0..p.random {
        let seed = p.seed.wrapping_add(20_000 + i as u64);
        let params = RandomParams { nvars: 2 + i % 5, k: 1 + i % 3, r: 1 + ((i / 3) % 2) as u32, degree: 1 + ((i / 6) % 6) as u32 };
        out.push(CorpusEntry {
            id: out.len(),
            seed,
            origin: Origin::Random,
            label: format!("n={} k={} r={} d={}", params.nvars, params.k, params.r, params.degree),
            circuit: gen_random_circuit(seed, &params),
        });
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Collect and check a membership certificate for every passing SG
    /// instance.
    pub certify: bool,
}

#[derive(Clone, Debug)]
pub struct EntryResult {
    pub id: usize,
    pub origin: Origin,
    pub shape: Shape,
    /// `Err` holds the pipeline error message.
    pub status: Result<Status, String>,
    pub oracle: Status,
    pub theory_certified: bool,
    /// SG condition on the normalized circuit; `None` when normalization
    /// already decided it.
    pub sg: Option<bool>,
    pub certificates: usize,
    pub bad_certificates: usize,
    pub report: Report,
}

impl EntryResult {
    /// A decided pipeline verdict that the oracle contradicts, or a
    /// pipeline error.
    pub fn is_failure(&self) -> bool {
        match self.status {
            Err(_) => true,
            Ok(Status::Indeterminate) => false,
            Ok(s) => self.oracle != Status::Indeterminate && s != self.oracle,
        }
    }
}

pub fn run_entry(e: &CorpusEntry, cfg: &PipelineConfig, opts: RunOptions) -> EntryResult {
    let start = Instant::now();
    let text = serialize_circuit(&e.circuit);
    let mut report = Report::new("corpus-entry", text.as_bytes());
    report.push("id", e.id);
    report.push("seed", e.seed);
    report.push("origin", e.origin.as_str());
    report.push("label", &e.label);
    let shape = detect_shape(&e.circuit);
    report.push("shape", shape.as_str());
    let inner = PipelineConfig { strict_oracle: false, ..cfg.clone() };
    let (status, theory_certified) = match pit_auto(&e.circuit, &inner) {
        Ok(v) => {
            report.push_verdict(&v);
            (Ok(v.status), v.certificate.is_theory_certified())
        }
        Err(err) => {
            report.push("error", &err);
            (Err(err.to_string()), false)
        }
    };
    let oracle = oracle_expand(&e.circuit, cfg.budget).status;
    report.push("oracle", oracle);
    let norm = normalize(&e.circuit);
    let (mut certificates, mut bad_certificates) = (0, 0);
    let sg = if norm.early_verdict.is_some() {
        None
    } else {
        let r = if opts.certify { sg_check_certified(&norm.circuit, ProductMode::Direct) } else { sg_check(&norm.circuit, ProductMode::Direct) };
        match r {
            Ok(r) => {
                certificates = r.certificates.len();
                bad_certificates = r.certificates.iter().filter(|c| !c.verify()).count();
                Some(r.is_sg)
            }
            Err(err) => {
                report.push("sg_error", err);
                None
            }
        }
    };
    report.push("sg", sg.map_or("n/a".to_string(), |b| b.to_string()));
    if opts.certify {
        report.push("certificates", certificates);
        report.push("bad_certificates", bad_certificates);
    }
    let result = EntryResult { id: e.id, origin: e.origin, shape, status, oracle, theory_certified, sg, certificates, bad_certificates, report };
    let mut result = result;
    result.report.push("agree", !result.is_failure());
    result.report.set_elapsed_ms(start.elapsed().as_millis());
    result
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapeRow {
    pub total: usize,
    pub zero: usize,
    pub nonzero: usize,
    pub indeterminate: usize,
    pub theory_certified: usize,
    pub failures: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub results: Vec<EntryResult>,
}

impl CorpusRun {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.is_failure()).count()
    }

    pub fn row(&self, shape: Shape) -> ShapeRow {
        let mut row = ShapeRow::default();
        for r in self.results.iter().filter(|r| r.shape == shape) {
            row.total += 1;
            match r.status {
                Ok(Status::Zero) => row.zero += 1,
                Ok(Status::Nonzero) => row.nonzero += 1,
                Ok(Status::Indeterminate) => row.indeterminate += 1,
                Err(_) => {}
            }
            row.theory_certified += r.theory_certified as usize;
            row.failures += r.is_failure() as usize;
        }
        row
    }

    /// Zero circuits whose normalized form fails the SG condition.
    pub fn zero_not_sg(&self) -> usize {
        self.results.iter().filter(|r| r.oracle == Status::Zero && r.sg == Some(false)).count()
    }

    /// Non-SG circuits the oracle did not confirm nonzero.
    pub fn non_sg_unconfirmed(&self) -> usize {
        self.results.iter().filter(|r| r.sg == Some(false) && r.oracle != Status::Nonzero).count()
    }

    /// All entry reports, in id order, without timing lines.
    pub fn stable_reports(&self) -> String {
        self.results.iter().map(|r| r.report.render_stable() + "\n").collect()
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<8} {:>6} {:>6} {:>8} {:>6} {:>7} {:>8}", "shape", "total", "zero", "nonzero", "indet", "theory", "failures").unwrap();
        for shape in [Shape::ThreeOne, Shape::ThreeTwoSubclass, Shape::General] {
            let r = self.row(shape);
            writeln!(
                out,
                "{:<8} {:>6} {:>6} {:>8} {:>6} {:>7} {:>8}",
                shape.as_str(),
                r.total,
                r.zero,
                r.nonzero,
                r.indeterminate,
                r.theory_certified,
                r.failures
            )
            .unwrap();
        }
        writeln!(out, "entries={} failures={} zero_not_sg={} non_sg_unconfirmed={}", self.results.len(), self.failures(), self.zero_not_sg(), self.non_sg_unconfirmed()).unwrap();
        out
    }
}

/// Runs entries in parallel; results come back in entry order.
pub fn run_corpus(entries: &[CorpusEntry], cfg: &PipelineConfig, opts: RunOptions) -> CorpusRun {
    CorpusRun { results: entries.par_iter().map(|e| run_entry(e, cfg, opts)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_is_green_and_reproducible() {
        let p = CorpusParams { seed: 3, zero: 12, perturbed: 6, random: 18 };
        let entries = build_corpus(&p);
        assert_eq!(entries.len(), 36);
        let cfg = PipelineConfig::default();
        let a = run_corpus(&entries, &cfg, RunOptions::default());
        assert_eq!(a.failures(), 0, "{}", a.summary_table());
        assert_eq!(a.zero_not_sg(), 0);
        assert_eq!(a.non_sg_unconfirmed(), 0);
        let b = run_corpus(&build_corpus(&p), &cfg, RunOptions::default());
        assert_eq!(a.stable_reports(), b.stable_reports());
    }

    #[test]
    fn zero_entries_are_zero() {
        for e in build_corpus(&CorpusParams { seed: 0, zero: 10, perturbed: 5, random: 0 }) {
            let want = if e.origin == Origin::Zero { Status::Zero } else { Status::Nonzero };
            assert_eq!(oracle_expand(&e.circuit, 1_000_000).status, want);
        }
    }
}
