//! One PASS/FAIL line per acceptance criterion. Runs with its own `main`
//! so the lines print on every `cargo test`; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pit4_core::algebra::{FieldElem, Monomial, Poly};
use pit4_core::circuit::{normalize, parse_circuit, Circuit};
use pit4_core::corpus::{build_corpus, run_corpus, CorpusParams, CorpusRun, RunOptions};
use pit4_core::incidence::{
    find_line_two_sets, find_ordinary_line, hesse_points, random_configuration, span_dim, RandomConfigParams,
};
use pit4_core::membership::{linear_factor_member, ProductMode};
use pit4_core::pit::{oracle_expand, pit31, pit32, PipelineConfig};
use pit4_core::sg::sg_check_certified;
use pit4_core::trdeg::{dependence_oracle, trdeg};
use pit4_core::verdict::{Certificate, Status};

const COUNTEREXAMPLE: &str = "circuit vars=2\nterm\nlin: 1, 0\nterm\nlin: 0, 1\nterm\nlin: 1, 2\n";
const GAP: &str = "circuit vars=4\nterm\nlin: 1, 0, 0, 0\nlin: 0, 1, 0, 0\nterm\nlin: 0, 0, 1, 0\nlin: 0, 0, 0, 1\nterm scale=-1\nquad: 0, 1, 0, 0, 0, 0, 0, 0, 1, 0\n";
const QUAD_ZERO: &str = "circuit vars=3\nterm\nlin: 1, 0, 0\nlin: 1, 0, 0\nterm\nlin: 0, 1, 0\nlin: 0, 0, 1\nterm scale=-1\nquad: 1, 0, 0, 0, 1, 0\n";

const SWEEP_LIMIT: Duration = Duration::from_secs(300);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn strict() -> PipelineConfig {
    PipelineConfig { strict_oracle: true, ..Default::default() }
}

fn within_bounds(c: &Circuit) -> bool {
    c.nvars <= 6 && c.degree() <= 8 && c.k() <= 3 && c.r() <= 2
}

fn criterion_1(run: &CorpusRun, circuits: &[Circuit], zeros: usize, elapsed: Duration) -> Outcome {
    let in_bounds = circuits.iter().all(within_bounds);
    let undecided = run.results.iter().filter(|r| r.status != Ok(Status::Zero) && r.status != Ok(Status::Nonzero)).count();
    let pass = circuits.len() >= 500 && zeros >= 100 && in_bounds && run.failures() == 0 && undecided == 0 && elapsed <= SWEEP_LIMIT;
    outcome(
        pass,
        format!(
            "{} circuits ({} zero-generated, bounds ok: {}), {} mismatches, {} undecided, {:.1} s",
            circuits.len(),
            zeros,
            in_bounds,
            run.failures(),
            undecided,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let c = parse_circuit(COUNTEREXAMPLE).unwrap();
    let lin: Vec<&Poly> = c.terms.iter().map(|t| &t.factors[0]).collect();
    let conditions = [(0, 1, 2), (0, 2, 1), (1, 2, 0)].iter().all(|&(a, b, t)| linear_factor_member(lin[t], lin[a], lin[b]));
    let v = pit31(&c, &strict()).unwrap();
    let witness = matches!(&v.certificate, Certificate::NonzeroMonomial { exponents, coeff } if !coeff.is_zero() && exponents.iter().sum::<u32>() == 1);
    let pass = conditions && v.status == Status::Nonzero && witness && v.fact("span_dim") == Some("2");
    outcome(pass, format!("conditions hold: {conditions}, span_dim={}, verdict={}, certificate={}", v.fact("span_dim").unwrap_or("?"), v.status, v.certificate.kind()))
}

fn criterion_3() -> Outcome {
    let v = pit32(&parse_circuit(GAP).unwrap(), &strict()).unwrap();
    let pass = v.status == Status::Zero && v.has_violation("quadratic_rank_eq_3") && v.has_violation("linear_span_dim_le_3");
    let names: Vec<String> = v.diagnostics.iter().map(|d| format!("{}({})", d.name(), d.observed())).collect();
    outcome(pass, format!("verdict={}, violations=[{}]", v.status, names.join(", ")))
}

fn criterion_4() -> Outcome {
    let v = pit32(&parse_circuit(QUAD_ZERO).unwrap(), &strict()).unwrap();
    let pass = v.status == Status::Zero && v.diagnostics.is_empty() && v.fact("quad_rank") == Some("3") && v.fact("linear_span_dim") == Some("3");
    outcome(
        pass,
        format!(
            "verdict={}, quad_rank={}, linear_span_dim={}, violations={}",
            v.status,
            v.fact("quad_rank").unwrap_or("?"),
            v.fact("linear_span_dim").unwrap_or("?"),
            v.diagnostics.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let h = hesse_points();
    let none = find_ordinary_line(&h).is_none();
    let every_deletion = (0..h.len()).all(|i| {
        let mut fewer = h.clone();
        fewer.remove(i);
        find_ordinary_line(&fewer).is_some()
    });
    let t = start.elapsed();
    outcome(none && every_deletion && t < Duration::from_secs(1), format!("full: none={none}, every deletion finds one: {every_deletion}, {} ms", t.as_millis()))
}

fn criterion_6() -> Outcome {
    let (mut checked, mut failures, mut seed) = (0, Vec::new(), 0u64);
    while checked < 200 && seed < 100_000 {
        let params = RandomConfigParams { nvars: 6 + (seed % 3) as usize, sets: 2 + (seed % 3) as usize, max_per_set: 4, coord_bound: 1 };
        if let Some(cfg) = random_configuration(seed, &params) {
            if span_dim(&cfg).vector >= 6 {
                checked += 1;
                if find_line_two_sets(&cfg).is_none() {
                    failures.push(seed);
                }
            }
        }
        seed += 1;
    }
    outcome(checked == 200 && failures.is_empty(), format!("{checked} configurations, counterexample seeds: {failures:?}"))
}

fn random_poly(rng: &mut impl Rng, n: usize, deg: u32) -> Poly {
    loop {
        let terms = (1..=deg).flat_map(|d| Monomial::all_of_degree(n, d)).filter_map(|m| {
            let c: i64 = if rng.gen_bool(0.4) { rng.gen_range(-2..=2) } else { 0 };
            (c != 0).then(|| (m, FieldElem::from_int(c)))
        });
        let p = Poly::from_terms(n, terms.collect::<Vec<_>>());
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

/// A polynomial in the earlier ones of degree at most 3, or `None`.
fn dependent_on(rng: &mut impl Rng, ps: &[Poly]) -> Option<Poly> {
    let a = &ps[rng.gen_range(0..ps.len())];
    let b = &ps[rng.gen_range(0..ps.len())];
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    match rng.gen_range(0..3) {
        0 if da + db <= 3 => Some(a * b),
        1 if da == db && a != b => Some(&a.scale(&FieldElem::from_int(2)) - b),
        2 if da == 1 => Some(a.pow(3)),
        _ => None,
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut mismatches, mut dependent) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4usize);
        let mut ps: Vec<Poly> = Vec::new();
        while ps.len() < m {
            // past n base polynomials only constructed relations are added,
            // so every dependent set has an annihilator of degree at most 3
            let forced = ps.len() >= n;
            let next = if forced || (!ps.is_empty() && rng.gen_bool(0.4)) {
                (0..20).find_map(|_| dependent_on(&mut rng, &ps)).or_else(|| Some(ps[0].scale(&FieldElem::from_int(3))))
            } else {
                None
            };
            let deg = rng.gen_range(1..=3);
            ps.push(next.unwrap_or_else(|| random_poly(&mut rng, n, deg)));
        }
        let jac_dependent = trdeg(&ps).value < ps.len();
        let ann = dependence_oracle(&ps, 3).is_some();
        dependent += jac_dependent as usize;
        mismatches += (jac_dependent != ann) as usize;
    }
    outcome(mismatches == 0, format!("100 sets ({dependent} dependent per Jacobian), {mismatches} mismatches"))
}

fn criterion_8(run: &CorpusRun) -> Outcome {
    let mut total = run.results.iter().map(|r| r.certificates).sum::<usize>();
    let mut bad = run.results.iter().map(|r| r.bad_certificates).sum::<usize>();
    for text in [COUNTEREXAMPLE, GAP, QUAD_ZERO] {
        let norm = normalize(&parse_circuit(text).unwrap());
        let r = sg_check_certified(&norm.circuit, ProductMode::Direct).unwrap();
        total += r.certificates.len();
        bad += r.certificates.iter().filter(|c| !c.verify()).count();
    }
    let theory = run.results.iter().filter(|r| r.theory_certified && r.status == Ok(Status::Nonzero)).count();
    let unconfirmed = run.results.iter().filter(|r| r.theory_certified && r.oracle != Status::Nonzero).count();
    let c = parse_circuit(COUNTEREXAMPLE).unwrap();
    let fixture_nonzero = oracle_expand(&c, 1000).status == Status::Nonzero;
    outcome(
        bad == 0 && total > 0 && unconfirmed == 0 && fixture_nonzero,
        format!("{total} membership certificates, {bad} bad; {theory} theory-certified NONZERO, {unconfirmed} unconfirmed"),
    )
}

fn criterion_9(run: &CorpusRun) -> Outcome {
    let zero = run.results.iter().filter(|r| r.oracle == Status::Zero && r.sg.is_some()).count();
    let non_sg = run.results.iter().filter(|r| r.sg == Some(false)).count();
    outcome(
        run.zero_not_sg() == 0 && run.non_sg_unconfirmed() == 0,
        format!("{zero} zero circuits checked, {} not SG; {non_sg} non-SG circuits, {} not confirmed NONZERO", run.zero_not_sg(), run.non_sg_unconfirmed()),
    )
}

fn criterion_10(first: &CorpusRun, params: &CorpusParams, cfg: &PipelineConfig, opts: RunOptions) -> Outcome {
    let again = run_corpus(&build_corpus(params), cfg, opts);
    let (a, b) = (first.stable_reports(), again.stable_reports());
    outcome(a == b, format!("{} report bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let params = CorpusParams::default();
    let cfg = PipelineConfig::default();
    let opts = RunOptions { certify: true };
    let entries = build_corpus(&params);
    let start = Instant::now();
    let run = run_corpus(&entries, &cfg, opts);
    let elapsed = start.elapsed();
    let circuits: Vec<Circuit> = entries.iter().map(|e| e.circuit.clone()).collect();

    let results = [
        ("oracle soundness sweep", criterion_1(&run, &circuits, params.zero, elapsed)),
        ("three-term linear counterexample", criterion_2()),
        ("quadratic gap fixture", criterion_3()),
        ("quadratic zero fixture", criterion_4()),
        ("Hesse configuration", criterion_5()),
        ("colored configurations", criterion_6()),
        ("trdeg cross-validation", criterion_7()),
        ("certificate integrity", criterion_8(&run)),
        ("SG necessity", criterion_9(&run)),
        ("determinism", criterion_10(&run, &params, &cfg, opts)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        all &= o.pass;
    }
    print!("{}", run.summary_table());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
