use std::fs;
use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use pit4_core::algebra::QuadExt;
use pit4_core::circuit::generate::{gen_perturbed_zero, gen_random_circuit, gen_zero_circuit, RandomParams, ZeroParams, ZeroTemplate};
use pit4_core::circuit::text::{parse_member_query, parse_poly_list};
use pit4_core::circuit::{normalize, parse_circuit_with, serialize_circuit, validate, Circuit, ParseError, Severity};
use pit4_core::corpus::{build_corpus, run_corpus, CorpusParams, RunOptions};
use pit4_core::incidence::{
    circuit_to_configuration, find_line_two_sets, find_ordinary_line, parse_configuration, serialize_configuration, span_dim,
    Configuration, IncidenceError,
};
use pit4_core::membership::{product_member, MembershipError};
use pit4_core::pit::{oracle_expand, pit31, pit32, pit_auto, pit_general, PipelineConfig, PipelineError, DEFAULT_BUDGET};
use pit4_core::quadratic::{is_irreducible_quadratic, quad_rank};
use pit4_core::report::Report;
use pit4_core::sg::sg_check;
use pit4_core::trdeg::{faithful_reduce, trdeg, TrdegError, DEFAULT_GRID_BOUND};
use pit4_core::verdict::{Status, Verdict};

use crate::{Cli, Command, Flags, GenKind, IncidenceOp, ShapeArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Resource(String),
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Zero => 0,
        Status::Nonzero => 1,
        Status::Indeterminate => 3,
    }
}

struct Ctx<'a> {
    flags: &'a Flags,
    ext: QuadExt,
    start: Instant,
}

impl Ctx<'_> {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            f_max: self.flags.fmax,
            grid_bound: DEFAULT_GRID_BOUND,
            budget: self.flags.budget.unwrap_or(DEFAULT_BUDGET),
            strict_oracle: self.flags.strict_oracle,
        }
    }

    fn read(&self, path: &Path) -> Result<String, CliError> {
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
    }

    fn circuit(&self, path: &Path) -> Result<(String, Circuit), CliError> {
        let text = self.read(path)?;
        let c = parse_circuit_with(&text, self.ext).map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
        Ok((text, c))
    }

    fn finish(&self, mut r: Report) -> String {
        r.set_elapsed_ms(self.start.elapsed().as_millis());
        r.render()
    }
}

fn parse_err(path: &Path, source: ParseError) -> CliError {
    CliError::Parse { path: path.display().to_string(), source }
}

fn incidence_err(path: &Path, e: IncidenceError) -> CliError {
    match e {
        IncidenceError::Parse(source) => parse_err(path, source),
        other => CliError::Usage(format!("{}: {other}", path.display())),
    }
}

fn membership_err(e: MembershipError) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let flags = &cli.flags;
    if flags.fmax == Some(0) {
        return Err(CliError::Usage("--fmax must be at least 1".into()));
    }
    let ext = match flags.ext {
        Some(d) => QuadExt::new(d).map_err(|e| CliError::Usage(format!("--ext: {e}")))?,
        None => QuadExt::default(),
    };
    let ctx = Ctx { flags, ext, start: Instant::now() };
    match &cli.command {
        Command::Pit { file, shape } => verdict_command(&ctx, "pit", file, |c, cfg| match shape {
            ShapeArg::Auto => pit_auto(c, cfg),
            ShapeArg::Pit31 => pit31(c, cfg),
            ShapeArg::Pit32 => pit32(c, cfg),
            ShapeArg::General => pit_general(c, cfg),
        }),
        Command::Pit31 { file } => verdict_command(&ctx, "pit31", file, pit31),
        Command::Pit32 { file } => verdict_command(&ctx, "pit32", file, pit32),
        Command::Oracle { file } => verdict_command(&ctx, "oracle", file, |c, cfg| Ok(oracle_expand(c, cfg.budget))),
        Command::Sgcheck { file } => cmd_sgcheck(&ctx, file),
        Command::Trdeg { file } => cmd_trdeg(&ctx, file),
        Command::Member { file } => cmd_member(&ctx, file),
        Command::Quadrank { file } => cmd_quadrank(&ctx, file),
        Command::Incidence { op } => cmd_incidence(&ctx, op),
        Command::Gen { kind, nvars, k, r, degree, template, out } => {
            let text = cmd_gen(&ctx, *kind, *nvars, *k, *r, *degree, template.as_deref())?;
            match out {
                Some(path) => {
                    fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                    Ok(ok(String::new()))
                }
                None => Ok(ok(text)),
            }
        }
        Command::Corpus { zero, perturbed, random, reports, certify } => {
            let params = CorpusParams { seed: flags.seed.unwrap_or(0), zero: *zero, perturbed: *perturbed, random: *random };
            let run = run_corpus(&build_corpus(&params), &ctx.config(), RunOptions { certify: *certify });
            if let Some(path) = reports {
                let all: String = run.results.iter().map(|r| r.report.render() + "\n").collect();
                fs::write(path, all).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            let code = if run.failures() == 0 && run.zero_not_sg() == 0 && run.non_sg_unconfirmed() == 0 { 0 } else { 1 };
            Ok(Output { text: run.summary_table(), code })
        }
        Command::Homogenize { file } => {
            let (_, c) = ctx.circuit(file)?;
            Ok(ok(serialize_circuit(&c.homogenize())))
        }
    }
}

fn verdict_command(
    ctx: &Ctx,
    name: &str,
    file: &Path,
    pipeline: impl Fn(&Circuit, &PipelineConfig) -> Result<Verdict, PipelineError>,
) -> Result<Output, CliError> {
    let (text, c) = ctx.circuit(file)?;
    let mut r = Report::new(name, text.as_bytes());
    for issue in validate(&c).iter().filter(|i| i.severity == Severity::Notice) {
        r.push("notice", issue);
    }
    match pipeline(&c, &ctx.config()) {
        Ok(v) => {
            r.push_verdict(&v);
            Ok(Output { text: ctx.finish(r), code: status_code(v.status) })
        }
        Err(e @ PipelineError::OracleMismatch { .. }) => {
            r.push("verdict", Status::Indeterminate);
            r.push("error", e);
            Ok(Output { text: ctx.finish(r), code: 3 })
        }
        Err(e @ PipelineError::Trdeg(TrdegError::GridExhausted { .. })) => Err(CliError::Resource(e.to_string())),
        Err(e) => Err(CliError::Usage(format!("{}: {e}", file.display()))),
    }
}

fn cmd_sgcheck(ctx: &Ctx, file: &Path) -> Result<Output, CliError> {
    let (text, c) = ctx.circuit(file)?;
    let mut r = Report::new("sgcheck", text.as_bytes());
    let norm = normalize(&c);
    if let Some(v) = norm.early_verdict {
        r.push("sg", "n/a");
        r.push("normalization", "decided");
        r.push_verdict(&v);
        return Ok(ok(ctx.finish(r)));
    }
    let report = sg_check(&norm.circuit, ctx.config().mode()).map_err(membership_err)?;
    match &report.witness {
        Some(w) => {
            r.push("sg", format!("false witness={}", w.display_one_based()));
            r.push("gens", w.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; "));
        }
        None => r.push("sg", "true"),
    }
    r.push("instances", report.instances);
    r.push("subset_misses", report.subset_misses);
    Ok(ok(ctx.finish(r)))
}

fn cmd_trdeg(ctx: &Ctx, file: &Path) -> Result<Output, CliError> {
    let text = ctx.read(file)?;
    let list = parse_poly_list(&text, ctx.ext).map_err(|e| parse_err(file, e))?;
    let mut r = Report::new("trdeg", text.as_bytes());
    let t = trdeg(&list.polys);
    r.push("trdeg", t.value);
    r.push("basis", t.basis.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
    let map = faithful_reduce(&list.polys, t.value, DEFAULT_GRID_BOUND).map_err(|e| CliError::Resource(e.to_string()))?;
    r.push("faithful_grid", map.grid);
    for (i, row) in map.matrix.to_rows().iter().enumerate() {
        r.push(&format!("map_row.{}", i + 1), row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
    }
    Ok(ok(ctx.finish(r)))
}

fn cmd_member(ctx: &Ctx, file: &Path) -> Result<Output, CliError> {
    let text = ctx.read(file)?;
    let q = parse_member_query(&text, ctx.ext).map_err(|e| parse_err(file, e))?;
    let mut r = Report::new("member", text.as_bytes());
    match product_member(&q.target, &q.gens, ctx.config().mode()).map_err(membership_err)? {
        None => r.push("member", false),
        Some(ev) => {
            r.push("member", true);
            if let Some(s) = &ev.subset {
                r.push("subset", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
            }
            for (i, m) in ev.certificate.multipliers.iter().enumerate() {
                r.push(&format!("multiplier.{}", i + 1), m);
            }
            r.push("verified", ev.certificate.verify());
        }
    }
    Ok(ok(ctx.finish(r)))
}

fn cmd_quadrank(ctx: &Ctx, file: &Path) -> Result<Output, CliError> {
    let text = ctx.read(file)?;
    let list = parse_poly_list(&text, ctx.ext).map_err(|e| parse_err(file, e))?;
    let mut r = Report::new("quadrank", text.as_bytes());
    for (i, p) in list.polys.iter().enumerate() {
        let rank = quad_rank(p).map_err(|e| CliError::Usage(format!("polynomial {}: {e}", i + 1)))?;
        r.push(&format!("rank.{}", i + 1), rank);
        r.push(&format!("irreducible.{}", i + 1), is_irreducible_quadratic(p).expect("checked quadratic"));
    }
    Ok(ok(ctx.finish(r)))
}

fn configuration(ctx: &Ctx, file: &Path) -> Result<(String, Configuration), CliError> {
    let text = ctx.read(file)?;
    let cfg = parse_configuration(&text, ctx.ext).map_err(|e| incidence_err(file, e))?;
    Ok((text, cfg))
}

fn cmd_incidence(ctx: &Ctx, op: &IncidenceOp) -> Result<Output, CliError> {
    match op {
        IncidenceOp::FindTwoSets { file } => {
            let (text, cfg) = configuration(ctx, file)?;
            if cfg.sets().len() < 2 {
                return Err(CliError::Usage(format!("{}: needs at least two sets", file.display())));
            }
            let mut r = Report::new("incidence find-two-sets", text.as_bytes());
            match find_line_two_sets(&cfg) {
                None => r.push("found", "none"),
                Some(l) => {
                    r.push("found", "line");
                    r.push("p", &l.p);
                    r.push("q", &l.q);
                    r.push("sets", format!("{},{}", cfg.set_name(l.sets.0), cfg.set_name(l.sets.1)));
                    for (s, p) in &l.points {
                        r.push("on_line", format!("{} {p}", cfg.set_name(*s)));
                    }
                }
            }
            Ok(ok(ctx.finish(r)))
        }
        IncidenceOp::FindOrdinary { file } => {
            let (text, cfg) = configuration(ctx, file)?;
            let mut r = Report::new("incidence find-ordinary", text.as_bytes());
            match find_ordinary_line(&cfg.all_points()) {
                None => r.push("found", "none"),
                Some((p, q)) => {
                    r.push("found", "line");
                    r.push("p", p);
                    r.push("q", q);
                }
            }
            Ok(ok(ctx.finish(r)))
        }
        IncidenceOp::Span { file } => {
            let (text, cfg) = configuration(ctx, file)?;
            let mut r = Report::new("incidence span", text.as_bytes());
            let d = span_dim(&cfg);
            r.push("span_dim", d.vector);
            r.push("projective_dim", d.projective);
            Ok(ok(ctx.finish(r)))
        }
        IncidenceOp::FromCircuit { file } => {
            let (_, c) = ctx.circuit(file)?;
            let (cfg, notices) = circuit_to_configuration(&c).map_err(|e| incidence_err(file, e))?;
            let mut out: String = notices.iter().map(|n| format!("# {n}\n")).collect();
            out.push_str(&serialize_configuration(&cfg));
            Ok(ok(out))
        }
    }
}

fn cmd_gen(ctx: &Ctx, kind: GenKind, nvars: usize, k: Option<usize>, r: u32, degree: u32, template: Option<&str>) -> Result<String, CliError> {
    let seed = ctx.flags.seed.unwrap_or(0);
    let template = match template {
        None => None,
        Some(name) => Some(ZeroTemplate::ALL.into_iter().find(|t| t.name() == name).ok_or_else(|| {
            let names: Vec<&str> = ZeroTemplate::ALL.iter().map(|t| t.name()).collect();
            CliError::Usage(format!("unknown template `{name}`; expected one of {}", names.join(", ")))
        })?),
    };
    let zero_params = ZeroParams { nvars, k, template, ..Default::default() };
    let fits = ZeroTemplate::ALL.into_iter().any(|t| {
        template.is_none_or(|w| w == t) && k.is_none_or(|k| k == t.k()) && t.nvars() <= nvars
    });
    if kind != GenKind::Random && !fits {
        return Err(CliError::Usage(format!("no zero template fits nvars={nvars} k={k:?}")));
    }
    let (c, label) = match kind {
        GenKind::Zero => {
            let z = gen_zero_circuit(seed, &zero_params);
            (z.circuit, format!("zero template={}", z.template.name()))
        }
        GenKind::Perturbed => (gen_perturbed_zero(seed, &zero_params), "perturbed".to_string()),
        GenKind::Random => {
            if nvars == 0 || degree == 0 {
                return Err(CliError::Usage("random circuits need nvars ≥ 1 and degree ≥ 1".into()));
            }
            let p = RandomParams { nvars, k: k.unwrap_or(3), r, degree };
            (gen_random_circuit(seed, &p), format!("random k={} r={r} degree={degree}", p.k))
        }
    };
    Ok(format!("# seed={seed} {label}\n{}", serialize_circuit(&c)))
}
