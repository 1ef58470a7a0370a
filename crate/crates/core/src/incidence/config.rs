//! Named disjoint point sets, their text format, and the view of a
//! circuit's linear factors as points.
//!
//! ```text
//! points vars=3 ext=-3
//! set A
//! (1, 0, 0)
//! (0, 1, -1+1w)
//! set B
//! (0, 0, 1)
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{FieldElem, Matrix, QuadExt};
use crate::circuit::text::{content_lines, parse_coeff_list, parse_header, ParseError};
use crate::circuit::Circuit;

use super::point::ProjPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("point {point} appears in sets {first} and {second}")]
    NotDisjoint { point: String, first: String, second: String },
    #[error("set {0} is empty")]
    EmptySet(String),
    #[error("point has {found} coordinates, expected {expected}")]
    Dimension { found: usize, expected: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("the two points coincide")]
    SamePoint,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub nvars: usize,
    pub ext: Option<i64>,
    sets: Vec<(String, Vec<ProjPoint>)>,
}

impl Configuration {
    /// Rejects empty sets, wrong dimensions and points shared between sets.
    /// Repeats within one set are collapsed.
    pub fn new(nvars: usize, sets: Vec<(String, Vec<ProjPoint>)>) -> Result<Configuration, IncidenceError> {
        let mut owner: HashMap<ProjPoint, String> = HashMap::new();
        let mut out = Vec::with_capacity(sets.len());
        for (name, points) in sets {
            if points.is_empty() {
                return Err(IncidenceError::EmptySet(name));
            }
            let mut kept: Vec<ProjPoint> = Vec::new();
            for p in points {
                if p.dim() != nvars {
                    return Err(IncidenceError::Dimension { found: p.dim(), expected: nvars });
                }
                if kept.contains(&p) {
                    continue;
                }
                if let Some(first) = owner.get(&p) {
                    return Err(IncidenceError::NotDisjoint { point: p.to_string(), first: first.clone(), second: name });
                }
                owner.insert(p.clone(), name.clone());
                kept.push(p);
            }
            out.push((name, kept));
        }
        Ok(Configuration { nvars, ext: None, sets: out })
    }

    pub fn sets(&self) -> &[(String, Vec<ProjPoint>)] {
        &self.sets
    }

    /// `(set index, point)` over all sets in order.
    pub fn points(&self) -> impl Iterator<Item = (usize, &ProjPoint)> {
        self.sets.iter().enumerate().flat_map(|(i, (_, ps))| ps.iter().map(move |p| (i, p)))
    }

    pub fn all_points(&self) -> Vec<ProjPoint> {
        self.points().map(|(_, p)| p.clone()).collect()
    }

    pub fn set_name(&self, i: usize) -> &str {
        &self.sets[i].0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanDim {
    pub vector: usize,
    pub projective: isize,
}

pub fn span_dim_of(points: &[ProjPoint], nvars: usize) -> SpanDim {
    let rows: Vec<Vec<FieldElem>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let vector = if rows.is_empty() { 0 } else { Matrix::from_rows_with_cols(rows, nvars).rank() };
    SpanDim { vector, projective: vector as isize - 1 }
}

pub fn span_dim(cfg: &Configuration) -> SpanDim {
    span_dim_of(&cfg.all_points(), cfg.nvars)
}

fn perr(line: usize, col: usize, msg: &str) -> IncidenceError {
    ParseError { line, col, msg: msg.into() }.into()
}

pub fn parse_configuration(text: &str, default_ext: QuadExt) -> Result<Configuration, IncidenceError> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return Err(perr(1, 1, "empty input"));
    };
    let h = parse_header(&first, "points")?;
    if h.max_degree.is_some() || h.homogeneous {
        return Err(perr(first.no, first.col, "points header takes only vars= and ext="));
    }
    let ext = match h.ext {
        Some(d) => QuadExt::new(d).unwrap(),
        None => default_ext,
    };
    let mut sets: Vec<(String, Vec<ProjPoint>)> = Vec::new();
    for line in lines {
        if let Some(name) = line.text.strip_prefix("set").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) {
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(perr(line.no, line.col, "expected `set <name>`"));
            }
            sets.push((name.to_string(), Vec::new()));
            continue;
        }
        let Some(body) = line.text.strip_prefix('(').and_then(|b| b.strip_suffix(')')) else {
            return Err(perr(line.no, line.col, "expected `(c1, ..., cn)` or `set <name>`"));
        };
        let Some(set) = sets.last_mut() else {
            return Err(perr(line.no, line.col, "point before any `set` line"));
        };
        let coords = parse_coeff_list(body, h.nvars, ext, line.no, line.col + 1)?;
        let p = ProjPoint::new(coords).ok_or(IncidenceError::ZeroPoint)?;
        set.1.push(p);
    }
    let mut cfg = Configuration::new(h.nvars, sets)?;
    cfg.ext = h.ext;
    Ok(cfg)
}

pub fn serialize_configuration(cfg: &Configuration) -> String {
    let mut out = format!("points vars={}", cfg.nvars);
    if let Some(d) = cfg.ext {
        write!(out, " ext={d}").unwrap();
    }
    out.push('\n');
    for (name, points) in &cfg.sets {
        writeln!(out, "set {name}").unwrap();
        for p in points {
            writeln!(out, "{p}").unwrap();
        }
    }
    out
}

/// Set `F<i>` holds the points of the linear factors of term `i`.
/// Quadratic and higher factors are skipped and reported as notices;
/// terms left with no linear factor are dropped the same way.
pub fn circuit_to_configuration(c: &Circuit) -> Result<(Configuration, Vec<String>), IncidenceError> {
    let mut notices = Vec::new();
    let mut sets = Vec::new();
    for (i, t) in c.terms.iter().enumerate() {
        let mut points = Vec::new();
        for (j, f) in t.factors.iter().enumerate() {
            if f.degree() == Some(1) {
                points.push(ProjPoint::new(f.linear_coeffs().unwrap()).unwrap());
            } else {
                notices.push(format!("term {} factor {}: degree {} skipped", i + 1, j + 1, f.degree().unwrap_or(0)));
            }
        }
        if points.is_empty() {
            notices.push(format!("term {}: no linear factors, set dropped", i + 1));
        } else {
            sets.push((format!("F{}", i + 1), points));
        }
    }
    let mut cfg = Configuration::new(c.nvars, sets)?;
    cfg.ext = c.ext;
    Ok((cfg, notices))
}
