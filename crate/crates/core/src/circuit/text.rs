//! Line-oriented text formats for circuits, polynomial lists and
//! membership queries.
//!
//! ```text
//! # the three-term example x + y + (x + 2y)
//! circuit vars=2 homogeneous
//! term
//! lin: 1, 0
//! term
//! lin: 0, 1
//! term scale=1
//! lin: 1, 2
//! ```
//!
//! Factor lines are `lin: c1, ..., cn`, `quad: c11, c12, ..., cnn` (upper
//! triangle, row major) or `poly deg=<t>: (coeff, e1 ... en) ...`.
//! Coefficients are `<rat>` or `<rat>+<rat>w` with `w = √d`.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{FieldElem, Monomial, Poly, QuadExt};

use super::model::{Circuit, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

pub(crate) fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

/// A content line with its 1-based line number and the column where the
/// content starts.
pub(crate) struct Line<'a> {
    pub no: usize,
    pub col: usize,
    pub text: &'a str,
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let col = body.len() - trimmed.len() + 1;
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some(Line { no: i + 1, col, text: trimmed })
    })
}

/// Parsed header `<kind> vars=<n> [ext=<d>] [r=<r>] [homogeneous]`.
pub(crate) struct Header {
    pub nvars: usize,
    pub ext: Option<i64>,
    pub max_degree: Option<u32>,
    pub homogeneous: bool,
}

pub(crate) fn parse_header(line: &Line<'_>, kind: &str) -> Result<Header, ParseError> {
    let mut words = line.text.split_whitespace();
    if words.next() != Some(kind) {
        return err(line.no, line.col, format!("expected header `{kind} vars=<n> ...`"));
    }
    let mut h = Header { nvars: 0, ext: None, max_degree: None, homogeneous: false };
    let mut saw_vars = false;
    for w in words {
        let col = line.col + line.text.find(w).unwrap_or(0);
        match w.split_once('=') {
            Some(("vars", v)) => {
                h.nvars = v.parse().or_else(|_| err(line.no, col, format!("bad variable count `{v}`")))?;
                if h.nvars == 0 {
                    return err(line.no, col, "variable count must be positive");
                }
                saw_vars = true;
            }
            Some(("ext", v)) => {
                let d: i64 = v.parse().or_else(|_| err(line.no, col, format!("bad radicand `{v}`")))?;
                QuadExt::new(d).or_else(|e| err(line.no, col, e.to_string()))?;
                h.ext = Some(d);
            }
            Some(("r", v)) => {
                let r: u32 = v.parse().or_else(|_| err(line.no, col, format!("bad degree bound `{v}`")))?;
                if r == 0 {
                    return err(line.no, col, "degree bound must be positive");
                }
                h.max_degree = Some(r);
            }
            None if w == "homogeneous" => h.homogeneous = true,
            _ => return err(line.no, col, format!("unknown header field `{w}`")),
        }
    }
    if !saw_vars {
        return err(line.no, line.col, "header is missing vars=<n>");
    }
    Ok(h)
}

fn parse_coeff(s: &str, ext: QuadExt, line: usize, col: usize) -> Result<FieldElem, ParseError> {
    FieldElem::parse(s, ext).or_else(|_| err(line, col, format!("bad coefficient `{}`", s.trim())))
}

pub(crate) fn parse_coeff_list(
    body: &str,
    expected: usize,
    ext: QuadExt,
    line: usize,
    col: usize,
) -> Result<Vec<FieldElem>, ParseError> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != expected {
        return err(line, col, format!("expected {expected} coefficients, found {}", parts.len()));
    }
    let mut offset = col;
    let mut out = Vec::with_capacity(expected);
    for p in parts {
        out.push(parse_coeff(p, ext, line, offset)?);
        offset += p.len() + 1;
    }
    Ok(out)
}

/// Parses one factor line. Returns `Ok(None)` if the line is not a factor
/// line at all.
fn parse_factor(l: &Line<'_>, n: usize, ext: QuadExt) -> Result<Option<Poly>, ParseError> {
    let text = l.text;
    let poly = if let Some(body) = text.strip_prefix("lin:") {
        let c = parse_coeff_list(body, n, ext, l.no, l.col + 4)?;
        Poly::linear(&c)
    } else if let Some(body) = text.strip_prefix("quad:") {
        let c = parse_coeff_list(body, n * (n + 1) / 2, ext, l.no, l.col + 5)?;
        let mut terms = Vec::new();
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((Monomial::new(e), c[idx].clone()));
                idx += 1;
            }
        }
        Poly::from_terms(n, terms)
    } else if let Some(rest) = text.strip_prefix("poly") {
        let (head, body) = rest
            .split_once(':')
            .map_or_else(|| err(l.no, l.col, "expected `poly deg=<t>: ...`"), Ok)?;
        let deg: u32 = head
            .trim()
            .strip_prefix("deg=")
            .and_then(|v| v.parse().ok())
            .map_or_else(|| err(l.no, l.col + 4, "expected `deg=<t>`"), Ok)?;
        let body_col = l.col + text.len() - body.len();
        let mut terms = Vec::new();
        let mut rest = body.trim_start();
        while !rest.is_empty() {
            let col = body_col + body.len() - rest.len();
            let Some(inner) = rest.strip_prefix('(') else {
                return err(l.no, col, "expected `(` to open a term");
            };
            let Some(close) = inner.find(')') else {
                return err(l.no, col, "unterminated term");
            };
            let (coeff, exps) = inner[..close]
                .split_once(',')
                .map_or_else(|| err(l.no, col, "term must be `(coeff, e1 ... en)`"), Ok)?;
            let c = parse_coeff(coeff, ext, l.no, col + 1)?;
            let e: Vec<u32> = exps
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<_, _>>()
                .or_else(|_| err(l.no, col, "bad exponent"))?;
            if e.len() != n {
                return err(l.no, col, format!("expected {n} exponents, found {}", e.len()));
            }
            terms.push((Monomial::new(e), c));
            rest = inner[close + 1..].trim_start();
        }
        let p = Poly::from_terms(n, terms);
        if !p.is_zero() && p.degree() != Some(deg) {
            return err(l.no, l.col, format!("declared deg={deg} but polynomial has degree {}", p.degree().unwrap()));
        }
        p
    } else {
        return Ok(None);
    };
    if poly.is_zero() {
        return err(l.no, l.col, "zero factor");
    }
    if poly.degree() == Some(0) {
        return err(l.no, l.col, "constant factor");
    }
    Ok(Some(poly))
}

/// Parses a circuit, taking `√-3` for `w` unless the header names `ext`.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    parse_circuit_with(text, QuadExt::default())
}

/// Parses a circuit with `default_ext` used when the header has no `ext`.
pub fn parse_circuit_with(text: &str, default_ext: QuadExt) -> Result<Circuit, ParseError> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return err(1, 1, "empty input");
    };
    let h = parse_header(&first, "circuit")?;
    let ext = h.ext.map_or(default_ext, |d| QuadExt::new(d).unwrap());
    let n = h.nvars;
    let mut terms: Vec<(usize, Term)> = Vec::new();
    for l in lines {
        if l.text == "term" || l.text.starts_with("term ") {
            let mut scale = FieldElem::one();
            for w in l.text.split_whitespace().skip(1) {
                let col = l.col + l.text.find(w).unwrap_or(0);
                match w.strip_prefix("scale=") {
                    Some(v) => scale = parse_coeff(v, ext, l.no, col + 6)?,
                    None => return err(l.no, col, format!("unknown term field `{w}`")),
                }
            }
            if scale.is_zero() {
                return err(l.no, l.col, "zero scale");
            }
            terms.push((l.no, Term::new(scale, Vec::new())));
            continue;
        }
        let Some(f) = parse_factor(&l, n, ext)? else {
            return err(l.no, l.col, format!("unrecognized line `{}`", l.text));
        };
        if let Some(r) = h.max_degree {
            let d = f.degree().unwrap();
            if d > r {
                return err(l.no, l.col, format!("factor degree {d} exceeds r={r}"));
            }
        }
        match terms.last_mut() {
            Some((_, t)) => t.factors.push(f),
            None => return err(l.no, l.col, "factor before the first `term`"),
        }
    }
    if terms.is_empty() {
        return err(first.no, first.col, "circuit has no terms");
    }
    if let Some((no, _)) = terms.iter().find(|(_, t)| t.factors.is_empty()) {
        return err(*no, 1, "term without factors");
    }
    Ok(Circuit {
        nvars: n,
        ext: h.ext,
        max_degree: h.max_degree,
        homogeneous: h.homogeneous,
        terms: terms.into_iter().map(|(_, t)| t).collect(),
    })
}

fn write_factor(out: &mut String, p: &Poly) -> fmt::Result {
    let n = p.nvars();
    if p.terms().all(|(m, _)| m.degree() == 1) {
        let c = p.linear_coeffs().unwrap();
        let cells: Vec<String> = c.iter().map(ToString::to_string).collect();
        writeln!(out, "lin: {}", cells.join(", "))
    } else if p.terms().all(|(m, _)| m.degree() == 2) {
        let mut cells = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                cells.push(p.coeff(&Monomial::new(e)).to_string());
            }
        }
        writeln!(out, "quad: {}", cells.join(", "))
    } else {
        write!(out, "poly deg={}:", p.degree().unwrap_or(0))?;
        for (m, c) in p.terms().rev() {
            let e: Vec<String> = m.exponents().iter().map(ToString::to_string).collect();
            write!(out, " ({c}, {})", e.join(" "))?;
        }
        writeln!(out)
    }
}

fn write_header(out: &mut String, kind: &str, n: usize, ext: Option<i64>) {
    write!(out, "{kind} vars={n}").unwrap();
    if let Some(d) = ext {
        write!(out, " ext={d}").unwrap();
    }
}

/// Serializes in the same grammar; `parse_circuit(&serialize_circuit(c)) == c`.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    write_header(&mut out, "circuit", c.nvars, c.ext);
    if let Some(r) = c.max_degree {
        write!(out, " r={r}").unwrap();
    }
    if c.homogeneous {
        out.push_str(" homogeneous");
    }
    out.push('\n');
    for t in &c.terms {
        if t.scale.is_one() {
            out.push_str("term\n");
        } else {
            writeln!(out, "term scale={}", t.scale).unwrap();
        }
        for f in &t.factors {
            write_factor(&mut out, f).unwrap();
        }
    }
    out
}

/// A list of polynomials: header `polys vars=<n> [ext=<d>]` followed by
/// factor lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyList {
    pub nvars: usize,
    pub ext: Option<i64>,
    pub polys: Vec<Poly>,
}

pub fn parse_poly_list(text: &str, default_ext: QuadExt) -> Result<PolyList, ParseError> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return err(1, 1, "empty input");
    };
    let h = parse_header(&first, "polys")?;
    let ext = h.ext.map_or(default_ext, |d| QuadExt::new(d).unwrap());
    let mut polys = Vec::new();
    for l in lines {
        match parse_factor(&l, h.nvars, ext)? {
            Some(p) => polys.push(p),
            None => return err(l.no, l.col, format!("unrecognized line `{}`", l.text)),
        }
    }
    if polys.is_empty() {
        return err(first.no, first.col, "no polynomials");
    }
    Ok(PolyList { nvars: h.nvars, ext: h.ext, polys })
}

pub fn serialize_poly_list(list: &PolyList) -> String {
    let mut out = String::new();
    write_header(&mut out, "polys", list.nvars, list.ext);
    out.push('\n');
    for p in &list.polys {
        write_factor(&mut out, p).unwrap();
    }
    out
}

/// A membership query: is the product of the `target` factors in the ideal
/// generated by `gens`?
///
/// ```text
/// member vars=2
/// target
/// lin: 1, 2
/// gens
/// lin: 1, 0
/// lin: 0, 1
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberQuery {
    pub nvars: usize,
    pub ext: Option<i64>,
    pub target: Vec<Poly>,
    pub gens: Vec<Poly>,
}

pub fn parse_member_query(text: &str, default_ext: QuadExt) -> Result<MemberQuery, ParseError> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else {
        return err(1, 1, "empty input");
    };
    let h = parse_header(&first, "member")?;
    let ext = h.ext.map_or(default_ext, |d| QuadExt::new(d).unwrap());
    #[derive(PartialEq)]
    enum Section {
        None,
        Target,
        Gens,
    }
    let mut section = Section::None;
    let mut q = MemberQuery { nvars: h.nvars, ext: h.ext, target: Vec::new(), gens: Vec::new() };
    for l in lines {
        match l.text {
            "target" => section = Section::Target,
            "gens" => section = Section::Gens,
            _ => {
                let Some(p) = parse_factor(&l, h.nvars, ext)? else {
                    return err(l.no, l.col, format!("unrecognized line `{}`", l.text));
                };
                match section {
                    Section::Target => q.target.push(p),
                    Section::Gens => q.gens.push(p),
                    Section::None => return err(l.no, l.col, "factor outside `target`/`gens`"),
                }
            }
        }
    }
    if q.target.is_empty() {
        return err(first.no, first.col, "empty target");
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTEREXAMPLE: &str = "circuit vars=2 homogeneous\nterm\nlin: 1, 0\nterm\nlin: 0, 1\nterm\nlin: 1, 2\n";

    #[test]
    fn parses_three_linear_terms() {
        let c = parse_circuit(COUNTEREXAMPLE).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.terms[2].factors[0], Poly::linear_ints(&[1, 2]));
        assert!(c.homogeneous);
        assert_eq!(serialize_circuit(&c), COUNTEREXAMPLE);
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert!(parse_circuit("circuit vars=2\n").is_err());
        let e = parse_circuit("circuit vars=2\nterm\nlin: 0, 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("zero factor"));
        assert!(parse_circuit("").is_err());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_circuit("circuit vars=2\nterm\nlin: 1, 0, 3\n").unwrap_err();
        assert_eq!((e.line, e.msg.contains("expected 2")), (3, true));
        let e = parse_circuit("circuit vars=2\nterm\nlin: 1, x\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.col > 5);
        let e = parse_circuit("circuit vars=2 r=1\nterm\nquad: 1, 0, 1\n").unwrap_err();
        assert!(e.msg.contains("exceeds"));
        assert!(parse_circuit("circuit vars=2\nlin: 1, 0\n").is_err());
        assert!(parse_circuit("circuit vars=2 ext=4\nterm\nlin: 1, 0\n").is_err());
        assert!(parse_circuit("circuit vars=2\nterm\npoly deg=3: (1, 1 1)\n").is_err());
    }

    #[test]
    fn all_factor_forms() {
        let text = "# comment\ncircuit vars=3 ext=-1 r=3\nterm scale=-1/2+1w\nquad: 1, 0, 0, 0, 1, 1  # x² + yz + ... \npoly deg=3: (2, 3 0 0) (1+1w, 0 1 2)\nterm\nlin: 1, 0, 0\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.ext, Some(-1));
        assert_eq!(c.terms[0].factors.len(), 2);
        assert_eq!(c.terms[0].factors[1].degree(), Some(3));
        let again = parse_circuit(&serialize_circuit(&c)).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn member_and_poly_lists() {
        let q = parse_member_query(
            "member vars=2\ntarget\nlin: 1, 2\ngens\nlin: 1, 0\nlin: 0, 1\n",
            QuadExt::default(),
        )
        .unwrap();
        assert_eq!(q.target.len(), 1);
        assert_eq!(q.gens.len(), 2);
        let l = parse_poly_list("polys vars=2\npoly deg=2: (1, 1 1)\nquad: 1, 0, 0\n", QuadExt::default()).unwrap();
        assert_eq!(parse_poly_list(&serialize_poly_list(&l), QuadExt::default()).unwrap(), l);
    }
}
