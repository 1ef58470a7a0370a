//! Transcendence degree via the Jacobian criterion, a brute-force
//! annihilator search, and rank-preserving linear variable reduction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::symbolic::symbolic_rank;
use crate::algebra::{FieldElem, Matrix, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrdegError {
    #[error("requested rank {expected} but the polynomials have trdeg {actual}")]
    TauMismatch { expected: usize, actual: usize },
    #[error("no rank-preserving substitution with grid side up to {bound}")]
    GridExhausted { bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrdegReport {
    pub value: usize,
    /// Indices of a maximal algebraically independent subset.
    pub basis: Vec<usize>,
    pub jacobian_rank: usize,
}

pub fn jacobian(polys: &[Poly]) -> Vec<Vec<Poly>> {
    polys.iter().map(|f| (0..f.nvars()).map(|j| f.derivative(j)).collect()).collect()
}

pub fn jacobian_rank(polys: &[Poly]) -> usize {
    symbolic_rank(&jacobian(polys))
}

pub fn trdeg(polys: &[Poly]) -> TrdegReport {
    let jac = jacobian(polys);
    let rank = symbolic_rank(&jac);
    let mut basis = Vec::new();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for (i, row) in jac.iter().enumerate() {
        if basis.len() == rank {
            break;
        }
        rows.push(row.clone());
        if symbolic_rank(&rows) > basis.len() {
            basis.push(i);
        } else {
            rows.pop();
        }
    }
    TrdegReport { value: rank, basis, jacobian_rank: rank }
}

/// Searches for a nonzero `F` of degree `≤ max_degree` with
/// `F(f_1, …, f_m) = 0`, returned in `m` variables.
pub fn dependence_oracle(polys: &[Poly], max_degree: u32) -> Option<Poly> {
    let m = polys.len();
    let n = polys.first()?.nvars();
    let exps: Vec<Monomial> = (0..=max_degree).flat_map(|d| Monomial::all_of_degree(m, d)).collect();
    let mut powers: Vec<Vec<Poly>> = polys.iter().map(|f| vec![Poly::one(n), f.clone()]).collect();
    let mut images = Vec::with_capacity(exps.len());
    for a in &exps {
        let mut p = Poly::one(n);
        for (i, &e) in a.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = &powers[i][powers[i].len() - 1] * &polys[i];
                powers[i].push(next);
            }
            p = &p * &powers[i][e as usize];
        }
        images.push(p);
    }
    let mut monos: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(mo, _)| mo.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<FieldElem>> = monos.iter().map(|mo| images.iter().map(|p| p.coeff(mo)).collect()).collect();
    let mat = Matrix::from_rows_with_cols(rows, exps.len());
    let v = mat.kernel().into_iter().next()?;
    Some(Poly::from_terms(m, exps.into_iter().zip(v)))
}

/// Substitution `x_i ↦ Σ_j A_ij t_j` into `τ` new variables that keeps the
/// Jacobian rank of the polynomial set at `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulMap {
    pub matrix: Matrix,
    /// Grid side at which the matrix was found.
    pub grid: u64,
}

pub const DEFAULT_GRID_BOUND: u64 = 64;

/// Random candidates tried per grid level after the structured ones.
const RANDOM_PER_LEVEL: usize = 8;

fn selection(n: usize, chosen: &[usize]) -> Matrix {
    let mut a = Matrix::zeros(n, chosen.len());
    for (j, &i) in chosen.iter().enumerate() {
        a.set(i, j, FieldElem::one());
    }
    a
}

fn vandermonde(n: usize, tau: usize, shift: i64) -> Matrix {
    let rows = (0..n)
        .map(|i| {
            let beta = FieldElem::from_int(shift + i as i64);
            let mut p = FieldElem::one();
            (0..tau)
                .map(|_| {
                    let out = p.clone();
                    p = &p * &beta;
                    out
                })
                .collect()
        })
        .collect();
    Matrix::from_rows_with_cols(rows, tau)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Candidates at grid side `side`, in the order they are tried.
fn candidates(n: usize, tau: usize, side: u64) -> Vec<Matrix> {
    let mut out = Vec::new();
    if side == 1 {
        out.extend(combinations(n, tau).iter().map(|c| selection(n, c)));
    }
    let lo = if side == 1 { 1 } else { side / 2 + 1 };
    for shift in lo..=side {
        out.push(vandermonde(n, tau, shift as i64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(side);
    let s = side as i64;
    for _ in 0..RANDOM_PER_LEVEL {
        let rows = (0..n).map(|_| (0..tau).map(|_| FieldElem::from_int(rng.gen_range(-s..=s))).collect()).collect();
        out.push(Matrix::from_rows_with_cols(rows, tau));
    }
    out
}

/// First candidate, by growing grid side `1, 2, 4, …, grid_bound`, whose
/// substitution keeps Jacobian rank `tau`.
pub fn faithful_reduce(polys: &[Poly], tau: usize, grid_bound: u64) -> Result<FaithfulMap, TrdegError> {
    let actual = jacobian_rank(polys);
    if actual != tau {
        return Err(TrdegError::TauMismatch { expected: tau, actual });
    }
    let n = polys.first().map_or(0, Poly::nvars);
    let mut side = 1;
    while side <= grid_bound.max(1) {
        for a in candidates(n, tau, side) {
            let moved: Vec<Poly> = polys.iter().map(|f| f.substitute_linear(&a).expect("shape")).collect();
            if jacobian_rank(&moved) == tau {
                return Ok(FaithfulMap { matrix: a, grid: side });
            }
        }
        side *= 2;
    }
    Err(TrdegError::GridExhausted { bound: grid_bound })
}
