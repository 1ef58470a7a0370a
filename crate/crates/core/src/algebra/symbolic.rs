//! Rank of polynomial matrices over the rational function field.

use super::poly::Poly;

/// Rank of a matrix with polynomial entries, viewed over the field of
/// rational functions.
///
/// Uses fraction-free elimination with full pivoting: every intermediate
/// entry is a minor of the input, so each division by the previous pivot
/// is exact. Pivots are chosen by lowest degree, then fewest terms, which
/// keeps constant pivots first and intermediate degrees small.
pub fn symbolic_rank(m: &[Vec<Poly>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let nvars = m.iter().flatten().map(Poly::nvars).next().unwrap_or(0);
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one(nvars);
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, (u32, usize))> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if e.is_zero() {
                    continue;
                }
                let key = (e.degree().unwrap_or(0), e.num_terms());
                if best.as_ref().is_none_or(|b| key < b.2) {
                    best = Some((i, j, key));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut().skip(k) {
            row.swap(k, pj);
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pv = &pivot_row[k];
        for row in rest.iter_mut() {
            let f = row[k].clone();
            for j in k + 1..cols {
                let mut v = pv * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&f * &pivot_row[j]);
                }
                row[j] = v.div_exact(&prev).unwrap_or_else(|| {
                    if v.is_zero() {
                        Poly::zero(nvars)
                    } else {
                        panic!("inexact fraction-free division")
                    }
                });
            }
            row[k] = Poly::zero(nvars);
        }
        prev = a[k][k].clone();
        k += 1;
    }
    k
}

/// Entrywise evaluation at a point.
pub fn evaluate(m: &[Vec<Poly>], point: &[super::field::FieldElem]) -> super::matrix::Matrix {
    super::matrix::Matrix::from_rows(
        m.iter().map(|row| row.iter().map(|p| p.eval(point)).collect()).collect(),
    )
}
