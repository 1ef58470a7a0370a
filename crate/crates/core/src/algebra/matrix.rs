//! Dense matrices over `Q(√d)` with fraction-free elimination.

use std::fmt;

use thiserror::Error;

use super::field::FieldElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Fraction-free (Bareiss) row echelon form computed in place.
///
/// Returns the pivot positions `(row, col)` in order. Columns without a
/// pivot are skipped, which keeps the routine rank-revealing on singular
/// and rectangular input.
fn bareiss_echelon(m: &mut [Vec<FieldElem>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut prev = FieldElem::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                // the row only gets scaled by pv/prev; skip when that is 1
                if pv != &prev {
                    let scale = pv / &prev;
                    for x in row[c + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &scale;
                        }
                    }
                }
                continue;
            }
            let f = row[c].clone();
            for j in c + 1..cols {
                let lhs = pv * &row[j];
                let rhs = &f * &pivot_row[j];
                row[j] = &(&lhs - &rhs) / &prev;
            }
            row[c] = FieldElem::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElem::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| FieldElem::from_int(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(FieldElem::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        bareiss_echelon(&mut m, self.cols).len()
    }

    /// Indices of a maximal linearly independent set of rows, chosen
    /// greedily from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        // column echelon of the transpose reveals the row profile
        let t = self.transpose();
        let mut m = t.to_rows();
        bareiss_echelon(&mut m, t.cols).into_iter().map(|(_, c)| c).collect()
    }

    /// Pivot columns of the row echelon form (the column rank profile).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.to_rows();
        bareiss_echelon(&mut m, self.cols).into_iter().map(|(_, c)| c).collect()
    }

    /// One exact solution of `self · x = rhs`, or `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[FieldElem]) -> Result<Option<Vec<FieldElem>>, MatrixError> {
        if rhs.len() != self.rows {
            return Err(MatrixError::Dimension(format!(
                "{} rows but right-hand side of length {}",
                self.rows,
                rhs.len()
            )));
        }
        let mut m: Vec<Vec<FieldElem>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let pivots = bareiss_echelon(&mut m, self.cols + 1);
        if pivots.iter().any(|&(_, c)| c == self.cols) {
            return Ok(None);
        }
        Ok(Some(back_substitute(&m, &pivots, self.cols, None)))
    }

    /// A basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let mut m = self.to_rows();
        let pivots = bareiss_echelon(&mut m, self.cols);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &(_, c) in &pivots {
                v[c] = true;
            }
            v
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| back_substitute_homogeneous(&m, &pivots, self.cols, free))
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if self.rank() < n {
            return None;
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![FieldElem::zero(); n];
            e[j] = FieldElem::one();
            cols.push(self.solve(&e).ok()??);
        }
        let mut inv = Matrix::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Some(inv)
    }

    /// For a matrix with independent rows, a right inverse `A` with
    /// `self · A = I`, supported on the pivot columns.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let piv = self.pivot_columns();
        if piv.len() != self.rows {
            return None;
        }
        let mut square = Matrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for (k, &c) in piv.iter().enumerate() {
                square.set(i, k, self.get(i, c).clone());
            }
        }
        let inv = square.inverse()?;
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (k, &c) in piv.iter().enumerate() {
            for j in 0..self.rows {
                out.set(c, j, inv.get(k, j).clone());
            }
        }
        Some(out)
    }

    /// Rows of a basis of the row space, in echelon-selected order.
    pub fn row_space_basis(&self) -> Matrix {
        let idx = self.independent_rows();
        Matrix::from_rows_with_cols(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    pub(crate) fn from_rows_with_cols(rows: Vec<Vec<FieldElem>>, cols: usize) -> Matrix {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Stacks rows of `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(MatrixError::Dimension("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }
}

fn back_substitute(
    m: &[Vec<FieldElem>],
    pivots: &[(usize, usize)],
    ncols: usize,
    fixed: Option<usize>,
) -> Vec<FieldElem> {
    let mut x = vec![FieldElem::zero(); ncols];
    if let Some(f) = fixed {
        x[f] = FieldElem::one();
    }
    for &(r, c) in pivots.iter().rev() {
        let mut acc = if fixed.is_none() { m[r][ncols].clone() } else { FieldElem::zero() };
        for j in c + 1..ncols {
            if !m[r][j].is_zero() && !x[j].is_zero() {
                acc -= &(&m[r][j] * &x[j]);
            }
        }
        x[c] = &acc / &m[r][c];
    }
    x
}

fn back_substitute_homogeneous(
    m: &[Vec<FieldElem>],
    pivots: &[(usize, usize)],
    ncols: usize,
    free: usize,
) -> Vec<FieldElem> {
    back_substitute(m, pivots, ncols, Some(free))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0]]).rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(3);
        let e1 = vec![FieldElem::one(), FieldElem::zero(), FieldElem::zero()];
        assert_eq!(id.solve(&e1).unwrap(), Some(e1.clone()));

        let m = Matrix::from_ints(&[&[1, 1]]);
        let x = m.solve(&[FieldElem::from_int(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], FieldElem::from_int(2));

        let inconsistent = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            inconsistent.solve(&[FieldElem::from_int(1), FieldElem::from_int(3)]).unwrap(),
            None
        );
        assert!(m.solve(&[]).is_err());
    }

    #[test]
    fn kernel_and_inverse() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(FieldElem::is_zero));
        }
        let a = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn right_inverse_of_wide_matrix() {
        let b = Matrix::from_ints(&[&[0, 1, 2], &[1, 0, 1]]);
        let a = b.right_inverse().unwrap();
        assert_eq!(b.mul(&a).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn independent_rows_greedy() {
        let m = Matrix::from_ints(&[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        assert_eq!(m.independent_rows(), vec![0, 2]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_rows(
                    v.chunks(c).map(|ch| ch.iter().map(|&x| FieldElem::from_int(x)).collect()).collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_invariant_under_row_operations(m in arb_matrix(), s in 1i64..5) {
            let mut rows = m.to_rows();
            rows.reverse();
            if rows.len() > 1 {
                let r0 = rows[0].clone();
                for (x, y) in rows[1].iter_mut().zip(r0.iter()) {
                    *x = &*x + &(y * &FieldElem::from_int(s));
                }
            }
            prop_assert_eq!(Matrix::from_rows(rows).rank(), m.rank());
        }

        #[test]
        fn solutions_remultiply(m in arb_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            let rhs: Vec<FieldElem> = (0..m.rows()).map(|i| FieldElem::from_int(seed[i])).collect();
            if let Some(x) = m.solve(&rhs).unwrap() {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs);
            } else {
                // inconsistent: augmenting raises the rank
                let aug: Vec<Vec<FieldElem>> = m.to_rows().into_iter().zip(rhs).map(|(mut r, b)| { r.push(b); r }).collect();
                prop_assert!(Matrix::from_rows(aug).rank() > m.rank());
            }
        }
    }
}
