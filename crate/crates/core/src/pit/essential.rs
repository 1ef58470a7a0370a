use crate::algebra::Matrix;
use crate::circuit::Circuit;
use crate::quadratic::gram;

use super::PipelineError;

/// Rows of a basis of the smallest subspace `W` of coefficient space such
/// that every factor depends only on the coordinates `Bx`: linear factor
/// vectors together with the Gram column spaces of quadratic factors.
pub fn essential_space(c: &Circuit) -> Result<Matrix, PipelineError> {
    let mut rows = Vec::new();
    for f in c.factors() {
        match f.degree() {
            None | Some(0) => {}
            Some(1) => rows.push(f.linear_coeffs().unwrap()),
            Some(2) => {
                let g = gram(f).map_err(|_| PipelineError::DegreeTooHigh(2))?;
                let m = g.matrix().row_space_basis();
                rows.extend(m.to_rows());
            }
            Some(d) => return Err(PipelineError::DegreeTooHigh(d)),
        }
    }
    Ok(Matrix::from_rows_with_cols(rows, c.nvars).row_space_basis())
}

/// Circuit in `dim W` variables that is zero exactly when `c` is, and the
/// substitution (old variables in rows) producing it.
pub(super) fn reduce_to(c: &Circuit, basis: &Matrix) -> (Circuit, Matrix) {
    let a = if basis.rows() == 0 {
        Matrix::zeros(c.nvars, 0)
    } else {
        basis.right_inverse().expect("basis rows are independent")
    };
    (c.substitute(&a).expect("shape"), a)
}
