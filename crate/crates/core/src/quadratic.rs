//! Gram matrices of homogeneous quadratics, their rank, and restriction to
//! hyperplanes.
//!
//! Over an algebraically closed field of characteristic 0, a quadratic form
//! factors into linear forms exactly when its Gram rank is at most 2. The
//! rank is unchanged by field extension, so computing it over `Q(√d)`
//! answers the question over `ℂ`.

use thiserror::Error;

use crate::algebra::{FieldElem, Matrix, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("expected a homogeneous quadratic")]
    NotQuadratic,
    #[error("expected a nonzero linear form")]
    BadHyperplane,
}

/// Symmetric `M` with `q(x) = xᵀ M x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(Matrix);

impl GramMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Rebuilds `xᵀ M x`.
    pub fn to_poly(&self) -> Poly {
        let n = self.0.rows();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((Monomial::new(e), self.0.get(i, j).clone()));
            }
        }
        Poly::from_terms(n, terms)
    }
}

fn check_quadratic(q: &Poly) -> Result<(), QuadError> {
    if q.is_zero() || !q.terms().all(|(m, _)| m.degree() == 2) {
        return Err(QuadError::NotQuadratic);
    }
    Ok(())
}

pub fn gram(q: &Poly) -> Result<GramMatrix, QuadError> {
    check_quadratic(q)?;
    let n = q.nvars();
    let half = FieldElem::from_frac(1, 2);
    let mut m = Matrix::zeros(n, n);
    for (mono, c) in q.terms() {
        let vars: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            let h = c * &half;
            m.set(i, j, h.clone());
            m.set(j, i, h);
        }
    }
    Ok(GramMatrix(m))
}

pub fn quad_rank(q: &Poly) -> Result<usize, QuadError> {
    Ok(gram(q)?.rank())
}

/// Irreducible over `ℂ` iff the Gram rank is at least 3.
pub fn is_irreducible_quadratic(q: &Poly) -> Result<bool, QuadError> {
    Ok(quad_rank(q)? >= 3)
}

/// Restricts `q` to the hyperplane `l = 0` by solving for the first
/// variable with a nonzero coefficient in `l` and substituting.
///
/// The result lives in the same ring and does not involve the pivot
/// variable. It may be zero or of lower rank.
pub fn restrict_to_hyperplane(q: &Poly, l: &Poly) -> Result<Poly, QuadError> {
    let coeffs = l.linear_coeffs().filter(|_| !l.is_zero()).ok_or(QuadError::BadHyperplane)?;
    let pivot = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    restrict_with_pivot(q, l, pivot)
}

/// Same as [`restrict_to_hyperplane`] with an explicit pivot variable.
pub fn restrict_with_pivot(q: &Poly, l: &Poly, pivot: usize) -> Result<Poly, QuadError> {
    check_quadratic(q)?;
    let coeffs = l.linear_coeffs().filter(|_| !l.is_zero()).ok_or(QuadError::BadHyperplane)?;
    if coeffs.len() != q.nvars() || coeffs[pivot].is_zero() {
        return Err(QuadError::BadHyperplane);
    }
    Ok(q.substitute_linear(&hyperplane_substitution(&coeffs, pivot)).unwrap())
}

/// `x_pivot ↦ -(1/l_pivot) Σ_{j≠pivot} l_j x_j`, all other variables fixed.
fn hyperplane_substitution(coeffs: &[FieldElem], pivot: usize) -> Matrix {
    let n = coeffs.len();
    let mut a = Matrix::identity(n);
    let inv = coeffs[pivot].inv().unwrap();
    for (j, c) in coeffs.iter().enumerate() {
        let v = if j == pivot { FieldElem::zero() } else { -(c * &inv) };
        a.set(pivot, j, v);
    }
    a
}

/// Gram rank of a restricted quadratic; 0 when the restriction vanishes.
pub fn restricted_rank(q: &Poly, l: &Poly) -> Result<usize, QuadError> {
    let r = restrict_to_hyperplane(q, l)?;
    if r.is_zero() {
        return Ok(0);
    }
    quad_rank(&r)
}
