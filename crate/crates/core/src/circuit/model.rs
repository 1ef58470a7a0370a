//! The factored sum-of-products circuit `C = Σᵢ sᵢ · ∏ⱼ l_ij`.

use crate::algebra::{FieldElem, Poly, QuadExt};

/// One top-level product: `scale · ∏ factors`.
///
/// Parsed circuits always have at least one factor per term; normalization
/// may strip every factor of a term, leaving a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub scale: FieldElem,
    pub factors: Vec<Poly>,
}

impl Term {
    pub fn new(scale: FieldElem, factors: Vec<Poly>) -> Self {
        Term { scale, factors }
    }

    /// Sum of factor degrees.
    pub fn degree(&self) -> u32 {
        self.factors.iter().filter_map(Poly::degree).sum()
    }

    pub fn max_factor_degree(&self) -> u32 {
        self.factors.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Product of the factors without the scale.
    pub fn product(&self, nvars: usize) -> Poly {
        self.factors.iter().fold(Poly::one(nvars), |acc, f| &acc * f)
    }

    pub fn expand(&self, nvars: usize) -> Poly {
        self.product(nvars).scale(&self.scale)
    }

    pub fn is_all_linear(&self) -> bool {
        self.factors.iter().all(|f| f.degree() == Some(1))
    }
}

/// A bounded top-fanin depth-4 circuit in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub nvars: usize,
    /// Radicand named in the header, if any.
    pub ext: Option<i64>,
    /// Declared bound on factor degree, if any.
    pub max_degree: Option<u32>,
    pub homogeneous: bool,
    pub terms: Vec<Term>,
}

impl Circuit {
    pub fn new(nvars: usize, terms: Vec<Term>) -> Self {
        Circuit { nvars, ext: None, max_degree: None, homogeneous: true, terms }
    }

    /// Top fanin `k`.
    pub fn k(&self) -> usize {
        self.terms.len()
    }

    /// Largest factor degree `r` actually present.
    pub fn r(&self) -> u32 {
        self.terms.iter().map(Term::max_factor_degree).max().unwrap_or(0)
    }

    pub fn quad_ext(&self) -> QuadExt {
        self.ext.and_then(|d| QuadExt::new(d).ok()).unwrap_or_default()
    }

    pub fn factors(&self) -> impl Iterator<Item = &Poly> {
        self.terms.iter().flat_map(|t| t.factors.iter())
    }

    /// Distinct factors (structural equality), in order of appearance.
    pub fn distinct_factors(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for f in self.factors() {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        out
    }

    /// Largest total degree over terms.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// Applies a linear substitution (old variables in rows) to every factor.
    pub fn substitute(&self, a: &crate::algebra::Matrix) -> Result<Circuit, crate::algebra::poly::PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let factors = t
                    .factors
                    .iter()
                    .map(|f| f.substitute_linear(a))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::new(t.scale.clone(), factors))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Circuit { nvars: a.cols(), ext: self.ext, max_degree: self.max_degree, homogeneous: self.homogeneous, terms })
    }

    /// Homogenizes by adding one variable `x_{n+1}` at the end: each factor
    /// `f` becomes `x_{n+1}^{deg f} f(x/x_{n+1})` and each term is padded
    /// with copies of `x_{n+1}` up to the largest term degree. The result is
    /// `x_{n+1}^D · C(x/x_{n+1})`, zero exactly when `C` is.
    pub fn homogenize(&self) -> Circuit {
        let n = self.nvars + 1;
        let h = Poly::var(n, self.nvars);
        let lift = |f: &Poly| {
            let deg = f.degree().unwrap_or(0);
            let terms = f.terms().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(deg - m.degree());
                (crate::algebra::Monomial::new(e), c.clone())
            });
            Poly::from_terms(n, terms)
        };
        let top = self.degree();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut factors: Vec<Poly> = t.factors.iter().map(lift).collect();
                for _ in t.degree()..top {
                    factors.push(h.clone());
                }
                Term::new(t.scale.clone(), factors)
            })
            .collect();
        Circuit { nvars: n, ext: self.ext, max_degree: self.max_degree, homogeneous: true, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenize_pads_terms() {
        // (x + 1) + (-x) in one variable is the constant 1
        let c = Circuit {
            homogeneous: false,
            ..Circuit::new(
                1,
                vec![
                    Term::new(FieldElem::one(), vec![Poly::from_int_terms(1, &[(1, &[1]), (1, &[0])])]),
                    Term::new(FieldElem::from_int(-1), vec![Poly::var(1, 0)]),
                ],
            )
        };
        let h = c.homogenize();
        assert_eq!(h.nvars, 2);
        assert!(h.factors().all(Poly::is_homogeneous));
        let total = h.terms.iter().fold(Poly::zero(2), |acc, t| &acc + &t.expand(2));
        assert_eq!(total, Poly::var(2, 1));
    }
}
