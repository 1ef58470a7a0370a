//! Sparse multivariate polynomials over `Q(√d)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::field::{leading_sign, FieldElem};
use super::matrix::Matrix;
use super::monomial::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("substitution matrix is {rows}x{cols} but the polynomial has {nvars} variables")]
    SubstitutionShape { rows: usize, cols: usize, nvars: usize },
}

/// A polynomial in `nvars` variables, stored as a graded-lex ordered map
/// from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, FieldElem::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, i), FieldElem::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[FieldElem]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    pub fn linear_ints(coeffs: &[i64]) -> Self {
        Poly::linear(&coeffs.iter().map(|&c| FieldElem::from_int(c)).collect::<Vec<_>>())
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut map: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            match map.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Poly { nvars, terms: map }
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Poly::from_terms(
            nvars,
            terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), FieldElem::from_int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// Largest term under graded-lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// True for nonzero polynomials whose monomials share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        !self.is_zero() && self.degree() == self.min_degree()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// Coefficient vector of a linear form, or `None` if the polynomial has
    /// any term of degree other than one.
    pub fn linear_coeffs(&self) -> Option<Vec<FieldElem>> {
        if !self.terms.keys().all(|m| m.degree() == 1) {
            return None;
        }
        let mut v = vec![FieldElem::zero(); self.nvars];
        for (m, c) in &self.terms {
            let i = m.exponents().iter().position(|&e| e == 1).unwrap();
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, FieldElem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod = c1 * c2;
                acc.entry(m1.mul(m2))
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Poly { nvars: self.nvars, terms })
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            (e > 0).then(|| {
                let mut exps = m.exponents().to_vec();
                exps[i] -= 1;
                (Monomial::new(exps), c * &FieldElem::from_int(i64::from(e)))
            })
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replaces each old variable `x_i` by the linear form in the new
    /// variables given by row `i` of `a` (`a` has one row per old variable
    /// and one column per new variable).
    pub fn substitute_linear(&self, a: &Matrix) -> Result<Poly, PolyError> {
        if a.rows() != self.nvars {
            return Err(PolyError::SubstitutionShape {
                rows: a.rows(),
                cols: a.cols(),
                nvars: self.nvars,
            });
        }
        let m = a.cols();
        let images: Vec<Poly> = (0..self.nvars).map(|i| Poly::linear(a.row(i))).collect();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(m), p.clone()]).collect();
        let mut out = Poly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&t);
        }
        Ok(out)
    }

    /// Embeds into a ring with more variables, new ones appended at the end.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            (Monomial::new(e), c.clone())
        });
        Poly { nvars, terms: terms.collect() }
    }

    /// Exact quotient `self / divisor`; `None` when `divisor` does not
    /// divide `self` (or is zero).
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        if self.nvars != divisor.nvars {
            return None;
        }
        if divisor.terms.len() == 1 {
            let inv = lc.inv()?;
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(lm)?, c * &inv);
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        let inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &inv;
            let step = Poly::monomial(self.nvars, qm.clone(), qc.clone());
            let sub = &step * divisor;
            rem = rem.try_sub(&sub).ok()?;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Rescales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// `Some(c)` with `self = c · other` when the two are associates.
    pub fn associate_ratio(&self, other: &Poly) -> Option<FieldElem> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (m1, c1) = self.leading_term()?;
        let (m2, c2) = other.leading_term()?;
        if m1 != m2 {
            return None;
        }
        let ratio = c1 / c2;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ma != mb || ca != &(cb * &ratio) {
                return None;
            }
        }
        Some(ratio)
    }

    /// Sign-normalized representative used for deterministic display of
    /// linear forms.
    pub fn sign_normalized(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) if leading_sign(c) < 0 => self.scale(&FieldElem::from_int(-1)),
            _ => self.clone(),
        }
    }
}

/// `p ~ q` iff `p = c·q` for some nonzero constant `c`.
pub fn associates(p: &Poly, q: &Poly) -> bool {
    p.associate_ratio(q).is_some()
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&FieldElem::from_int(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.nvars)
    }
}
