//! Homogeneous ideal membership by linear algebra, degree by degree.
//!
//! For `A` of degree `D` and generators `g_j`, `A ∈ ⟨g⟩` iff there are
//! homogeneous `D_j` of degree `D - deg g_j` with `Σ D_j g_j = A`; the
//! unknown coefficients of the `D_j` satisfy one linear equation per
//! monomial of degree `D`.
//!
//! Linear generators are first made coordinate variables by an invertible
//! change of variables. Modulo those coordinates the problem lives in fewer
//! variables, and the system only has to cover the remaining generators.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::sparse::SparseSystem;
use crate::algebra::{FieldElem, Matrix, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembershipError {
    #[error("membership needs homogeneous input")]
    NonHomogeneous,
    #[error("polynomials have different variable counts")]
    VarMismatch,
    #[error("subset bound must be at least 1")]
    BadBound,
}

/// `Σ generators[i] · multipliers[i] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub generators: Vec<Poly>,
    pub multipliers: Vec<Poly>,
    pub target: Poly,
}

impl MembershipCertificate {
    pub fn verify(&self) -> bool {
        if self.generators.len() != self.multipliers.len() {
            return false;
        }
        let n = self.target.nvars();
        let mut sum = Poly::zero(n);
        for (g, m) in self.generators.iter().zip(&self.multipliers) {
            if m.is_zero() {
                continue;
            }
            let want = self.target.degree().unwrap_or(0).checked_sub(g.degree().unwrap_or(0));
            if !m.is_homogeneous() || m.degree() != want {
                return false;
            }
            sum.add_assign_ref(&(g * m));
        }
        sum == self.target
    }
}

/// Coordinates in which the independent linear generators are the first
/// `t` variables.
struct Frame {
    n: usize,
    t: usize,
    /// New coordinates as rows over the old ones; `None` for the identity.
    p: Option<Matrix>,
    pinv: Option<Matrix>,
    /// Generator index to coordinate position, for independent linear ones.
    coord_of: Vec<Option<usize>>,
}

impl Frame {
    fn new(n: usize, gens: &[Poly]) -> Frame {
        let lin: Vec<usize> = (0..gens.len()).filter(|&j| gens[j].degree() == Some(1)).collect();
        let mut coord_of = vec![None; gens.len()];
        if lin.is_empty() {
            return Frame { n, t: 0, p: None, pinv: None, coord_of };
        }
        let rows: Vec<Vec<FieldElem>> = lin.iter().map(|&j| gens[j].linear_coeffs().unwrap()).collect();
        let m = Matrix::from_rows_with_cols(rows.clone(), n);
        let indep = m.independent_rows();
        let mut prow: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
        for (pos, &r) in indep.iter().enumerate() {
            coord_of[lin[r]] = Some(pos);
            prow.push(rows[r].clone());
        }
        let t = prow.len();
        let pivots = Matrix::from_rows_with_cols(prow.clone(), n).pivot_columns();
        for j in (0..n).filter(|j| !pivots.contains(j)) {
            let mut e = vec![FieldElem::zero(); n];
            e[j] = FieldElem::one();
            prow.push(e);
        }
        let p = Matrix::from_rows(prow);
        let pinv = p.inverse().expect("completed basis is invertible");
        Frame { n, t, p: Some(p), pinv: Some(pinv), coord_of }
    }

    fn to_frame(&self, f: &Poly) -> Poly {
        match &self.pinv {
            Some(a) => f.substitute_linear(a).expect("shape"),
            None => f.clone(),
        }
    }

    fn from_frame(&self, f: &Poly) -> Poly {
        match &self.p {
            Some(a) => f.substitute_linear(a).expect("shape"),
            None => f.clone(),
        }
    }

    /// Sets the first `t` coordinates to zero.
    fn reduce(&self, f: &Poly) -> Poly {
        if self.t == 0 {
            return f.clone();
        }
        let terms = f
            .terms()
            .filter(|(m, _)| m.exponents()[..self.t].iter().all(|&e| e == 0))
            .map(|(m, c)| (m.clone(), c.clone()));
        Poly::from_terms(self.n, terms)
    }

    /// `f = reduce(f) + Σ_i y_i·h_i`.
    fn split(&self, f: &Poly) -> Vec<Poly> {
        let mut h = vec![Poly::zero(self.n); self.t];
        for (m, c) in f.terms() {
            if let Some(i) = m.exponents()[..self.t].iter().position(|&e| e > 0) {
                let q = m.div(&Monomial::var(self.n, i)).unwrap();
                h[i].add_term(q, c.clone());
            }
        }
        h
    }

    fn active(&self) -> Vec<usize> {
        (self.t..self.n).collect()
    }
}

fn check_input(a: &Poly, gens: &[Poly]) -> Result<(), MembershipError> {
    let n = a.nvars();
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(MembershipError::VarMismatch);
    }
    let homogeneous = |p: &Poly| p.is_zero() || p.is_homogeneous();
    if !homogeneous(a) || !gens.iter().all(homogeneous) {
        return Err(MembershipError::NonHomogeneous);
    }
    Ok(())
}

/// Solves `a = Σ c_j g_j` with `c_j` supported on `active` variables.
/// `gens` pairs a caller index with a generator. Returns multipliers in
/// caller order when `want` is set, otherwise empty on success.
fn solve_system(a: &Poly, gens: &[(usize, Poly)], active: &[usize], n: usize, want: bool) -> Option<Vec<(usize, Poly)>> {
    let Some(deg) = a.degree() else {
        return Some(Vec::new());
    };
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for (j, g) in gens {
        let dg = g.degree().unwrap();
        if dg > deg {
            continue;
        }
        for m in Monomial::all_of_degree(active.len(), deg - dg) {
            let mut e = vec![0u32; n];
            for (k, &v) in active.iter().enumerate() {
                e[v] = m.exponents()[k];
            }
            columns.push((*j, Monomial::new(e)));
        }
    }
    let gen_of: BTreeMap<usize, &Poly> = gens.iter().map(|(j, g)| (*j, g)).collect();
    let mut rows: BTreeMap<Monomial, Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (col, (j, m)) in columns.iter().enumerate() {
        for (gm, gc) in gen_of[j].terms() {
            rows.entry(gm.mul(m)).or_default().push((col, gc.clone()));
        }
    }
    for (m, _) in a.terms() {
        if !rows.contains_key(m) {
            return None;
        }
    }
    let mut sys = SparseSystem::new(columns.len());
    for (m, entries) in rows {
        if !sys.add_equation(entries, a.coeff(&m)) {
            return None;
        }
    }
    if !want {
        return Some(Vec::new());
    }
    let x = sys.solution()?;
    let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
    for ((j, m), v) in columns.into_iter().zip(x) {
        out.entry(j).or_insert_with(|| Poly::zero(n)).add_term(m, v);
    }
    Some(out.into_iter().collect())
}

/// Decides and certifies `a ∈ ⟨gens⟩` for homogeneous input.
pub fn member_homogeneous(a: &Poly, gens: &[Poly]) -> Result<Option<MembershipCertificate>, MembershipError> {
    check_input(a, gens)?;
    let n = a.nvars();
    let mut multipliers = vec![Poly::zero(n); gens.len()];
    let done = |multipliers: Vec<Poly>| {
        let cert = MembershipCertificate { generators: gens.to_vec(), multipliers, target: a.clone() };
        debug_assert!(cert.verify(), "membership certificate does not re-multiply");
        Ok(Some(cert))
    };
    if a.is_zero() {
        return done(multipliers);
    }
    if let Some(j) = gens.iter().position(|g| g.degree() == Some(0)) {
        let c = gens[j].coeff(&Monomial::one(n));
        multipliers[j] = a.scale(&c.inv().unwrap());
        return done(multipliers);
    }
    let frame = Frame::new(n, gens);
    let a1 = frame.to_frame(a);
    let rest: Vec<(usize, Poly)> = (0..gens.len())
        .filter(|&j| !gens[j].is_zero() && gens[j].degree() != Some(1))
        .map(|j| (j, frame.to_frame(&gens[j])))
        .collect();
    let reduced: Vec<(usize, Poly)> =
        rest.iter().map(|(j, g)| (*j, frame.reduce(g))).filter(|(_, g)| !g.is_zero()).collect();
    let Some(sol) = solve_system(&frame.reduce(&a1), &reduced, &frame.active(), n, true) else {
        return Ok(None);
    };
    // a1 - Σ c_j g_j lies in ⟨y_1..y_t⟩; its split gives the linear multipliers
    let mut residual = a1;
    for (j, c) in &sol {
        let g = &rest.iter().find(|(i, _)| i == j).unwrap().1;
        residual = &residual - &(c * g);
        multipliers[*j] = frame.from_frame(c);
    }
    let h = frame.split(&residual);
    for (j, pos) in frame.coord_of.iter().enumerate() {
        if let Some(i) = pos {
            multipliers[j] = frame.from_frame(&h[*i]);
        }
    }
    done(multipliers)
}

/// Decision only: `∏ factors ∈ ⟨gens⟩`, reducing each factor before
/// multiplying. Much cheaper than a certificate for long products.
pub fn product_in_ideal(factors: &[Poly], gens: &[Poly]) -> Result<bool, MembershipError> {
    let Some(first) = factors.first() else {
        return Ok(gens.iter().any(|g| g.degree() == Some(0)));
    };
    let n = first.nvars();
    for f in factors {
        check_input(f, gens)?;
    }
    if gens.iter().any(|g| g.degree() == Some(0)) {
        return Ok(true);
    }
    let frame = Frame::new(n, gens);
    let mut prod = Poly::one(n);
    for f in factors {
        let r = frame.reduce(&frame.to_frame(f));
        if r.is_zero() {
            return Ok(true);
        }
        prod = &prod * &r;
    }
    let reduced: Vec<(usize, Poly)> = (0..gens.len())
        .filter(|&j| !gens[j].is_zero() && gens[j].degree() != Some(1))
        .map(|j| (j, frame.reduce(&frame.to_frame(&gens[j]))))
        .filter(|(_, g)| !g.is_zero())
        .collect();
    if reduced.is_empty() {
        return Ok(false);
    }
    Ok(solve_system(&prod, &reduced, &frame.active(), n, false).is_some())
}

/// `l ∈ span{l1, l2}` for linear forms.
pub fn linear_factor_member(l: &Poly, l1: &Poly, l2: &Poly) -> bool {
    let n = l.nvars();
    let row = |p: &Poly| p.linear_coeffs().unwrap_or_else(|| vec![FieldElem::zero(); n]);
    let base = Matrix::from_rows_with_cols(vec![row(l1), row(l2)], n);
    let all = Matrix::from_rows_with_cols(vec![row(l1), row(l2), row(l)], n);
    all.rank() == base.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// One system for the whole product.
    Direct,
    /// Products of at most this many factors, smallest subsets first.
    Subset(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEvidence {
    pub certificate: MembershipCertificate,
    /// 0-based factor indices, in subset mode.
    pub subset: Option<Vec<usize>>,
}

fn product(factors: &[Poly], idx: impl IntoIterator<Item = usize>, n: usize) -> Poly {
    idx.into_iter().fold(Poly::one(n), |acc, i| &acc * &factors[i])
}

/// Lexicographic `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if size <= n { Some((0..size).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - size + i {
                next[i] += 1;
                for k in i + 1..size {
                    next[k] = next[k - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Decides `∏ factors ∈ ⟨gens⟩`.
///
/// Subset mode first checks the full product: a subset product divides it,
/// so a non-member full product rules every subset out.
pub fn product_member(factors: &[Poly], gens: &[Poly], mode: ProductMode) -> Result<Option<ProductEvidence>, MembershipError> {
    let n = match (factors.first(), gens.first()) {
        (Some(f), _) => f.nvars(),
        (None, Some(g)) => g.nvars(),
        (None, None) => 0,
    };
    match mode {
        ProductMode::Direct => {
            if !product_in_ideal(factors, gens)? {
                return Ok(None);
            }
            let cert = member_homogeneous(&product(factors, 0..factors.len(), n), gens)?;
            Ok(cert.map(|certificate| ProductEvidence { certificate, subset: None }))
        }
        ProductMode::Subset(f_max) => {
            if f_max < 1 {
                return Err(MembershipError::BadBound);
            }
            if !product_in_ideal(factors, gens)? {
                return Ok(None);
            }
            for size in 1..=f_max.min(factors.len()) {
                for s in subsets(factors.len(), size) {
                    let chosen: Vec<Poly> = s.iter().map(|&i| factors[i].clone()).collect();
                    if product_in_ideal(&chosen, gens)? {
                        let target = product(factors, s.iter().copied(), n);
                        let certificate = member_homogeneous(&target, gens)?.expect("decision and certificate agree");
                        return Ok(Some(ProductEvidence { certificate, subset: Some(s) }));
                    }
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin(c: &[i64]) -> Poly {
        Poly::linear_ints(c)
    }

    /// Brute force: `a ∈ ⟨monomial gens⟩` iff each monomial of `a` is
    /// divisible by some generator monomial.
    fn monomial_ideal_member(a: &Poly, gens: &[Monomial]) -> bool {
        a.terms().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
    }

    #[test]
    fn counterexample_forms() {
        let c = member_homogeneous(&lin(&[1, 2]), &[lin(&[1, 0]), lin(&[0, 1])]).unwrap().unwrap();
        assert_eq!(c.multipliers, vec![Poly::constant(2, FieldElem::one()), Poly::constant(2, FieldElem::from_int(2))]);
    }

    #[test]
    fn self_membership() {
        let a = Poly::from_int_terms(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]);
        let c = member_homogeneous(&a, &[a.clone()]).unwrap().unwrap();
        assert_eq!(c.multipliers, vec![Poly::one(3)]);
    }

    #[test]
    fn square_outside_linear_ideal() {
        let z2 = Poly::from_int_terms(3, &[(1, &[0, 0, 2])]);
        assert!(member_homogeneous(&z2, &[lin(&[1, 0, 0]), lin(&[0, 1, 0])]).unwrap().is_none());
    }

    #[test]
    fn quadratic_generator_membership() {
        // x·(x²+yz) + y·(x²+yz) ∈ ⟨x²+yz⟩; x³ ∉
        let q = Poly::from_int_terms(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]);
        let a = &q * &lin(&[1, 1, 0]);
        assert!(member_homogeneous(&a, &[q.clone()]).unwrap().unwrap().verify());
        let x3 = Poly::from_int_terms(3, &[(1, &[3, 0, 0])]);
        assert!(member_homogeneous(&x3, &[q.clone()]).unwrap().is_none());
        // modulo x, x²+yz is yz, so y²z ∈ ⟨x, x²+yz⟩
        let y2z = Poly::from_int_terms(3, &[(1, &[0, 2, 1])]);
        assert!(member_homogeneous(&y2z, &[lin(&[1, 0, 0]), q]).unwrap().is_some());
    }

    #[test]
    fn dependent_linear_generators() {
        let gens = [lin(&[1, 1, 0]), lin(&[2, 2, 0]), lin(&[0, 0, 1])];
        let a = Poly::from_int_terms(3, &[(1, &[1, 0, 1]), (1, &[0, 1, 1])]);
        assert!(member_homogeneous(&a, &gens).unwrap().unwrap().verify());
        assert!(member_homogeneous(&lin(&[1, 0, 0]), &gens).unwrap().is_none());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let p = Poly::from_int_terms(2, &[(1, &[1, 0]), (1, &[2, 0])]);
        assert_eq!(member_homogeneous(&p, &[lin(&[1, 0])]), Err(MembershipError::NonHomogeneous));
    }

    #[test]
    fn linear_span_membership() {
        assert!(linear_factor_member(&lin(&[1, 2]), &lin(&[1, 0]), &lin(&[0, 1])));
        assert!(!linear_factor_member(&lin(&[0, 0, 1]), &lin(&[1, 0, 0]), &lin(&[0, 1, 0])));
        assert!(linear_factor_member(&lin(&[2, 0]), &lin(&[1, 0]), &lin(&[1, 1])));
    }

    #[test]
    fn product_modes() {
        let x = lin(&[1, 0, 0]);
        let y = lin(&[0, 1, 0]);
        let z = lin(&[0, 0, 1]);
        let e = product_member(&[x.clone(), y.clone()], &[x.clone()], ProductMode::Subset(2)).unwrap().unwrap();
        assert_eq!(e.subset, Some(vec![0]));
        assert!(product_member(&[lin(&[1, 1, 0]), lin(&[1, -1, 0])], &[x.clone(), y.clone()], ProductMode::Direct)
            .unwrap()
            .is_some());
        for mode in [ProductMode::Direct, ProductMode::Subset(2)] {
            assert!(product_member(&[z.clone(), z.clone()], &[x.clone(), y.clone()], mode).unwrap().is_none());
        }
        assert_eq!(product_member(&[x.clone()], &[x], ProductMode::Subset(0)), Err(MembershipError::BadBound));
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        let all: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 3).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
    }

    fn arb_monomial(n: usize, d: u32) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0..=d, n).prop_map(move |mut e| {
            // rescale to total degree exactly d
            let s: u32 = e.iter().sum();
            if s != d {
                e.iter_mut().for_each(|v| *v = 0);
                e[0] = d;
            }
            Monomial::new(e)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn agrees_with_monomial_divisibility(
            gens in proptest::collection::vec((1u32..=2).prop_flat_map(|d| arb_monomial(3, d)), 1..3),
            targets in proptest::collection::vec(arb_monomial(3, 3), 1..4),
            coeffs in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let a = Poly::from_terms(3, targets.iter().zip(&coeffs).map(|(m, &c)| (m.clone(), FieldElem::from_int(c))));
            let g: Vec<Poly> = gens.iter().map(|m| Poly::monomial(3, m.clone(), FieldElem::one())).collect();
            let got = member_homogeneous(&a, &g).unwrap();
            prop_assert_eq!(got.is_some(), monomial_ideal_member(&a, &gens));
            if let Some(c) = got { prop_assert!(c.verify()); }
            prop_assert_eq!(product_in_ideal(std::slice::from_ref(&a), &g).unwrap(), monomial_ideal_member(&a, &gens));
        }

        #[test]
        fn invariant_under_change_of_variables(
            seed in 0u64..1000,
            target_deg in 2u32..=3,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let gens = vec![
                crate::circuit::generate::random_linear(&mut rng, 3),
                crate::circuit::generate::random_irreducible_quadratic(&mut rng, 3),
            ];
            // half the time a member by construction
            let a = if rng.gen_bool(0.5) {
                let m0 = crate::circuit::generate::random_linear(&mut rng, 3).pow(target_deg - 1);
                let m1 = crate::circuit::generate::random_linear(&mut rng, 3).pow(target_deg - 2);
                &(&gens[0] * &m0) + &(&gens[1] * &m1)
            } else {
                crate::circuit::generate::random_linear(&mut rng, 3).pow(target_deg)
            };
            let p = crate::circuit::generate::random_injection(&mut rng, 3, 3);
            let moved: Vec<Poly> = gens.iter().map(|g| g.substitute_linear(&p).unwrap()).collect();
            let before = member_homogeneous(&a, &gens).unwrap();
            let after = member_homogeneous(&a.substitute_linear(&p).unwrap(), &moved).unwrap();
            prop_assert_eq!(before.is_some(), after.is_some());
            let mut more = gens.clone();
            more.push(crate::circuit::generate::random_linear(&mut rng, 3));
            if before.is_some() {
                prop_assert!(member_homogeneous(&a, &more).unwrap().is_some());
            }
        }

        #[test]
        fn subset_implies_direct(seed in 0u64..1000) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let factors: Vec<Poly> = (0..3).map(|_| crate::circuit::generate::random_linear(&mut rng, 4)).collect();
            let gens: Vec<Poly> = (0..2).map(|_| crate::circuit::generate::random_linear(&mut rng, 4)).collect();
            let direct = product_member(&factors, &gens, ProductMode::Direct).unwrap();
            let full = product_member(&factors, &gens, ProductMode::Subset(3)).unwrap();
            prop_assert_eq!(direct.is_some(), full.is_some());
            if let Some(e) = product_member(&factors, &gens, ProductMode::Subset(1)).unwrap() {
                prop_assert!(direct.is_some());
                prop_assert!(e.certificate.verify());
            }
        }
    }
}
