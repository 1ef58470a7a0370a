//! Seeded circuit generators for test corpora.
//!
//! Zero circuits are built from a handful of hand-checked vanishing
//! templates, optionally padded with a shared factor, then pushed through a
//! random injective linear map into more variables. The template is
//! returned alongside so a checker can expand it independently.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FieldElem, Matrix, Monomial, Poly, QuadExt};
use crate::quadratic::quad_rank;

use super::model::{Circuit, Term};

/// Hand-verified vanishing circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroTemplate {
    /// `(x+y)(x-y) - x·x + y·y`
    DifferenceOfSquares,
    /// `x + y - (x+y)`
    LinearTriple,
    /// `(x+y)(x+2y) - x(x+3y) - 2y·y`
    LinearQuadratic,
    /// `(x-y)(x-ωy)(x-ω²y) - x·x·x + y·y·y` over `Q(√-3)`
    CubeRoots,
    /// `x·x + y·z - (x²+yz)`
    QuadraticSplit,
    /// `x·y + z·w - (xy+zw)`
    RankFourQuadratic,
    /// `(x²+yz)(x²-yz) - x·x·x·x + y·y·z·z`
    QuadraticProduct,
    /// `(x²+yz)² - (x²-yz)² - 4·x·x·y·z`
    QuadraticSquares,
    /// `s·f₁⋯f_m - s·(associates of f₁⋯f_m, permuted)`
    TwoTermSwap,
}

impl ZeroTemplate {
    pub const ALL: [ZeroTemplate; 9] = [
        ZeroTemplate::DifferenceOfSquares,
        ZeroTemplate::LinearTriple,
        ZeroTemplate::LinearQuadratic,
        ZeroTemplate::CubeRoots,
        ZeroTemplate::QuadraticSplit,
        ZeroTemplate::RankFourQuadratic,
        ZeroTemplate::QuadraticProduct,
        ZeroTemplate::QuadraticSquares,
        ZeroTemplate::TwoTermSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZeroTemplate::DifferenceOfSquares => "difference-of-squares",
            ZeroTemplate::LinearTriple => "linear-triple",
            ZeroTemplate::LinearQuadratic => "linear-quadratic",
            ZeroTemplate::CubeRoots => "cube-roots",
            ZeroTemplate::QuadraticSplit => "quadratic-split",
            ZeroTemplate::RankFourQuadratic => "rank-four-quadratic",
            ZeroTemplate::QuadraticProduct => "quadratic-product",
            ZeroTemplate::QuadraticSquares => "quadratic-squares",
            ZeroTemplate::TwoTermSwap => "two-term-swap",
        }
    }

    pub fn k(self) -> usize {
        if self == ZeroTemplate::TwoTermSwap {
            2
        } else {
            3
        }
    }

    /// Variables the template uses before embedding.
    pub fn nvars(self) -> usize {
        match self {
            ZeroTemplate::DifferenceOfSquares
            | ZeroTemplate::LinearTriple
            | ZeroTemplate::LinearQuadratic
            | ZeroTemplate::CubeRoots => 2,
            ZeroTemplate::RankFourQuadratic => 4,
            _ => 3,
        }
    }

    pub fn max_factor_degree(self) -> u32 {
        match self {
            ZeroTemplate::DifferenceOfSquares
            | ZeroTemplate::LinearTriple
            | ZeroTemplate::LinearQuadratic
            | ZeroTemplate::CubeRoots => 1,
            _ => 2,
        }
    }

    /// The template circuit. `TwoTermSwap` draws its factors from `rng`.
    pub fn circuit(self, rng: &mut impl Rng) -> Circuit {
        let one = FieldElem::one;
        let neg = || FieldElem::from_int(-1);
        let l = Poly::linear_ints;
        let q = Poly::from_int_terms;
        let t = Term::new;
        let (n, terms) = match self {
            ZeroTemplate::DifferenceOfSquares => (
                2,
                vec![
                    t(one(), vec![l(&[1, 1]), l(&[1, -1])]),
                    t(neg(), vec![l(&[1, 0]), l(&[1, 0])]),
                    t(one(), vec![l(&[0, 1]), l(&[0, 1])]),
                ],
            ),
            ZeroTemplate::LinearTriple => (
                2,
                vec![t(one(), vec![l(&[1, 0])]), t(one(), vec![l(&[0, 1])]), t(neg(), vec![l(&[1, 1])])],
            ),
            ZeroTemplate::LinearQuadratic => (
                2,
                vec![
                    t(one(), vec![l(&[1, 1]), l(&[1, 2])]),
                    t(neg(), vec![l(&[1, 0]), l(&[1, 3])]),
                    t(FieldElem::from_int(-2), vec![l(&[0, 1]), l(&[0, 1])]),
                ],
            ),
            ZeroTemplate::CubeRoots => {
                let om = QuadExt::new(-3).unwrap().omega().unwrap();
                let om2 = &om * &om;
                let lin = |c: FieldElem| Poly::linear(&[FieldElem::one(), -c]);
                (
                    2,
                    vec![
                        t(one(), vec![lin(FieldElem::one()), lin(om), lin(om2)]),
                        t(neg(), vec![l(&[1, 0]), l(&[1, 0]), l(&[1, 0])]),
                        t(one(), vec![l(&[0, 1]), l(&[0, 1]), l(&[0, 1])]),
                    ],
                )
            }
            ZeroTemplate::QuadraticSplit => (
                3,
                vec![
                    t(one(), vec![l(&[1, 0, 0]), l(&[1, 0, 0])]),
                    t(one(), vec![l(&[0, 1, 0]), l(&[0, 0, 1])]),
                    t(neg(), vec![q(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])])]),
                ],
            ),
            ZeroTemplate::RankFourQuadratic => (
                4,
                vec![
                    t(one(), vec![l(&[1, 0, 0, 0]), l(&[0, 1, 0, 0])]),
                    t(one(), vec![l(&[0, 0, 1, 0]), l(&[0, 0, 0, 1])]),
                    t(neg(), vec![q(4, &[(1, &[1, 1, 0, 0]), (1, &[0, 0, 1, 1])])]),
                ],
            ),
            ZeroTemplate::QuadraticProduct => {
                let x = l(&[1, 0, 0]);
                let y = l(&[0, 1, 0]);
                let z = l(&[0, 0, 1]);
                (
                    3,
                    vec![
                        t(
                            one(),
                            vec![
                                q(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]),
                                q(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]),
                            ],
                        ),
                        t(neg(), vec![x.clone(), x.clone(), x.clone(), x]),
                        t(one(), vec![y.clone(), y, z.clone(), z]),
                    ],
                )
            }
            ZeroTemplate::QuadraticSquares => {
                let plus = q(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]);
                let minus = q(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]);
                (
                    3,
                    vec![
                        t(one(), vec![plus.clone(), plus]),
                        t(neg(), vec![minus.clone(), minus]),
                        t(FieldElem::from_int(-4), vec![l(&[1, 0, 0]), l(&[1, 0, 0]), l(&[0, 1, 0]), l(&[0, 0, 1])]),
                    ],
                )
            }
            ZeroTemplate::TwoTermSwap => {
                let n = 3;
                let count = rng.gen_range(1..=3);
                let factors: Vec<Poly> = (0..count)
                    .map(|_| if rng.gen_bool(0.3) { random_irreducible_quadratic(rng, n) } else { random_linear(rng, n) })
                    .collect();
                let scale = random_nonzero(rng, 3);
                let mut swapped = Vec::new();
                let mut other_scale = -&scale;
                for f in &factors {
                    let c = random_nonzero(rng, 2);
                    swapped.push(f.scale(&c));
                    other_scale = &other_scale / &c;
                }
                swapped.shuffle(rng);
                (n, vec![t(scale, factors), t(other_scale, swapped)])
            }
        };
        let mut c = Circuit::new(n, terms);
        if self == ZeroTemplate::CubeRoots {
            c.ext = Some(-3);
        }
        c
    }
}

fn random_nonzero(rng: &mut impl Rng, bound: i64) -> FieldElem {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return FieldElem::from_int(v);
        }
    }
}

pub(crate) fn random_linear(rng: &mut impl Rng, n: usize) -> Poly {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let p = Poly::linear_ints(&c);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_quadratic(rng: &mut impl Rng, n: usize) -> Poly {
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            // sparse-ish: about half the monomials present
            if rng.gen_bool(0.5) {
                terms.push((Monomial::new(e), FieldElem::from_int(rng.gen_range(-3..=3))));
            }
        }
    }
    Poly::from_terms(n, terms)
}

/// A quadratic of Gram rank ≥ 3; needs `n ≥ 3`.
pub(crate) fn random_irreducible_quadratic(rng: &mut impl Rng, n: usize) -> Poly {
    assert!(n >= 3, "irreducible quadratics need at least 3 variables");
    loop {
        let p = random_quadratic(rng, n);
        if !p.is_zero() && quad_rank(&p).unwrap() >= 3 {
            return p;
        }
    }
}

/// A random `m × n` integer matrix of rank `m` (`m ≤ n`).
pub(crate) fn random_injection(rng: &mut impl Rng, m: usize, n: usize) -> Matrix {
    assert!(m <= n);
    loop {
        let rows: Vec<Vec<FieldElem>> =
            (0..m).map(|_| (0..n).map(|_| FieldElem::from_int(rng.gen_range(-2..=2))).collect()).collect();
        let a = Matrix::from_rows(rows);
        if a.rank() == m {
            return a;
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZeroParams {
    /// Target variable count after embedding.
    pub nvars: usize,
    /// Restrict to templates with this top fanin.
    pub k: Option<usize>,
    /// Restrict to one template.
    pub template: Option<ZeroTemplate>,
    /// Maximum total degree after padding.
    pub max_degree: u32,
    /// Allow multiplying every term by a shared random factor.
    pub pad: bool,
}

impl Default for ZeroParams {
    fn default() -> Self {
        ZeroParams { nvars: 4, k: None, template: None, max_degree: 8, pad: true }
    }
}

/// A zero circuit together with how it was made.
#[derive(Clone, Debug)]
pub struct ZeroCircuit {
    pub circuit: Circuit,
    pub template: ZeroTemplate,
    /// The template before padding and embedding.
    pub base: Circuit,
    /// Template variables (rows) to circuit variables (columns).
    pub embedding: Matrix,
}

pub fn gen_zero_circuit(seed: u64, params: &ZeroParams) -> ZeroCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<ZeroTemplate> = ZeroTemplate::ALL
        .into_iter()
        .filter(|t| params.template.is_none_or(|want| want == *t))
        .filter(|t| params.k.is_none_or(|k| k == t.k()))
        .filter(|t| t.nvars() <= params.nvars)
        .collect();
    assert!(!candidates.is_empty(), "no zero template fits {params:?}");
    let template = *candidates.choose(&mut rng).unwrap();
    let base = template.circuit(&mut rng);
    let mut padded = base.clone();
    let deg = padded.degree();
    if params.pad && deg < params.max_degree && rng.gen_bool(0.4) {
        let m = padded.nvars;
        let f = if m >= 3 && deg + 2 <= params.max_degree && rng.gen_bool(0.3) {
            random_irreducible_quadratic(&mut rng, m)
        } else {
            random_linear(&mut rng, m)
        };
        for t in &mut padded.terms {
            // an associate of the shared factor, scale compensated
            let c = random_nonzero(&mut rng, 2);
            t.factors.push(f.scale(&c));
            t.scale = &t.scale / &c;
        }
    }
    for t in &mut padded.terms {
        t.factors.shuffle(&mut rng);
    }
    padded.terms.shuffle(&mut rng);
    let embedding = random_injection(&mut rng, padded.nvars, params.nvars);
    let mut circuit = padded.substitute(&embedding).expect("shape");
    circuit.homogeneous = true;
    ZeroCircuit { circuit, template, base, embedding }
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub nvars: usize,
    pub k: usize,
    pub r: u32,
    /// Total degree of every term.
    pub degree: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { nvars: 4, k: 3, r: 2, degree: 4 }
    }
}

/// A homogeneous circuit with random factors; reproducible from `seed`.
pub fn gen_random_circuit(seed: u64, params: &RandomParams) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.nvars;
    let max_r = if n >= 3 { params.r.min(2) } else { 1 };
    let terms = (0..params.k)
        .map(|_| {
            let mut factors = Vec::new();
            let mut left = params.degree;
            while left > 0 {
                let d = if max_r >= 2 && left >= 2 && rng.gen_bool(0.35) { 2 } else { 1 };
                factors.push(if d == 2 { random_irreducible_quadratic(&mut rng, n) } else { random_linear(&mut rng, n) });
                left -= d;
            }
            Term::new(random_nonzero(&mut rng, 3), factors)
        })
        .collect();
    Circuit::new(n, terms)
}

/// A zero circuit with one term's scale bumped by one: `C + F_i`, which is
/// never zero. These pass many local conditions while being nonzero.
pub fn gen_perturbed_zero(seed: u64, params: &ZeroParams) -> Circuit {
    let z = gen_zero_circuit(seed, params);
    let mut c = z.circuit;
    let i = (seed as usize) % c.k();
    c.terms[i].scale = &c.terms[i].scale + &FieldElem::one();
    if c.terms[i].scale.is_zero() {
        c.terms[i].scale = FieldElem::from_int(2);
    }
    c
}
