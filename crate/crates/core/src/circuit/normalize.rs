//! Removal of the common factor `gcd(C)` and the three-term coprimality
//! shortcut.

use crate::algebra::{associates, Poly};
use crate::verdict::{Certificate, Verdict};

use super::model::{Circuit, Term};

#[derive(Clone, Debug)]
pub struct NormalizationReport {
    /// Factors divided out of every term, as they appeared in the first term.
    pub removed_gcd_factors: Vec<Poly>,
    /// Set only for three-term circuits where two terms share a factor the
    /// third lacks.
    pub early_verdict: Option<Verdict>,
    pub circuit: Circuit,
}

fn find_associate(t: &Term, f: &Poly) -> Option<usize> {
    t.factors.iter().position(|g| associates(g, f))
}

/// Divides `f` out of `t`, where `t` holds an associate `g = c·f`; the
/// constant `c` moves into the scale.
fn divide_out(t: &mut Term, idx: usize, f: &Poly) {
    let g = t.factors.remove(idx);
    let c = g.associate_ratio(f).expect("associate");
    t.scale = &t.scale * &c;
}

/// Strips every factor shared (up to scalars) by all terms, then, for
/// `k = 3`, checks pairwise coprimality.
///
/// The result is zero iff the input is. When two of three terms share a
/// factor `g` that the third lacks, reducing modulo `g` leaves one nonzero
/// product, so the input is nonzero; that is reported as `early_verdict`.
pub fn normalize(c: &Circuit) -> NormalizationReport {
    let mut out = c.clone();
    let mut removed = Vec::new();
    'outer: loop {
        let Some(first) = out.terms.first() else { break };
        for f in first.factors.clone() {
            let hits: Option<Vec<usize>> = out.terms.iter().map(|t| find_associate(t, &f)).collect();
            if let Some(hits) = hits {
                for (t, idx) in out.terms.iter_mut().zip(hits) {
                    divide_out(t, idx, &f);
                }
                removed.push(f);
                continue 'outer;
            }
        }
        break;
    }
    let mut early = None;
    if out.k() == 3 {
        'pairs: for (a, b, lone) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            for f in &out.terms[a].factors {
                if find_associate(&out.terms[b], f).is_some() && find_associate(&out.terms[lone], f).is_none() {
                    early = Some(Verdict::nonzero(Certificate::EarlyNormalization {
                        shared: f.clone(),
                        pair: (a, b),
                        lone,
                    }));
                    break 'pairs;
                }
            }
        }
    }
    NormalizationReport { removed_gcd_factors: removed, early_verdict: early, circuit: out }
}

/// True when no two terms share an associate factor.
pub fn pairwise_coprime(c: &Circuit) -> bool {
    for (i, t) in c.terms.iter().enumerate() {
        for u in &c.terms[i + 1..] {
            if t.factors.iter().any(|f| find_associate(u, f).is_some()) {
                return false;
            }
        }
    }
    true
}
