use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FieldElem, QuadExt};

use super::config::Configuration;
use super::point::ProjPoint;

/// The nine inflection points of `x³ + y³ + z³` over `Q(√-3)`.
pub fn hesse_points() -> Vec<ProjPoint> {
    let w = QuadExt::new(-3).unwrap().omega().unwrap();
    let w2 = &w * &w;
    let (zero, one) = (FieldElem::zero(), FieldElem::one());
    let roots = [one.clone(), w, w2];
    let mut out = Vec::with_capacity(9);
    for shape in 0..3 {
        for r in &roots {
            let m = -r;
            let coords = match shape {
                0 => vec![zero.clone(), one.clone(), m],
                1 => vec![one.clone(), zero.clone(), m],
                _ => vec![one.clone(), m, zero.clone()],
            };
            out.push(ProjPoint::new(coords).unwrap());
        }
    }
    out
}

/// The Hesse points as one set per coordinate pattern.
pub fn hesse_configuration() -> Configuration {
    let pts = hesse_points();
    let sets = pts.chunks(3).zip(["A", "B", "C"]).map(|(c, n)| (n.to_string(), c.to_vec())).collect();
    let mut cfg = Configuration::new(3, sets).unwrap();
    cfg.ext = Some(-3);
    cfg
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfigParams {
    pub nvars: usize,
    pub sets: usize,
    pub max_per_set: usize,
    /// Coordinates are drawn from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
}

impl Default for RandomConfigParams {
    fn default() -> Self {
        RandomConfigParams { nvars: 6, sets: 3, max_per_set: 4, coord_bound: 1 }
    }
}

fn draw_point(rng: &mut impl Rng, n: usize, bound: i64) -> ProjPoint {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Some(p) = ProjPoint::from_ints(&c) {
            return p;
        }
    }
}

/// Disjoint colored configuration; points already used by an earlier set
/// are redrawn. `None` when the box is too small to fill every set.
pub fn random_configuration(seed: u64, params: &RandomConfigParams) -> Option<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: Vec<ProjPoint> = Vec::new();
    let mut sets = Vec::with_capacity(params.sets);
    for s in 0..params.sets {
        let size = rng.gen_range(1..=params.max_per_set);
        let mut pts = Vec::with_capacity(size);
        let mut tries = 0;
        while pts.len() < size {
            tries += 1;
            if tries > 100 * size {
                return None;
            }
            let p = draw_point(&mut rng, params.nvars, params.coord_bound);
            if !used.contains(&p) {
                used.push(p.clone());
                pts.push(p);
            }
        }
        sets.push((format!("S{}", s + 1), pts));
    }
    Configuration::new(params.nvars, sets).ok()
}

/// `count` points from the box, repeats allowed.
pub fn random_points(seed: u64, nvars: usize, count: usize, bound: i64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| draw_point(&mut rng, nvars, bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::incidence::{find_line_two_sets, find_ordinary_line, span_dim, span_dim_of};

    #[test]
    fn hesse_is_planar_and_on_the_cubic() {
        let h = hesse_points();
        let rows: Vec<Vec<FieldElem>> = h.iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(Matrix::from_rows(rows).rank(), 3);
        for p in &h {
            let cube: FieldElem = p.coords().iter().map(|c| c * &(c * c)).fold(FieldElem::zero(), |a, b| &a + &b);
            assert!(cube.is_zero(), "{p}");
        }
        assert_eq!(span_dim(&hesse_configuration()).vector, 3);
    }

    #[test]
    fn generator_is_deterministic_and_disjoint() {
        let p = RandomConfigParams::default();
        assert_eq!(random_configuration(7, &p), random_configuration(7, &p));
        let c = random_configuration(7, &p).unwrap();
        let all = c.all_points();
        for (i, a) in all.iter().enumerate() {
            assert!(!all[i + 1..].contains(a));
        }
    }

    #[test]
    fn high_span_colored_configurations_have_two_set_lines() {
        let mut checked = 0;
        for seed in 0..200u64 {
            let params = RandomConfigParams { nvars: 6 + (seed % 2) as usize, sets: 2 + (seed % 3) as usize, max_per_set: 4, coord_bound: 1 };
            let Some(c) = random_configuration(seed, &params) else { continue };
            if span_dim(&c).vector < 6 {
                continue;
            }
            checked += 1;
            assert!(find_line_two_sets(&c).is_some(), "counterexample at seed {seed}");
        }
        assert!(checked > 50);
    }

    #[test]
    fn non_planar_point_sets_have_ordinary_lines() {
        let mut checked = 0;
        for seed in 0..200u64 {
            let pts = random_points(seed, 4, 4 + (seed % 8) as usize, 1);
            if span_dim_of(&pts, 4).vector < 4 {
                continue;
            }
            checked += 1;
            assert!(find_ordinary_line(&pts).is_some(), "counterexample at seed {seed}");
        }
        assert!(checked > 50);
    }
}
