//! Exhaustive line finders. Pairs are scanned in lexicographic order of
//! their position in the configuration, and every point is tested against
//! each candidate line, so "none" means no qualifying line exists.

use super::config::{Configuration, IncidenceError};
use super::point::{Line, ProjPoint};

/// Configuration points on the line through `p` and `q`, as
/// `(set name, point)`.
pub fn line_points<'a>(p: &ProjPoint, q: &ProjPoint, cfg: &'a Configuration) -> Result<Vec<(&'a str, &'a ProjPoint)>, IncidenceError> {
    let line = Line::through(p, q).ok_or(IncidenceError::SamePoint)?;
    Ok(cfg.points().filter(|(_, r)| line.contains(r)).map(|(i, r)| (cfg.set_name(i), r)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSetLine {
    pub p: ProjPoint,
    pub q: ProjPoint,
    /// The two set indices the line meets, ascending.
    pub sets: (usize, usize),
    /// Every configuration point on the line.
    pub points: Vec<(usize, ProjPoint)>,
}

/// First line through points of two different sets that meets exactly two
/// of the sets.
pub fn find_line_two_sets(cfg: &Configuration) -> Option<TwoSetLine> {
    let pts: Vec<(usize, &ProjPoint)> = cfg.points().collect();
    for (i, &(si, p)) in pts.iter().enumerate() {
        for &(sj, q) in &pts[i + 1..] {
            if si == sj {
                continue;
            }
            let line = Line::through(p, q).expect("distinct sets hold distinct points");
            let on: Vec<(usize, ProjPoint)> = pts.iter().filter(|(_, r)| line.contains(r)).map(|(s, r)| (*s, (*r).clone())).collect();
            if on.iter().all(|(s, _)| *s == si || *s == sj) {
                return Some(TwoSetLine { p: p.clone(), q: q.clone(), sets: (si.min(sj), si.max(sj)), points: on });
            }
        }
    }
    None
}

/// First pair whose line holds no other point of `points`. Repeated
/// points count once.
pub fn find_ordinary_line(points: &[ProjPoint]) -> Option<(ProjPoint, ProjPoint)> {
    let mut pts: Vec<&ProjPoint> = Vec::new();
    for p in points {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let line = Line::through(p, q).unwrap();
            if pts.iter().filter(|r| line.contains(r)).count() == 2 {
                return Some(((*p).clone(), (*q).clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::incidence::{hesse_points, random_configuration, RandomConfigParams};

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    /// Independent collinearity test via matrix rank.
    fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
        Matrix::from_rows(vec![a.coords().to_vec(), b.coords().to_vec(), c.coords().to_vec()]).rank() <= 2
    }

    fn cfg(sets: Vec<Vec<ProjPoint>>) -> Configuration {
        let n = sets[0][0].dim();
        Configuration::new(n, sets.into_iter().enumerate().map(|(i, s)| (format!("S{i}"), s)).collect()).unwrap()
    }

    #[test]
    fn counterexample_points() {
        let c = cfg(vec![vec![pt(&[1, 0])], vec![pt(&[0, 1])], vec![pt(&[1, 2])]]);
        assert!(find_line_two_sets(&c).is_none());
        let on = line_points(&pt(&[1, 0]), &pt(&[0, 1]), &c).unwrap();
        assert_eq!(on.len(), 3);
        let c3 = cfg(vec![vec![pt(&[1, 0, 0])], vec![pt(&[0, 1, 0])], vec![pt(&[1, 2, 0])]]);
        assert!(line_points(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &c3).unwrap().iter().any(|(_, p)| **p == pt(&[1, 2, 0])));
        assert_eq!(line_points(&pt(&[1, 0]), &pt(&[1, 0]), &c), Err(IncidenceError::SamePoint));
    }

    #[test]
    fn two_points_two_sets() {
        let c = cfg(vec![vec![pt(&[1, 0, 0])], vec![pt(&[0, 1, 0])]]);
        let l = find_line_two_sets(&c).unwrap();
        assert_eq!(l.sets, (0, 1));
        assert_eq!(l.points.len(), 2);
        let alone = cfg(vec![vec![pt(&[1, 0, 0]), pt(&[0, 1, 0])]]);
        assert_eq!(line_points(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &alone).unwrap().len(), 2);
    }

    #[test]
    fn hesse_has_no_ordinary_line() {
        let h = hesse_points();
        assert_eq!(h.len(), 9);
        for (i, p) in h.iter().enumerate() {
            for q in &h[i + 1..] {
                assert_eq!(h.iter().filter(|r| collinear(p, q, r)).count(), 3);
            }
        }
        assert!(find_ordinary_line(&h).is_none());
        for i in 0..9 {
            let mut fewer = h.clone();
            fewer.remove(i);
            assert!(find_ordinary_line(&fewer).is_some());
        }
    }

    #[test]
    fn triangle_has_ordinary_line() {
        let p = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        assert_eq!(find_ordinary_line(&p), Some((p[0].clone(), p[1].clone())));
    }

    #[test]
    fn finders_match_brute_force() {
        for seed in 0..30 {
            let params = RandomConfigParams { nvars: 4, sets: 3, max_per_set: 3, coord_bound: 1 };
            let Some(c) = random_configuration(seed, &params) else { continue };
            let pts: Vec<(usize, ProjPoint)> = c.points().map(|(s, p)| (s, p.clone())).collect();
            let mut expect = false;
            for (i, (si, p)) in pts.iter().enumerate() {
                for (sj, q) in &pts[i + 1..] {
                    if si == sj {
                        continue;
                    }
                    let touched: std::collections::BTreeSet<usize> =
                        pts.iter().filter(|(_, r)| collinear(p, q, r)).map(|(s, _)| *s).collect();
                    expect |= touched.len() == 2;
                }
            }
            assert_eq!(find_line_two_sets(&c).is_some(), expect, "seed {seed}");
        }
    }
}
