use std::fmt;

use crate::algebra::FieldElem;

/// A point of projective space, stored with its first nonzero coordinate
/// scaled to 1 so that equal points compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vec<FieldElem>);

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn new(coords: Vec<FieldElem>) -> Option<ProjPoint> {
        let lead = coords.iter().find(|c| !c.is_zero())?.clone();
        let inv = lead.inv().unwrap();
        Some(ProjPoint(coords.iter().map(|c| c * &inv).collect()))
    }

    pub fn from_ints(coords: &[i64]) -> Option<ProjPoint> {
        ProjPoint::new(coords.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The projective line through two distinct points, kept in reduced
/// echelon form so membership costs one pass over the coordinates.
pub struct Line {
    rows: [Vec<FieldElem>; 2],
    pivots: [usize; 2],
}

impl Line {
    /// `None` when `p = q`.
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Option<Line> {
        let mut a = p.coords().to_vec();
        let mut b = q.coords().to_vec();
        let p0 = a.iter().position(|c| !c.is_zero())?;
        let f = b[p0].clone();
        if !f.is_zero() {
            for (bj, aj) in b.iter_mut().zip(&a) {
                *bj -= &(&f * aj);
            }
        }
        let p1 = b.iter().position(|c| !c.is_zero())?;
        let inv = b[p1].inv().unwrap();
        b.iter_mut().for_each(|v| *v = &*v * &inv);
        let g = a[p1].clone();
        if !g.is_zero() {
            for (aj, bj) in a.iter_mut().zip(&b) {
                *aj -= &(&g * bj);
            }
        }
        Some(Line { rows: [a, b], pivots: [p0, p1] })
    }

    pub fn contains(&self, r: &ProjPoint) -> bool {
        let c0 = &r.coords()[self.pivots[0]];
        let c1 = &r.coords()[self.pivots[1]];
        r.coords()
            .iter()
            .enumerate()
            .all(|(j, v)| v == &(&(c0 * &self.rows[0][j]) + &(c1 * &self.rows[1][j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let p = ProjPoint::from_ints(&[0, 2, -4]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&[0, -1, 2]).unwrap());
        assert_eq!(p.to_string(), "(0, 1, -2)");
        assert!(ProjPoint::from_ints(&[0, 0]).is_none());
    }

    #[test]
    fn line_membership() {
        let x = ProjPoint::from_ints(&[1, 0, 0]).unwrap();
        let y = ProjPoint::from_ints(&[0, 1, 0]).unwrap();
        let l = Line::through(&x, &y).unwrap();
        assert!(l.contains(&ProjPoint::from_ints(&[1, 2, 0]).unwrap()));
        assert!(!l.contains(&ProjPoint::from_ints(&[1, 2, 1]).unwrap()));
        assert!(Line::through(&x, &x).is_none());
    }

    proptest! {
        #[test]
        fn agrees_with_rank(a in proptest::collection::vec(-2i64..=2, 4), b in proptest::collection::vec(-2i64..=2, 4), c in proptest::collection::vec(-2i64..=2, 4)) {
            let (Some(p), Some(q), Some(r)) = (ProjPoint::from_ints(&a), ProjPoint::from_ints(&b), ProjPoint::from_ints(&c)) else {
                return Ok(());
            };
            if let Some(l) = Line::through(&p, &q) {
                let m = Matrix::from_rows(vec![p.coords().to_vec(), q.coords().to_vec(), r.coords().to_vec()]);
                prop_assert_eq!(l.contains(&r), m.rank() == 2);
            }
        }
    }
}
