//! Incremental sparse elimination for large, very sparse linear systems.
//!
//! Rows are reduced one at a time against a growing echelon basis. Each
//! stored pivot row is normalized to 1 at its smallest column and has no
//! entries left of it, so reducing a new row left to right terminates.

use std::collections::{BTreeMap, HashMap};

use super::field::FieldElem;

#[derive(Default)]
pub struct SparseSystem {
    ncols: usize,
    pivots: HashMap<usize, (BTreeMap<usize, FieldElem>, FieldElem)>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, pivots: HashMap::new(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds `Σ coeff·x_col = rhs`. Returns `false` once the system has
    /// become inconsistent.
    pub fn add_equation(&mut self, entries: impl IntoIterator<Item = (usize, FieldElem)>, rhs: FieldElem) -> bool {
        if self.inconsistent {
            return false;
        }
        let mut row: BTreeMap<usize, FieldElem> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            if v.is_zero() {
                continue;
            }
            let e = row.entry(c).or_insert_with(FieldElem::zero);
            *e += &v;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        let mut rhs = rhs;
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, f)) = next else { break };
            let (prow, prhs) = &self.pivots[&c];
            for (j, v) in prow {
                let e = row.entry(*j).or_insert_with(FieldElem::zero);
                *e -= &(&f * v);
                if e.is_zero() {
                    row.remove(j);
                }
            }
            if !prhs.is_zero() {
                rhs -= &(&f * prhs);
            }
            cursor = c + 1;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return !self.inconsistent;
        };
        if !lv.is_one() {
            let inv = lv.inv().expect("nonzero pivot");
            for v in row.values_mut() {
                *v = &*v * &inv;
            }
            rhs = &rhs * &inv;
        }
        self.pivots.insert(lead, (row, rhs));
        true
    }

    /// One solution with free variables set to zero, if consistent.
    pub fn solution(&self) -> Option<Vec<FieldElem>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![FieldElem::zero(); self.ncols];
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        for c in cols {
            let (row, rhs) = &self.pivots[&c];
            let mut acc = rhs.clone();
            for (j, v) in row.range(c + 1..) {
                if !x[*j].is_zero() {
                    acc -= &(v * &x[*j]);
                }
            }
            x[c] = acc;
        }
        Some(x)
    }
}
