//! Incremental row reduction over a finite field.

use std::collections::BTreeMap;

use crate::field::Field;

/// Rows kept in echelon form, keyed by pivot column, pivots normalized to 1.
pub(crate) struct Echelon {
    field: Field,
    rows: BTreeMap<usize, Vec<u64>>,
}

impl Echelon {
    pub(crate) fn new(field: &Field) -> Self {
        Echelon {
            field: field.clone(),
            rows: BTreeMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = &self.field;
        for (&pivot, row) in &self.rows {
            let c = v[pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row).skip(pivot) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        self.rows.insert(pivot, v);
        true
    }

    /// Reduced row echelon form, rows ordered by pivot.
    pub(crate) fn into_rref(self) -> Vec<Vec<u64>> {
        let f = self.field;
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: Vec<Vec<u64>> = self.rows.into_values().collect();
        for k in (0..rows.len()).rev() {
            let pivot = pivots[k];
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let c = row[pivot];
                if c != 0 {
                    for (x, &r) in row.iter_mut().zip(pivot_row).skip(pivot) {
                        if r != 0 {
                            *x = f.sub(*x, f.mul(c, r));
                        }
                    }
                }
            }
        }
        rows
    }
}
