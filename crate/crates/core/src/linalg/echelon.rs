use std::collections::BTreeMap;

use num_traits::One;

use super::{Scalar, SparseVec};

/// Incrementally built row-echelon basis of a subspace of `Q^dim`.
///
/// Every stored row has leading coefficient 1 at a distinct pivot column.
/// Rows optionally carry a tag vector recording which inserted generators
/// they are built from, so reductions can report coordinates.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    dim: usize,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

/// Outcome of reducing a vector against the basis: what is left over, and
/// the tag combination of the rows that were subtracted.
pub struct Reduction {
    pub residual: SparseVec,
    pub tag: SparseVec,
}

impl RowEchelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Subtracts pivot rows until no pivot column of `v` is left.
    pub fn reduce(&self, v: SparseVec, tag: SparseVec) -> Reduction {
        let mut v = v;
        let mut tag = tag;
        let mut cursor = 0usize;
        loop {
            let hit = v.entries()[cursor.min(v.nnz())..]
                .iter()
                .enumerate()
                .find(|(_, (c, _))| self.pivot_row.contains_key(c))
                .map(|(off, (c, coeff))| (cursor + off, *c, coeff.clone()));
            let Some((pos, col, coeff)) = hit else { break };
            let r = self.pivot_row[&col];
            let factor = -coeff;
            v.add_scaled(&factor, &self.rows[r]);
            tag.add_scaled(&factor, &self.tags[r]);
            // entries before `pos` are untouched since pivot rows start at `col`
            cursor = pos;
        }
        Reduction { residual: v, tag }
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        self.insert_tagged(v, SparseVec::new())
    }

    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Option<usize> {
        let Reduction {
            mut residual,
            mut tag,
        } = self.reduce(v, tag);
        let (col, lead) = residual.leading()?.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            residual.scale(&inv);
            tag.scale(&inv);
        }
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(residual);
        self.tags.push(tag);
        Some(col)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), SparseVec::new()).residual.is_zero()
    }

    /// Brings the basis to reduced row-echelon form: every pivot column is
    /// zero outside its own row.
    pub fn make_reduced(&mut self) {
        let order: Vec<(usize, usize)> = self.pivot_row.iter().rev().map(|(c, r)| (*c, *r)).collect();
        for (col, r) in order {
            let row = std::mem::take(&mut self.rows[r]);
            let tag = std::mem::take(&mut self.tags[r]);
            // the leading entry is skipped by reducing only the tail
            let (lead, tail): (Vec<_>, Vec<_>) = row
                .into_entries()
                .into_iter()
                .partition(|(c, _)| *c == col);
            let reduced = self.reduce(SparseVec::from_entries(tail), tag);
            let mut full = reduced.residual.into_entries();
            full.extend(lead);
            self.rows[r] = SparseVec::from_entries(full);
            self.tags[r] = reduced.tag;
        }
    }

    /// Basis of the null space of the row space, i.e. of `{x : row · x = 0}`.
    /// Requires [`Self::make_reduced`] to have been called.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut columns: BTreeMap<usize, Vec<(usize, Scalar)>> = (0..self.dim)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|c| (c, vec![(c, Scalar::one())]))
            .collect();
        for (col, r) in &self.pivot_row {
            for (c, v) in self.rows[*r].entries() {
                if c == col {
                    continue;
                }
                if let Some(entries) = columns.get_mut(c) {
                    entries.push((*col, -v.clone()));
                }
            }
        }
        columns.into_values().map(SparseVec::from_entries).collect()
    }

    #[cfg(test)]
    pub(crate) fn debug_assert_reduced(&self) {
        if cfg!(debug_assertions) {
            for (col, r) in &self.pivot_row {
                for (other_col, other) in &self.pivot_row {
                    if other != r {
                        debug_assert!(num_traits::Zero::is_zero(&self.rows[*other].get(*col)), "not reduced at column {other_col}");
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn v(entries: &[i64]) -> SparseVec {
        SparseVec::from_dense(&entries.iter().map(|x| int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn insertion_detects_dependence() {
        let mut e = RowEchelon::new(3);
        assert_eq!(e.insert(v(&[1, 2, 3])), Some(0));
        assert_eq!(e.insert(v(&[2, 4, 6])), None);
        assert_eq!(e.insert(v(&[0, 0, 5])), Some(2));
        assert!(e.contains(&v(&[1, 2, 0])));
        assert!(!e.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn null_space_of_single_equation() {
        let mut e = RowEchelon::new(2);
        e.insert(v(&[1, 1]));
        e.make_reduced();
        e.debug_assert_reduced();
        assert_eq!(e.null_space(), vec![v(&[-1, 1])]);
    }

    #[test]
    fn tags_track_generators() {
        let mut e = RowEchelon::new(2);
        e.insert_tagged(v(&[1, 1]), SparseVec::unit(0));
        e.insert_tagged(v(&[1, -1]), SparseVec::unit(1));
        // (3, 1) = 2·(1,1) + 1·(1,-1)
        let red = e.reduce(v(&[3, 1]), SparseVec::new());
        assert!(red.residual.is_zero());
        let mut coords = red.tag;
        coords.scale(&int(-1));
        assert_eq!(coords, v(&[2, 1]));
    }
}
