use std::collections::BTreeMap;

use num_traits::Zero;

use super::Scalar;

/// Sparse coordinate vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from entries in any order; duplicate indices are summed.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in entries {
            if v.is_zero() {
                continue;
            }
            *acc.entry(i).or_insert_with(Scalar::zero) += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        Self { entries }
    }

    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, Scalar::from_integer(1.into()))],
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn get(&self, index: usize) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&mut self, factor: &Scalar) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= factor;
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &SparseVec) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = rhs.next().unwrap();
                    merged.push((*j, factor * w));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = lhs.next().unwrap();
                    let (_, w) = rhs.next().unwrap();
                    let sum = v + factor * w;
                    if !sum.is_zero() {
                        merged.push((i, sum));
                    }
                }
                (Some(_), None) => merged.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = rhs.next().unwrap();
                    merged.push((*j, factor * w));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn dot_dense(&self, dense: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, v) in &self.entries {
            if !dense[*i].is_zero() {
                acc += v * &dense[*i];
            }
        }
        acc
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn add_scaled_cancels_and_merges() {
        let mut a = SparseVec::from_entries([(0, int(1)), (2, int(3))]);
        let b = SparseVec::from_entries([(1, int(1)), (2, int(1))]);
        a.add_scaled(&int(-3), &b);
        assert_eq!(a.entries(), &[(0, int(1)), (1, int(-3))]);
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let v = SparseVec::from_entries([(3, int(2)), (1, int(1)), (3, int(-2))]);
        assert_eq!(v.entries(), &[(1, int(1))]);
    }
}
