use std::collections::BTreeMap;

use num_traits::Zero;

use super::{int, Scalar, SparseVec};
use crate::error::{Error, Result};

/// Exact rational matrix with sparse row storage.
///
/// Logically a `rows × cols` row-major array; only nonzero entries are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.max_index().is_some_and(|m| m >= cols)) {
            return Err(Error::ShapeMismatch(format!(
                "row {bad} has an entry beyond column {cols}"
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = if cols == 0 {
            vec![SparseVec::new(); rows]
        } else {
            entries.chunks(cols).map(SparseVec::from_dense).collect()
        };
        Ok(Self { rows, cols, data })
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                SparseVec::from_entries(r.iter().enumerate().map(|(j, v)| (j, int(*v))))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[r].push((c, v));
        }
        let data = buckets.into_iter().map(SparseVec::from_entries).collect();
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            buckets[c].push((r, v.clone()));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row.entries() {
                    for (j, b) in rhs.data[*k].entries() {
                        *acc.entry(*j).or_insert_with(Scalar::zero) += a * b;
                    }
                }
                SparseVec::from_entries(acc)
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.data.iter().map(|r| r.dot_dense(v)).collect())
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let dense = v.to_dense(self.cols);
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot_dense(&dense))),
        )
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.combine(rhs, &int(1))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.combine(rhs, &int(-1))
    }

    fn combine(&self, rhs: &Matrix, factor: &Scalar) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut out = a.clone();
                out.add_scaled(factor, b);
                out
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, factor: &Scalar) -> Matrix {
        let mut out = self.clone();
        for row in &mut out.data {
            row.scale(factor);
        }
        out
    }

    /// Assembles a block matrix. `blocks` lists `(block_row, block_col, matrix)`;
    /// absent blocks are zero.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[(usize, usize, &Matrix)]) -> Result<Matrix> {
        let row_offsets = offsets(row_sizes);
        let col_offsets = offsets(col_sizes);
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut triplets = Vec::new();
        for (bi, bj, m) in blocks {
            if m.rows != row_sizes[*bi] || m.cols != col_sizes[*bj] {
                return Err(Error::ShapeMismatch(format!(
                    "block ({bi}, {bj}) is {}x{} but slot is {}x{}",
                    m.rows, m.cols, row_sizes[*bi], col_sizes[*bj]
                )));
            }
            for (r, c, v) in m.triplets() {
                triplets.push((row_offsets[*bi] + r, col_offsets[*bj] + c, v.clone()));
            }
        }
        Matrix::from_triplets(rows, cols, triplets)
    }

    /// The sub-matrix of rows `r0..r1` and columns `c0..c1`.
    pub fn slice(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let data = self.data[r0..r1]
            .iter()
            .map(|row| {
                SparseVec::from_entries(
                    row.entries()
                        .iter()
                        .filter(|(c, _)| (c0..c1).contains(c))
                        .map(|(c, v)| (c - c0, v.clone())),
                )
            })
            .collect();
        Matrix {
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        }
    }

    /// Kronecker product; the row index of `self` is the most significant.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let data = self
            .data
            .iter()
            .flat_map(|a| {
                rhs.data.iter().map(move |b| {
                    let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                    for (i, x) in a.entries() {
                        for (j, y) in b.entries() {
                            entries.push((i * rhs.cols + j, x * y));
                        }
                    }
                    SparseVec::from_entries(entries)
                })
            })
            .collect();
        Matrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Result<Matrix> {
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.entries().iter().map(move |(i, v)| (*i, j, v.clone())));
        Matrix::from_triplets(rows, columns.len(), triplets)
    }

    pub fn column(&self, c: usize) -> SparseVec {
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .map(|(r, row)| (r, row.get(c)))
                .filter(|(_, v)| !v.is_zero()),
        )
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let here = acc;
            acc += s;
            here
        })
        .collect()
}
