use super::{Matrix, RowEchelon, Scalar, SparseVec};
use crate::error::{Error, Result};

/// A subspace of `Q^ambient_dim` given by linearly independent basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dense_basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|b| b.to_dense(self.ambient_dim)).collect()
    }
}

fn row_echelon(m: &Matrix) -> RowEchelon {
    let mut e = RowEchelon::new(m.cols());
    for row in m.row_vecs() {
        if e.rank() == m.cols() {
            break;
        }
        e.insert(row.clone());
    }
    e
}

pub fn rank(m: &Matrix) -> usize {
    // eliminate along the shorter side
    if m.rows() < m.cols() {
        row_echelon(&m.transpose()).rank()
    } else {
        row_echelon(m).rank()
    }
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    let mut e = row_echelon(m);
    e.make_reduced();
    Subspace {
        ambient_dim: m.cols(),
        basis: e.null_space(),
    }
}

/// Echelon basis of the column space of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    let e = row_echelon(&m.transpose());
    Subspace {
        ambient_dim: m.rows(),
        basis: e.rows().to_vec(),
    }
}

fn check_square_zero(d_in: &Matrix, d_out: &Matrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch(format!(
            "outgoing differential has {} columns but incoming differential has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNotZero(format!(
            "{}x{} after {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    Ok(())
}

/// `dim ker(d_out) − rank(d_in)` for consecutive differentials.
pub fn cohomology_dim(d_in: &Matrix, d_out: &Matrix) -> Result<usize> {
    check_square_zero(d_in, d_out)?;
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// Cocycles modulo coboundaries, with a chosen complement basis of the
/// coboundaries inside the cocycles. Coordinates of a cocycle class are read
/// off by reducing against the combined echelon basis.
struct Quotient {
    echelon: RowEchelon,
    complement: Vec<SparseVec>,
}

impl Quotient {
    fn new(d_in: &Matrix, d_out: &Matrix) -> Result<Self> {
        check_square_zero(d_in, d_out)?;
        let mut echelon = RowEchelon::new(d_out.cols());
        for b in image_basis(d_in).basis {
            echelon.insert(b);
        }
        let mut complement = Vec::new();
        for z in kernel_basis(d_out).basis {
            let tag = SparseVec::unit(complement.len());
            if echelon.insert_tagged(z.clone(), tag).is_some() {
                complement.push(z);
            }
        }
        Ok(Self { echelon, complement })
    }

    fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinates of the class of `v`, or `None` if `v` is not a cocycle.
    fn coordinates(&self, v: SparseVec) -> Option<SparseVec> {
        let red = self.echelon.reduce(v, SparseVec::new());
        if !red.residual.is_zero() {
            return None;
        }
        let mut coords = red.tag;
        coords.scale(&-Scalar::from_integer(1.into()));
        Some(coords)
    }
}

/// Matrix of the map induced by `map_n` from `H(src) = ker src_d_out / im src_d_in`
/// to `H(tgt) = ker tgt_d_out / im tgt_d_in`, in the quotient bases obtained
/// by extending an echelon basis of the coboundaries to the cocycles.
pub fn induced_cohomology_map(
    map_n: &Matrix,
    src_d_in: &Matrix,
    src_d_out: &Matrix,
    tgt_d_in: &Matrix,
    tgt_d_out: &Matrix,
) -> Result<Matrix> {
    let src = Quotient::new(src_d_in, src_d_out)?;
    let tgt = Quotient::new(tgt_d_in, tgt_d_out)?;
    if map_n.cols() != src_d_out.cols() || map_n.rows() != tgt_d_out.cols() {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{} between cochain spaces of dimension {} and {}",
            map_n.rows(),
            map_n.cols(),
            src_d_out.cols(),
            tgt_d_out.cols()
        )));
    }
    for (j, b) in image_basis(src_d_in).basis.into_iter().enumerate() {
        match tgt.coordinates(map_n.mul_sparse(&b)) {
            Some(c) if c.is_zero() => {}
            _ => {
                return Err(Error::NotWellDefined(format!(
                    "coboundary basis vector {j} is not sent to a coboundary"
                )))
            }
        }
    }
    let mut columns = Vec::with_capacity(src.dim());
    for (j, z) in src.complement.iter().enumerate() {
        let image = map_n.mul_sparse(z);
        let coords = tgt.coordinates(image).ok_or_else(|| {
            Error::NotWellDefined(format!("cocycle representative {j} is not sent to a cocycle"))
        })?;
        columns.push(coords);
    }
    Matrix::from_columns(tgt.dim(), &columns)
}
