//! Exact rational linear algebra.
//!
//! Matrices are stored as sorted sparse rows over [`Scalar`]; every rank,
//! kernel and quotient computation is exact. Cochain differentials are
//! overwhelmingly sparse, so elimination works on sparse rows throughout.

mod echelon;
mod matrix;
mod quotient;
mod sparse;

pub use echelon::RowEchelon;
pub use matrix::Matrix;
pub use quotient::{
    cohomology_dim, image_basis, induced_cohomology_map, kernel_basis, rank, Subspace,
};
pub use sparse::SparseVec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"7"`, `"-3/4"` or `" 2 / 6 "`. A zero denominator is rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let unsigned = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !valid(num) || !unsigned(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
