//! Associative algebras, bimodules and linear maps given by structure constants.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::report::{CheckOutcome, ValidationReport};

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::from_integer(1.into());
    v
}

pub fn vec_add(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Dense rank-3 tensor `t[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self {
            dims: [d0, d1, d2],
            data: vec![Scalar::zero(); d0 * d1 * d2],
        }
    }

    pub fn from_entries<I>(dims: [usize; 3], entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 3], Scalar)>,
    {
        let mut t = Self::zeros(dims[0], dims[1], dims[2]);
        for (idx, v) in entries {
            if idx.iter().zip(&dims).any(|(i, d)| i >= d) {
                return Err(Error::ShapeMismatch(format!(
                    "tensor index {idx:?} outside dimensions {dims:?}"
                )));
            }
            *t.get_mut(idx[0], idx[1], idx[2]) += v;
        }
        Ok(t)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j, k)]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        let o = self.offset(i, j, k);
        &mut self.data[o]
    }

    /// The vector `t[i][j][·]`.
    pub fn fiber(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j, 0);
        &self.data[o..o + self.dims[2]]
    }

    pub fn set_fiber(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let o = self.offset(i, j, 0);
        self.data[o..o + self.dims[2]].clone_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzero_entries(&self) -> Vec<([usize; 3], Scalar)> {
        let [d0, d1, d2] = self.dims;
        let mut out = Vec::new();
        for i in 0..d0 {
            for j in 0..d1 {
                for k in 0..d2 {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push(([i, j, k], v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Bilinear evaluation `Σ u_i v_j t[i][j][·]`.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dims[2]);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui * vj;
                for (o, t) in out.iter_mut().zip(self.fiber(i, j)) {
                    if !t.is_zero() {
                        *o += &w * t;
                    }
                }
            }
        }
        out
    }
}

/// Finite-dimensional associative algebra: `e_i · e_j = Σ_k c[i][j][k] e_k`.
///
/// Units are not required; when one is known it is carried as metadata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub name: String,
    pub basis_labels: Vec<String>,
    mult: Tensor3,
    pub unit: Option<Vector>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, basis_labels: Vec<String>, mult: Tensor3) -> Result<Self> {
        let n = basis_labels.len();
        if mult.dims() != [n, n, n] {
            return Err(Error::ShapeMismatch(format!(
                "structure constants {:?} for an algebra of dimension {n}",
                mult.dims()
            )));
        }
        Ok(Self {
            name: name.into(),
            basis_labels,
            mult,
            unit: None,
        })
    }

    pub fn with_unit(mut self, unit: Vector) -> Result<Self> {
        if unit.len() != self.dim() {
            return Err(Error::ShapeMismatch("unit has wrong length".into()));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn zero_product(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            basis_labels: default_labels("e", dim),
            mult: Tensor3::zeros(dim, dim, dim),
            unit: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.mult
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        self.mult.fiber(i, j)
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.mult.apply(u, v)
    }
}

pub fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("{prefix}{i}")).collect()
}

/// Bimodule over an algebra: `l(e_i, m_p) = Σ_q left[i][p][q] m_q` and
/// `r(m_p, e_i) = Σ_q right[p][i][q] m_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimodule {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub basis_labels: Vec<String>,
    left: Tensor3,
    right: Tensor3,
}

impl Bimodule {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<Algebra>,
        basis_labels: Vec<String>,
        left: Tensor3,
        right: Tensor3,
    ) -> Result<Self> {
        let (a, m) = (algebra.dim(), basis_labels.len());
        if left.dims() != [a, m, m] || right.dims() != [m, a, m] {
            return Err(Error::ShapeMismatch(format!(
                "action tensors {:?}/{:?} for algebra dimension {a} and module dimension {m}",
                left.dims(),
                right.dims()
            )));
        }
        Ok(Self {
            name: name.into(),
            algebra,
            basis_labels,
            left,
            right,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn left(&self) -> &Tensor3 {
        &self.left
    }

    pub fn right(&self) -> &Tensor3 {
        &self.right
    }

    pub fn act_left(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        self.left.apply(a, m)
    }

    pub fn act_right(&self, m: &[Scalar], a: &[Scalar]) -> Vector {
        self.right.apply(m, a)
    }

    /// Matrix of `m ↦ l(e_i, m)`.
    pub fn left_action_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let triplets = (0..n).flat_map(|p| {
            (0..n).map(move |q| (q, p, self.left.get(i, p, q).clone()))
        });
        Matrix::from_triplets(n, n, triplets).expect("indices in range")
    }

    /// Matrix of `m ↦ r(m, e_i)`.
    pub fn right_action_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let triplets = (0..n).flat_map(|p| {
            (0..n).map(move |q| (q, p, self.right.get(p, i, q).clone()))
        });
        Matrix::from_triplets(n, n, triplets).expect("indices in range")
    }
}

/// A linear map stored as its `target_dim × source_dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    pub name: String,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(name: impl Into<String>, matrix: Matrix) -> Self {
        Self {
            name: name.into(),
            matrix,
        }
    }

    pub fn identity(name: impl Into<String>, n: usize) -> Self {
        Self::new(name, Matrix::identity(n))
    }

    pub fn zero(name: impl Into<String>, source_dim: usize, target_dim: usize) -> Self {
        Self::new(name, Matrix::zeros(target_dim, source_dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v).expect("vector length matches map source")
    }

    /// Image of the `i`-th source basis vector.
    pub fn column(&self, i: usize) -> Vector {
        self.matrix.column(i).to_dense(self.target_dim())
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap::new(
            format!("{}∘{}", self.name, inner.name),
            self.matrix.mul(&inner.matrix)?,
        ))
    }

    pub fn transpose(&self, name: impl Into<String>) -> LinearMap {
        LinearMap::new(name, self.matrix.transpose())
    }

    pub(crate) fn check_shape(&self, source_dim: usize, target_dim: usize) -> Result<()> {
        if self.source_dim() != source_dim || self.target_dim() != target_dim {
            return Err(Error::ShapeMismatch(format!(
                "map `{}` is {}→{}, expected {source_dim}→{target_dim}",
                self.name,
                self.source_dim(),
                self.target_dim()
            )));
        }
        Ok(())
    }
}

pub fn validate_algebra(a: &Algebra) -> ValidationReport {
    let n = a.dim();
    let mut check = CheckOutcome::new("associativity");
    for i in 0..n {
        for j in 0..n {
            let ij = a.basis_product(i, j).to_vec();
            for k in 0..n {
                let lhs = a.mul(&ij, &basis_vector(n, k));
                let rhs = a.mul(&basis_vector(n, i), a.basis_product(j, k));
                check.record(lhs == rhs, &[i, j, k]);
            }
        }
    }
    ValidationReport::single(format!("algebra {}", a.name), check)
}

pub fn validate_bimodule(b: &Bimodule) -> ValidationReport {
    let a = &b.algebra;
    let (na, nm) = (a.dim(), b.dim());
    let e = |i| basis_vector(na, i);
    let m = |p| basis_vector(nm, p);
    let mut left = CheckOutcome::new("left action");
    let mut middle = CheckOutcome::new("middle compatibility");
    let mut right = CheckOutcome::new("right action");
    for i in 0..na {
        for j in 0..na {
            let ij = a.basis_product(i, j);
            for p in 0..nm {
                // l(e_i e_j, m) = l(e_i, l(e_j, m))
                let lhs = b.act_left(ij, &m(p));
                let rhs = b.act_left(&e(i), b.left().fiber(j, p));
                left.record(lhs == rhs, &[i, j, p]);
                // l(e_i, r(m, e_j)) = r(l(e_i, m), e_j)
                let lhs = b.act_left(&e(i), b.right().fiber(p, j));
                let rhs = b.act_right(b.left().fiber(i, p), &e(j));
                middle.record(lhs == rhs, &[i, p, j]);
                // r(m, e_i e_j) = r(r(m, e_i), e_j)
                let lhs = b.act_right(&m(p), ij);
                let rhs = b.act_right(b.right().fiber(p, i), &e(j));
                right.record(lhs == rhs, &[p, i, j]);
            }
        }
    }
    let mut report = ValidationReport::new(format!("bimodule {}", b.name));
    report.push(left);
    report.push(middle);
    report.push(right);
    report
}

pub fn validate_algebra_morphism(phi: &LinearMap, src: &Algebra, tgt: &Algebra) -> Result<ValidationReport> {
    phi.check_shape(src.dim(), tgt.dim())?;
    let mut check = CheckOutcome::new("multiplicativity");
    let images: Vec<Vector> = (0..src.dim()).map(|i| phi.column(i)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = phi.apply(src.basis_product(i, j));
            let rhs = tgt.mul(&images[i], &images[j]);
            check.record(lhs == rhs, &[i, j]);
        }
    }
    Ok(ValidationReport::single(
        format!("algebra morphism {}: {} → {}", phi.name, src.name, tgt.name),
        check,
    ))
}

/// `A` acting on itself by multiplication on both sides.
pub fn adjoint_bimodule(a: &Arc<Algebra>) -> Bimodule {
    Bimodule {
        name: format!("ad({})", a.name),
        algebra: Arc::clone(a),
        basis_labels: a.basis_labels.clone(),
        left: a.mult().clone(),
        right: a.mult().clone(),
    }
}

/// `A*` in the dual basis with `l(a, f)(b) = f(b·a)` and `r(f, a)(b) = f(a·b)`.
pub fn coadjoint_bimodule(a: &Arc<Algebra>) -> Bimodule {
    let n = a.dim();
    let c = a.mult();
    let mut left = Tensor3::zeros(n, n, n);
    let mut right = Tensor3::zeros(n, n, n);
    for i in 0..n {
        for p in 0..n {
            for q in 0..n {
                // l(e_i, e_p*)(e_q) = e_p*(e_q · e_i)
                *left.get_mut(i, p, q) = c.get(q, i, p).clone();
                // r(e_p*, e_i)(e_q) = e_p*(e_i · e_q)
                *right.get_mut(p, i, q) = c.get(i, q, p).clone();
            }
        }
    }
    Bimodule {
        name: format!("coad({})", a.name),
        algebra: Arc::clone(a),
        basis_labels: a.basis_labels.iter().map(|l| format!("{l}*")).collect(),
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int;

    #[test]
    fn dual_numbers_are_associative() {
        let report = validate_algebra(&fixtures::d2());
        assert!(report.passed());
        assert_eq!(report.checks[0].cases, 8);
    }

    #[test]
    fn non_associative_table_fails_at_expected_triple() {
        // e·e = f, f·f = e, e·f = f·e = 0
        let mult = Tensor3::from_entries([2, 2, 2], [([0, 0, 1], int(1)), ([1, 1, 0], int(1))]).unwrap();
        let a = Algebra::new("bad", vec!["e".into(), "f".into()], mult).unwrap();
        let report = validate_algebra(&a);
        assert!(!report.passed());
        assert_eq!(report.checks[0].first_witness, Some(vec![0, 0, 1]));
    }

    #[test]
    fn zero_product_algebra_passes() {
        assert!(validate_algebra(&Algebra::zero_product("Z4", 4)).passed());
    }

    #[test]
    fn adjoint_and_coadjoint_of_fixtures_are_bimodules() {
        for a in [fixtures::k1(), fixtures::d2(), fixtures::u3()] {
            let a = Arc::new(a);
            assert!(validate_bimodule(&adjoint_bimodule(&a)).passed());
            assert!(validate_bimodule(&coadjoint_bimodule(&a)).passed());
        }
    }

    #[test]
    fn adjoint_of_non_associative_table_is_not_a_bimodule() {
        let mult = Tensor3::from_entries([2, 2, 2], [([0, 0, 1], int(1)), ([1, 1, 0], int(1))]).unwrap();
        let a = Arc::new(Algebra::new("bad", vec!["e".into(), "f".into()], mult).unwrap());
        assert!(!validate_bimodule(&adjoint_bimodule(&a)).passed());
    }

    #[test]
    fn zero_right_action_still_satisfies_all_axioms() {
        // Without a unit requirement every axiom involving the right action vanishes.
        let a = Arc::new(fixtures::d2());
        let b = Bimodule::new(
            "half",
            Arc::clone(&a),
            a.basis_labels.clone(),
            a.mult().clone(),
            Tensor3::zeros(2, 2, 2),
        )
        .unwrap();
        assert!(validate_bimodule(&b).passed());
    }

    #[test]
    fn doubled_right_action_fails_right_axiom() {
        let a = Arc::new(fixtures::d2());
        let doubled = Tensor3::from_entries(
            [2, 2, 2],
            a.mult().nonzero_entries().into_iter().map(|(i, v)| (i, v * int(2))),
        )
        .unwrap();
        let b = Bimodule::new("bad", Arc::clone(&a), a.basis_labels.clone(), a.mult().clone(), doubled).unwrap();
        let report = validate_bimodule(&b);
        assert!(report.check("left action").unwrap().passed());
        assert!(report.check("middle compatibility").unwrap().passed());
        let right = report.check("right action").unwrap();
        assert_eq!(right.first_witness, Some(vec![0, 0, 0]));
    }

    #[test]
    fn algebra_morphism_examples() {
        let d2 = fixtures::d2();
        let id = LinearMap::identity("id", 2);
        assert!(validate_algebra_morphism(&id, &d2, &d2).unwrap().passed());
        let u3 = fixtures::u3();
        assert!(validate_algebra_morphism(&LinearMap::zero("0", 2, 3), &d2, &u3).unwrap().passed());
        // φ(1) = 1, φ(x) = 1
        let bad = LinearMap::new("bad", Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        let report = validate_algebra_morphism(&bad, &d2, &d2).unwrap();
        assert_eq!(report.checks[0].first_witness, Some(vec![1, 1]));
        assert_eq!(report.failure_count(), 1);
    }

    #[test]
    fn adjoint_examples() {
        let d2 = Arc::new(fixtures::d2());
        assert_eq!(adjoint_bimodule(&d2).left(), d2.mult());
        assert!(adjoint_bimodule(&Arc::new(Algebra::zero_product("Z", 3))).left().is_zero());
        // U3 basis e11, e12, e22
        let u3 = Arc::new(fixtures::u3());
        let ad = adjoint_bimodule(&u3);
        assert_eq!(ad.act_left(&basis_vector(3, 0), &basis_vector(3, 1)), basis_vector(3, 1));
        assert_eq!(ad.act_right(&basis_vector(3, 1), &basis_vector(3, 2)), basis_vector(3, 1));
    }

    #[test]
    fn coadjoint_examples() {
        let d2 = Arc::new(fixtures::d2());
        let co = coadjoint_bimodule(&d2);
        let (one, x) = (basis_vector(2, 0), basis_vector(2, 1));
        assert_eq!(co.act_left(&x, &x), one);
        assert_eq!(co.act_left(&x, &one), zero_vector(2));
        assert!(coadjoint_bimodule(&Arc::new(Algebra::zero_product("Z", 2))).left().is_zero());
    }

    #[test]
    fn coadjoint_actions_are_transposed_adjoint_actions() {
        for a in [fixtures::d2(), fixtures::u3()] {
            let a = Arc::new(a);
            let (ad, co) = (adjoint_bimodule(&a), coadjoint_bimodule(&a));
            for i in 0..a.dim() {
                assert_eq!(co.left_action_matrix(i).transpose(), ad.right_action_matrix(i));
                assert_eq!(co.right_action_matrix(i).transpose(), ad.left_action_matrix(i));
            }
        }
    }
}
