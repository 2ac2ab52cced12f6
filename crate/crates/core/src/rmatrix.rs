//! Associative r-matrices as O-operators on the coadjoint bimodule, weak
//! morphisms between them, and the Rota-Baxter case of the bang operator.
//!
//! `r = Σ r_ij e_i ⊗ e_j` is stored as the matrix `(r_ij)`; `r♯(e_i*) = Σ_j r_ij e_j`,
//! so the matrix of `r♯` is the transpose.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{
    adjoint_bimodule, basis_vector, coadjoint_bimodule, validate_algebra_morphism, vec_add, vec_sub, Algebra,
    Bimodule, LinearMap, Tensor3, Vector,
};
use crate::bang::{bang_algebra, bang_operator};
use crate::error::{Error, Result};
use crate::hochschild::{cochain_of_map, hochschild_differential, CochainComplex};
use crate::linalg::{int, Matrix, Scalar};
use crate::operators::{check_o_operator, ensure_o_operator, OOperator, OOperatorMorphism};
use crate::report::{CheckOutcome, ValidationReport};
use crate::search::{bounded_kernel_vectors, bounded_matrices};

/// A skew element `r ∈ ∧²A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    pub algebra: Arc<Algebra>,
    matrix: Matrix,
}

impl WedgeElement {
    pub fn new(algebra: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        let n = algebra.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for an algebra of dimension {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.add(&matrix.transpose())?.is_zero() {
            return Err(Error::NotSkew(format!("r + rᵀ ≠ 0 on {}", algebra.name)));
        }
        Ok(Self { algebra, matrix })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `r(μ, ν)` on dual basis vectors.
    pub fn pairing(&self, i: usize, j: usize) -> Scalar {
        self.matrix.get(i, j)
    }
}

/// `r♯: A* → A` with `⟨ν, r♯(μ)⟩ = r(μ, ν)`.
pub fn r_sharp(r: &WedgeElement) -> LinearMap {
    LinearMap::new("r♯", r.matrix.transpose())
}

/// `r♯` as an O-operator on the coadjoint bimodule.
pub fn r_sharp_operator(name: impl Into<String>, r: &WedgeElement) -> OOperator {
    OOperator::new(name, coadjoint_bimodule(&r.algebra), r_sharp(r)).expect("square map on A*")
}

/// `[[r, r]](μ, ν, ω) = ⟨r♯(μ)r♯(ν), ω⟩ + ⟨r♯(ν)r♯(ω), μ⟩ + ⟨r♯(ω)r♯(μ), ν⟩`
/// on all dual basis triples.
pub fn yb_bracket(r: &WedgeElement) -> Tensor3 {
    let a = &r.algebra;
    let n = a.dim();
    let sharp = r_sharp(r);
    let images: Vec<Vector> = (0..n).map(|i| sharp.column(i)).collect();
    let products: Vec<Vec<Vector>> = (0..n)
        .map(|i| (0..n).map(|j| a.mul(&images[i], &images[j])).collect())
        .collect();
    let mut out = Tensor3::zeros(n, n, n);
    #[allow(clippy::needless_range_loop)] // cyclic index permutation
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &products[i][j][k] + &products[j][k][i] + &products[k][i][j];
                *out.get_mut(i, j, k) = v;
            }
        }
    }
    out
}

pub fn check_r_matrix(r: &WedgeElement) -> ValidationReport {
    let bracket = yb_bracket(r);
    let n = r.algebra.dim();
    let mut check = CheckOutcome::new("[[r, r]] = 0");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                check.record(bracket.get(i, j, k).is_zero(), &[i, j, k]);
            }
        }
    }
    ValidationReport::single(format!("r-matrix on {}", r.algebra.name), check)
}

/// A pair `(φ, ψ)` of endomorphisms of `A` between two skew elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakMorphism {
    pub algebra: Arc<Algebra>,
    pub phi: LinearMap,
    pub psi: LinearMap,
    pub source_r: WedgeElement,
    pub target_r: WedgeElement,
}

impl WeakMorphism {
    pub fn new(phi: LinearMap, psi: LinearMap, source_r: WedgeElement, target_r: WedgeElement) -> Result<Self> {
        let algebra = Arc::clone(&source_r.algebra);
        if *target_r.algebra != *algebra {
            return Err(Error::ShapeMismatch("r₁ and r₂ live on different algebras".into()));
        }
        phi.check_shape(algebra.dim(), algebra.dim())?;
        psi.check_shape(algebra.dim(), algebra.dim())?;
        Ok(Self {
            algebra,
            phi,
            psi,
            source_r,
            target_r,
        })
    }
}

/// `ψ(φ(a)b) = aψ(b)` and `ψ(aφ(b)) = ψ(a)b` on basis pairs.
fn module_displays(a: &Algebra, phi: &LinearMap, psi: &LinearMap) -> [CheckOutcome; 2] {
    let n = a.dim();
    let mut left = CheckOutcome::new("ψ(φ(a)b) = aψ(b)");
    let mut right = CheckOutcome::new("ψ(aφ(b)) = ψ(a)b");
    for i in 0..n {
        let (e_i, phi_i, psi_i) = (basis_vector(n, i), phi.column(i), psi.column(i));
        for j in 0..n {
            let (e_j, phi_j, psi_j) = (basis_vector(n, j), phi.column(j), psi.column(j));
            left.record(psi.apply(&a.mul(&phi_i, &e_j)) == a.mul(&e_i, &psi_j), &[i, j]);
            right.record(psi.apply(&a.mul(&e_i, &phi_j)) == a.mul(&psi_i, &e_j), &[i, j]);
        }
    }
    [left, right]
}

pub fn check_weak_morphism(w: &WeakMorphism) -> ValidationReport {
    let a = &w.algebra;
    let mut report = ValidationReport::new("weak morphism of r-matrices");
    report.absorb("φ", validate_algebra_morphism(&w.phi, a, a).expect("shape checked at construction"));
    // coefficient of e_i ⊗ e_j: (Ψ R₂)_ij against (R₁ Φᵀ)_ij
    let lhs = w.psi.matrix().mul(w.target_r.matrix()).expect("square");
    let rhs = w.source_r.matrix().mul(&w.phi.matrix().transpose()).expect("square");
    let mut tensor = CheckOutcome::new("(ψ⊗Id)(r₂) = (Id⊗φ)(r₁)");
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            tensor.record(lhs.get(i, j) == rhs.get(i, j), &[i, j]);
        }
    }
    report.push(tensor);
    for c in module_displays(a, &w.phi, &w.psi) {
        report.push(c);
    }
    report
}

/// `(φ, ψ*)` from `r₁♯` to `r₂♯` on coadjoint bimodules.
pub fn weak_to_o_morphism(w: &WeakMorphism) -> Result<OOperatorMorphism> {
    let report = check_weak_morphism(w);
    if !report.passed() {
        return Err(Error::NotWeakMorphism(report.summary()));
    }
    for (label, r) in [("r₁", &w.source_r), ("r₂", &w.target_r)] {
        let rep = check_r_matrix(r);
        if !rep.passed() {
            return Err(Error::NotRMatrix(format!("{label}: {}", rep.summary())));
        }
    }
    OOperatorMorphism::new(
        "(φ, ψ*)",
        r_sharp_operator("r₁♯", &w.source_r),
        r_sharp_operator("r₂♯", &w.target_r),
        w.phi.clone(),
        w.psi.transpose("ψ*"),
    )
}

/// Skew matrices with strictly-upper entries drawn from `values`, in
/// odometer order over the upper triangle read row by row.
pub fn skew_matrices(dim: usize, values: &[i64]) -> impl Iterator<Item = Matrix> + '_ {
    let slots: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    bounded_matrices(1, slots.len(), values).map(move |row| {
        let mut triplets = Vec::new();
        for (s, (i, j)) in slots.iter().enumerate() {
            let v = row.get(0, s);
            if !v.is_zero() {
                triplets.push((*i, *j, v.clone()));
                triplets.push((*j, *i, -v));
            }
        }
        Matrix::from_triplets(dim, dim, triplets).expect("indices in range")
    })
}

/// Outcome of scanning skew candidates with both characterizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceScan {
    pub candidates: usize,
    /// Candidates with `[[r, r]] = 0`.
    pub r_matrices: Vec<Matrix>,
    /// Candidates whose `r♯` is an O-operator on the coadjoint bimodule.
    pub o_operators: Vec<Matrix>,
}

impl EquivalenceScan {
    pub fn agree(&self) -> bool {
        self.r_matrices == self.o_operators
    }
}

pub fn r_matrix_equivalence_scan(a: &Arc<Algebra>, values: &[i64]) -> EquivalenceScan {
    let mut scan = EquivalenceScan {
        candidates: 0,
        r_matrices: Vec::new(),
        o_operators: Vec::new(),
    };
    for m in skew_matrices(a.dim(), values) {
        scan.candidates += 1;
        let r = WedgeElement::new(Arc::clone(a), m.clone()).expect("skew by construction");
        if check_r_matrix(&r).passed() {
            scan.r_matrices.push(m.clone());
        }
        if check_o_operator(&r_sharp_operator("r♯", &r)).passed() {
            scan.o_operators.push(m);
        }
    }
    scan
}

/// Every weak morphism `(φ, ψ)` between r-matrices on `a` with entries of φ,
/// ψ and both r's drawn from `values`. Pairs `(φ, ψ)` are filtered through φ
/// being an algebra morphism and the two module displays before r-matrices
/// are paired against the tensor identity.
pub fn enumerate_weak_morphisms(a: &Arc<Algebra>, values: &[i64]) -> Vec<WeakMorphism> {
    let n = a.dim();
    let r_matrices: Vec<WedgeElement> = r_matrix_equivalence_scan(a, values)
        .r_matrices
        .into_iter()
        .map(|m| WedgeElement::new(Arc::clone(a), m).expect("skew"))
        .collect();
    let phis: Vec<LinearMap> = bounded_matrices(n, n, values)
        .map(|m| LinearMap::new("φ", m))
        .filter(|phi| validate_algebra_morphism(phi, a, a).expect("square").passed())
        .collect();
    let mut out = Vec::new();
    for phi in &phis {
        for v in bounded_kernel_vectors(&display_constraints(a, phi), values) {
            let entries: Vec<Scalar> = v.into_iter().map(int).collect();
            let psi = LinearMap::new("ψ", Matrix::from_dense(n, n, &entries).expect("n² entries"));
            for r1 in &r_matrices {
                for r2 in &r_matrices {
                    let w = WeakMorphism::new(phi.clone(), psi.clone(), r1.clone(), r2.clone()).expect("shapes");
                    if check_weak_morphism(&w).passed() {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// The module displays as linear equations in the entries of ψ, with the
/// entry `ψ_kl` (coordinate `k` of `ψ(e_l)`) in column `k·n + l`.
fn display_constraints(a: &Algebra, phi: &LinearMap) -> Matrix {
    let n = a.dim();
    let c = a.mult();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // ψ(φ(e_i)e_j) − e_iψ(e_j) and ψ(e_iφ(e_j)) − ψ(e_i)e_j, coordinate q
            let v = a.mul(&phi.column(i), &basis_vector(n, j));
            let w = a.mul(&basis_vector(n, i), &phi.column(j));
            for q in 0..n {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for l in 0..n {
                    left.push((q * n + l, v[l].clone()));
                    right.push((q * n + l, w[l].clone()));
                }
                for k in 0..n {
                    left.push((k * n + j, -c.get(i, k, q)));
                    right.push((k * n + i, -c.get(k, j, q)));
                }
                rows.push(crate::linalg::SparseVec::from_entries(left));
                rows.push(crate::linalg::SparseVec::from_entries(right));
            }
        }
    }
    Matrix::from_rows(n * n, rows).expect("columns in range")
}

fn ensure_rota_baxter(r: &OOperator) -> Result<()> {
    if r.bimodule != adjoint_bimodule(r.algebra()) {
        return Err(Error::NotAnOOperator(format!(
            "{} does not act on the adjoint bimodule",
            r.name
        )));
    }
    ensure_o_operator(r)
}

fn rota_baxter_morphism(phi: &LinearMap, ra: &OOperator, rb: &OOperator) -> Result<OOperatorMorphism> {
    ensure_rota_baxter(ra)?;
    ensure_rota_baxter(rb)?;
    let mor = OOperatorMorphism::new(
        format!("{}: {} → {}", phi.name, ra.name, rb.name),
        ra.clone(),
        rb.clone(),
        phi.clone(),
        phi.clone(),
    )?;
    let report = crate::operators::check_o_morphism(&mor);
    if !report.passed() {
        return Err(Error::NotAMorphism(report.summary()));
    }
    Ok(mor)
}

/// `R_{φ!}(a + b₁ + b₂φ) = R_A(a) + R_B(b₁) + R_B(b₂)φ` on the adjoint
/// bimodule of `φ!`.
pub fn rota_baxter_bang(phi: &LinearMap, ra: &OOperator, rb: &OOperator) -> Result<OOperator> {
    rota_baxter_morphism(phi, ra, rb)?;
    let bang = bang_algebra(ra.algebra(), rb.algebra(), phi)?;
    let (r_a, r_b) = (ra.map.matrix(), rb.map.matrix());
    let sizes = bang.blocks.sizes();
    let map = Matrix::block(&sizes, &sizes, &[(0, 0, r_a), (1, 1, r_b), (2, 2, r_b)])?;
    OOperator::new(
        format!("R!({})", phi.name),
        adjoint_bimodule(&bang.carrier),
        LinearMap::new("R!", map),
    )
}

/// The same operator through the generic route: the bang operator of `(φ, φ)`.
pub fn rota_baxter_bang_generic(phi: &LinearMap, ra: &OOperator, rb: &OOperator) -> Result<OOperator> {
    bang_operator(&rota_baxter_morphism(phi, ra, rb)?)
}

/// `a ⋆ b = aR(b) + R(a)b`, from the algebra product alone.
fn rota_baxter_star(a: &Algebra, r: &LinearMap) -> Algebra {
    let n = a.dim();
    let mut mult = Tensor3::zeros(n, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = vec_add(&a.mul(&basis_vector(n, i), &r.column(j)), &a.mul(&r.column(i), &basis_vector(n, j)));
            mult.set_fiber(i, j, &v);
        }
    }
    Algebra::new(format!("{}⋆", a.name), a.basis_labels.clone(), mult).expect("square tensor")
}

/// `B` over `A⋆` through φ: `a·b = R_B(φ(a))b − R_B(φ(a)b)`, `b·a = bR_B(φ(a)) − R_B(bφ(a))`.
fn rota_baxter_coefficients(star: &Arc<Algebra>, b: &Algebra, rb: &LinearMap, phi: &LinearMap) -> Bimodule {
    let (na, nb) = (star.dim(), b.dim());
    let mut left = Tensor3::zeros(na, nb, nb);
    let mut right = Tensor3::zeros(nb, na, nb);
    for i in 0..na {
        let x = phi.column(i);
        let rx = rb.apply(&x);
        for k in 0..nb {
            let e_k = basis_vector(nb, k);
            left.set_fiber(i, k, &vec_sub(&b.mul(&rx, &e_k), &rb.apply(&b.mul(&x, &e_k))));
            right.set_fiber(k, i, &vec_sub(&b.mul(&e_k, &rx), &rb.apply(&b.mul(&e_k, &x))));
        }
    }
    Bimodule::new("B", Arc::clone(star), b.basis_labels.clone(), left, right).expect("shapes")
}

/// The cylinder of a Rota-Baxter morphism assembled from Hochschild
/// differentials of `A⋆` and `B⋆` built from products and `R` only.
pub fn rota_baxter_cylinder(
    phi: &LinearMap,
    ra: &OOperator,
    rb: &OOperator,
    max_degree: usize,
) -> Result<CochainComplex> {
    rota_baxter_morphism(phi, ra, rb)?;
    let (a, b) = (ra.algebra(), rb.algebra());
    let (na, nb) = (a.dim(), b.dim());
    let star_a = Arc::new(rota_baxter_star(a, &ra.map));
    let star_b = Arc::new(rota_baxter_star(b, &rb.map));
    let a_over = rota_baxter_coefficients(&star_a, a, &ra.map, &LinearMap::identity("id", na));
    let b_over = rota_baxter_coefficients(&star_b, b, &rb.map, &LinearMap::identity("id", nb));
    let b_over_a = rota_baxter_coefficients(&star_a, b, &rb.map, phi);
    let phi_t = phi.matrix().transpose();
    let mut ds = Vec::with_capacity(max_degree);
    for n in 0..max_degree {
        let p = na.pow(n as u32);
        let cols = [p * na, nb.pow(n as u32) * nb, if n == 0 { 0 } else { p / na * nb }];
        let rows = [p * na * na, nb.pow(n as u32 + 1) * nb, p * nb];
        let d_a = hochschild_differential(&star_a, &a_over, n)?;
        let d_b = hochschild_differential(&star_b, &b_over, n)?;
        let push = Matrix::identity(p).kron(phi.matrix());
        let pull = (0..n)
            .fold(Matrix::identity(1), |acc, _| acc.kron(&phi_t))
            .kron(&Matrix::identity(nb))
            .scaled(&int(-1));
        let mut blocks = vec![(0, 0, &d_a), (1, 1, &d_b), (2, 0, &push), (2, 1, &pull)];
        let d_ab = match n {
            0 => None,
            _ => Some(hochschild_differential(&star_a, &b_over_a, n - 1)?.scaled(&int(-1))),
        };
        if let Some(m) = &d_ab {
            blocks.push((2, 2, m));
        }
        ds.push(Matrix::block(&rows, &cols, &blocks)?);
    }
    let mut complex = CochainComplex {
        space_dims: vec![na + nb],
        differentials: Vec::new(),
        provenance: format!("Rota-Baxter cylinder of {}", phi.name),
    };
    complex.space_dims.extend(ds.iter().map(Matrix::rows));
    complex.differentials = ds;
    Ok(complex)
}

/// `(R_A, R_B, 0)` as a flat degree-1 cylinder cochain.
pub fn rota_baxter_canonical_cochain(ra: &OOperator, rb: &OOperator) -> Vector {
    let mut v = cochain_of_map(&ra.map);
    v.extend(cochain_of_map(&rb.map));
    v.extend(std::iter::repeat_n(Scalar::zero(), rb.algebra().dim()));
    v
}
