//! Cochain complexes as explicit sparse matrices: Hochschild differentials,
//! the differentials of an O-operator, and the mapping cylinder of an
//! O-operator morphism.
//!
//! A cochain `f ∈ Hom(S^{⊗n}, V)` is flattened to a vector of length
//! `dim(S)^n · dim(V)`: the multi-index `(i₁, …, i_n)` is major with `i₁` most
//! significant, the `V`-coordinate is minor.

use num_traits::Zero;

use crate::algebra::{basis_vector, vec_add, vec_sub, Algebra, Bimodule, LinearMap, Vector};
use crate::error::{Error, Result};
use crate::linalg::{cohomology_dim, int, Matrix, Scalar, SparseVec};
use crate::operators::{
    check_o_morphism, ensure_o_morphism, ensure_o_operator, pushforward_bimodule, star_algebra, OOperator,
    OOperatorMorphism,
};
use crate::report::{CheckOutcome, ValidationReport};

pub const DEFAULT_SIZE_LIMIT: usize = 20_000;

/// Environment variable overriding [`DEFAULT_SIZE_LIMIT`].
pub const SIZE_LIMIT_ENV: &str = "OOCLAB_SIZE_LIMIT";

/// Largest cochain space dimension a complex may reach.
pub fn size_limit() -> usize {
    std::env::var(SIZE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_LIMIT)
}

/// `dim(S)^n · dim(V)`, or `None` on overflow.
fn cochain_dim(src: usize, coef: usize, n: usize) -> Option<usize> {
    src.checked_pow(n as u32)?.checked_mul(coef)
}

fn check_size(dim: Option<usize>, limit: usize) -> Result<()> {
    match dim {
        Some(d) if d <= limit => Ok(()),
        Some(d) => Err(Error::SizeLimitExceeded { dim: d, limit }),
        None => Err(Error::SizeLimitExceeded { dim: usize::MAX, limit }),
    }
}

/// A finite piece `C⁰ → C¹ → … → C^N` of a cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub space_dims: Vec<usize>,
    /// `differentials[n]` is `d^n: C^n → C^{n+1}`.
    pub differentials: Vec<Matrix>,
    pub provenance: String,
}

impl CochainComplex {
    fn new(provenance: impl Into<String>, c0: usize, differentials: Vec<Matrix>) -> Self {
        let mut space_dims = vec![c0];
        space_dims.extend(differentials.iter().map(Matrix::rows));
        Self {
            space_dims,
            differentials,
            provenance: provenance.into(),
        }
    }

    /// Number of differentials.
    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// `d^{n−1}`, with `d^{−1} := 0`.
    pub fn incoming(&self, n: usize) -> Matrix {
        match n {
            0 => Matrix::zeros(self.space_dims[0], 0),
            _ => self.differentials[n - 1].clone(),
        }
    }

    pub fn check_square_zero(&self) -> ValidationReport {
        let mut check = CheckOutcome::new("d∘d = 0");
        for n in 1..self.len() {
            let dd = self.differentials[n]
                .mul(&self.differentials[n - 1])
                .expect("consecutive differentials compose");
            check.record(dd.is_zero(), &[n - 1]);
        }
        ValidationReport::single(self.provenance.clone(), check)
    }

    /// `[dim H⁰, …, dim H^{N−1}]`.
    pub fn cohomology(&self) -> Result<Vec<usize>> {
        (0..self.len())
            .map(|n| cohomology_dim(&self.incoming(n), &self.differentials[n]))
            .collect()
    }
}

type Terms = Vec<(usize, Scalar)>;

fn terms(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Structure constants needed by the alternating-sum differential of
/// `Hom(S^{⊗n}, V)`: the product of `S` and its two actions on `V`.
struct Coefficients {
    src: usize,
    coef: usize,
    /// `product[i·src + j]` = `s_i s_j`.
    product: Vec<Terms>,
    /// `left[x·coef + k]` = `s_x · v_k`.
    left: Vec<Terms>,
    /// `right[k·src + x]` = `v_k · s_x`.
    right: Vec<Terms>,
}

impl Coefficients {
    fn from_bimodule(a: &Algebra, m: &Bimodule) -> Self {
        let (src, coef) = (a.dim(), m.dim());
        Self {
            src,
            coef,
            product: (0..src * src).map(|ij| terms(a.basis_product(ij / src, ij % src))).collect(),
            left: (0..src * coef).map(|xk| terms(m.left().fiber(xk / coef, xk % coef))).collect(),
            right: (0..coef * src).map(|kx| terms(m.right().fiber(kx / src, kx % src))).collect(),
        }
    }

    /// Read off directly from `T`: the product `m·T(m') + T(m)·m'`, and the
    /// actions `T(m)a − T(ma)` and `aT(m) − T(am)`.
    fn from_operator(t: &OOperator) -> Self {
        let (a, m) = (t.algebra(), &t.bimodule);
        let (src, coef) = (m.dim(), a.dim());
        let images: Vec<Vector> = (0..src).map(|p| t.image(p)).collect();
        let e_m = |p| basis_vector(src, p);
        let e_a = |k| basis_vector(coef, k);
        let product = (0..src * src)
            .map(|ij| {
                let (i, j) = (ij / src, ij % src);
                terms(&vec_add(&m.act_right(&e_m(i), &images[j]), &m.act_left(&images[i], &e_m(j))))
            })
            .collect();
        let left = (0..src * coef)
            .map(|xk| {
                let (x, k) = (xk / coef, xk % coef);
                let through = t.apply(&m.act_right(&e_m(x), &e_a(k)));
                terms(&vec_sub(&a.mul(&images[x], &e_a(k)), &through))
            })
            .collect();
        let right = (0..coef * src)
            .map(|kx| {
                let (k, x) = (kx / src, kx % src);
                let through = t.apply(&m.act_left(&e_a(k), &e_m(x)));
                terms(&vec_sub(&a.mul(&e_a(k), &images[x]), &through))
            })
            .collect();
        Self {
            src,
            coef,
            product,
            left,
            right,
        }
    }

    /// `(df)(x₁, …, x_{n+1}) = x₁·f(x₂, …) + Σᵢ (−1)^i f(…, x_i x_{i+1}, …) + (−1)^{n+1} f(x₁, …, x_n)·x_{n+1}`.
    fn differential(&self, n: usize) -> Matrix {
        let (src, coef) = (self.src, self.coef);
        let words_in = src.pow(n as u32);
        let words_out = words_in * src;
        let last_sign = if n.is_multiple_of(2) { int(-1) } else { int(1) };
        let mut rows = Vec::with_capacity(words_out * coef);
        let mut digits = vec![0usize; n + 1];
        let mut merged = vec![0usize; n];
        for u in 0..words_out {
            let mut code = u;
            for d in digits.iter_mut().rev() {
                *d = code % src;
                code /= src;
            }
            let mut buf: Vec<Terms> = vec![Vec::new(); coef];
            // x₁ · f(x₂, …)
            let tail = u % words_in;
            for k in 0..coef {
                for (q, v) in &self.left[digits[0] * coef + k] {
                    buf[*q].push((tail * coef + k, v.clone()));
                }
            }
            // f(…, x_i x_{i+1}, …)
            for i in 0..n {
                let sign = if i % 2 == 0 { int(-1) } else { int(1) };
                for (c, v) in &self.product[digits[i] * src + digits[i + 1]] {
                    merged[..i].copy_from_slice(&digits[..i]);
                    merged[i] = *c;
                    merged[i + 1..].copy_from_slice(&digits[i + 2..]);
                    let w = merged.iter().fold(0, |acc, d| acc * src + d);
                    let coeff = &sign * v;
                    for (k, row) in buf.iter_mut().enumerate() {
                        row.push((w * coef + k, coeff.clone()));
                    }
                }
            }
            // f(x₁, …, x_n) · x_{n+1}
            let head = u / src;
            for k in 0..coef {
                for (q, v) in &self.right[k * src + digits[n]] {
                    buf[*q].push((head * coef + k, &last_sign * v));
                }
            }
            rows.extend(buf.into_iter().map(SparseVec::from_entries));
        }
        Matrix::from_rows(words_in * coef, rows).expect("column indices within cochain space")
    }
}

/// Hochschild differential `Hom(a^{⊗n}, m) → Hom(a^{⊗(n+1)}, m)`.
pub fn hochschild_differential(a: &Algebra, m: &Bimodule, n: usize) -> Result<Matrix> {
    if *m.algebra != *a {
        return Err(Error::ShapeMismatch(format!(
            "bimodule {} is not over algebra {}",
            m.name, a.name
        )));
    }
    Ok(Coefficients::from_bimodule(a, m).differential(n))
}

/// Differential `d_{M,A}^n` of an O-operator, assembled from `T`, the product
/// of `A` and the actions on `M` without building the star structures.
pub fn o_operator_differential(t: &OOperator, n: usize) -> Result<Matrix> {
    ensure_o_operator(t)?;
    Ok(Coefficients::from_operator(t).differential(n))
}

fn o_operator_complex_limited(t: &OOperator, max_degree: usize, limit: usize) -> Result<CochainComplex> {
    ensure_o_operator(t)?;
    let (src, coef) = (t.bimodule.dim(), t.algebra().dim());
    check_size(cochain_dim(src, coef, max_degree), limit)?;
    let c = Coefficients::from_operator(t);
    let ds = (0..max_degree).map(|n| c.differential(n)).collect();
    Ok(CochainComplex::new(format!("C(M⋆, A) of {}", t.name), coef, ds))
}

/// `C⁰ → … → C^{max_degree}` for the cohomology of `t`.
pub fn o_operator_complex(t: &OOperator, max_degree: usize) -> Result<CochainComplex> {
    o_operator_complex_limited(t, max_degree, size_limit())
}

/// `[dim H⁰, …, dim H^{max_degree−1}]` for the cohomology of `t`.
pub fn o_operator_cohomology(t: &OOperator, max_degree: usize) -> Result<Vec<usize>> {
    o_operator_complex(t, max_degree)?.cohomology()
}

/// Degree-1 cochain of a linear map `S → V`.
pub fn cochain_of_map(map: &LinearMap) -> Vector {
    let (src, coef) = (map.source_dim(), map.target_dim());
    let mut v = vec![Scalar::zero(); src * coef];
    for p in 0..src {
        for (k, x) in map.column(p).into_iter().enumerate() {
            v[p * coef + k] = x;
        }
    }
    v
}

/// Sizes `[C^n(M⋆,A), C^n(N⋆,B), C^{n−1}(M⋆,B)]` of the cylinder in degree `n`.
fn cylinder_sizes(mor: &OOperatorMorphism, n: usize) -> Option<[usize; 3]> {
    let (dm, da) = (mor.source.bimodule.dim(), mor.source.algebra().dim());
    let (dn, db) = (mor.target.bimodule.dim(), mor.target.algebra().dim());
    let gamma = match n {
        0 => 0,
        _ => cochain_dim(dm, db, n - 1)?,
    };
    Some([cochain_dim(dm, da, n)?, cochain_dim(dn, db, n)?, gamma])
}

/// An element `(α, β, γ)` of the cylinder in degree `n`; `γ` is absent in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCochain {
    pub degree: usize,
    pub alpha: Vector,
    pub beta: Vector,
    pub gamma: Option<Vector>,
}

impl CylinderCochain {
    pub fn new(
        mor: &OOperatorMorphism,
        degree: usize,
        alpha: Vector,
        beta: Vector,
        gamma: Option<Vector>,
    ) -> Result<Self> {
        let sizes = cylinder_sizes(mor, degree).ok_or(Error::SizeLimitExceeded {
            dim: usize::MAX,
            limit: usize::MAX,
        })?;
        let gamma_len = gamma.as_ref().map_or(0, Vec::len);
        if alpha.len() != sizes[0] || beta.len() != sizes[1] || gamma_len != sizes[2] || (degree > 0) != gamma.is_some() {
            return Err(Error::ShapeMismatch(format!(
                "cylinder cochain of degree {degree} needs components of sizes {sizes:?}"
            )));
        }
        Ok(Self {
            degree,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn flatten(&self) -> Vector {
        let mut v = self.alpha.clone();
        v.extend(self.beta.iter().cloned());
        if let Some(g) = &self.gamma {
            v.extend(g.iter().cloned());
        }
        v
    }

    pub fn from_flat(mor: &OOperatorMorphism, degree: usize, v: &[Scalar]) -> Result<Self> {
        let sizes = cylinder_sizes(mor, degree).ok_or_else(|| Error::ShapeMismatch("degree too large".into()))?;
        if v.len() != sizes.iter().sum::<usize>() {
            return Err(Error::ShapeMismatch(format!(
                "flat cylinder cochain of length {} in degree {degree}",
                v.len()
            )));
        }
        let (a, rest) = v.split_at(sizes[0]);
        let (b, g) = rest.split_at(sizes[1]);
        let gamma = (degree > 0).then(|| g.to_vec());
        Self::new(mor, degree, a.to_vec(), b.to_vec(), gamma)
    }
}

/// The three pieces of cochain data a cylinder is built from.
struct CylinderData {
    d_ma: Coefficients,
    d_nb: Coefficients,
    d_mb: Coefficients,
}

impl CylinderData {
    fn new(mor: &OOperatorMorphism) -> Result<Self> {
        ensure_o_morphism(mor)?;
        let star_m = star_algebra(&mor.source)?;
        let over_b = pushforward_bimodule(mor)?;
        Ok(Self {
            d_ma: Coefficients::from_operator(&mor.source),
            d_nb: Coefficients::from_operator(&mor.target),
            d_mb: Coefficients::from_bimodule(&star_m, &over_b),
        })
    }
}

/// `f^n(α, β) = φ∘α − β∘ψ^{⊗n}` as a map into `C^n(M⋆, B)`, with columns
/// ordered `[α, β]`.
pub fn cylinder_chain_map(mor: &OOperatorMorphism, n: usize) -> Result<Matrix> {
    let (dm, da) = (mor.source.bimodule.dim(), mor.source.algebra().dim());
    let (dn, db) = (mor.target.bimodule.dim(), mor.target.algebra().dim());
    let phi_star = Matrix::identity(dm.pow(n as u32)).kron(mor.phi.matrix());
    let psi_t = mor.psi.matrix().transpose();
    let pull = (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(&psi_t));
    let psi_star = pull.kron(&Matrix::identity(db));
    Matrix::block(
        &[dm.pow(n as u32) * db],
        &[dm.pow(n as u32) * da, dn.pow(n as u32) * db],
        &[(0, 0, &phi_star), (0, 1, &psi_star.scaled(&int(-1)))],
    )
}

fn cylinder_differential_with(mor: &OOperatorMorphism, data: &CylinderData, n: usize) -> Result<Matrix> {
    let cols = cylinder_sizes(mor, n).expect("sizes checked by caller");
    let rows = cylinder_sizes(mor, n + 1).expect("sizes checked by caller");
    let d_ma = data.d_ma.differential(n);
    let d_nb = data.d_nb.differential(n);
    let f = cylinder_chain_map(mor, n)?;
    let f_alpha = f.slice(0, rows[2], 0, cols[0]);
    let f_beta = f.slice(0, rows[2], cols[0], cols[0] + cols[1]);
    let mut blocks = vec![(0, 0, &d_ma), (1, 1, &d_nb), (2, 0, &f_alpha), (2, 1, &f_beta)];
    let minus_d_mb = (n > 0).then(|| data.d_mb.differential(n - 1).scaled(&int(-1)));
    if let Some(m) = &minus_d_mb {
        blocks.push((2, 2, m));
    }
    Matrix::block(&rows, &cols, &blocks)
}

/// `δ_W^n(α, β, γ) = (dα, dβ, φα − βψ^{⊗n} − dγ)`; in degree 0,
/// `δ(a, b) = (da, db, φ(a) − b)`.
pub fn cylinder_differential(mor: &OOperatorMorphism, n: usize) -> Result<Matrix> {
    let data = CylinderData::new(mor)?;
    check_size(cylinder_sizes(mor, n + 1).map(|s| s.iter().sum()), size_limit())?;
    cylinder_differential_with(mor, &data, n)
}

fn cylinder_complex_limited(mor: &OOperatorMorphism, max_degree: usize, limit: usize) -> Result<CochainComplex> {
    let data = CylinderData::new(mor)?;
    check_size(cylinder_sizes(mor, max_degree).map(|s| s.iter().sum()), limit)?;
    let ds = (0..max_degree)
        .map(|n| cylinder_differential_with(mor, &data, n))
        .collect::<Result<Vec<_>>>()?;
    let c0 = mor.source.algebra().dim() + mor.target.algebra().dim();
    Ok(CochainComplex::new(
        format!("cylinder of {} (degree-0 convention: cylinder)", mor.name),
        c0,
        ds,
    ))
}

pub fn cylinder_complex(mor: &OOperatorMorphism, max_degree: usize) -> Result<CochainComplex> {
    cylinder_complex_limited(mor, max_degree, size_limit())
}

pub fn cylinder_cohomology(mor: &OOperatorMorphism, max_degree: usize) -> Result<Vec<usize>> {
    cylinder_complex(mor, max_degree)?.cohomology()
}

/// Checks that `δ_W¹(t_a, t_b, 0)` vanishes, component by component.
fn degree_one_cocycle_checks(mor: &OOperatorMorphism, t_a: &LinearMap, t_b: &LinearMap) -> Result<Vec<CheckOutcome>> {
    let c = CylinderCochain::new(
        mor,
        1,
        cochain_of_map(t_a),
        cochain_of_map(t_b),
        Some(vec![Scalar::zero(); mor.target.algebra().dim()]),
    )?;
    let image = cylinder_differential(mor, 1)?.mul_vec(&c.flatten())?;
    let sizes = cylinder_sizes(mor, 2).expect("small degree");
    let names = ["d_{M,A}¹ component", "d_{N,B}¹ component", "φ∘T_A − T_B∘ψ component"];
    let mut offset = 0;
    let mut out = Vec::new();
    for (name, size) in names.iter().zip(sizes) {
        let mut check = CheckOutcome::new(*name);
        for (i, x) in image[offset..offset + size].iter().enumerate() {
            check.record(x.is_zero(), &[i]);
        }
        offset += size;
        out.push(check);
    }
    Ok(out)
}

/// `(T_A, T_B, 0)` is a 1-cocycle of the cylinder of `mor`.
pub fn check_canonical_cocycle(mor: &OOperatorMorphism) -> ValidationReport {
    let mut report = ValidationReport::new(format!("canonical 1-cocycle of {}", mor.name));
    let morphism = check_o_morphism(mor);
    if !morphism.passed() {
        report.absorb("morphism", morphism);
        return report;
    }
    let checks = degree_one_cocycle_checks(mor, &mor.source.map, &mor.target.map)
        .expect("valid morphism has a degree-1 cylinder");
    for c in checks {
        report.push(c);
    }
    report
}

/// `T(m)T₁(m') + T₁(m)T(m') = T(mT₁(m') + T₁(m)m') + T₁(mT(m') + T(m)m')`.
fn first_order_identity(name: &str, t: &OOperator, t1: &LinearMap) -> CheckOutcome {
    let (a, m) = (t.algebra(), &t.bimodule);
    let n = m.dim();
    let img: Vec<Vector> = (0..n).map(|p| t.image(p)).collect();
    let img1: Vec<Vector> = (0..n).map(|p| t1.column(p)).collect();
    let mut check = CheckOutcome::new(name);
    for p in 0..n {
        let e_p = basis_vector(n, p);
        for q in 0..n {
            let e_q = basis_vector(n, q);
            let lhs = vec_add(&a.mul(&img[p], &img1[q]), &a.mul(&img1[p], &img[q]));
            let inner1 = vec_add(&m.act_right(&e_p, &img1[q]), &m.act_left(&img1[p], &e_q));
            let inner0 = vec_add(&m.act_right(&e_p, &img[q]), &m.act_left(&img[p], &e_q));
            let rhs = vec_add(&t.apply(&inner1), &t1.apply(&inner0));
            check.record(lhs == rhs, &[p, q]);
        }
    }
    check
}

/// Checks a candidate first-order term `(T_{A,1}, T_{B,1})` of a deformation
/// of `mor` with `φ₁ = ψ₁ = 0`: the two linearized operator identities, the
/// linearized intertwining, and that `(T_{A,1}, T_{B,1}, 0)` is a 1-cocycle.
pub fn check_infinitesimal(mor: &OOperatorMorphism, t_a1: &LinearMap, t_b1: &LinearMap) -> Result<ValidationReport> {
    t_a1.check_shape(mor.source.bimodule.dim(), mor.source.algebra().dim())?;
    t_b1.check_shape(mor.target.bimodule.dim(), mor.target.algebra().dim())?;
    let mut report = ValidationReport::new(format!("first-order deformation of {}", mor.name));
    report.push(first_order_identity("first-order identity for T_A", &mor.source, t_a1));
    report.push(first_order_identity("first-order identity for T_B", &mor.target, t_b1));
    let mut intertwine = CheckOutcome::new("T_{B,1}∘ψ = φ∘T_{A,1}");
    for p in 0..mor.source.bimodule.dim() {
        let lhs = t_b1.apply(&mor.psi.column(p));
        let rhs = mor.phi.apply(&t_a1.column(p));
        intertwine.record(lhs == rhs, &[p]);
    }
    report.push(intertwine);
    let mut cocycle = CheckOutcome::new("δ_W¹(T_{A,1}, T_{B,1}, 0) = 0");
    for c in degree_one_cocycle_checks(mor, t_a1, t_b1)? {
        match &c.first_witness {
            None => cocycle.record(true, &[]),
            Some(w) => cocycle.record(false, w),
        }
    }
    report.push(cocycle);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{adjoint_bimodule, Tensor3};
    use crate::fixtures;
    use crate::linalg::rank;
    use crate::operators::induced_bimodule;

    #[test]
    fn degree_zero_on_commutative_adjoint_vanishes() {
        let d2 = Arc::new(fixtures::d2());
        let d = hochschild_differential(&d2, &adjoint_bimodule(&d2), 0).unwrap();
        assert_eq!((d.rows(), d.cols()), (4, 2));
        assert_eq!(rank(&d), 0);
    }

    #[test]
    fn zero_structure_gives_zero_differentials() {
        let a = Arc::new(Algebra::zero_product("Z2", 2));
        let m = Bimodule::new(
            "Z",
            Arc::clone(&a),
            vec!["u".into(), "v".into(), "w".into()],
            Tensor3::zeros(2, 3, 3),
            Tensor3::zeros(3, 2, 3),
        )
        .unwrap();
        for n in 0..4 {
            assert!(hochschild_differential(&a, &m, n).unwrap().is_zero());
        }
    }

    #[test]
    fn hochschild_squares_to_zero_on_dual_numbers() {
        let d2 = Arc::new(fixtures::d2());
        let m = adjoint_bimodule(&d2);
        for n in 0..3 {
            let d0 = hochschild_differential(&d2, &m, n).unwrap();
            let d1 = hochschild_differential(&d2, &m, n + 1).unwrap();
            assert!(d1.mul(&d0).unwrap().is_zero(), "degree {n}");
        }
    }

    #[test]
    fn hochschild_rejects_foreign_bimodule() {
        let d2 = Arc::new(fixtures::d2());
        let u3 = fixtures::u3();
        assert!(matches!(
            hochschild_differential(&u3, &adjoint_bimodule(&d2), 1),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rota_baxter_dual_numbers_differentials() {
        let t = fixtures::rb_d2();
        assert!(o_operator_differential(&t, 0).unwrap().is_zero());
        let d1 = o_operator_differential(&t, 1).unwrap();
        // only the slot (1, 1) survives, with value −2 f(x)
        let expected = Matrix::from_triplets(8, 4, [(0, 2, int(-2)), (1, 3, int(-2))]).unwrap();
        assert_eq!(d1, expected);
        assert_eq!(rank(&d1), 2);
        assert_eq!(o_operator_cohomology(&t, 2).unwrap(), vec![2, 2]);
    }

    #[test]
    fn zero_operator_cohomology_is_everything() {
        for n in 0..3 {
            assert!(o_operator_differential(&fixtures::zero_d2(), n).unwrap().is_zero());
        }
        assert_eq!(o_operator_cohomology(&fixtures::zero_d2(), 3).unwrap(), vec![2, 4, 8]);
    }

    #[test]
    fn direct_assembly_matches_star_route() {
        for t in fixtures::operators() {
            let star = star_algebra(&t).unwrap();
            let induced = induced_bimodule(&t).unwrap();
            for n in 0..3 {
                assert_eq!(
                    o_operator_differential(&t, n).unwrap(),
                    hochschild_differential(&star, &induced, n).unwrap(),
                    "{} degree {n}",
                    t.name
                );
            }
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        let err = o_operator_complex_limited(&fixtures::rb_d2(), 4, 16).unwrap_err();
        assert_eq!(err, Error::SizeLimitExceeded { dim: 32, limit: 16 });
        assert!(o_operator_complex_limited(&fixtures::rb_d2(), 3, 16).is_ok());
    }

    #[test]
    fn cylinder_squares_to_zero() {
        for mor in fixtures::morphisms() {
            let w = cylinder_complex(&mor, 4).unwrap();
            assert!(w.check_square_zero().passed(), "{}", mor.name);
        }
    }

    #[test]
    fn cylinder_degree_zero_coupling() {
        let mor = fixtures::fix_id_rbd2();
        let d0 = cylinder_differential(&mor, 0).unwrap();
        // rows: C¹(M⋆,A) (4), C¹(N⋆,B) (4), B (2); columns A (2), B (2)
        let coupling = d0.slice(8, 10, 0, 4);
        assert_eq!(coupling, Matrix::from_i64(&[&[1, 0, -1, 0], &[0, 1, 0, -1]]));
    }

    #[test]
    fn zero_morphism_cylinder_has_only_coupling() {
        let w = cylinder_complex(&fixtures::fix_zero_k1(), 3).unwrap();
        // φ = 0 and ψ = 0 over zero products: only the −b of degree 0 survives
        assert_eq!(w.differentials[0], Matrix::from_triplets(3, 2, [(2, 1, int(-1))]).unwrap());
        assert!(w.differentials[1..].iter().all(Matrix::is_zero));
        assert_eq!(w.space_dims, vec![2, 3, 3, 3]);
        assert_eq!(w.cohomology().unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn canonical_cocycle_on_fixtures() {
        for mor in fixtures::morphisms() {
            let report = check_canonical_cocycle(&mor);
            assert!(report.passed(), "{}", report.summary());
        }
    }

    #[test]
    fn infinitesimal_examples() {
        let mor = fixtures::fix_id_rbd2();
        let (ta, tb) = (mor.source.map.clone(), mor.target.map.clone());
        assert!(check_infinitesimal(&mor, &ta, &tb).unwrap().passed());
        let zero = LinearMap::zero("0", 2, 2);
        assert!(check_infinitesimal(&mor, &zero, &zero).unwrap().passed());
        // 1 ↦ 1, x ↦ 0 satisfies every first-order identity: d¹ only sees f(x)
        let proj = LinearMap::new("T1", Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert!(check_infinitesimal(&mor, &proj, &proj).unwrap().passed());
        // 1 ↦ 0, x ↦ 1 breaks them at (1, 1): 0 on the left, T₁(2x) = 2 on the right
        let bad = LinearMap::new("T1", Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        let report = check_infinitesimal(&mor, &bad, &bad).unwrap();
        let first = report.check("first-order identity for T_A").unwrap();
        assert_eq!(first.first_witness.as_deref(), Some(&[0, 0][..]));
        assert!(!report.check("first-order identity for T_B").unwrap().passed());
        assert!(report.check("T_{B,1}∘ψ = φ∘T_{A,1}").unwrap().passed());
        assert!(!report.check("δ_W¹(T_{A,1}, T_{B,1}, 0) = 0").unwrap().passed());
    }

    #[test]
    fn cochain_roundtrip() {
        let mor = fixtures::fix_emb();
        let c = CylinderCochain::new(&mor, 1, vec![int(1)], vec![int(2), int(3), int(4), int(5)], Some(vec![int(6), int(7)]))
            .unwrap();
        assert_eq!(CylinderCochain::from_flat(&mor, 1, &c.flatten()).unwrap(), c);
        assert!(CylinderCochain::new(&mor, 0, vec![int(1)], vec![int(2), int(3)], Some(vec![])).is_err());
    }
}
