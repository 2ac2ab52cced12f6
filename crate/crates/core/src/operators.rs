//! Rota-Baxter operators, O-operators and their morphisms, with the algebra
//! and bimodule structures they induce.

use std::sync::Arc;

use crate::algebra::{
    basis_vector, validate_algebra_morphism, vec_sub, Algebra, Bimodule, LinearMap, Tensor3, Vector,
};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::report::{CheckOutcome, ValidationReport};

/// A linear map `T: M → A` into an algebra from one of its bimodules.
///
/// Construction only checks shapes; the operator identity is verified by
/// [`check_o_operator`], and every derived construction refuses operators
/// that fail it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OOperator {
    pub name: String,
    pub bimodule: Bimodule,
    pub map: LinearMap,
}

impl OOperator {
    pub fn new(name: impl Into<String>, bimodule: Bimodule, map: LinearMap) -> Result<Self> {
        map.check_shape(bimodule.dim(), bimodule.algebra.dim())?;
        Ok(Self {
            name: name.into(),
            bimodule,
            map,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.bimodule.algebra
    }

    /// `T(e_p)` for the module basis vector `e_p`.
    pub fn image(&self, p: usize) -> Vector {
        self.map.column(p)
    }

    pub fn apply(&self, m: &[Scalar]) -> Vector {
        self.map.apply(m)
    }
}

/// A pair `(φ, ψ)` from `T_A: M → A` to `T_B: N → B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OOperatorMorphism {
    pub name: String,
    pub source: OOperator,
    pub target: OOperator,
    pub phi: LinearMap,
    pub psi: LinearMap,
}

impl OOperatorMorphism {
    pub fn new(
        name: impl Into<String>,
        source: OOperator,
        target: OOperator,
        phi: LinearMap,
        psi: LinearMap,
    ) -> Result<Self> {
        phi.check_shape(source.algebra().dim(), target.algebra().dim())?;
        psi.check_shape(source.bimodule.dim(), target.bimodule.dim())?;
        Ok(Self {
            name: name.into(),
            source,
            target,
            phi,
            psi,
        })
    }

    pub fn identity(name: impl Into<String>, t: &OOperator) -> Self {
        Self {
            name: name.into(),
            source: t.clone(),
            target: t.clone(),
            phi: LinearMap::identity("id", t.algebra().dim()),
            psi: LinearMap::identity("id", t.bimodule.dim()),
        }
    }

    pub fn zero(name: impl Into<String>, source: &OOperator, target: &OOperator) -> Self {
        Self {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            phi: LinearMap::zero("0", source.algebra().dim(), target.algebra().dim()),
            psi: LinearMap::zero("0", source.bimodule.dim(), target.bimodule.dim()),
        }
    }
}

/// Checks `R(a)R(b) = R(a R(b) + R(a) b + λ ab)` on all basis pairs.
pub fn check_rota_baxter(r: &LinearMap, a: &Algebra, weight: &Scalar) -> Result<ValidationReport> {
    r.check_shape(a.dim(), a.dim())?;
    let n = a.dim();
    let images: Vec<Vector> = (0..n).map(|i| r.column(i)).collect();
    let mut check = CheckOutcome::new(format!("Rota-Baxter identity (weight {weight})"));
    for i in 0..n {
        for j in 0..n {
            let lhs = a.mul(&images[i], &images[j]);
            let e_i = basis_vector(n, i);
            let e_j = basis_vector(n, j);
            let mut inner = a.mul(&e_i, &images[j]);
            for (acc, v) in inner.iter_mut().zip(a.mul(&images[i], &e_j)) {
                *acc += v;
            }
            for (acc, v) in inner.iter_mut().zip(a.basis_product(i, j)) {
                *acc += weight * v;
            }
            check.record(lhs == r.apply(&inner), &[i, j]);
        }
    }
    Ok(ValidationReport::single(
        format!("Rota-Baxter operator {} on {}", r.name, a.name),
        check,
    ))
}

/// Checks `T(m)T(n) = T(m·T(n) + T(m)·n)` on all module basis pairs.
pub fn check_o_operator(t: &OOperator) -> ValidationReport {
    let a = t.algebra();
    let m = &t.bimodule;
    let images: Vec<Vector> = (0..m.dim()).map(|p| t.image(p)).collect();
    let mut check = CheckOutcome::new("O-operator identity");
    for p in 0..m.dim() {
        for q in 0..m.dim() {
            let lhs = a.mul(&images[p], &images[q]);
            let e_p = basis_vector(m.dim(), p);
            let e_q = basis_vector(m.dim(), q);
            let inner: Vector = m
                .act_right(&e_p, &images[q])
                .into_iter()
                .zip(m.act_left(&images[p], &e_q))
                .map(|(x, y)| x + y)
                .collect();
            check.record(lhs == t.apply(&inner), &[p, q]);
        }
    }
    ValidationReport::single(format!("O-operator {}", t.name), check)
}

pub(crate) fn ensure_o_operator(t: &OOperator) -> Result<()> {
    let report = check_o_operator(t);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotAnOOperator(report.summary()))
    }
}

/// `m ⋆ m' = m·T(m') + T(m)·m'` on the module basis.
fn star_tensor(t: &OOperator) -> Tensor3 {
    let m = &t.bimodule;
    let n = m.dim();
    let images: Vec<Vector> = (0..n).map(|p| t.image(p)).collect();
    let mut mult = Tensor3::zeros(n, n, n);
    for p in 0..n {
        for q in 0..n {
            let e_p = basis_vector(n, p);
            let e_q = basis_vector(n, q);
            let v: Vector = m
                .act_right(&e_p, &images[q])
                .into_iter()
                .zip(m.act_left(&images[p], &e_q))
                .map(|(x, y)| x + y)
                .collect();
            mult.set_fiber(p, q, &v);
        }
    }
    mult
}

/// The associative algebra `M⋆` carried by the module of an O-operator.
pub fn star_algebra(t: &OOperator) -> Result<Algebra> {
    ensure_o_operator(t)?;
    Algebra::new(
        format!("{}⋆", t.bimodule.name),
        t.bimodule.basis_labels.clone(),
        star_tensor(t),
    )
}

/// `A` as an `M⋆`-bimodule: `l_T(m, a) = T(m)a − T(ma)`, `r_T(a, m) = aT(m) − T(am)`.
pub fn induced_bimodule(t: &OOperator) -> Result<Bimodule> {
    let star = Arc::new(star_algebra(t)?);
    let a = t.algebra();
    let m = &t.bimodule;
    let (na, nm) = (a.dim(), m.dim());
    let mut left = Tensor3::zeros(nm, na, na);
    let mut right = Tensor3::zeros(na, nm, na);
    for p in 0..nm {
        let tp = t.image(p);
        let e_p = basis_vector(nm, p);
        for i in 0..na {
            let e_i = basis_vector(na, i);
            let l = vec_sub(&a.mul(&tp, &e_i), &t.apply(&m.act_right(&e_p, &e_i)));
            left.set_fiber(p, i, &l);
            let r = vec_sub(&a.mul(&e_i, &tp), &t.apply(&m.act_left(&e_i, &e_p)));
            right.set_fiber(i, p, &r);
        }
    }
    Bimodule::new(
        format!("{}_{}", a.name, t.name),
        star,
        a.basis_labels.clone(),
        left,
        right,
    )
}

/// Verifies the morphism displays `T_B∘ψ = φ∘T_A`, `φ(a)ψ(m) = ψ(am)`,
/// `ψ(m)φ(a) = ψ(ma)`, that φ is an algebra morphism, that both endpoints are
/// O-operators, and (as a corollary check) that ψ is multiplicative for the
/// star products.
pub fn check_o_morphism(mor: &OOperatorMorphism) -> ValidationReport {
    let (src, tgt) = (&mor.source, &mor.target);
    let (a, b) = (src.algebra(), tgt.algebra());
    let (m, n) = (&src.bimodule, &tgt.bimodule);
    let (phi, psi) = (&mor.phi, &mor.psi);
    let mut report = ValidationReport::new(format!("O-operator morphism {}", mor.name));
    report.absorb("source", check_o_operator(src));
    report.absorb("target", check_o_operator(tgt));
    let alg = validate_algebra_morphism(phi, a, b).expect("shape checked at construction");
    report.absorb("φ", alg);

    let mut intertwine = CheckOutcome::new("T_B∘ψ = φ∘T_A");
    for p in 0..m.dim() {
        let lhs = tgt.apply(&psi.column(p));
        let rhs = phi.apply(&src.image(p));
        intertwine.record(lhs == rhs, &[p]);
    }
    report.push(intertwine);

    let mut left = CheckOutcome::new("φ(a)ψ(m) = ψ(am)");
    let mut right = CheckOutcome::new("ψ(m)φ(a) = ψ(ma)");
    for i in 0..a.dim() {
        let phi_i = phi.column(i);
        for p in 0..m.dim() {
            let psi_p = psi.column(p);
            let lhs = n.act_left(&phi_i, &psi_p);
            let rhs = psi.apply(m.left().fiber(i, p));
            left.record(lhs == rhs, &[i, p]);
            let lhs = n.act_right(&psi_p, &phi_i);
            let rhs = psi.apply(m.right().fiber(p, i));
            right.record(lhs == rhs, &[p, i]);
        }
    }
    report.push(left);
    report.push(right);

    let (star_m, star_n) = (star_tensor(src), star_tensor(tgt));
    let mut multiplicative = CheckOutcome::new("ψ multiplicative on star algebras");
    for p in 0..m.dim() {
        for q in 0..m.dim() {
            let lhs = psi.apply(star_m.fiber(p, q));
            let rhs = star_n.apply(&psi.column(p), &psi.column(q));
            multiplicative.record(lhs == rhs, &[p, q]);
        }
    }
    report.push(multiplicative);
    report
}

pub(crate) fn ensure_o_morphism(mor: &OOperatorMorphism) -> Result<()> {
    let report = check_o_morphism(mor);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotAMorphism(report.summary()))
    }
}

/// `B` as a bimodule over `M⋆` through `ψ`: `l(m, b) = l_{T_B}(ψ(m), b)`,
/// `r(b, m) = r_{T_B}(b, ψ(m))`.
pub fn pushforward_bimodule(mor: &OOperatorMorphism) -> Result<Bimodule> {
    ensure_o_morphism(mor)?;
    let star_m = Arc::new(star_algebra(&mor.source)?);
    let over_n = induced_bimodule(&mor.target)?;
    let nb = over_n.dim();
    let nm = star_m.dim();
    let mut left = Tensor3::zeros(nm, nb, nb);
    let mut right = Tensor3::zeros(nb, nm, nb);
    for p in 0..nm {
        let psi_p = mor.psi.column(p);
        for j in 0..nb {
            let e_j = basis_vector(nb, j);
            left.set_fiber(p, j, &over_n.act_left(&psi_p, &e_j));
            right.set_fiber(j, p, &over_n.act_right(&e_j, &psi_p));
        }
    }
    Bimodule::new(
        format!("{}_{}", over_n.name, mor.name),
        star_m,
        over_n.basis_labels.clone(),
        left,
        right,
    )
}

/// Checks that φ is a map of `M⋆`-bimodules from `induced_bimodule(source)`
/// to `pushforward_bimodule(mor)`.
pub fn check_phi_star(mor: &OOperatorMorphism) -> Result<ValidationReport> {
    let from = induced_bimodule(&mor.source)?;
    let to = pushforward_bimodule(mor)?;
    let phi = &mor.phi;
    let mut left = CheckOutcome::new("φ(l(m, a)) = l(m, φ(a))");
    let mut right = CheckOutcome::new("φ(r(a, m)) = r(φ(a), m)");
    for p in 0..from.algebra.dim() {
        let e_p = basis_vector(from.algebra.dim(), p);
        for i in 0..from.dim() {
            let phi_i = phi.column(i);
            left.record(phi.apply(from.left().fiber(p, i)) == to.act_left(&e_p, &phi_i), &[p, i]);
            right.record(phi.apply(from.right().fiber(i, p)) == to.act_right(&phi_i, &e_p), &[i, p]);
        }
    }
    let mut report = ValidationReport::new(format!("φ⋆ for {}", mor.name));
    report.push(left);
    report.push(right);
    Ok(report)
}
