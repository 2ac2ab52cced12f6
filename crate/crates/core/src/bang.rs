//! Gerstenhaber-Schack bang constructions for a morphism: the algebra
//! `A + B + Bφ`, the bimodule `M + N + Nφ`, and the auxiliary O-operator
//! `T_{φ!}` built from an O-operator morphism.
//!
//! Basis order is always base block, target block, tagged block, each in the
//! factor's own order. The formal symbol φ is never a basis vector; the tagged
//! block is a copy of the target basis.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{basis_vector, validate_algebra_morphism, Algebra, Bimodule, LinearMap, Tensor3};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::operators::{ensure_o_morphism, induced_bimodule, star_algebra, OOperator, OOperatorMorphism};
use crate::report::{CheckOutcome, ValidationReport};

/// Which block of a bang carrier a basis index lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Base,
    Target,
    Tagged,
}

/// Block layout `[base, target, target]` of a bang carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blocks {
    pub base: usize,
    pub target: usize,
}

impl Blocks {
    pub fn dim(&self) -> usize {
        self.base + 2 * self.target
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.base, self.target, self.target]
    }

    /// Block of a basis index and its position inside that block.
    pub fn locate(&self, i: usize) -> (Part, usize) {
        if i < self.base {
            (Part::Base, i)
        } else if i < self.base + self.target {
            (Part::Target, i - self.base)
        } else {
            (Part::Tagged, i - self.base - self.target)
        }
    }

    pub fn index(&self, part: Part, i: usize) -> usize {
        match part {
            Part::Base => i,
            Part::Target => self.base + i,
            Part::Tagged => self.base + self.target + i,
        }
    }
}

/// `φ! = A + B + Bφ` with `(a + b₁ + b₂φ)(a' + b₁' + b₂'φ) = aa' + b₁b₁' + (b₂φ(a') + b₁b₂')φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BangAlgebra {
    pub carrier: Arc<Algebra>,
    pub blocks: Blocks,
    pub phi: LinearMap,
}

/// `ψ! = M + N + Nφ` as a bimodule over a [`BangAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BangBimodule {
    pub carrier: Bimodule,
    pub blocks: Blocks,
}

fn tagged_labels(labels: &[String], tag: &str) -> Vec<String> {
    labels.iter().map(|l| format!("{l}{tag}")).collect()
}

pub fn bang_algebra(a: &Algebra, b: &Algebra, phi: &LinearMap) -> Result<BangAlgebra> {
    let report = validate_algebra_morphism(phi, a, b)?;
    if !report.passed() {
        return Err(Error::NotAMorphism(report.summary()));
    }
    let blocks = Blocks {
        base: a.dim(),
        target: b.dim(),
    };
    let n = blocks.dim();
    let mut mult = Tensor3::zeros(n, n, n);
    let put = |mult: &mut Tensor3, i: usize, j: usize, part: Part, v: &[crate::linalg::Scalar]| {
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                *mult.get_mut(i, j, blocks.index(part, k)) += x;
            }
        }
    };
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            put(&mut mult, i, j, Part::Base, a.basis_product(i, j));
        }
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let (bi, bj) = (blocks.index(Part::Target, i), blocks.index(Part::Target, j));
            put(&mut mult, bi, bj, Part::Target, b.basis_product(i, j));
            // b_i · (b_j φ) = (b_i b_j) φ
            let tj = blocks.index(Part::Tagged, j);
            put(&mut mult, bi, tj, Part::Tagged, b.basis_product(i, j));
        }
        // (b_i φ) · a_j = (b_i φ(a_j)) φ
        let ti = blocks.index(Part::Tagged, i);
        for j in 0..a.dim() {
            let v = b.mul(&basis_vector(b.dim(), i), &phi.column(j));
            put(&mut mult, ti, j, Part::Tagged, &v);
        }
    }
    let mut labels = a.basis_labels.clone();
    labels.extend(b.basis_labels.iter().cloned());
    labels.extend(tagged_labels(&b.basis_labels, "φ"));
    let carrier = Algebra::new(format!("{}!", phi.name), labels, mult)?;
    Ok(BangAlgebra {
        carrier: Arc::new(carrier),
        blocks,
        phi: phi.clone(),
    })
}

/// Checks `ψ(am) = φ(a)ψ(m)` and `ψ(ma) = ψ(m)φ(a)`.
pub fn check_module_map(m: &Bimodule, n: &Bimodule, phi: &LinearMap, psi: &LinearMap) -> ValidationReport {
    let mut left = CheckOutcome::new("ψ(am) = φ(a)ψ(m)");
    let mut right = CheckOutcome::new("ψ(ma) = ψ(m)φ(a)");
    for i in 0..m.algebra.dim() {
        let phi_i = phi.column(i);
        for p in 0..m.dim() {
            let psi_p = psi.column(p);
            left.record(psi.apply(m.left().fiber(i, p)) == n.act_left(&phi_i, &psi_p), &[i, p]);
            right.record(psi.apply(m.right().fiber(p, i)) == n.act_right(&psi_p, &phi_i), &[p, i]);
        }
    }
    let mut report = ValidationReport::new(format!("module map {}", psi.name));
    report.push(left);
    report.push(right);
    report
}

pub fn bang_bimodule(m: &Bimodule, n: &Bimodule, psi: &LinearMap, over: &BangAlgebra) -> Result<BangBimodule> {
    let blocks_a = over.blocks;
    if m.algebra.dim() != blocks_a.base || n.algebra.dim() != blocks_a.target {
        return Err(Error::ShapeMismatch(format!(
            "bimodules over algebras of dimension {} and {} for a bang algebra with blocks {:?}",
            m.algebra.dim(),
            n.algebra.dim(),
            blocks_a
        )));
    }
    psi.check_shape(m.dim(), n.dim())?;
    let phi = &over.phi;
    let report = check_module_map(m, n, phi, psi);
    if !report.passed() {
        return Err(Error::NotAModuleMap(report.summary()));
    }
    let blocks = Blocks {
        base: m.dim(),
        target: n.dim(),
    };
    let (na, nm) = (blocks_a.dim(), blocks.dim());
    let mut left = Tensor3::zeros(na, nm, nm);
    let mut right = Tensor3::zeros(nm, na, nm);
    let put = |t: &mut Tensor3, i: usize, j: usize, part: Part, v: &[crate::linalg::Scalar]| {
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                *t.get_mut(i, j, blocks.index(part, k)) += x;
            }
        }
    };
    let (a_base, a_target, a_tagged) = (Part::Base, Part::Target, Part::Tagged);
    for i in 0..blocks_a.base {
        let ai = blocks_a.index(a_base, i);
        let phi_i = phi.column(i);
        for p in 0..m.dim() {
            put(&mut left, ai, p, Part::Base, m.left().fiber(i, p));
            put(&mut right, p, ai, Part::Base, m.right().fiber(p, i));
        }
        for p in 0..n.dim() {
            // (n_p φ) · a_i = (n_p φ(a_i)) φ
            let tp = blocks.index(Part::Tagged, p);
            put(&mut right, tp, ai, Part::Tagged, &n.act_right(&basis_vector(n.dim(), p), &phi_i));
        }
    }
    for i in 0..blocks_a.target {
        let bi = blocks_a.index(a_target, i);
        let ti = blocks_a.index(a_tagged, i);
        for p in 0..n.dim() {
            let np = blocks.index(Part::Target, p);
            let tp = blocks.index(Part::Tagged, p);
            put(&mut left, bi, np, Part::Target, n.left().fiber(i, p));
            put(&mut right, np, bi, Part::Target, n.right().fiber(p, i));
            // b_i · (n_p φ) = (b_i n_p) φ and n_p · (b_i φ) = (n_p b_i) φ
            put(&mut left, bi, tp, Part::Tagged, n.left().fiber(i, p));
            put(&mut right, np, ti, Part::Tagged, n.right().fiber(p, i));
        }
        for p in 0..m.dim() {
            // (b_i φ) · m_p = (b_i ψ(m_p)) φ
            let v = n.act_left(&basis_vector(blocks_a.target, i), &psi.column(p));
            put(&mut left, ti, p, Part::Tagged, &v);
        }
    }
    let mut labels = m.basis_labels.clone();
    labels.extend(n.basis_labels.iter().cloned());
    labels.extend(tagged_labels(&n.basis_labels, "φ"));
    let carrier = Bimodule::new(format!("{}!", psi.name), Arc::clone(&over.carrier), labels, left, right)?;
    Ok(BangBimodule { carrier, blocks })
}

/// `T_{φ!}(m + n₁ + n₂φ) = T_A(m) + T_B(n₁) + T_B(n₂)φ`.
pub fn bang_operator(mor: &OOperatorMorphism) -> Result<OOperator> {
    ensure_o_morphism(mor)?;
    let (src, tgt) = (&mor.source, &mor.target);
    let algebra = bang_algebra(src.algebra(), tgt.algebra(), &mor.phi)?;
    let module = bang_bimodule(&src.bimodule, &tgt.bimodule, &mor.psi, &algebra)?;
    let (ta, tb) = (src.map.matrix(), tgt.map.matrix());
    let map = Matrix::block(
        &algebra.blocks.sizes(),
        &module.blocks.sizes(),
        &[(0, 0, ta), (1, 1, tb), (2, 2, tb)],
    )?;
    OOperator::new(
        format!("T!({})", mor.name),
        module.carrier,
        LinearMap::new(format!("T!({})", mor.name), map),
    )
}

/// Compares the structures induced by `T_{φ!}` with the bang constructions
/// applied to the induced structures of the endpoints, under the identity
/// identification of carriers: the star product of `ψ!` against the bang
/// product of `ψ⋆: M⋆ → N⋆`, and the induced actions on `φ!` against the bang
/// bimodule of `⟨A, B, φ⋆⟩`.
pub fn check_identifications(mor: &OOperatorMorphism) -> Result<ValidationReport> {
    ensure_o_morphism(mor)?;
    let bang = bang_operator(mor)?;
    let star_bang = star_algebra(&bang)?;
    let induced_bang = induced_bimodule(&bang)?;

    let star_src = star_algebra(&mor.source)?;
    let star_tgt = star_algebra(&mor.target)?;
    let bang_star = bang_algebra(&star_src, &star_tgt, &mor.psi)?;
    let bimod_bang = bang_bimodule(
        &induced_bimodule(&mor.source)?,
        &induced_bimodule(&mor.target)?,
        &mor.phi,
        &bang_star,
    )?;

    let n = star_bang.dim();
    let mut product = CheckOutcome::new("star product of ψ! equals bang product of ψ⋆");
    for i in 0..n {
        for j in 0..n {
            let same = star_bang.basis_product(i, j) == bang_star.carrier.basis_product(i, j);
            product.record(same, &[i, j]);
        }
    }
    let (lhs, rhs) = (&induced_bang, &bimod_bang.carrier);
    let mut left = CheckOutcome::new("left action of T_{φ!} equals bang left action");
    let mut right = CheckOutcome::new("right action of T_{φ!} equals bang right action");
    for i in 0..n {
        for p in 0..lhs.dim() {
            left.record(lhs.left().fiber(i, p) == rhs.left().fiber(i, p), &[i, p]);
            right.record(lhs.right().fiber(p, i) == rhs.right().fiber(p, i), &[p, i]);
        }
    }
    let mut report = ValidationReport::new(format!("bang identifications for {}", mor.name));
    report.push(product);
    report.push(left);
    report.push(right);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_bimodule, validate_algebra, validate_bimodule};
    use crate::fixtures;
    use crate::operators::check_o_operator;

    #[test]
    fn identity_bang_of_dual_numbers() {
        let d2 = fixtures::d2();
        let bang = bang_algebra(&d2, &d2, &LinearMap::identity("id", 2)).unwrap();
        assert_eq!(bang.carrier.dim(), 6);
        assert!(validate_algebra(&bang.carrier).passed());
        // (xφ)·1 = (x φ(1))φ = xφ
        let x_phi = bang.blocks.index(Part::Tagged, 1);
        assert_eq!(bang.carrier.basis_product(x_phi, 0), basis_vector(6, x_phi).as_slice());
    }

    #[test]
    fn mixed_base_target_products_vanish() {
        for (a, b) in [(fixtures::d2(), fixtures::d2()), (fixtures::k1(), fixtures::d2())] {
            let phi = if a.dim() == 1 {
                fixtures::fix_emb().phi
            } else {
                LinearMap::identity("id", 2)
            };
            let bang = bang_algebra(&a, &b, &phi).unwrap();
            let bl = bang.blocks;
            for i in 0..bl.dim() {
                for j in 0..bl.dim() {
                    let (pi, _) = bl.locate(i);
                    let (pj, _) = bl.locate(j);
                    let vanishes = matches!(
                        (pi, pj),
                        (Part::Base, Part::Target)
                            | (Part::Target, Part::Base)
                            | (Part::Base, Part::Tagged)
                            | (Part::Tagged, Part::Target)
                            | (Part::Tagged, Part::Tagged)
                    );
                    if vanishes {
                        assert!(bang.carrier.basis_product(i, j).iter().all(Zero::is_zero), "({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_phi_kills_tagged_times_base() {
        let d2 = fixtures::d2();
        let bang = bang_algebra(&d2, &d2, &LinearMap::zero("0", 2, 2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let ti = bang.blocks.index(Part::Tagged, i);
                assert!(bang.carrier.basis_product(ti, j).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn bang_algebra_rejects_non_morphism() {
        let d2 = fixtures::d2();
        let bad = LinearMap::new("bad", Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert!(matches!(bang_algebra(&d2, &d2, &bad), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn identity_bang_bimodule_is_valid() {
        let d2 = Arc::new(fixtures::d2());
        let ad = adjoint_bimodule(&d2);
        let id = LinearMap::identity("id", 2);
        let over = bang_algebra(&d2, &d2, &id).unwrap();
        let bm = bang_bimodule(&ad, &ad, &id, &over).unwrap();
        assert!(validate_bimodule(&bm.carrier).passed());
        // pure base algebra part never acts on the tagged module part
        for i in 0..2 {
            for p in 0..2 {
                let tp = bm.blocks.index(Part::Tagged, p);
                assert!(bm.carrier.left().fiber(i, tp).iter().all(Zero::is_zero));
            }
        }
        // the adjoint bang bimodule is the adjoint bimodule of the bang algebra
        assert_eq!(bm.carrier.left(), over.carrier.mult());
        assert_eq!(bm.carrier.right(), over.carrier.mult());
    }

    #[test]
    fn zero_psi_drops_tagged_psi_term() {
        let d2 = Arc::new(fixtures::d2());
        let ad = adjoint_bimodule(&d2);
        let over = bang_algebra(&d2, &d2, &LinearMap::zero("0", 2, 2)).unwrap();
        let bm = bang_bimodule(&ad, &ad, &LinearMap::zero("0", 2, 2), &over).unwrap();
        for i in 0..2 {
            for p in 0..2 {
                let ti = over.blocks.index(Part::Tagged, i);
                assert!(bm.carrier.left().fiber(ti, p).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn bang_bimodule_rejects_non_module_map() {
        let d2 = Arc::new(fixtures::d2());
        let ad = adjoint_bimodule(&d2);
        let over = bang_algebra(&d2, &d2, &LinearMap::identity("id", 2)).unwrap();
        // ψ(1) = 1, ψ(x) = 0: ψ(x·1) = 0 but φ(x)ψ(1) = x
        let proj = LinearMap::new("proj", Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        let err = bang_bimodule(&ad, &ad, &proj, &over);
        assert!(matches!(err, Err(Error::NotAModuleMap(_))));
    }

    #[test]
    fn bang_operators_of_fixtures() {
        let t = bang_operator(&fixtures::fix_id_rbd2()).unwrap();
        assert_eq!(t.bimodule.dim(), 6);
        let r = fixtures::rb_d2().map.matrix().clone();
        let diag = Matrix::block(&[2, 2, 2], &[2, 2, 2], &[(0, 0, &r), (1, 1, &r), (2, 2, &r)]).unwrap();
        assert_eq!(t.map.matrix(), &diag);
        assert!(check_o_operator(&t).passed());
        for mor in fixtures::morphisms() {
            assert!(check_o_operator(&bang_operator(&mor).unwrap()).passed(), "{}", mor.name);
        }
        let zero = bang_operator(&fixtures::fix_zero_k1()).unwrap();
        assert!(zero.map.matrix().is_zero());
    }

    #[test]
    fn identifications_hold_on_fixtures() {
        for mor in fixtures::morphisms() {
            let report = check_identifications(&mor).unwrap();
            assert!(report.passed(), "{}", report.summary());
        }
    }
}
