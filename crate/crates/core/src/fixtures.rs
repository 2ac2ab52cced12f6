//! Built-in fixture catalog.

use std::sync::Arc;

use crate::algebra::{adjoint_bimodule, Algebra, LinearMap, Tensor3};
use crate::linalg::{int, Matrix};
use crate::operators::{OOperator, OOperatorMorphism};

fn algebra(name: &str, labels: &[&str], products: &[([usize; 3], i64)], unit: Option<&[i64]>) -> Algebra {
    let n = labels.len();
    let mult = Tensor3::from_entries([n, n, n], products.iter().map(|(idx, v)| (*idx, int(*v))))
        .expect("fixture indices in range");
    let a = Algebra::new(name, labels.iter().map(|s| s.to_string()).collect(), mult)
        .expect("fixture shape");
    match unit {
        Some(u) => a.with_unit(u.iter().map(|v| int(*v)).collect()).expect("unit length"),
        None => a,
    }
}

/// One-dimensional algebra with zero product.
pub fn k1() -> Algebra {
    algebra("K1", &["e"], &[], None)
}

/// Dual numbers `span{1, x}` with `x² = 0`.
pub fn d2() -> Algebra {
    algebra(
        "D2",
        &["1", "x"],
        &[([0, 0, 0], 1), ([0, 1, 1], 1), ([1, 0, 1], 1)],
        Some(&[1, 0]),
    )
}

/// Upper-triangular 2×2 matrices with basis `e11, e12, e22`.
pub fn u3() -> Algebra {
    algebra(
        "U3",
        &["e11", "e12", "e22"],
        &[([0, 0, 0], 1), ([0, 1, 1], 1), ([1, 2, 1], 1), ([2, 2, 2], 1)],
        Some(&[1, 0, 1]),
    )
}

fn adjoint_operator(name: &str, a: Algebra, map_name: &str, matrix: Matrix) -> OOperator {
    let a = Arc::new(a);
    OOperator::new(name, adjoint_bimodule(&a), LinearMap::new(map_name, matrix)).expect("fixture shape")
}

/// Zero operator on the adjoint bimodule of `K1`.
pub fn zero_k1() -> OOperator {
    adjoint_operator("ZERO-K1", k1(), "0-K1", Matrix::zeros(1, 1))
}

/// Zero operator on the adjoint bimodule of `D2`.
pub fn zero_d2() -> OOperator {
    adjoint_operator("ZERO-D2", d2(), "0-D2", Matrix::zeros(2, 2))
}

/// The weight-0 Rota-Baxter operator `R(1) = x`, `R(x) = 0` on `D2`.
pub fn rb_d2() -> OOperator {
    adjoint_operator("RB-D2", d2(), "R-D2", Matrix::from_i64(&[&[0, 0], &[1, 0]]))
}

/// First nonzero weight-0 Rota-Baxter operator on `U3` in the bounded search
/// order of [`crate::search`].
pub fn fix_u3rb() -> OOperator {
    adjoint_operator("FIX-U3RB", u3(), "R-U3", fix_u3rb_matrix())
}

pub fn fix_id_rbd2() -> OOperatorMorphism {
    OOperatorMorphism::identity("FIX-ID-RBD2", &rb_d2())
}

pub fn fix_zero_k1() -> OOperatorMorphism {
    OOperatorMorphism::zero("FIX-ZERO-K1", &zero_k1(), &zero_k1())
}

/// The pinned result of the bounded morphism search over [`search_operators`].
pub fn fix_emb() -> OOperatorMorphism {
    let (src, tgt, phi, psi) = fix_emb_data();
    OOperatorMorphism::new("FIX-EMB", src, tgt, LinearMap::new("φ-EMB", phi), LinearMap::new("ψ-EMB", psi))
        .expect("fixture shape")
}

/// Operators visited by the morphism search, in catalog order.
pub fn search_operators() -> Vec<OOperator> {
    vec![zero_k1(), zero_d2(), rb_d2(), fix_u3rb()]
}

/// Largest bang carrier dimension admitted by the morphism search.
pub const SEARCH_MAX_BANG_DIM: usize = 6;

pub fn operators() -> Vec<OOperator> {
    vec![zero_k1(), zero_d2(), rb_d2(), fix_u3rb()]
}

pub fn morphisms() -> Vec<OOperatorMorphism> {
    vec![fix_id_rbd2(), fix_emb(), fix_zero_k1()]
}

/// `R(e12) = e22`, all other basis vectors to zero.
fn fix_u3rb_matrix() -> Matrix {
    Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]])
}

/// `ZERO-K1 → RB-D2` with `φ(e) = x` and `ψ(e) = x`.
fn fix_emb_data() -> (OOperator, OOperator, Matrix, Matrix) {
    let embed = Matrix::from_i64(&[&[0], &[1]]);
    (zero_k1(), rb_d2(), embed.clone(), embed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{first_o_morphism, first_rota_baxter, SEARCH_VALUES};

    #[test]
    fn u3_operator_is_first_search_hit() {
        let found = first_rota_baxter(&u3(), &SEARCH_VALUES).expect("search finds an operator");
        assert_eq!(found.matrix(), &fix_u3rb_matrix());
    }

    #[test]
    fn embedding_is_first_search_hit() {
        let found = first_o_morphism(&search_operators(), SEARCH_MAX_BANG_DIM, &SEARCH_VALUES)
            .expect("search finds a morphism");
        let (src, tgt, phi, psi) = fix_emb_data();
        assert_eq!(found.source, src);
        assert_eq!(found.target, tgt);
        assert_eq!(found.phi.matrix(), &phi);
        assert_eq!(found.psi.matrix(), &psi);
    }
}
