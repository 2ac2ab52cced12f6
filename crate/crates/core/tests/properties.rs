use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use ooclab::algebra::{adjoint_bimodule, validate_algebra, validate_bimodule, Algebra, Bimodule, LinearMap, Tensor3};
use ooclab::bang::{bang_operator, check_identifications};
use ooclab::cct::{check_tau0_chain_map, check_tau_chain_map};
use ooclab::fixtures;
use ooclab::hochschild::{cylinder_complex, o_operator_cohomology};
use ooclab::linalg::{kernel_basis, rank, Matrix, Scalar};
use ooclab::operators::{check_o_morphism, check_o_operator, OOperator, OOperatorMorphism};
use ooclab::search::{bounded_kernel_vectors, bounded_matrices, SEARCH_VALUES};

fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=4, 1i64..=3, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // sparse entries keep rank deficiency common
        prop::collection::vec(prop_oneof![3 => Just(ratio(0, 1)), 2 => scalar()], r * c)
            .prop_map(move |v| Matrix::from_dense(r, c, &v).unwrap())
    })
}

/// The same operator written in the rescaled basis `e_i ↦ s_i e_i` of an
/// adjoint Rota-Baxter fixture.
fn rescaled(t: &OOperator, s: &[Scalar]) -> OOperator {
    let a = t.algebra();
    let n = a.dim();
    let entries = a
        .mult()
        .nonzero_entries()
        .into_iter()
        .map(|([i, j, k], v)| ([i, j, k], v * &s[i] * &s[j] / &s[k]));
    let mult = Tensor3::from_entries([n, n, n], entries).unwrap();
    let b = Arc::new(Algebra::new(format!("{}'", a.name), a.basis_labels.clone(), mult).unwrap());
    let map = Matrix::from_triplets(n, n, t.map.matrix().triplets().map(|(i, p, v)| (i, p, v * &s[p] / &s[i]))).unwrap();
    OOperator::new(format!("{}'", t.name), adjoint_bimodule(&b), LinearMap::new("R'", map)).unwrap()
}

fn zero_operator(name: &str, dim_a: usize, dim_m: usize) -> OOperator {
    let a = Arc::new(Algebra::zero_product(name, dim_a));
    let labels = (0..dim_m).map(|p| format!("m{p}")).collect();
    let m = Bimodule::new(
        format!("0({name})"),
        a,
        labels,
        Tensor3::zeros(dim_a, dim_m, dim_m),
        Tensor3::zeros(dim_m, dim_a, dim_m),
    )
    .unwrap();
    OOperator::new(name, m, LinearMap::zero("0", dim_m, dim_a)).unwrap()
}

/// `T(m₁, m₂) = αR(m₁) + βR(m₂)` on `ad(D2) ⊕ ad(D2)` with `R` from RB-D2.
fn doubled_rb_d2(alpha: &Scalar, beta: &Scalar) -> OOperator {
    let a = Arc::clone(fixtures::rb_d2().algebra());
    let ad = adjoint_bimodule(&a);
    let mut left = Tensor3::zeros(2, 4, 4);
    let mut right = Tensor3::zeros(4, 2, 4);
    for ([i, p, q], v) in ad.left().nonzero_entries() {
        for off in [0, 2] {
            *left.get_mut(i, p + off, q + off) = v.clone();
            *right.get_mut(p + off, i, q + off) = v.clone();
        }
    }
    let labels = ["1", "x", "1'", "x'"].map(String::from).to_vec();
    let m = Bimodule::new("ad⊕ad", a, labels, left, right).unwrap();
    let map = Matrix::from_triplets(2, 4, [(1, 0, alpha.clone()), (1, 2, beta.clone())]).unwrap();
    OOperator::new("RB2", m, LinearMap::new("T", map)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_column_count(m in matrix(6, 6)) {
        prop_assert_eq!(rank(&m) + kernel_basis(&m).dim(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(5, 5)) {
        let k = kernel_basis(&m);
        for v in k.dense_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| *x == ratio(0, 1)));
        }
    }

    #[test]
    fn bounded_kernel_vectors_match_brute_force(rows in 1usize..=2, seed in prop::collection::vec(-1i64..=1, 8)) {
        let cols = 4;
        let entries: Vec<Scalar> = seed[..rows * cols].iter().map(|v| ratio(*v, 1)).collect();
        let c = Matrix::from_dense(rows, cols, &entries).unwrap();
        let brute: Vec<Vec<i64>> = bounded_matrices(1, cols, &SEARCH_VALUES)
            .filter(|v| c.mul(&v.transpose()).unwrap().is_zero())
            .map(|v| (0..cols).map(|j| v.get(0, j).numer().try_into().unwrap()).collect())
            .collect();
        prop_assert_eq!(bounded_kernel_vectors(&c, &SEARCH_VALUES), brute);
    }

    #[test]
    fn cohomology_is_invariant_under_basis_scaling(
        which in 0usize..3,
        s in prop::collection::vec(nonzero_scalar(), 3),
    ) {
        let t = [fixtures::zero_d2(), fixtures::rb_d2(), fixtures::fix_u3rb()][which].clone();
        let scaled = rescaled(&t, &s[..t.algebra().dim()]);
        prop_assert!(validate_algebra(scaled.algebra()).passed());
        prop_assert!(check_o_operator(&scaled).passed());
        prop_assert_eq!(o_operator_cohomology(&scaled, 3).unwrap(), o_operator_cohomology(&t, 3).unwrap());
    }

    #[test]
    fn rb_d2_endomorphisms_give_valid_bang_operators(lambda in scalar(), b in scalar()) {
        // φ(1) = 1, φ(x) = λx; ψ(1) = λ + bx, ψ(x) = λ²x
        let t = fixtures::rb_d2();
        let phi = Matrix::from_triplets(2, 2, [(0, 0, ratio(1, 1)), (1, 1, lambda.clone())]).unwrap();
        let psi = Matrix::from_triplets(2, 2, [(0, 0, lambda.clone()), (1, 0, b), (1, 1, &lambda * &lambda)]).unwrap();
        let mor = OOperatorMorphism::new("m", t.clone(), t, LinearMap::new("φ", phi), LinearMap::new("ψ", psi)).unwrap();
        prop_assert!(check_o_morphism(&mor).passed());
        let bang = bang_operator(&mor).unwrap();
        prop_assert!(validate_bimodule(&bang.bimodule).passed());
        prop_assert!(check_o_operator(&bang).passed());
        prop_assert!(check_identifications(&mor).unwrap().passed());
        prop_assert!(cylinder_complex(&mor, 3).unwrap().check_square_zero().passed());
    }

    #[test]
    fn random_maps_between_zero_operators_give_valid_bang_operators(
        dims in (1usize..=2, 1usize..=2, 1usize..=2, 1usize..=2),
        seed in prop::collection::vec(scalar(), 8),
    ) {
        let (da, dm, db, dn) = dims;
        let src = zero_operator("ZA", da, dm);
        let tgt = zero_operator("ZB", db, dn);
        let phi = Matrix::from_dense(db, da, &seed[..da * db]).unwrap();
        let psi = Matrix::from_dense(dn, dm, &seed[4..4 + dm * dn]).unwrap();
        let mor = OOperatorMorphism::new("z", src, tgt, LinearMap::new("φ", phi), LinearMap::new("ψ", psi)).unwrap();
        prop_assert!(check_o_morphism(&mor).passed());
        let bang = bang_operator(&mor).unwrap();
        prop_assert!(validate_algebra(bang.algebra()).passed());
        prop_assert!(validate_bimodule(&bang.bimodule).passed());
        prop_assert!(check_o_operator(&bang).passed());
        prop_assert!(check_identifications(&mor).unwrap().passed());
        prop_assert!(cylinder_complex(&mor, 3).unwrap().check_square_zero().passed());
        prop_assert!(check_tau_chain_map(&mor, 3).unwrap().iter().all(|ok| *ok));
        prop_assert!(check_tau0_chain_map(&mor).unwrap());
    }

    #[test]
    fn sums_into_rb_d2_satisfy_the_comparison_chain_map(alpha in scalar(), beta in scalar()) {
        let src = doubled_rb_d2(&alpha, &beta);
        prop_assert!(validate_bimodule(&src.bimodule).passed());
        prop_assert!(check_o_operator(&src).passed());
        let psi = Matrix::from_triplets(2, 4, [
            (0, 0, alpha.clone()), (1, 1, alpha.clone()), (0, 2, beta.clone()), (1, 3, beta.clone()),
        ]).unwrap();
        let phi = LinearMap::identity("id", 2);
        let mor = OOperatorMorphism::new("sum", src, fixtures::rb_d2(), phi, LinearMap::new("ψ", psi)).unwrap();
        prop_assert!(check_o_morphism(&mor).passed());
        let bang = bang_operator(&mor).unwrap();
        prop_assert!(validate_bimodule(&bang.bimodule).passed());
        prop_assert!(check_o_operator(&bang).passed());
        prop_assert!(check_identifications(&mor).unwrap().passed());
        prop_assert!(cylinder_complex(&mor, 3).unwrap().check_square_zero().passed());
        prop_assert!(check_tau_chain_map(&mor, 3).unwrap().iter().all(|ok| *ok));
    }
}
