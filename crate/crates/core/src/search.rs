//! Deterministic bounded searches used to pick fixtures.
//!
//! Candidates are integer matrices with entries drawn from a fixed value list,
//! enumerated row-major with the last entry varying fastest.

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{validate_algebra_morphism, Algebra, LinearMap};
use crate::linalg::{int, Matrix, RowEchelon, Scalar};
use crate::operators::{check_o_morphism, check_rota_baxter, OOperator, OOperatorMorphism};

/// Entry values in enumeration order.
pub const SEARCH_VALUES: [i64; 3] = [0, 1, -1];

/// Every `rows × cols` matrix with entries in `values`, in odometer order.
pub fn bounded_matrices(rows: usize, cols: usize, values: &[i64]) -> impl Iterator<Item = Matrix> + '_ {
    let len = rows * cols;
    let total = values.len().checked_pow(len as u32).expect("search space too large");
    (0..total).map(move |mut code| {
        let mut digits = vec![0usize; len];
        for d in digits.iter_mut().rev() {
            *d = code % values.len();
            code /= values.len();
        }
        let entries: Vec<_> = digits.iter().map(|&d| int(values[d])).collect();
        Matrix::from_dense(rows, cols, &entries).expect("entry count matches shape")
    })
}

/// Every vector `v` with entries in `values` and `c·v = 0`, in odometer
/// order. Only the free coordinates of the reduced row-echelon form of `c`
/// are enumerated; pivot coordinates are solved for.
pub fn bounded_kernel_vectors(c: &Matrix, values: &[i64]) -> Vec<Vec<i64>> {
    let mut e = RowEchelon::new(c.cols());
    for row in c.row_vecs() {
        e.insert(row.clone());
    }
    e.make_reduced();
    let pivots: Vec<usize> = e.pivots().collect();
    let free: Vec<usize> = (0..c.cols()).filter(|j| !pivots.contains(j)).collect();
    let position = |v: i64| values.iter().position(|x| *x == v);
    let mut out: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
    for assignment in bounded_matrices(1, free.len(), values) {
        let mut v = vec![0i64; c.cols()];
        for (s, j) in free.iter().enumerate() {
            v[*j] = assignment.get(0, s).to_integer().to_i64().expect("small entry");
        }
        let mut ok = true;
        for row in e.rows() {
            let (lead, _) = row.leading().expect("nonzero row");
            let mut x = Scalar::zero();
            for (j, coeff) in row.entries() {
                if j != lead {
                    x -= coeff * int(v[*j]);
                }
            }
            match x.is_integer().then(|| x.to_integer().to_i64()).flatten() {
                Some(n) if position(n).is_some() => v[*lead] = n,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let code = v.iter().map(|x| position(*x).expect("value from list")).collect();
            out.push((code, v));
        }
    }
    out.sort();
    out.into_iter().map(|(_, v)| v).collect()
}

/// First nonzero weight-0 Rota-Baxter operator on `a`.
pub fn first_rota_baxter(a: &Algebra, values: &[i64]) -> Option<LinearMap> {
    bounded_matrices(a.dim(), a.dim(), values)
        .filter(|m| !m.is_zero())
        .map(|m| LinearMap::new(format!("R-{}", a.name), m))
        .find(|r| check_rota_baxter(r, a, &int(0)).expect("square map").passed())
}

/// First O-operator morphism `(φ, ψ)` between the given operators such that
/// the target operator is nonzero, φ and ψ are both nonzero, the pair is not
/// an identity, and both bang carriers have dimension at most `max_bang_dim`.
/// Operator pairs are visited source-major in the given order.
pub fn first_o_morphism(operators: &[OOperator], max_bang_dim: usize, values: &[i64]) -> Option<OOperatorMorphism> {
    for source in operators {
        for target in operators {
            if target.map.matrix().is_zero() {
                continue;
            }
            let (da, db) = (source.algebra().dim(), target.algebra().dim());
            let (dm, dn) = (source.bimodule.dim(), target.bimodule.dim());
            if da + 2 * db > max_bang_dim || dm + 2 * dn > max_bang_dim {
                continue;
            }
            for phi in bounded_matrices(db, da, values) {
                if phi.is_zero() {
                    continue;
                }
                let phi = LinearMap::new("φ", phi);
                let is_morphism = validate_algebra_morphism(&phi, source.algebra(), target.algebra())
                    .expect("shape matches")
                    .passed();
                if !is_morphism {
                    continue;
                }
                for psi in bounded_matrices(dn, dm, values) {
                    if psi.is_zero() {
                        continue;
                    }
                    let identity = source == target
                        && phi.matrix() == &Matrix::identity(da)
                        && psi == Matrix::identity(dm);
                    if identity {
                        continue;
                    }
                    let mor = OOperatorMorphism::new(
                        format!("{}->{}", source.name, target.name),
                        source.clone(),
                        target.clone(),
                        phi.clone(),
                        LinearMap::new("ψ", psi),
                    )
                    .expect("shapes match");
                    if check_o_morphism(&mor).passed() {
                        return Some(mor);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_order() {
        let all: Vec<_> = bounded_matrices(1, 2, &[0, 1]).collect();
        assert_eq!(
            all,
            vec![
                Matrix::from_i64(&[&[0, 0]]),
                Matrix::from_i64(&[&[0, 1]]),
                Matrix::from_i64(&[&[1, 0]]),
                Matrix::from_i64(&[&[1, 1]]),
            ]
        );
        assert_eq!(bounded_matrices(3, 3, &SEARCH_VALUES).count(), 19683);
    }

    #[test]
    fn kernel_vectors_match_brute_force() {
        let c = Matrix::from_i64(&[&[1, -1, 0, 0], &[0, 0, 1, 1]]);
        let brute: Vec<Vec<i64>> = bounded_matrices(1, 4, &SEARCH_VALUES)
            .filter(|m| c.mul(&m.transpose()).unwrap().is_zero())
            .map(|m| (0..4).map(|j| m.get(0, j).to_integer().to_i64().unwrap()).collect())
            .collect();
        assert_eq!(bounded_kernel_vectors(&c, &SEARCH_VALUES), brute);
        assert_eq!(brute.len(), 9);
    }
}
