//! Workspace documents: named algebras, bimodules, maps, operators,
//! morphisms and r-matrices in one JSON file, with exact rationals.
//!
//! Rationals are written as JSON integers, `"p/q"` strings, or
//! `{"num": .., "den": ..}` objects. Tensors and matrices are sparse lists of
//! `[i, j, k, value]` and `[row, col, value]` entries with 0-based indices.

use std::path::Path;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Bimodule, LinearMap, Tensor3};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::{format_scalar, parse_scalar, Matrix, Scalar};
use crate::operators::{OOperator, OOperatorMorphism};
use crate::rmatrix::WedgeElement;

/// The only supported ground field.
pub const FIELD: &str = "Q";

/// Largest basis or matrix dimension a document may declare; algebra and
/// bimodule tensors are stored densely.
pub const MAX_DIM: usize = 64;

fn check_dim(kind: &str, name: &str, dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::InvalidWorkspace(format!(
            "{kind} `{name}` has dimension {dim}; the limit is {MAX_DIM}"
        )));
    }
    Ok(())
}

/// A named skew element of `A ∧ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRMatrix {
    pub name: String,
    pub element: WedgeElement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_limit: Option<usize>,
    /// Entry values admitted by bounded enumerations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_values: Option<Vec<i64>>,
}

/// Fully resolved workspace; every collection keeps document order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub algebras: Vec<Arc<Algebra>>,
    pub bimodules: Vec<Bimodule>,
    pub maps: Vec<LinearMap>,
    pub operators: Vec<OOperator>,
    pub morphisms: Vec<OOperatorMorphism>,
    pub rmatrices: Vec<NamedRMatrix>,
    pub settings: Settings,
}

fn unresolved<T>(kind: &'static str, name: &str) -> Result<T> {
    Err(Error::UnresolvedReference {
        kind,
        name: name.to_string(),
    })
}

/// Adds `item` unless an equal item of that name is present; a different
/// item under the same name is an error.
fn insert<T: PartialEq>(items: &mut Vec<T>, item: T, name: impl Fn(&T) -> &str, kind: &str) -> Result<()> {
    match items.iter().find(|x| name(x) == name(&item)) {
        Some(existing) if *existing == item => Ok(()),
        Some(_) => Err(Error::InvalidWorkspace(format!(
            "two different {kind} definitions named `{}`",
            name(&item)
        ))),
        None => {
            items.push(item);
            Ok(())
        }
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_algebra(&mut self, a: Arc<Algebra>) -> Result<()> {
        insert(&mut self.algebras, a, |x| &x.name, "algebra")
    }

    pub fn add_bimodule(&mut self, m: Bimodule) -> Result<()> {
        self.add_algebra(Arc::clone(&m.algebra))?;
        insert(&mut self.bimodules, m, |x| &x.name, "bimodule")
    }

    pub fn add_map(&mut self, f: LinearMap) -> Result<()> {
        insert(&mut self.maps, f, |x| &x.name, "map")
    }

    pub fn add_operator(&mut self, t: OOperator) -> Result<()> {
        self.add_bimodule(t.bimodule.clone())?;
        self.add_map(t.map.clone())?;
        insert(&mut self.operators, t, |x| &x.name, "operator")
    }

    pub fn add_morphism(&mut self, mor: OOperatorMorphism) -> Result<()> {
        self.add_operator(mor.source.clone())?;
        self.add_operator(mor.target.clone())?;
        self.add_map(mor.phi.clone())?;
        self.add_map(mor.psi.clone())?;
        insert(&mut self.morphisms, mor, |x| &x.name, "morphism")
    }

    pub fn add_rmatrix(&mut self, r: NamedRMatrix) -> Result<()> {
        self.add_algebra(Arc::clone(&r.element.algebra))?;
        insert(&mut self.rmatrices, r, |x| &x.name, "r-matrix")
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>> {
        self.algebras.iter().find(|x| x.name == name).map_or_else(|| unresolved("algebra", name), Ok)
    }

    pub fn bimodule(&self, name: &str) -> Result<&Bimodule> {
        self.bimodules.iter().find(|x| x.name == name).map_or_else(|| unresolved("bimodule", name), Ok)
    }

    pub fn map(&self, name: &str) -> Result<&LinearMap> {
        self.maps.iter().find(|x| x.name == name).map_or_else(|| unresolved("map", name), Ok)
    }

    pub fn operator(&self, name: &str) -> Result<&OOperator> {
        self.operators.iter().find(|x| x.name == name).map_or_else(|| unresolved("operator", name), Ok)
    }

    pub fn morphism(&self, name: &str) -> Result<&OOperatorMorphism> {
        self.morphisms.iter().find(|x| x.name == name).map_or_else(|| unresolved("morphism", name), Ok)
    }

    pub fn rmatrix(&self, name: &str) -> Result<&NamedRMatrix> {
        self.rmatrices.iter().find(|x| x.name == name).map_or_else(|| unresolved("r-matrix", name), Ok)
    }
}

// Document layer: the JSON shape, converted to and from the resolved form.

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawInt {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
    Ratio { num: RawInt, den: RawInt },
}

impl RawScalar {
    fn resolve(&self) -> Result<Scalar> {
        let text = |r: &RawInt| match r {
            RawInt::Int(n) => n.to_string(),
            RawInt::Text(s) => s.clone(),
        };
        match self {
            RawScalar::Int(n) => parse_scalar(&n.to_string()),
            RawScalar::Text(s) => parse_scalar(s),
            RawScalar::Ratio { num, den } => {
                let (num, den) = (text(num), text(den));
                if num.contains('/') || den.contains('/') {
                    return Err(Error::InvalidRational(format!("{num}/{den}")));
                }
                parse_scalar(&format!("{num}/{den}"))
            }
        }
    }

    fn from_scalar(value: &Scalar) -> Self {
        match value.is_integer().then(|| value.numer().to_i64()).flatten() {
            Some(n) => RawScalar::Int(n),
            None => RawScalar::Text(format_scalar(value)),
        }
    }
}

type Entry3 = (usize, usize, usize, RawScalar);
type Entry2 = (usize, usize, RawScalar);

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<RawScalar>>,
    #[serde(default)]
    products: Vec<Entry3>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum BimoduleKind {
    Adjoint,
    Coadjoint,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    name: String,
    algebra: String,
    /// Shorthand for the (co)adjoint bimodule; excludes explicit actions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<BimoduleKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    /// `[i, p, q, v]`: `e_i · m_p` has coordinate `v` on `m_q`.
    #[serde(default)]
    left: Vec<Entry3>,
    /// `[p, i, q, v]`: `m_p · e_i` has coordinate `v` on `m_q`.
    #[serde(default)]
    right: Vec<Entry3>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    /// Target dimension.
    rows: usize,
    /// Source dimension.
    cols: usize,
    #[serde(default)]
    entries: Vec<Entry2>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperator {
    name: String,
    bimodule: String,
    map: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    name: String,
    source: String,
    target: String,
    phi: String,
    psi: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRMatrix {
    name: String,
    algebra: String,
    /// `[i, j, v]`: coefficient `v` of `e_i ⊗ e_j`.
    #[serde(default)]
    entries: Vec<Entry2>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    field: String,
    #[serde(default)]
    algebras: Vec<RawAlgebra>,
    #[serde(default)]
    bimodules: Vec<RawBimodule>,
    #[serde(default)]
    maps: Vec<RawMap>,
    #[serde(default)]
    operators: Vec<RawOperator>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
    #[serde(default)]
    rmatrices: Vec<RawRMatrix>,
    #[serde(default)]
    settings: Settings,
}

fn tensor(dims: [usize; 3], entries: &[Entry3]) -> Result<Tensor3> {
    let resolved = entries
        .iter()
        .map(|(i, j, k, v)| Ok(([*i, *j, *k], v.resolve()?)))
        .collect::<Result<Vec<_>>>()?;
    Tensor3::from_entries(dims, resolved)
}

fn matrix(rows: usize, cols: usize, entries: &[Entry2]) -> Result<Matrix> {
    let resolved = entries
        .iter()
        .map(|(r, c, v)| Ok((*r, *c, v.resolve()?)))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_triplets(rows, cols, resolved)
}

fn tensor_entries(t: &Tensor3) -> Vec<Entry3> {
    t.nonzero_entries()
        .into_iter()
        .map(|([i, j, k], v)| (i, j, k, RawScalar::from_scalar(&v)))
        .collect()
}

fn matrix_entries(m: &Matrix) -> Vec<Entry2> {
    m.triplets().map(|(r, c, v)| (r, c, RawScalar::from_scalar(v))).collect()
}

impl RawWorkspace {
    fn resolve(self) -> Result<Workspace> {
        if self.field != FIELD {
            return Err(Error::InvalidWorkspace(format!(
                "unsupported field `{}`; only `{FIELD}` is available",
                self.field
            )));
        }
        let mut ws = Workspace::new();
        let fresh = |present: bool, kind: &str, name: &str| {
            if present {
                Err(Error::InvalidWorkspace(format!("duplicate {kind} name `{name}`")))
            } else {
                Ok(())
            }
        };
        for raw in self.algebras {
            fresh(ws.algebra(&raw.name).is_ok(), "algebra", &raw.name)?;
            let n = raw.basis.len();
            check_dim("algebra", &raw.name, n)?;
            let a = Algebra::new(&raw.name, raw.basis, tensor([n, n, n], &raw.products)?)?;
            let a = match raw.unit {
                Some(u) => a.with_unit(u.iter().map(RawScalar::resolve).collect::<Result<_>>()?)?,
                None => a,
            };
            ws.algebras.push(Arc::new(a));
        }
        for raw in self.bimodules {
            fresh(ws.bimodule(&raw.name).is_ok(), "bimodule", &raw.name)?;
            let a = Arc::clone(ws.algebra(&raw.algebra)?);
            let m = match raw.kind {
                Some(kind) => {
                    if raw.basis.is_some() || !raw.left.is_empty() || !raw.right.is_empty() {
                        return Err(Error::InvalidWorkspace(format!(
                            "bimodule `{}` gives both a kind and explicit actions",
                            raw.name
                        )));
                    }
                    let mut m = match kind {
                        BimoduleKind::Adjoint => crate::algebra::adjoint_bimodule(&a),
                        BimoduleKind::Coadjoint => crate::algebra::coadjoint_bimodule(&a),
                    };
                    m.name = raw.name;
                    m
                }
                None => {
                    let basis = raw.basis.ok_or_else(|| {
                        Error::InvalidWorkspace(format!("bimodule `{}` needs a basis or a kind", raw.name))
                    })?;
                    let (d, n) = (a.dim(), basis.len());
                    check_dim("bimodule", &raw.name, n)?;
                    let left = tensor([d, n, n], &raw.left)?;
                    let right = tensor([n, d, n], &raw.right)?;
                    Bimodule::new(raw.name, a, basis, left, right)?
                }
            };
            ws.bimodules.push(m);
        }
        for raw in self.maps {
            fresh(ws.map(&raw.name).is_ok(), "map", &raw.name)?;
            check_dim("map", &raw.name, raw.rows.max(raw.cols))?;
            let m = matrix(raw.rows, raw.cols, &raw.entries)?;
            ws.maps.push(LinearMap::new(raw.name, m));
        }
        for raw in self.operators {
            fresh(ws.operator(&raw.name).is_ok(), "operator", &raw.name)?;
            let t = OOperator::new(&raw.name, ws.bimodule(&raw.bimodule)?.clone(), ws.map(&raw.map)?.clone())?;
            ws.operators.push(t);
        }
        for raw in self.morphisms {
            fresh(ws.morphism(&raw.name).is_ok(), "morphism", &raw.name)?;
            let mor = OOperatorMorphism::new(
                &raw.name,
                ws.operator(&raw.source)?.clone(),
                ws.operator(&raw.target)?.clone(),
                ws.map(&raw.phi)?.clone(),
                ws.map(&raw.psi)?.clone(),
            )?;
            ws.morphisms.push(mor);
        }
        for raw in self.rmatrices {
            fresh(ws.rmatrix(&raw.name).is_ok(), "r-matrix", &raw.name)?;
            let a = Arc::clone(ws.algebra(&raw.algebra)?);
            let n = a.dim();
            let element = WedgeElement::new(a, matrix(n, n, &raw.entries)?)?;
            ws.rmatrices.push(NamedRMatrix { name: raw.name, element });
        }
        ws.settings = self.settings;
        Ok(ws)
    }

    fn from_workspace(ws: &Workspace) -> Self {
        RawWorkspace {
            field: FIELD.to_string(),
            algebras: ws
                .algebras
                .iter()
                .map(|a| RawAlgebra {
                    name: a.name.clone(),
                    basis: a.basis_labels.clone(),
                    unit: a.unit.as_ref().map(|u| u.iter().map(RawScalar::from_scalar).collect()),
                    products: tensor_entries(a.mult()),
                })
                .collect(),
            bimodules: ws
                .bimodules
                .iter()
                .map(|m| RawBimodule {
                    name: m.name.clone(),
                    algebra: m.algebra.name.clone(),
                    kind: None,
                    basis: Some(m.basis_labels.clone()),
                    left: tensor_entries(m.left()),
                    right: tensor_entries(m.right()),
                })
                .collect(),
            maps: ws
                .maps
                .iter()
                .map(|f| RawMap {
                    name: f.name.clone(),
                    rows: f.target_dim(),
                    cols: f.source_dim(),
                    entries: matrix_entries(f.matrix()),
                })
                .collect(),
            operators: ws
                .operators
                .iter()
                .map(|t| RawOperator {
                    name: t.name.clone(),
                    bimodule: t.bimodule.name.clone(),
                    map: t.map.name.clone(),
                })
                .collect(),
            morphisms: ws
                .morphisms
                .iter()
                .map(|m| RawMorphism {
                    name: m.name.clone(),
                    source: m.source.name.clone(),
                    target: m.target.name.clone(),
                    phi: m.phi.name.clone(),
                    psi: m.psi.name.clone(),
                })
                .collect(),
            rmatrices: ws
                .rmatrices
                .iter()
                .map(|r| RawRMatrix {
                    name: r.name.clone(),
                    algebra: r.element.algebra.name.clone(),
                    entries: matrix_entries(r.element.matrix()),
                })
                .collect(),
            settings: ws.settings.clone(),
        }
    }
}

/// Parses and resolves a workspace document.
pub fn parse_workspace_str(text: &str) -> Result<Workspace> {
    let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.resolve()
}

pub fn parse_workspace(path: &Path) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_workspace_str(&text)
}

/// Canonical document text: explicit actions, sparse nonzero entries in
/// index order, integers as JSON numbers.
pub fn emit_workspace(ws: &Workspace) -> String {
    let value = serde_json::to_value(RawWorkspace::from_workspace(ws)).expect("serializable");
    let mut text = String::new();
    write_value(&value, 0, &mut text);
    text.push('\n');
    text
}

/// Pretty JSON with arrays of scalars kept on one line.
fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    let flat = |items: &[Value]| items.iter().all(|x| !x.is_array() && !x.is_object());
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if flat(items) => out.push_str(&serde_json::to_string(v).expect("serializable")),
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|a| flat(a))) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(x).expect("serializable"));
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("serializable")),
    }
}

/// Names accepted by [`fixture_workspace`], with one-line descriptions.
pub const FIXTURE_CATALOG: &[(&str, &str)] = &[
    ("K1", "one-dimensional algebra with zero product"),
    ("D2", "dual numbers span{1, x}, x² = 0"),
    ("U3", "upper-triangular 2×2 matrices"),
    ("ZERO-K1", "zero operator on the adjoint bimodule of K1"),
    ("ZERO-D2", "zero operator on the adjoint bimodule of D2"),
    ("RB-D2", "Rota-Baxter operator R(1) = x, R(x) = 0 on D2"),
    ("FIX-U3RB", "first weight-0 Rota-Baxter operator on U3 in search order"),
    ("FIX-ID-RBD2", "identity morphism of RB-D2"),
    ("FIX-EMB", "first non-identity morphism in search order (ZERO-K1 → RB-D2)"),
    ("FIX-ZERO-K1", "zero morphism ZERO-K1 → ZERO-K1"),
    ("all", "every fixture above"),
];

/// Workspace holding the named fixture and everything it references.
pub fn fixture_workspace(name: &str) -> Result<Workspace> {
    let mut ws = Workspace::new();
    let algebra = |a: Algebra| Arc::new(a);
    match name {
        "K1" => ws.add_algebra(algebra(fixtures::k1()))?,
        "D2" => ws.add_algebra(algebra(fixtures::d2()))?,
        "U3" => ws.add_algebra(algebra(fixtures::u3()))?,
        "all" => {
            for a in [fixtures::k1(), fixtures::d2(), fixtures::u3()] {
                ws.add_algebra(algebra(a))?;
            }
            for t in fixtures::operators() {
                ws.add_operator(t)?;
            }
            for m in fixtures::morphisms() {
                ws.add_morphism(m)?;
            }
        }
        _ => {
            if let Some(t) = fixtures::operators().into_iter().find(|t| t.name == name) {
                ws.add_operator(t)?;
            } else if let Some(m) = fixtures::morphisms().into_iter().find(|m| m.name == name) {
                ws.add_morphism(m)?;
            } else {
                return unresolved("fixture", name);
            }
        }
    }
    Ok(ws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    const MINIMAL: &str = r#"{
  "field": "Q",
  "algebras": [
    {"name": "D2", "basis": ["1", "x"], "unit": [1, 0],
     "products": [[0, 0, 0, 1], [0, 1, 1, "1"], [1, 0, 1, {"num": 2, "den": 2}]]}
  ],
  "bimodules": [{"name": "ad", "algebra": "D2", "kind": "adjoint"}],
  "maps": [{"name": "R", "rows": 2, "cols": 2, "entries": [[1, 0, 1]]}],
  "operators": [{"name": "RB-D2", "bimodule": "ad", "map": "R"}]
}"#;

    #[test]
    fn shorthand_document_resolves_to_the_fixture() {
        let ws = parse_workspace_str(MINIMAL).unwrap();
        let t = ws.operator("RB-D2").unwrap();
        let expected = fixtures::rb_d2();
        assert_eq!(t.algebra(), expected.algebra());
        assert_eq!(t.map.matrix(), expected.map.matrix());
        assert_eq!(t.bimodule.left(), expected.bimodule.left());
        assert_eq!(t.bimodule.right(), expected.bimodule.right());
    }

    #[test]
    fn every_fixture_round_trips() {
        for (name, _) in FIXTURE_CATALOG {
            let ws = fixture_workspace(name).unwrap();
            let text = emit_workspace(&ws);
            assert_eq!(parse_workspace_str(&text).unwrap(), ws, "{name}");
            assert_eq!(emit_workspace(&parse_workspace_str(&text).unwrap()), text);
        }
    }

    #[test]
    fn fractions_round_trip_exactly() {
        let mut ws = Workspace::new();
        let m = Matrix::from_triplets(1, 2, vec![(0, 0, parse_scalar("-3/7").unwrap()), (0, 1, int(5))]).unwrap();
        ws.add_map(LinearMap::new("f", m)).unwrap();
        let text = emit_workspace(&ws);
        assert!(text.contains("\"-3/7\""));
        assert_eq!(parse_workspace_str(&text).unwrap(), ws);
    }

    #[test]
    fn zero_denominator_is_invalid_rational() {
        let text = MINIMAL.replace(r#"{"num": 2, "den": 2}"#, r#"{"num": 1, "den": 0}"#);
        assert!(matches!(parse_workspace_str(&text), Err(Error::InvalidRational(_))));
        let text = MINIMAL.replace(r#""1"]"#, r#""1/0"]"#);
        assert!(matches!(parse_workspace_str(&text), Err(Error::InvalidRational(_))));
    }

    #[test]
    fn undefined_algebra_is_unresolved() {
        let text = MINIMAL.replace(r#""algebra": "D2""#, r#""algebra": "D3""#);
        assert_eq!(
            parse_workspace_str(&text),
            Err(Error::UnresolvedReference {
                kind: "algebra",
                name: "D3".into()
            })
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\n  \"field\": \"Q\",\n  \"algebras\": [,]\n}";
        match parse_workspace_str(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 16)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors_are_rejected() {
        let wrong_field = MINIMAL.replace(r#""field": "Q""#, r#""field": "F2""#);
        assert!(matches!(parse_workspace_str(&wrong_field), Err(Error::InvalidWorkspace(_))));
        let out_of_range = MINIMAL.replace("[[1, 0, 1]]", "[[2, 0, 1]]");
        assert!(matches!(parse_workspace_str(&out_of_range), Err(Error::ShapeMismatch(_))));
        let huge = MINIMAL.replace(r#""rows": 2"#, r#""rows": 100000"#);
        assert!(matches!(parse_workspace_str(&huge), Err(Error::InvalidWorkspace(_))));
        let unknown_key = MINIMAL.replace(r#""field": "Q","#, r#""field": "Q", "extra": 1,"#);
        assert!(matches!(parse_workspace_str(&unknown_key), Err(Error::Parse { .. })));
        let skew = r#"{"field": "Q", "algebras": [{"name": "K", "basis": ["a", "b"]}],
            "rmatrices": [{"name": "r", "algebra": "K", "entries": [[0, 1, 1]]}]}"#;
        assert!(matches!(parse_workspace_str(skew), Err(Error::NotSkew(_))));
    }

    #[test]
    fn conflicting_definitions_are_rejected() {
        let mut ws = fixture_workspace("D2").unwrap();
        let mut other = fixtures::d2();
        other.unit = None;
        assert!(matches!(ws.add_algebra(Arc::new(other)), Err(Error::InvalidWorkspace(_))));
        assert!(ws.add_algebra(Arc::new(fixtures::d2())).is_ok());
        assert_eq!(ws.algebras.len(), 1);
    }

    #[test]
    fn unknown_fixture_is_unresolved() {
        assert!(matches!(fixture_workspace("D7"), Err(Error::UnresolvedReference { .. })));
    }
}
