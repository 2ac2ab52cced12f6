//! Command dispatch and report rendering.
//!
//! Reports carry no timing or environment data, so the same workspace and
//! command always render to the same bytes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{validate_algebra, validate_bimodule, Algebra, Bimodule};
use crate::bang::check_identifications;
use crate::cct::{cct_report, FIRST_ASSERTED_DEGREE};
use crate::error::Result;
use crate::hochschild::{check_canonical_cocycle, cylinder_complex, o_operator_complex, CochainComplex};
use crate::linalg::{format_scalar, Matrix};
use crate::operators::{check_o_morphism, check_o_operator, check_rota_baxter, induced_bimodule, star_algebra};
use crate::report::{CheckOutcome, ValidationReport};
use crate::rmatrix::{
    check_r_matrix, enumerate_weak_morphisms, r_matrix_equivalence_scan, r_sharp_operator, rota_baxter_bang,
    rota_baxter_bang_generic, rota_baxter_cylinder, weak_to_o_morphism,
};
use crate::search::SEARCH_VALUES;
use crate::workspace::{emit_workspace, fixture_workspace, Workspace, FIXTURE_CATALOG};

/// Degree bound used when neither the command line nor the workspace sets one.
pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Validates the named object, or every object when `None`.
    Validate { name: Option<String> },
    Star { operator: Option<String> },
    Cohomology { operator: Option<String>, max_degree: Option<usize> },
    Cylinder { morphism: Option<String>, max_degree: Option<usize> },
    Cct { morphism: Option<String>, max_degree: Option<usize> },
    Rmatrix { algebra: Option<String>, rmatrix: Option<String> },
    RbBang { morphism: Option<String>, max_degree: Option<usize> },
    FixturesList,
    FixturesEmit { name: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    /// Informational lines are reported but do not affect the exit status.
    pub asserted: bool,
    pub cases: usize,
    pub failures: usize,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub subject: String,
    pub checks: Vec<CheckLine>,
    /// Named values in insertion order.
    pub data: Vec<(String, Value)>,
}

impl Section {
    fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
            data: Vec::new(),
        }
    }

    fn outcome(&mut self, c: &CheckOutcome, asserted: bool) {
        self.checks.push(CheckLine {
            name: c.name.clone(),
            passed: c.passed(),
            asserted,
            cases: c.cases,
            failures: c.failures,
            witness: c.first_witness.clone(),
        });
    }

    fn report(&mut self, r: &ValidationReport) {
        for c in &r.checks {
            self.outcome(c, true);
        }
    }

    fn flag(&mut self, name: impl Into<String>, passed: bool, asserted: bool) {
        let mut c = CheckOutcome::new(name);
        c.record(passed, &[]);
        self.outcome(&c, asserted);
    }

    fn datum(&mut self, name: &str, value: Value) {
        self.data.push((name.to_string(), value));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
    pub passed: bool,
}

impl Report {
    fn new(command: impl Into<String>, sections: Vec<Section>) -> Self {
        let passed = sections.iter().all(Section::passed);
        Self {
            command: command.into(),
            sections,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let data = |s: &Section| Value::Object(s.data.iter().cloned().collect());
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| json!({"subject": s.subject, "checks": s.checks, "data": data(s)}))
            .collect();
        let doc = json!({"command": self.command, "passed": self.passed, "sections": sections});
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ooclab {}\n", self.command);
        for s in &self.sections {
            out.push_str(&format!("\n== {} ==\n", s.subject));
            for c in &s.checks {
                let tag = match (c.asserted, c.passed) {
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                    (false, true) => "info: pass",
                    (false, false) => "info: fail",
                };
                out.push_str(&format!("  [{tag}] {}", c.name));
                if c.failures > 0 {
                    out.push_str(&format!("  ({} of {} cases failed", c.failures, c.cases));
                    match &c.witness {
                        Some(w) if !w.is_empty() => out.push_str(&format!("; first at {w:?})")),
                        _ => out.push(')'),
                    }
                }
                out.push('\n');
            }
            for (name, value) in &s.data {
                out.push_str(&format!("  {name}: {value}\n"));
            }
        }
        out.push_str(&format!("\nresult: {}\n", if self.passed { "pass" } else { "FAIL" }));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

/// What a command produces: a report, or a workspace document for `emit`.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Report(Report),
    Document(String),
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match self {
            Outcome::Report(r) => r.render(format),
            Outcome::Document(d) => d.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Outcome::Report(r) => r.passed,
            Outcome::Document(_) => true,
        }
    }
}

fn select<'a, T>(
    items: &'a [T],
    name: &Option<String>,
    lookup: impl Fn(&str) -> Result<&'a T>,
) -> Result<Vec<&'a T>> {
    match name {
        Some(n) => Ok(vec![lookup(n)?]),
        None => Ok(items.iter().collect()),
    }
}

fn entries_json(entries: impl Iterator<Item = (Vec<usize>, String)>) -> Value {
    Value::Array(
        entries
            .map(|(idx, v)| {
                let mut row: Vec<Value> = idx.into_iter().map(Value::from).collect();
                row.push(Value::from(v));
                Value::Array(row)
            })
            .collect(),
    )
}

fn algebra_json(a: &Algebra) -> Value {
    entries_json(a.mult().nonzero_entries().into_iter().map(|(i, v)| (i.to_vec(), format_scalar(&v))))
}

fn bimodule_json(m: &Bimodule) -> Value {
    let side = |t: &crate::algebra::Tensor3| {
        entries_json(t.nonzero_entries().into_iter().map(|(i, v)| (i.to_vec(), format_scalar(&v))))
    };
    json!({"left": side(m.left()), "right": side(m.right())})
}

fn matrix_json(m: &Matrix) -> Value {
    entries_json(m.triplets().map(|(r, c, v)| (vec![r, c], format_scalar(v))))
}

fn complex_section(section: &mut Section, complex: &CochainComplex) -> Result<()> {
    section.report(&complex.check_square_zero());
    section.datum("space_dims", json!(complex.space_dims));
    section.datum("cohomology_dims", json!(complex.cohomology()?));
    Ok(())
}

fn validate(ws: &Workspace, name: &Option<String>) -> Result<Vec<Section>> {
    let wanted = |n: &str| name.as_deref().is_none_or(|x| x == n);
    let mut sections = Vec::new();
    let mut push = |r: ValidationReport| {
        let mut s = Section::new(r.subject.clone());
        s.report(&r);
        sections.push(s);
    };
    for a in ws.algebras.iter().filter(|a| wanted(&a.name)) {
        push(validate_algebra(a));
    }
    for m in ws.bimodules.iter().filter(|m| wanted(&m.name)) {
        push(validate_bimodule(m));
    }
    for t in ws.operators.iter().filter(|t| wanted(&t.name)) {
        push(check_o_operator(t));
    }
    for m in ws.morphisms.iter().filter(|m| wanted(&m.name)) {
        push(check_o_morphism(m));
    }
    for r in ws.rmatrices.iter().filter(|r| wanted(&r.name)) {
        let mut report = check_r_matrix(&r.element);
        report.subject = format!("r-matrix {}", r.name);
        push(report);
    }
    if let Some(n) = name {
        if sections.is_empty() && ws.map(n).is_err() {
            return Err(crate::Error::UnresolvedReference {
                kind: "object",
                name: n.clone(),
            });
        }
    }
    Ok(sections)
}

fn star(ws: &Workspace, operator: &Option<String>) -> Result<Vec<Section>> {
    let mut sections = Vec::new();
    for t in select(&ws.operators, operator, |n| ws.operator(n))? {
        let mut s = Section::new(format!("star structures of {}", t.name));
        let a = star_algebra(t)?;
        let m = induced_bimodule(t)?;
        s.report(&validate_algebra(&a));
        s.report(&validate_bimodule(&m));
        s.datum("star_products", algebra_json(&a));
        s.datum("induced_actions", bimodule_json(&m));
        sections.push(s);
    }
    Ok(sections)
}

fn cohomology(ws: &Workspace, operator: &Option<String>, max_degree: usize) -> Result<Vec<Section>> {
    let mut sections = Vec::new();
    for t in select(&ws.operators, operator, |n| ws.operator(n))? {
        let mut s = Section::new(format!("cohomology of {}", t.name));
        complex_section(&mut s, &o_operator_complex(t, max_degree)?)?;
        sections.push(s);
    }
    Ok(sections)
}

fn cylinder(ws: &Workspace, morphism: &Option<String>, max_degree: usize) -> Result<Vec<Section>> {
    let mut sections = Vec::new();
    for m in select(&ws.morphisms, morphism, |n| ws.morphism(n))? {
        let mut s = Section::new(format!("cylinder of {}", m.name));
        complex_section(&mut s, &cylinder_complex(m, max_degree)?)?;
        s.report(&check_canonical_cocycle(m));
        sections.push(s);
    }
    Ok(sections)
}

fn cct(ws: &Workspace, morphism: &Option<String>, max_degree: usize) -> Result<Vec<Section>> {
    let mut sections = Vec::new();
    for m in select(&ws.morphisms, morphism, |n| ws.morphism(n))? {
        let mut s = Section::new(format!("comparison for {}", m.name));
        let ids = check_identifications(m)?;
        s.report(&ids);
        let r = cct_report(m, max_degree)?;
        if r.valid() {
            for (n, ok) in r.tau_chain_map_ok.iter().enumerate() {
                let name = format!("τ chain map, degree {n} → {}", n + 1);
                s.flag(name, *ok, n > 0);
            }
            for n in &r.degrees {
                let asserted = *n >= FIRST_ASSERTED_DEGREE;
                s.flag(format!("equal cohomology dims, degree {n}"), r.cylinder_dims[*n] == r.bang_dims[*n], asserted);
            }
            for i in &r.induced_iso_ranks {
                let asserted = i.degree >= FIRST_ASSERTED_DEGREE;
                s.flag(format!("induced map bijective, degree {}", i.degree), i.bijective(), asserted);
            }
            s.datum("cylinder_dims", json!(r.cylinder_dims));
            s.datum("bang_dims", json!(r.bang_dims));
            s.datum("induced_ranks", json!(r.induced_iso_ranks.iter().map(|i| i.rank).collect::<Vec<_>>()));
        }
        s.datum("informational_degrees", json!(r.informational_degrees));
        s.datum("convention", json!(r.convention));
        sections.push(s);
    }
    Ok(sections)
}

fn rmatrix(ws: &Workspace, algebra: &Option<String>, rmatrix: &Option<String>) -> Result<Vec<Section>> {
    let values = ws.settings.enumeration_values.clone().unwrap_or_else(|| SEARCH_VALUES.to_vec());
    let mut sections = Vec::new();
    let scan_all = algebra.is_none() && rmatrix.is_none();
    if algebra.is_some() || scan_all {
        for a in select(&ws.algebras, algebra, |n| ws.algebra(n))? {
            let mut s = Section::new(format!("r-matrices on {}", a.name));
            let scan = r_matrix_equivalence_scan(a, &values);
            s.flag("r-matrices are exactly the r♯ that are O-operators", scan.agree(), true);
            let weak = enumerate_weak_morphisms(a, &values);
            let converted = weak.iter().all(|w| weak_to_o_morphism(w).is_ok());
            s.flag("every weak morphism gives an O-operator morphism", converted, true);
            s.datum("skew_candidates", json!(scan.candidates));
            s.datum("r_matrices", json!(scan.r_matrices.len()));
            s.datum("weak_morphisms", json!(weak.len()));
            sections.push(s);
        }
    }
    if rmatrix.is_some() || scan_all {
        for r in select(&ws.rmatrices, rmatrix, |n| ws.rmatrix(n))? {
            let mut s = Section::new(format!("r-matrix {}", r.name));
            let yb = check_r_matrix(&r.element);
            let op = check_o_operator(&r_sharp_operator(format!("{}♯", r.name), &r.element));
            for c in yb.checks.iter().chain(&op.checks) {
                s.outcome(c, false);
            }
            s.flag("[[r, r]] = 0 iff r♯ is an O-operator", yb.passed() == op.passed(), true);
            s.datum("r_sharp", matrix_json(&crate::rmatrix::r_sharp(&r.element).matrix().clone()));
            sections.push(s);
        }
    }
    Ok(sections)
}

fn is_adjoint(t: &crate::operators::OOperator) -> bool {
    let a = t.algebra();
    t.bimodule.left() == a.mult() && t.bimodule.right() == a.mult() && t.bimodule.dim() == a.dim()
}

fn rb_bang(ws: &Workspace, morphism: &Option<String>, max_degree: usize) -> Result<Vec<Section>> {
    let mut sections = Vec::new();
    let chosen = select(&ws.morphisms, morphism, |n| ws.morphism(n))?;
    for m in chosen {
        let eligible = is_adjoint(&m.source) && is_adjoint(&m.target) && m.phi.matrix() == m.psi.matrix();
        if !eligible {
            if morphism.is_some() {
                return Err(crate::Error::NotAnOOperator(format!(
                    "{} is not a morphism of Rota-Baxter operators (adjoint bimodules, φ = ψ)",
                    m.name
                )));
            }
            continue;
        }
        let mut s = Section::new(format!("Rota-Baxter bang of {}", m.name));
        let bang = rota_baxter_bang(&m.phi, &m.source, &m.target)?;
        let generic = rota_baxter_bang_generic(&m.phi, &m.source, &m.target)?;
        s.report(&check_rota_baxter(&bang.map, bang.algebra(), &crate::linalg::zero())?);
        s.flag("R! equals the generic bang operator", bang.map.matrix() == generic.map.matrix(), true);
        let same_actions = bang.bimodule.left() == generic.bimodule.left()
            && bang.bimodule.right() == generic.bimodule.right()
            && bang.algebra().mult() == generic.algebra().mult();
        s.flag("bang carriers agree", same_actions, true);
        let rb = rota_baxter_cylinder(&m.phi, &m.source, &m.target, max_degree)?;
        let gen = cylinder_complex(m, max_degree)?;
        s.flag("Rota-Baxter cylinder equals the generic cylinder", rb.differentials == gen.differentials, true);
        s.datum("bang_dim", json!(bang.bimodule.dim()));
        s.datum("cylinder_cohomology_dims", json!(rb.cohomology()?));
        sections.push(s);
    }
    Ok(sections)
}

fn fixtures_list() -> Vec<Section> {
    let mut s = Section::new("fixture catalog");
    for (name, description) in FIXTURE_CATALOG {
        s.datum(name, json!(description));
    }
    vec![s]
}

/// Canonical echo of a command, used as the report header.
pub fn command_echo(cmd: &Command, max_degree: usize) -> String {
    let opt = |flag: &str, v: &Option<String>| v.as_ref().map(|x| format!(" --{flag} {x}")).unwrap_or_default();
    match cmd {
        Command::Validate { name } => format!("validate{}", name.as_ref().map_or(" --all".into(), |n| format!(" {n}"))),
        Command::Star { operator } => format!("star{}", opt("operator", operator)),
        Command::Cohomology { operator, .. } => format!("cohomology{} --max-degree {max_degree}", opt("operator", operator)),
        Command::Cylinder { morphism, .. } => format!("cylinder{} --max-degree {max_degree}", opt("morphism", morphism)),
        Command::Cct { morphism, .. } => format!("cct{} --max-degree {max_degree}", opt("morphism", morphism)),
        Command::Rmatrix { algebra, rmatrix } => {
            format!("rmatrix{}{}", opt("algebra", algebra), opt("rmatrix", rmatrix))
        }
        Command::RbBang { morphism, .. } => format!("rb-bang{} --max-degree {max_degree}", opt("morphism", morphism)),
        Command::FixturesList => "fixtures list".into(),
        Command::FixturesEmit { name } => format!("fixtures emit {name}"),
    }
}

pub fn run_command(ws: &Workspace, cmd: &Command) -> Result<Outcome> {
    let degree = |d: &Option<usize>| d.or(ws.settings.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
    let max_degree = match cmd {
        Command::Cohomology { max_degree, .. }
        | Command::Cylinder { max_degree, .. }
        | Command::Cct { max_degree, .. }
        | Command::RbBang { max_degree, .. } => degree(max_degree),
        _ => degree(&None),
    };
    let sections = match cmd {
        Command::Validate { name } => validate(ws, name)?,
        Command::Star { operator } => star(ws, operator)?,
        Command::Cohomology { operator, .. } => cohomology(ws, operator, max_degree)?,
        Command::Cylinder { morphism, .. } => cylinder(ws, morphism, max_degree)?,
        Command::Cct { morphism, .. } => cct(ws, morphism, max_degree)?,
        Command::Rmatrix { algebra, rmatrix: r } => rmatrix(ws, algebra, r)?,
        Command::RbBang { morphism, .. } => rb_bang(ws, morphism, max_degree)?,
        Command::FixturesList => fixtures_list(),
        Command::FixturesEmit { name } => return Ok(Outcome::Document(emit_workspace(&fixture_workspace(name)?))),
    };
    Ok(Outcome::Report(Report::new(command_echo(cmd, max_degree), sections)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::parse_workspace_str;

    fn catalog() -> Workspace {
        fixture_workspace("all").unwrap()
    }

    fn report(cmd: Command) -> Report {
        match run_command(&catalog(), &cmd).unwrap() {
            Outcome::Report(r) => r,
            Outcome::Document(_) => panic!("expected a report"),
        }
    }

    #[test]
    fn validate_all_passes_on_fixtures() {
        let r = report(Command::Validate { name: None });
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.sections.len(), 3 + 3 + 4 + 3);
    }

    #[test]
    fn zero_operator_cohomology_dims() {
        let r = report(Command::Cohomology {
            operator: Some("ZERO-D2".into()),
            max_degree: Some(3),
        });
        assert!(r.passed);
        assert_eq!(r.command, "cohomology --operator ZERO-D2 --max-degree 3");
        let dims = r.sections[0].data.iter().find(|(k, _)| k == "cohomology_dims").unwrap();
        assert_eq!(dims.1, json!([2, 4, 8]));
    }

    #[test]
    fn cct_on_identity_morphism_reports_dimension_gap() {
        let r = report(Command::Cct {
            morphism: Some("FIX-ID-RBD2".into()),
            max_degree: Some(4),
        });
        assert!(!r.passed);
        let s = &r.sections[0];
        let check = |name: &str| s.checks.iter().find(|c| c.name == name).unwrap().passed;
        assert!(check("τ chain map, degree 2 → 3"));
        assert!(!check("equal cohomology dims, degree 2"));
        assert!(s.data.contains(&("bang_dims".into(), json!([6, 18, 54, 162]))));
    }

    #[test]
    fn rota_baxter_bang_matches_generic_route() {
        let r = report(Command::RbBang {
            morphism: None,
            max_degree: Some(3),
        });
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.sections.len(), 3);
    }

    #[test]
    fn rmatrix_scan_agrees_on_catalog_algebras() {
        let r = report(Command::Rmatrix {
            algebra: Some("D2".into()),
            rmatrix: None,
        });
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn non_r_matrix_is_reported_not_asserted() {
        let text = r#"{"field": "Q",
            "algebras": [{"name": "D2", "basis": ["1", "x"], "unit": [1, 0],
                          "products": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]}],
            "rmatrices": [{"name": "r", "algebra": "D2", "entries": [[0, 1, 1], [1, 0, -1]]}]}"#;
        let ws = parse_workspace_str(text).unwrap();
        let Outcome::Report(r) = run_command(&ws, &Command::Rmatrix { algebra: None, rmatrix: Some("r".into()) }).unwrap()
        else {
            panic!("expected a report")
        };
        assert!(r.passed);
        assert!(r.sections[0].checks.iter().any(|c| !c.passed && !c.asserted));
    }

    #[test]
    fn reports_are_deterministic() {
        for cmd in [
            Command::Validate { name: None },
            Command::Star { operator: None },
            Command::Cylinder { morphism: None, max_degree: Some(3) },
            Command::FixturesList,
        ] {
            let a = run_command(&catalog(), &cmd).unwrap().render(Format::Json);
            let b = run_command(&catalog(), &cmd).unwrap().render(Format::Json);
            assert_eq!(a, b);
            assert!(serde_json::from_str::<Value>(&a).is_ok());
        }
    }

    #[test]
    fn emit_round_trips_through_the_parser() {
        let doc = run_command(&catalog(), &Command::FixturesEmit { name: "FIX-EMB".into() }).unwrap();
        let Outcome::Document(text) = doc else { panic!("expected a document") };
        assert_eq!(parse_workspace_str(&text).unwrap(), fixture_workspace("FIX-EMB").unwrap());
    }

    #[test]
    fn unknown_names_are_unresolved() {
        let err = run_command(&catalog(), &Command::Star { operator: Some("NOPE".into()) });
        assert!(matches!(err, Err(crate::Error::UnresolvedReference { .. })));
        let err = run_command(&catalog(), &Command::Validate { name: Some("NOPE".into()) });
        assert!(matches!(err, Err(crate::Error::UnresolvedReference { .. })));
    }
}
