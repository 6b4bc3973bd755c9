//! JSON instance files: a field, a quiver with relations, and named modules
//! and complexes over its path algebra.
//!
//! Matrix entries are JSON integers or `"p/q"` strings. Complex terms are
//! either `{"projective": [vertex, ...]}`, the direct sum of the indecomposable
//! projectives at those vertices, or `{"representation": {...}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{path_algebra, Algebra, Arrow, QuiverPresentation, DEFAULT_DIMENSION_CAP};
use crate::complex::{Complex, DEFAULT_LENGTH_CAP};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::module::Module;
use crate::semifree::DegreeWindow;
use crate::silting::DEFAULT_MAX_STEPS;

pub const SCHEMA: u32 = 1;

/// A matrix entry as written in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn scalar(&self, f: Field) -> Result<Scalar> {
        match self {
            Entry::Int(v) => Ok(f.from_i64(*v)),
            Entry::Text(s) => f.parse(s),
        }
    }

    fn from_scalar(f: Field, a: &Scalar) -> Self {
        match f.to_i64(a) {
            Some(v) => Entry::Int(v),
            None => Entry::Text(f.format(a)),
        }
    }
}

pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// One term `coeff * path` of a relation; the path lists arrow labels left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTerm {
    pub coeff: Entry,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

/// A representation: vertex dimensions and one `dims[target] x dims[source]` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TermSpec {
    Projective(Vec<usize>),
    Representation(ModuleSpec),
}

/// Terms in degrees `lo, lo+1, ...`; `differentials[k]` maps term `k` to term `k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub lo: i32,
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub differentials: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub window: DegreeWindow,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// Length cap for projective replacements.
    #[serde(default = "default_cap")]
    pub cap: usize,
    /// Probe objects by name; empty means the default probe set.
    #[serde(default)]
    pub probes: Vec<String>,
}

fn default_max_steps() -> usize {
    DEFAULT_MAX_STEPS
}

fn default_cap() -> usize {
    DEFAULT_LENGTH_CAP
}

impl Default for Options {
    fn default() -> Self {
        Options { window: DegreeWindow::default(), max_steps: DEFAULT_MAX_STEPS, cap: DEFAULT_LENGTH_CAP, probes: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    #[serde(default)]
    pub name: String,
    pub field: Field,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub options: Options,
}

impl InstanceFile {
    /// Parses JSON; errors name the offending JSON path.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Input(format!("at {path}: {}", e.into_inner()))
        })?;
        if file.schema != SCHEMA {
            return Err(Error::Input(format!("at schema: unsupported schema version {}", file.schema)));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub algebra: Arc<Algebra>,
    modules: BTreeMap<String, Module>,
    complexes: BTreeMap<String, Complex>,
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self> {
        Instance::build(InstanceFile::from_json(text)?)
    }

    pub fn build(file: InstanceFile) -> Result<Self> {
        let f = file.field;
        let q = &file.quiver;
        let n = q.vertices.len();
        let mut arrows = Vec::new();
        for (k, a) in q.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Input(format!("at quiver.arrows[{k}]: vertex index out of range")));
            }
            arrows.push(Arrow { label: a.label.clone(), source: a.source, target: a.target });
        }
        let mut relations = Vec::new();
        for (r, rel) in q.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (t, term) in rel.iter().enumerate() {
                let at = |what: &str| Error::Input(format!("at quiver.relations[{r}][{t}]: {what}"));
                let coeff = term.coeff.scalar(f).map_err(|e| at(&e.to_string()))?;
                let path = term
                    .path
                    .iter()
                    .map(|l| q.arrows.iter().position(|a| &a.label == l).ok_or_else(|| at(&format!("unknown arrow {l:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                terms.push((coeff, path));
            }
            relations.push(terms);
        }
        let pres = QuiverPresentation { field: f, vertices: q.vertices.clone(), arrows, relations };
        let algebra = Arc::new(path_algebra(&pres, DEFAULT_DIMENSION_CAP).map_err(|e| Error::Input(format!("at quiver: {e}")))?);

        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            if file.complexes.contains_key(name) {
                return Err(Error::Input(format!("at modules.{name}: name is also used by a complex")));
            }
            let m = build_module(&algebra, spec).map_err(|e| within(&format!("at modules.{name}"), e))?;
            modules.insert(name.clone(), m);
        }
        let mut complexes = BTreeMap::new();
        for (name, spec) in &file.complexes {
            let c = build_complex(&algebra, spec).map_err(|e| within(&format!("at complexes.{name}"), e))?;
            complexes.insert(name.clone(), c);
        }
        let w = file.options.window;
        if w.lo > w.hi {
            return Err(Error::Input(format!("at options.window: empty window [{}, {}]", w.lo, w.hi)));
        }
        if let Some(p) = file.options.probes.iter().find(|p| !modules.contains_key(*p) && !complexes.contains_key(*p) && *p != "A") {
            return Err(Error::Input(format!("at options.probes: unknown object {p:?}")));
        }
        Ok(Instance { file, algebra, modules, complexes })
    }

    pub fn options(&self) -> &Options {
        &self.file.options
    }

    pub fn names(&self) -> Vec<&str> {
        self.modules.keys().chain(self.complexes.keys()).map(String::as_str).collect()
    }

    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.get(name)
    }

    pub fn modules(&self) -> &BTreeMap<String, Module> {
        &self.modules
    }

    /// A named complex, a named module in degree 0, or `"A"` for the free module when not defined.
    pub fn object(&self, name: &str) -> Result<Complex> {
        if let Some(c) = self.complexes.get(name) {
            return Ok(c.clone());
        }
        if let Some(m) = self.modules.get(name) {
            return Ok(Complex::concentrated(self.algebra.clone(), m.clone(), 0));
        }
        if name == "A" {
            return Ok(Complex::free(self.algebra.clone()));
        }
        Err(Error::Input(format!("no object named {name:?}")))
    }

    /// Same instance with `name` bound to the given complex of projectives.
    pub fn with_complex(&self, name: &str, c: &Complex) -> Result<Instance> {
        let mut file = self.file.clone();
        file.modules.remove(name);
        file.complexes.insert(name.to_string(), complex_spec(c)?);
        Instance::build(file)
    }
}

/// Prefixes a JSON path onto an error message.
fn within(prefix: &str, e: Error) -> Error {
    match e {
        Error::Input(m) if m.starts_with(['.', '[', ':']) => Error::Input(format!("{prefix}{m}")),
        Error::Input(m) => Error::Input(format!("{prefix}: {m}")),
        other => Error::Input(format!("{prefix}: {other}")),
    }
}

fn matrix(f: Field, spec: &MatrixSpec, rows: usize, cols: usize) -> Result<Matrix> {
    if spec.len() != rows {
        return Err(Error::Input(format!(": expected {rows} rows, found {}", spec.len())));
    }
    let mut m = Matrix::zeros(f, rows, cols);
    for (i, row) in spec.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Input(format!("[{i}]: expected {cols} entries, found {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, e.scalar(f).map_err(|e| within(&format!("[{i}][{j}]"), e))?);
        }
    }
    Ok(m)
}

fn matrix_spec(m: &Matrix) -> MatrixSpec {
    let f = m.field();
    (0..m.rows()).map(|i| m.row(i).iter().map(|a| Entry::from_scalar(f, a)).collect()).collect()
}

pub fn build_module(alg: &Algebra, spec: &ModuleSpec) -> Result<Module> {
    let q = &alg.quiver().expect("instances are quiver algebras").presentation;
    if spec.dims.len() != q.vertices.len() {
        return Err(Error::Input(format!(".dims: expected {} vertex dimensions", q.vertices.len())));
    }
    if spec.arrows.len() != q.arrows.len() {
        return Err(Error::Input(format!(".arrows: expected {} arrow matrices", q.arrows.len())));
    }
    let maps = q
        .arrows
        .iter()
        .zip(&spec.arrows)
        .enumerate()
        .map(|(k, (a, m))| {
            matrix(alg.field(), m, spec.dims[a.target], spec.dims[a.source]).map_err(|e| within(&format!(".arrows[{k}]"), e))
        })
        .collect::<Result<Vec<_>>>()?;
    Module::from_representation(alg, &spec.dims, &maps).map_err(|e| within("", e))
}

fn build_complex(alg: &Arc<Algebra>, spec: &ComplexSpec) -> Result<Complex> {
    let k = alg.idempotents().len();
    let mut terms = Vec::new();
    for (t, term) in spec.terms.iter().enumerate() {
        let m = match term {
            TermSpec::Projective(v) => {
                if let Some(&bad) = v.iter().find(|&&i| i >= k) {
                    return Err(Error::Input(format!(".terms[{t}]: vertex {bad} out of range")));
                }
                Module::projective_sum(alg, v)?
            }
            TermSpec::Representation(r) => build_module(alg, r).map_err(|e| within(&format!(".terms[{t}].representation"), e))?,
        };
        terms.push(m);
    }
    let expected = spec.terms.len().saturating_sub(1);
    if spec.differentials.len() != expected {
        return Err(Error::Input(format!(": expected {expected} differentials, found {}", spec.differentials.len())));
    }
    let diffs = spec
        .differentials
        .iter()
        .enumerate()
        .map(|(d, m)| {
            matrix(alg.field(), m, terms[d + 1].dim(), terms[d].dim()).map_err(|e| within(&format!(".differentials[{d}]"), e))
        })
        .collect::<Result<Vec<_>>>()?;
    if terms.is_empty() {
        return Ok(Complex::zero(alg.clone()));
    }
    Complex::new(alg.clone(), spec.lo, terms, diffs).map_err(|e| within("", e))
}

/// The JSON form of a complex of tagged projectives.
pub fn complex_spec(c: &Complex) -> Result<ComplexSpec> {
    let Some((lo, hi)) = c.support() else {
        return Ok(ComplexSpec { lo: 0, terms: Vec::new(), differentials: Vec::new() });
    };
    let terms = (lo..=hi)
        .map(|n| {
            c.term(n)
                .projective_summands()
                .map(|s| TermSpec::Projective(s.to_vec()))
                .ok_or(Error::NotProjective(n))
        })
        .collect::<Result<Vec<_>>>()?;
    let differentials = (lo..hi).map(|n| matrix_spec(&c.diff(n))).collect();
    Ok(ComplexSpec { lo, terms, differentials })
}

/// Whether two complexes over the same algebra have identical terms and differentials.
pub fn same_complex(x: &Complex, y: &Complex) -> bool {
    let (x, y) = (x.trimmed(), y.trimmed());
    match (x.support(), y.support()) {
        (None, None) => true,
        (Some(s), Some(t)) if s == t => (s.0..=s.1).all(|n| x.term(n) == y.term(n) && x.diff(n) == y.diff(n)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{
        "schema": 1,
        "name": "a2",
        "field": {"prime": 101},
        "quiver": {"vertices": ["1", "2"], "arrows": [{"label": "a", "source": 0, "target": 1}]},
        "modules": {"S1": {"dims": [1, 0], "arrows": [[]]}},
        "complexes": {
            "U": {"lo": -1, "terms": [{"projective": [1]}, {"projective": [0, 0]}],
                  "differentials": [[[0], [0], [0], [1]]]}
        },
        "options": {"window": {"lo": -3, "hi": 3}}
    }"#;

    #[test]
    fn parses_and_builds() {
        let inst = Instance::parse(A2).unwrap();
        assert_eq!(inst.algebra.dim(), 3);
        let u = inst.object("U").unwrap();
        assert_eq!((u.lo(), u.hi()), (-1, 0));
        assert!(u.is_projective());
        assert_eq!(inst.object("S1").unwrap().cohomology_dim(0), 1);
        assert_eq!(inst.object("A").unwrap().total_dim(), 3);
        assert_eq!(inst.options().window, DegreeWindow::new(-3, 3).unwrap());
        assert_eq!(inst.options().max_steps, DEFAULT_MAX_STEPS);
    }

    #[test]
    fn round_trip_is_identity() {
        let file = InstanceFile::from_json(A2).unwrap();
        let text = file.to_json();
        let again = InstanceFile::from_json(&text).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_json(), text);
        let inst = Instance::build(file).unwrap();
        let u = inst.object("U").unwrap();
        let rebuilt = inst.with_complex("V", &u).unwrap();
        assert!(same_complex(&rebuilt.object("V").unwrap(), &u));
    }

    #[test]
    fn rationals_and_strings() {
        let text = A2.replace("{\"prime\": 101}", "\"rational\"").replace("[[0], [0], [0], [1]]", "[[0], [0], [0], [\"3/2\"]]");
        let inst = Instance::parse(&text).unwrap();
        let spec = complex_spec(&inst.object("U").unwrap()).unwrap();
        assert_eq!(spec.differentials[0][3][0], Entry::Text("3/2".into()));
    }

    fn input_error(text: &str) -> String {
        match Instance::parse(text) {
            Err(Error::Input(msg)) => msg,
            other => panic!("expected an input error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_path() {
        assert!(input_error(&A2[..A2.len() / 2]).starts_with("at "));
        assert!(input_error(&A2.replace("\"lo\": -1", "\"lo\": \"x\"")).contains("complexes.U.lo"));
        assert!(input_error(&A2.replace("[[0], [0], [0], [1]]", "[[0], [0], [1]]")).contains("complexes.U.differentials[0]"));
        assert!(input_error(&A2.replace("[[0], [0], [0], [1]]", "[[1], [0], [0], [0]]")).contains("complexes.U"));
        assert!(input_error(&A2.replace("\"schema\": 1", "\"schema\": 7")).contains("schema"));
        assert!(input_error(&A2.replace("\"target\": 1", "\"target\": 5")).contains("quiver.arrows[0]"));
        assert!(input_error(&A2.replace("\"window\"", "\"bogus\"")).contains("options"));
    }
}
