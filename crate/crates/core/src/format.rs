//! JSON documents for automata and computation results.
//!
//! ```json
//! {
//!   "lattice": {"type": "godel"},
//!   "states": ["a1", "a2"],
//!   "alphabet": ["x"],
//!   "initial": [1, 0.5],
//!   "final": [0, 1],
//!   "transitions": {"x": [[1, 0.3], [0, 1]]}
//! }
//! ```
//!
//! Chain values are written as integer indices. Real values use the
//! shortest decimal form that reads back as the same double.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::automaton::{Diagnostic, FuzzyAutomaton};
use crate::error::{Error, Result};
use crate::lattice::{LatticeKind, ResiduatedLattice};
use crate::matrix::FuzzyMatrix;
use crate::simulation::{ComputationOutcome, SimulationType, Status, Warning};

/// A number in a document. Integral values are written without a fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        const EXACT: f64 = 9_007_199_254_740_992.0;
        if self.0.fract() == 0.0 && self.0.abs() <= EXACT {
            s.serialize_i64(self.0 as i64)
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Num)
    }
}

pub type Rows = Vec<Vec<Num>>;

/// Pretty JSON with two-space indentation, except that arrays of scalars
/// (vectors and matrix rows) stay on one line.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    render(&v, 0, &mut out);
    out
}

fn render(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                render(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                render(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("serializable")),
    }
}

fn matrix_to_rows<L: ResiduatedLattice>(m: &FuzzyMatrix<L>) -> Rows {
    let l = m.lattice();
    (0..m.rows()).map(|i| m.row(i).iter().map(|&e| Num(l.to_number(e))).collect()).collect()
}

fn vector_to_nums<L: ResiduatedLattice>(m: &FuzzyMatrix<L>) -> Vec<Num> {
    m.entries().iter().map(|&e| Num(m.lattice().to_number(e))).collect()
}

/// Builds a matrix from rows, recording every problem in `diags`.
fn build_matrix<L: ResiduatedLattice>(
    lattice: &L,
    rows: &[Vec<Num>],
    location: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<FuzzyMatrix<L>> {
    let bad = |message: String| Diagnostic::BadValue { location: location.to_string(), message };
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        diags.push(bad("matrix is empty".into()));
        return None;
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        diags.push(bad(format!("row {i} has {} entries, expected {cols}", rows[i].len())));
        return None;
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    let mut ok = true;
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            match lattice.from_number(v.0) {
                Ok(e) => data.push(e),
                Err(err) => {
                    diags.push(bad(format!("entry ({i},{j}): {err}")));
                    ok = false;
                }
            }
        }
    }
    if !ok {
        return None;
    }
    FuzzyMatrix::new(lattice.clone(), rows.len(), cols, data).ok()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub lattice: LatticeKind,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: Vec<Num>,
    #[serde(rename = "final")]
    pub final_: Vec<Num>,
    pub transitions: BTreeMap<String, Rows>,
}

impl AutomatonFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn from_automaton<L: ResiduatedLattice>(a: &FuzzyAutomaton<L>) -> Self {
        AutomatonFile {
            lattice: a.lattice().kind(),
            states: a.states().to_vec(),
            alphabet: a.alphabet().to_vec(),
            initial: vector_to_nums(a.sigma()),
            final_: vector_to_nums(a.tau()),
            transitions: a.transitions().map(|(x, m)| (x.to_string(), matrix_to_rows(m))).collect(),
        }
    }

    /// Converts to an automaton over `lattice`, which must be of the kind
    /// the document declares. All problems found are reported together.
    pub fn to_automaton<L: ResiduatedLattice>(&self, lattice: L) -> Result<FuzzyAutomaton<L>> {
        if lattice.kind() != self.lattice {
            return Err(Error::LatticeMismatch { left: self.lattice, right: lattice.kind() });
        }
        if self.states.is_empty() {
            return Err(Error::InvalidAutomaton(vec![Diagnostic::NoStates]));
        }
        let mut diags = Vec::new();
        let n = self.states.len();
        let sigma = build_matrix(&lattice, std::slice::from_ref(&self.initial), "initial", &mut diags);
        let tau_rows: Rows = self.final_.iter().map(|&v| vec![v]).collect();
        let tau = build_matrix(&lattice, &tau_rows, "final", &mut diags);
        let mut delta = BTreeMap::new();
        for (x, rows) in &self.transitions {
            if let Some(m) = build_matrix(&lattice, rows, &format!("transitions.{x}"), &mut diags) {
                delta.insert(x.clone(), m);
            }
        }
        match (sigma, tau) {
            (Some(sigma), Some(tau)) if diags.is_empty() => {
                FuzzyAutomaton::new(lattice, self.states.clone(), self.alphabet.clone(), delta, sigma, tau)
            }
            (sigma, tau) => {
                // still run the structural checks so the report is complete
                let filler = |rows, cols| FuzzyMatrix::zeros(lattice.clone(), rows, cols);
                let probe = FuzzyAutomaton::from_parts(
                    lattice.clone(),
                    self.states.clone(),
                    self.alphabet.clone(),
                    delta,
                    sigma.unwrap_or_else(|| filler(1, n)),
                    tau.unwrap_or_else(|| filler(n, 1)),
                );
                if let Err(more) = probe.validate() {
                    diags.extend(more.into_iter().filter(|d| !matches!(d, Diagnostic::MissingTransition(x) if self.transitions.contains_key(x))));
                }
                Err(Error::InvalidAutomaton(diags))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: Status,
    #[serde(rename = "type")]
    pub kind: SimulationType,
    pub iterations: usize,
    pub relation: Rows,
    pub condition_w1: bool,
    pub warnings: Vec<Warning>,
}

impl ResultFile {
    pub fn from_outcome<L: ResiduatedLattice>(w: SimulationType, out: &ComputationOutcome<L>) -> Self {
        ResultFile {
            status: out.status,
            kind: w,
            iterations: out.iterations,
            relation: matrix_to_rows(&out.relation),
            condition_w1: out.condition_w1_holds,
            warnings: out.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RelationDoc {
    Bare(Rows),
    Wrapped { relation: Rows },
}

/// Reads a relation given either as a bare array of rows or as any object
/// with a `relation` field (such as a [`ResultFile`]).
pub fn parse_relation<L: ResiduatedLattice>(lattice: &L, text: &str) -> Result<FuzzyMatrix<L>> {
    let rows = match serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))? {
        RelationDoc::Bare(rows) | RelationDoc::Wrapped { relation: rows } => rows,
    };
    let mut diags = Vec::new();
    build_matrix(lattice, &rows, "relation", &mut diags).ok_or_else(|| {
        Error::Parse(diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })
}

pub fn relation_to_json<L: ResiduatedLattice>(m: &FuzzyMatrix<L>) -> String {
    serde_json::to_string(&matrix_to_rows(m)).expect("serializable")
}
