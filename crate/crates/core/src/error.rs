use thiserror::Error;

use crate::automaton::Diagnostic;
use crate::lattice::{LatticeError, LatticeKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    WrongEntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("operands live in different lattices ({left} vs {right})")]
    LatticeMismatch { left: LatticeKind, right: LatticeKind },
    #[error("{op}: expected a row or column vector, got {rows}x{cols}")]
    NotAVector {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("relation is not crisp")]
    NotCrisp,
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("invalid automaton: {}", join_diagnostics(.0))]
    InvalidAutomaton(Vec<Diagnostic>),
    #[error("iteration cap must be at least 1")]
    ZeroCap,
    #[error("brute-force oracle limited to {limit} state pairs, got {pairs}")]
    OracleTooLarge { pairs: usize, limit: usize },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
