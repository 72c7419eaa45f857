//! Fuzzy automata over complete residuated lattices, and algorithms for
//! computing greatest simulations and bisimulations between them.

pub mod automaton;
pub mod error;
pub mod format;
pub mod lattice;
pub mod laws;
pub mod matrix;
pub mod simulation;

pub use automaton::{Diagnostic, FuzzyAutomaton};
pub use error::{Error, Result};
pub use lattice::{
    Boolean, Chain, Closure, Godel, LatticeError, LatticeKind, Lukasiewicz, Product, ResiduatedLattice,
};
pub use matrix::FuzzyMatrix;
pub use simulation::{
    brute_force_oracle, check_conditions, greatest_crisp_simulation, greatest_simulation, phi_crisp_step,
    phi_step, psi_init, ComputationOutcome, ConditionReport, SimulationType, Status, Warning, DEFAULT_CAP,
};
