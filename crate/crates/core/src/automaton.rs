//! Finite fuzzy automata `(A, δ, σ, τ)` over a residuated lattice.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::ResiduatedLattice;
use crate::matrix::FuzzyMatrix;

/// One violated invariant of a [`FuzzyAutomaton`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoStates,
    DuplicateState(String),
    DuplicateLetter(String),
    MissingTransition(String),
    UnexpectedTransition(String),
    TransitionShape { letter: String, rows: usize, cols: usize, states: usize },
    InitialShape { rows: usize, cols: usize, states: usize },
    FinalShape { rows: usize, cols: usize, states: usize },
    LatticeMismatch(String),
    BadValue { location: String, message: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoStates => f.write_str("automaton has no states"),
            Diagnostic::DuplicateState(s) => write!(f, "state {s} is declared more than once"),
            Diagnostic::DuplicateLetter(x) => write!(f, "letter {x} is declared more than once"),
            Diagnostic::MissingTransition(x) => write!(f, "letter {x} has no transition matrix"),
            Diagnostic::UnexpectedTransition(x) => {
                write!(f, "transition matrix given for letter {x}, which is not in the alphabet")
            }
            Diagnostic::TransitionShape { letter, rows, cols, states } => write!(
                f,
                "transition matrix for letter {letter} is {rows}x{cols}, expected {states}x{states}"
            ),
            Diagnostic::InitialShape { rows, cols, states } => {
                write!(f, "initial vector is {rows}x{cols}, expected 1x{states}")
            }
            Diagnostic::FinalShape { rows, cols, states } => {
                write!(f, "final vector is {rows}x{cols}, expected {states}x1")
            }
            Diagnostic::LatticeMismatch(what) => write!(f, "{what} uses a different lattice"),
            Diagnostic::BadValue { location, message } => write!(f, "{location}: {message}"),
        }
    }
}

/// A fuzzy automaton. `sigma` is a `1×|A|` row, `tau` an `|A|×1` column.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAutomaton<L: ResiduatedLattice> {
    lattice: L,
    states: Vec<String>,
    alphabet: Vec<String>,
    delta: BTreeMap<String, FuzzyMatrix<L>>,
    sigma: FuzzyMatrix<L>,
    tau: FuzzyMatrix<L>,
}

impl<L: ResiduatedLattice> FuzzyAutomaton<L> {
    /// Validating constructor.
    pub fn new(
        lattice: L,
        states: Vec<String>,
        alphabet: Vec<String>,
        delta: BTreeMap<String, FuzzyMatrix<L>>,
        sigma: FuzzyMatrix<L>,
        tau: FuzzyMatrix<L>,
    ) -> Result<Self> {
        let a = Self::from_parts(lattice, states, alphabet, delta, sigma, tau);
        a.validate().map_err(Error::InvalidAutomaton)?;
        Ok(a)
    }

    /// Assembles an automaton without checking it; see [`validate`](Self::validate).
    pub fn from_parts(
        lattice: L,
        states: Vec<String>,
        alphabet: Vec<String>,
        delta: BTreeMap<String, FuzzyMatrix<L>>,
        sigma: FuzzyMatrix<L>,
        tau: FuzzyMatrix<L>,
    ) -> Self {
        FuzzyAutomaton { lattice, states, alphabet, delta, sigma, tau }
    }

    /// Convenience constructor with states named `0..n` and `sigma`/`tau`
    /// given as plain value lists.
    pub fn from_values(
        lattice: L,
        sigma: Vec<L::Elem>,
        transitions: Vec<(&str, Vec<Vec<L::Elem>>)>,
        tau: Vec<L::Elem>,
    ) -> Result<Self> {
        let states = (0..sigma.len()).map(|i| format!("q{i}")).collect();
        let alphabet = transitions.iter().map(|(x, _)| (*x).to_string()).collect();
        let mut delta = BTreeMap::new();
        for (x, rows) in transitions {
            delta.insert(x.to_string(), FuzzyMatrix::from_rows(lattice.clone(), rows)?);
        }
        let sigma = FuzzyMatrix::row_vector(lattice.clone(), sigma)?;
        let tau = FuzzyMatrix::column_vector(lattice.clone(), tau)?;
        Self::new(lattice, states, alphabet, delta, sigma, tau)
    }

    /// Lists every violated invariant.
    pub fn validate(&self) -> std::result::Result<(), Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let n = self.states.len();
        if n == 0 {
            diags.push(Diagnostic::NoStates);
        }
        let mut seen = HashSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                diags.push(Diagnostic::DuplicateState(s.clone()));
            }
        }
        let mut letters = HashSet::new();
        for x in &self.alphabet {
            if !letters.insert(x) {
                diags.push(Diagnostic::DuplicateLetter(x.clone()));
            }
            match self.delta.get(x) {
                None => diags.push(Diagnostic::MissingTransition(x.clone())),
                Some(m) => {
                    if m.shape() != (n, n) {
                        diags.push(Diagnostic::TransitionShape {
                            letter: x.clone(),
                            rows: m.rows(),
                            cols: m.cols(),
                            states: n,
                        });
                    }
                    if *m.lattice() != self.lattice {
                        diags.push(Diagnostic::LatticeMismatch(format!("transition matrix for {x}")));
                    }
                }
            }
        }
        for x in self.delta.keys() {
            if !letters.contains(x) {
                diags.push(Diagnostic::UnexpectedTransition(x.clone()));
            }
        }
        if self.sigma.shape() != (1, n) {
            let (rows, cols) = self.sigma.shape();
            diags.push(Diagnostic::InitialShape { rows, cols, states: n });
        }
        if *self.sigma.lattice() != self.lattice {
            diags.push(Diagnostic::LatticeMismatch("initial vector".into()));
        }
        if self.tau.shape() != (n, 1) {
            let (rows, cols) = self.tau.shape();
            diags.push(Diagnostic::FinalShape { rows, cols, states: n });
        }
        if *self.tau.lattice() != self.lattice {
            diags.push(Diagnostic::LatticeMismatch("final vector".into()));
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    pub fn lattice(&self) -> &L {
        &self.lattice
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn sigma(&self) -> &FuzzyMatrix<L> {
        &self.sigma
    }

    pub fn tau(&self) -> &FuzzyMatrix<L> {
        &self.tau
    }

    pub fn delta(&self, letter: &str) -> Result<&FuzzyMatrix<L>> {
        self.delta.get(letter).ok_or_else(|| Error::UnknownLetter(letter.to_string()))
    }

    /// Transition matrices in alphabet order.
    pub fn transitions(&self) -> impl Iterator<Item = (&str, &FuzzyMatrix<L>)> {
        self.alphabet.iter().map(|x| (x.as_str(), &self.delta[x]))
    }

    /// Replaces the initial vector, keeping everything else.
    pub fn with_sigma(&self, sigma: Vec<L::Elem>) -> Result<Self> {
        let sigma = FuzzyMatrix::row_vector(self.lattice.clone(), sigma)?;
        Self::new(self.lattice.clone(), self.states.clone(), self.alphabet.clone(), self.delta.clone(), sigma, self.tau.clone())
    }

    /// Replaces the final vector, keeping everything else.
    pub fn with_tau(&self, tau: Vec<L::Elem>) -> Result<Self> {
        let tau = FuzzyMatrix::column_vector(self.lattice.clone(), tau)?;
        Self::new(self.lattice.clone(), self.states.clone(), self.alphabet.clone(), self.delta.clone(), self.sigma.clone(), tau)
    }

    /// Reverse automaton: transposed transitions, initial and final swapped.
    pub fn reverse(&self) -> Self {
        FuzzyAutomaton {
            lattice: self.lattice.clone(),
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            delta: self.delta.iter().map(|(x, m)| (x.clone(), m.converse())).collect(),
            sigma: self.tau.converse(),
            tau: self.sigma.converse(),
        }
    }

    /// `δ_u` for a word `u`; the empty word gives the crisp identity.
    pub fn delta_word<S: AsRef<str>>(&self, word: &[S]) -> Result<FuzzyMatrix<L>> {
        let mut acc = FuzzyMatrix::identity(self.lattice.clone(), self.num_states());
        for x in word {
            acc = acc.compose(self.delta(x.as_ref())?)?;
        }
        Ok(acc)
    }

    /// Degree to which the automaton accepts `word`: `σ ∘ δ_u ∘ τ`.
    pub fn language_degree<S: AsRef<str>>(&self, word: &[S]) -> Result<L::Elem> {
        let m = self.sigma.compose(&self.delta_word(word)?)?.compose(&self.tau)?;
        Ok(m.get(0, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Godel, Lukasiewicz};
    use proptest::prelude::*;

    fn example_a() -> FuzzyAutomaton<Godel> {
        FuzzyAutomaton::from_values(
            Godel::new(),
            vec![1.0, 1.0, 1.0],
            vec![
                ("x", vec![vec![1.0, 0.3, 0.4], vec![0.5, 1.0, 0.3], vec![0.4, 0.6, 0.7]]),
                ("y", vec![vec![0.5, 0.6, 0.2], vec![0.3, 0.3, 0.4], vec![0.7, 0.7, 1.0]]),
            ],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn validate_reports_missing_letter_and_bad_shape() {
        let a = example_a();
        assert!(a.validate().is_ok());
        let l = Godel::new();
        let mut delta = BTreeMap::new();
        delta.insert("x".to_string(), FuzzyMatrix::ones(l, 2, 3));
        let broken = FuzzyAutomaton::from_parts(
            l,
            vec!["p".into(), "q".into(), "r".into()],
            vec!["x".into(), "y".into()],
            delta,
            FuzzyMatrix::ones(l, 1, 3),
            FuzzyMatrix::ones(l, 3, 1),
        );
        let diags = broken.validate().unwrap_err();
        assert!(diags.contains(&Diagnostic::MissingTransition("y".into())));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::TransitionShape { rows: 2, cols: 3, .. })));
        assert_eq!(Diagnostic::MissingTransition("y".into()).to_string(), "letter y has no transition matrix");
    }

    #[test]
    fn validate_catches_duplicates_and_vector_shapes() {
        let l = Godel::new();
        let broken = FuzzyAutomaton::from_parts(
            l,
            vec!["p".into(), "p".into()],
            vec![],
            BTreeMap::from([("z".to_string(), FuzzyMatrix::ones(l, 2, 2))]),
            FuzzyMatrix::ones(l, 2, 1),
            FuzzyMatrix::ones(l, 1, 2),
        );
        let diags = broken.validate().unwrap_err();
        assert_eq!(diags.len(), 4, "{diags:?}");
        assert!(matches!(
            FuzzyAutomaton::new(l, vec![], vec![], BTreeMap::new(), FuzzyMatrix::ones(l, 1, 1), FuzzyMatrix::ones(l, 1, 1)),
            Err(Error::InvalidAutomaton(_))
        ));
    }

    #[test]
    fn validate_catches_lattice_mismatch() {
        let l = Lukasiewicz::new();
        let other = Lukasiewicz::with_tolerance(0.5).unwrap();
        let a = FuzzyAutomaton::from_parts(
            l,
            vec!["p".into()],
            vec!["x".into()],
            BTreeMap::from([("x".to_string(), FuzzyMatrix::ones(other, 1, 1))]),
            FuzzyMatrix::ones(l, 1, 1),
            FuzzyMatrix::ones(l, 1, 1),
        );
        assert_eq!(a.validate().unwrap_err().len(), 1);
    }

    #[test]
    fn reverse_examples() {
        let a = example_a();
        assert_eq!(a.reverse().reverse(), a);
        let r = a.reverse();
        assert_eq!(r.delta("x").unwrap(), &a.delta("x").unwrap().converse());
        assert_eq!(
            r.delta("x").unwrap().to_rows(),
            vec![vec![1.0, 0.5, 0.4], vec![0.3, 1.0, 0.6], vec![0.4, 0.3, 0.7]]
        );
        let sym = FuzzyAutomaton::from_values(
            Godel::new(),
            vec![0.2, 0.9],
            vec![("x", vec![vec![1.0, 0.4], vec![0.4, 0.1]])],
            vec![0.2, 0.9],
        )
        .unwrap();
        assert_eq!(sym.reverse(), sym);
    }

    #[test]
    fn delta_word_examples() {
        let a = example_a();
        assert_eq!(a.delta_word::<&str>(&[]).unwrap(), FuzzyMatrix::identity(Godel::new(), 3));
        assert_eq!(a.delta_word(&["x"]).unwrap(), *a.delta("x").unwrap());
        assert_eq!(
            a.delta_word(&["x", "y"]).unwrap().to_rows(),
            vec![vec![0.5, 0.6, 0.4], vec![0.5, 0.5, 0.4], vec![0.7, 0.7, 0.7]]
        );
        assert_eq!(a.delta_word(&["z"]), Err(Error::UnknownLetter("z".into())));
    }

    #[test]
    fn language_degree_examples() {
        let a = example_a();
        assert_eq!(a.language_degree::<&str>(&[]).unwrap(), 1.0);
        assert_eq!(a.language_degree(&["x", "y"]).unwrap(), 0.7);
        let dead = a.with_tau(vec![0.0; 3]).unwrap();
        for w in [vec![], vec!["x"], vec!["y", "x", "y"]] {
            assert_eq!(dead.language_degree(&w).unwrap(), 0.0);
        }
        assert!(a.language_degree(&["q"]).is_err());
    }

    fn word() -> impl Strategy<Value = Vec<&'static str>> {
        proptest::collection::vec(prop_oneof![Just("x"), Just("y")], 0..4)
    }

    /// Sum-of-products expansion over all intermediate state paths.
    fn degree_by_paths(a: &FuzzyAutomaton<Godel>, w: &[&str]) -> f64 {
        let n = a.num_states();
        let mut best: f64 = 0.0;
        let paths = n.pow(w.len() as u32 + 1);
        for code in 0..paths {
            let mut c = code;
            let mut seq = Vec::new();
            for _ in 0..=w.len() {
                seq.push(c % n);
                c /= n;
            }
            let mut v = a.sigma().get(0, seq[0]);
            for (i, x) in w.iter().enumerate() {
                v = v.min(a.delta(x).unwrap().get(seq[i], seq[i + 1]));
            }
            v = v.min(a.tau().get(seq[w.len()], 0));
            best = best.max(v);
        }
        best
    }

    proptest! {
        #[test]
        fn word_laws(u in word(), v in word(), sigma in proptest::collection::vec(0u8..=10, 3), tau in proptest::collection::vec(0u8..=10, 3)) {
            let a = example_a()
                .with_sigma(sigma.iter().map(|&k| f64::from(k) / 10.0).collect()).unwrap()
                .with_tau(tau.iter().map(|&k| f64::from(k) / 10.0).collect()).unwrap();
            let uv: Vec<_> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(a.delta_word(&uv).unwrap(), a.delta_word(&u).unwrap().compose(&a.delta_word(&v).unwrap()).unwrap());
            prop_assert_eq!(a.language_degree(&u).unwrap(), degree_by_paths(&a, &u));
            let mut rev = u.clone();
            rev.reverse();
            prop_assert_eq!(a.reverse().language_degree(&rev).unwrap(), a.language_degree(&u).unwrap());
        }
    }
}
