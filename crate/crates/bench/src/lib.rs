//! Random fuzzy automata for benchmarks and randomized checks.

use fuzzsim::{Boolean, FuzzyAutomaton, Godel, ResiduatedLattice};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

const LETTERS: [&str; 8] = ["x", "y", "z", "u", "v", "w", "s", "t"];

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An automaton with `states` states over the first `letters` letters of a
/// fixed alphabet, every entry drawn uniformly from `values`.
pub fn random_automaton<L: ResiduatedLattice, R: Rng>(
    rng: &mut R,
    lattice: &L,
    states: usize,
    letters: usize,
    values: &[L::Elem],
) -> FuzzyAutomaton<L> {
    assert!(letters <= LETTERS.len(), "at most {} letters", LETTERS.len());
    let mut pick = |n: usize| (0..n).map(|_| *values.choose(rng).expect("non-empty values")).collect::<Vec<_>>();
    let sigma = pick(states);
    let tau = pick(states);
    let trans = LETTERS[..letters].iter().map(|&x| (x, (0..states).map(|_| pick(states)).collect())).collect();
    FuzzyAutomaton::from_values(lattice.clone(), sigma, trans, tau).expect("well-formed by construction")
}

pub fn random_boolean<R: Rng>(rng: &mut R, states: usize, letters: usize) -> FuzzyAutomaton<Boolean> {
    random_automaton(rng, &Boolean, states, letters, &[false, true])
}

/// Gödel automaton with entries in `{0, 0.1, …, 1}`.
pub fn random_godel<R: Rng>(rng: &mut R, states: usize, letters: usize) -> FuzzyAutomaton<Godel> {
    let values: Vec<f64> = (0..=10).map(|k| f64::from(k) / 10.0).collect();
    random_automaton(rng, &Godel::new(), states, letters, &values)
}

/// Picks sizes uniformly in `1..=max_states` and `0..=max_letters` and
/// returns two automata over the same alphabet.
pub fn random_pair<L: ResiduatedLattice, R: Rng>(
    rng: &mut R,
    lattice: &L,
    max_states: usize,
    max_letters: usize,
    values: &[L::Elem],
) -> (FuzzyAutomaton<L>, FuzzyAutomaton<L>) {
    let k = rng.random_range(0..=max_letters);
    let na = rng.random_range(1..=max_states);
    let nb = rng.random_range(1..=max_states);
    (random_automaton(rng, lattice, na, k, values), random_automaton(rng, lattice, nb, k, values))
}
