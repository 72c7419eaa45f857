#![allow(dead_code)]

use std::fmt::Debug;

use fuzzsim::{Boolean, FuzzyAutomaton, FuzzyMatrix, Godel, ResiduatedLattice};
use proptest::prelude::*;

pub fn godel_values() -> impl Strategy<Value = f64> + Clone {
    prop::sample::select(vec![0.0, 0.2, 0.4, 0.5, 0.7, 1.0])
}

pub fn grid8() -> impl Strategy<Value = f64> + Clone {
    (0u32..=8).prop_map(|k| f64::from(k) / 8.0)
}

pub fn chain_values(n: u32) -> impl Strategy<Value = u32> + Clone {
    0..=n
}

pub fn bools() -> impl Strategy<Value = bool> + Clone {
    any::<bool>()
}

pub fn matrix<L, S>(l: L, rows: usize, cols: usize, v: S) -> impl Strategy<Value = FuzzyMatrix<L>>
where
    L: ResiduatedLattice + 'static,
    S: Strategy<Value = L::Elem> + Clone,
{
    prop::collection::vec(v, rows * cols).prop_map(move |d| FuzzyMatrix::new(l.clone(), rows, cols, d).unwrap())
}

pub fn automaton<L, S>(l: L, n: usize, letters: usize, v: S) -> impl Strategy<Value = FuzzyAutomaton<L>>
where
    L: ResiduatedLattice + 'static,
    L::Elem: Debug,
    S: Strategy<Value = L::Elem> + Clone,
{
    (
        prop::collection::vec(v.clone(), n),
        prop::collection::vec(prop::collection::vec(prop::collection::vec(v.clone(), n), n), letters),
        prop::collection::vec(v, n),
    )
        .prop_map(move |(sigma, ds, tau)| {
            const NAMES: [&str; 3] = ["x", "y", "z"];
            let trans = ds.into_iter().enumerate().map(|(i, d)| (NAMES[i], d)).collect();
            FuzzyAutomaton::from_values(l.clone(), sigma, trans, tau).unwrap()
        })
}

/// Two automata over the same alphabet with up to `max` states each, and a
/// relation between them.
pub fn instance<L, S>(
    l: L,
    max: usize,
    v: S,
) -> impl Strategy<Value = (FuzzyAutomaton<L>, FuzzyAutomaton<L>, FuzzyMatrix<L>)>
where
    L: ResiduatedLattice + 'static,
    L::Elem: Debug,
    S: Strategy<Value = L::Elem> + Clone + 'static,
{
    (1..=max, 1..=max, 0usize..=2).prop_flat_map(move |(na, nb, k)| {
        (
            automaton(l.clone(), na, k, v.clone()),
            automaton(l.clone(), nb, k, v.clone()),
            matrix(l.clone(), na, nb, v.clone()),
        )
    })
}

pub fn godel_instance(max: usize) -> impl Strategy<Value = (FuzzyAutomaton<Godel>, FuzzyAutomaton<Godel>, FuzzyMatrix<Godel>)> {
    instance(Godel::new(), max, godel_values())
}

pub fn boolean_instance(
    max: usize,
) -> impl Strategy<Value = (FuzzyAutomaton<Boolean>, FuzzyAutomaton<Boolean>, FuzzyMatrix<Boolean>)> {
    instance(Boolean, max, bools())
}

pub fn example1() -> (FuzzyAutomaton<Godel>, FuzzyAutomaton<Godel>) {
    let a = FuzzyAutomaton::from_values(
        Godel::new(),
        vec![1.0; 3],
        vec![
            ("x", vec![vec![1.0, 0.3, 0.4], vec![0.5, 1.0, 0.3], vec![0.4, 0.6, 0.7]]),
            ("y", vec![vec![0.5, 0.6, 0.2], vec![0.3, 0.3, 0.4], vec![0.7, 0.7, 1.0]]),
        ],
        vec![1.0; 3],
    )
    .unwrap();
    let b = FuzzyAutomaton::from_values(
        Godel::new(),
        vec![1.0; 2],
        vec![("x", vec![vec![1.0, 0.6], vec![0.6, 0.7]]), ("y", vec![vec![0.6, 0.6], vec![0.7, 1.0]])],
        vec![1.0; 2],
    )
    .unwrap();
    (a, b)
}

pub fn godel(rows: Vec<Vec<f64>>) -> FuzzyMatrix<Godel> {
    FuzzyMatrix::from_rows(Godel::new(), rows).unwrap()
}
