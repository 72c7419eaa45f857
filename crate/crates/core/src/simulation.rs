//! Greatest simulations and bisimulations between two fuzzy automata.
//!
//! For each [`SimulationType`] `w` the conditions (w-2) and (w-3) are
//! equivalent to `φ ≤ φ^w(φ)` and `φ ≤ ψ^w`, where `φ^w` is an isotone
//! operator built from residuals ([`phi_step`]) and `ψ^w` an initial relation
//! built from the initial/final vectors ([`psi_init`]). The greatest such `φ`
//! is the limit of the descending sequence
//!
//! ```text
//! φ_1 = ψ^w,   φ_{k+1} = φ_k ∧ φ^w(φ_k)
//! ```
//!
//! and a simulation of type `w` exists iff that limit satisfies (w-1).
//! [`greatest_simulation`] runs this sequence up to a cap;
//! [`greatest_crisp_simulation`] runs the crisp variant, which always
//! terminates; [`brute_force_oracle`] enumerates crisp relations directly.
//!
//! The four bisimulation types are assembled from the two base operators:
//! a bisimulation of type `w` is a relation `φ` such that `φ` is a simulation
//! of the first kind from `A` to `B` and `φ⁻¹` one of the second kind from
//! `B` to `A`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::FuzzyAutomaton;
use crate::error::{Error, Result};
use crate::lattice::ResiduatedLattice;
use crate::matrix::FuzzyMatrix;

/// Default iteration cap for [`greatest_simulation`].
pub const DEFAULT_CAP: usize = 1000;

/// Largest `|A|·|B|` accepted by [`brute_force_oracle`].
pub const ORACLE_MAX_PAIRS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimulationType {
    /// forward simulation
    Fs,
    /// backward simulation
    Bs,
    /// forward bisimulation
    Fb,
    /// backward bisimulation
    Bb,
    /// forward-backward bisimulation
    Fbb,
    /// backward-forward bisimulation
    Bfb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Backward,
}

impl SimulationType {
    pub const ALL: [SimulationType; 6] = [
        SimulationType::Fs,
        SimulationType::Bs,
        SimulationType::Fb,
        SimulationType::Bb,
        SimulationType::Fbb,
        SimulationType::Bfb,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SimulationType::Fs => "fs",
            SimulationType::Bs => "bs",
            SimulationType::Fb => "fb",
            SimulationType::Bb => "bb",
            SimulationType::Fbb => "fbb",
            SimulationType::Bfb => "bfb",
        }
    }

    pub fn is_bisimulation(self) -> bool {
        !matches!(self, SimulationType::Fs | SimulationType::Bs)
    }

    /// The kind required of `φ`, and of `φ⁻¹` (between `B` and `A`) if any.
    fn parts(self) -> (Direction, Option<Direction>) {
        use Direction::*;
        match self {
            SimulationType::Fs => (Forward, None),
            SimulationType::Bs => (Backward, None),
            SimulationType::Fb => (Forward, Some(Forward)),
            SimulationType::Bb => (Backward, Some(Backward)),
            SimulationType::Fbb => (Forward, Some(Backward)),
            SimulationType::Bfb => (Backward, Some(Forward)),
        }
    }
}

impl fmt::Display for SimulationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown simulation type {0:?} (expected fs, bs, fb, bb, fbb or bfb)")]
pub struct ParseSimulationTypeError(String);

impl FromStr for SimulationType {
    type Err = ParseSimulationTypeError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SimulationType::ALL
            .into_iter()
            .find(|w| w.tag() == s)
            .ok_or_else(|| ParseSimulationTypeError(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The reported relation is the greatest one of the requested type.
    Greatest,
    /// No relation of the requested type exists.
    #[serde(rename = "none")]
    NoSimulation,
    /// The cap was hit before the sequence stabilized.
    CapReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// The relation satisfies all conditions but is empty; only possible
    /// when an initial or final vector is all zero.
    EmptyRelation,
    /// Successive iterates agreed only within the lattice tolerance.
    ApproximateStabilization,
    /// The cap was reached, but the lattice guarantees that the infimum of
    /// the whole sequence is the answer (it was not computed).
    InfimumExists,
}

impl Warning {
    pub fn code(self) -> &'static str {
        match self {
            Warning::EmptyRelation => "empty_relation",
            Warning::ApproximateStabilization => "approximate_stabilization",
            Warning::InfimumExists => "infimum_exists",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComputationOutcome<L: ResiduatedLattice> {
    pub status: Status,
    /// The greatest relation for [`Status::Greatest`]; otherwise the last
    /// iterate, which is the greatest solution of (w-2) and (w-3).
    pub relation: FuzzyMatrix<L>,
    /// Index `k` of the reported iterate `φ_k` (≥ 1).
    pub iterations: usize,
    pub condition_w1_holds: bool,
    pub warnings: Vec<Warning>,
}

/// Checks that two automata can be compared at all.
fn check_pair<L: ResiduatedLattice>(a: &FuzzyAutomaton<L>, b: &FuzzyAutomaton<L>) -> Result<()> {
    a.validate().map_err(Error::InvalidAutomaton)?;
    b.validate().map_err(Error::InvalidAutomaton)?;
    if a.lattice() != b.lattice() {
        return Err(Error::LatticeMismatch { left: a.lattice().kind(), right: b.lattice().kind() });
    }
    let mut xa: Vec<_> = a.alphabet().to_vec();
    let mut xb: Vec<_> = b.alphabet().to_vec();
    xa.sort();
    xb.sort();
    if xa != xb {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

fn check_relation<L: ResiduatedLattice>(
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    phi: &FuzzyMatrix<L>,
    op: &'static str,
) -> Result<()> {
    if phi.lattice() != a.lattice() {
        return Err(Error::LatticeMismatch { left: phi.lattice().kind(), right: a.lattice().kind() });
    }
    if phi.shape() != (a.num_states(), b.num_states()) {
        return Err(Error::ShapeMismatch { op, left: phi.shape(), right: (a.num_states(), b.num_states()) });
    }
    Ok(())
}

/// Letter-paired transition matrices of `a` and `b`.
fn letter_pairs<'a, L: ResiduatedLattice>(
    a: &'a FuzzyAutomaton<L>,
    b: &'a FuzzyAutomaton<L>,
) -> impl Iterator<Item = (&'a FuzzyMatrix<L>, &'a FuzzyMatrix<L>)> {
    a.transitions().map(move |(x, da)| (da, b.delta(x).expect("alphabets checked")))
}

fn base_psi<L: ResiduatedLattice>(dir: Direction, a: &FuzzyAutomaton<L>, b: &FuzzyAutomaton<L>) -> Result<FuzzyMatrix<L>> {
    match dir {
        Direction::Forward => FuzzyMatrix::arrow_right(a.tau(), b.tau()),
        Direction::Backward => FuzzyMatrix::arrow_right(a.sigma(), b.sigma()),
    }
}

/// The initial relation `ψ^w` (an `|A|×|B|` matrix).
pub fn psi_init<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
) -> Result<FuzzyMatrix<L>> {
    check_pair(a, b)?;
    let (first, second) = w.parts();
    let psi = base_psi(first, a, b)?;
    match second {
        None => Ok(psi),
        Some(dir) => psi.meet(&base_psi(dir, b, a)?.converse()),
    }
}

/// `φ^fs(α) = ⋀_x [(δ^B_x ∘ α⁻¹) \ δ^A_x]⁻¹` or
/// `φ^bs(α) = ⋀_x (α ∘ δ^B_x) / δ^A_x`.
fn base_phi<L: ResiduatedLattice>(
    dir: Direction,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    alpha: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    let mut acc = FuzzyMatrix::ones(a.lattice().clone(), a.num_states(), b.num_states());
    let alpha_inv = alpha.converse();
    for (da, db) in letter_pairs(a, b) {
        let term = match dir {
            Direction::Forward => db.compose(&alpha_inv)?.left_residual(da)?.converse(),
            Direction::Backward => alpha.compose(db)?.right_residual(da)?,
        };
        acc = acc.meet(&term)?;
    }
    Ok(acc)
}

/// One application of the operator `φ^w` to `alpha`.
pub fn phi_step<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    alpha: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    check_pair(a, b)?;
    check_relation(a, b, alpha, "phi_step")?;
    phi_unchecked(w, a, b, alpha)
}

fn phi_unchecked<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    alpha: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    let (first, second) = w.parts();
    let phi = base_phi(first, a, b, alpha)?;
    match second {
        None => Ok(phi),
        Some(dir) => phi.meet(&base_phi(dir, b, a, &alpha.converse())?.converse()),
    }
}

/// Truth values of the three defining conditions of a relation, evaluated
/// literally as relation inequalities, together with the equivalent
/// post-fixed-point form of (w-2) and (w-3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
    /// `φ ≤ φ^w(φ)`.
    pub post_fixed_point: bool,
    /// `φ ≤ ψ^w`.
    pub below_psi: bool,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.w1 && self.w2 && self.w3
    }

    pub fn equivalent_form(&self) -> bool {
        self.post_fixed_point && self.below_psi
    }

    /// Whether (w-2)∧(w-3) agrees with `φ ≤ φ^w(φ) ∧ φ ≤ ψ^w`.
    pub fn forms_agree(&self) -> bool {
        (self.w2 && self.w3) == self.equivalent_form()
    }
}

/// Literal (dir-1), (dir-2), (dir-3) for `phi` from `a` to `b`.
fn base_conditions<L: ResiduatedLattice>(
    dir: Direction,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    phi: &FuzzyMatrix<L>,
) -> Result<[bool; 3]> {
    let inv = phi.converse();
    match dir {
        Direction::Forward => {
            let c1 = a.sigma().leq(&b.sigma().compose(&inv)?)?;
            let mut c2 = true;
            for (da, db) in letter_pairs(a, b) {
                c2 &= inv.compose(da)?.leq(&db.compose(&inv)?)?;
            }
            let c3 = inv.compose(a.tau())?.leq(b.tau())?;
            Ok([c1, c2, c3])
        }
        Direction::Backward => {
            let c1 = a.tau().leq(&phi.compose(b.tau())?)?;
            let mut c2 = true;
            for (da, db) in letter_pairs(a, b) {
                c2 &= da.compose(phi)?.leq(&phi.compose(db)?)?;
            }
            let c3 = a.sigma().compose(phi)?.leq(b.sigma())?;
            Ok([c1, c2, c3])
        }
    }
}

fn literal_conditions<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    phi: &FuzzyMatrix<L>,
) -> Result<[bool; 3]> {
    let (first, second) = w.parts();
    let mut c = base_conditions(first, a, b, phi)?;
    if let Some(dir) = second {
        let d = base_conditions(dir, b, a, &phi.converse())?;
        for i in 0..3 {
            c[i] &= d[i];
        }
    }
    Ok(c)
}

fn condition_w1<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    phi: &FuzzyMatrix<L>,
) -> Result<bool> {
    Ok(literal_conditions(w, a, b, phi)?[0])
}

/// Evaluates (w-1), (w-2), (w-3) for `phi` and the equivalent
/// `φ ≤ φ^w(φ)`, `φ ≤ ψ^w` form.
pub fn check_conditions<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    phi: &FuzzyMatrix<L>,
) -> Result<ConditionReport> {
    check_pair(a, b)?;
    check_relation(a, b, phi, "check_conditions")?;
    let [w1, w2, w3] = literal_conditions(w, a, b, phi)?;
    let post_fixed_point = phi.leq(&phi_unchecked(w, a, b, phi)?)?;
    let below_psi = phi.leq(&psi_init(w, a, b)?)?;
    Ok(ConditionReport { w1, w2, w3, post_fixed_point, below_psi })
}

/// The descending sequence `φ_1 = ψ^w, φ_{k+1} = φ_k ∧ φ^w(φ_k)`, unbounded.
pub struct Iterates<'a, L: ResiduatedLattice> {
    w: SimulationType,
    a: &'a FuzzyAutomaton<L>,
    b: &'a FuzzyAutomaton<L>,
    next: FuzzyMatrix<L>,
}

impl<L: ResiduatedLattice> Iterator for Iterates<'_, L> {
    type Item = FuzzyMatrix<L>;

    fn next(&mut self) -> Option<FuzzyMatrix<L>> {
        let step = phi_unchecked(self.w, self.a, self.b, &self.next).expect("shapes checked");
        let following = self.next.meet(&step).expect("shapes checked");
        Some(std::mem::replace(&mut self.next, following))
    }
}

pub fn iterates<'a, L: ResiduatedLattice>(
    w: SimulationType,
    a: &'a FuzzyAutomaton<L>,
    b: &'a FuzzyAutomaton<L>,
) -> Result<Iterates<'a, L>> {
    let next = psi_init(w, a, b)?;
    Ok(Iterates { w, a, b, next })
}

/// Runs the sequence until two successive iterates agree (within the
/// lattice tolerance) or `cap` iterates have been produced.
///
/// (w-1) is only tested on the final relation: a stabilized sequence that
/// fails it proves no simulation of type `w` exists.
pub fn greatest_simulation<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    cap: usize,
) -> Result<ComputationOutcome<L>> {
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    let mut seq = iterates(w, a, b)?;
    let mut current = seq.next().expect("infinite sequence");
    let mut k = 1;
    loop {
        let next = seq.next().expect("infinite sequence");
        debug_assert!(next.leq(&current)?, "iterates must descend");
        if next.approx_eq(&current)? {
            let mut warnings = Vec::new();
            if next != current {
                warnings.push(Warning::ApproximateStabilization);
            }
            let w1 = condition_w1(w, a, b, &next)?;
            let status = if w1 { Status::Greatest } else { Status::NoSimulation };
            if w1 && next.is_zero() {
                warnings.push(Warning::EmptyRelation);
            }
            return Ok(ComputationOutcome { status, relation: next, iterations: k, condition_w1_holds: w1, warnings });
        }
        if k == cap {
            let w1 = condition_w1(w, a, b, &current)?;
            let mut warnings = Vec::new();
            if a.lattice().infinitely_distributive() {
                warnings.push(Warning::InfimumExists);
            }
            return Ok(ComputationOutcome {
                status: Status::CapReached,
                relation: current,
                iterations: k,
                condition_w1_holds: w1,
                warnings,
            });
        }
        current = next;
        k += 1;
    }
}

/// Crisp form of the base operators via their direct characterizations.
fn base_phi_crisp<L: ResiduatedLattice>(
    dir: Direction,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    rho: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    let l = a.lattice();
    let (na, nb) = (a.num_states(), b.num_states());
    let mut keep = vec![true; na * nb];
    let rho_inv = rho.converse();
    for (da, db) in letter_pairs(a, b) {
        match dir {
            // (a,b) kept iff δ^A_x(a,a') ≤ (δ^B_x ∘ ϱ⁻¹)(b,a') for all a'
            Direction::Forward => {
                let m = db.compose(&rho_inv)?;
                for i in 0..na {
                    for j in 0..nb {
                        keep[i * nb + j] &= (0..na).all(|ap| l.leq(da.get(i, ap), m.get(j, ap)));
                    }
                }
            }
            // (a,b) kept iff δ^A_x(a',a) ≤ (ϱ ∘ δ^B_x)(a',b) for all a'
            Direction::Backward => {
                let m = rho.compose(db)?;
                for i in 0..na {
                    for j in 0..nb {
                        keep[i * nb + j] &= (0..na).all(|ap| l.leq(da.get(ap, i), m.get(ap, j)));
                    }
                }
            }
        }
    }
    let data = keep.into_iter().map(|k| if k { l.one() } else { l.zero() }).collect();
    FuzzyMatrix::new(l.clone(), na, nb, data)
}

/// `(φ^w)^c(ϱ)`, the crisp part of `φ^w(ϱ)` for a crisp `ϱ`.
pub fn phi_crisp_step<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    rho: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    check_pair(a, b)?;
    check_relation(a, b, rho, "phi_crisp_step")?;
    if !rho.is_crisp() {
        return Err(Error::NotCrisp);
    }
    phi_crisp_unchecked(w, a, b, rho)
}

fn phi_crisp_unchecked<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    rho: &FuzzyMatrix<L>,
) -> Result<FuzzyMatrix<L>> {
    let (first, second) = w.parts();
    let r = base_phi_crisp(first, a, b, rho)?;
    match second {
        None => Ok(r),
        Some(dir) => r.meet(&base_phi_crisp(dir, b, a, &rho.converse())?.converse()),
    }
}

/// Greatest crisp relation of type `w`. Always terminates: each step either
/// removes a pair or stabilizes.
pub fn greatest_crisp_simulation<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
) -> Result<ComputationOutcome<L>> {
    let mut rho = psi_init(w, a, b)?.crisp_part();
    let mut k = 1;
    loop {
        let next = rho.meet(&phi_crisp_unchecked(w, a, b, &rho)?)?;
        if next == rho {
            break;
        }
        rho = next;
        k += 1;
    }
    debug_assert!(k <= a.num_states() * b.num_states() + 1);
    let w1 = condition_w1(w, a, b, &rho)?;
    let mut warnings = Vec::new();
    if w1 && rho.is_zero() {
        warnings.push(Warning::EmptyRelation);
    }
    Ok(ComputationOutcome {
        status: if w1 { Status::Greatest } else { Status::NoSimulation },
        relation: rho,
        iterations: k,
        condition_w1_holds: w1,
        warnings,
    })
}

/// Exhaustive search over all `2^{|A||B|}` crisp relations.
///
/// Reports the join of all relations satisfying (w-1)–(w-3) when there is
/// one; otherwise `NoSimulation` with the join of all relations satisfying
/// (w-2) and (w-3). `iterations` is the number of candidates examined.
pub fn brute_force_oracle<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
) -> Result<ComputationOutcome<L>> {
    check_pair(a, b)?;
    let (na, nb) = (a.num_states(), b.num_states());
    let pairs = na * nb;
    if pairs > ORACLE_MAX_PAIRS {
        return Err(Error::OracleTooLarge { pairs, limit: ORACLE_MAX_PAIRS });
    }
    let l = a.lattice();
    let mut all3 = FuzzyMatrix::zeros(l.clone(), na, nb);
    let mut only23 = all3.clone();
    let mut found = false;
    for mask in 0u32..(1u32 << pairs) {
        let data = (0..pairs).map(|i| if mask >> i & 1 == 1 { l.one() } else { l.zero() }).collect();
        let rel = FuzzyMatrix::new(l.clone(), na, nb, data)?;
        let [c1, c2, c3] = literal_conditions(w, a, b, &rel)?;
        if c2 && c3 {
            only23 = only23.join(&rel)?;
            if c1 {
                all3 = all3.join(&rel)?;
                found = true;
            }
        }
    }
    let iterations = 1usize << pairs;
    if found {
        let c = literal_conditions(w, a, b, &all3)?;
        assert!(c.iter().all(|&x| x), "join of {w} relations must itself be one");
        let warnings = if all3.is_zero() { vec![Warning::EmptyRelation] } else { Vec::new() };
        Ok(ComputationOutcome { status: Status::Greatest, relation: all3, iterations, condition_w1_holds: true, warnings })
    } else {
        Ok(ComputationOutcome {
            status: Status::NoSimulation,
            relation: only23,
            iterations,
            condition_w1_holds: false,
            warnings: Vec::new(),
        })
    }
}
