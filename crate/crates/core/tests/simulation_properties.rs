mod common;

use common::*;
use fuzzsim::simulation::iterates;
use fuzzsim::*;
use proptest::prelude::*;

/// Entrywise form of the forward operator:
/// `φ^fs(α)(a,b) = ⋀_x ⋀_{a'} δ^A_x(a,a') → (δ^B_x ∘ α⁻¹)(b,a')`.
fn naive_fs<L: ResiduatedLattice>(a: &FuzzyAutomaton<L>, b: &FuzzyAutomaton<L>, alpha: &FuzzyMatrix<L>) -> FuzzyMatrix<L> {
    let l = a.lattice().clone();
    let (na, nb) = (a.num_states(), b.num_states());
    let mut data = vec![l.one(); na * nb];
    for (x, da) in a.transitions() {
        let db = b.delta(x).unwrap();
        for i in 0..na {
            for j in 0..nb {
                for ap in 0..na {
                    let mut sup = l.zero();
                    for bp in 0..nb {
                        sup = l.join(sup, l.otimes(db.get(j, bp), alpha.get(ap, bp)));
                    }
                    data[i * nb + j] = l.meet(data[i * nb + j], l.residuum(da.get(i, ap), sup));
                }
            }
        }
    }
    FuzzyMatrix::new(l, na, nb, data).unwrap()
}

/// `φ^bs(α)(a,b) = ⋀_x ⋀_{a'} δ^A_x(a',a) → (α ∘ δ^B_x)(a',b)`.
fn naive_bs<L: ResiduatedLattice>(a: &FuzzyAutomaton<L>, b: &FuzzyAutomaton<L>, alpha: &FuzzyMatrix<L>) -> FuzzyMatrix<L> {
    let l = a.lattice().clone();
    let (na, nb) = (a.num_states(), b.num_states());
    let mut data = vec![l.one(); na * nb];
    for (x, da) in a.transitions() {
        let db = b.delta(x).unwrap();
        for i in 0..na {
            for j in 0..nb {
                for ap in 0..na {
                    let mut sup = l.zero();
                    for bp in 0..nb {
                        sup = l.join(sup, l.otimes(alpha.get(ap, bp), db.get(bp, j)));
                    }
                    data[i * nb + j] = l.meet(data[i * nb + j], l.residuum(da.get(ap, i), sup));
                }
            }
        }
    }
    FuzzyMatrix::new(l, na, nb, data).unwrap()
}

fn naive_phi<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    alpha: &FuzzyMatrix<L>,
) -> FuzzyMatrix<L> {
    let inv = alpha.converse();
    let m = |x: FuzzyMatrix<L>, y: FuzzyMatrix<L>| x.meet(&y.converse()).unwrap();
    match w {
        SimulationType::Fs => naive_fs(a, b, alpha),
        SimulationType::Bs => naive_bs(a, b, alpha),
        SimulationType::Fb => m(naive_fs(a, b, alpha), naive_fs(b, a, &inv)),
        SimulationType::Bb => m(naive_bs(a, b, alpha), naive_bs(b, a, &inv)),
        SimulationType::Fbb => m(naive_fs(a, b, alpha), naive_bs(b, a, &inv)),
        SimulationType::Bfb => m(naive_bs(a, b, alpha), naive_fs(b, a, &inv)),
    }
}

fn assert_outcome_invariants<L: ResiduatedLattice>(
    w: SimulationType,
    a: &FuzzyAutomaton<L>,
    b: &FuzzyAutomaton<L>,
    out: &ComputationOutcome<L>,
) -> Result<(), TestCaseError> {
    prop_assert!(out.iterations >= 1);
    let r = check_conditions(w, a, b, &out.relation).unwrap();
    prop_assert!(r.forms_agree(), "{w}: {r:?}");
    match out.status {
        Status::Greatest => prop_assert!(r.holds(), "{w}: {r:?}"),
        Status::NoSimulation => prop_assert!(!r.w1 && r.w2 && r.w3, "{w}: {r:?}"),
        Status::CapReached => {}
    }
    prop_assert_eq!(out.condition_w1_holds, r.w1);
    if out.status != Status::CapReached {
        prop_assert!(out.relation.leq(&phi_step(w, a, b, &out.relation).unwrap()).unwrap());
        prop_assert!(out.relation.leq(&psi_init(w, a, b).unwrap()).unwrap());
    }
    Ok(())
}

/// Raising any entry of a greatest solution must break (w-2) or (w-3).
fn assert_unbumpable(
    w: SimulationType,
    a: &FuzzyAutomaton<Godel>,
    b: &FuzzyAutomaton<Godel>,
    rel: &FuzzyMatrix<Godel>,
) -> Result<(), TestCaseError> {
    for i in 0..rel.rows() {
        for j in 0..rel.cols() {
            for v in [0.2, 0.4, 0.5, 0.7, 1.0] {
                if v <= rel.get(i, j) {
                    continue;
                }
                let mut rows = rel.to_rows();
                rows[i][j] = v;
                let bumped = godel(rows);
                let r = check_conditions(w, a, b, &bumped).unwrap();
                prop_assert!(!(r.w2 && r.w3), "{w}: raising ({i},{j}) to {v} kept a solution");
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phi_matches_entrywise_definition_godel((a, b, alpha) in godel_instance(3)) {
        for w in SimulationType::ALL {
            prop_assert_eq!(phi_step(w, &a, &b, &alpha).unwrap(), naive_phi(w, &a, &b, &alpha), "{}", w);
        }
    }

    #[test]
    fn phi_matches_entrywise_definition_chain((a, b, alpha) in instance(Chain::new(4).unwrap(), 3, chain_values(4))) {
        for w in SimulationType::ALL {
            prop_assert_eq!(phi_step(w, &a, &b, &alpha).unwrap(), naive_phi(w, &a, &b, &alpha), "{}", w);
        }
    }

    #[test]
    fn phi_matches_entrywise_definition_lukasiewicz((a, b, alpha) in instance(Lukasiewicz::new(), 3, grid8())) {
        for w in SimulationType::ALL {
            prop_assert!(phi_step(w, &a, &b, &alpha).unwrap().approx_eq(&naive_phi(w, &a, &b, &alpha)).unwrap(), "{}", w);
        }
    }

    #[test]
    fn phi_is_isotone(((a, b, hi), lo) in godel_instance(3).prop_flat_map(|(a, b, m)| {
        let (r, c) = m.shape();
        ((Just(a), Just(b), Just(m)), matrix(Godel::new(), r, c, godel_values()))
    })) {
        let lo = lo.meet(&hi).unwrap();
        for w in SimulationType::ALL {
            prop_assert!(phi_step(w, &a, &b, &lo).unwrap().leq(&phi_step(w, &a, &b, &hi).unwrap()).unwrap(), "{}", w);
        }
    }

    #[test]
    fn composite_operators_are_meets_of_base_ones((a, b, alpha) in instance(Product::new(), 3, grid8())) {
        let inv = alpha.converse();
        let fs = |x: &FuzzyAutomaton<Product>, y: &FuzzyAutomaton<Product>, r: &FuzzyMatrix<Product>| phi_step(SimulationType::Fs, x, y, r).unwrap();
        let bs = |x: &FuzzyAutomaton<Product>, y: &FuzzyAutomaton<Product>, r: &FuzzyMatrix<Product>| phi_step(SimulationType::Bs, x, y, r).unwrap();
        let pairs = [
            (SimulationType::Fb, fs(&a, &b, &alpha).meet(&fs(&b, &a, &inv).converse()).unwrap()),
            (SimulationType::Bb, bs(&a, &b, &alpha).meet(&bs(&b, &a, &inv).converse()).unwrap()),
            (SimulationType::Fbb, fs(&a, &b, &alpha).meet(&bs(&b, &a, &inv).converse()).unwrap()),
            (SimulationType::Bfb, bs(&a, &b, &alpha).meet(&fs(&b, &a, &inv).converse()).unwrap()),
        ];
        for (w, expected) in pairs {
            prop_assert_eq!(phi_step(w, &a, &b, &alpha).unwrap(), expected, "{}", w);
        }
    }

    #[test]
    fn literal_conditions_agree_with_fixed_point_form((a, b, phi) in godel_instance(3)) {
        for w in SimulationType::ALL {
            let r = check_conditions(w, &a, &b, &phi).unwrap();
            prop_assert!(r.forms_agree(), "{}: {:?}", w, r);
        }
    }

    #[test]
    fn literal_conditions_agree_with_fixed_point_form_lukasiewicz((a, b, phi) in instance(Lukasiewicz::new(), 3, grid8())) {
        for w in SimulationType::ALL {
            let r = check_conditions(w, &a, &b, &phi).unwrap();
            prop_assert!(r.forms_agree(), "{}: {:?}", w, r);
        }
    }

    #[test]
    fn iterates_descend((a, b, _) in instance(Lukasiewicz::new(), 3, grid8())) {
        for w in SimulationType::ALL {
            let seq: Vec<_> = iterates(w, &a, &b).unwrap().take(25).collect();
            for pair in seq.windows(2) {
                prop_assert!(pair[1].leq(&pair[0]).unwrap(), "{}", w);
            }
        }
    }

    #[test]
    fn godel_outcomes_are_greatest((a, b, _) in godel_instance(3)) {
        for w in SimulationType::ALL {
            let out = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            prop_assert_ne!(out.status, Status::CapReached, "{}", w);
            prop_assert!(out.warnings.is_empty() || out.warnings == [Warning::EmptyRelation]);
            assert_outcome_invariants(w, &a, &b, &out)?;
            assert_unbumpable(w, &a, &b, &out.relation)?;
        }
    }

    #[test]
    fn every_solution_lies_below_the_result((a, b, chi) in godel_instance(2)) {
        for w in SimulationType::ALL {
            let out = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            let r = check_conditions(w, &a, &b, &chi).unwrap();
            if r.w2 && r.w3 {
                prop_assert!(chi.leq(&out.relation).unwrap(), "{}", w);
            }
        }
    }

    #[test]
    fn chain_outcomes_are_greatest((a, b, _) in instance(Chain::new(5).unwrap(), 3, chain_values(5))) {
        for w in SimulationType::ALL {
            let out = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            prop_assert_ne!(out.status, Status::CapReached);
            assert_outcome_invariants(w, &a, &b, &out)?;
        }
    }

    #[test]
    fn lukasiewicz_outcomes_satisfy_invariants((a, b, _) in instance(Lukasiewicz::new(), 3, grid8())) {
        for w in SimulationType::ALL {
            let out = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            assert_outcome_invariants(w, &a, &b, &out)?;
        }
    }

    #[test]
    fn crisp_step_is_crisp_part_of_phi((a, b, rho) in godel_instance(3)) {
        let rho = rho.crisp_part();
        for w in SimulationType::ALL {
            prop_assert_eq!(phi_crisp_step(w, &a, &b, &rho).unwrap(), phi_step(w, &a, &b, &rho).unwrap().crisp_part(), "{}", w);
        }
    }

    #[test]
    fn crisp_step_is_phi_over_booleans((a, b, rho) in boolean_instance(3)) {
        for w in SimulationType::ALL {
            prop_assert_eq!(phi_crisp_step(w, &a, &b, &rho).unwrap(), phi_step(w, &a, &b, &rho).unwrap(), "{}", w);
        }
    }

    #[test]
    fn greatest_crisp_lies_below_crisp_part_of_greatest((a, b, _) in godel_instance(3)) {
        for w in SimulationType::ALL {
            let fuzzy = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            let crisp = greatest_crisp_simulation(w, &a, &b).unwrap();
            prop_assert!(crisp.iterations <= a.num_states() * b.num_states() + 1);
            prop_assert!(crisp.relation.leq(&fuzzy.relation.crisp_part()).unwrap(), "{}", w);
            if crisp.status == Status::Greatest {
                prop_assert_eq!(fuzzy.status, Status::Greatest);
                prop_assert!(check_conditions(w, &a, &b, &crisp.relation).unwrap().holds());
            }
        }
    }

    #[test]
    fn both_algorithms_match_the_oracle_on_booleans((a, b, _) in boolean_instance(3)) {
        for w in SimulationType::ALL {
            let oracle = brute_force_oracle(w, &a, &b).unwrap();
            let fuzzy = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            let crisp = greatest_crisp_simulation(w, &a, &b).unwrap();
            prop_assert_eq!(fuzzy.status, oracle.status, "{}", w);
            prop_assert_eq!(&fuzzy.relation, &oracle.relation, "{}", w);
            prop_assert_eq!(crisp.status, oracle.status, "{}", w);
            prop_assert_eq!(&crisp.relation, &oracle.relation, "{}", w);
        }
    }

    #[test]
    fn reversal_swaps_forward_and_backward((a, b, _) in godel_instance(3)) {
        let (ra, rb) = (a.reverse(), b.reverse());
        let dual = [
            (SimulationType::Bs, SimulationType::Fs),
            (SimulationType::Fs, SimulationType::Bs),
            (SimulationType::Bb, SimulationType::Fb),
            (SimulationType::Fbb, SimulationType::Bfb),
        ];
        for (w, v) in dual {
            let x = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            let y = greatest_simulation(v, &ra, &rb, DEFAULT_CAP).unwrap();
            prop_assert_eq!(x.status, y.status);
            prop_assert_eq!(x.relation, y.relation);
        }
    }
}

#[test]
fn godel_iteration_terminates_when_closure_is_finite() {
    use fuzzsim::lattice::{subalgebra_closure, DEFAULT_CLOSURE_CAP};
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strat = godel_instance(3);
    for _ in 0..100 {
        let (a, b, _) = strat.new_tree(&mut runner).unwrap().current();
        for w in SimulationType::ALL {
            let mut seed: Vec<f64> = psi_init(w, &a, &b).unwrap().entries().to_vec();
            for (_, d) in a.transitions().chain(b.transitions()) {
                seed.extend_from_slice(d.entries());
            }
            let closure = subalgebra_closure(&Godel::new(), &seed, DEFAULT_CLOSURE_CAP);
            assert!(closure.is_finite());
            let out = greatest_simulation(w, &a, &b, DEFAULT_CAP).unwrap();
            assert_ne!(out.status, Status::CapReached);
            for v in out.relation.entries() {
                assert!(closure.elements().contains(v), "{v} outside the generated subalgebra");
            }
        }
    }
}
