//! Checks of the algebraic laws on concrete samples.
//!
//! Each function returns `Err` naming the first law that fails. Comparisons
//! are exact, so real-valued instances should be sampled on a dyadic grid
//! where their arithmetic does not round.

use crate::lattice::ResiduatedLattice;
use crate::matrix::FuzzyMatrix;

pub type LawResult = std::result::Result<(), String>;

fn ensure(ok: bool, law: &str, detail: impl FnOnce() -> String) -> LawResult {
    if ok {
        Ok(())
    } else {
        Err(format!("{law}: {}", detail()))
    }
}

/// Adjunction, `x → y = 1 ⇔ x ≤ y`, isotonicity of `⊗`, distribution of `⊗`
/// over a three-element join, and the meet inequality, on one quadruple.
pub fn element_laws<L: ResiduatedLattice>(l: &L, x: L::Elem, y: L::Elem, z: L::Elem, u: L::Elem) -> LawResult {
    ensure(l.leq(l.otimes(x, y), z) == l.leq(x, l.residuum(y, z)), "adjunction", || format!("{x:?} {y:?} {z:?}"))?;
    ensure((l.residuum(x, y) == l.one()) == l.leq(x, y), "residuum is one iff below", || format!("{x:?} {y:?}"))?;
    if l.leq(x, y) {
        ensure(l.leq(l.otimes(x, z), l.otimes(y, z)), "isotonicity", || format!("{x:?} {y:?} {z:?}"))?;
    }
    let lhs = l.otimes(x, l.join(l.join(y, z), u));
    let rhs = l.join(l.join(l.otimes(x, y), l.otimes(x, z)), l.otimes(x, u));
    ensure(lhs == rhs, "product distributes over joins", || format!("{lhs:?} vs {rhs:?}"))?;
    let lhs = l.otimes(x, l.meet(l.meet(y, z), u));
    let rhs = l.meet(l.meet(l.otimes(x, y), l.otimes(x, z)), l.otimes(x, u));
    ensure(l.leq(lhs, rhs), "product below meets", || format!("{lhs:?} vs {rhs:?}"))?;
    ensure(l.otimes(x, y) == l.otimes(y, x), "commutativity", || format!("{x:?} {y:?}"))?;
    ensure(l.otimes(x, l.one()) == x, "unit", || format!("{x:?}"))
}

/// Relations and fuzzy sets for [`relation_laws`]: `p0: A×B`, `p1, p2: B×C`,
/// `p3: C×D`, `f` a `1×A` row, `g` a `B×1` column.
#[derive(Debug, Clone)]
pub struct RelationSample<L: ResiduatedLattice> {
    pub p0: FuzzyMatrix<L>,
    pub p1: FuzzyMatrix<L>,
    pub p2: FuzzyMatrix<L>,
    pub p3: FuzzyMatrix<L>,
    pub f: FuzzyMatrix<L>,
    pub g: FuzzyMatrix<L>,
}

/// Associativity (plain and with fuzzy sets), monotonicity, the converse of
/// a composition, distribution over joins and the converse of a join.
pub fn relation_laws<L: ResiduatedLattice>(s: &RelationSample<L>) -> LawResult {
    let c = |a: &FuzzyMatrix<L>, b: &FuzzyMatrix<L>| a.compose(b).map_err(|e| e.to_string());
    let RelationSample { p0, p1, p2, p3, f, g } = s;

    ensure(c(&c(p0, p1)?, p3)? == c(p0, &c(p1, p3)?)?, "associativity", String::new)?;
    ensure(c(&c(f, p0)?, p1)? == c(f, &c(p0, p1)?)?, "set-relation associativity", String::new)?;
    ensure(c(&c(f, p0)?, g)? == c(f, &c(p0, g)?)?, "set-relation-set associativity", String::new)?;

    let lo = p1.meet(p2).map_err(|e| e.to_string())?;
    let hi = p1.join(p2).map_err(|e| e.to_string())?;
    let le = |a: &FuzzyMatrix<L>, b: &FuzzyMatrix<L>| a.leq(b).map_err(|e| e.to_string());
    ensure(le(&lo.converse(), &hi.converse())?, "monotonicity of converse", String::new)?;
    ensure(le(&c(p0, &lo)?, &c(p0, &hi)?)?, "left monotonicity", String::new)?;
    ensure(le(&c(&lo, p3)?, &c(&hi, p3)?)?, "right monotonicity", String::new)?;

    ensure(c(p0, p1)?.converse() == c(&p1.converse(), &p0.converse())?, "converse of composition", String::new)?;
    let j = |a: FuzzyMatrix<L>, b: FuzzyMatrix<L>| a.join(&b).map_err(|e| e.to_string());
    ensure(c(p0, &hi)? == j(c(p0, p1)?, c(p0, p2)?)?, "left distribution over joins", String::new)?;
    ensure(c(&hi, p3)? == j(c(p1, p3)?, c(p2, p3)?)?, "right distribution over joins", String::new)?;
    ensure(hi.converse() == j(p1.converse(), p2.converse())?, "converse of join", String::new)
}

/// The greatest-solution property of both residuals, against every
/// candidate `χ: A×B`: `α ∘ χ ≤ φ ⇔ χ ≤ φ/α` and `χ ∘ β ≤ φ ⇔ χ ≤ φ\β`.
pub fn residual_laws<'a, L: ResiduatedLattice + 'a>(
    alpha: &FuzzyMatrix<L>,
    beta: &FuzzyMatrix<L>,
    phi: &FuzzyMatrix<L>,
    candidates: impl IntoIterator<Item = &'a FuzzyMatrix<L>>,
) -> LawResult {
    let right = phi.right_residual(alpha).map_err(|e| e.to_string())?;
    let left = phi.left_residual(beta).map_err(|e| e.to_string())?;
    for chi in candidates {
        let solves = alpha.compose(chi).and_then(|m| m.leq(phi)).map_err(|e| e.to_string())?;
        ensure(solves == chi.leq(&right).map_err(|e| e.to_string())?, "right residual is the greatest solution", || {
            format!("{chi:?}")
        })?;
        let solves = chi.compose(beta).and_then(|m| m.leq(phi)).map_err(|e| e.to_string())?;
        ensure(solves == chi.leq(&left).map_err(|e| e.to_string())?, "left residual is the greatest solution", || {
            format!("{chi:?}")
        })?;
    }
    Ok(())
}

/// `η ∘ χ ≤ ξ ⇔ χ ≤ η → ξ` and `χ ∘ ξ' ≤ η' ⇔ χ ≤ η' ← ξ'`, with `η` a
/// `1×A` row, `ξ` a `1×B` row, `η'` an `A×1` column and `ξ'` a `B×1`
/// column.
pub fn arrow_laws<'a, L: ResiduatedLattice + 'a>(
    eta: &FuzzyMatrix<L>,
    xi: &FuzzyMatrix<L>,
    eta_col: &FuzzyMatrix<L>,
    xi_col: &FuzzyMatrix<L>,
    candidates: impl IntoIterator<Item = &'a FuzzyMatrix<L>>,
) -> LawResult {
    let right = FuzzyMatrix::arrow_right(eta, xi).map_err(|e| e.to_string())?;
    let left = FuzzyMatrix::arrow_left(eta_col, xi_col).map_err(|e| e.to_string())?;
    for chi in candidates {
        let solves = eta.compose(chi).and_then(|m| m.leq(xi)).map_err(|e| e.to_string())?;
        ensure(solves == chi.leq(&right).map_err(|e| e.to_string())?, "right arrow is the greatest solution", || {
            format!("{chi:?}")
        })?;
        let solves = chi.compose(xi_col).and_then(|m| m.leq(eta_col)).map_err(|e| e.to_string())?;
        ensure(solves == chi.leq(&left).map_err(|e| e.to_string())?, "left arrow is the greatest solution", || {
            format!("{chi:?}")
        })?;
    }
    Ok(())
}

/// Every `rows × cols` matrix with entries from `values`.
pub fn all_matrices<L: ResiduatedLattice>(l: &L, rows: usize, cols: usize, values: &[L::Elem]) -> Vec<FuzzyMatrix<L>> {
    let n = rows * cols;
    let k = values.len();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let data = (0..n)
                .map(|_| {
                    let v = values[code % k];
                    code /= k;
                    v
                })
                .collect();
            FuzzyMatrix::new(l.clone(), rows, cols, data).expect("positive dimensions")
        })
        .collect()
}
