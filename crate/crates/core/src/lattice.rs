//! Complete residuated lattices used as structures of truth values.
//!
//! Every algorithm in this crate is generic over [`ResiduatedLattice`]. Five
//! linearly ordered instances are provided:
//!
//! | instance        | `x ⊗ y`               | `x → y` (for `x > y`) |
//! |-----------------|-----------------------|-----------------------|
//! | [`Boolean`]     | `x ∧ y`               | `0`                   |
//! | [`Godel`]       | `min(x, y)`           | `y`                   |
//! | [`Lukasiewicz`] | `max(x + y − 1, 0)`   | `1 − x + y`           |
//! | [`Product`]     | `x · y`               | `y / x`               |
//! | [`Chain`]       | `a_max(k+l−n, 0)`     | `a_(n−k+l)`           |
//!
//! In all of them `x → y = 1` whenever `x ≤ y`.
//!
//! Gödel, Boolean and chain operations only ever return one of their
//! operands or a bound, so values computed from the same inputs compare
//! exactly. Łukasiewicz and product arithmetic rounds; those instances carry
//! an equality tolerance that [`ResiduatedLattice::approx_eq`] and
//! [`ResiduatedLattice::approx_leq`] honour.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default comparison tolerance for the real-valued instances with rounding.
pub const DEFAULT_REAL_TOLERANCE: f64 = 1e-12;

/// Default element budget for [`subalgebra_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Which algebra of truth values is in use.
///
/// Serialized as `{"type": "godel"}` or `{"type": "chain", "n": 5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LatticeKind {
    Boolean,
    Godel,
    Lukasiewicz,
    Product,
    Chain { n: u32 },
}

impl LatticeKind {
    /// Whether the instance uses floating-point arithmetic that may round.
    pub fn is_real_valued(self) -> bool {
        matches!(self, LatticeKind::Godel | LatticeKind::Lukasiewicz | LatticeKind::Product)
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Boolean => f.write_str("boolean"),
            LatticeKind::Godel => f.write_str("godel"),
            LatticeKind::Lukasiewicz => f.write_str("lukasiewicz"),
            LatticeKind::Product => f.write_str("product"),
            LatticeKind::Chain { n } => write!(f, "chain({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("{value} is not a value of the {kind} lattice")]
    NotAMember { value: f64, kind: LatticeKind },
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("tolerance must be a finite non-negative number, got {0}")]
    BadTolerance(f64),
}

/// A complete residuated lattice `(L, ∧, ∨, ⊗, →, 0, 1)`.
///
/// Implementations must make `⊗` and `→` an adjoint pair:
/// `x ⊗ y ≤ z` iff `x ≤ y → z`.
pub trait ResiduatedLattice: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> LatticeKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn join(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn otimes(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn residuum(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;

    /// The lattice order, evaluated exactly.
    fn leq(&self, x: Self::Elem, y: Self::Elem) -> bool;

    /// Whether `x` is a well-formed element of this instance.
    fn contains(&self, x: Self::Elem) -> bool;

    /// Numeric form used in files: reals as themselves, booleans as 0/1,
    /// chain elements as their index. Monotone in the lattice order.
    fn to_number(&self, x: Self::Elem) -> f64;

    fn from_number(&self, v: f64) -> Result<Self::Elem, LatticeError>;

    /// Slack used by [`approx_leq`](Self::approx_leq) and
    /// [`approx_eq`](Self::approx_eq). Zero for the exact instances.
    fn tolerance(&self) -> f64 {
        0.0
    }

    /// True when the meet-distributivity conditions needed for the infimum
    /// of a descending iteration to be a fixed point hold. All shipped
    /// instances are BL-chains and satisfy them.
    fn infinitely_distributive(&self) -> bool {
        true
    }

    /// Hook for [`subalgebra_closure`]: returns true if producing `x`
    /// proves the generated subalgebra infinite even though floating point
    /// would eventually collapse it.
    fn closure_diverges(&self, _x: Self::Elem) -> bool {
        false
    }

    fn biresiduum(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.meet(self.residuum(x, y), self.residuum(y, x))
    }

    fn meet_join_leq(&self, x: Self::Elem, y: Self::Elem) -> (Self::Elem, Self::Elem, bool) {
        (self.meet(x, y), self.join(x, y), self.leq(x, y))
    }

    /// `x ≤ y + tolerance`.
    fn approx_leq(&self, x: Self::Elem, y: Self::Elem) -> bool {
        self.leq(x, y) || {
            let tol = self.tolerance();
            tol > 0.0 && self.to_number(x) <= self.to_number(y) + tol
        }
    }

    fn approx_eq(&self, x: Self::Elem, y: Self::Elem) -> bool {
        x == y || {
            let tol = self.tolerance();
            tol > 0.0 && (self.to_number(x) - self.to_number(y)).abs() <= tol
        }
    }

    fn is_one(&self, x: Self::Elem) -> bool {
        x == self.one()
    }
}

fn check_tolerance(tolerance: f64) -> Result<f64, LatticeError> {
    if tolerance.is_finite() && tolerance >= 0.0 {
        Ok(tolerance)
    } else {
        Err(LatticeError::BadTolerance(tolerance))
    }
}

fn unit_interval(v: f64, kind: LatticeKind) -> Result<f64, LatticeError> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(LatticeError::NotAMember { value: v, kind })
    }
}

/// The two-element Boolean algebra of classical logic.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Boolean;

impl ResiduatedLattice for Boolean {
    type Elem = bool;

    fn kind(&self) -> LatticeKind {
        LatticeKind::Boolean
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn meet(&self, x: bool, y: bool) -> bool {
        x && y
    }
    fn join(&self, x: bool, y: bool) -> bool {
        x || y
    }
    fn otimes(&self, x: bool, y: bool) -> bool {
        x && y
    }
    fn residuum(&self, x: bool, y: bool) -> bool {
        !x || y
    }
    fn leq(&self, x: bool, y: bool) -> bool {
        !x || y
    }
    fn contains(&self, _x: bool) -> bool {
        true
    }
    fn to_number(&self, x: bool) -> f64 {
        if x {
            1.0
        } else {
            0.0
        }
    }
    fn from_number(&self, v: f64) -> Result<bool, LatticeError> {
        if v == 0.0 {
            Ok(false)
        } else if v == 1.0 {
            Ok(true)
        } else {
            Err(LatticeError::NotAMember { value: v, kind: LatticeKind::Boolean })
        }
    }
}

/// The Gödel structure on `[0, 1]`: `⊗ = min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Godel {
    tolerance: f64,
}

impl Godel {
    pub fn new() -> Self {
        Godel { tolerance: 0.0 }
    }

    pub fn with_tolerance(tolerance: f64) -> Result<Self, LatticeError> {
        Ok(Godel { tolerance: check_tolerance(tolerance)? })
    }
}

impl Default for Godel {
    fn default() -> Self {
        Godel::new()
    }
}

impl ResiduatedLattice for Godel {
    type Elem = f64;

    fn kind(&self) -> LatticeKind {
        LatticeKind::Godel
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn meet(&self, x: f64, y: f64) -> f64 {
        x.min(y)
    }
    fn join(&self, x: f64, y: f64) -> f64 {
        x.max(y)
    }
    fn otimes(&self, x: f64, y: f64) -> f64 {
        x.min(y)
    }
    fn residuum(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            1.0
        } else {
            y
        }
    }
    fn leq(&self, x: f64, y: f64) -> bool {
        x <= y
    }
    fn contains(&self, x: f64) -> bool {
        (0.0..=1.0).contains(&x)
    }
    fn to_number(&self, x: f64) -> f64 {
        x
    }
    fn from_number(&self, v: f64) -> Result<f64, LatticeError> {
        unit_interval(v, LatticeKind::Godel)
    }
    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// The Łukasiewicz structure on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lukasiewicz {
    tolerance: f64,
}

impl Lukasiewicz {
    pub fn new() -> Self {
        Lukasiewicz { tolerance: DEFAULT_REAL_TOLERANCE }
    }

    pub fn with_tolerance(tolerance: f64) -> Result<Self, LatticeError> {
        Ok(Lukasiewicz { tolerance: check_tolerance(tolerance)? })
    }
}

impl Default for Lukasiewicz {
    fn default() -> Self {
        Lukasiewicz::new()
    }
}

impl ResiduatedLattice for Lukasiewicz {
    type Elem = f64;

    fn kind(&self) -> LatticeKind {
        LatticeKind::Lukasiewicz
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn meet(&self, x: f64, y: f64) -> f64 {
        x.min(y)
    }
    fn join(&self, x: f64, y: f64) -> f64 {
        x.max(y)
    }
    fn otimes(&self, x: f64, y: f64) -> f64 {
        // 1 is the unit; keep it exact instead of going through x + 1 − 1.
        if x == 1.0 {
            y
        } else if y == 1.0 {
            x
        } else {
            (x + y - 1.0).clamp(0.0, 1.0)
        }
    }
    fn residuum(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            1.0
        } else {
            (1.0 - x + y).clamp(0.0, 1.0)
        }
    }
    fn leq(&self, x: f64, y: f64) -> bool {
        x <= y
    }
    fn contains(&self, x: f64) -> bool {
        (0.0..=1.0).contains(&x)
    }
    fn to_number(&self, x: f64) -> f64 {
        x
    }
    fn from_number(&self, v: f64) -> Result<f64, LatticeError> {
        unit_interval(v, LatticeKind::Lukasiewicz)
    }
    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// The Goguen (product) structure on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Product {
    tolerance: f64,
}

impl Product {
    pub fn new() -> Self {
        Product { tolerance: DEFAULT_REAL_TOLERANCE }
    }

    pub fn with_tolerance(tolerance: f64) -> Result<Self, LatticeError> {
        Ok(Product { tolerance: check_tolerance(tolerance)? })
    }
}

impl Default for Product {
    fn default() -> Self {
        Product::new()
    }
}

impl ResiduatedLattice for Product {
    type Elem = f64;

    fn kind(&self) -> LatticeKind {
        LatticeKind::Product
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn meet(&self, x: f64, y: f64) -> f64 {
        x.min(y)
    }
    fn join(&self, x: f64, y: f64) -> f64 {
        x.max(y)
    }
    fn otimes(&self, x: f64, y: f64) -> f64 {
        (x * y).clamp(0.0, 1.0)
    }
    fn residuum(&self, x: f64, y: f64) -> f64 {
        // x > y >= 0 here, so the division is well defined.
        if x <= y {
            1.0
        } else {
            (y / x).clamp(0.0, 1.0)
        }
    }
    fn leq(&self, x: f64, y: f64) -> bool {
        x <= y
    }
    fn contains(&self, x: f64) -> bool {
        (0.0..=1.0).contains(&x)
    }
    fn to_number(&self, x: f64) -> f64 {
        x
    }
    fn from_number(&self, v: f64) -> Result<f64, LatticeError> {
        unit_interval(v, LatticeKind::Product)
    }
    fn tolerance(&self) -> f64 {
        self.tolerance
    }
    fn closure_diverges(&self, x: f64) -> bool {
        // Any 0 < x < 1 has pairwise distinct powers; once they sink below
        // the tolerance the float closure would merge them with 0.
        x > 0.0 && x < self.tolerance.max(f64::MIN_POSITIVE)
    }
}

/// The finite chain `0 = a_0 < a_1 < … < a_n = 1` with Łukasiewicz-style
/// operations on indices. Elements are the indices themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    n: u32,
}

impl Chain {
    pub fn new(n: u32) -> Result<Self, LatticeError> {
        if n == 0 {
            Err(LatticeError::EmptyChain)
        } else {
            Ok(Chain { n })
        }
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl ResiduatedLattice for Chain {
    type Elem = u32;

    fn kind(&self) -> LatticeKind {
        LatticeKind::Chain { n: self.n }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.n
    }
    fn meet(&self, x: u32, y: u32) -> u32 {
        x.min(y)
    }
    fn join(&self, x: u32, y: u32) -> u32 {
        x.max(y)
    }
    fn otimes(&self, x: u32, y: u32) -> u32 {
        (x + y).saturating_sub(self.n)
    }
    fn residuum(&self, x: u32, y: u32) -> u32 {
        (self.n - x.min(self.n) + y).min(self.n)
    }
    fn leq(&self, x: u32, y: u32) -> bool {
        x <= y
    }
    fn contains(&self, x: u32) -> bool {
        x <= self.n
    }
    fn to_number(&self, x: u32) -> f64 {
        f64::from(x)
    }
    fn from_number(&self, v: f64) -> Result<u32, LatticeError> {
        if v.fract() == 0.0 && v >= 0.0 && v <= f64::from(self.n) {
            Ok(v as u32)
        } else {
            Err(LatticeError::NotAMember { value: v, kind: self.kind() })
        }
    }
}

/// Result of [`subalgebra_closure`].
#[derive(Debug, Clone, PartialEq)]
pub enum Closure<E> {
    /// The generated subalgebra, sorted ascending.
    Finite(Vec<E>),
    /// Enumeration stopped after exceeding the cap, or the instance
    /// reported that the subalgebra cannot be finite.
    CapExceeded { explored: usize },
}

impl<E> Closure<E> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Closure::Finite(_))
    }

    /// The elements of a finite closure, in ascending order.
    pub fn elements(&self) -> &[E] {
        match self {
            Closure::Finite(v) => v,
            Closure::CapExceeded { .. } => &[],
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            Closure::Finite(v) => Some(v.len()),
            Closure::CapExceeded { .. } => None,
        }
    }
}

/// Subalgebra of `lattice` generated by `seed ∪ {0, 1}` under `∧, ∨, ⊗, →`.
///
/// Elements within the instance tolerance are identified. Relies on every
/// shipped instance being linearly ordered.
pub fn subalgebra_closure<L: ResiduatedLattice>(
    lattice: &L,
    seed: &[L::Elem],
    cap: usize,
) -> Closure<L::Elem> {
    let mut set = SortedSet::new(lattice);
    let mut order: Vec<L::Elem> = Vec::new();
    for &x in [lattice.zero(), lattice.one()].iter().chain(seed) {
        if lattice.closure_diverges(x) {
            return Closure::CapExceeded { explored: order.len() };
        }
        if set.insert(x) {
            order.push(x);
        }
    }
    if order.len() > cap {
        return Closure::CapExceeded { explored: order.len() };
    }

    let mut next = 0;
    while next < order.len() {
        let x = order[next];
        for j in 0..=next {
            let y = order[j];
            let produced = [
                lattice.meet(x, y),
                lattice.join(x, y),
                lattice.otimes(x, y),
                lattice.residuum(x, y),
                lattice.residuum(y, x),
            ];
            for z in produced {
                if lattice.closure_diverges(z) {
                    return Closure::CapExceeded { explored: order.len() + 1 };
                }
                if set.insert(z) {
                    if order.len() + 1 > cap {
                        return Closure::CapExceeded { explored: order.len() + 1 };
                    }
                    order.push(z);
                }
            }
        }
        next += 1;
    }
    Closure::Finite(set.into_elems())
}

/// Elements kept sorted by their numeric form for tolerance-aware lookup.
struct SortedSet<'a, L: ResiduatedLattice> {
    lattice: &'a L,
    items: Vec<(f64, L::Elem)>,
}

impl<'a, L: ResiduatedLattice> SortedSet<'a, L> {
    fn new(lattice: &'a L) -> Self {
        SortedSet { lattice, items: Vec::new() }
    }

    /// Returns false if an equal (within tolerance) element is present.
    fn insert(&mut self, x: L::Elem) -> bool {
        let key = self.lattice.to_number(x);
        let pos = self.items.partition_point(|(k, _)| *k < key);
        let near = |i: usize| self.lattice.approx_eq(self.items[i].1, x);
        if (pos < self.items.len() && near(pos)) || (pos > 0 && near(pos - 1)) {
            return false;
        }
        self.items.insert(pos, (key, x));
        true
    }

    fn into_elems(self) -> Vec<L::Elem> {
        self.items.into_iter().map(|(_, e)| e).collect()
    }
}
