//! Fuzzy relations and fuzzy sets as dense matrices.
//!
//! A fuzzy relation between finite sets `A` and `B` is an `|A|×|B|` matrix
//! of lattice values; a fuzzy subset of `A` is a `1×|A|` row or an `|A|×1`
//! column. Composition is the sup-⊗ product.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::ResiduatedLattice;

#[derive(Clone, PartialEq)]
pub struct FuzzyMatrix<L: ResiduatedLattice> {
    lattice: L,
    rows: usize,
    cols: usize,
    data: Vec<L::Elem>,
}

impl<L: ResiduatedLattice> fmt::Debug for FuzzyMatrix<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols)).finish()
    }
}

impl<L: ResiduatedLattice> FuzzyMatrix<L> {
    /// Builds a matrix from row-major entries, checking every entry belongs
    /// to `lattice`.
    pub fn new(lattice: L, rows: usize, cols: usize, data: Vec<L::Elem>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::WrongEntryCount { rows, cols, expected: rows * cols, got: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&x| !lattice.contains(x)) {
            return Err(crate::lattice::LatticeError::NotAMember {
                value: lattice.to_number(bad),
                kind: lattice.kind(),
            }
            .into());
        }
        Ok(FuzzyMatrix { lattice, rows, cols, data })
    }

    pub fn from_rows(lattice: L, rows: Vec<Vec<L::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::WrongEntryCount { rows: r, cols: c, expected: c, got: bad.len() });
        }
        Self::new(lattice, r, c, rows.into_iter().flatten().collect())
    }

    pub fn row_vector(lattice: L, values: Vec<L::Elem>) -> Result<Self> {
        let n = values.len();
        Self::new(lattice, 1, n, values)
    }

    pub fn column_vector(lattice: L, values: Vec<L::Elem>) -> Result<Self> {
        let n = values.len();
        Self::new(lattice, n, 1, values)
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn filled(lattice: L, rows: usize, cols: usize, value: L::Elem) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        FuzzyMatrix { lattice, rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros(lattice: L, rows: usize, cols: usize) -> Self {
        let z = lattice.zero();
        Self::filled(lattice, rows, cols, z)
    }

    pub fn ones(lattice: L, rows: usize, cols: usize) -> Self {
        let o = lattice.one();
        Self::filled(lattice, rows, cols, o)
    }

    /// Crisp identity relation on an `n`-element set.
    pub fn identity(lattice: L, n: usize) -> Self {
        let mut m = Self::zeros(lattice, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.lattice.one();
        }
        m
    }

    fn from_fn(lattice: &L, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> L::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        FuzzyMatrix { lattice: lattice.clone(), rows, cols, data }
    }

    pub fn lattice(&self) -> &L {
        &self.lattice
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> L::Elem {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[L::Elem] {
        &self.data
    }

    pub fn row(&self, row: usize) -> &[L::Elem] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<L::Elem>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn is_vector(&self) -> bool {
        self.rows == 1 || self.cols == 1
    }

    fn vector_values(&self, op: &'static str) -> Result<&[L::Elem]> {
        if self.is_vector() {
            Ok(&self.data)
        } else {
            Err(Error::NotAVector { op, rows: self.rows, cols: self.cols })
        }
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::LatticeMismatch { left: self.lattice.kind(), right: other.lattice.kind() })
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        self.same_lattice(other)?;
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch { op, left: self.shape(), right: other.shape() })
        }
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(L::Elem, L::Elem) -> L::Elem) -> Result<Self> {
        self.same_shape(other, op)?;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f(x, y)).collect();
        Ok(FuzzyMatrix { lattice: self.lattice.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// `(self ∘ rhs)(a, c) = ⋁_b self(a, b) ⊗ rhs(b, c)`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.same_lattice(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch { op: "compose", left: self.shape(), right: rhs.shape() });
        }
        let l = &self.lattice;
        Ok(Self::from_fn(l, self.rows, rhs.cols, |a, c| {
            (0..self.cols).fold(l.zero(), |acc, b| {
                l.join(acc, l.otimes(self.data[a * self.cols + b], rhs.data[b * rhs.cols + c]))
            })
        }))
    }

    /// Transpose: `converse(m)(b, a) = m(a, b)`.
    pub fn converse(&self) -> Self {
        Self::from_fn(&self.lattice, self.cols, self.rows, |b, a| self.data[a * self.cols + b])
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "meet", |x, y| self.lattice.meet(x, y))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "join", |x, y| self.lattice.join(x, y))
    }

    /// Entrywise order, allowing the lattice tolerance on real instances.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_shape(other, "leq")?;
        Ok(self.data.iter().zip(&other.data).all(|(&x, &y)| self.lattice.approx_leq(x, y)))
    }

    /// Entrywise equality within the lattice tolerance.
    pub fn approx_eq(&self, other: &Self) -> Result<bool> {
        self.same_shape(other, "approx_eq")?;
        Ok(self.data.iter().zip(&other.data).all(|(&x, &y)| self.lattice.approx_eq(x, y)))
    }

    pub fn is_crisp(&self) -> bool {
        let (z, o) = (self.lattice.zero(), self.lattice.one());
        self.data.iter().all(|&x| x == z || x == o)
    }

    pub fn is_zero(&self) -> bool {
        let z = self.lattice.zero();
        self.data.iter().all(|&x| x == z)
    }

    /// Crisp part (kernel): 1 exactly where the entry equals 1.
    pub fn crisp_part(&self) -> Self {
        let l = &self.lattice;
        let data = self.data.iter().map(|&x| if l.is_one(x) { l.one() } else { l.zero() }).collect();
        FuzzyMatrix { lattice: l.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `(η → ξ)(a, b) = η(a) → ξ(b)`. Accepts row or column vectors.
    pub fn arrow_right(eta: &Self, xi: &Self) -> Result<Self> {
        eta.same_lattice(xi)?;
        let (e, x) = (eta.vector_values("arrow_right")?, xi.vector_values("arrow_right")?);
        let l = &eta.lattice;
        Ok(Self::from_fn(l, e.len(), x.len(), |a, b| l.residuum(e[a], x[b])))
    }

    /// `(η ← ξ)(a, b) = ξ(b) → η(a)`.
    pub fn arrow_left(eta: &Self, xi: &Self) -> Result<Self> {
        eta.same_lattice(xi)?;
        let (e, x) = (eta.vector_values("arrow_left")?, xi.vector_values("arrow_left")?);
        let l = &eta.lattice;
        Ok(Self::from_fn(l, e.len(), x.len(), |a, b| l.residuum(x[b], e[a])))
    }

    /// `(η ↔ ξ)(a, b) = η(a) ↔ ξ(b)`.
    pub fn arrow_bi(eta: &Self, xi: &Self) -> Result<Self> {
        eta.same_lattice(xi)?;
        let (e, x) = (eta.vector_values("arrow_bi")?, xi.vector_values("arrow_bi")?);
        let l = &eta.lattice;
        Ok(Self::from_fn(l, e.len(), x.len(), |a, b| l.biresiduum(e[a], x[b])))
    }

    /// Right residual `φ/α` with `(φ/α)(a, b) = ⋀_{a'} α(a', a) → φ(a', b)`,
    /// the greatest `χ` with `α ∘ χ ≤ φ`. Here `self` is `φ`.
    pub fn right_residual(&self, alpha: &Self) -> Result<Self> {
        self.same_lattice(alpha)?;
        if alpha.rows != self.rows {
            return Err(Error::ShapeMismatch { op: "right_residual", left: self.shape(), right: alpha.shape() });
        }
        let l = &self.lattice;
        Ok(Self::from_fn(l, alpha.cols, self.cols, |a, b| {
            (0..alpha.rows).fold(l.one(), |acc, ap| {
                l.meet(acc, l.residuum(alpha.data[ap * alpha.cols + a], self.data[ap * self.cols + b]))
            })
        }))
    }

    /// Left residual `φ\β` with `(φ\β)(a, b) = ⋀_{b'} β(b, b') → φ(a, b')`,
    /// the greatest `χ` with `χ ∘ β ≤ φ`. Here `self` is `φ`.
    pub fn left_residual(&self, beta: &Self) -> Result<Self> {
        self.same_lattice(beta)?;
        if beta.cols != self.cols {
            return Err(Error::ShapeMismatch { op: "left_residual", left: self.shape(), right: beta.shape() });
        }
        let l = &self.lattice;
        Ok(Self::from_fn(l, self.rows, beta.rows, |a, b| {
            (0..beta.cols).fold(l.one(), |acc, bp| {
                l.meet(acc, l.residuum(beta.data[b * beta.cols + bp], self.data[a * self.cols + bp]))
            })
        }))
    }
}
