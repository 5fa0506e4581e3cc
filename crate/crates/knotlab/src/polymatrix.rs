//! Exact linear algebra over the principal ideal domain `Q[t^±1]`: column
//! Hermite normal forms, kernels of maps into quotient modules, and canonical
//! submodule arithmetic.
//!
//! `Q[t^±1]` is Euclidean for the width function `deg − ord`. The Hermite form
//! used here performs column operations only (so column spans are preserved),
//! normalizes every pivot to its unit-normal associate (monic, ordinary,
//! nonzero constant term), and reduces the pivot-row entries of earlier
//! columns to their canonical residues modulo the pivot. This yields a unique
//! matrix per column span, which makes submodule equality a structural
//! comparison.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::laurent::LaurentPolynomial;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("submodules live over different ambient presentations")]
    AmbientMismatch,
    #[error("operation requires a square matrix")]
    NonSquare,
    #[error("presentation matrix has zero determinant")]
    SingularPresentation,
    #[error("zero delta: degenerate order polynomial")]
    ZeroDelta,
    #[error("matrix too large for exact determinant expansion")]
    TooLarge,
}

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPolynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentPolynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPolynomial::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> LaurentPolynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("rows of length {c}"),
                found: "ragged rows".into(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<LaurentPolynomial>>) -> Result<Self, MatrixError> {
        for c in &cols {
            if c.len() != rows {
                return Err(MatrixError::DimensionMismatch {
                    expected: format!("columns of length {rows}"),
                    found: format!("column of length {}", c.len()),
                });
            }
        }
        let n = cols.len();
        Ok(Self::from_fn(rows, n, |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPolynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn col_vec(&self, j: usize) -> Vec<LaurentPolynomial> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPolynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise involution `t ↦ t^{-1}`.
    pub fn involute(&self) -> Self {
        self.map(LaurentPolynomial::involute)
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, p: &LaurentPolynomial) -> Self {
        self.map(|e| e * p)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(dim_err(self, rhs));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LaurentPolynomial::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        }))
    }

    /// `self · v` for a column vector.
    pub fn mul_col(&self, v: &[LaurentPolynomial]) -> Result<Vec<LaurentPolynomial>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = LaurentPolynomial::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * &v[k]);
                }
                acc
            })
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows {
            return Err(dim_err(self, rhs));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        }))
    }

    pub fn block_diag(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows + rhs.rows, self.cols + rhs.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                rhs.at(i - self.rows, j - self.cols).clone()
            } else {
                LaurentPolynomial::zero()
            }
        })
    }

    /// Exact determinant by Laplace expansion with memoization over column
    /// subsets. The 0×0 determinant is 1.
    pub fn determinant(&self) -> Result<LaurentPolynomial, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPolynomial::one());
        }
        if n > 20 {
            return Err(MatrixError::TooLarge);
        }
        // memo[mask] = determinant of the submatrix on rows [n-popcount ..]
        // and the columns selected by mask.
        let mut memo: Vec<Option<LaurentPolynomial>> = vec![None; 1 << n];
        memo[0] = Some(LaurentPolynomial::one());
        self.det_rec((1usize << n) - 1, &mut memo);
        Ok(memo[(1 << n) - 1].clone().expect("filled by det_rec"))
    }

    fn det_rec(&self, mask: usize, memo: &mut Vec<Option<LaurentPolynomial>>) {
        if memo[mask].is_some() {
            return;
        }
        let n = self.rows;
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = LaurentPolynomial::zero();
        let mut sign = true;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = self.at(row, j);
            if !entry.is_zero() {
                let sub = mask & !(1 << j);
                self.det_rec(sub, memo);
                let minor = memo[sub].as_ref().expect("just computed");
                let term = entry * minor;
                acc = if sign { &acc + &term } else { &acc - &term };
            }
            sign = !sign;
        }
        memo[mask] = Some(acc);
    }

    /// Adjugate matrix: `self · adj = det · I`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NonSquare);
        }
        let n = self.rows;
        let mut adj = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                // Cofactor C_{j,i} lands at (i, j).
                let minor = self.minor(j, i)?;
                let c = minor.determinant()?;
                let v = if (i + j) % 2 == 0 { c } else { -&c };
                adj.set(i, j, v);
            }
        }
        Ok(adj)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> Result<Self, MatrixError> {
        if self.rows == 0 {
            return Err(MatrixError::NonSquare);
        }
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != drop_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != drop_col).collect();
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        }))
    }

    /// Canonical column Hermite normal form over `Q[t^±1]`. Shape-preserving:
    /// pivot columns come first ordered by pivot row, zero columns trail.
    pub fn hermite_form(&self) -> Self {
        self.hermite_core(false).0
    }

    /// Hermite form together with the unimodular transform: `self · u = h`.
    pub fn hermite_with_transform(&self) -> (Self, Self) {
        let (h, u) = self.hermite_core(true);
        (h, u.expect("transform requested"))
    }

    fn hermite_core(&self, track: bool) -> (Self, Option<Self>) {
        let mut h = self.clone();
        let mut u = if track {
            Some(Self::identity(self.cols))
        } else {
            None
        };
        let mut next_col = 0usize;
        for row in 0..self.rows {
            if next_col == self.cols {
                break;
            }
            // Euclid across the live columns until one nonzero entry remains
            // in this row.
            loop {
                let live: Vec<usize> = (next_col..self.cols)
                    .filter(|&j| !h.at(row, j).is_zero())
                    .collect();
                if live.len() <= 1 {
                    break;
                }
                let &jmin = live
                    .iter()
                    .min_by_key(|&&j| h.at(row, j).width().expect("nonzero entry"))
                    .expect("nonempty");
                for &j in &live {
                    if j == jmin {
                        continue;
                    }
                    let (q, _) = h
                        .at(row, j)
                        .width_divmod(h.at(row, jmin))
                        .expect("nonzero divisor");
                    col_sub(&mut h, j, jmin, &q);
                    if let Some(u) = u.as_mut() {
                        col_sub(u, j, jmin, &q);
                    }
                }
            }
            let pivot_col = match (next_col..self.cols).find(|&j| !h.at(row, j).is_zero()) {
                None => continue,
                Some(j) => j,
            };
            if pivot_col != next_col {
                col_swap(&mut h, pivot_col, next_col);
                if let Some(u) = u.as_mut() {
                    col_swap(u, pivot_col, next_col);
                }
            }
            // Normalize the pivot to its unit-normal associate by a unit
            // column scaling.
            let entry = h.at(row, next_col);
            let ord = entry.min_exp().expect("nonzero pivot");
            let lc = entry.leading_coeff();
            let unit_inv =
                LaurentPolynomial::monomial(-ord, <crate::laurent::Rat as num_traits::One>::one() / lc);
            col_scale(&mut h, next_col, &unit_inv);
            if let Some(u) = u.as_mut() {
                col_scale(u, next_col, &unit_inv);
            }
            // Reduce this pivot row in every earlier pivot column to the
            // canonical residue modulo the pivot.
            let pivot = h.at(row, next_col).clone();
            for j in 0..next_col {
                let e = h.at(row, j).clone();
                if e.is_zero() {
                    continue;
                }
                let r = e.rem_mod(&pivot);
                let q = (&e - &r).div_exact(&pivot).expect("residue is exact");
                if !q.is_zero() {
                    col_sub(&mut h, j, next_col, &q);
                    if let Some(u) = u.as_mut() {
                        col_sub(u, j, next_col, &q);
                    }
                }
            }
            next_col += 1;
        }
        (h, u)
    }

    /// Basis of the kernel `{v : self·v = 0}` over `Q[t^±1]`, as columns.
    pub fn kernel(&self) -> Self {
        let (h, u) = self.hermite_with_transform();
        let zero_cols: Vec<usize> = (0..h.cols)
            .filter(|&j| (0..h.rows).all(|i| h.at(i, j).is_zero()))
            .collect();
        Self::from_fn(self.cols, zero_cols.len(), |i, j| {
            u.at(i, zero_cols[j]).clone()
        })
    }

    /// Drop columns that are identically zero.
    pub fn drop_zero_cols(&self) -> Self {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.at(i, j).is_zero()))
            .collect();
        Self::from_fn(self.rows, keep.len(), |i, j| self.at(i, keep[j]).clone())
    }
}

fn dim_err(a: &PolyMatrix, b: &PolyMatrix) -> MatrixError {
    MatrixError::DimensionMismatch {
        expected: format!("{}x{}", a.rows, a.cols),
        found: format!("{}x{}", b.rows, b.cols),
    }
}

fn col_sub(m: &mut PolyMatrix, j: usize, k: usize, q: &LaurentPolynomial) {
    for i in 0..m.rows {
        let v = m.at(i, j) - &(q * m.at(i, k));
        m.set(i, j, v);
    }
}

fn col_swap(m: &mut PolyMatrix, j: usize, k: usize) {
    for i in 0..m.rows {
        let a = m.at(i, j).clone();
        let b = m.at(i, k).clone();
        m.set(i, j, b);
        m.set(i, k, a);
    }
}

fn col_scale(m: &mut PolyMatrix, j: usize, u: &LaurentPolynomial) {
    for i in 0..m.rows {
        let v = m.at(i, j) * u;
        m.set(i, j, v);
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<&LaurentPolynomial> = (0..self.cols).map(|j| self.at(i, j)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Finitely generated `Q[t^±1]`-submodule of the free cover of a presented
/// module, stored as a canonical column Hermite form that always contains the
/// presentation columns. Two submodules over the same ambient presentation
/// are equal iff their canonical matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient_rank: usize,
    ambient: PolyMatrix,
    generators: PolyMatrix,
}

impl Submodule {
    /// Span of the given extra columns together with the ambient
    /// presentation's columns.
    pub fn new(ambient: &PolyMatrix, extra: &PolyMatrix) -> Result<Self, MatrixError> {
        if extra.rows() != ambient.rows() && extra.cols() != 0 {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} rows", ambient.rows()),
                found: format!("{} rows", extra.rows()),
            });
        }
        let stacked = if extra.cols() == 0 {
            ambient.clone()
        } else {
            extra.hstack(ambient)?
        };
        Ok(Self {
            ambient_rank: ambient.rows(),
            ambient: ambient.clone(),
            generators: stacked.hermite_form().drop_zero_cols(),
        })
    }

    pub fn from_columns(
        ambient: &PolyMatrix,
        cols: Vec<Vec<LaurentPolynomial>>,
    ) -> Result<Self, MatrixError> {
        let extra = PolyMatrix::from_cols(ambient.rows(), cols)?;
        Self::new(ambient, &extra)
    }

    /// The zero submodule of the quotient: the presentation span alone.
    pub fn zero_submodule(ambient: &PolyMatrix) -> Self {
        Self::new(ambient, &PolyMatrix::zero(ambient.rows(), 0)).expect("dimensions agree")
    }

    /// The full ambient module.
    pub fn full(ambient: &PolyMatrix) -> Self {
        Self::new(ambient, &PolyMatrix::identity(ambient.rows())).expect("dimensions agree")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn ambient(&self) -> &PolyMatrix {
        &self.ambient
    }

    /// Canonical generator matrix (zero columns dropped).
    pub fn generators(&self) -> &PolyMatrix {
        &self.generators
    }

    /// Reduce a vector against the canonical generators; the result is zero
    /// iff the vector lies in the span.
    pub fn reduce_vec(&self, v: &[LaurentPolynomial]) -> Result<Vec<LaurentPolynomial>, MatrixError> {
        if v.len() != self.ambient_rank {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("vector of length {}", self.ambient_rank),
                found: format!("length {}", v.len()),
            });
        }
        let g = &self.generators;
        let mut w: Vec<LaurentPolynomial> = v.to_vec();
        // Pivot of column j sits in the first row with a nonzero entry.
        for j in 0..g.cols() {
            let pivot_row = (0..g.rows())
                .find(|&i| !g.at(i, j).is_zero())
                .expect("no zero columns in canonical form");
            if w[pivot_row].is_zero() {
                continue;
            }
            if let Some(q) = w[pivot_row].div_exact(g.at(pivot_row, j)) {
                for i in 0..g.rows() {
                    w[i] = &w[i] - &(&q * g.at(i, j));
                }
            }
        }
        Ok(w)
    }

    /// Membership of a vector in the `Q[t^±1]`-span.
    pub fn membership(&self, v: &[LaurentPolynomial]) -> Result<bool, MatrixError> {
        Ok(self
            .reduce_vec(v)?
            .iter()
            .all(LaurentPolynomial::is_zero))
    }

    /// Structural equality of canonical forms; errors when the ambient
    /// presentations differ.
    pub fn eq_submodule(&self, other: &Self) -> Result<bool, MatrixError> {
        if self.ambient_rank != other.ambient_rank || self.ambient != other.ambient {
            return Err(MatrixError::AmbientMismatch);
        }
        Ok(self.generators == other.generators)
    }

    /// Scale every generator by `t^n`; a unit operation, so the span (and
    /// canonical form) are unchanged.
    pub fn scaled(&self, n: i64) -> Self {
        let unit = LaurentPolynomial::monomial(n, num_traits::One::one());
        let scaled = self.generators.scale(&unit);
        Self::new(&self.ambient, &scaled).expect("dimensions agree")
    }

    /// True when the submodule equals the presentation span alone.
    pub fn is_zero_submodule(&self) -> bool {
        self.generators == Self::zero_submodule(&self.ambient).generators
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.generators.serialize(serializer)
    }
}

/// Generators of `{x ∈ Q[t^±1]^g : xᵀ·c ≡ 0 (mod delta)}` as a submodule
/// over the given ambient presentation, computed from the syzygies of the
/// stacked system `[cᵀ | δ·I]`.
pub fn kernel_mod_delta(
    c: &PolyMatrix,
    delta: &LaurentPolynomial,
    ambient: &PolyMatrix,
) -> Result<Submodule, MatrixError> {
    if delta.is_zero() {
        return Err(MatrixError::ZeroDelta);
    }
    let g = c.rows();
    if g != ambient.rows() {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{} rows", ambient.rows()),
            found: format!("{} rows", g),
        });
    }
    let h = c.cols();
    let delta_block = PolyMatrix::identity(h).scale(delta);
    let system = c.transpose().hstack(&delta_block)?;
    let kernel = system.kernel();
    let projected = PolyMatrix::from_fn(g, kernel.cols(), |i, j| kernel.at(i, j).clone());
    Submodule::new(ambient, &projected)
}

/// Order-ideal generator of the torsion module presented by a square matrix
/// with nonzero determinant, in Alexander normalization.
pub fn quotient_order(presentation: &PolyMatrix) -> Result<LaurentPolynomial, MatrixError> {
    let det = presentation.determinant()?;
    det.normalize_alexander()
        .map_err(|_| MatrixError::SingularPresentation)
}

/// Equality of nonzero polynomials up to units of `Q[t^±1]` (rational
/// multiples of powers of `t`).
pub fn eq_up_to_unit(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    a.unit_normal() == b.unit_normal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(terms)
    }

    fn delta_trefoil() -> LaurentPolynomial {
        lp(&[(2, 1), (1, -1), (0, 1)])
    }

    #[test]
    fn hermite_identity_fixed() {
        let id = PolyMatrix::identity(2);
        assert_eq!(id.hermite_form(), id);
    }

    #[test]
    fn hermite_row_vector_eliminates_by_gcd() {
        // Single row (t−1, t²−1): the second entry is a multiple of the gcd
        // pivot t−1 and is eliminated.
        let m = PolyMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])]])
            .unwrap();
        let h = m.hermite_form();
        let expected =
            PolyMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)]), LaurentPolynomial::zero()]])
                .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn hermite_zero_matrix_fixed() {
        let z = PolyMatrix::zero(3, 2);
        assert_eq!(z.hermite_form(), z);
    }

    #[test]
    fn hermite_is_canonical_across_unit_scalings() {
        // {(1,1), (1,1+t)} spans the full module over Q[t^±1]: the second
        // column reduces to (0, t), and t is a unit.
        let m = PolyMatrix::from_rows(vec![
            vec![lp(&[(0, 1)]), lp(&[(0, 1)])],
            vec![lp(&[(0, 1)]), lp(&[(0, 1), (1, 1)])],
        ])
        .unwrap();
        assert_eq!(m.hermite_form(), PolyMatrix::identity(2));
    }

    #[test]
    fn hermite_idempotent_on_examples() {
        let m = PolyMatrix::from_rows(vec![
            vec![lp(&[(1, 1), (0, -1)]), lp(&[(0, 2)])],
            vec![lp(&[(2, 1)]), lp(&[(1, 1), (0, 1)])],
        ])
        .unwrap();
        let h = m.hermite_form();
        assert_eq!(h.hermite_form(), h);
    }

    #[test]
    fn kernel_of_row_matrix() {
        // kernel of [t−1, −(t−1)] contains (1, 1).
        let m = PolyMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)]), lp(&[(1, -1), (0, 1)])]])
            .unwrap();
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        let v = k.col_vec(0);
        let img = m.mul_col(&v).unwrap();
        assert!(img.iter().all(LaurentPolynomial::is_zero));
    }

    #[test]
    fn membership_zero_and_generators() {
        let ambient = PolyMatrix::from_rows(vec![vec![delta_trefoil()]]).unwrap();
        let s = Submodule::from_columns(&ambient, vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
        assert!(s.membership(&[LaurentPolynomial::zero()]).unwrap());
        assert!(s.membership(&[lp(&[(1, 1), (0, -1)])]).unwrap());
    }

    #[test]
    fn membership_via_coprime_gcd() {
        // Over ambient (t²−t+1), the span of {t−1} plus the presentation is
        // everything: gcd(t−1, t²−t+1) = 1.
        let ambient = PolyMatrix::from_rows(vec![vec![delta_trefoil()]]).unwrap();
        let s = Submodule::from_columns(&ambient, vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
        assert!(s.membership(&[LaurentPolynomial::one()]).unwrap());
        assert!(s.eq_submodule(&Submodule::full(&ambient)).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let ambient = PolyMatrix::from_rows(vec![vec![delta_trefoil()]]).unwrap();
        let s = Submodule::zero_submodule(&ambient);
        assert!(matches!(
            s.membership(&[LaurentPolynomial::one(), LaurentPolynomial::one()]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn submodule_eq_reflexive_and_unit_invariant() {
        let delta = delta_trefoil();
        let ambient = PolyMatrix::identity(2).scale(&delta);
        let v = vec![lp(&[(0, 1)]), lp(&[(1, 2)])];
        let tv: Vec<_> = v.iter().map(|p| p * &LaurentPolynomial::t()).collect();
        let a = Submodule::from_columns(&ambient, vec![v]).unwrap();
        let b = Submodule::from_columns(&ambient, vec![tv]).unwrap();
        assert!(a.eq_submodule(&a).unwrap());
        assert!(a.eq_submodule(&b).unwrap());
    }

    #[test]
    fn submodule_eq_distinguishes_spans() {
        // span{(1,−1)} vs span{(1,−t)} over diag(Δ, Δ): the difference
        // (0, t−1) is not in the second span.
        let delta = delta_trefoil();
        let ambient = PolyMatrix::identity(2).scale(&delta);
        let a = Submodule::from_columns(&ambient, vec![vec![lp(&[(0, 1)]), lp(&[(0, -1)])]])
            .unwrap();
        let b = Submodule::from_columns(&ambient, vec![vec![lp(&[(0, 1)]), lp(&[(1, -1)])]])
            .unwrap();
        assert!(!a.eq_submodule(&b).unwrap());
        assert!(!b.membership(&[LaurentPolynomial::zero(), lp(&[(1, 1), (0, -1)])]).unwrap());
    }

    #[test]
    fn submodule_eq_ambient_mismatch() {
        let a1 = PolyMatrix::identity(1).scale(&delta_trefoil());
        let a2 = PolyMatrix::identity(1).scale(&lp(&[(2, 1), (1, -3), (0, 1)]));
        let s1 = Submodule::zero_submodule(&a1);
        let s2 = Submodule::zero_submodule(&a2);
        assert_eq!(s1.eq_submodule(&s2), Err(MatrixError::AmbientMismatch));
    }

    #[test]
    fn kernel_mod_delta_zero_map_is_full() {
        let delta = delta_trefoil();
        let ambient = PolyMatrix::identity(2).scale(&delta);
        let c = PolyMatrix::zero(2, 2);
        let k = kernel_mod_delta(&c, &delta, &ambient).unwrap();
        assert!(k.eq_submodule(&Submodule::full(&ambient)).unwrap());
    }

    #[test]
    fn kernel_mod_delta_delta_identity_is_full() {
        let delta = delta_trefoil();
        let ambient = PolyMatrix::identity(2).scale(&delta);
        let c = PolyMatrix::identity(2).scale(&delta);
        let k = kernel_mod_delta(&c, &delta, &ambient).unwrap();
        assert!(k.eq_submodule(&Submodule::full(&ambient)).unwrap());
    }

    #[test]
    fn kernel_mod_delta_coprime_case() {
        // g = 1, c = (t−1), δ = t²−t+1: gcd(t−1, δ) = 1 forces x ∈ (δ).
        let delta = delta_trefoil();
        let ambient = PolyMatrix::from_rows(vec![vec![delta.clone()]]).unwrap();
        let c = PolyMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
        let k = kernel_mod_delta(&c, &delta, &ambient).unwrap();
        let expected = Submodule::from_columns(&ambient, vec![vec![delta.clone()]]).unwrap();
        assert!(k.eq_submodule(&expected).unwrap());
        assert_eq!(k.generators(), &PolyMatrix::from_rows(vec![vec![delta]]).unwrap());
    }

    #[test]
    fn kernel_mod_delta_rejects_zero_delta() {
        let ambient = PolyMatrix::identity(1);
        let c = PolyMatrix::identity(1);
        assert_eq!(
            kernel_mod_delta(&c, &LaurentPolynomial::zero(), &ambient),
            Err(MatrixError::ZeroDelta)
        );
    }

    #[test]
    fn quotient_order_diagonal() {
        let m = PolyMatrix::identity(2).scale(&lp(&[(1, 1), (0, -1)]));
        assert_eq!(
            quotient_order(&m).unwrap(),
            lp(&[(2, 1), (1, -2), (0, 1)])
        );
    }

    #[test]
    fn quotient_order_empty_matrix() {
        assert_eq!(
            quotient_order(&PolyMatrix::zero(0, 0)).unwrap(),
            LaurentPolynomial::one()
        );
    }

    #[test]
    fn quotient_order_trefoil_presentation() {
        // tA − Aᵀ for A = [[−1,1],[0,−1]].
        let m = PolyMatrix::from_rows(vec![
            vec![lp(&[(1, -1), (0, 1)]), lp(&[(1, 1)])],
            vec![lp(&[(0, -1)]), lp(&[(1, -1), (0, 1)])],
        ])
        .unwrap();
        assert_eq!(quotient_order(&m).unwrap(), delta_trefoil());
    }

    #[test]
    fn quotient_order_errors() {
        assert_eq!(
            quotient_order(&PolyMatrix::zero(1, 2)),
            Err(MatrixError::NonSquare)
        );
        assert_eq!(
            quotient_order(&PolyMatrix::zero(2, 2)),
            Err(MatrixError::SingularPresentation)
        );
    }

    #[test]
    fn determinant_matches_cofactor_on_3x3() {
        let m = PolyMatrix::from_rows(vec![
            vec![lp(&[(1, 1)]), lp(&[(0, 2)]), lp(&[(0, 0)])],
            vec![lp(&[(0, -1)]), lp(&[(1, 1), (0, 1)]), lp(&[(0, 3)])],
            vec![lp(&[(0, 1)]), lp(&[(0, 0)]), lp(&[(1, -1), (0, 1)])],
        ])
        .unwrap();
        // Cross-check against the adjugate identity m·adj(m) = det·I.
        let det = m.determinant().unwrap();
        let prod = m.mul(&m.adjugate().unwrap()).unwrap();
        assert_eq!(prod, PolyMatrix::identity(3).scale(&det));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
            proptest::collection::vec(((-2i64..=2), (-4i64..=4)), 0..3)
                .prop_map(|terms| LaurentPolynomial::from_int_terms(&terms))
        }

        fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
            proptest::collection::vec(arb_poly(), rows * cols).prop_map(move |entries| {
                let mut m = PolyMatrix::zero(rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, entries[i * cols + j].clone());
                    }
                }
                m
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]

            #[test]
            fn hermite_idempotent_and_span_preserving(
                m in arb_matrix(2, 3),
                coeffs in proptest::collection::vec(arb_poly(), 3),
            ) {
                let h = m.hermite_form();
                prop_assert_eq!(h.hermite_form(), h.clone());

                // A vector in the column span of m is in the span of h and
                // vice versa; spans are compared through canonical
                // submodules over a trivial ambient.
                let ambient = PolyMatrix::zero(2, 0);
                let sm = Submodule::new(&ambient, &m).unwrap();
                let sh = Submodule::new(&ambient, &h).unwrap();
                prop_assert!(sm.eq_submodule(&sh).unwrap());

                let v = m.mul_col(&coeffs).unwrap();
                prop_assert!(sh.membership(&v).unwrap());
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(150))]

            #[test]
            fn submodule_eq_is_equivalence(
                m in arb_matrix(2, 2),
                perm in 0usize..2,
                shift in -2i64..=2,
            ) {
                let ambient = PolyMatrix::identity(2)
                    .scale(&LaurentPolynomial::from_int_terms(&[(2, 1), (1, -1), (0, 1)]));
                let a = Submodule::new(&ambient, &m).unwrap();
                // b spans the same module: permuted columns scaled by a unit.
                let cols = if perm == 0 {
                    vec![m.col_vec(0), m.col_vec(1)]
                } else {
                    vec![m.col_vec(1), m.col_vec(0)]
                };
                let unit = LaurentPolynomial::monomial(shift, rat(1));
                let scaled: Vec<Vec<LaurentPolynomial>> = cols
                    .into_iter()
                    .map(|c| c.into_iter().map(|p| &p * &unit).collect())
                    .collect();
                let b = Submodule::from_columns(&ambient, scaled).unwrap();
                prop_assert!(a.eq_submodule(&a).unwrap());
                prop_assert!(a.eq_submodule(&b).unwrap());
                prop_assert!(b.eq_submodule(&a).unwrap());
            }

            #[test]
            fn kernel_mod_delta_contract(
                c in arb_matrix(2, 2),
                combo in proptest::collection::vec(arb_poly(), 8),
            ) {
                let delta = LaurentPolynomial::from_int_terms(&[(2, 1), (1, -1), (0, 1)]);
                let ambient = PolyMatrix::identity(2).scale(&delta);
                let k = kernel_mod_delta(&c, &delta, &ambient).unwrap();
                let g = k.generators();
                // Every generator satisfies the congruence.
                for j in 0..g.cols() {
                    let x = g.col_vec(j);
                    for col in 0..c.cols() {
                        let mut acc = LaurentPolynomial::zero();
                        for i in 0..2 {
                            acc = &acc + &(&x[i] * c.at(i, col));
                        }
                        prop_assert!(acc.div_exact(&delta).is_some());
                    }
                }
                // Random combinations of generators are members.
                let n = g.cols().min(4);
                if n > 0 {
                    let mut v = vec![LaurentPolynomial::zero(); 2];
                    for (j, q) in combo.iter().take(n).enumerate() {
                        let col = g.col_vec(j);
                        for i in 0..2 {
                            v[i] = &v[i] + &(q * &col[i]);
                        }
                    }
                    prop_assert!(k.membership(&v).unwrap());
                    // Perturbing by delta-multiples keeps the congruence,
                    // so the result must still be a member.
                    let w: Vec<LaurentPolynomial> = (0..2)
                        .map(|i| &v[i] + &(&delta * combo.get(4 + i).unwrap_or(&LaurentPolynomial::zero())))
                        .collect();
                    for col in 0..c.cols() {
                        let mut acc = LaurentPolynomial::zero();
                        for i in 0..2 {
                            acc = &acc + &(&w[i] * c.at(i, col));
                        }
                        prop_assert!(acc.div_exact(&delta).is_some());
                    }
                    prop_assert!(k.membership(&w).unwrap());
                }
            }

            #[test]
            fn quotient_order_unimodular_invariance(
                m in arb_matrix(2, 2),
                q in arb_poly(),
                shift in -2i64..=2,
            ) {
                prop_assume!(m.determinant().unwrap() != LaurentPolynomial::zero());
                // U: add q times row 1 to row 0, then scale row 0 by the unit
                // t^shift. V similarly on columns.
                let mut u = PolyMatrix::identity(2);
                u.set(0, 1, q.clone());
                let unit = LaurentPolynomial::monomial(shift, rat(1));
                let mut d = PolyMatrix::identity(2);
                d.set(0, 0, unit);
                let left = d.mul(&u).unwrap();
                let mut v = PolyMatrix::identity(2);
                v.set(1, 0, q);
                let prod = left.mul(&m).unwrap().mul(&v).unwrap();
                let a = quotient_order(&m).unwrap();
                let b = quotient_order(&prod).unwrap();
                prop_assert!(eq_up_to_unit(&a, &b));
            }
        }
    }
}
