//! Exact dense linear algebra over Q(ζ_m): reduced row echelon forms,
//! kernels, particular solutions and a canonical subspace type.
//!
//! Pivoting is deterministic (leftmost nonzero column, topmost row), and a
//! reduced row echelon form is unique, so every subspace has exactly one
//! representation.

use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::scalars::CycloScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces live in ambient spaces of dimension {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("system has no solution")]
    NoSolution,
    #[error("entries do not share conductor {0}")]
    ConductorMismatch(u32),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycloScalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} (m={})",
            self.rows, self.cols, self.conductor
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self {
            rows,
            cols,
            conductor,
            data: vec![CycloScalar::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(n, n, conductor);
        for i in 0..n {
            m[(i, i)] = CycloScalar::one(conductor);
        }
        m
    }

    pub fn from_rows(
        cols: usize,
        conductor: u32,
        rows: Vec<Vec<CycloScalar>>,
    ) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            if row.iter().any(|x| x.conductor() != conductor) {
                return Err(LinalgError::ConductorMismatch(conductor));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            conductor,
            data,
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(conductor: u32, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| CycloScalar::from_int(conductor, x))
                    .collect()
            })
            .collect();
        Self::from_rows(cols, conductor, rows).expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn row(&self, r: usize) -> &[CycloScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<CycloScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.conductor);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.conductor);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = &out[(r, c)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Result<Vec<CycloScalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| dot(self.row(r), v, self.conductor))
            .collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&CycloScalar, &CycloScalar) -> CycloScalar,
    ) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> Self {
        let mut reducer = RowReducer::new(self.cols, self.conductor);
        for r in 0..self.rows {
            reducer.insert(self.row(r).to_vec());
        }
        reducer.into_matrix()
    }

    pub fn rank(&self) -> usize {
        let mut reducer = RowReducer::new(self.cols, self.conductor);
        for r in 0..self.rows {
            reducer.insert(self.row(r).to_vec());
            if reducer.is_full() {
                break;
            }
        }
        reducer.rank()
    }

    /// Stack `self` over `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            conductor: self.conductor,
            data,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = CycloScalar;
    fn index(&self, (r, c): (usize, usize)) -> &CycloScalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut CycloScalar {
        &mut self.data[r * self.cols + c]
    }
}

pub fn dot(a: &[CycloScalar], b: &[CycloScalar], conductor: u32) -> CycloScalar {
    let mut acc = CycloScalar::zero(conductor);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are fed one at a time; the reducer keeps the reduced row echelon form
/// of everything inserted so far, sorted by pivot column.
#[derive(Debug, Clone)]
pub struct RowReducer {
    cols: usize,
    conductor: u32,
    rows: Vec<Vec<CycloScalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize, conductor: u32) -> Self {
        Self {
            cols,
            conductor,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `row` against the current basis; returns the remainder.
    pub fn reduce(&self, mut row: Vec<CycloScalar>) -> Vec<CycloScalar> {
        for (basis, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, b) in row.iter_mut().zip(basis) {
                if !b.is_zero() {
                    *x = &*x - &(&f * b);
                }
            }
        }
        row
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: Vec<CycloScalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        if self.is_full() {
            return false;
        }
        let mut row = self.reduce(row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for basis in &mut self.rows {
            if basis[p].is_zero() {
                continue;
            }
            let f = basis[p].clone();
            for (b, x) in basis.iter_mut().zip(&row) {
                if !x.is_zero() {
                    *b = &*b - &(&f * x);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    pub fn into_matrix(self) -> Matrix {
        Matrix::from_rows(self.cols, self.conductor, self.rows).expect("consistent rows")
    }

    /// Canonical basis of the null space of the inserted rows.
    pub fn kernel(&self) -> Subspace {
        let mut vectors = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![CycloScalar::zero(self.conductor); self.cols];
            v[free] = CycloScalar::one(self.conductor);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[free];
            }
            vectors.push(v);
        }
        Subspace::span(self.cols, self.conductor, vectors)
    }
}

pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// `{v : m v = 0}`
pub fn kernel(m: &Matrix) -> Subspace {
    let mut reducer = RowReducer::new(m.cols, m.conductor);
    for r in 0..m.rows {
        reducer.insert(m.row(r).to_vec());
        if reducer.is_full() {
            break;
        }
    }
    reducer.kernel()
}

/// One particular solution of `m v = b`, free variables set to zero.
pub fn solve(m: &Matrix, b: &[CycloScalar]) -> Result<Vec<CycloScalar>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let mut reducer = RowReducer::new(m.cols + 1, m.conductor);
    for (r, rhs) in b.iter().enumerate() {
        let mut row = m.row(r).to_vec();
        row.push(rhs.clone());
        reducer.insert(row);
    }
    if reducer.pivots.last() == Some(&m.cols) {
        return Err(LinalgError::NoSolution);
    }
    let mut v = vec![CycloScalar::zero(m.conductor); m.cols];
    for (row, &p) in reducer.rows.iter().zip(&reducer.pivots) {
        v[p] = row[m.cols].clone();
    }
    Ok(v)
}

/// A subspace of `K^n`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn span(ambient: usize, conductor: u32, vectors: Vec<Vec<CycloScalar>>) -> Self {
        let mut reducer = RowReducer::new(ambient, conductor);
        for v in vectors {
            reducer.insert(v);
            if reducer.is_full() {
                break;
            }
        }
        Self::from_reducer(reducer)
    }

    fn from_reducer(reducer: RowReducer) -> Self {
        let ambient = reducer.cols;
        let pivots = reducer.pivots.clone();
        Self {
            ambient,
            basis: reducer.into_matrix(),
            pivots,
        }
    }

    pub fn zero(ambient: usize, conductor: u32) -> Self {
        Self::span(ambient, conductor, Vec::new())
    }

    pub fn full(ambient: usize, conductor: u32) -> Self {
        Self::span(
            ambient,
            conductor,
            Matrix::identity(ambient, conductor).row_vectors(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u32 {
        self.basis.conductor
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<CycloScalar>> {
        self.basis.row_vectors()
    }

    fn reducer(&self) -> RowReducer {
        RowReducer {
            cols: self.ambient,
            conductor: self.conductor(),
            rows: self.basis.row_vectors(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn contains_vector(&self, v: &[CycloScalar]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let coords: Vec<CycloScalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, r) in coords.iter().zip(0..self.dim()) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *x = &*x - &(c * b);
                }
            }
        }
        rest.iter().all(CycloScalar::is_zero).then_some(coords)
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            Err(LinalgError::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let mut reducer = self.reducer();
        for v in other.basis_vectors() {
            reducer.insert(v);
        }
        Ok(Self::from_reducer(reducer))
    }

    /// Intersection via the kernel of `[S^T | -T^T]`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let (r, s) = (self.dim(), other.dim());
        let m = self.conductor();
        let mut stacked = Matrix::zeros(self.ambient, r + s, m);
        for i in 0..r {
            for k in 0..self.ambient {
                stacked[(k, i)] = self.basis[(i, k)].clone();
            }
        }
        for j in 0..s {
            for k in 0..self.ambient {
                stacked[(k, r + j)] = -&other.basis[(j, k)];
            }
        }
        let combos = kernel(&stacked);
        let vectors = combos
            .basis_vectors()
            .into_iter()
            .map(|c| {
                let mut v = vec![CycloScalar::zero(m); self.ambient];
                for (i, ci) in c.iter().take(r).enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                        *x = &*x + &(ci * b);
                    }
                }
                v
            })
            .collect();
        Ok(Self::span(self.ambient, m, vectors))
    }

    pub fn contains(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v)))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self == other)
    }
}
