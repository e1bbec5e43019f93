//! Derivations, n-derivations and the derivation algebra.
//!
//! A map D of degree γ is an n-derivation when, for all `x_1, ..., x_n`,
//!
//! ```text
//! D([..[x1, x2], .., xn]) = Σ_i ε(γ, deg x1 + .. + deg x_{i-1}) [..[x1, x2], .., D(x_i), .., xn]
//! ```
//!
//! ε needs a degree for D, so nDer(L) is computed one degree at a time: for
//! every γ ∈ Γ the identity on all basis n-tuples is a homogeneous linear
//! system in the block-supported entries of D, and nDer(L) is the direct sum
//! of the kernels.

mod maps;
mod oracle;
mod system;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, ColorAlgebra, GradedVector};
use crate::grading::{GradingError, GroupElement};
use crate::linalg::{solve, LinalgError, Matrix, Subspace};
use crate::scalars::CycloScalar;

pub use maps::{ad, ad_basis, map_bracket, BlockLayout, GradedMap};
pub use oracle::is_n_derivation;

/// Largest n accepted without an explicit override.
pub const DEFAULT_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("n = {n} is below the minimum {min}")]
    BadArity { n: usize, min: usize },
    #[error(
        "n = {n} exceeds the cap {max} (about {rows} constraint rows); raise the cap to proceed"
    )]
    NTooLarge { n: usize, max: usize, rows: u128 },
    #[error("map does not belong to this algebra")]
    AlgebraMismatch,
    #[error("entry ({row}, {col}) lies outside the block support of the map's degree")]
    BlockSupport { row: usize, col: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("[D, ad e_{basis}] is not an inner derivation")]
    NotInner { basis: usize },
    #[error("bracket of basis maps {left} and {right} leaves the space")]
    NotClosed { left: usize, right: usize },
    #[error("derivation algebra fails the color axioms")]
    AxiomsFailed(crate::algebra::AxiomReport),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// The solution space for one degree γ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationBlock {
    layout: BlockLayout,
    space: Subspace,
}

impl DerivationBlock {
    pub fn degree(&self) -> &GroupElement {
        self.layout.degree()
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_maps(&self) -> Vec<GradedMap> {
        let m = self.space.conductor();
        self.space
            .basis_vectors()
            .iter()
            .map(|v| self.layout.to_map(m, v))
            .collect()
    }
}

/// A per-degree direct sum of spaces of graded maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationSpace {
    /// `Some(n)` for nDer(L); `None` for ad(L).
    n: Option<usize>,
    blocks: Vec<DerivationBlock>,
}

/// Dimension of one homogeneous block.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeDim {
    pub degree: GroupElement,
    pub dim: usize,
}

impl DerivationSpace {
    pub fn n(&self) -> Option<usize> {
        self.n
    }

    /// Blocks in the enumeration order of Γ.
    pub fn blocks(&self) -> &[DerivationBlock] {
        &self.blocks
    }

    pub fn block(&self, degree: &GroupElement) -> Option<&DerivationBlock> {
        self.blocks.iter().find(|b| b.degree() == degree)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(DerivationBlock::dim).sum()
    }

    pub fn dims(&self) -> Vec<DegreeDim> {
        self.blocks
            .iter()
            .map(|b| DegreeDim {
                degree: b.degree().clone(),
                dim: b.dim(),
            })
            .collect()
    }

    /// Basis of the whole space: block bases concatenated in degree order.
    pub fn basis_maps(&self) -> Vec<GradedMap> {
        self.blocks
            .iter()
            .flat_map(DerivationBlock::basis_maps)
            .collect()
    }

    /// Membership of a homogeneous map.
    pub fn contains(&self, map: &GradedMap) -> bool {
        if map.is_zero() {
            return true;
        }
        self.block(map.degree())
            .and_then(|b| b.layout.to_vector(map).map(|v| b.space.contains_vector(&v)))
            .unwrap_or(false)
    }

    /// Blockwise equality of the underlying subspaces.
    pub fn same_space(&self, other: &Self) -> bool {
        self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.layout == b.layout && a.space == b.space)
    }

    /// Blockwise inclusion `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| {
            b.space
                .contains(&a.space)
                .expect("blocks of the same layout")
        })
    }
}

impl fmt::Display for DerivationSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{:?}:{}", b.degree().residues(), b.dim()))
            .collect();
        write!(f, "dim {} [{}]", self.total_dim(), parts.join(", "))
    }
}

/// Rough size of the n-derivation systems: `|Γ| · d^n · d` rows.
pub fn system_rows(alg: &ColorAlgebra, n: usize) -> u128 {
    let d = alg.dim() as u128;
    (alg.group().order() as u128).saturating_mul(d.saturating_pow(n as u32 + 1))
}

/// nDer(L) with the default cap on n.
pub fn n_derivation_space(
    alg: &ColorAlgebra,
    n: usize,
) -> Result<DerivationSpace, DerivationError> {
    n_derivation_space_capped(alg, n, DEFAULT_MAX_N)
}

pub fn n_derivation_space_capped(
    alg: &ColorAlgebra,
    n: usize,
    max_n: usize,
) -> Result<DerivationSpace, DerivationError> {
    if n < 2 {
        return Err(DerivationError::BadArity { n, min: 2 });
    }
    if n > max_n {
        return Err(DerivationError::NTooLarge {
            n,
            max: max_n,
            rows: system_rows(alg, n),
        });
    }
    let blocks = alg
        .group()
        .enumerate()
        .into_iter()
        .map(|degree| {
            let layout = BlockLayout::new(alg, degree);
            let space = system::solve_block(alg, n, &layout);
            DerivationBlock { layout, space }
        })
        .collect();
    Ok(DerivationSpace { n: Some(n), blocks })
}

/// Der(L), the case n = 2.
pub fn derivation_space(alg: &ColorAlgebra) -> DerivationSpace {
    n_derivation_space(alg, 2).expect("n = 2 is always admissible")
}

/// ad(L), split by degree.
pub fn inner_derivation_space(alg: &ColorAlgebra) -> DerivationSpace {
    let m = alg.conductor();
    let blocks = alg
        .group()
        .enumerate()
        .into_iter()
        .map(|degree| {
            let layout = BlockLayout::new(alg, degree);
            let vectors = (0..alg.dim())
                .filter(|&i| alg.degree(i) == layout.degree())
                .map(|i| {
                    layout
                        .to_vector(&ad_basis(alg, i))
                        .expect("ad of a homogeneous element is block supported")
                })
                .collect();
            let space = Subspace::span(layout.len(), m, vectors);
            DerivationBlock { layout, space }
        })
        .collect();
    DerivationSpace { n: None, blocks }
}

fn flatten(map: &GradedMap) -> Vec<CycloScalar> {
    let d = map.dim();
    let m = map.matrix();
    (0..d)
        .flat_map(|k| (0..d).map(move |j| m[(k, j)].clone()))
        .collect()
}

/// Matrix whose columns are the flattened maps.
fn columns_of(maps: &[GradedMap], d: usize, conductor: u32) -> Matrix {
    let mut out = Matrix::zeros(d * d, maps.len(), conductor);
    for (c, map) in maps.iter().enumerate() {
        for (r, x) in flatten(map).into_iter().enumerate() {
            out[(r, c)] = x;
        }
    }
    out
}

/// Solves `ad(y) = map` for `y`.
pub(crate) struct AdSolver {
    ad_columns: Matrix,
    dim: usize,
    conductor: u32,
}

impl AdSolver {
    pub(crate) fn new(alg: &ColorAlgebra) -> Self {
        let ads: Vec<GradedMap> = (0..alg.dim()).map(|i| ad_basis(alg, i)).collect();
        Self {
            ad_columns: columns_of(&ads, alg.dim(), alg.conductor()),
            dim: alg.dim(),
            conductor: alg.conductor(),
        }
    }

    pub(crate) fn preimage(&self, map: &GradedMap) -> Option<GradedVector> {
        if self.dim == 0 {
            return map.is_zero().then(|| GradedVector::zero(0, self.conductor));
        }
        solve(&self.ad_columns, &flatten(map))
            .ok()
            .map(GradedVector::new)
    }
}

pub(crate) fn require_perfect_centerless(alg: &ColorAlgebra) -> Result<(), DerivationError> {
    if !alg.is_perfect() {
        return Err(DerivationError::PreconditionFailed(
            "algebra is not perfect".into(),
        ));
    }
    let z = alg.center().dim();
    if z != 0 {
        return Err(DerivationError::PreconditionFailed(format!(
            "center has dimension {z}"
        )));
    }
    Ok(())
}

/// δ_D: the map with `[D, ad x] = ad(δ_D(x))` for all x, found by solving
/// `ad(y) = [D, ad e_j]` for each basis element. Requires L perfect with zero
/// center, which makes `y` unique.
pub fn delta(alg: &ColorAlgebra, d: &GradedMap, n: usize) -> Result<GradedMap, DerivationError> {
    if n < 2 {
        return Err(DerivationError::BadArity { n, min: 2 });
    }
    require_perfect_centerless(alg)?;
    delta_unchecked(alg, &AdSolver::new(alg), d)
}

pub(crate) fn delta_unchecked(
    alg: &ColorAlgebra,
    solver: &AdSolver,
    d: &GradedMap,
) -> Result<GradedMap, DerivationError> {
    if d.dim() != alg.dim() {
        return Err(DerivationError::AlgebraMismatch);
    }
    let dim = alg.dim();
    let mut matrix = Matrix::zeros(dim, dim, alg.conductor());
    for j in 0..dim {
        let commutator = map_bracket(alg, d, &ad_basis(alg, j))?;
        let y = solver
            .preimage(&commutator)
            .ok_or(DerivationError::NotInner { basis: j })?;
        if ad(alg, &y)?.matrix() != commutator.matrix() {
            return Err(DerivationError::NotInner { basis: j });
        }
        for (k, c) in y.into_coeffs().into_iter().enumerate() {
            matrix[(k, j)] = c;
        }
    }
    GradedMap::new(alg, d.degree().clone(), matrix)
}

/// A derivation space turned into a color algebra under the map bracket.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    pub algebra: ColorAlgebra,
    /// The map represented by each basis element of `algebra`.
    pub maps: Vec<GradedMap>,
    columns: Matrix,
}

impl DerivationAlgebra {
    /// Coordinates of a map in the basis, when it lies in the span.
    pub fn coordinates(&self, map: &GradedMap) -> Option<GradedVector> {
        if self.maps.is_empty() {
            return map
                .is_zero()
                .then(|| GradedVector::zero(0, self.algebra.conductor()));
        }
        solve(&self.columns, &flatten(map))
            .ok()
            .map(GradedVector::new)
    }

    /// The map of a homogeneous element.
    pub fn to_map(&self, v: &GradedVector) -> Result<GradedMap, DerivationError> {
        let degree = self
            .algebra
            .degree_of(v)?
            .unwrap_or_else(|| self.algebra.group().zero());
        let d = self.maps.first().map_or(0, GradedMap::dim);
        let mut matrix = Matrix::zeros(d, d, self.algebra.conductor());
        for (c, map) in v.coeffs().iter().zip(&self.maps) {
            if !c.is_zero() {
                matrix = matrix.add(&map.matrix().scale(c));
            }
        }
        Ok(GradedMap::from_parts(degree, matrix))
    }
}

/// The color algebra structure on a space of graded maps. Basis: the block
/// bases of `space`, concatenated in degree order, named `D1, D2, ...`.
pub fn derivation_color_algebra(
    alg: &ColorAlgebra,
    space: &DerivationSpace,
) -> Result<DerivationAlgebra, DerivationError> {
    let maps = space.basis_maps();
    let r = maps.len();
    let m = alg.conductor();
    let columns = columns_of(&maps, alg.dim(), m);
    let mut constants = vec![CycloScalar::zero(m); r * r * r];
    for a in 0..r {
        for b in 0..r {
            let br = map_bracket(alg, &maps[a], &maps[b])?;
            if br.is_zero() {
                continue;
            }
            let coords = solve(&columns, &flatten(&br))
                .map_err(|_| DerivationError::NotClosed { left: a, right: b })?;
            for (k, c) in coords.into_iter().enumerate() {
                constants[(a * r + b) * r + k] = c;
            }
        }
    }
    let names = (1..=r).map(|i| format!("D{i}")).collect();
    let degrees = maps.iter().map(|m| m.degree().clone()).collect();
    let algebra = ColorAlgebra::new(alg.bichar().clone(), names, degrees, constants)?;
    let report = algebra.check_color_axioms();
    if !report.passed() {
        return Err(DerivationError::AxiomsFailed(report));
    }
    Ok(DerivationAlgebra {
        algebra,
        maps,
        columns,
    })
}
