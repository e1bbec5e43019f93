//! Homogeneous linear endomorphisms, inner derivations and the color bracket of maps.

use crate::algebra::{ColorAlgebra, GradedVector};
use crate::grading::GroupElement;
use crate::linalg::Matrix;
use crate::scalars::CycloScalar;

use super::DerivationError;

/// A linear map `L -> L` of fixed degree γ, mapping `L_α` into `L_{α+γ}`.
///
/// `matrix[(k, j)]` is the coefficient of `e_k` in `D(e_j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedMap {
    degree: GroupElement,
    matrix: Matrix,
}

impl GradedMap {
    pub fn new(
        alg: &ColorAlgebra,
        degree: GroupElement,
        matrix: Matrix,
    ) -> Result<Self, DerivationError> {
        let d = alg.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(DerivationError::AlgebraMismatch);
        }
        alg.group().element(degree.residues().to_vec())?;
        for k in 0..d {
            for j in 0..d {
                if !matrix[(k, j)].is_zero()
                    && alg.degree(k) != &alg.add_degrees(&degree, alg.degree(j))
                {
                    return Err(DerivationError::BlockSupport { row: k, col: j });
                }
            }
        }
        Ok(Self { degree, matrix })
    }

    pub fn zero(alg: &ColorAlgebra, degree: GroupElement) -> Self {
        Self {
            degree,
            matrix: Matrix::zeros(alg.dim(), alg.dim(), alg.conductor()),
        }
    }

    pub fn identity(alg: &ColorAlgebra) -> Self {
        Self {
            degree: alg.group().zero(),
            matrix: Matrix::identity(alg.dim(), alg.conductor()),
        }
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &GradedVector) -> GradedVector {
        GradedVector::new(
            self.matrix
                .mul_vec(v.coeffs())
                .expect("vector of algebra dimension"),
        )
    }

    /// `D(e_j)`
    pub fn apply_basis(&self, j: usize) -> GradedVector {
        GradedVector::new(self.matrix.column(j))
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        Self {
            degree: self.degree.clone(),
            matrix: self.matrix.scale(s),
        }
    }

    /// Sum of two maps of the same degree.
    pub fn add(&self, other: &Self) -> Result<Self, DerivationError> {
        if self.degree != other.degree || self.dim() != other.dim() {
            return Err(DerivationError::AlgebraMismatch);
        }
        Ok(Self {
            degree: self.degree.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    /// No block-support check; callers guarantee it.
    pub(crate) fn from_parts(degree: GroupElement, matrix: Matrix) -> Self {
        Self { degree, matrix }
    }
}

/// `ad(x): y ↦ [x, y]` for homogeneous `x`. The zero vector gives the zero map of degree 0.
pub fn ad(alg: &ColorAlgebra, x: &GradedVector) -> Result<GradedMap, DerivationError> {
    let degree = alg.degree_of(x)?.unwrap_or_else(|| alg.group().zero());
    let d = alg.dim();
    let mut matrix = Matrix::zeros(d, d, alg.conductor());
    for j in 0..d {
        let image = alg.bracket(x, &alg.basis_vector(j))?;
        for (k, c) in image.into_coeffs().into_iter().enumerate() {
            matrix[(k, j)] = c;
        }
    }
    GradedMap::new(alg, degree, matrix)
}

/// `ad(e_i)`
pub fn ad_basis(alg: &ColorAlgebra, i: usize) -> GradedMap {
    ad(alg, &alg.basis_vector(i)).expect("basis vectors are homogeneous")
}

/// `[D1, D2] = D1∘D2 - ε(deg D1, deg D2) D2∘D1`
pub fn map_bracket(
    alg: &ColorAlgebra,
    d1: &GradedMap,
    d2: &GradedMap,
) -> Result<GradedMap, DerivationError> {
    if d1.dim() != alg.dim() || d2.dim() != alg.dim() {
        return Err(DerivationError::AlgebraMismatch);
    }
    let eps = alg.eps(&d1.degree, &d2.degree);
    let forward = d1.matrix.mul(&d2.matrix)?;
    let backward = d2.matrix.mul(&d1.matrix)?;
    Ok(GradedMap {
        degree: alg.add_degrees(&d1.degree, &d2.degree),
        matrix: forward.sub(&backward.scale(&eps)),
    })
}

/// The unknowns of a degree-γ map: positions `(k, j)` with `deg e_k = γ + deg e_j`,
/// in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockLayout {
    degree: GroupElement,
    coords: Vec<(usize, usize)>,
    dim: usize,
}

impl BlockLayout {
    pub fn new(alg: &ColorAlgebra, degree: GroupElement) -> Self {
        let d = alg.dim();
        let mut coords = Vec::new();
        for k in 0..d {
            for j in 0..d {
                if alg.degree(k) == &alg.add_degrees(&degree, alg.degree(j)) {
                    coords.push((k, j));
                }
            }
        }
        Self {
            degree,
            coords,
            dim: d,
        }
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Index of each `(k, j)` among the unknowns.
    pub fn index_table(&self) -> Vec<Vec<Option<usize>>> {
        let mut table = vec![vec![None; self.dim]; self.dim];
        for (u, &(k, j)) in self.coords.iter().enumerate() {
            table[k][j] = Some(u);
        }
        table
    }

    pub fn to_map(&self, conductor: u32, v: &[CycloScalar]) -> GradedMap {
        assert_eq!(v.len(), self.coords.len(), "block vector length");
        let mut matrix = Matrix::zeros(self.dim, self.dim, conductor);
        for (&(k, j), c) in self.coords.iter().zip(v) {
            matrix[(k, j)] = c.clone();
        }
        GradedMap {
            degree: self.degree.clone(),
            matrix,
        }
    }

    /// Block coordinates of `map`; `None` when the map has nonzero entries
    /// outside this block.
    pub fn to_vector(&self, map: &GradedMap) -> Option<Vec<CycloScalar>> {
        if map.dim() != self.dim {
            return None;
        }
        if map.degree != self.degree && !map.is_zero() {
            return None;
        }
        Some(
            self.coords
                .iter()
                .map(|&(k, j)| map.matrix[(k, j)].clone())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn int(m: u32, n: i64) -> CycloScalar {
        CycloScalar::from_int(m, n)
    }

    #[test]
    fn ad_h_is_diagonal() {
        let a = catalog::sl2();
        let adh = ad_basis(&a, 1);
        let expected = Matrix::from_ints(1, &[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]);
        assert_eq!(adh.matrix(), &expected);
        assert!(ad_basis(&catalog::heis3(), 2).is_zero());
    }

    #[test]
    fn ad_block_support_in_color_sl2() {
        let a = catalog::color_sl2();
        let adx = ad_basis(&a, 0);
        assert_eq!(adx.degree().residues(), &[1, 0]);
        // x: (1,0) shifts y (0,1) -> z (1,1) and z -> y.
        let layout = BlockLayout::new(&a, adx.degree().clone());
        assert_eq!(layout.coords(), &[(1, 2), (2, 1)]);
        assert!(layout.to_vector(&adx).is_some());
    }

    #[test]
    fn ad_is_a_homomorphism() {
        for alg in [catalog::sl2(), catalog::color_sl2(), catalog::osp12()] {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let lhs = map_bracket(&alg, &ad_basis(&alg, i), &ad_basis(&alg, j)).unwrap();
                    let rhs = ad(&alg, &alg.bracket_basis(i, j)).unwrap();
                    assert_eq!(lhs.matrix(), rhs.matrix(), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn bracket_of_map_with_itself() {
        let a = catalog::sl2();
        let adh = ad_basis(&a, 1);
        assert!(map_bracket(&a, &adh, &adh).unwrap().is_zero());
        let zero = GradedMap::zero(&a, a.group().zero());
        assert!(map_bracket(&a, &adh, &zero).unwrap().is_zero());
        let e_f = map_bracket(&a, &ad_basis(&a, 0), &ad_basis(&a, 2)).unwrap();
        assert_eq!(e_f, adh);
    }

    #[test]
    fn block_support_enforced() {
        let a = catalog::color_sl2();
        let mut m = Matrix::zeros(3, 3, 2);
        m[(0, 0)] = int(2, 1);
        let deg = a.group().element(vec![1, 0]).unwrap();
        assert!(matches!(
            GradedMap::new(&a, deg, m),
            Err(DerivationError::BlockSupport { row: 0, col: 0 })
        ));
    }
}
