//! Lie color algebras given by structure constants on a homogeneous basis.

use serde::Serialize;
use thiserror::Error;

use crate::grading::{Bicharacter, GradingError, GradingGroup, GroupElement};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::scalars::CycloScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("vector has length {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not homogeneous")]
    NonHomogeneous,
    #[error("a left-normed bracket needs at least two arguments, got {0}")]
    TooFewArguments(usize),
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("unknown basis element {0:?}")]
    UnknownName(String),
    #[error("bracket [{0}, {1}] listed twice")]
    DuplicateBracket(String, String),
    #[error("[{left}, {right}] lands in {target}, whose degree is not deg {left} + deg {right}")]
    GradingSupport {
        left: String,
        right: String,
        target: String,
    },
    #[error("[{right}, {left}] contradicts ε-antisymmetry with the listed [{left}, {right}]")]
    Antisymmetry { left: String, right: String },
    #[error("scalar conductor does not match the grading group exponent {0}")]
    Conductor(u32),
    #[error("structure constant table has the wrong size")]
    TableShape,
    #[error("bicharacter is invalid: {0:?}")]
    InvalidBicharacter(crate::grading::BicharacterReport),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// A vector in the algebra, as coordinates in the homogeneous basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedVector {
    coeffs: Vec<CycloScalar>,
}

impl GradedVector {
    pub fn new(coeffs: Vec<CycloScalar>) -> Self {
        Self { coeffs }
    }

    pub fn zero(dim: usize, conductor: u32) -> Self {
        Self::new(vec![CycloScalar::zero(conductor); dim])
    }

    pub fn basis(dim: usize, conductor: u32, i: usize) -> Self {
        let mut v = Self::zero(dim, conductor);
        v.coeffs[i] = CycloScalar::one(conductor);
        v
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CycloScalar> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloScalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &CycloScalar, other: &Self) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }
}

/// Violations found by [`ColorAlgebra::check_color_axioms`], as basis index tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `(i, j, k)` with `c[i][j][k] != 0` although `deg k != deg i + deg j`.
    pub grading: Vec<(usize, usize, usize)>,
    /// `(i, j, k)`, `i <= j`, with `c[i][j][k] != -ε(i, j) c[j][i][k]`.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// `(i, j, k)` whose ε-Jacobi sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.grading.is_empty() && self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

/// One listed bracket `[left, right] = Σ result`.
#[derive(Debug, Clone)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, CycloScalar)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorAlgebra {
    bichar: Bicharacter,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    /// `c[(i * d + j) * d + k]`, coefficient of `e_k` in `[e_i, e_j]`.
    constants: Vec<CycloScalar>,
}

impl ColorAlgebra {
    /// Build from a full constant table indexed `[i][j][k]`.
    ///
    /// Checks shapes, conductors and grading support; ε-antisymmetry and
    /// the ε-Jacobi identity are left to [`Self::check_color_axioms`].
    pub fn new(
        bichar: Bicharacter,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        constants: Vec<CycloScalar>,
    ) -> Result<Self, AlgebraError> {
        let d = names.len();
        if degrees.len() != d || constants.len() != d * d * d {
            return Err(AlgebraError::TableShape);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateName(n.clone()));
            }
        }
        let group = bichar.group();
        for deg in &degrees {
            group.element(deg.residues().to_vec())?;
        }
        let m = bichar.conductor();
        if constants.iter().any(|c| c.conductor() != m) {
            return Err(AlgebraError::Conductor(m));
        }
        let alg = Self {
            bichar,
            names,
            degrees,
            constants,
        };
        if let Some(&(i, j, k)) = alg.grading_violations().first() {
            return Err(AlgebraError::GradingSupport {
                left: alg.names[i].clone(),
                right: alg.names[j].clone(),
                target: alg.names[k].clone(),
            });
        }
        Ok(alg)
    }

    /// Build from listed brackets. Pairs whose reverse is not listed are
    /// filled in by ε-antisymmetry; pairs listed both ways are cross-checked.
    pub fn from_brackets(
        bichar: Bicharacter,
        basis: Vec<(String, GroupElement)>,
        brackets: Vec<BracketEntry>,
    ) -> Result<Self, AlgebraError> {
        let report = bichar.validate();
        if !report.is_valid() {
            return Err(AlgebraError::InvalidBicharacter(report));
        }
        let m = bichar.conductor();
        let d = basis.len();
        let (names, degrees): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let mut table: Vec<Option<Vec<CycloScalar>>> = vec![None; d * d];
        for entry in &brackets {
            let (i, j) = (entry.left, entry.right);
            if i >= d || j >= d || entry.result.iter().any(|(k, _)| *k >= d) {
                return Err(AlgebraError::TableShape);
            }
            if table[i * d + j].is_some() {
                return Err(AlgebraError::DuplicateBracket(
                    names[i].clone(),
                    names[j].clone(),
                ));
            }
            let mut row = vec![CycloScalar::zero(m); d];
            for (k, c) in &entry.result {
                if c.conductor() != m {
                    return Err(AlgebraError::Conductor(m));
                }
                row[*k] = &row[*k] + c;
            }
            table[i * d + j] = Some(row);
        }
        let mut constants = vec![CycloScalar::zero(m); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let forward = table[i * d + j].as_ref();
                let reverse = table[j * d + i].as_ref();
                let sign = -bichar.eps(&degrees[i], &degrees[j]);
                let row = match (forward, reverse) {
                    (Some(row), Some(rev)) => {
                        let expected: Vec<_> = rev.iter().map(|c| c * &sign).collect();
                        if row != &expected {
                            let (l, r) = if i < j { (i, j) } else { (j, i) };
                            return Err(AlgebraError::Antisymmetry {
                                left: names[l].clone(),
                                right: names[r].clone(),
                            });
                        }
                        row.clone()
                    }
                    (Some(row), None) => row.clone(),
                    (None, Some(rev)) => rev.iter().map(|c| c * &sign).collect(),
                    (None, None) => continue,
                };
                for (k, c) in row.into_iter().enumerate() {
                    constants[(i * d + j) * d + k] = c;
                }
            }
        }
        Self::new(bichar, names, degrees, constants)
    }

    /// A copy with one structure constant replaced. No invariant is checked,
    /// so the result may fail [`Self::check_color_axioms`].
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: CycloScalar) -> Self {
        let mut out = self.clone();
        let d = self.dim();
        out.constants[(i * d + j) * d + k] = value;
        out
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bichar(&self) -> &Bicharacter {
        &self.bichar
    }

    pub fn group(&self) -> &GradingGroup {
        self.bichar.group()
    }

    pub fn conductor(&self) -> u32 {
        self.bichar.conductor()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &CycloScalar {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    /// ε on basis degrees.
    pub fn eps(&self, a: &GroupElement, b: &GroupElement) -> CycloScalar {
        self.bichar.eps(a, b)
    }

    pub fn add_degrees(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.group()
            .add(a, b)
            .expect("degrees belong to the grading group")
    }

    pub fn basis_vector(&self, i: usize) -> GradedVector {
        GradedVector::basis(self.dim(), self.conductor(), i)
    }

    pub fn zero_vector(&self) -> GradedVector {
        GradedVector::zero(self.dim(), self.conductor())
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> GradedVector {
        let d = self.dim();
        GradedVector::new(self.constants[(i * d + j) * d..(i * d + j + 1) * d].to_vec())
    }

    fn check_len(&self, v: &GradedVector) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(
        &self,
        u: &GradedVector,
        v: &GradedVector,
    ) -> Result<GradedVector, AlgebraError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let d = self.dim();
        let mut out = self.zero_vector();
        for (i, ui) in u.coeffs.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coeffs.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let f = ui * vj;
                for k in 0..d {
                    let c = &self.constants[(i * d + j) * d + k];
                    if !c.is_zero() {
                        out.coeffs[k] = &out.coeffs[k] + &(&f * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[[...[[x1, x2], x3], ...], xn]`
    pub fn left_normed_bracket(&self, xs: &[GradedVector]) -> Result<GradedVector, AlgebraError> {
        if xs.len() < 2 {
            return Err(AlgebraError::TooFewArguments(xs.len()));
        }
        self.check_len(&xs[0])?;
        xs[1..]
            .iter()
            .try_fold(xs[0].clone(), |acc, x| self.bracket(&acc, x))
    }

    /// Degree of a homogeneous vector; `None` for the zero vector.
    pub fn degree_of(&self, v: &GradedVector) -> Result<Option<GroupElement>, AlgebraError> {
        self.check_len(v)?;
        let mut found: Option<&GroupElement> = None;
        for (c, deg) in v.coeffs.iter().zip(&self.degrees) {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(deg),
                Some(f) if f != deg => return Err(AlgebraError::NonHomogeneous),
                _ => {}
            }
        }
        Ok(found.cloned())
    }

    fn grading_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let target = self.add_degrees(&self.degrees[i], &self.degrees[j]);
                for k in 0..d {
                    if self.degrees[k] != target && !self.constant(i, j, k).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Exhaustive check of grading support, ε-antisymmetry and the ε-Jacobi
    /// identity `ε(z,x)[x,[y,z]] + ε(x,y)[y,[z,x]] + ε(y,z)[z,[x,y]] = 0`
    /// over all basis triples.
    pub fn check_color_axioms(&self) -> AxiomReport {
        let d = self.dim();
        let mut report = AxiomReport {
            grading: self.grading_violations(),
            ..Default::default()
        };
        for i in 0..d {
            for j in i..d {
                let sign = self.eps(&self.degrees[i], &self.degrees[j]);
                for k in 0..d {
                    let sum = self.constant(i, j, k) + &(&sign * self.constant(j, i, k));
                    if !sum.is_zero() {
                        report.antisymmetry.push((i, j, k));
                    }
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    if !self.jacobi_sum(x, y, z).is_zero() {
                        report.jacobi.push((x, y, z));
                    }
                }
            }
        }
        report
    }

    fn jacobi_sum(&self, x: usize, y: usize, z: usize) -> GradedVector {
        let deg = |i: usize| &self.degrees[i];
        let e = |i: usize| self.basis_vector(i);
        let cyc = |a: usize, b: usize, c: usize| -> GradedVector {
            // ε(c, a)[a, [b, c]]
            let inner = self.bracket_basis(b, c);
            self.bracket(&e(a), &inner)
                .expect("same algebra")
                .scale(&self.eps(deg(c), deg(a)))
        };
        cyc(x, y, z).add(&cyc(y, z, x)).add(&cyc(z, x, y))
    }

    /// `[L, L]`
    pub fn derived_subalgebra(&self) -> Subspace {
        let d = self.dim();
        let vectors = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j).into_coeffs())
            .collect();
        Subspace::span(d, self.conductor(), vectors)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().dim() == self.dim()
    }

    /// `Z(L)`: kernel of `v ↦ ([v, e_j])_j`.
    pub fn center(&self) -> Subspace {
        let basis: Vec<GradedVector> = (0..self.dim()).map(|j| self.basis_vector(j)).collect();
        self.centralizer(&basis)
            .expect("basis vectors have the algebra dimension")
    }

    /// `C_L(S)`: kernel of `v ↦ ([v, s])_{s ∈ S}`.
    pub fn centralizer(&self, set: &[GradedVector]) -> Result<Subspace, AlgebraError> {
        let d = self.dim();
        let m = self.conductor();
        let mut system = Matrix::zeros(set.len() * d, d, m);
        for (si, s) in set.iter().enumerate() {
            self.check_len(s)?;
            for i in 0..d {
                let image = self.bracket(&self.basis_vector(i), s)?;
                for (k, c) in image.coeffs.into_iter().enumerate() {
                    system[(si * d + k, i)] = c;
                }
            }
        }
        Ok(kernel(&system))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn int(n: i64) -> CycloScalar {
        CycloScalar::from_int(1, n)
    }

    fn vec_of(a: &ColorAlgebra, xs: &[i64]) -> GradedVector {
        GradedVector::new(
            xs.iter()
                .map(|&x| CycloScalar::from_int(a.conductor(), x))
                .collect(),
        )
    }

    #[test]
    fn sl2_brackets() {
        let a = catalog::sl2();
        let (e, h, f) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
        assert_eq!(a.bracket(&h, &e).unwrap(), e.scale(&int(2)));
        assert!(a.bracket(&e, &e).unwrap().is_zero());
        assert!(a
            .left_normed_bracket(&[e.clone(), f.clone(), h.clone()])
            .unwrap()
            .is_zero());
        assert_eq!(
            a.left_normed_bracket(&[h.clone(), e.clone(), f.clone()])
                .unwrap(),
            h.scale(&int(2))
        );
        let zero = a.zero_vector();
        assert!(a
            .left_normed_bracket(&[e.clone(), zero, h])
            .unwrap()
            .is_zero());
        assert_eq!(
            a.left_normed_bracket(&[e]),
            Err(AlgebraError::TooFewArguments(1))
        );
        assert!(matches!(
            a.bracket(&f, &GradedVector::zero(2, 1)),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn color_sl2_brackets_are_symmetric() {
        let a = catalog::color_sl2();
        let (x, y, z) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
        assert_eq!(a.bracket(&y, &x).unwrap(), z);
        assert_eq!(a.bracket(&x, &y).unwrap(), z);
    }

    #[test]
    fn axiom_checker_finds_perturbation() {
        let a = catalog::sl2();
        assert!(a.check_color_axioms().passed());
        // c[h][e][e]: 2 -> 3
        let bad = a.with_constant(1, 0, 0, int(3));
        let report = bad.check_color_axioms();
        assert!(report.jacobi.contains(&(1, 0, 2)));
        assert!(report.antisymmetry.contains(&(0, 1, 0)));
        assert!(report.grading.is_empty());
    }

    #[test]
    fn grading_violation_reported() {
        let a = catalog::color_sl2();
        // [x, y] gets an x-component, which has the wrong degree.
        let bad = a.with_constant(0, 1, 0, CycloScalar::one(2));
        assert_eq!(bad.check_color_axioms().grading, vec![(0, 1, 0)]);
    }

    #[test]
    fn invariants_of_small_algebras() {
        let sl2 = catalog::sl2();
        assert_eq!(sl2.derived_subalgebra().dim(), 3);
        assert!(sl2.is_perfect());
        assert_eq!(sl2.center().dim(), 0);

        let heis = catalog::heis3();
        let derived = heis.derived_subalgebra();
        assert_eq!(
            derived,
            Subspace::span(3, 1, vec![vec_of(&heis, &[0, 0, 1]).into_coeffs()])
        );
        assert!(!heis.is_perfect());
        assert_eq!(heis.center(), derived);

        let ab = catalog::abelian(3);
        assert_eq!(ab.derived_subalgebra().dim(), 0);
        assert_eq!(ab.center().dim(), 3);
    }

    #[test]
    fn centralizers() {
        let heis = catalog::heis3();
        let c = heis.centralizer(&[heis.basis_vector(0)]).unwrap();
        let expected = Subspace::span(
            3,
            1,
            vec![
                vec_of(&heis, &[1, 0, 0]).into_coeffs(),
                vec_of(&heis, &[0, 0, 1]).into_coeffs(),
            ],
        );
        assert_eq!(c, expected);
        assert_eq!(heis.centralizer(&[]).unwrap().dim(), 3);
        let all: Vec<_> = (0..3).map(|i| heis.basis_vector(i)).collect();
        assert_eq!(heis.centralizer(&all).unwrap(), heis.center());
    }

    #[test]
    fn homogeneity() {
        let a = catalog::color_sl2();
        assert_eq!(a.degree_of(&a.zero_vector()).unwrap(), None);
        assert_eq!(
            a.degree_of(&a.basis_vector(2)).unwrap().unwrap().residues(),
            &[1, 1]
        );
        let mixed = a.basis_vector(0).add(&a.basis_vector(1));
        assert_eq!(a.degree_of(&mixed), Err(AlgebraError::NonHomogeneous));
    }

    #[test]
    fn bracket_table_cross_check() {
        let bichar = Bicharacter::trivial();
        let g = bichar.group().zero();
        let basis = vec![("a".to_string(), g.clone()), ("b".to_string(), g)];
        let entry = |l, r, c| BracketEntry {
            left: l,
            right: r,
            result: vec![(1, int(c))],
        };
        let ok = ColorAlgebra::from_brackets(
            bichar.clone(),
            basis.clone(),
            vec![entry(0, 1, 1), entry(1, 0, -1)],
        );
        assert!(ok.is_ok());
        let bad = ColorAlgebra::from_brackets(bichar, basis, vec![entry(0, 1, 1), entry(1, 0, 1)]);
        assert!(matches!(bad, Err(AlgebraError::Antisymmetry { .. })));
    }
}
