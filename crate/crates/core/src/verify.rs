//! Checks of the n-derivation structure theorem and its supporting lemmas on a
//! concrete algebra.
//!
//! Every routine returns a serializable report. Reports are deterministic:
//! random sampling uses a fixed seed.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{ColorAlgebra, GradedVector};
use crate::derivations::{
    ad_basis, delta_unchecked, derivation_color_algebra, inner_derivation_space, is_n_derivation,
    map_bracket, n_derivation_space_capped, require_perfect_centerless, AdSolver, DegreeDim,
    DerivationError, DerivationSpace, GradedMap, DEFAULT_MAX_N,
};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::scalars::{CycloScalar, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed_c010;

/// nDer(L) against Der(L).
#[derive(Debug, Clone, Serialize)]
pub struct NderEqualsDerReport {
    pub n: usize,
    pub is_perfect: bool,
    pub center_dim: usize,
    pub preconditions_hold: bool,
    pub der_dims: Vec<DegreeDim>,
    pub nder_dims: Vec<DegreeDim>,
    pub der_total: usize,
    pub nder_total: usize,
    /// Der(L) ⊆ nDer(L), which holds for every algebra.
    pub der_within_nder: bool,
    pub equal: bool,
    /// δ_D = D for every basis map of nDer(L); only evaluated when the
    /// preconditions hold.
    pub delta_fixed_point: Option<bool>,
    /// Preconditions hold and both conclusions were observed.
    pub passed: bool,
}

/// nDer(A) against ad(A) for A = Der(L).
#[derive(Debug, Clone, Serialize)]
pub struct SecondStatementReport {
    pub n: usize,
    pub der_dim: usize,
    /// Cross-check of the first statement on L itself.
    pub der_equals_nder: bool,
    pub nder_dims: Vec<DegreeDim>,
    pub inner_dims: Vec<DegreeDim>,
    pub equal: bool,
    /// Every basis map of nDer(A) sends ad(L) ⊆ A into itself.
    pub preserves_inner: bool,
    /// Dimension of the maps in nDer(A) that kill ad(L); expected 0.
    pub annihilator_dim: usize,
    /// For each basis map D of nDer(A), a derivation d of L with
    /// D(ad x) = ad(d(x)).
    pub witnesses: Vec<Witness>,
    pub witnesses_found: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub map_index: usize,
    pub degree: Vec<u32>,
    /// Matrix of d, `matrix[k][j]` = coefficient of `e_k` in `d(e_j)`.
    pub matrix: Option<Vec<Vec<String>>>,
    pub is_derivation: bool,
}

/// Outcome of one lemma-level check.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub check: String,
    pub n: Option<usize>,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Dimension measured by the check, where it measures one.
    pub dim: Option<usize>,
    pub passed: bool,
}

impl LemmaReport {
    fn new(
        check: &str,
        n: Option<usize>,
        checked: usize,
        failures: Vec<String>,
        dim: Option<usize>,
    ) -> Self {
        let passed = failures.is_empty() && dim.unwrap_or(0) == 0;
        Self {
            check: check.to_string(),
            n,
            checked,
            failures,
            dim,
            passed,
        }
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// Runs checks on one algebra, caching the n-derivation spaces it computes.
pub struct Verifier<'a> {
    alg: &'a ColorAlgebra,
    max_n: usize,
    seed: u64,
    spaces: RefCell<BTreeMap<usize, Rc<DerivationSpace>>>,
    inner: RefCell<Option<Rc<DerivationSpace>>>,
}

impl<'a> Verifier<'a> {
    pub fn new(alg: &'a ColorAlgebra) -> Self {
        Self {
            alg,
            max_n: DEFAULT_MAX_N,
            seed: DEFAULT_SEED,
            spaces: RefCell::new(BTreeMap::new()),
            inner: RefCell::new(None),
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn algebra(&self) -> &ColorAlgebra {
        self.alg
    }

    /// nDer(L), cached.
    pub fn nder(&self, n: usize) -> Result<Rc<DerivationSpace>, DerivationError> {
        if let Some(s) = self.spaces.borrow().get(&n) {
            return Ok(s.clone());
        }
        let space = Rc::new(n_derivation_space_capped(self.alg, n, self.max_n.max(2))?);
        self.spaces.borrow_mut().insert(n, space.clone());
        Ok(space)
    }

    /// ad(L), cached.
    pub fn inner(&self) -> Rc<DerivationSpace> {
        self.inner
            .borrow_mut()
            .get_or_insert_with(|| Rc::new(inner_derivation_space(self.alg)))
            .clone()
    }

    fn require_perfect(&self) -> Result<(), DerivationError> {
        if self.alg.is_perfect() {
            Ok(())
        } else {
            Err(DerivationError::PreconditionFailed(
                "algebra is not perfect".into(),
            ))
        }
    }

    /// First statement: nDer(L) = Der(L) for perfect centerless L, together
    /// with the fixed-point property δ_D = D.
    pub fn nder_equals_der(&self, n: usize) -> Result<NderEqualsDerReport, DerivationError> {
        let der = self.nder(2)?;
        let nder = self.nder(n)?;
        let is_perfect = self.alg.is_perfect();
        let center_dim = self.alg.center().dim();
        let preconditions_hold = is_perfect && center_dim == 0;
        let equal = der.same_space(&nder);
        let delta_fixed_point = if preconditions_hold {
            let solver = AdSolver::new(self.alg);
            let mut all = true;
            for d in nder.basis_maps() {
                match delta_unchecked(self.alg, &solver, &d) {
                    Ok(delta) if delta == d => {}
                    _ => {
                        all = false;
                        break;
                    }
                }
            }
            Some(all)
        } else {
            None
        };
        Ok(NderEqualsDerReport {
            n,
            is_perfect,
            center_dim,
            preconditions_hold,
            der_dims: der.dims(),
            nder_dims: nder.dims(),
            der_total: der.total_dim(),
            nder_total: nder.total_dim(),
            der_within_nder: der.is_subspace_of(&nder),
            equal,
            delta_fixed_point,
            passed: preconditions_hold && equal && delta_fixed_point == Some(true),
        })
    }

    /// Second statement: nDer(Der(L)) = ad(Der(L)).
    pub fn second_statement(&self, n: usize) -> Result<SecondStatementReport, DerivationError> {
        require_perfect_centerless(self.alg)?;
        let alg = self.alg;
        let der = self.nder(2)?;
        let der_equals_nder = der.same_space(&*self.nder(n)?);
        let der_alg = derivation_color_algebra(alg, &der)?;
        let a = &der_alg.algebra;
        let sub = Verifier::new(a).with_max_n(self.max_n);
        let nder_a = sub.nder(n)?;
        let inner_a = sub.inner();
        let equal = nder_a.same_space(&inner_a);

        // ad(L) inside A, in A's coordinates.
        let ad_in_a: Vec<GradedVector> = (0..alg.dim())
            .map(|i| {
                der_alg
                    .coordinates(&ad_basis(alg, i))
                    .ok_or(DerivationError::NotInner { basis: i })
            })
            .collect::<Result<_, _>>()?;
        let image = Subspace::span(
            a.dim(),
            a.conductor(),
            ad_in_a.iter().map(|v| v.coeffs().to_vec()).collect(),
        );

        let solver = AdSolver::new(alg);
        let mut preserves_inner = true;
        let mut witnesses = Vec::new();
        for (idx, d) in nder_a.basis_maps().iter().enumerate() {
            let mut columns: Vec<Option<GradedVector>> = Vec::with_capacity(alg.dim());
            for v in &ad_in_a {
                let w = d.apply(v);
                if !image.contains_vector(w.coeffs()) {
                    preserves_inner = false;
                }
                let as_map = der_alg.to_map(&w)?;
                columns.push(solver.preimage(&as_map));
            }
            let witness = columns
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .map(|cols| {
                    let dim = alg.dim();
                    let mut m = Matrix::zeros(dim, dim, alg.conductor());
                    for (j, col) in cols.into_iter().enumerate() {
                        for (k, c) in col.into_coeffs().into_iter().enumerate() {
                            m[(k, j)] = c;
                        }
                    }
                    m
                })
                .and_then(|m| GradedMap::new(alg, d.degree().clone(), m).ok());
            let is_derivation = match &witness {
                Some(w) => is_n_derivation(alg, w, 2)?,
                None => false,
            };
            witnesses.push(Witness {
                map_index: idx,
                degree: d.degree().residues().to_vec(),
                matrix: witness.as_ref().map(|w| matrix_strings(w.matrix())),
                is_derivation,
            });
        }

        let annihilator_dim = nder_a
            .blocks()
            .iter()
            .map(|block| {
                let maps = block.basis_maps();
                if maps.is_empty() {
                    return 0;
                }
                let rows = ad_in_a.len() * a.dim();
                let mut system = Matrix::zeros(rows, maps.len(), a.conductor());
                for (c, d) in maps.iter().enumerate() {
                    for (vi, v) in ad_in_a.iter().enumerate() {
                        for (k, x) in d.apply(v).into_coeffs().into_iter().enumerate() {
                            system[(vi * a.dim() + k, c)] = x;
                        }
                    }
                }
                kernel(&system).dim()
            })
            .sum();

        let witnesses_found = witnesses.iter().all(|w| w.is_derivation);
        Ok(SecondStatementReport {
            n,
            der_dim: der.total_dim(),
            der_equals_nder,
            nder_dims: nder_a.dims(),
            inner_dims: inner_a.dims(),
            equal,
            preserves_inner,
            annihilator_dim,
            witnesses,
            witnesses_found,
            passed: equal && preserves_inner && annihilator_dim == 0 && witnesses_found,
        })
    }

    fn random_element(&self, rng: &mut ChaCha8Rng, basis: &[GradedMap]) -> GradedMap {
        let m = self.alg.conductor();
        let mut acc = GradedMap::zero(self.alg, basis[0].degree().clone());
        for b in basis {
            let p: i64 = rng.random_range(-4..=4);
            let q: i64 = rng.random_range(1..=3);
            let c = CycloScalar::from_rational(m, Rational::new(p.into(), q.into()));
            acc = acc.add(&b.scale(&c)).expect("same degree");
        }
        acc
    }

    /// nDer(L) is closed under the map bracket, on random homogeneous pairs.
    pub fn closure(&self, n: usize, trials: usize) -> Result<LemmaReport, DerivationError> {
        let nder = self.nder(n)?;
        let blocks: Vec<Vec<GradedMap>> = nder
            .blocks()
            .iter()
            .filter(|b| b.dim() > 0)
            .map(|b| b.basis_maps())
            .collect();
        let mut failures = Vec::new();
        let mut checked = 0;
        if !blocks.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for t in 0..trials {
                let b1 = &blocks[rng.random_range(0..blocks.len())];
                let b2 = &blocks[rng.random_range(0..blocks.len())];
                let d1 = self.random_element(&mut rng, b1);
                let d2 = self.random_element(&mut rng, b2);
                let br = map_bracket(self.alg, &d1, &d2)?;
                checked += 1;
                if !nder.contains(&br) {
                    failures.push(format!(
                        "trial {t}: bracket of degree {:?} not in nDer",
                        br.degree().residues()
                    ));
                }
            }
        }
        Ok(LemmaReport::new(
            "closure",
            Some(n),
            checked,
            failures,
            None,
        ))
    }

    /// ad(L) is an ideal of nDer(L) when L is perfect.
    pub fn inner_ideal(&self, n: usize) -> Result<LemmaReport, DerivationError> {
        self.require_perfect()?;
        let nder = self.nder(n)?;
        let inner = self.inner();
        let mut failures = Vec::new();
        let mut checked = 0;
        for (i, d) in nder.basis_maps().iter().enumerate() {
            for x in 0..self.alg.dim() {
                checked += 1;
                let br = map_bracket(self.alg, d, &ad_basis(self.alg, x))?;
                if !inner.contains(&br) {
                    failures.push(format!(
                        "[D{}, ad {}] not inner",
                        i + 1,
                        self.alg.names()[x]
                    ));
                }
            }
        }
        Ok(LemmaReport::new(
            "inner_ideal",
            Some(n),
            checked,
            failures,
            None,
        ))
    }

    /// The centralizer of ad(L) in nDer(L) is zero when L is perfect.
    pub fn centralizer_trivial(&self, n: usize) -> Result<LemmaReport, DerivationError> {
        self.require_perfect()?;
        let nder = self.nder(n)?;
        let d = self.alg.dim();
        let ads: Vec<GradedMap> = (0..d).map(|x| ad_basis(self.alg, x)).collect();
        let mut dim = 0;
        let mut checked = 0;
        for block in nder.blocks() {
            let maps = block.basis_maps();
            if maps.is_empty() {
                continue;
            }
            checked += maps.len();
            let mut system = Matrix::zeros(d * d * d, maps.len(), self.alg.conductor());
            for (c, map) in maps.iter().enumerate() {
                for (x, adx) in ads.iter().enumerate() {
                    let br = map_bracket(self.alg, map, adx)?;
                    for k in 0..d {
                        for j in 0..d {
                            system[((x * d + k) * d + j, c)] = br.matrix()[(k, j)].clone();
                        }
                    }
                }
            }
            dim += kernel(&system).dim();
        }
        Ok(LemmaReport::new(
            "centralizer_trivial",
            Some(n),
            checked,
            Vec::new(),
            Some(dim),
        ))
    }

    /// δ_D is an (n-1)-derivation for every D in nDer(L).
    pub fn delta_membership(&self, n: usize) -> Result<LemmaReport, DerivationError> {
        if n < 3 {
            return Err(DerivationError::BadArity { n, min: 3 });
        }
        require_perfect_centerless(self.alg)?;
        let nder = self.nder(n)?;
        let solver = AdSolver::new(self.alg);
        let mut failures = Vec::new();
        let maps = nder.basis_maps();
        for (i, d) in maps.iter().enumerate() {
            let delta = delta_unchecked(self.alg, &solver, d)?;
            if !is_n_derivation(self.alg, &delta, n - 1)? {
                failures.push(format!("delta of D{} is not a {}-derivation", i + 1, n - 1));
            }
        }
        Ok(LemmaReport::new(
            "delta_membership",
            Some(n),
            maps.len(),
            failures,
            None,
        ))
    }

    /// `[D, ad x] = ad(D(x))` for D ∈ Der(L), x ∈ L.
    pub fn ad_compat(&self) -> Result<LemmaReport, DerivationError> {
        let der = self.nder(2)?;
        let mut failures = Vec::new();
        let mut checked = 0;
        for (i, d) in der.basis_maps().iter().enumerate() {
            for x in 0..self.alg.dim() {
                checked += 1;
                let lhs = map_bracket(self.alg, d, &ad_basis(self.alg, x))?;
                let rhs = crate::derivations::ad(self.alg, &d.apply_basis(x))?;
                if lhs.matrix() != rhs.matrix() {
                    failures.push(format!("D{} at {}", i + 1, self.alg.names()[x]));
                }
            }
        }
        Ok(LemmaReport::new("ad_compat", None, checked, failures, None))
    }
}

pub fn verify_nder_equals_der(
    alg: &ColorAlgebra,
    n: usize,
) -> Result<NderEqualsDerReport, DerivationError> {
    Verifier::new(alg).nder_equals_der(n)
}

pub fn verify_second_statement(
    alg: &ColorAlgebra,
    n: usize,
) -> Result<SecondStatementReport, DerivationError> {
    Verifier::new(alg).second_statement(n)
}

pub fn verify_closure(
    alg: &ColorAlgebra,
    n: usize,
    trials: usize,
) -> Result<LemmaReport, DerivationError> {
    Verifier::new(alg).closure(n, trials)
}

pub fn verify_inner_ideal(alg: &ColorAlgebra, n: usize) -> Result<LemmaReport, DerivationError> {
    Verifier::new(alg).inner_ideal(n)
}

pub fn verify_centralizer_trivial(
    alg: &ColorAlgebra,
    n: usize,
) -> Result<LemmaReport, DerivationError> {
    Verifier::new(alg).centralizer_trivial(n)
}

pub fn verify_delta_membership(
    alg: &ColorAlgebra,
    n: usize,
) -> Result<LemmaReport, DerivationError> {
    Verifier::new(alg).delta_membership(n)
}

pub fn verify_ad_compat(alg: &ColorAlgebra) -> Result<LemmaReport, DerivationError> {
    Verifier::new(alg).ad_compat()
}
