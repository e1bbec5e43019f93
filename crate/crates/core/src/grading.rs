//! Finite abelian grading groups `Z_{n1} x ... x Z_{nr}` and bicharacters on them.

use serde::Serialize;
use thiserror::Error;

use crate::scalars::{lcm_all, CycloScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("cyclic factor orders must be at least 1")]
    ZeroOrder,
    #[error("element has {found} residues, group has rank {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("residue {residue} out of range for factor of order {order}")]
    ResidueOutOfRange { residue: u32, order: u32 },
    #[error("bicharacter table must be {rank}x{rank}")]
    TableShape { rank: usize },
    #[error("bicharacter exponent {value} at ({i},{j}) is not in [0, {exponent})")]
    ExponentOutOfRange {
        i: usize,
        j: usize,
        value: u32,
        exponent: u32,
    },
}

/// A homogeneous degree: residues reduced component-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingGroup {
    orders: Vec<u32>,
}

impl GradingGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GradingError> {
        if orders.contains(&0) {
            return Err(GradingError::ZeroOrder);
        }
        Ok(Self { orders })
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// |Γ|
    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// lcm of the cyclic orders; also the conductor of the scalar field.
    pub fn exponent(&self) -> u32 {
        lcm_all(self.orders.iter().copied())
    }

    pub fn element(&self, residues: Vec<u32>) -> Result<GroupElement, GradingError> {
        self.check_arity(&residues)?;
        for (&r, &n) in residues.iter().zip(&self.orders) {
            if r >= n {
                return Err(GradingError::ResidueOutOfRange {
                    residue: r,
                    order: n,
                });
            }
        }
        Ok(GroupElement(residues))
    }

    fn check_arity(&self, residues: &[u32]) -> Result<(), GradingError> {
        if residues.len() != self.orders.len() {
            return Err(GradingError::ArityMismatch {
                expected: self.orders.len(),
                found: residues.len(),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check_arity(&a.0)?;
        self.check_arity(&b.0)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check_arity(&a.0)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        ))
    }

    pub fn sum<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<GroupElement, GradingError> {
        elems
            .into_iter()
            .try_fold(self.zero(), |acc, e| self.add(&acc, e))
    }

    /// All elements, lexicographic in the residues.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..n).map(move |r| {
                        let mut v = prefix.clone();
                        v.push(r);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }
}

/// ε on generators: `ε(g_i, g_j) = ζ_m^{K[i][j]}`, extended biadditively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: GradingGroup,
    exponents: Vec<Vec<u32>>,
    roots: Vec<CycloScalar>,
}

/// Generator pairs violating the skew or well-definedness conditions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BicharacterReport {
    pub skew_violations: Vec<(usize, usize)>,
    pub order_violations: Vec<(usize, usize)>,
}

impl BicharacterReport {
    pub fn is_valid(&self) -> bool {
        self.skew_violations.is_empty() && self.order_violations.is_empty()
    }
}

impl Bicharacter {
    pub fn new(group: GradingGroup, exponents: Vec<Vec<u32>>) -> Result<Self, GradingError> {
        let r = group.rank();
        if exponents.len() != r || exponents.iter().any(|row| row.len() != r) {
            return Err(GradingError::TableShape { rank: r });
        }
        let m = group.exponent();
        for (i, row) in exponents.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value >= m {
                    return Err(GradingError::ExponentOutOfRange {
                        i,
                        j,
                        value,
                        exponent: m,
                    });
                }
            }
        }
        let roots = (0..m as i64).map(|k| CycloScalar::root(m, k)).collect();
        Ok(Self {
            group,
            exponents,
            roots,
        })
    }

    /// The bicharacter of the trivial group.
    pub fn trivial() -> Self {
        Self {
            group: GradingGroup::trivial(),
            exponents: Vec::new(),
            roots: vec![CycloScalar::one(1)],
        }
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn conductor(&self) -> u32 {
        self.group.exponent()
    }

    pub fn validate(&self) -> BicharacterReport {
        let m = self.conductor() as u64;
        let orders = self.group.orders();
        let mut report = BicharacterReport::default();
        for (i, row) in self.exponents.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                let k = k as u64;
                if j >= i && !(k + self.exponents[j][i] as u64).is_multiple_of(m) {
                    report.skew_violations.push((i, j));
                }
                if !(orders[i] as u64 * k).is_multiple_of(m) || !(orders[j] as u64 * k).is_multiple_of(m) {
                    report.order_violations.push((i, j));
                }
            }
        }
        report
    }

    /// Exponent e with ε(a, c) = ζ_m^e.
    pub fn eps_exponent(&self, a: &GroupElement, c: &GroupElement) -> u32 {
        let m = self.conductor() as u64;
        let mut e = 0u64;
        for (i, &ai) in a.residues().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &cj) in c.residues().iter().enumerate() {
                e = (e + ai as u64 * cj as u64 * self.exponents[i][j] as u64) % m;
            }
        }
        e as u32
    }

    pub fn eps(&self, a: &GroupElement, c: &GroupElement) -> CycloScalar {
        self.roots[self.eps_exponent(a, c) as usize].clone()
    }
}
