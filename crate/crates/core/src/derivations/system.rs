//! Assembly of the n-derivation constraint system for one degree.
//!
//! Unknowns are the block-supported entries of D. Each side of the identity is
//! linear in D, so it is tracked as a `d × unknowns` coefficient table: row
//! `k`, column `u` holds the coefficient of unknown `u` in the `e_k`
//! component. Rows are fed to the reducer in the order (tuple, output
//! coordinate), tuples lexicographic.

use crate::algebra::{ColorAlgebra, GradedVector};
use crate::linalg::{RowReducer, Subspace};
use crate::scalars::CycloScalar;

use super::BlockLayout;

type Table = Vec<Vec<CycloScalar>>;

/// Nonzero `(k, k', c)` with `[e_k, e_x] = Σ c e_k'`, for each x.
fn right_actions(alg: &ColorAlgebra) -> Vec<Vec<(usize, usize, CycloScalar)>> {
    let d = alg.dim();
    (0..d)
        .map(|x| {
            let mut entries = Vec::new();
            for k in 0..d {
                for k2 in 0..d {
                    let c = alg.constant(k, x, k2);
                    if !c.is_zero() {
                        entries.push((k, k2, c.clone()));
                    }
                }
            }
            entries
        })
        .collect()
}

fn zero_table(d: usize, unknowns: usize, m: u32) -> Table {
    vec![vec![CycloScalar::zero(m); unknowns]; d]
}

fn apply_right(table: &Table, action: &[(usize, usize, CycloScalar)], m: u32) -> Table {
    let unknowns = table.first().map_or(0, Vec::len);
    let mut out = zero_table(table.len(), unknowns, m);
    for (k, k2, c) in action {
        for u in 0..unknowns {
            let t = &table[*k][u];
            if !t.is_zero() {
                out[*k2][u] = &out[*k2][u] + &(c * t);
            }
        }
    }
    out
}

/// Advance an odometer over `{0..d}^n`; false once exhausted.
pub(crate) fn next_tuple(tuple: &mut [usize], d: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < d {
            return true;
        }
        *slot = 0;
    }
    false
}

pub(super) fn solve_block(alg: &ColorAlgebra, n: usize, layout: &BlockLayout) -> Subspace {
    let d = alg.dim();
    let m = alg.conductor();
    let unknowns = layout.len();
    let mut reducer = RowReducer::new(unknowns, m);
    if unknowns == 0 || d == 0 {
        return reducer.kernel();
    }
    let index = layout.index_table();
    let actions = right_actions(alg);
    let gamma = layout.degree();
    let basis: Vec<GradedVector> = (0..d).map(|i| alg.basis_vector(i)).collect();

    let mut tuple = vec![0usize; n];
    loop {
        // prefix[p] = [..[x_1, x_2], .., x_{p+1}]
        let mut prefix: Vec<GradedVector> = Vec::with_capacity(n);
        prefix.push(basis[tuple[0]].clone());
        for p in 1..n {
            let next = alg
                .bracket(&prefix[p - 1], &basis[tuple[p]])
                .expect("same algebra");
            prefix.push(next);
        }

        // D applied to the full bracket.
        let mut eq = zero_table(d, unknowns, m);
        for (j, w) in prefix[n - 1].coeffs().iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (k, row) in eq.iter_mut().enumerate() {
                if let Some(u) = index[k][j] {
                    row[u] = &row[u] + w;
                }
            }
        }

        let mut shift = alg.group().zero();
        for p in 0..n {
            let target = tuple[p];
            let mut term = zero_table(d, unknowns, m);
            for k in 0..d {
                let Some(u) = index[k][target] else { continue };
                if p == 0 {
                    term[k][u] = CycloScalar::one(m);
                } else {
                    let v = alg
                        .bracket(&prefix[p - 1], &basis[k])
                        .expect("same algebra");
                    for (k2, c) in v.into_coeffs().into_iter().enumerate() {
                        if !c.is_zero() {
                            term[k2][u] = &term[k2][u] + &c;
                        }
                    }
                }
            }
            for &x in &tuple[p + 1..] {
                term = apply_right(&term, &actions[x], m);
            }
            let eps = alg.eps(gamma, &shift);
            for (eq_row, term_row) in eq.iter_mut().zip(&term) {
                for (e, t) in eq_row.iter_mut().zip(term_row) {
                    if !t.is_zero() {
                        *e = &*e - &(&eps * t);
                    }
                }
            }
            shift = alg.add_degrees(&shift, alg.degree(target));
        }

        for row in eq {
            reducer.insert(row);
        }
        if reducer.is_full() || !next_tuple(&mut tuple, d) {
            break;
        }
    }
    reducer.kernel()
}
