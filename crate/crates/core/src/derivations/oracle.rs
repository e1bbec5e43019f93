//! Direct evaluation of the n-derivation identity, used as an independent
//! check on the linear-system solver.

use crate::algebra::{ColorAlgebra, GradedVector};

use super::{DerivationError, GradedMap};

/// Checks the n-derivation identity for `map` on every basis n-tuple by
/// evaluating both sides.
pub fn is_n_derivation(
    alg: &ColorAlgebra,
    map: &GradedMap,
    n: usize,
) -> Result<bool, DerivationError> {
    if n < 2 {
        return Err(DerivationError::BadArity { n, min: 2 });
    }
    let d = alg.dim();
    if map.dim() != d {
        return Err(DerivationError::AlgebraMismatch);
    }
    if d == 0 {
        return Ok(true);
    }
    let total = d.pow(n as u32);
    for code in 0..total {
        // mixed-radix digits, most significant first
        let mut rest = code;
        let mut idx = vec![0usize; n];
        for slot in idx.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        let xs: Vec<GradedVector> = idx.iter().map(|&i| alg.basis_vector(i)).collect();

        let lhs = map.apply(&alg.left_normed_bracket(&xs)?);

        let mut rhs = alg.zero_vector();
        for p in 0..n {
            let before = alg.group().sum(idx[..p].iter().map(|&i| alg.degree(i)))?;
            let eps = alg.eps(map.degree(), &before);
            let mut args = xs.clone();
            args[p] = map.apply(&xs[p]);
            rhs.add_scaled(&eps, &alg.left_normed_bracket(&args)?);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
