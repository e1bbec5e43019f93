//! Shipped example algebras.

use crate::algebra::{BracketEntry, ColorAlgebra};
use crate::grading::{Bicharacter, GradingGroup};
use crate::scalars::CycloScalar;

/// Names accepted by [`by_name`]. `abelian<d>` takes any dimension, e.g. `abelian2`.
pub const NAMES: &[&str] = &["sl2", "heis3", "aff2", "abelian<d>", "colorSl2", "osp12"];

pub fn by_name(name: &str) -> Option<ColorAlgebra> {
    match name {
        "sl2" => Some(sl2()),
        "heis3" => Some(heis3()),
        "aff2" => Some(aff2()),
        "colorSl2" => Some(color_sl2()),
        "osp12" => Some(osp12()),
        _ => name
            .strip_prefix("abelian")
            .and_then(|d| d.parse().ok())
            .filter(|&d: &usize| d <= 64)
            .map(abelian),
    }
}

/// Every shipped entry, with `abelian` at dimension 2.
pub fn all() -> Vec<(String, ColorAlgebra)> {
    ["sl2", "heis3", "aff2", "abelian2", "colorSl2", "osp12"]
        .into_iter()
        .map(|n| (n.to_string(), by_name(n).expect("catalog entry")))
        .collect()
}

type Table<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

fn build(bichar: Bicharacter, basis: &[(&str, Vec<u32>)], table: Table<'_>) -> ColorAlgebra {
    let m = bichar.conductor();
    let basis = basis
        .iter()
        .map(|(n, deg)| {
            let deg = bichar.group().element(deg.clone()).expect("catalog degree");
            (n.to_string(), deg)
        })
        .collect();
    let brackets = table
        .iter()
        .map(|&(left, right, result)| BracketEntry {
            left,
            right,
            result: result
                .iter()
                .map(|&(k, c)| (k, CycloScalar::from_int(m, c)))
                .collect(),
        })
        .collect();
    ColorAlgebra::from_brackets(bichar, basis, brackets).expect("catalog entry is well formed")
}

fn ungraded(names: &[&str], table: Table<'_>) -> ColorAlgebra {
    let basis: Vec<_> = names.iter().map(|n| (*n, vec![])).collect();
    build(Bicharacter::trivial(), &basis, table)
}

/// sl(2) on the basis (e, h, f): `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> ColorAlgebra {
    ungraded(
        &["e", "h", "f"],
        &[(1, 0, &[(0, 2)]), (1, 2, &[(2, -2)]), (0, 2, &[(1, 1)])],
    )
}

/// Heisenberg algebra: `[e1, e2] = e3`.
pub fn heis3() -> ColorAlgebra {
    ungraded(&["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])])
}

/// Two-dimensional non-abelian algebra: `[e1, e2] = e2`.
pub fn aff2() -> ColorAlgebra {
    ungraded(&["e1", "e2"], &[(0, 1, &[(1, 1)])])
}

pub fn abelian(d: usize) -> ColorAlgebra {
    let names: Vec<String> = (1..=d).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    ungraded(&refs, &[])
}

/// Z2 x Z2-graded analogue of so(3) with ε = -1 between distinct degrees:
/// `[x,y] = z`, `[y,z] = x`, `[z,x] = y`.
pub fn color_sl2() -> ColorAlgebra {
    let group = GradingGroup::new(vec![2, 2]).expect("Z2 x Z2");
    let bichar = Bicharacter::new(group, vec![vec![0, 1], vec![1, 0]]).expect("bicharacter");
    build(
        bichar,
        &[("x", vec![1, 0]), ("y", vec![0, 1]), ("z", vec![1, 1])],
        &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])],
    )
}

/// The orthosymplectic superalgebra osp(1|2): even part sl(2) on (e, h, f),
/// odd part (v1, v2) carrying the standard representation, and
/// `[v1,v1] = -2e`, `[v2,v2] = 2f`, `[v1,v2] = h`.
pub fn osp12() -> ColorAlgebra {
    let group = GradingGroup::new(vec![2]).expect("Z2");
    let bichar = Bicharacter::new(group, vec![vec![1]]).expect("super sign");
    build(
        bichar,
        &[
            ("e", vec![0]),
            ("h", vec![0]),
            ("f", vec![0]),
            ("v1", vec![1]),
            ("v2", vec![1]),
        ],
        &[
            (1, 0, &[(0, 2)]),
            (1, 2, &[(2, -2)]),
            (0, 2, &[(1, 1)]),
            (1, 3, &[(3, 1)]),
            (1, 4, &[(4, -1)]),
            (0, 4, &[(3, 1)]),
            (2, 3, &[(4, 1)]),
            (3, 3, &[(0, -2)]),
            (4, 4, &[(2, 2)]),
            (3, 4, &[(1, 1)]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_satisfies_the_axioms() {
        for (name, alg) in all() {
            let report = alg.check_color_axioms();
            assert!(report.passed(), "{name}: {report:?}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("abelian4").unwrap().dim(), 4);
        assert_eq!(by_name("osp12").unwrap().dim(), 5);
        assert!(by_name("abelian").is_none());
        assert!(by_name("g2").is_none());
    }
}
