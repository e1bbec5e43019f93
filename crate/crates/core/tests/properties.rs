use liecolor::catalog;
use liecolor::linalg::{kernel, rank, rref, solve, Matrix, Subspace};
use liecolor::{Bicharacter, ColorAlgebra, CycloScalar, GradedVector, GradingGroup, Rational};
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 6, 12];

fn scalar(m: u32) -> impl Strategy<Value = CycloScalar> {
    let phi = CycloScalar::one(m).coeffs().len();
    prop::collection::vec((-5i64..=5, 1i64..=4), phi).prop_map(move |terms| {
        let poly = terms
            .into_iter()
            .map(|(p, q)| Rational::new(p.into(), q.into()))
            .collect();
        CycloScalar::from_poly(m, poly)
    })
}

fn scalar_triple() -> impl Strategy<Value = (CycloScalar, CycloScalar, CycloScalar)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Matrix::from_ints(1, &refs)
        })
    })
}

fn int_vec(len: usize) -> impl Strategy<Value = Vec<CycloScalar>> {
    prop::collection::vec((-3i64..=3).prop_map(|x| CycloScalar::from_int(1, x)), len)
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(int_vec(ambient), 0..=ambient)
        .prop_map(move |v| Subspace::span(ambient, 1, v))
}

/// A valid bicharacter on the given group, built from a choice of generator exponents.
fn bicharacter(orders: Vec<u32>, picks: &[u32]) -> Bicharacter {
    let group = GradingGroup::new(orders.clone()).unwrap();
    let m = group.exponent();
    let r = orders.len();
    let mut k = vec![vec![0u32; r]; r];
    let mut pick = picks.iter().cycle();
    for i in 0..r {
        for j in i..r {
            // ε(g_i, g_j) must have order dividing gcd(n_i, n_j); on the diagonal it is ±1.
            let g = if i == j {
                orders[i].gcd(&2)
            } else {
                orders[i].gcd(&orders[j])
            };
            let step = m / g;
            let val = (pick.next().unwrap() % g) * step;
            k[i][j] = val;
            k[j][i] = (m - val) % m;
        }
    }
    Bicharacter::new(group, k).unwrap()
}

fn groups() -> impl Strategy<Value = Vec<u32>> {
    prop::sample::select(vec![
        vec![],
        vec![2],
        vec![3],
        vec![4],
        vec![6],
        vec![2, 2],
        vec![2, 4],
        vec![4, 4],
        vec![2, 2, 2],
        vec![2, 2, 4],
        vec![3, 3],
        vec![12],
    ])
}

fn catalog_entry() -> impl Strategy<Value = ColorAlgebra> {
    prop::sample::select(
        catalog::all()
            .into_iter()
            .map(|(_, a)| a)
            .collect::<Vec<_>>(),
    )
}

/// A random homogeneous element, picked by degree index and coefficients.
fn homogeneous(alg: &ColorAlgebra, degree_pick: usize, coeffs: &[i64]) -> GradedVector {
    let degrees = alg.group().enumerate();
    let deg = &degrees[degree_pick % degrees.len()];
    let m = alg.conductor();
    GradedVector::new(
        (0..alg.dim())
            .map(|i| {
                if alg.degree(i) == deg {
                    CycloScalar::from_int(m, coeffs[i % coeffs.len()])
                } else {
                    CycloScalar::zero(m)
                }
            })
            .collect(),
    )
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in scalar_triple()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_round_trip(a in prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(scalar)) {
        prop_assert_eq!(CycloScalar::parse(&a.to_string(), a.conductor()).unwrap(), a);
    }

    #[test]
    fn roots_agree_across_paths(m in prop::sample::select(CONDUCTORS.to_vec()), k in -30i64..30, j in -30i64..30) {
        // ζ^k ζ^j = ζ^(k+j), and lifting to 12 maps ζ_m to ζ_12^(12/m).
        prop_assert_eq!(&CycloScalar::root(m, k) * &CycloScalar::root(m, j), CycloScalar::root(m, k + j));
        let lifted = CycloScalar::root(m, k).lift(12).unwrap();
        prop_assert_eq!(lifted, CycloScalar::root(12, k * (12 / m as i64)));
    }

    #[test]
    fn bicharacter_axioms(orders in groups(), picks in prop::collection::vec(0u32..12, 1..8)) {
        let b = bicharacter(orders, &picks);
        prop_assert!(b.validate().is_valid());
        let g = b.group();
        let elems = g.enumerate();
        let one = CycloScalar::one(b.conductor());
        for x in &elems {
            prop_assert!(b.eps(&g.zero(), x).is_one());
            let self_pair = b.eps(x, x);
            prop_assert!(self_pair.is_one() || (-&self_pair).is_one());
            for y in &elems {
                prop_assert_eq!(&b.eps(x, y) * &b.eps(y, x), one.clone());
                for z in &elems {
                    let xy = g.add(x, y).unwrap();
                    prop_assert_eq!(b.eps(&xy, z), &b.eps(x, z) * &b.eps(y, z));
                    prop_assert_eq!(b.eps(z, &xy), &b.eps(z, x) * &b.eps(z, y));
                }
            }
        }
    }

    #[test]
    fn grassmann((s, t) in (1usize..=8).prop_flat_map(|n| (subspace(n), subspace(n)))) {
        let sum = s.sum(&t).unwrap();
        let meet = s.intersect(&t).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), s.dim() + t.dim());
        prop_assert!(sum.contains(&s).unwrap() && sum.contains(&t).unwrap());
        prop_assert!(s.contains(&meet).unwrap() && t.contains(&meet).unwrap());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(6, 6)) {
        let r = rref(&m);
        prop_assert_eq!(rref(&r), r.clone());
        prop_assert_eq!(r.rows(), rank(&m));
    }

    #[test]
    fn kernel_is_annihilated(m in matrix(6, 6)) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + rank(&m), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(CycloScalar::is_zero));
        }
    }

    #[test]
    fn solve_consistent_systems((m, x) in matrix(6, 6).prop_flat_map(|m| { let c = m.cols(); (Just(m), int_vec(c)) })) {
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn bracket_is_color_antisymmetric(
        alg in catalog_entry(),
        du in 0usize..16, dv in 0usize..16,
        cu in prop::collection::vec(-3i64..=3, 1..6),
        cv in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let u = homogeneous(&alg, du, &cu);
        let v = homogeneous(&alg, dv, &cv);
        let (Some(a), Some(b)) = (alg.degree_of(&u).unwrap(), alg.degree_of(&v).unwrap()) else {
            return Ok(());
        };
        let uv = alg.bracket(&u, &v).unwrap();
        let vu = alg.bracket(&v, &u).unwrap();
        prop_assert_eq!(uv, vu.scale(&-alg.eps(&a, &b)));
    }

    #[test]
    fn centralizers_are_antitone(alg in catalog_entry(), picks in prop::collection::vec(any::<usize>(), 0..4)) {
        let d = alg.dim();
        let small: Vec<GradedVector> = picks.iter().map(|&i| alg.basis_vector(i % d)).collect();
        let mut large = small.clone();
        large.push(alg.basis_vector(picks.len() % d));
        let c_small = alg.centralizer(&small).unwrap();
        let c_large = alg.centralizer(&large).unwrap();
        prop_assert!(c_small.contains(&c_large).unwrap());
        prop_assert!(c_large.contains(&alg.center()).unwrap());
    }
}

#[test]
fn roots_have_exact_order() {
    for m in CONDUCTORS {
        let z = CycloScalar::root(m, 1);
        for k in 1..m {
            assert!(!z.pow(k as u64).is_one(), "ζ_{m}^{k}");
        }
        assert!(z.pow(m as u64).is_one());
    }
}

#[test]
fn derived_subalgebra_is_closed() {
    for (name, alg) in catalog::all() {
        let derived = alg.derived_subalgebra();
        let basis: Vec<GradedVector> = derived
            .basis_vectors()
            .into_iter()
            .map(GradedVector::new)
            .collect();
        for u in &basis {
            for v in &basis {
                let w = alg.bracket(u, v).unwrap();
                assert!(derived.contains_vector(w.coeffs()), "{name}");
            }
        }
    }
}
