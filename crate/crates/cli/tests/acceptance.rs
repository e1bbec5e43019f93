//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liecolor::catalog;
use liecolor::derivations::{delta, is_n_derivation, n_derivation_space};
use liecolor::linalg::Subspace;
use liecolor::verify::Verifier;
use liecolor::{ColorAlgebra, CycloScalar, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Grading-supported triples of an algebra, in lexicographic order.
fn supported(alg: &ColorAlgebra) -> Vec<(usize, usize, usize)> {
    let d = alg.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let target = alg.add_degrees(alg.degree(i), alg.degree(j));
            for k in 0..d {
                if alg.degree(k) == &target {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn axiom_gate() -> Outcome {
    let start = Instant::now();
    for (name, alg) in catalog::all() {
        let r = alg.check_color_axioms();
        ensure(r.passed(), || format!("{name} fails its axioms: {r:?}"))?;
    }
    let mut mutations = Vec::new();
    let sl2 = catalog::sl2();
    // Every other one of the 27 triples of sl2.
    for t in supported(&sl2).into_iter().step_by(2) {
        mutations.push(("sl2", sl2.clone(), t));
    }
    let color = catalog::color_sl2();
    for t in supported(&color) {
        mutations.push(("colorSl2", color.clone(), t));
    }
    ensure(mutations.len() == 20, || {
        format!("{} mutations", mutations.len())
    })?;

    let mut lines = Vec::new();
    for (name, alg, (i, j, k)) in mutations {
        let m = alg.conductor();
        let value = alg.constant(i, j, k) + &CycloScalar::one(m);
        let report = alg.with_constant(i, j, k, value).check_color_axioms();
        let expected = (i.min(j), i.max(j), k);
        ensure(report.antisymmetry.contains(&expected), || {
            format!("{name} c[{i}][{j}][{k}] + 1 not flagged: {report:?}")
        })?;
        lines.push(format!(
            "{name}[{i},{j},{k}]: antisym {:?} jacobi {:?}",
            report.antisymmetry, report.jacobi
        ));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    for l in &lines {
        println!("      {l}");
    }
    Ok(format!(
        "6 entries pass, 20/20 mutations flagged, {elapsed:.2?}"
    ))
}

fn first_statement() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut parts = Vec::new();
    for (name, alg) in [
        ("sl2", catalog::sl2()),
        ("colorSl2", catalog::color_sl2()),
        ("osp12", catalog::osp12()),
    ] {
        for n in [3, 4] {
            let start = Instant::now();
            let r = Verifier::new(&alg)
                .nder_equals_der(n)
                .map_err(|e| e.to_string())?;
            worst = worst.max(start.elapsed());
            ensure(r.equal && r.der_dims == r.nder_dims, || {
                format!("{name} n={n}: {r:?}")
            })?;
            ensure(r.passed, || format!("{name} n={n} did not pass: {r:?}"))?;
            if name == "sl2" {
                ensure(r.der_total == 3, || format!("sl2 Der dim {}", r.der_total))?;
            }
            parts.push(format!("{name}/{n}:{}", r.nder_total));
        }
    }
    ensure(worst < Duration::from_secs(30), || {
        format!("slowest case {worst:?}")
    })?;
    Ok(format!("{}, slowest {worst:.2?}", parts.join(" ")))
}

fn second_statement() -> Outcome {
    let mut parts = Vec::new();
    for (name, alg) in [("sl2", catalog::sl2()), ("colorSl2", catalog::color_sl2())] {
        let r = Verifier::new(&alg)
            .second_statement(3)
            .map_err(|e| e.to_string())?;
        let nder: usize = r.nder_dims.iter().map(|d| d.dim).sum();
        let inner: usize = r.inner_dims.iter().map(|d| d.dim).sum();
        ensure(r.equal && nder == 3 && inner == 3 && r.der_dim == 3, || {
            format!("{name}: {r:?}")
        })?;
        ensure(
            r.preserves_inner && r.annihilator_dim == 0 && r.witnesses_found,
            || format!("{name} sub-checks: {r:?}"),
        )?;
        parts.push(format!("{name}: 3 = 3"));
    }
    Ok(parts.join(", "))
}

fn lemma_suite() -> Outcome {
    let mut count = 0;
    for (name, alg) in [("sl2", catalog::sl2()), ("colorSl2", catalog::color_sl2())] {
        let v = Verifier::new(&alg);
        for n in [3, 4] {
            let reports = [
                v.closure(n, 100),
                v.inner_ideal(n),
                v.centralizer_trivial(n),
                v.delta_membership(n),
                v.ad_compat(),
            ];
            for r in reports {
                let r = r.map_err(|e| format!("{name} n={n}: {e}"))?;
                ensure(r.passed, || format!("{name} n={n}: {r:?}"))?;
                if r.check == "closure" {
                    ensure(r.checked == 100, || {
                        format!("closure checked {}", r.checked)
                    })?;
                }
                if r.check == "centralizer_trivial" {
                    ensure(r.dim == Some(0), || format!("centralizer dim {:?}", r.dim))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count}/20 lemma checks pass"))
}

fn delta_fixed_point() -> Outcome {
    let alg = catalog::sl2();
    let maps = n_derivation_space(&alg, 3)
        .map_err(|e| e.to_string())?
        .basis_maps();
    for (i, d) in maps.iter().enumerate() {
        let dd = delta(&alg, d, 3).map_err(|e| e.to_string())?;
        ensure(&dd == d, || format!("delta(D{}) differs", i + 1))?;
    }
    Ok(format!("delta(D) = D for all {} basis maps", maps.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for (name, alg) in catalog::all() {
        for n in [2, 3] {
            let space = n_derivation_space(&alg, n).map_err(|e| e.to_string())?;
            for map in space.basis_maps() {
                ensure(is_n_derivation(&alg, &map, n).unwrap(), || {
                    format!("{name} n={n} basis map fails")
                })?;
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let algebras = catalog::all();
    let mut agree = 0;
    let mut inside = 0;
    for trial in 0..100 {
        let (_, alg) = &algebras[trial % algebras.len()];
        let n = 2 + (trial / algebras.len()) % 2;
        let m = alg.conductor();
        let space = n_derivation_space(alg, n).map_err(|e| e.to_string())?;
        let blocks = space.blocks();
        let block = &blocks[rng.random_range(0..blocks.len())];
        let mut coeff =
            || CycloScalar::from_ratio(m, rng.random_range(-4..=4), rng.random_range(1..=3));
        // Alternate samples from the solution space and from the whole block.
        let v: Vec<CycloScalar> = if trial % 2 == 0 {
            let mut v = vec![CycloScalar::zero(m); block.layout().len()];
            for b in block.space().basis_vectors() {
                let c = coeff();
                for (x, y) in v.iter_mut().zip(&b) {
                    *x = &*x + &(&c * y);
                }
            }
            v
        } else {
            (0..block.layout().len()).map(|_| coeff()).collect()
        };
        let map = block.layout().to_map(m, &v);
        let member = space.contains(&map);
        inside += usize::from(member);
        if member == is_n_derivation(alg, &map, n).unwrap() {
            agree += 1;
        }
    }
    ensure(agree == 100, || format!("agreement {agree}/100"))?;
    Ok(format!(
        "{checked} basis maps verified, agreement {agree}/100 ({inside} members)"
    ))
}

fn negative_controls() -> Outcome {
    let h = catalog::heis3();
    ensure(!h.is_perfect() && h.center().dim() == 1, || {
        "heis3 invariants".into()
    })?;
    let r = Verifier::new(&h)
        .nder_equals_der(3)
        .map_err(|e| e.to_string())?;
    ensure(
        !r.preconditions_hold && !r.passed && r.delta_fixed_point.is_none(),
        || format!("{r:?}"),
    )?;
    let a = catalog::abelian(2);
    let der = n_derivation_space(&a, 2).map_err(|e| e.to_string())?;
    let three = n_derivation_space(&a, 3).map_err(|e| e.to_string())?;
    ensure(der.total_dim() == 4 && der.same_space(&three), || {
        format!("abelian2: Der {der}, 3Der {three}")
    })?;
    Ok("heis3 not perfect, center 1, preconditions_hold false; abelian2 nDer = Der, dim 4".into())
}

fn grassmann() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let random_subspace = |rng: &mut ChaCha8Rng, n: usize| {
        let k = rng.random_range(0..=n);
        let vectors = (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| CycloScalar::from_int(1, rng.random_range(-2..=2)))
                    .collect()
            })
            .collect();
        Subspace::span(n, 1, vectors)
    };
    for trial in 0..200 {
        let n = rng.random_range(1..=8);
        let s = random_subspace(&mut rng, n);
        let t = random_subspace(&mut rng, n);
        let sum = s.sum(&t).map_err(|e| e.to_string())?;
        let meet = s.intersect(&t).map_err(|e| e.to_string())?;
        ensure(sum.dim() + meet.dim() == s.dim() + t.dim(), || {
            format!(
                "trial {trial}: {} + {} != {} + {}",
                sum.dim(),
                meet.dim(),
                s.dim(),
                t.dim()
            )
        })?;
    }
    Ok("200/200 pairs".into())
}

fn cyclotomic() -> Outcome {
    let conductors = [1u32, 2, 3, 4, 6, 12];
    for m in conductors {
        let z = CycloScalar::root(m, 1);
        let order = (1..=m as u64).find(|&k| z.pow(k).is_one());
        ensure(order == Some(m as u64), || {
            format!("order of zeta_{m} is {order:?}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for sample in 0..500 {
        let m = conductors[sample % conductors.len()];
        let phi = CycloScalar::one(m).coeffs().len();
        let mut random = || {
            let poly = (0..phi)
                .map(|_| {
                    Rational::new(
                        rng.random_range(-6i64..=6).into(),
                        rng.random_range(1i64..=5).into(),
                    )
                })
                .collect();
            CycloScalar::from_poly(m, poly)
        };
        let (a, b, c) = (random(), random(), random());
        let ok = &(&a + &b) * &c == &(&a * &c) + &(&b * &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a + &(-&a) == CycloScalar::zero(m)
            && (a.is_zero() || (&a * &a.inv().unwrap()).is_one());
        ensure(ok, || {
            format!("sample {sample} (m={m}) fails: {a:?}, {b:?}, {c:?}")
        })?;
    }
    Ok("orders exact for m in {1,2,3,4,6,12}; 500/500 samples".into())
}

fn verify_suite() -> String {
    let mut out = String::new();
    for (name, _) in catalog::all() {
        for n in ["3", "4"] {
            let target = format!("catalog:{name}");
            let o = liecolor_cli::run([
                "liecolor", "--json", "verify", &target, "--n", n, "--lemmas",
            ]);
            out.push_str(&format!("{}\n", o.code));
            out.push_str(&o.stdout);
        }
    }
    out
}

fn determinism() -> Outcome {
    let first = verify_suite();
    let second = verify_suite();
    ensure(first == second, || "reports differ between runs".into())?;
    Ok(format!("{} bytes identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axiom gate and mutation detection", axiom_gate),
        ("nDer = Der on theorem instances", first_statement),
        ("nDer(Der) = ad(Der) on sl2 and colorSl2", second_statement),
        ("lemma suite", lemma_suite),
        ("delta fixed point on 3Der(sl2)", delta_fixed_point),
        ("oracle equivalence", oracle_equivalence),
        ("negative controls", negative_controls),
        ("Grassmann identity fuzz", grassmann),
        ("cyclotomic arithmetic", cyclotomic),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS [{}] {label}: {detail} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {label}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
