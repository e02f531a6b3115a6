//! End-to-end acceptance suite. Prints one line per criterion and exits nonzero
//! if any criterion fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotconj_core::conjugacy::brute_force_orbit;
use rotconj_core::rotation::{apply_exact, rank_of};
use rotconj_core::{
    build_conjugacy_map, su2_conjugate, torus_conjugate, torus_embed, verify_certificate,
    verify_conjugacy_numeric, Certificate, ExactReal, IntMatrix, OracleMode, RotationVector,
    Su2Certificate, SymbolTable, TorusCertificate,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn symbols(k: usize) -> Arc<SymbolTable> {
    let all = [
        ("a", std::f64::consts::SQRT_2),
        ("b", 3f64.sqrt()),
        ("c", 5f64.sqrt()),
    ];
    SymbolTable::from_entries(all.into_iter().take(k)).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_rational(rng: &mut ChaCha8Rng, max_den: i64) -> BigRational {
    let d = rng.random_range(1..=max_den);
    rat(rng.random_range(0..d), d)
}

/// Entries built from a few random irrational "seeds" plus rationals, so that
/// dependencies of every kind show up.
fn random_vector(rng: &mut ChaCha8Rng, table: &Arc<SymbolTable>, n: usize) -> RotationVector {
    let k = table.len();
    let seeds: Vec<Vec<BigRational>> = (0..rng.random_range(0..=k))
        .map(|_| {
            (0..k)
                .map(|_| BigRational::from_integer(rng.random_range(-2..=2).into()))
                .collect()
        })
        .collect();
    let entries = (0..n)
        .map(|_| {
            let mut coords = vec![random_rational(rng, 6)];
            let mut irr = vec![BigRational::zero(); k];
            for s in &seeds {
                let c = BigRational::from_integer(rng.random_range(-2..=2).into());
                for (x, y) in irr.iter_mut().zip(s) {
                    *x += &c * y;
                }
            }
            coords.extend(irr);
            ExactReal::from_coordinates(table, &coords).unwrap()
        })
        .collect();
    RotationVector::new(entries).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, max_ops: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..rng.random_range(0..=max_ops) {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        match rng.random_range(0..3) {
            0 => m.swap_rows(i, j),
            1 => m.negate_row(i),
            _ if i != j => {
                let k = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
                m.add_row_multiple(j, i, &k);
            }
            _ => {}
        }
    }
    m
}

fn random_su2_certificate(rng: &mut ChaCha8Rng, n: usize, max_ops: usize) -> Su2Certificate {
    Su2Certificate {
        sign: if rng.random_bool(0.5) { 1 } else { -1 },
        ell: (0..n).map(|_| rng.random_range(-3..=3).into()).collect(),
        a: random_unimodular(rng, n, max_ops),
    }
}

fn grid_vectors(values: &[BigRational], n: usize) -> Vec<RotationVector> {
    let table = symbols(0);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|xs| {
            RotationVector::new(
                xs.into_iter()
                    .map(|q| ExactReal::from_rational(&table, q))
                    .collect(),
            )
            .unwrap()
        })
        .collect()
}

fn state(rho: &RotationVector) -> Vec<BigRational> {
    rho.entries().iter().map(|x| x.rational_part().clone()).collect()
}

/// `(pairs, conjugate pairs, disagreements)` over all ordered pairs of a grid.
fn grid_discrepancies(vectors: &[RotationVector], mode: OracleMode) -> (usize, usize, usize) {
    let mut bad = 0;
    let mut pairs = 0;
    let mut positive = 0;
    for f in vectors {
        let orbit = brute_force_orbit(f, mode).unwrap();
        for g in vectors {
            let decided = match mode {
                OracleMode::Torus => torus_conjugate(f, g).unwrap().is_some(),
                OracleMode::Su2 => su2_conjugate(f, g).unwrap().is_some(),
            };
            pairs += 1;
            positive += usize::from(decided);
            if decided != orbit.contains(&state(g)) {
                bad += 1;
                if bad <= 3 {
                    eprintln!("  discrepancy: {f} vs {g}: decided {decided}");
                }
            }
        }
    }
    (pairs, positive, bad)
}

fn criterion_torus_oracle() -> Outcome {
    let start = Instant::now();
    let (mut pairs, mut positive, mut bad) = (0, 0, 0);
    for q in 2..=5 {
        let values: Vec<BigRational> = (0..q).map(|p| rat(p, q)).collect();
        let (p, c, b) = grid_discrepancies(&grid_vectors(&values, 2), OracleMode::Torus);
        pairs += p;
        positive += c;
        bad += b;
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{pairs} pairs, {positive} conjugate, {bad} discrepancies, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn denominators_up_to(q: i64) -> Vec<BigRational> {
    let mut values: Vec<BigRational> = (1..=q)
        .flat_map(|d| (0..d).map(move |p| rat(p, d)))
        .collect();
    values.sort();
    values.dedup();
    values
}

fn criterion_su2_oracle() -> Outcome {
    let start = Instant::now();
    let (pairs, positive, bad) = grid_discrepancies(&grid_vectors(&denominators_up_to(4), 2), OracleMode::Su2);
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < Duration::from_secs(120),
        format!(
            "{pairs} pairs, {positive} conjugate, {bad} discrepancies, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_numeric_sufficiency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for case in 0..100u64 {
        let table = symbols(rng.random_range(0..=2));
        let n = rng.random_range(1..=3);
        let rho = random_vector(&mut rng, &table, n + 1);
        let cert = random_su2_certificate(&mut rng, n, 8);
        let image = rho.apply_matrix(&cert.block_matrix()).unwrap();
        let g = torus_embed(&rho.approx()).unwrap();
        let g2 = torus_embed(&image.approx()).unwrap();
        let map = build_conjugacy_map(cert.sign, &cert.ell, &cert.a).unwrap();
        let err = verify_conjugacy_numeric(&map, &g, &g2, 1000, case).unwrap();
        worst = worst.max(err);
        // the decision procedure must find its own certificate, realizable the same way
        match su2_conjugate(&rho, &image).unwrap() {
            Some(found) => {
                let map = build_conjugacy_map(found.sign, &found.ell, &found.a).unwrap();
                let err = verify_conjugacy_numeric(&map, &g, &g2, 1000, case).unwrap();
                worst = worst.max(err);
            }
            None => failures += 1,
        }
    }
    outcome(
        worst <= 1e-9 && failures == 0,
        format!("100 pairs, max error {worst:.3e}, {failures} undecided"),
    )
}

fn criterion_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    for _ in 0..200 {
        let table = symbols(rng.random_range(0..=3));
        let n = rng.random_range(1..=5);
        let rho = random_vector(&mut rng, &table, n);
        let g = random_unimodular(&mut rng, n, 12);
        let exact = apply_exact(rho.entries(), &g).unwrap();
        let reduced = rho.apply_matrix(&g).unwrap();
        if rank_of(&exact) != rho.rank()
            || reduced.reductive_rank() != rho.reductive_rank()
            || reduced.orbit_invariants() != rho.orbit_invariants()
        {
            violations += 1;
        }
    }
    for _ in 0..1000 {
        let table = symbols(rng.random_range(0..=3));
        let n = rng.random_range(1..=5);
        let rho = random_vector(&mut rng, &table, n);
        let (r, rr) = (rho.rank(), rho.reductive_rank());
        if !(rr == r || rr + 1 == r) {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("200 pairs + 1000 vectors, {violations} violations"))
}

fn criterion_components() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let table = symbols(0);
    let mut violations = 0;
    for i in 0..100 {
        let n = 2 + i % 2;
        let rho = RotationVector::new(
            (0..n)
                .map(|_| ExactReal::from_rational(&table, random_rational(&mut rng, 12)))
                .collect(),
        )
        .unwrap();
        let step = state(&rho);
        let mut x = vec![BigRational::zero(); n];
        let mut seen = HashSet::new();
        while seen.insert(x.clone()) {
            for (xi, s) in x.iter_mut().zip(&step) {
                let sum = &*xi + s;
                *xi = &sum - sum.floor();
            }
        }
        let nf = rho.normal_form();
        if nf.m != 0 || nf.d != BigInt::from(seen.len()) {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("100 vectors on T^2/T^3, {violations} violations"))
}

fn criterion_normal_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    for _ in 0..300 {
        let table = symbols(rng.random_range(0..=3));
        let n = rng.random_range(1..=5);
        let rho = random_vector(&mut rng, &table, n);
        let nf = rho.normal_form();
        let ok = nf.transform.is_unimodular()
            && rho
                .apply_matrix(&nf.transform)
                .unwrap()
                .entries_mod_z_eq(&nf.vector(&table))
            && nf.k.gcd(&nf.d).is_one()
            && nf.d.is_positive()
            && nf.m == rho.reductive_rank()
            && nf.len() == n
            && RotationVector::new(nf.betas.clone())
                .map_or(nf.m == 0, |b| b.rank() == nf.m && b.reductive_rank() == nf.m);
        if !ok {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("300 vectors, {violations} violations"))
}

enum Mode {
    Torus,
    Su2,
}

fn decide(mode: &Mode, x: &RotationVector, y: &RotationVector) -> Option<Certificate> {
    match mode {
        Mode::Torus => torus_conjugate(x, y).unwrap().map(Certificate::Torus),
        Mode::Su2 => su2_conjugate(x, y).unwrap().map(Certificate::Su2),
    }
}

fn invert(c: &Certificate) -> Certificate {
    match c {
        Certificate::Torus(t) => Certificate::Torus(t.inverse().unwrap()),
        Certificate::Su2(s) => Certificate::Su2(s.inverse().unwrap()),
    }
}

fn compose(c1: &Certificate, c2: &Certificate) -> Certificate {
    match (c1, c2) {
        (Certificate::Torus(a), Certificate::Torus(b)) => Certificate::Torus(a.compose(b).unwrap()),
        (Certificate::Su2(a), Certificate::Su2(b)) => Certificate::Su2(a.compose(b).unwrap()),
        _ => unreachable!("mixed certificate kinds"),
    }
}

fn invariants_agree(mode: &Mode, x: &RotationVector, y: &RotationVector) -> bool {
    match mode {
        Mode::Torus => x.orbit_invariants() == y.orbit_invariants(),
        Mode::Su2 => x.su2_profile().unwrap().invariant_key() == y.su2_profile().unwrap().invariant_key(),
    }
}

fn criterion_equivalence_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    let mut triples = 0;
    let mut positives = 0;
    for i in 0..300 {
        let mode = if i % 2 == 0 { Mode::Torus } else { Mode::Su2 };
        let table = symbols(rng.random_range(0..=2));
        let n = rng.random_range(2..=4);
        let rho = random_vector(&mut rng, &table, n);
        let step = |from: &RotationVector, rng: &mut ChaCha8Rng| -> (RotationVector, bool) {
            if rng.random_bool(0.3) {
                return (random_vector(rng, &table, n), false);
            }
            let m = match mode {
                Mode::Torus => random_unimodular(rng, n, 8),
                Mode::Su2 => random_su2_certificate(rng, n - 1, 8).block_matrix(),
            };
            (from.apply_matrix(&m).unwrap(), true)
        };
        let (rho1, known1) = step(&rho, &mut rng);
        let (rho2, known2) = step(&rho1, &mut rng);
        triples += 1;

        let id = decide(&mode, &rho, &rho);
        let is_identity = match &id {
            Some(Certificate::Torus(c)) => *c == TorusCertificate::identity(n),
            Some(Certificate::Su2(c)) => *c == Su2Certificate::identity(n - 1),
            None => false,
        };
        if !is_identity {
            violations += 1;
        }

        let vs = [&rho, &rho1, &rho2];
        let mut decisions = [[None, None, None], [None, None, None], [None, None, None]];
        for (a, x) in vs.iter().enumerate() {
            for (b, y) in vs.iter().enumerate() {
                if a != b {
                    decisions[a][b] = decide(&mode, x, y);
                }
            }
        }
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                if let Some(c) = &decisions[a][b] {
                    positives += 1;
                    if !verify_certificate(c, vs[a], vs[b])
                        || !verify_certificate(&invert(c), vs[b], vs[a])
                        || decisions[b][a].is_none()
                        || !invariants_agree(&mode, vs[a], vs[b])
                    {
                        violations += 1;
                    }
                }
                for c in 0..3 {
                    if c == a || c == b {
                        continue;
                    }
                    if let (Some(x), Some(y)) = (&decisions[a][b], &decisions[b][c]) {
                        if decisions[a][c].is_none() || !verify_certificate(&compose(x, y), vs[a], vs[c]) {
                            violations += 1;
                        }
                    }
                }
            }
        }
        if (known1 && decisions[0][1].is_none()) || (known2 && decisions[1][2].is_none()) {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{triples} triples, {positives} positive decisions, {violations} violations"),
    )
}

fn criterion_cli() -> Outcome {
    let failures: Vec<String> = common::CASES
        .iter()
        .filter_map(|c| common::check_case(c).err())
        .collect();
    for f in &failures {
        eprintln!("  {f}");
    }
    outcome(
        failures.is_empty(),
        format!("{} golden cases, {} failures", common::CASES.len(), failures.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("torus oracle agreement", criterion_torus_oracle),
        ("su2 x T^1 oracle agreement", criterion_su2_oracle),
        ("numeric sufficiency of certificates", criterion_numeric_sufficiency),
        ("rank invariance and dichotomy", criterion_invariance),
        ("component count", criterion_components),
        ("normal-form soundness", criterion_normal_form),
        ("certificate soundness and equivalence laws", criterion_equivalence_laws),
        ("cli contract", criterion_cli),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        all &= result.passed;
        println!(
            "acceptance {} {}: {} ({}; {:.1}s)",
            i + 1,
            name,
            if result.passed { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
