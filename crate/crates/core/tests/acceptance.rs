//! One pass/fail line per acceptance criterion.

use std::time::{Duration, Instant};

use gradval::corpus::builtin::{frobenius_chain, frobenius_map, generating_sequence_tower};
use gradval::corpus::harness::{min_formula_trials, random_trials, RandomTrial};
use gradval::corpus::series::{transcendental_check, SeriesOrder};
use gradval::corpus::{run_example, RunOptions};
use gradval::graded::{
    finiteness_tower, integrality_test, p_power_inclusion, substitution_check, GradedExtension, Integrality,
};
use gradval::lattice::{quotient_structure, IntMatrix};
use gradval::monoid::{par_points, AffineMonoid, TowerVerdict};
use gradval::values::{subgroup_index, GroupIndex, OrderedGroup};
use gradval::verifier::poly::RatPoly;
use gradval::verifier::{analyze, character_action, kummer_symmetric_certificate, MonomialExtension};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const COVER_BOX: i64 = 6;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    outcome: Outcome,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, budget_secs: u64, f: impl FnOnce() -> Outcome) -> Criterion {
    let start = Instant::now();
    let outcome = f();
    Criterion {
        id,
        name,
        budget: Duration::from_secs(budget_secs),
        outcome,
        elapsed: start.elapsed(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

/// Inverse times det: the adjugate, by cofactors.
fn adj_i64(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * det_i64(&minor);
        }
    }
    adj
}

/// Coordinates of `p` in the basis given by the rows of `m`, times `det`.
fn coords_times_det(m: &[Vec<i64>], adj: &[Vec<i64>], p: &[i64]) -> Vec<i64> {
    // p = c M  =>  c = p M^-1 = p adj / det
    let n = m.len();
    (0..n).map(|j| (0..n).map(|k| p[k] * adj[k][j]).sum()).collect()
}

fn box_points(dim: usize, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn seeded_trials() -> Result<Vec<RandomTrial>, String> {
    let mut all = Vec::new();
    for (dims, seed) in [(2, SEED), (3, SEED + 1)] {
        let (t, _) = random_trials(dims, 5, 100, seed).map_err(|e| e.to_string())?;
        ensure(t.len() == 100, || format!("only {} trials for s = {dims}", t.len()))?;
        all.extend(t);
    }
    Ok(all)
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn criterion_1(trials: &[RandomTrial]) -> Outcome {
    let mut checked = 0usize;
    for (t, trial) in trials.iter().enumerate() {
        let m = &trial.matrix;
        let det = det_i64(m).abs();
        let pb = par_points(&to_big(m)).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(pb.len() as i64 == det, || {
            format!("trial {t}: {} points, |det| {det}", pb.len())
        })?;
        ensure(pb.overlapping_pair().is_none(), || {
            format!("trial {t}: translates meet")
        })?;
        let adj = adj_i64(m);
        let sd = det_i64(m);
        let pts: Vec<Vec<i64>> = pb
            .points()
            .iter()
            .map(|p| p.iter().map(|x| i64::try_from(x).expect("small")).collect())
            .collect();
        for q in box_points(m.len(), COVER_BOX) {
            let c = coords_times_det(m, &adj, &q);
            if c.iter().any(|x| x * sd.signum() < 0) {
                continue;
            }
            let hits = pts
                .iter()
                .filter(|w| {
                    let d: Vec<i64> = q.iter().zip(w.iter()).map(|(a, b)| a - b).collect();
                    coords_times_det(m, &adj, &d).iter().all(|x| x % sd == 0 && x / sd >= 0)
                })
                .count();
            ensure(hits == 1, || format!("trial {t}: {q:?} lies in {hits} translates"))?;
            checked += 1;
        }
        ensure(pb.cover_check(COVER_BOX as u32).ok(), || {
            format!("trial {t}: cover_check disagrees")
        })?;
    }
    Ok(format!(
        "{} matrices, {checked} saturation points covered once",
        trials.len()
    ))
}

fn criterion_2(trials: &[RandomTrial]) -> Outcome {
    for (t, trial) in trials.iter().enumerate() {
        let det = BigInt::from(det_i64(&trial.matrix).abs());
        let a = IntMatrix::from_rows(&trial.matrix).map_err(|e| e.to_string())?;
        let q = quotient_structure(&a).map_err(|e| e.to_string())?;
        let ext = trial.extension().map_err(|e| e.to_string())?;
        let index =
            subgroup_index(&ext.x_values().map_err(|e| e.to_string())?, ext.y_values()).map_err(|e| e.to_string())?;
        let lambda = par_points(&to_big(&trial.matrix)).map_err(|e| e.to_string())?.len();
        ensure(
            q.order == det && index == GroupIndex::Finite(det.clone()) && BigInt::from(lambda) == det,
            || {
                format!(
                    "trial {t}: det {det}, quotient {}, index {index}, |Lambda| {lambda}",
                    q.order
                )
            },
        )?;
    }
    Ok(format!(
        "{} matrices: |det| = quotient order = index = |Lambda|",
        trials.len()
    ))
}

fn criterion_3() -> Outcome {
    let g = OrderedGroup::from_tags(0, &["rat", "pi"]).map_err(|e| e.to_string())?;
    let s_r = AffineMonoid::from_int_coords(&g, &[vec![1, 1], vec![0, 1]]).map_err(|e| e.to_string())?;
    let s_s = AffineMonoid::from_int_coords(&g, &[vec![1, 0], vec![0, 1]]).map_err(|e| e.to_string())?;
    let ext = GradedExtension::new(s_r, s_s, 1, "ex1").map_err(|e| e.to_string())?;
    let x = g.int_element(&[1, 0]).map_err(|e| e.to_string())?;
    match integrality_test(&ext).map_err(|e| e.to_string())? {
        Integrality::NotIntegral { witness } if witness == x => {}
        other => return Err(format!("expected NotIntegral at nu*(x), got {other:?}")),
    }
    // a (1 + pi) + b pi = m has no solution with a, b >= 0
    for m in 1..=12i64 {
        for a in 0..=3 * m {
            for b in 0..=3 * m {
                ensure(!(a == m && a + b == 0), || format!("{m} nu*(x) = {a}(1+pi) + {b} pi"))?;
            }
        }
    }
    let r = run_example("ex1", &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.verdict == "not_integral", || {
        format!("{:?}", r.mismatches)
    })?;
    Ok("NotIntegral with witness nu*(x); no multiple m <= 12 in S^R".into())
}

fn criterion_4() -> Outcome {
    let g = OrderedGroup::rationals();
    let tower = generating_sequence_tower(&g, 3, 3, &[1, 2, 3], 1, "surrogate").map_err(|e| e.to_string())?;
    for (level, ext) in &tower {
        ensure(integrality_test(ext).map_err(|e| e.to_string())?.is_integral(), || {
            format!("level {level} not integral")
        })?;
    }
    let r = finiteness_tower(&tower).map_err(|e| e.to_string())?;
    ensure(r.counts() == vec![Some(3), Some(9), Some(27)], || {
        format!("counts {:?}", r.counts())
    })?;
    ensure(r.verdict == TowerVerdict::NotFinite, || {
        format!("verdict {:?}", r.verdict)
    })?;
    let ex = run_example("ex2", &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(ex.passed(), || format!("{:?}", ex.mismatches))?;
    Ok("integral at levels 1-3, counts 3, 9, 27, NotFinite (surrogate)".into())
}

fn criterion_5() -> Outcome {
    let j = 4;
    let mut parts = Vec::new();
    for p in [2u64, 3] {
        let src = frobenius_chain("U", p, j).map_err(|e| e.to_string())?;
        let dst = frobenius_chain("X", p, j).map_err(|e| e.to_string())?;
        let s = substitution_check(&src, &dst, &frobenius_map(p, j)).map_err(|e| e.to_string())?;
        ensure(s.holds(), || format!("p = {p}: substitution {:?}", s.outcome))?;
        let g = OrderedGroup::rationals();
        let tower = generating_sequence_tower(&g, p * p, p, &[1, 2, 3, 4], 1, "gs").map_err(|e| e.to_string())?;
        for (level, ext) in &tower {
            for n in [1, 2] {
                let r = p_power_inclusion(ext, p as u32, n).map_err(|e| e.to_string())?;
                ensure(r.holds, || format!("p = {p}, level {level}: p^{n} inclusion fails"))?;
            }
        }
        let counts: Vec<usize> = finiteness_tower(&tower)
            .map_err(|e| e.to_string())?
            .counts()
            .into_iter()
            .map(|c| c.ok_or("not finitely generated"))
            .collect::<Result<_, _>>()?;
        ensure(counts.windows(2).all(|w| w[0] < w[1]), || {
            format!("p = {p}: counts {counts:?}")
        })?;
        parts.push(format!("p={p} counts {counts:?}"));
    }
    Ok(format!(
        "substitution holds, p^1 and p^2 inclusion hold; {}",
        parts.join(", ")
    ))
}

fn criterion_6() -> Outcome {
    let seed = SEED;
    let c = transcendental_check(seed, 64, 20)?;
    ensure(c.semigroup_prefix(), || format!("S^R misses a degree: {:?}", c.r_ranks))?;
    ensure(c.ranks_agree(), || format!("ranks R {:?} S {:?}", c.r_ranks, c.s_ranks))?;
    for n in [16, 32, 64] {
        let c = transcendental_check(seed, n, 12.min(n - 2))?;
        ensure(c.p_infinity == SeriesOrder::BeyondTruncation { precision: n }, || {
            format!("N = {n}: y - p(x) has order {:?}", c.p_infinity)
        })?;
    }
    Ok("S^R contains 0..20, ranks 1 = 1 per degree, y - p(x) beyond truncation at 16, 32, 64".into())
}

fn unit_ext(rows: &[Vec<i64>]) -> Result<MonomialExtension, String> {
    let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).map_err(|e| e.to_string())?;
    let y = vec![
        g.int_element(&[1, 0]).map_err(|e| e.to_string())?,
        g.int_element(&[0, 1]).map_err(|e| e.to_string())?,
    ];
    let a = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
    MonomialExtension::new(a, y, None).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    for rows in [vec![vec![2, 0], vec![0, 2]], vec![vec![2, 1], vec![1, 2]]] {
        let ext = unit_ext(&rows)?;
        let r = analyze(&ext).map_err(|e| e.to_string())?;
        ensure(r.all_ok(), || format!("{rows:?}: {:?}", r.notes))?;
        let chi = character_action(&ext, &r.w_exponents).map_err(|e| e.to_string())?;
        ensure(chi.invariant_indices == vec![0], || {
            format!("{rows:?}: invariants {:?}", chi.invariant_indices)
        })?;
    }
    // every 2x2 matrix with entries in 0..=3 (so e <= 9)
    let mut n = 0;
    for code in 0..256u32 {
        let e: Vec<i64> = (0..4).map(|k| ((code >> (2 * k)) & 3) as i64).collect();
        let rows = vec![vec![e[0], e[1]], vec![e[2], e[3]]];
        let d = det_i64(&rows).abs();
        if d == 0 || d > 12 {
            continue;
        }
        let r = analyze(&unit_ext(&rows)?).map_err(|e| e.to_string())?;
        ensure(r.all_ok(), || format!("{rows:?}: {:?}", r.notes))?;
        n += 1;
    }
    // every sublattice of Z^2 with index e <= 12, once each, by its Hermite form
    let mut lattices = 0;
    for e in 1..=12i64 {
        for a in (1..=e).filter(|a| e % a == 0) {
            let d = e / a;
            for b in 0..d {
                let rows = vec![vec![a, b], vec![0, d]];
                let r = analyze(&unit_ext(&rows)?).map_err(|e| e.to_string())?;
                ensure(r.all_ok() && r.coset_values.len() as i64 == e, || {
                    format!("{rows:?}: {:?}", r.notes)
                })?;
                lattices += 1;
            }
        }
    }
    ensure(lattices == 127, || format!("{lattices} sublattices enumerated"))?;
    for name in ["thm2_diag", "thm2_det3"] {
        let r = run_example(name, &RunOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.mismatches))?;
    }
    Ok(format!(
        "diag(2,2) and [[2,1],[1,2]] verified; {n} small matrices and all {lattices} sublattices of index <= 12"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).map_err(|e| e.to_string())?;
    let one = BigRational::from_integer(1.into());
    let z = RatPoly::from_terms(2, &[(one.clone(), vec![1, 0]), (one, vec![0, 1])]);
    for _ in 0..5 {
        let y1 = g
            .int_element(&[rng.gen_range(1..=4), rng.gen_range(0..=3)])
            .map_err(|e| e.to_string())?;
        let y2 = g
            .int_element(&[rng.gen_range(0..=3), rng.gen_range(1..=4)])
            .map_err(|e| e.to_string())?;
        let ext = MonomialExtension::new(IntMatrix::diagonal(&[2i64, 2]), vec![y1.clone(), y2.clone()], None)
            .map_err(|e| e.to_string())?;
        let cert = kummer_symmetric_certificate(&z, &ext, false).map_err(|e| e.to_string())?;
        ensure(cert.inequalities_ok, || format!("y = {y1}, {y2}: inequality fails"))?;
        ensure(cert.equation_vanishes, || {
            format!("y = {y1}, {y2}: equation does not vanish")
        })?;
        ensure(cert.cross_check_ok, || format!("y = {y1}, {y2}: expansions disagree"))?;
    }
    Ok("5 seeded valuations: nu(S_i) >= i nu(z), equation vanishes, expansions agree".into())
}

fn criterion_9() -> Outcome {
    for rows in [vec![vec![2, 0], vec![0, 2]], vec![vec![2, 1], vec![1, 2]]] {
        let ext = unit_ext(&rows)?;
        let r = analyze(&ext).map_err(|e| e.to_string())?;
        let unique = min_formula_trials(&ext, &r.coset_values, 1000, SEED).map_err(|e| e.to_string())?;
        ensure(unique == 1000, || format!("{rows:?}: {unique}/1000 unique"))?;
    }
    Ok("1000/1000 unique minimizers for both instances".into())
}

fn main() {
    let trials = seeded_trials();
    let mut results = Vec::new();
    match &trials {
        Ok(t) => {
            results.push(run(1, "parallelepiped count", 30, || criterion_1(t)));
            results.push(run(2, "index agreement", 30, || criterion_2(t)));
        }
        Err(e) => {
            results.push(run(1, "parallelepiped count", 30, || Err(e.clone())));
            results.push(run(2, "index agreement", 30, || Err(e.clone())));
        }
    }
    results.push(run(3, "ex1 not integral", 1, criterion_3));
    results.push(run(4, "ex2 surrogate tower", 5, criterion_4));
    results.push(run(5, "ex3 inseparable", 10, criterion_5));
    results.push(run(6, "ex4 series model", 10, criterion_6));
    results.push(run(7, "monomial extension verifier", 5, criterion_7));
    results.push(run(8, "kummer certificate", 2, criterion_8));
    results.push(run(9, "min formula", 5, criterion_9));

    let mut failed = 0;
    for c in &results {
        let over = c.elapsed > c.budget;
        let (tag, msg) = match (&c.outcome, over) {
            (Ok(m), false) => ("PASS", m.clone()),
            (Ok(m), true) => ("FAIL", format!("{m}; over budget {:?}", c.budget)),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} criterion {} ({}) [{:.2}s]: {msg}",
            c.id,
            c.name,
            c.elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
