//! Pipelines behind each instance kind, and the seeded random suite.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::builtin::{frobenius_chain, frobenius_map, generating_sequence_tower};
use super::instance::{self, GradedSpec, Instance, Kind, MonoidSpec, MonomialSpec, PairSpec, SeriesSpec};
use super::report::{coords, int_json, LevelSummary, Report};
use super::series::{transcendental_check, SeriesOrder};
use super::{default_seed, CorpusError, Result};
use crate::graded::{
    finiteness_test, finiteness_tower, integrality_test, p_power_inclusion, substitution_check, GradedExtension,
    Integrality, RewriteOutcome, ValueDerivation, GENERAL_RING_CAVEAT,
};
use crate::lattice::IntMatrix;
use crate::monoid::{group_index, par_points, ModuleStructure, TowerReport, TowerVerdict};
use crate::values::{GroupElement, GroupIndex, OrderedGroup};
use crate::verifier::{
    analyze_with_bound, kummer_symmetric_certificate, min_formula_check, MonomialExtension, VerifierError,
    DEFAULT_COVER_BOUND,
};

/// Command-line overrides applied on top of an instance.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// cover-check bound for monomial extensions, degree bound for series
    pub bound: Option<u32>,
    /// replaces the series truncation list
    pub truncation: Option<usize>,
    pub seed: Option<u64>,
}

impl RunOptions {
    fn seed(&self, own: Option<u64>) -> u64 {
        self.seed.or(own).unwrap_or_else(default_seed)
    }
}

/// Run the pipeline for the instance's kind and compare against its
/// expected block.
pub fn run_instance(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let mut r = match &inst.kind {
        Kind::Monoid(s) => run_monoid(s)?,
        Kind::GradedExtension(s) => run_graded(s)?,
        Kind::MonomialExtension(s) => run_monomial(s, opts)?,
        Kind::PresentationPair(s) => run_pair(s)?,
        Kind::SeriesValuation(s) => run_series(s, opts)?,
    };
    r.name = inst.name.clone();
    r.kind = inst.kind.tag().to_string();
    if let Some(exp) = &inst.expected {
        r.compare(exp);
    }
    Ok(r)
}

fn run_monoid(spec: &MonoidSpec) -> Result<Report> {
    let mut r = Report::new("", "monoid");
    let mut members = Vec::new();
    let mut sat = Vec::new();
    for t in &spec.targets {
        let m = spec.monoid.member(t)?;
        members.push(match &m {
            Some(c) => Value::from(c.iter().map(int_json).collect::<Vec<_>>()),
            None => Value::Null,
        });
        sat.push(match spec.monoid.saturation_member(t)? {
            Some((k, _)) => int_json(&k),
            None => Value::Null,
        });
    }
    r.detail("member_coefficients", members.clone());
    r.detail("members", members.iter().map(|m| !m.is_null()).collect::<Vec<_>>());
    r.detail("saturation_multipliers", sat);
    r.verdict = "ok".into();
    if let Some(vs) = &spec.par {
        let pb = par_points(vs)?;
        let cover = pb.cover_check(DEFAULT_COVER_BOUND);
        let disjoint = pb.overlapping_pair().is_none();
        r.e = Some(int_json(&pb.det().abs()));
        r.detail("par_points", pb.len());
        r.detail("par_disjoint", disjoint);
        r.detail("par_cover_ok", cover.ok());
        if BigInt::from(pb.len()) != pb.det().abs() || !disjoint || !cover.ok() {
            r.verdict = "failed".into();
        }
    }
    Ok(r)
}

fn level_summary(level: u32, m: &ModuleStructure) -> LevelSummary {
    match m {
        ModuleStructure::Finite { gens } => LevelSummary {
            level,
            count: Some(gens.len()),
            generators: gens.iter().map(coords).collect(),
        },
        ModuleStructure::NotFinite { .. } => LevelSummary {
            level,
            count: None,
            generators: Vec::new(),
        },
    }
}

pub fn tower_verdict_name(v: &TowerVerdict) -> &'static str {
    match v {
        TowerVerdict::NotFinite => "not_finite",
        TowerVerdict::Stable => "stable",
        TowerVerdict::Inconclusive => "inconclusive",
    }
}

fn tower_levels(t: &TowerReport) -> Vec<LevelSummary> {
    t.levels.iter().map(|l| level_summary(l.level, &l.structure)).collect()
}

fn p_power_all(levels: &[(u32, GradedExtension)], p: u32, n: u32) -> Result<bool> {
    for (_, ext) in levels {
        if !p_power_inclusion(ext, p, n)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

fn run_graded(spec: &GradedSpec) -> Result<Report> {
    let mut r = Report::new("", "graded_extension");
    r.notes.push(GENERAL_RING_CAVEAT.into());
    if let Some(s) = &spec.surrogate {
        r.detail("surrogate", s.clone());
        r.notes.push(format!("surrogate data: {s}"));
    }
    let mut integral = true;
    for (level, ext) in &spec.levels {
        if let Integrality::NotIntegral { witness } = integrality_test(ext)? {
            r.verdict = "not_integral".into();
            r.witnesses.push(coords(&witness));
            if spec.tower {
                r.detail("not_integral_level", *level);
            }
            integral = false;
            break;
        }
    }
    r.detail("integral", integral);
    let mut indices = Vec::new();
    for (_, ext) in &spec.levels {
        indices.push(match group_index(&ext.s2, &ext.s1)? {
            GroupIndex::Finite(e) => int_json(&e),
            GroupIndex::Infinite => Value::from("infinite"),
        });
    }
    if spec.tower {
        r.detail("level_e", indices);
    } else {
        let e = indices.pop().expect("one level");
        if let Some(n) = e.as_i64() {
            r.detail("qf_degree", n * spec.levels[0].1.f as i64);
        }
        r.e = Some(e);
    }
    for &(p, n) in &spec.p_power {
        r.detail(&format!("p_power_p{p}_n{n}"), p_power_all(&spec.levels, p, n)?);
    }
    if !integral {
        return Ok(r);
    }
    if spec.tower {
        let t = finiteness_tower(&spec.levels)?;
        r.levels = Some(tower_levels(&t));
        r.verdict = tower_verdict_name(&t.verdict).into();
    } else {
        let m = finiteness_test(&spec.levels[0].1)?;
        r.verdict = match &m {
            ModuleStructure::Finite { .. } => "finite".into(),
            ModuleStructure::NotFinite { evidence } => {
                r.notes.push(evidence.clone());
                "not_finite".into()
            }
        };
        r.levels = Some(vec![level_summary(0, &m)]);
    }
    Ok(r)
}

/// Random coefficient values in the smaller value group, at least one present.
fn random_coefficients(rng: &mut ChaCha8Rng, xs: &[GroupElement], e: usize) -> Result<Vec<Option<GroupElement>>> {
    let mut out = Vec::with_capacity(e);
    for _ in 0..e {
        if rng.gen_bool(0.25) {
            out.push(None);
            continue;
        }
        let mut v = xs[0].group().zero();
        for x in xs {
            let k: i64 = rng.gen_range(-3..=3);
            v = v.add(&x.scale_int(&BigInt::from(k)))?;
        }
        out.push(Some(v));
    }
    if out.iter().all(Option::is_none) {
        out[0] = Some(xs[0].group().zero());
    }
    Ok(out)
}

/// Unique minimizers over `trials` seeded coefficient assignments.
pub fn min_formula_trials(
    ext: &MonomialExtension,
    coset_values: &[GroupElement],
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = ext.x_values()?;
    let mut unique = 0;
    for _ in 0..trials {
        let c = random_coefficients(&mut rng, &xs, coset_values.len())?;
        match min_formula_check(ext, coset_values, &c) {
            Ok(_) => unique += 1,
            Err(VerifierError::NonUniqueMinimizer { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(unique)
}

fn run_monomial(spec: &MonomialSpec, opts: &RunOptions) -> Result<Report> {
    let mut r = Report::new("", "monomial_extension");
    let bound = opts.bound.unwrap_or(spec.bound);
    let aj = analyze_with_bound(&spec.ext, bound)?;
    r.e = Some(int_json(&aj.e));
    r.invariant_factors = Some(aj.invariant_factors.invariant_factors.iter().map(int_json).collect());
    r.coset_values = Some(aj.coset_values.iter().map(coords).collect());
    r.detail(
        "w_exponents",
        aj.w_exponents
            .iter()
            .map(|w| w.iter().map(int_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    r.detail("free_basis_ok", aj.free_basis_ok);
    r.detail("cosets_complete", aj.cosets_complete);
    r.detail("cover_disjoint", aj.cover_disjoint);
    r.detail("invariants_trivial_only", aj.invariants_trivial_only);
    r.detail("cover_bound", bound);
    r.notes.extend(aj.notes.iter().cloned());
    let mut ok = aj.all_ok();
    if spec.min_formula_trials > 0 {
        let seed = opts.seed(spec.seed);
        let unique = min_formula_trials(&spec.ext, &aj.coset_values, spec.min_formula_trials, seed)?;
        r.detail("min_formula_trials", spec.min_formula_trials);
        r.detail("min_formula_unique", unique);
        r.detail("seed", seed);
        ok &= unique == spec.min_formula_trials;
    }
    if let Some(k) = &spec.kummer {
        let cert = kummer_symmetric_certificate(&k.z, &spec.ext, k.strict)?;
        r.detail("kummer_r", cert.r);
        r.detail("kummer_inequalities_ok", cert.inequalities_ok);
        r.detail("kummer_equation_vanishes", cert.equation_vanishes);
        r.detail("kummer_cross_check_ok", cert.cross_check_ok);
        r.detail("kummer_equality_indices", cert.equality_indices.clone());
        r.detail("kummer_equation", cert.equation_string(&spec.names));
        r.detail(
            "kummer_s",
            cert.s_polys
                .iter()
                .map(|s| s.display_with(&spec.names))
                .collect::<Vec<_>>(),
        );
        ok &= cert.ok();
    }
    r.verdict = if ok { "verified" } else { "failed" }.into();
    Ok(r)
}

fn outcome_name(o: &RewriteOutcome) -> &'static str {
    match o {
        RewriteOutcome::Holds => "holds",
        RewriteOutcome::Fails { .. } => "fails",
        RewriteOutcome::Inconclusive { .. } => "inconclusive",
    }
}

fn rationals_json(v: &[num_rational::BigRational]) -> Value {
    Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn run_pair(spec: &PairSpec) -> Result<Report> {
    let mut r = Report::new("", "presentation_pair");
    match spec {
        PairSpec::Explicit { src, dst, map } => {
            let s = substitution_check(src, dst, map)?;
            r.verdict = outcome_name(&s.outcome).into();
            if let RewriteOutcome::Fails {
                relation,
                lhs_normal,
                rhs_normal,
            } = &s.outcome
            {
                r.witnesses.push(lhs_normal.iter().map(u64::to_string).collect());
                r.witnesses.push(rhs_normal.iter().map(u64::to_string).collect());
                r.detail("failed_relation", *relation);
            }
            if let RewriteOutcome::Inconclusive { reason } = &s.outcome {
                r.notes.push(reason.clone());
            }
            r.detail("rules", s.rules);
            r.detail("completed", s.completed);
            r.detail("src_values", rationals_json(&s.src_values));
            r.detail("dst_values", rationals_json(&s.dst_values));
        }
        PairSpec::FrobeniusChain {
            p,
            truncation,
            p_powers,
            tower_levels: levels,
        } => frobenius_pipeline(&mut r, *p, *truncation, p_powers, levels)?,
    }
    Ok(r)
}

/// Substitution `U_j -> X_j^p` on the chains as printed, then the
/// semigroup verdicts on the generating-sequence tower `p^2 b_j =
/// p^(2j-2) + b_(j-1)`, `S1 = p S2`.
fn frobenius_pipeline(r: &mut Report, p: u64, big_j: usize, p_powers: &[u32], levels: &[u32]) -> Result<()> {
    let src = frobenius_chain("U", p, big_j)?;
    let dst = frobenius_chain("X", p, big_j)?;
    let s = substitution_check(&src, &dst, &frobenius_map(p, big_j))?;
    r.verdict = outcome_name(&s.outcome).into();
    r.detail("rules", s.rules);
    r.detail("completed", s.completed);
    r.detail("src_values", rationals_json(&s.src_values));
    r.detail("dst_values", rationals_json(&s.dst_values));

    let g = OrderedGroup::rationals();
    let p32 = u32::try_from(p).map_err(|_| CorpusError::Input("p too large".into()))?;
    // the relations as printed give values in (1/p^2) Z at every level
    if let ValueDerivation::Unique(vals) = dst.derive_values() {
        let mut lit = Vec::new();
        for &lv in levels.iter().filter(|&&l| (l as usize) <= big_j) {
            let gens = vals[..=lv as usize]
                .iter()
                .map(|b| g.element(vec![b.clone()]))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let s2 = crate::monoid::AffineMonoid::new(&g, gens)?;
            let s1 = s2.scaled(&BigInt::from(p))?;
            lit.push((lv, GradedExtension::new(s1, s2, 1, "as printed")?));
        }
        if lit.len() >= 2 {
            let t = finiteness_tower(&lit)?;
            let counts: Vec<Value> = t
                .counts()
                .into_iter()
                .map(|c| c.map_or(Value::Null, Value::from))
                .collect();
            r.detail("printed_relations_counts", counts);
            r.detail("printed_relations_tower", tower_verdict_name(&t.verdict));
            if t.verdict != TowerVerdict::NotFinite {
                r.notes.push(
                    "with the relations U_j = U_0^(p^(2j-2)) U_(j-1) as printed the value group is cyclic and the \
                     module counts do not grow; semigroup verdicts use U_j^(p^2) = U_0^(p^(2j-2)) U_(j-1)"
                        .into(),
                );
            }
        }
    }
    if levels.is_empty() {
        return Ok(());
    }
    let tower = generating_sequence_tower(&g, p * p, p, levels, 1, "generating sequence")?;
    for &n in p_powers {
        r.detail(&format!("p_power_n{n}"), p_power_all(&tower, p32, n)?);
    }
    let mut integral = true;
    for (_, ext) in &tower {
        integral &= integrality_test(ext)?.is_integral();
    }
    r.detail("integral", integral);
    let t = finiteness_tower(&tower)?;
    r.levels = Some(tower_levels(&t));
    r.detail("tower", tower_verdict_name(&t.verdict));
    r.notes.push(GENERAL_RING_CAVEAT.into());
    Ok(())
}

fn order_json(o: &SeriesOrder) -> Value {
    match o {
        SeriesOrder::Exact(k) => Value::from(*k),
        SeriesOrder::BeyondTruncation { precision } => json!({ "beyond_truncation": precision }),
    }
}

fn run_series(spec: &SeriesSpec, opts: &RunOptions) -> Result<Report> {
    let mut r = Report::new("", "series_valuation");
    let seed = opts.seed(spec.seed);
    let bound = opts.bound.map(|b| b as usize).unwrap_or(spec.bound);
    let truncations = match opts.truncation {
        Some(n) => vec![n],
        None => spec.truncations.clone(),
    };
    instance::validate_series(&truncations, bound)?;
    let checks: Vec<_> = truncations
        .par_iter()
        .map(|&n| transcendental_check(seed, n, bound.min(n - 2)))
        .collect::<std::result::Result<_, _>>()
        .map_err(CorpusError::Compute)?;
    let mut ok = true;
    let mut per = Vec::new();
    for c in &checks {
        ok &= c.ok();
        per.push(json!({
            "truncation": c.truncation,
            "degree_bound": c.bound,
            "semigroup_prefix": c.semigroup_prefix(),
            "ranks_agree": c.ranks_agree(),
            "r_ranks": c.r_ranks,
            "s_ranks": c.s_ranks,
            "p_infinity": order_json(&c.p_infinity),
            "branch_relation": order_json(&c.branch_relation),
            "y_order": order_json(&c.y_order),
        }));
    }
    r.detail("seed", seed);
    r.detail("bound", bound);
    r.detail("truncations", truncations.clone());
    r.detail("semigroup_prefix", checks.iter().all(|c| c.semigroup_prefix()));
    r.detail("ranks_agree", checks.iter().all(|c| c.ranks_agree()));
    r.detail("p_infinity_flag", checks.iter().all(|c| c.p_infinity_flag()));
    r.detail("per_truncation", per);
    r.notes.push(format!(
        "graded ranks are compared in degrees up to min({bound}, N - 2) at truncation N"
    ));
    r.notes.push(format!(
        "p(x) is a seeded rational stream; all statements hold at truncations {truncations:?}, \
         transcendence is not certified"
    ));
    r.verdict = if ok { "isomorphic" } else { "not_isomorphic" }.into();
    Ok(r)
}

/// Basis of the value groups used by the random suite.
pub const RAND_BASIS: [&str; 4] = ["rat", "sqrt:2", "sqrt:3", "sqrt:5"];
pub const MAX_RAND_DIMS: usize = 4;
pub const MAX_RAND_COUNT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub matrix: Vec<Vec<i64>>,
    pub y_values: Vec<Vec<i64>>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandSummary {
    pub dims: usize,
    pub max_entry: u32,
    pub count: usize,
    pub seed: u64,
    pub analyzed: usize,
    pub singular_skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl RandSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.analyzed == self.count
    }
}

/// One generated instance: a nonsingular matrix and integer coordinates of
/// the `y` values in [`RAND_BASIS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomTrial {
    pub matrix: Vec<Vec<i64>>,
    pub y_values: Vec<Vec<i64>>,
}

impl RandomTrial {
    pub fn extension(&self) -> std::result::Result<MonomialExtension, VerifierError> {
        let dims = self.matrix.len();
        let g = OrderedGroup::from_tags(0, &RAND_BASIS[..dims])?;
        let y = self
            .y_values
            .iter()
            .map(|c| g.int_element(c))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MonomialExtension::new(IntMatrix::from_rows(&self.matrix)?, y, None)
    }
}

/// `count` nonsingular trials from the seed, and the number of singular
/// matrices drawn and discarded. Gives up after `50 (count + 1)` draws.
pub fn random_trials(dims: usize, max_entry: u32, count: usize, seed: u64) -> Result<(Vec<RandomTrial>, usize)> {
    if dims == 0 || dims > MAX_RAND_DIMS {
        return Err(CorpusError::Input(format!("dims must lie in 1..={MAX_RAND_DIMS}")));
    }
    if count > MAX_RAND_COUNT {
        return Err(CorpusError::Input(format!("count must be at most {MAX_RAND_COUNT}")));
    }
    if max_entry > 1000 {
        return Err(CorpusError::Input("max-entry must be at most 1000".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = Vec::with_capacity(count);
    let mut skipped = 0;
    let mut draws = 0;
    while trials.len() < count && draws < 50 * (count + 1) {
        draws += 1;
        let matrix: Vec<Vec<i64>> = (0..dims)
            .map(|_| (0..dims).map(|_| rng.gen_range(0..=max_entry as i64)).collect())
            .collect();
        // triangular with positive diagonal, hence independent and positive
        let y_values: Vec<Vec<i64>> = (0..dims)
            .map(|j| {
                (0..dims)
                    .map(|k| match k.cmp(&j) {
                        std::cmp::Ordering::Less => rng.gen_range(0..=3),
                        std::cmp::Ordering::Equal => rng.gen_range(1..=5),
                        std::cmp::Ordering::Greater => 0,
                    })
                    .collect()
            })
            .collect();
        let det = crate::lattice::det(&IntMatrix::from_rows(&matrix)?)?;
        if det == BigInt::from(0) {
            skipped += 1;
            continue;
        }
        trials.push(RandomTrial { matrix, y_values });
    }
    Ok((trials, skipped))
}

/// Run `analyze` on seeded random extensions in parallel; results are
/// merged in trial order so the summary depends only on the arguments.
pub fn rand_suite(dims: usize, max_entry: u32, count: usize, seed: u64) -> Result<RandSummary> {
    let (trials, skipped) = random_trials(dims, max_entry, count, seed)?;
    let outcomes: Vec<Option<Vec<String>>> = trials
        .par_iter()
        .map(
            |t| match t.extension().and_then(|x| analyze_with_bound(&x, DEFAULT_COVER_BOUND)) {
                Ok(rep) if rep.all_ok() => None,
                Ok(rep) => Some(rep.notes),
                Err(e) => Some(vec![e.to_string()]),
            },
        )
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_some()).count();
    let first_counterexample = outcomes.iter().enumerate().find_map(|(i, o)| {
        o.as_ref().map(|notes| Counterexample {
            trial: i,
            matrix: trials[i].matrix.clone(),
            y_values: trials[i].y_values.clone(),
            notes: notes.clone(),
        })
    });
    Ok(RandSummary {
        dims,
        max_entry,
        count,
        seed,
        analyzed: trials.len(),
        singular_skipped: skipped,
        passed: trials.len() - failed,
        failed,
        first_counterexample,
    })
}
