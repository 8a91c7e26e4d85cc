//! The `gradval-instance/1` file format: parsing and validation into typed
//! instances. Field names are documented in `docs/instance-format.md`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use super::builtin;
use super::{CorpusError, Result};
use crate::graded::{BinomialPresentation, GradedExtension, Monomial, Relation};
use crate::lattice::IntMatrix;
use crate::monoid::AffineMonoid;
use crate::values::{BasisReal, GroupElement, OrderedGroup, DEFAULT_MAX_PRECISION_BITS};
use crate::verifier::poly::RatPoly;
use crate::verifier::{MonomialExtension, DEFAULT_COVER_BOUND};

pub const INSTANCE_FORMAT: &str = "gradval-instance/1";

/// Integer or `"a/b"` string.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    pub fn to_rational(&self) -> std::result::Result<BigRational, String> {
        match self {
            RatLit::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            RatLit::Str(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("{s:?} is not an integer or a/b rational");
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("{s:?} has a zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub verdict: Option<String>,
    pub witness: Option<Vec<RatLit>>,
    pub e: Option<u64>,
    pub invariant_factors: Option<Vec<u64>>,
    pub counts: Option<Vec<usize>>,
    #[serde(default)]
    pub details: BTreeMap<String, toml::Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format: String,
    kind: String,
    name: Option<String>,
    description: Option<String>,
    group: Option<RawGroup>,
    monoid: Option<RawMonoid>,
    graded_extension: Option<RawGraded>,
    monomial_extension: Option<RawMonomial>,
    presentation_pair: Option<RawPair>,
    series_valuation: Option<RawSeries>,
    expected: Option<Expected>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawBasis {
    Tag(String),
    Custom { name: String, intervals: Vec<[RatLit; 2]> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[serde(default)]
    lex_prefix: usize,
    #[serde(default)]
    basis: Vec<RawBasis>,
    max_precision_bits: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    gens: Vec<Vec<RatLit>>,
    #[serde(default)]
    targets: Vec<Vec<RatLit>>,
    par: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPPower {
    p: u32,
    n: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    level: u32,
    s1: Vec<Vec<RatLit>>,
    s2: Vec<Vec<RatLit>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    name: String,
    q: u64,
    multiplier: u64,
    levels: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraded {
    s1: Option<Vec<Vec<RatLit>>>,
    s2: Option<Vec<Vec<RatLit>>>,
    f: Option<u32>,
    label: Option<String>,
    #[serde(default)]
    p_power: Vec<RawPPower>,
    surrogate: Option<String>,
    levels: Option<Vec<RawLevel>>,
    family: Option<RawFamily>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: RatLit,
    exponents: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKummer {
    z: Vec<RawTerm>,
    #[serde(default)]
    strict: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    matrix: Vec<Vec<i64>>,
    y_values: Vec<Vec<RatLit>>,
    unit_flags: Option<Vec<bool>>,
    names: Option<Vec<String>>,
    bound: Option<u32>,
    min_formula_trials: Option<usize>,
    seed: Option<u64>,
    kummer: Option<RawKummer>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    lhs: Vec<u64>,
    rhs: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    vars: Vec<String>,
    values: Option<Vec<RatLit>>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    family: Option<String>,
    p: Option<u64>,
    truncation: Option<usize>,
    #[serde(default)]
    p_powers: Vec<u32>,
    #[serde(default)]
    tower_levels: Vec<u32>,
    src: Option<RawPresentation>,
    dst: Option<RawPresentation>,
    map: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    seed: Option<u64>,
    truncations: Option<Vec<usize>>,
    bound: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub description: Option<String>,
    pub kind: Kind,
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug)]
pub enum Kind {
    Monoid(MonoidSpec),
    GradedExtension(GradedSpec),
    MonomialExtension(MonomialSpec),
    PresentationPair(PairSpec),
    SeriesValuation(SeriesSpec),
}

impl Kind {
    pub fn tag(&self) -> &'static str {
        match self {
            Kind::Monoid(_) => "monoid",
            Kind::GradedExtension(_) => "graded_extension",
            Kind::MonomialExtension(_) => "monomial_extension",
            Kind::PresentationPair(_) => "presentation_pair",
            Kind::SeriesValuation(_) => "series_valuation",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonoidSpec {
    pub monoid: AffineMonoid,
    pub targets: Vec<GroupElement>,
    pub par: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug)]
pub struct GradedSpec {
    /// one entry for a single extension; a tower otherwise
    pub levels: Vec<(u32, GradedExtension)>,
    pub tower: bool,
    /// `(p, n)` pairs for `p_power_inclusion`
    pub p_power: Vec<(u32, u32)>,
    pub surrogate: Option<String>,
}

#[derive(Clone, Debug)]
pub struct KummerSpec {
    pub z: RatPoly,
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct MonomialSpec {
    pub ext: MonomialExtension,
    pub names: Vec<String>,
    pub bound: u32,
    pub min_formula_trials: usize,
    pub seed: Option<u64>,
    pub kummer: Option<KummerSpec>,
}

#[derive(Clone, Debug)]
pub enum PairSpec {
    Explicit {
        src: BinomialPresentation,
        dst: BinomialPresentation,
        map: Vec<Monomial>,
    },
    /// `U_j -> X_j^p` between the chains of Example-3 type, with the
    /// semigroup checks on the generating-sequence tower
    FrobeniusChain {
        p: u64,
        truncation: usize,
        p_powers: Vec<u32>,
        tower_levels: Vec<u32>,
    },
}

#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub seed: Option<u64>,
    pub truncations: Vec<usize>,
    pub bound: usize,
}

pub const DEFAULT_TRUNCATIONS: [usize; 3] = [16, 32, 64];
pub const DEFAULT_SERIES_BOUND: usize = 20;

fn input(msg: impl Into<String>) -> CorpusError {
    CorpusError::Input(msg.into())
}

fn field_err(field: &str, e: impl std::fmt::Display) -> CorpusError {
    input(format!("{field}: {e}"))
}

fn rationals(field: &str, row: &[RatLit]) -> Result<Vec<BigRational>> {
    row.iter()
        .enumerate()
        .map(|(i, r)| r.to_rational().map_err(|e| field_err(&format!("{field}[{i}]"), e)))
        .collect()
}

fn rectangular<T>(field: &str, rows: &[Vec<T>], width: Option<usize>) -> Result<usize> {
    let w = match (width, rows.first()) {
        (Some(w), _) => w,
        (None, Some(r)) => r.len(),
        (None, None) => return Err(field_err(field, "no rows")),
    };
    for (i, r) in rows.iter().enumerate() {
        if r.len() != w {
            return Err(field_err(
                field,
                format!("ragged rows: row {i} has {} entries, expected {w}", r.len()),
            ));
        }
    }
    Ok(w)
}

fn elements(field: &str, g: &Arc<OrderedGroup>, rows: &[Vec<RatLit>]) -> Result<Vec<GroupElement>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    rectangular(field, rows, Some(g.rank()))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let f = format!("{field}[{i}]");
            g.element(rationals(&f, r)?).map_err(|e| field_err(&f, e))
        })
        .collect()
}

fn build_group(raw: Option<&RawGroup>) -> Result<Arc<OrderedGroup>> {
    let raw = raw.ok_or_else(|| input("missing [group] table"))?;
    let mut basis = Vec::with_capacity(raw.basis.len());
    for (i, b) in raw.basis.iter().enumerate() {
        let f = format!("group.basis[{i}]");
        let r = match b {
            RawBasis::Tag(t) => BasisReal::parse_tag(t).map_err(|e| field_err(&f, e))?,
            RawBasis::Custom { name, intervals } => {
                let mut iv = Vec::with_capacity(intervals.len());
                for (k, [lo, hi]) in intervals.iter().enumerate() {
                    let g = format!("{f}.intervals[{k}]");
                    iv.push((
                        lo.to_rational().map_err(|e| field_err(&g, e))?,
                        hi.to_rational().map_err(|e| field_err(&g, e))?,
                    ));
                }
                BasisReal::custom(name.clone(), iv).map_err(|e| field_err(&f, e))?
            }
        };
        basis.push(r);
    }
    let bits = raw.max_precision_bits.unwrap_or(DEFAULT_MAX_PRECISION_BITS);
    OrderedGroup::with_precision(raw.lex_prefix, basis, bits).map_err(|e| field_err("group", e))
}

fn monoid(field: &str, g: &Arc<OrderedGroup>, rows: &[Vec<RatLit>]) -> Result<AffineMonoid> {
    let gens = elements(field, g, rows)?;
    AffineMonoid::new(g, gens).map_err(|e| field_err(field, e))
}

fn presentation(field: &str, raw: &RawPresentation) -> Result<BinomialPresentation> {
    let values = match &raw.values {
        Some(v) => Some(rationals(&format!("{field}.values"), v)?),
        None => None,
    };
    let rels = raw
        .relations
        .iter()
        .map(|r| Relation::new(r.lhs.clone(), r.rhs.clone()))
        .collect();
    BinomialPresentation::new(raw.vars.clone(), values, rels).map_err(|e| field_err(field, e))
}

impl Instance {
    pub fn from_toml_str(text: &str, default_name: &str) -> Result<Self> {
        let raw: RawInstance = toml::from_str(text).map_err(|e| input(e.to_string().trim_end().to_string()))?;
        if raw.format != INSTANCE_FORMAT {
            return Err(field_err(
                "format",
                format!("expected {INSTANCE_FORMAT:?}, found {:?}", raw.format),
            ));
        }
        let name = raw.name.clone().unwrap_or_else(|| default_name.to_string());
        let present: Vec<&str> = [
            ("monoid", raw.monoid.is_some()),
            ("graded_extension", raw.graded_extension.is_some()),
            ("monomial_extension", raw.monomial_extension.is_some()),
            ("presentation_pair", raw.presentation_pair.is_some()),
            ("series_valuation", raw.series_valuation.is_some()),
        ]
        .into_iter()
        .filter(|(_, p)| *p)
        .map(|(k, _)| k)
        .collect();
        if present != [raw.kind.as_str()] {
            return Err(field_err(
                "kind",
                format!(
                    "kind {:?} needs exactly the [{}] table; found tables {present:?}",
                    raw.kind, raw.kind
                ),
            ));
        }
        let kind = match raw.kind.as_str() {
            "monoid" => Kind::Monoid(Self::monoid_spec(&raw)?),
            "graded_extension" => Kind::GradedExtension(Self::graded_spec(&raw)?),
            "monomial_extension" => Kind::MonomialExtension(Self::monomial_spec(&raw)?),
            "presentation_pair" => Kind::PresentationPair(Self::pair_spec(&raw)?),
            "series_valuation" => Kind::SeriesValuation(Self::series_spec(&raw)?),
            other => return Err(field_err("kind", format!("unknown kind {other:?}"))),
        };
        Ok(Instance {
            name,
            description: raw.description,
            kind,
            expected: raw.expected,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
        Self::from_toml_str(&text, stem).map_err(|e| match e {
            CorpusError::Input(m) => input(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    fn monoid_spec(raw: &RawInstance) -> Result<MonoidSpec> {
        let g = build_group(raw.group.as_ref())?;
        let m = raw.monoid.as_ref().expect("checked");
        let monoid = monoid("monoid.gens", &g, &m.gens)?;
        let targets = elements("monoid.targets", &g, &m.targets)?;
        let par = match &m.par {
            Some(rows) => {
                rectangular("monoid.par", rows, None)?;
                Some(
                    rows.iter()
                        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                        .collect(),
                )
            }
            None => None,
        };
        Ok(MonoidSpec { monoid, targets, par })
    }

    fn graded_spec(raw: &RawInstance) -> Result<GradedSpec> {
        let g = build_group(raw.group.as_ref())?;
        let r = raw.graded_extension.as_ref().expect("checked");
        let f = r.f.unwrap_or(1);
        let label = r.label.clone().unwrap_or_default();
        let p_power = r.p_power.iter().map(|x| (x.p, x.n)).collect();
        let forms = [r.s1.is_some() || r.s2.is_some(), r.levels.is_some(), r.family.is_some()];
        if forms.iter().filter(|b| **b).count() != 1 {
            return Err(field_err(
                "graded_extension",
                "give exactly one of s1/s2, [[graded_extension.levels]] or graded_extension.family",
            ));
        }
        let ext = |field: &str, s1: AffineMonoid, s2: AffineMonoid| {
            GradedExtension::new(s1, s2, f, label.clone()).map_err(|e| field_err(field, e))
        };
        let (levels, tower) = if let (Some(s1), Some(s2)) = (&r.s1, &r.s2) {
            let s1 = monoid("graded_extension.s1", &g, s1)?;
            let s2 = monoid("graded_extension.s2", &g, s2)?;
            (vec![(0, ext("graded_extension", s1, s2)?)], false)
        } else if r.s1.is_some() || r.s2.is_some() {
            return Err(field_err("graded_extension", "both s1 and s2 are required"));
        } else if let Some(lv) = &r.levels {
            if lv.is_empty() {
                return Err(field_err("graded_extension.levels", "no levels"));
            }
            let mut out = Vec::with_capacity(lv.len());
            for (i, l) in lv.iter().enumerate() {
                let f = format!("graded_extension.levels[{i}]");
                let s1 = monoid(&format!("{f}.s1"), &g, &l.s1)?;
                let s2 = monoid(&format!("{f}.s2"), &g, &l.s2)?;
                out.push((l.level, ext(&f, s1, s2)?));
            }
            (out, true)
        } else {
            let fam = r.family.as_ref().expect("checked");
            if fam.name != "generating_sequence" {
                return Err(field_err(
                    "graded_extension.family.name",
                    format!("unknown family {:?}", fam.name),
                ));
            }
            if g.rank() != 1 || g.lex_prefix() != 0 {
                return Err(field_err(
                    "group",
                    "the generating_sequence family needs the group [\"rat\"]",
                ));
            }
            if fam.q < 2 || fam.multiplier < 1 || fam.levels.is_empty() {
                return Err(field_err(
                    "graded_extension.family",
                    "need q >= 2, multiplier >= 1 and some levels",
                ));
            }
            let out = builtin::generating_sequence_tower(&g, fam.q, fam.multiplier, &fam.levels, f, &label)?;
            (out, true)
        };
        Ok(GradedSpec {
            levels,
            tower,
            p_power,
            surrogate: r.surrogate.clone(),
        })
    }

    fn monomial_spec(raw: &RawInstance) -> Result<MonomialSpec> {
        let g = build_group(raw.group.as_ref())?;
        let m = raw.monomial_extension.as_ref().expect("checked");
        let s = rectangular("monomial_extension.matrix", &m.matrix, None)?;
        if m.matrix.len() != s {
            return Err(field_err(
                "monomial_extension.matrix",
                format!("matrix is {}x{s}, expected square", m.matrix.len()),
            ));
        }
        let a = IntMatrix::from_rows(&m.matrix).map_err(|e| field_err("monomial_extension.matrix", e))?;
        let y = elements("monomial_extension.y_values", &g, &m.y_values)?;
        let n = y.len();
        let ext = MonomialExtension::new(a, y, m.unit_flags.clone()).map_err(|e| field_err("monomial_extension", e))?;
        let names = match &m.names {
            Some(v) if v.len() == n => v.clone(),
            Some(v) => {
                return Err(field_err(
                    "monomial_extension.names",
                    format!("{} names for {n} variables", v.len()),
                ))
            }
            None => (1..=n).map(|i| format!("y{i}")).collect(),
        };
        let kummer = match &m.kummer {
            None => None,
            Some(k) => {
                let mut terms = Vec::with_capacity(k.z.len());
                for (i, t) in k.z.iter().enumerate() {
                    let f = format!("monomial_extension.kummer.z[{i}]");
                    if t.exponents.len() != n {
                        return Err(field_err(
                            &f,
                            format!("{} exponents for {n} variables", t.exponents.len()),
                        ));
                    }
                    terms.push((
                        t.coeff.to_rational().map_err(|e| field_err(&f, e))?,
                        t.exponents.clone(),
                    ));
                }
                Some(KummerSpec {
                    z: RatPoly::from_terms(n, &terms),
                    strict: k.strict,
                })
            }
        };
        Ok(MonomialSpec {
            ext,
            names,
            bound: m.bound.unwrap_or(DEFAULT_COVER_BOUND),
            min_formula_trials: m.min_formula_trials.unwrap_or(0),
            seed: m.seed,
            kummer,
        })
    }

    fn pair_spec(raw: &RawInstance) -> Result<PairSpec> {
        let r = raw.presentation_pair.as_ref().expect("checked");
        if let Some(fam) = &r.family {
            if fam != "frobenius_chain" {
                return Err(field_err("presentation_pair.family", format!("unknown family {fam:?}")));
            }
            let p = r.p.ok_or_else(|| field_err("presentation_pair.p", "required"))?;
            if !(2..=7).contains(&p) {
                return Err(field_err("presentation_pair.p", "expected a prime between 2 and 7"));
            }
            let truncation = r.truncation.unwrap_or(4);
            if !(1..=6).contains(&truncation) {
                return Err(field_err("presentation_pair.truncation", "expected 1..=6"));
            }
            return Ok(PairSpec::FrobeniusChain {
                p,
                truncation,
                p_powers: r.p_powers.clone(),
                tower_levels: r.tower_levels.clone(),
            });
        }
        let src = presentation(
            "presentation_pair.src",
            r.src
                .as_ref()
                .ok_or_else(|| field_err("presentation_pair.src", "required"))?,
        )?;
        let dst = presentation(
            "presentation_pair.dst",
            r.dst
                .as_ref()
                .ok_or_else(|| field_err("presentation_pair.dst", "required"))?,
        )?;
        let map = r
            .map
            .clone()
            .ok_or_else(|| field_err("presentation_pair.map", "required"))?;
        if map.len() != src.len() {
            return Err(field_err(
                "presentation_pair.map",
                format!("{} images for {} source variables", map.len(), src.len()),
            ));
        }
        rectangular("presentation_pair.map", &map, Some(dst.len()))?;
        Ok(PairSpec::Explicit { src, dst, map })
    }

    fn series_spec(raw: &RawInstance) -> Result<SeriesSpec> {
        let r = raw.series_valuation.as_ref().expect("checked");
        let truncations = r.truncations.clone().unwrap_or_else(|| DEFAULT_TRUNCATIONS.to_vec());
        let bound = r.bound.unwrap_or(DEFAULT_SERIES_BOUND);
        validate_series(&truncations, bound)?;
        Ok(SeriesSpec {
            seed: r.seed,
            truncations,
            bound,
        })
    }
}

pub(crate) fn validate_series(truncations: &[usize], bound: usize) -> Result<()> {
    if truncations.is_empty() || truncations.iter().any(|&n| !(4..=512).contains(&n)) {
        return Err(field_err(
            "series_valuation.truncations",
            "each truncation must lie in 4..=512",
        ));
    }
    if bound == 0 || bound > 60 {
        return Err(field_err("series_valuation.bound", "expected 1..=60"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = r#"
format = "gradval-instance/1"
kind = "graded_extension"
[group]
basis = ["rat", "pi"]
[graded_extension]
s1 = [[1, 1], [0, 1]]
s2 = [[1, 0], [0, 1]]
[expected]
verdict = "not_integral"
witness = [1, 0]
"#;

    #[test]
    fn parses_graded() {
        let inst = Instance::from_toml_str(EX1, "ex1").unwrap();
        assert_eq!(inst.name, "ex1");
        let Kind::GradedExtension(g) = &inst.kind else { panic!() };
        assert!(!g.tower);
        assert_eq!(g.levels.len(), 1);
        let exp = inst.expected.unwrap();
        assert_eq!(exp.witness, Some(vec![RatLit::Int(1), RatLit::Int(0)]));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(" -7 ").unwrap(), BigRational::from_integer((-7).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ragged_matrix_names_field() {
        let text = r#"
format = "gradval-instance/1"
kind = "monomial_extension"
[group]
basis = ["rat", "sqrt:2"]
[monomial_extension]
matrix = [[2, 0], [0]]
y_values = [[1, 0], [0, 1]]
"#;
        let e = Instance::from_toml_str(text, "bad").unwrap_err();
        assert!(
            matches!(&e, CorpusError::Input(m) if m.contains("monomial_extension.matrix") && m.contains("ragged")),
            "{e}"
        );
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn wrong_tables_and_format() {
        let text = EX1.replace("kind = \"graded_extension\"", "kind = \"monoid\"");
        assert!(matches!(Instance::from_toml_str(&text, "x"), Err(CorpusError::Input(m)) if m.contains("kind")));
        let text = EX1.replace("gradval-instance/1", "gradval-instance/9");
        assert!(matches!(Instance::from_toml_str(&text, "x"), Err(CorpusError::Input(m)) if m.contains("format")));
        let text = EX1.replace("s2 =", "s3 =");
        assert!(matches!(Instance::from_toml_str(&text, "x"), Err(CorpusError::Input(m)) if m.contains("s3")));
    }

    #[test]
    fn custom_basis() {
        let text = r#"
format = "gradval-instance/1"
kind = "monoid"
[group]
basis = ["rat", { name = "c", intervals = [["1", "2"], ["5/4", "3/2"]] }]
[monoid]
gens = [[1, 0], [0, 1]]
targets = [["1/2", 0]]
"#;
        let inst = Instance::from_toml_str(text, "m").unwrap();
        let Kind::Monoid(m) = inst.kind else { panic!() };
        assert_eq!(m.monoid.group().rank(), 2);
        assert_eq!(m.targets.len(), 1);
    }
}
