//! Binomial presentations `k[X_0..X_m] / (X^a - X^b, ...)` with rational
//! variable values, and substitution checks between them by binomial
//! rewriting.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GradedError, Result};

/// Exponent vector over the variables of a presentation.
pub type Monomial = Vec<u64>;

/// `lhs = rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl Relation {
    pub fn new(lhs: Monomial, rhs: Monomial) -> Self {
        Relation { lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinomialPresentation {
    pub vars: Vec<String>,
    /// declared values; derived from the relations when absent
    pub values: Option<Vec<BigRational>>,
    pub relations: Vec<Relation>,
}

/// Result of solving the relations for the variable values with the first
/// variable normalized to 1.
#[derive(Clone, Debug, PartialEq)]
pub enum ValueDerivation {
    Unique(Vec<BigRational>),
    /// solution space of the given dimension, not a single ray
    Underdetermined {
        dimension: usize,
    },
    /// only the zero solution, or the first variable is forced to 0
    Inconsistent,
    NonPositive(Vec<BigRational>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RewriteOutcome {
    Holds,
    Fails {
        relation: usize,
        lhs_normal: Monomial,
        rhs_normal: Monomial,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionReport {
    pub outcome: RewriteOutcome,
    /// rewriting rules after completion
    pub rules: usize,
    pub completed: bool,
    pub src_values: Vec<BigRational>,
    pub dst_values: Vec<BigRational>,
}

impl SubstitutionReport {
    pub fn holds(&self) -> bool {
        self.outcome == RewriteOutcome::Holds
    }
}

fn monomial_value(m: &[u64], values: &[BigRational]) -> BigRational {
    m.iter()
        .zip(values)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| v * BigRational::from_integer(BigInt::from(*e)))
        .sum()
}

impl BinomialPresentation {
    pub fn new(vars: Vec<String>, values: Option<Vec<BigRational>>, relations: Vec<Relation>) -> Result<Self> {
        let n = vars.len();
        for (i, r) in relations.iter().enumerate() {
            if r.lhs.len() != n || r.rhs.len() != n {
                return Err(GradedError::Presentation(format!(
                    "relation {i} has exponent vectors of the wrong length"
                )));
            }
        }
        if let Some(v) = &values {
            if v.len() != n {
                return Err(GradedError::Presentation(format!(
                    "{} values for {n} variables",
                    v.len()
                )));
            }
            for (i, r) in relations.iter().enumerate() {
                let (a, b) = (monomial_value(&r.lhs, v), monomial_value(&r.rhs, v));
                if a != b {
                    return Err(GradedError::Presentation(format!(
                        "relation {i} is not homogeneous: {a} != {b}"
                    )));
                }
            }
        }
        Ok(BinomialPresentation {
            vars,
            values,
            relations,
        })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn value_of(&self, m: &[u64]) -> Result<BigRational> {
        Ok(monomial_value(m, &self.effective_values()?))
    }

    /// Solve `value(lhs) = value(rhs)` for every relation.
    pub fn derive_values(&self) -> ValueDerivation {
        let n = self.vars.len();
        let mut rows: Vec<Vec<BigRational>> = self
            .relations
            .iter()
            .map(|r| {
                r.lhs
                    .iter()
                    .zip(&r.rhs)
                    .map(|(a, b)| BigRational::from_integer(BigInt::from(*a) - BigInt::from(*b)))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(row, p);
            let inv = rows[row][col].recip();
            for x in rows[row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows.len() {
                if i != row && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in 0..n {
                        let d = &rows[row][j] * &f;
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        match free.len() {
            0 => return ValueDerivation::Inconsistent,
            1 => {}
            d => return ValueDerivation::Underdetermined { dimension: d },
        }
        let f = free[0];
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][f];
        }
        if v.first().is_none_or(Zero::is_zero) {
            return ValueDerivation::Inconsistent;
        }
        let scale = v[0].clone();
        for x in v.iter_mut() {
            *x /= &scale;
        }
        if v.iter().any(|x| !x.is_positive()) {
            return ValueDerivation::NonPositive(v);
        }
        ValueDerivation::Unique(v)
    }

    /// Declared values, or the unique positive derived ones.
    pub fn effective_values(&self) -> Result<Vec<BigRational>> {
        if let Some(v) = &self.values {
            return Ok(v.clone());
        }
        match self.derive_values() {
            ValueDerivation::Unique(v) => Ok(v),
            other => Err(GradedError::Presentation(format!(
                "variable values are not determined by the relations: {other:?}"
            ))),
        }
    }
}

/// Value first, then lexicographic with higher-indexed variables more
/// significant.
fn term_cmp(a: &[u64], b: &[u64], values: &[BigRational]) -> Ordering {
    monomial_value(a, values)
        .cmp(&monomial_value(b, values))
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn overflow() -> GradedError {
    GradedError::Presentation("exponent overflow".into())
}

struct Rewriter<'a> {
    values: &'a [BigRational],
    /// `lhs -> rhs` with `lhs` larger in the term order
    rules: Vec<(Monomial, Monomial)>,
}

const MAX_REDUCTION_STEPS: usize = 1_000_000;

impl Rewriter<'_> {
    fn orient(&self, a: Monomial, b: Monomial) -> Option<(Monomial, Monomial)> {
        match term_cmp(&a, &b, self.values) {
            Ordering::Greater => Some((a, b)),
            Ordering::Less => Some((b, a)),
            Ordering::Equal => None,
        }
    }

    /// Normal form, or `None` when the step cap is hit.
    fn reduce(&self, mut m: Monomial) -> Result<Option<Monomial>> {
        for _ in 0..MAX_REDUCTION_STEPS {
            let hit = self.rules.iter().find_map(|(lhs, rhs)| {
                let k = lhs.iter().zip(&m).filter(|(l, _)| **l > 0).map(|(l, x)| x / l).min()?;
                (k > 0).then_some((lhs, rhs, k))
            });
            let Some((lhs, rhs, k)) = hit else {
                return Ok(Some(m));
            };
            for i in 0..m.len() {
                let sub = lhs[i].checked_mul(k).ok_or_else(overflow)?;
                let add = rhs[i].checked_mul(k).ok_or_else(overflow)?;
                m[i] = (m[i] - sub).checked_add(add).ok_or_else(overflow)?;
            }
        }
        Ok(None)
    }

    /// Binomial Buchberger completion; `false` when the rule cap is hit
    /// before every critical pair resolves.
    fn complete(&mut self, cap: usize) -> Result<bool> {
        let mut i = 0;
        while i < self.rules.len() {
            for j in 0..i {
                let (li, ri) = self.rules[i].clone();
                let (lj, rj) = self.rules[j].clone();
                if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
                    continue;
                }
                let lcm: Monomial = li.iter().zip(&lj).map(|(a, b)| *a.max(b)).collect();
                let si: Monomial = (0..lcm.len()).map(|k| lcm[k] - li[k] + ri[k]).collect();
                let sj: Monomial = (0..lcm.len()).map(|k| lcm[k] - lj[k] + rj[k]).collect();
                let (Some(a), Some(b)) = (self.reduce(si)?, self.reduce(sj)?) else {
                    return Ok(false);
                };
                if let Some(rule) = self.orient(a, b) {
                    if self.rules.len() >= cap {
                        return Ok(false);
                    }
                    self.rules.push(rule);
                }
            }
            i += 1;
        }
        Ok(true)
    }
}

fn image(m: &[u64], map: &[Monomial], width: usize) -> Result<Monomial> {
    let mut out = vec![0u64; width];
    for (e, target) in m.iter().zip(map) {
        for (o, t) in out.iter_mut().zip(target) {
            let add = e.checked_mul(*t).ok_or_else(overflow)?;
            *o = o.checked_add(add).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

/// Whether the substitution `src var i -> map[i]` carries every relation of
/// `src` into the ideal of `dst`.
///
/// The dst relations are completed by binomial Buchberger steps under the
/// value-then-lex order, with at most `10 * (number of relations)` rules.
/// A relation whose two sides reach one normal form holds regardless of
/// completion; distinct normal forms are a failure only after completion.
pub fn substitution_check(
    src: &BinomialPresentation,
    dst: &BinomialPresentation,
    map: &[Monomial],
) -> Result<SubstitutionReport> {
    if map.len() != src.len() || map.iter().any(|m| m.len() != dst.len()) {
        return Err(GradedError::Presentation(
            "substitution map does not match the presentations".into(),
        ));
    }
    let dst_values = dst.effective_values()?;
    let pulled: Vec<BigRational> = map.iter().map(|m| monomial_value(m, &dst_values)).collect();
    if let Some(declared) = &src.values {
        for (i, (d, p)) in declared.iter().zip(&pulled).enumerate() {
            if d != p {
                return Err(GradedError::ValueMismatch {
                    var: src.vars[i].clone(),
                    expected: d.to_string(),
                    found: p.to_string(),
                });
            }
        }
    }
    let mut rw = Rewriter {
        values: &dst_values,
        rules: Vec::new(),
    };
    for r in &dst.relations {
        if let Some(rule) = rw.orient(r.lhs.clone(), r.rhs.clone()) {
            rw.rules.push(rule);
        }
    }
    let cap = 10 * dst.relations.len().max(1);
    let completed = rw.complete(cap)?;
    let mut outcome = RewriteOutcome::Holds;
    for (i, r) in src.relations.iter().enumerate() {
        let a = image(&r.lhs, map, dst.len())?;
        let b = image(&r.rhs, map, dst.len())?;
        let (Some(na), Some(nb)) = (rw.reduce(a)?, rw.reduce(b)?) else {
            outcome = RewriteOutcome::Inconclusive {
                reason: format!("reduction step cap reached on relation {i}"),
            };
            break;
        };
        if na != nb {
            outcome = if completed {
                RewriteOutcome::Fails {
                    relation: i,
                    lhs_normal: na,
                    rhs_normal: nb,
                }
            } else {
                RewriteOutcome::Inconclusive {
                    reason: format!("rule cap {cap} reached before completion; relation {i} unresolved"),
                }
            };
            break;
        }
    }
    Ok(SubstitutionReport {
        outcome,
        rules: rw.rules.len(),
        completed,
        src_values: pulled,
        dst_values,
    })
}
