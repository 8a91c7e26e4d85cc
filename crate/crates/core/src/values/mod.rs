//! Finitely generated totally ordered abelian value groups.
//!
//! A group is described by a number of leading coordinates ordered
//! lexicographically, followed by coordinates over a list of real constants
//! that are declared linearly independent over the rationals. An element is a
//! vector of exact rationals; its position in the order is decided by the
//! lexicographic prefix and then by the sign of the embedded real
//! `sum c_i * r_i`, refined with rational enclosures of the `r_i` until zero
//! is excluded.

mod reals;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{self, IntMatrix, LatticeError};

pub const DEFAULT_MAX_PRECISION_BITS: u32 = 256;

/// Limit on `k` in `max_multiple_below`; lexicographic groups have
/// positive elements with no multiple above a larger one.
const MULTIPLE_SEARCH_BITS: u64 = 48;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValueError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("expected {expected} coordinates, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error(
        "order undecided after {bits} bits of refinement for {element}; \
         the basis constants are probably not linearly independent"
    )]
    Undecided { element: String, bits: u32 },
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("generator {index} ({element}) is not in the ambient subgroup")]
    NotInAmbient { index: usize, element: String },
    #[error("multiples of {step} stay below {bound}")]
    Unbounded { step: String, bound: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, ValueError>;

/// A real constant used as a basis direction of the embedded part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisReal {
    /// The rational unit 1.
    Rational,
    Pi,
    /// Square root of a non-square positive integer.
    Sqrt(u32),
    /// A user constant given by nested rational intervals of strictly
    /// decreasing width.
    Custom {
        name: String,
        intervals: Vec<(BigRational, BigRational)>,
    },
}

impl BasisReal {
    pub fn parse_tag(tag: &str) -> Result<Self> {
        match tag {
            "rat" => Ok(BasisReal::Rational),
            "pi" => Ok(BasisReal::Pi),
            _ => {
                let p = tag
                    .strip_prefix("sqrt:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| ValueError::InvalidDescriptor(format!("unknown basis tag {tag:?}")))?;
                let b = BasisReal::Sqrt(p);
                b.validate()?;
                Ok(b)
            }
        }
    }

    pub fn custom(name: impl Into<String>, intervals: Vec<(BigRational, BigRational)>) -> Result<Self> {
        let b = BasisReal::Custom {
            name: name.into(),
            intervals,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn tag(&self) -> String {
        match self {
            BasisReal::Rational => "rat".into(),
            BasisReal::Pi => "pi".into(),
            BasisReal::Sqrt(p) => format!("sqrt:{p}"),
            BasisReal::Custom { name, .. } => name.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            BasisReal::Sqrt(p) => {
                let r = (*p as f64).sqrt().round() as u32;
                if *p == 0 || r * r == *p {
                    return Err(ValueError::InvalidDescriptor(format!("sqrt:{p} is rational")));
                }
            }
            BasisReal::Custom { name, intervals } => {
                if intervals.is_empty() {
                    return Err(ValueError::InvalidDescriptor(format!(
                        "constant {name} has no intervals"
                    )));
                }
                for (i, (lo, hi)) in intervals.iter().enumerate() {
                    if lo > hi {
                        return Err(ValueError::InvalidDescriptor(format!(
                            "constant {name}: interval {i} is empty"
                        )));
                    }
                    if i > 0 {
                        let (plo, phi) = &intervals[i - 1];
                        if lo < plo || hi > phi || hi - lo >= phi - plo {
                            return Err(ValueError::InvalidDescriptor(format!(
                                "constant {name}: interval {i} is not strictly nested in interval {}",
                                i - 1
                            )));
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Enclosure of width at most `2^-bits`, or the tightest available one
    /// flagged as exhausted.
    fn enclosure(&self, bits: u32) -> (BigRational, BigRational, bool) {
        match self {
            BasisReal::Rational => (BigRational::one(), BigRational::one(), false),
            BasisReal::Pi => {
                let (lo, hi) = reals::pi_enclosure(bits);
                (lo, hi, false)
            }
            BasisReal::Sqrt(p) => {
                let (lo, hi) = reals::sqrt_enclosure(*p, bits);
                (lo, hi, false)
            }
            BasisReal::Custom { intervals, .. } => {
                let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
                match intervals.iter().find(|(lo, hi)| hi - lo <= target) {
                    Some((lo, hi)) => (lo.clone(), hi.clone(), false),
                    None => {
                        let (lo, hi) = intervals.last().expect("validated nonempty");
                        (lo.clone(), hi.clone(), true)
                    }
                }
            }
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, BasisReal::Rational)
    }
}

/// An ordered group `Q^lex_prefix x (Q r_1 + ... + Q r_k)` in the lex order,
/// whose elements are rational coordinate vectors.
pub struct OrderedGroup {
    lex_prefix: usize,
    basis: Vec<BasisReal>,
    max_precision_bits: u32,
    cache: Mutex<HashMap<(usize, u32), (BigRational, BigRational, bool)>>,
}

impl OrderedGroup {
    pub fn new(lex_prefix: usize, basis: Vec<BasisReal>) -> Result<Arc<Self>> {
        Self::with_precision(lex_prefix, basis, DEFAULT_MAX_PRECISION_BITS)
    }

    pub fn with_precision(lex_prefix: usize, basis: Vec<BasisReal>, max_precision_bits: u32) -> Result<Arc<Self>> {
        if lex_prefix + basis.len() == 0 {
            return Err(ValueError::InvalidDescriptor("group of rank 0".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            b.validate()?;
            if basis[..i].iter().any(|c| c.tag() == b.tag() || c == b) {
                return Err(ValueError::InvalidDescriptor(format!(
                    "basis constant {} appears twice",
                    b.tag()
                )));
            }
        }
        Ok(Arc::new(OrderedGroup {
            lex_prefix,
            basis,
            max_precision_bits: max_precision_bits.max(1),
            cache: Mutex::new(HashMap::new()),
        }))
    }

    /// Rank-one group of rationals, `Q` with its usual order.
    pub fn rationals() -> Arc<Self> {
        Self::new(0, vec![BasisReal::Rational]).expect("valid")
    }

    /// `Z^n` (inside `Q^n`) in the lexicographic order; used for exponent
    /// vectors.
    pub fn lex(n: usize) -> Arc<Self> {
        Self::new(n, vec![]).expect("valid")
    }

    /// Parse from tags such as `["rat", "pi"]`.
    pub fn from_tags(lex_prefix: usize, tags: &[&str]) -> Result<Arc<Self>> {
        let basis = tags
            .iter()
            .map(|t| BasisReal::parse_tag(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lex_prefix, basis)
    }

    pub fn rank(&self) -> usize {
        self.lex_prefix + self.basis.len()
    }

    pub fn lex_prefix(&self) -> usize {
        self.lex_prefix
    }

    pub fn basis(&self) -> &[BasisReal] {
        &self.basis
    }

    pub fn max_precision_bits(&self) -> u32 {
        self.max_precision_bits
    }

    pub fn zero(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            group: Arc::clone(self),
            coords: vec![BigRational::zero(); self.rank()],
        }
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(ValueError::RankMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(GroupElement {
            group: Arc::clone(self),
            coords,
        })
    }

    pub fn int_element(self: &Arc<Self>, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn big_int_element(self: &Arc<Self>, coords: &[BigInt]) -> Result<GroupElement> {
        self.element(coords.iter().cloned().map(BigRational::from_integer).collect())
    }

    fn cached_enclosure(&self, i: usize, bits: u32) -> (BigRational, BigRational, bool) {
        if self.basis[i].is_exact() {
            return self.basis[i].enclosure(bits);
        }
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        cache
            .entry((i, bits))
            .or_insert_with(|| self.basis[i].enclosure(bits))
            .clone()
    }

    /// Sign of the element with the given coordinates.
    fn sign(&self, coords: &[BigRational]) -> Result<Ordering> {
        for c in &coords[..self.lex_prefix] {
            if !c.is_zero() {
                return Ok(if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
        }
        let emb = &coords[self.lex_prefix..];
        let support: Vec<usize> = (0..emb.len()).filter(|&i| !emb[i].is_zero()).collect();
        if support.is_empty() {
            return Ok(Ordering::Equal);
        }
        if let [i] = support[..] {
            // a single nonzero coordinate against a positive constant
            let positive_constant = match &self.basis[i] {
                BasisReal::Custom { intervals, .. } => intervals[0].0.is_positive(),
                _ => true,
            };
            if positive_constant {
                return Ok(if emb[i].is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
        }
        let mut bits = 32.min(self.max_precision_bits);
        loop {
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            let mut exhausted = false;
            for &i in &support {
                let (l, h, ex) = self.cached_enclosure(i, bits);
                exhausted |= ex;
                let c = &emb[i];
                if c.is_positive() {
                    lo += c * &l;
                    hi += c * &h;
                } else {
                    lo += c * &h;
                    hi += c * &l;
                }
            }
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if lo == hi {
                // exact and zero: only possible for dependent constants
                return Err(ValueError::Undecided {
                    element: format_coords(coords),
                    bits,
                });
            }
            if bits >= self.max_precision_bits || exhausted {
                return Err(ValueError::Undecided {
                    element: format_coords(coords),
                    bits,
                });
            }
            bits = (bits * 2).min(self.max_precision_bits);
        }
    }

    fn descriptor_eq(&self, other: &OrderedGroup) -> bool {
        self.lex_prefix == other.lex_prefix && self.basis == other.basis
    }
}

impl fmt::Debug for OrderedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGroup")
            .field("lex_prefix", &self.lex_prefix)
            .field("basis", &self.basis.iter().map(BasisReal::tag).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for OrderedGroup {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor_eq(other)
    }
}

fn same_group(a: &Arc<OrderedGroup>, b: &Arc<OrderedGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.descriptor_eq(b)
}

#[derive(Clone)]
pub struct GroupElement {
    group: Arc<OrderedGroup>,
    coords: Vec<BigRational>,
}

impl GroupElement {
    pub fn group(&self) -> &Arc<OrderedGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &GroupElement) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(ValueError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_same(other)?;
        Ok(GroupElement {
            group: Arc::clone(&self.group),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> GroupElement {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    pub fn compare(&self, other: &GroupElement) -> Result<Ordering> {
        let d = self.sub(other)?;
        self.group.sign(&d.coords)
    }

    /// Sign relative to zero.
    pub fn signum(&self) -> Result<Ordering> {
        self.group.sign(&self.coords)
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Greater)
    }

    /// Largest integer `k >= 0` with `k * self <= bound`, for `self > 0`.
    pub fn max_multiple_below(&self, bound: &GroupElement) -> Result<BigInt> {
        debug_assert!(self.is_positive().unwrap_or(false));
        if bound.signum()? == Ordering::Less {
            return Ok(BigInt::zero());
        }
        // Rank one over the rationals: exact division.
        if let Some(k) = self.exact_ratio(bound) {
            return Ok(k.floor().to_integer());
        }
        let fits = |k: &BigInt| -> Result<bool> { Ok(self.scale_int(k).compare(bound)? != Ordering::Greater) };
        let mut hi = BigInt::one();
        while fits(&hi)? {
            hi <<= 1;
            if hi.bits() > MULTIPLE_SEARCH_BITS {
                return Err(ValueError::Unbounded {
                    step: self.to_string(),
                    bound: bound.to_string(),
                });
            }
        }
        let mut lo = BigInt::zero();
        // fits(lo) and !fits(hi)
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if fits(&mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// `bound / self` when both are rational multiples of one coordinate.
    fn exact_ratio(&self, bound: &GroupElement) -> Option<BigRational> {
        let mut ratio: Option<BigRational> = None;
        for (a, b) in self.coords.iter().zip(&bound.coords) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (true, false) => return None,
                (false, _) => {
                    let r = b / a;
                    match &ratio {
                        None => ratio = Some(r),
                        Some(prev) if *prev == r => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        ratio
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coords == other.coords
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

fn format_coords(coords: &[BigRational]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.coords))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{}", self)
    }
}

pub fn add(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.add(b)
}

pub fn compare(a: &GroupElement, b: &GroupElement) -> Result<Ordering> {
    a.compare(b)
}

fn check_all_same<'a>(elems: impl IntoIterator<Item = &'a GroupElement>) -> Result<Option<Arc<OrderedGroup>>> {
    let mut group: Option<Arc<OrderedGroup>> = None;
    for e in elems {
        match &group {
            None => group = Some(Arc::clone(&e.group)),
            Some(g) if same_group(g, &e.group) => {}
            Some(_) => return Err(ValueError::GroupMismatch),
        }
    }
    Ok(group)
}

/// Least common denominator of all coordinates.
pub fn common_denominator<'a>(elems: impl IntoIterator<Item = &'a GroupElement>) -> BigInt {
    elems
        .into_iter()
        .flat_map(|e| e.coords.iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Coordinates multiplied by `denom`; `None` if not integral.
pub fn scaled_integer_coords(e: &GroupElement, denom: &BigInt) -> Option<Vec<BigInt>> {
    e.coords
        .iter()
        .map(|c| {
            let s = c * BigRational::from_integer(denom.clone());
            s.is_integer().then(|| s.to_integer())
        })
        .collect()
}

/// Integer coefficients `c` with `sum c_i gens_i = target`, if any.
pub fn in_subgroup(target: &GroupElement, gens: &[GroupElement]) -> Result<Option<Vec<BigInt>>> {
    check_all_same(std::iter::once(target).chain(gens))?;
    if gens.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let denom = common_denominator(std::iter::once(target).chain(gens));
    let cols: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| scaled_integer_coords(g, &denom).expect("common denominator"))
        .collect();
    let b = scaled_integer_coords(target, &denom).expect("common denominator");
    let m = IntMatrix::from_columns(&cols)?;
    Ok(lattice::solve_integral(&m, &b)?)
}

/// Repeated subgroup membership against a fixed generating set.
#[derive(Clone)]
pub struct SubgroupMembership {
    denom: BigInt,
    solver: Option<lattice::IntegralSolver>,
    group: Option<Arc<OrderedGroup>>,
}

impl SubgroupMembership {
    pub fn new(gens: &[GroupElement]) -> Result<Self> {
        let group = check_all_same(gens)?;
        let denom = common_denominator(gens);
        let solver = if gens.is_empty() {
            None
        } else {
            let cols: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|g| scaled_integer_coords(g, &denom).expect("common denominator"))
                .collect();
            Some(lattice::IntegralSolver::new(&IntMatrix::from_columns(&cols)?))
        };
        Ok(SubgroupMembership { denom, solver, group })
    }

    pub fn certificate(&self, target: &GroupElement) -> Result<Option<Vec<BigInt>>> {
        if let Some(g) = &self.group {
            if !same_group(g, &target.group) {
                return Err(ValueError::GroupMismatch);
            }
        }
        let Some(solver) = &self.solver else {
            return Ok(target.is_zero().then(Vec::new));
        };
        match scaled_integer_coords(target, &self.denom) {
            None => Ok(None),
            Some(b) => Ok(solver.solve(&b)?),
        }
    }

    pub fn contains(&self, target: &GroupElement) -> Result<bool> {
        Ok(self.certificate(target)?.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIndex::Finite(n) => write!(f, "{n}"),
            GroupIndex::Infinite => f.write_str("infinite"),
        }
    }
}

/// Index `[<amb_gens> : <sub_gens>]` of the generated subgroups.
pub fn subgroup_index(sub_gens: &[GroupElement], amb_gens: &[GroupElement]) -> Result<GroupIndex> {
    check_all_same(sub_gens.iter().chain(amb_gens))?;
    let amb = SubgroupMembership::new(amb_gens)?;
    for (i, s) in sub_gens.iter().enumerate() {
        if !amb.contains(s)? {
            return Err(ValueError::NotInAmbient {
                index: i,
                element: s.to_string(),
            });
        }
    }
    let denom = common_denominator(sub_gens.iter().chain(amb_gens));
    let basis_of = |gens: &[GroupElement]| -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| scaled_integer_coords(g, &denom).expect("common denominator"))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        if rows.is_empty() {
            return rows;
        }
        lattice::row_lattice_basis(&IntMatrix::from_rows(&rows).expect("nonempty rows"))
    };
    let amb_basis = basis_of(amb_gens);
    let sub_basis = basis_of(sub_gens);
    if sub_basis.len() < amb_basis.len() {
        return Ok(GroupIndex::Infinite);
    }
    if amb_basis.is_empty() {
        return Ok(GroupIndex::Finite(BigInt::one()));
    }
    // coordinates of the sub basis in terms of the ambient basis
    let amb_cols = IntMatrix::from_columns(&amb_basis)?;
    let solver = lattice::IntegralSolver::new(&amb_cols);
    let mut change = Vec::with_capacity(sub_basis.len());
    for row in &sub_basis {
        let x = solver.solve(row)?.ok_or_else(|| {
            ValueError::Lattice(LatticeError::Invariant(
                "sub basis vector left the ambient lattice".into(),
            ))
        })?;
        change.push(x);
    }
    let snf = lattice::smith_normal_form(&IntMatrix::from_rows(&change)?);
    let index = snf.diagonal().iter().fold(BigInt::one(), |acc, d| acc * d).abs();
    Ok(GroupIndex::Finite(index))
}

/// Dimension of the rational span of the elements.
pub fn rational_rank(elems: &[GroupElement]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    let denom = common_denominator(elems);
    let rows: Vec<Vec<BigInt>> = elems
        .iter()
        .map(|g| scaled_integer_coords(g, &denom).expect("common denominator"))
        .collect();
    lattice::rank(&IntMatrix::from_rows(&rows).expect("nonempty rows"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi_group() -> Arc<OrderedGroup> {
        OrderedGroup::from_tags(0, &["rat", "pi"]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn addition() {
        let g = pi_group();
        let a = g.int_element(&[1, 1]).unwrap();
        let b = g.int_element(&[0, 1]).unwrap();
        assert_eq!(a.add(&b).unwrap(), g.int_element(&[1, 2]).unwrap());
        assert_eq!(a.add(&g.zero()).unwrap(), a);
        let c = g.int_element(&[1, 0]).unwrap();
        assert!(c.add(&c.neg()).unwrap().is_zero());
        let other = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).unwrap();
        assert_eq!(
            a.add(&other.int_element(&[0, 1]).unwrap()),
            Err(ValueError::GroupMismatch)
        );
    }

    #[test]
    fn comparisons() {
        let g = pi_group();
        let a = g.int_element(&[1, 1]).unwrap();
        let b = g.int_element(&[0, 1]).unwrap();
        let one = g.int_element(&[1, 0]).unwrap();
        assert_eq!(a.compare(&b).unwrap(), Ordering::Greater);
        // pi in (3.14, 3.15), so pi > 1
        assert_eq!(b.compare(&one).unwrap(), Ordering::Greater);
        assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
        // 22/7 > pi > 333/106
        let x = g.element(vec![q(22, 7), q(-1, 1)]).unwrap();
        assert_eq!(x.signum().unwrap(), Ordering::Greater);
        let y = g.element(vec![q(333, 106), q(-1, 1)]).unwrap();
        assert_eq!(y.signum().unwrap(), Ordering::Less);
    }

    #[test]
    fn lex_prefix_dominates() {
        let g = OrderedGroup::from_tags(1, &["rat", "sqrt:2"]).unwrap();
        let a = g.int_element(&[1, -100, -100]).unwrap();
        let b = g.int_element(&[0, 100, 100]).unwrap();
        assert_eq!(a.compare(&b).unwrap(), Ordering::Greater);
        let c = g.int_element(&[0, 3, -2]).unwrap(); // 3 - 2 sqrt 2 > 0
        assert_eq!(c.signum().unwrap(), Ordering::Greater);
    }

    #[test]
    fn dependent_constants_are_diagnosed() {
        // a "constant" that is secretly 2, next to the rational unit
        let intervals: Vec<_> = (1..6)
            .map(|k| (q(2, 1) - q(1, 1 << k), q(2, 1) + q(1, 1 << k)))
            .collect();
        let two = BasisReal::custom("two", intervals).unwrap();
        let g = OrderedGroup::new(0, vec![BasisReal::Rational, two]).unwrap();
        let e = g.int_element(&[2, -1]).unwrap();
        assert!(matches!(e.signum(), Err(ValueError::Undecided { .. })));

        let g = OrderedGroup::from_tags(0, &["sqrt:8", "sqrt:2"]).unwrap();
        let e = g.int_element(&[1, -2]).unwrap();
        assert!(matches!(e.signum(), Err(ValueError::Undecided { .. })));
    }

    #[test]
    fn bad_descriptors() {
        assert!(BasisReal::parse_tag("sqrt:4").is_err());
        assert!(BasisReal::parse_tag("tau").is_err());
        assert!(OrderedGroup::from_tags(0, &["pi", "pi"]).is_err());
        let not_nested = vec![(q(3, 1), q(4, 1)), (q(2, 1), q(3, 1))];
        assert!(BasisReal::custom("c", not_nested).is_err());
    }

    #[test]
    fn subgroup_membership() {
        let g = pi_group();
        let e = |c: &[i64]| g.int_element(c).unwrap();
        let cert = in_subgroup(&e(&[0, 1]), &[e(&[1, 1]), e(&[1, 0])]).unwrap();
        assert_eq!(cert, Some(vec![BigInt::from(1), BigInt::from(-1)]));
        let cert = in_subgroup(&e(&[1, 0]), &[e(&[1, 1]), e(&[0, 1])]).unwrap();
        assert_eq!(cert, Some(vec![BigInt::from(1), BigInt::from(-1)]));
        let half = g.element(vec![q(1, 2), q(0, 1)]).unwrap();
        assert_eq!(in_subgroup(&half, &[e(&[1, 0])]).unwrap(), None);
    }

    #[test]
    fn indices() {
        let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).unwrap();
        let e = |c: &[i64]| g.int_element(c).unwrap();
        let amb = [e(&[1, 0]), e(&[0, 1])];
        assert_eq!(
            subgroup_index(&[e(&[2, 0]), e(&[0, 2])], &amb).unwrap(),
            GroupIndex::Finite(4.into())
        );
        assert_eq!(subgroup_index(&amb, &amb).unwrap(), GroupIndex::Finite(1.into()));
        assert_eq!(subgroup_index(&[e(&[3, 0])], &amb).unwrap(), GroupIndex::Infinite);
        assert!(matches!(
            subgroup_index(&[e(&[1, 0])], &[e(&[2, 0])]),
            Err(ValueError::NotInAmbient { index: 0, .. })
        ));
        // redundant generators on both sides
        assert_eq!(
            subgroup_index(
                &[e(&[2, 1]), e(&[1, 2]), e(&[3, 3])],
                &[e(&[1, 0]), e(&[0, 1]), e(&[1, 1])]
            )
            .unwrap(),
            GroupIndex::Finite(3.into())
        );
    }

    #[test]
    fn rational_coordinates_index() {
        let g = OrderedGroup::rationals();
        let third = g.element(vec![q(1, 27)]).unwrap();
        let one = g.int_element(&[1]).unwrap();
        assert_eq!(subgroup_index(&[one], &[third]).unwrap(), GroupIndex::Finite(27.into()));
    }

    #[test]
    fn multiples_below() {
        let g = pi_group();
        let y = g.int_element(&[0, 1]).unwrap();
        let bound = g.int_element(&[10, 0]).unwrap();
        assert_eq!(y.max_multiple_below(&bound).unwrap(), BigInt::from(3));
        let x = g.int_element(&[1, 0]).unwrap();
        assert_eq!(x.max_multiple_below(&bound).unwrap(), BigInt::from(10));
    }
}
