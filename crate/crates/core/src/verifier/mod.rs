//! Checks for the monomial normal form
//! `x_i = delta_i * y_1^{a_i1} ... y_s^{a_is}` (i <= s), `x_i = y_i` (i > s):
//! ramification index, free basis `w_1 = 1, ..., w_e`, coset values, the
//! value-min formula, and the diagonal character action.

mod cyclotomic;
mod kummer;
pub mod poly;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{self, IntMatrix, LatticeError, QuotientStructure};
use crate::monoid::{self, MonoidError, ParBox};
use crate::values::{self, GroupElement, GroupIndex, OrderedGroup, SubgroupMembership, ValueError};

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use kummer::{kummer_symmetric_certificate, SymmetricCertificate};

/// Box size for the translate cover check in `analyze`.
pub const DEFAULT_COVER_BOUND: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifierError {
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("invalid extension: {0}")]
    Invalid(String),
    #[error("matrix is singular")]
    Singular,
    #[error("minimizer not unique: terms {first} and {second} both reach {value}")]
    NonUniqueMinimizer {
        first: usize,
        second: usize,
        value: GroupElement,
    },
    #[error("no coefficient present")]
    NoCoefficients,
    #[error("coefficient {index} has value {value} outside the smaller value group")]
    CoefficientOutsideGroup { index: usize, value: GroupElement },
    #[error("leading form of z is ambiguous: {0}")]
    AmbiguousLeadingForm(String),
}

pub type Result<T> = std::result::Result<T, VerifierError>;

#[derive(Clone, Debug)]
pub struct MonomialExtension {
    s: usize,
    n: usize,
    a: IntMatrix,
    y_values: Vec<GroupElement>,
    unit_flags: Vec<bool>,
}

impl MonomialExtension {
    pub fn new(a: IntMatrix, y_values: Vec<GroupElement>, unit_flags: Option<Vec<bool>>) -> Result<Self> {
        let s = a.rows();
        let n = y_values.len();
        if !a.is_square() {
            return Err(LatticeError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            }
            .into());
        }
        if s == 0 {
            return Err(VerifierError::Invalid("matrix: s must be positive".into()));
        }
        if s > n {
            return Err(VerifierError::Invalid(format!(
                "y_values: {n} values for s = {s}; need at least s"
            )));
        }
        if (0..s).any(|i| a.row(i).iter().any(Signed::is_negative)) {
            return Err(VerifierError::Invalid("matrix: entries must be nonnegative".into()));
        }
        if lattice::det(&a)?.is_zero() {
            return Err(VerifierError::Singular);
        }
        let group = Arc::clone(y_values[0].group());
        if y_values.iter().any(|y| y.group() != &group) {
            return Err(ValueError::GroupMismatch.into());
        }
        for (i, y) in y_values.iter().enumerate() {
            if !y.is_positive()? {
                return Err(VerifierError::Invalid(format!("y_values[{i}] = {y} is not positive")));
            }
        }
        if values::rational_rank(&y_values[..s]) != s {
            return Err(VerifierError::Invalid(
                "y_values: the first s values are not rationally independent".into(),
            ));
        }
        let unit_flags = unit_flags.unwrap_or_else(|| vec![true; s]);
        if unit_flags.len() != s {
            return Err(VerifierError::Invalid(format!(
                "unit_flags: {} flags for s = {s}",
                unit_flags.len()
            )));
        }
        Ok(MonomialExtension {
            s,
            n,
            a,
            y_values,
            unit_flags,
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn y_values(&self) -> &[GroupElement] {
        &self.y_values
    }

    pub fn unit_flags(&self) -> &[bool] {
        &self.unit_flags
    }

    pub fn group(&self) -> &Arc<OrderedGroup> {
        self.y_values[0].group()
    }

    /// Value of the monomial `y^u`.
    pub fn monomial_value(&self, u: &[BigInt]) -> Result<GroupElement> {
        let mut v = self.group().zero();
        for (c, y) in u.iter().zip(&self.y_values) {
            if !c.is_zero() {
                v = v.add(&y.scale_int(c))?;
            }
        }
        Ok(v)
    }

    /// `nu(x_i)`: row `i` of `A` against the y-values for `i < s`, else `nu(y_i)`.
    pub fn x_values(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            if i < self.s {
                out.push(self.monomial_value(self.a.row(i))?);
            } else {
                out.push(self.y_values[i].clone());
            }
        }
        Ok(out)
    }

    /// Rows of `A` padded by zeros, followed by the unit vectors `e_{s+1}..e_n`.
    pub fn padded_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut r = vec![BigInt::zero(); self.n];
            if i < self.s {
                r[..self.s].clone_from_slice(self.a.row(i));
            } else {
                r[i] = BigInt::from(1);
            }
            rows.push(r);
        }
        rows
    }

    pub fn par_box(&self) -> Result<ParBox> {
        Ok(monoid::par_points(&self.padded_rows())?)
    }
}

#[derive(Clone, Debug)]
pub struct AJReport {
    pub e: BigInt,
    pub invariant_factors: QuotientStructure,
    pub index: GroupIndex,
    pub w_exponents: Vec<Vec<BigInt>>,
    pub coset_values: Vec<GroupElement>,
    pub free_basis_ok: bool,
    pub cosets_complete: bool,
    pub cover_disjoint: bool,
    pub invariants_trivial_only: bool,
    pub notes: Vec<String>,
}

impl AJReport {
    pub fn all_ok(&self) -> bool {
        self.free_basis_ok && self.cosets_complete && self.cover_disjoint && self.invariants_trivial_only
    }
}

pub fn analyze(ext: &MonomialExtension) -> Result<AJReport> {
    analyze_with_bound(ext, DEFAULT_COVER_BOUND)
}

pub fn analyze_with_bound(ext: &MonomialExtension, bound: u32) -> Result<AJReport> {
    let mut notes = Vec::new();
    let det = lattice::det(&ext.a)?;
    let e = det.abs();
    let qs = lattice::quotient_structure(&ext.a)?;
    let index = values::subgroup_index(&ext.x_values()?, &ext.y_values)?;
    let pb = ext.par_box()?;
    let lambda_count = BigInt::from(pb.len());
    let free_basis_ok = lambda_count == e && qs.order == e && index == GroupIndex::Finite(e.clone());
    if !free_basis_ok {
        notes.push(format!(
            "count disagreement: |Lambda| = {lambda_count}, |det A| = {e}, quotient order = {}, index = {index}",
            qs.order
        ));
    }
    let w_exponents: Vec<Vec<BigInt>> = pb.points().to_vec();
    let coset_values = w_exponents
        .iter()
        .map(|u| ext.monomial_value(u))
        .collect::<Result<Vec<_>>>()?;

    let overlap = pb.overlapping_pair();
    let cover = pb.cover_check(bound);
    if let Some((i, j)) = overlap {
        notes.push(format!("translates of w_{} and w_{} meet", i + 1, j + 1));
    }
    if !cover.ok() {
        notes.push(format!(
            "{} cone points in the [0,{bound}] box are not covered exactly once",
            cover.failures.len()
        ));
    }
    let cover_disjoint = overlap.is_none() && cover.ok();

    let cosets_complete = match validate_cosets(ext, &coset_values)? {
        CosetValidation::Valid => match cosets_hit_every_class(ext, &coset_values)? {
            true => true,
            false => {
                notes.push("some class of the quotient has no coset value".into());
                false
            }
        },
        bad => {
            notes.push(format!("coset validation: {bad:?}"));
            false
        }
    };

    let action = character_action(ext, &w_exponents)?;
    let invariants_trivial_only = action.invariant_indices == vec![0] && action.additive && action.well_defined;
    if !invariants_trivial_only {
        notes.push(format!(
            "invariant indices {:?}, additive {}, well defined {}",
            action.invariant_indices, action.additive, action.well_defined
        ));
    }
    if w_exponents.first().is_none_or(|w| w.iter().any(|x| !x.is_zero())) {
        return Err(LatticeError::Invariant("w_1 is not the zero exponent".into()).into());
    }
    Ok(AJReport {
        e,
        invariant_factors: qs,
        index,
        w_exponents,
        coset_values,
        free_basis_ok,
        cosets_complete,
        cover_disjoint,
        invariants_trivial_only,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CosetValidation {
    Valid,
    WrongCount { found: usize, expected: BigInt },
    SameClass { first: usize, second: usize },
}

/// Pairwise differences outside `Gamma_nu` and count `e`.
pub fn validate_cosets(ext: &MonomialExtension, coset_values: &[GroupElement]) -> Result<CosetValidation> {
    let e = lattice::det(&ext.a)?.abs();
    let small = SubgroupMembership::new(&ext.x_values()?)?;
    for i in 0..coset_values.len() {
        for j in i + 1..coset_values.len() {
            if small.contains(&coset_values[i].sub(&coset_values[j])?)? {
                return Ok(CosetValidation::SameClass { first: i, second: j });
            }
        }
    }
    if BigInt::from(coset_values.len()) != e {
        return Ok(CosetValidation::WrongCount {
            found: coset_values.len(),
            expected: e,
        });
    }
    Ok(CosetValidation::Valid)
}

/// Every class `b . y` of `Z^s / A^t Z^s` is congruent to some coset value.
fn cosets_hit_every_class(ext: &MonomialExtension, coset_values: &[GroupElement]) -> Result<bool> {
    let small = SubgroupMembership::new(&ext.x_values()?)?;
    for rep in lattice::coset_representatives(&ext.a.transpose())? {
        let v = ext.monomial_value(&rep)?;
        let mut hits = 0;
        for w in coset_values {
            if small.contains(&v.sub(w)?)? {
                hits += 1;
            }
        }
        if hits != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validated coset values `nu(w_1), ..., nu(w_e)`.
pub fn coset_representatives(ext: &MonomialExtension) -> Result<Vec<GroupElement>> {
    let pb = ext.par_box()?;
    let values = pb
        .points()
        .iter()
        .map(|u| ext.monomial_value(u))
        .collect::<Result<Vec<_>>>()?;
    match validate_cosets(ext, &values)? {
        CosetValidation::Valid => Ok(values),
        bad => Err(LatticeError::Invariant(format!("coset representatives failed validation: {bad:?}")).into()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinFormula {
    pub value: GroupElement,
    pub index: usize,
}

/// `min_i (nu(f_i) + nu(w_i))` over the present coefficients, with the
/// unique minimizing index.
pub fn min_formula_check(
    ext: &MonomialExtension,
    coset_values: &[GroupElement],
    coeff_values: &[Option<GroupElement>],
) -> Result<MinFormula> {
    if coeff_values.len() != coset_values.len() {
        return Err(VerifierError::Invalid(format!(
            "{} coefficients for {} basis elements",
            coeff_values.len(),
            coset_values.len()
        )));
    }
    let small = SubgroupMembership::new(&ext.x_values()?)?;
    let mut best: Option<(usize, GroupElement)> = None;
    let mut tie: Option<usize> = None;
    for (i, c) in coeff_values.iter().enumerate() {
        let Some(c) = c else { continue };
        if !small.contains(c)? {
            return Err(VerifierError::CoefficientOutsideGroup {
                index: i,
                value: c.clone(),
            });
        }
        let v = c.add(&coset_values[i])?;
        match &best {
            None => best = Some((i, v)),
            Some((_, b)) => match v.compare(b)? {
                Ordering::Less => {
                    best = Some((i, v));
                    tie = None;
                }
                Ordering::Equal => tie = Some(i),
                Ordering::Greater => {}
            },
        }
    }
    let (index, value) = best.ok_or(VerifierError::NoCoefficients)?;
    if let Some(second) = tie {
        return Err(VerifierError::NonUniqueMinimizer {
            first: index,
            second,
            value,
        });
    }
    Ok(MinFormula { value, index })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterAction {
    pub order: BigInt,
    /// representatives `c` of `Z^s / A Z^s`
    pub group_elements: Vec<Vec<BigInt>>,
    /// `table[c][i] = u_i . (adj A) c mod e` for the exponent `u_i` of `w_i`
    pub table: Vec<Vec<BigInt>>,
    pub invariant_indices: Vec<usize>,
    pub additive: bool,
    pub well_defined: bool,
}

/// The diagonal action `sigma_c(y_j) = w^{((adj A) c)_j} y_j` on the basis
/// monomials `w_i`.
pub fn character_action(ext: &MonomialExtension, w_exponents: &[Vec<BigInt>]) -> Result<CharacterAction> {
    let s = ext.s;
    let e = lattice::det(&ext.a)?.abs();
    let adj = lattice::adjugate(&ext.a)?;
    let group_elements = lattice::coset_representatives(&ext.a)?;
    let chi = |c: &[BigInt], u: &[BigInt]| -> Result<BigInt> {
        let g = adj.mul_vec(c)?;
        let dot: BigInt = u[..s].iter().zip(&g).map(|(a, b)| a * b).sum();
        Ok(dot.mod_floor(&e))
    };
    let mut table = Vec::with_capacity(group_elements.len());
    for c in &group_elements {
        let row = w_exponents.iter().map(|u| chi(c, u)).collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let invariant_indices: Vec<usize> = (0..w_exponents.len())
        .filter(|&i| table.iter().all(|row| row[i].is_zero()))
        .collect();
    let mut additive = true;
    for (a, ca) in group_elements.iter().enumerate() {
        for (b, cb) in group_elements.iter().enumerate() {
            let sum: Vec<BigInt> = ca.iter().zip(cb).map(|(x, y)| x + y).collect();
            for (i, u) in w_exponents.iter().enumerate() {
                let lhs = chi(&sum, u)?;
                let rhs = (&table[a][i] + &table[b][i]).mod_floor(&e);
                additive &= lhs == rhs;
            }
        }
    }
    // shifting c by a column of A leaves every character unchanged
    let mut well_defined = true;
    for c in &group_elements {
        for k in 0..s {
            let shifted: Vec<BigInt> = c.iter().zip(ext.a.column(k)).map(|(x, y)| x + y).collect();
            for u in w_exponents {
                well_defined &= chi(&shifted, u)? == chi(c, u)?;
            }
        }
    }
    Ok(CharacterAction {
        order: e,
        group_elements,
        table,
        invariant_indices,
        additive,
        well_defined,
    })
}

/// Exponent of the root of unity by which `c` scales `y_j`.
pub(crate) fn action_exponents(ext: &MonomialExtension) -> Result<(u32, Vec<Vec<i64>>)> {
    let e = lattice::det(&ext.a)?.abs();
    let order = e
        .to_u32()
        .ok_or_else(|| VerifierError::Invalid(format!("group order {e} too large")))?;
    let adj = lattice::adjugate(&ext.a)?;
    let mut out = Vec::new();
    for c in lattice::coset_representatives(&ext.a)? {
        let g = adj.mul_vec(&c)?;
        let mut row = vec![0i64; ext.n];
        for (j, x) in g.iter().enumerate() {
            row[j] = x.mod_floor(&e).to_i64().expect("reduced mod e");
        }
        out.push(row);
    }
    Ok((order, out))
}
