//! Semigroup-algebra models of associated graded rings and the extension
//! tests between them.
//!
//! A graded ring of monomial type is `k[S]` for a value semigroup `S`; an
//! extension `k[S1] -> k[S2]` is recorded by the two monoids and a declared
//! residue degree `f`.

mod presentation;

use num_bigint::BigInt;
use thiserror::Error;

use crate::monoid::{self, AffineMonoid, ModuleStructure, MonoidError, MonoidTower, TowerReport};
use crate::values::{self, GroupElement, GroupIndex, ValueError};

pub use presentation::{
    substitution_check, BinomialPresentation, Monomial, Relation, RewriteOutcome, SubstitutionReport, ValueDerivation,
};

/// Attached to every integrality verdict.
pub const GENERAL_RING_CAVEAT: &str = "exact for semigroup algebras; for general graded rings \
     NotIntegral remains sound and Integral is advisory";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradedError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("not integral: {witness} has no positive multiple in the smaller semigroup")]
    NotIntegral { witness: GroupElement },
    #[error("the value group index is infinite")]
    InfiniteIndex,
    #[error("generator {index} ({element}) of the smaller semigroup is outside the larger group")]
    NotNested { index: usize, element: String },
    #[error("residue degree must be positive")]
    ZeroResidueDegree,
    #[error("presentation: {0}")]
    Presentation(String),
    #[error("value mismatch for {var}: expected {expected}, found {found}")]
    ValueMismatch {
        var: String,
        expected: String,
        found: String,
    },
}

impl From<ValueError> for GradedError {
    fn from(e: ValueError) -> Self {
        GradedError::Monoid(e.into())
    }
}

pub type Result<T> = std::result::Result<T, GradedError>;

/// `gr(R) = k[S1] ⊂ gr(S) = k[S2]` with residue degree `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedExtension {
    pub s1: AffineMonoid,
    pub s2: AffineMonoid,
    pub f: u32,
    pub label: String,
}

impl GradedExtension {
    pub fn new(s1: AffineMonoid, s2: AffineMonoid, f: u32, label: impl Into<String>) -> Result<Self> {
        if s1.group() != s2.group() {
            return Err(ValueError::GroupMismatch.into());
        }
        if f == 0 {
            return Err(GradedError::ZeroResidueDegree);
        }
        let amb = values::SubgroupMembership::new(s2.gens())?;
        for (i, g) in s1.gens().iter().enumerate() {
            if !amb.contains(g)? {
                return Err(GradedError::NotNested {
                    index: i,
                    element: g.to_string(),
                });
            }
        }
        Ok(GradedExtension {
            s1,
            s2,
            f,
            label: label.into(),
        })
    }
}

/// `multiplier * generator = sum coeffs_i * s1_i` with the least multiplier.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityCert {
    pub generator: GroupElement,
    pub multiplier: BigInt,
    pub coeffs: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Integrality {
    Integral { certs: Vec<IntegralityCert> },
    NotIntegral { witness: GroupElement },
}

impl Integrality {
    pub fn is_integral(&self) -> bool {
        matches!(self, Integrality::Integral { .. })
    }
}

pub fn integrality_test(ext: &GradedExtension) -> Result<Integrality> {
    let mut certs = Vec::with_capacity(ext.s2.gens().len());
    for g in ext.s2.gens() {
        match ext.s1.saturation_member(g)? {
            Some((multiplier, coeffs)) => certs.push(IntegralityCert {
                generator: g.clone(),
                multiplier,
                coeffs,
            }),
            None => return Ok(Integrality::NotIntegral { witness: g.clone() }),
        }
    }
    Ok(Integrality::Integral { certs })
}

pub fn finiteness_test(ext: &GradedExtension) -> Result<ModuleStructure> {
    match monoid::module_generators(&ext.s2, &ext.s1) {
        Err(MonoidError::NotIntegral { witness }) => Err(GradedError::NotIntegral { witness }),
        other => Ok(other?),
    }
}

/// Extensions indexed by a truncation level.
pub fn finiteness_tower(levels: &[(u32, GradedExtension)]) -> Result<TowerReport> {
    let mut tower = MonoidTower::new();
    for (level, ext) in levels {
        tower.push(*level, ext.s2.clone(), ext.s1.clone());
    }
    match tower.analyze() {
        Err(MonoidError::NotIntegral { witness }) => Err(GradedError::NotIntegral { witness }),
        other => Ok(other?),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PPowerReport {
    pub holds: bool,
    /// `p^n * gamma` for the generators `gamma` where it leaves `S1`
    pub failures: Vec<GroupElement>,
}

/// Whether `p^n * gamma` lies in `S1` for every generator `gamma` of `S2`.
pub fn p_power_inclusion(ext: &GradedExtension, p: u32, n: u32) -> Result<PPowerReport> {
    let k = BigInt::from(p).pow(n);
    let mut failures = Vec::new();
    for g in ext.s2.gens() {
        let t = g.scale_int(&k);
        if ext.s1.member(&t)?.is_none() {
            failures.push(t);
        }
    }
    Ok(PPowerReport {
        holds: failures.is_empty(),
        failures,
    })
}

/// `e * f`, the degree of the quotient field extension.
pub fn qf_degree(ext: &GradedExtension) -> Result<BigInt> {
    match monoid::group_index(&ext.s2, &ext.s1)? {
        GroupIndex::Finite(e) => Ok(e * ext.f),
        GroupIndex::Infinite => Err(GradedError::InfiniteIndex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::OrderedGroup;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn mon(g: &Arc<OrderedGroup>, rows: &[Vec<i64>]) -> AffineMonoid {
        AffineMonoid::from_int_coords(g, rows).unwrap()
    }

    fn z2() -> Arc<OrderedGroup> {
        OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).unwrap()
    }

    #[test]
    fn ex1_not_integral() {
        let g = OrderedGroup::from_tags(0, &["rat", "pi"]).unwrap();
        let ext = GradedExtension::new(
            mon(&g, &[vec![1, 1], vec![0, 1]]),
            mon(&g, &[vec![1, 0], vec![0, 1]]),
            1,
            "ex1",
        )
        .unwrap();
        assert_eq!(
            integrality_test(&ext).unwrap(),
            Integrality::NotIntegral {
                witness: g.int_element(&[1, 0]).unwrap()
            }
        );
        assert!(matches!(finiteness_test(&ext), Err(GradedError::NotIntegral { .. })));
    }

    #[test]
    fn squares() {
        let g = z2();
        let ext = GradedExtension::new(
            mon(&g, &[vec![2, 0], vec![0, 2]]),
            mon(&g, &[vec![1, 0], vec![0, 1]]),
            1,
            "diag",
        )
        .unwrap();
        let Integrality::Integral { certs } = integrality_test(&ext).unwrap() else {
            panic!()
        };
        assert!(certs.iter().all(|c| c.multiplier == BigInt::from(2)));
        assert_eq!(finiteness_test(&ext).unwrap().generator_count(), Some(4));
        assert_eq!(qf_degree(&ext).unwrap(), BigInt::from(4));
        assert!(p_power_inclusion(&ext, 2, 1).unwrap().holds);
        assert!(!p_power_inclusion(&ext, 3, 1).unwrap().holds);
    }

    #[test]
    fn trivial_extension() {
        let g = z2();
        let s = mon(&g, &[vec![1, 0], vec![0, 1]]);
        let ext = GradedExtension::new(s.clone(), s, 1, "same").unwrap();
        let Integrality::Integral { certs } = integrality_test(&ext).unwrap() else {
            panic!()
        };
        assert!(certs.iter().all(|c| c.multiplier == BigInt::from(1)));
        assert_eq!(
            finiteness_test(&ext).unwrap(),
            ModuleStructure::Finite { gens: vec![g.zero()] }
        );
        assert_eq!(qf_degree(&ext).unwrap(), BigInt::from(1));
        for p in [2, 3, 5] {
            assert!(p_power_inclusion(&ext, p, 0).unwrap().holds);
            assert!(p_power_inclusion(&ext, p, 1).unwrap().holds);
        }
    }

    #[test]
    fn wrong_ray() {
        let g = z2();
        let ext = GradedExtension::new(mon(&g, &[vec![1, 1]]), mon(&g, &[vec![1, 0], vec![0, 1]]), 1, "ray").unwrap();
        let r = p_power_inclusion(&ext, 2, 1).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failures[0], g.int_element(&[2, 0]).unwrap());
        assert!(matches!(qf_degree(&ext), Err(GradedError::InfiniteIndex)));
    }

    #[test]
    fn generating_sequence_tower() {
        // b_0 = 1, b_1 = 1/4, 4 b_j = 4^(j-1) + b_(j-1); S1 = 2 S2
        let g = OrderedGroup::rationals();
        let mut b = vec![
            BigRational::from_integer(1.into()),
            BigRational::new(1.into(), 4.into()),
        ];
        let mut levels = Vec::new();
        for j in 1..=3u32 {
            if j >= 2 {
                let prev = b[j as usize - 1].clone();
                b.push((BigRational::from_integer(BigInt::from(4).pow(j - 1)) + prev) / BigInt::from(4));
            }
            let gens: Vec<_> = b[..=j as usize]
                .iter()
                .map(|x| g.element(vec![x.clone()]).unwrap())
                .collect();
            let s2 = AffineMonoid::new(&g, gens).unwrap();
            let s1 = s2.scaled(&BigInt::from(2)).unwrap();
            let ext = GradedExtension::new(s1, s2, 1, "tower").unwrap();
            assert!(p_power_inclusion(&ext, 2, 1).unwrap().holds);
            levels.push((j, ext));
        }
        let r = finiteness_tower(&levels).unwrap();
        assert_eq!(r.counts(), vec![Some(2), Some(4), Some(8)]);
        assert_eq!(r.verdict, monoid::TowerVerdict::NotFinite);
    }

    #[test]
    fn declared_residue_degree() {
        let g = OrderedGroup::rationals();
        let ext = GradedExtension::new(mon(&g, &[vec![3]]), mon(&g, &[vec![1]]), 2, "e3f2").unwrap();
        assert_eq!(qf_degree(&ext).unwrap(), BigInt::from(6));
    }
}
