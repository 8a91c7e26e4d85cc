//! The worked examples shipped with the library and the families used to
//! build them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::harness::{run_instance, RunOptions};
use super::instance::Instance;
use super::report::Report;
use super::{CorpusError, Result};
use crate::graded::{BinomialPresentation, GradedExtension, Monomial, Relation};
use crate::monoid::AffineMonoid;
use crate::values::OrderedGroup;

pub const EXAMPLE_NAMES: [&str; 6] = ["ex1", "ex2", "ex3", "ex4", "thm2_diag", "thm2_det3"];

/// Instance text of a built-in example.
pub fn example_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "ex1" => include_str!("../../corpus/ex1.toml"),
        "ex2" => include_str!("../../corpus/ex2.toml"),
        "ex3" => include_str!("../../corpus/ex3.toml"),
        "ex4" => include_str!("../../corpus/ex4.toml"),
        "thm2_diag" => include_str!("../../corpus/thm2_diag.toml"),
        "thm2_det3" => include_str!("../../corpus/thm2_det3.toml"),
        _ => return None,
    })
}

pub fn example_instance(name: &str) -> Result<Instance> {
    let src = example_source(name)
        .ok_or_else(|| CorpusError::Input(format!("unknown example {name:?}; known: {}", EXAMPLE_NAMES.join(", "))))?;
    Instance::from_toml_str(src, name)
}

/// Run a built-in example against its expected verdicts.
pub fn run_example(name: &str, opts: &RunOptions) -> Result<Report> {
    run_instance(&example_instance(name)?, opts)
}

/// `b_0 = 1`, `b_1 = 1/q`, `q b_j = q^(j-1) + b_(j-1)` for `j` in `0..=big_j`.
pub fn generating_sequence(q: u64, big_j: usize) -> Vec<BigRational> {
    let q = BigInt::from(q);
    let mut b = vec![BigRational::one()];
    if big_j >= 1 {
        b.push(BigRational::new(BigInt::one(), q.clone()));
    }
    for j in 2..=big_j {
        let prev = b[j - 1].clone();
        b.push((BigRational::from_integer(q.pow(j as u32 - 1)) + prev) / q.clone());
    }
    b
}

/// `S2 = <b_0..b_J>`, `S1 = multiplier * S2` at each level `J`.
pub fn generating_sequence_tower(
    g: &Arc<OrderedGroup>,
    q: u64,
    multiplier: u64,
    levels: &[u32],
    f: u32,
    label: &str,
) -> Result<Vec<(u32, GradedExtension)>> {
    let mut out = Vec::with_capacity(levels.len());
    for &j in levels {
        let gens = generating_sequence(q, j as usize)
            .into_iter()
            .map(|b| g.element(vec![b]))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let s2 = AffineMonoid::new(g, gens)?;
        let s1 = s2.scaled(&BigInt::from(multiplier))?;
        out.push((j, GradedExtension::new(s1, s2, f, label)?));
    }
    Ok(out)
}

fn unit(n: usize, i: usize, k: u64) -> Monomial {
    let mut m = vec![0; n];
    m[i] = k;
    m
}

/// `k[V_0..V_J] / (V_1^(p^2) - V_0, V_j - V_0^(p^(2j-2)) V_(j-1))`.
pub fn frobenius_chain(name: &str, p: u64, big_j: usize) -> Result<BinomialPresentation> {
    let n = big_j + 1;
    let vars = (0..n).map(|j| format!("{name}{j}")).collect();
    let mut rels = Vec::with_capacity(big_j);
    if n > 1 {
        rels.push(Relation::new(unit(n, 1, p * p), unit(n, 0, 1)));
    }
    for j in 2..n {
        let mut rhs = unit(n, 0, p.pow(2 * j as u32 - 2));
        rhs[j - 1] = 1;
        rels.push(Relation::new(unit(n, j, 1), rhs));
    }
    Ok(BinomialPresentation::new(vars, None, rels)?)
}

/// `U_j -> X_j^p`.
pub fn frobenius_map(p: u64, big_j: usize) -> Vec<Monomial> {
    (0..=big_j).map(|j| unit(big_j + 1, j, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::finiteness_tower;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sequence_values() {
        assert_eq!(generating_sequence(4, 3), vec![q(1, 1), q(1, 4), q(17, 16), q(273, 64)]);
        assert_eq!(generating_sequence(3, 2), vec![q(1, 1), q(1, 3), q(10, 9)]);
        assert_eq!(generating_sequence(9, 0), vec![q(1, 1)]);
    }

    #[test]
    fn surrogate_counts() {
        let g = OrderedGroup::rationals();
        let t = generating_sequence_tower(&g, 3, 3, &[1, 2, 3], 1, "s").unwrap();
        let r = finiteness_tower(&t).unwrap();
        assert_eq!(r.counts(), vec![Some(3), Some(9), Some(27)]);
    }

    #[test]
    fn all_examples_parse() {
        for name in EXAMPLE_NAMES {
            example_instance(name).unwrap();
        }
        assert!(example_instance("ex9").is_err());
    }
}
