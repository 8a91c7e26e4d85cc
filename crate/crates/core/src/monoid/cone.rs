//! Exact feasibility of `G * lambda = target, lambda >= 0` over the rationals.
//!
//! Equalities are eliminated by Gauss-Jordan reduction; the remaining free
//! variables are eliminated by Fourier-Motzkin, and a feasible point is
//! recovered by back substitution through the stored stages.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub const MAX_FREE_VARIABLES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCapExceeded {
    pub free_variables: usize,
}

/// `coeffs . x + constant >= 0`
#[derive(Clone, Debug, PartialEq, Eq)]
struct Inequality {
    coeffs: Vec<BigRational>,
    constant: BigRational,
}

impl Inequality {
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(|| {
                if self.constant.is_zero() {
                    BigRational::from_integer(1.into())
                } else {
                    self.constant.abs()
                }
            });
        for c in &mut self.coeffs {
            *c /= &scale;
        }
        self.constant /= &scale;
        self
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.constant.is_negative()
    }
}

/// Solve `sum_j lambda_j * gens[j] = target` with every `lambda_j >= 0`.
///
/// Each generator and the target are coordinate vectors of equal length.
pub fn cone_point(
    gens: &[Vec<BigRational>],
    target: &[BigRational],
) -> Result<Option<Vec<BigRational>>, DimensionCapExceeded> {
    let k = gens.len();
    let r = target.len();
    if k == 0 {
        return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
    }
    // augmented matrix rows: coordinate i, columns: generators then target
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> = gens.iter().map(|g| g[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let v = &m[row][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    if m[row..].iter().any(|rw| !rw[k].is_zero()) {
        return Ok(None);
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    if free.len() > MAX_FREE_VARIABLES {
        return Err(DimensionCapExceeded {
            free_variables: free.len(),
        });
    }
    let nf = free.len();
    let mut system: Vec<Inequality> = Vec::new();
    for (fi, _) in free.iter().enumerate() {
        let mut coeffs = vec![BigRational::zero(); nf];
        coeffs[fi] = BigRational::from_integer(1.into());
        system.push(Inequality {
            coeffs,
            constant: BigRational::zero(),
        });
    }
    // lambda_pivot = rhs - sum_f m[row][f] x_f >= 0
    for (pr, _) in pivots.iter().enumerate() {
        system.push(Inequality {
            coeffs: free.iter().map(|&f| -&m[pr][f]).collect(),
            constant: m[pr][k].clone(),
        });
    }

    let mut stages = vec![system];
    for var in 0..nf {
        let next = eliminate(stages.last().expect("nonempty"), var);
        stages.push(next);
    }
    if stages[nf].iter().any(|ineq| ineq.constant.is_negative()) {
        return Ok(None);
    }

    let mut x = vec![BigRational::zero(); nf];
    for var in (0..nf).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for ineq in &stages[var] {
            let a = &ineq.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rest = ineq.constant.clone();
            for j in var + 1..nf {
                rest += &ineq.coeffs[j] * &x[j];
            }
            let bound = -rest / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[var] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }

    let mut lambda = vec![BigRational::zero(); k];
    for (fi, &f) in free.iter().enumerate() {
        lambda[f] = x[fi].clone();
    }
    for (pr, &p) in pivots.iter().enumerate() {
        let mut v = m[pr][k].clone();
        for (fi, &f) in free.iter().enumerate() {
            v -= &m[pr][f] * &x[fi];
        }
        lambda[p] = v;
    }
    debug_assert!(lambda.iter().all(|l| !l.is_negative()));
    Ok(Some(lambda))
}

fn eliminate(system: &[Inequality], var: usize) -> Vec<Inequality> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: Vec<Inequality> = Vec::new();
    let push = |ineq: Inequality, out: &mut Vec<Inequality>| {
        let n = ineq.normalized();
        if !n.is_trivial() && !out.contains(&n) {
            out.push(n);
        }
    };
    for ineq in system {
        let a = &ineq.coeffs[var];
        if a.is_positive() {
            pos.push(ineq);
        } else if a.is_negative() {
            neg.push(ineq);
        } else {
            push(ineq.clone(), &mut out);
        }
    }
    for p in &pos {
        for n in &neg {
            let (ap, an) = (&p.coeffs[var], -&n.coeffs[var]);
            let coeffs: Vec<BigRational> = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| x * &an + y * ap).collect();
            let constant = &p.constant * &an + &n.constant * ap;
            push(Inequality { coeffs, constant }, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn vecq(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn check(gens: &[Vec<BigRational>], target: &[BigRational], lambda: &[BigRational]) {
        for i in 0..target.len() {
            let s: BigRational = gens.iter().zip(lambda).map(|(g, l)| &g[i] * l).sum();
            assert_eq!(s, target[i]);
        }
        assert!(lambda.iter().all(|l| !l.is_negative()));
    }

    #[test]
    fn simplicial() {
        let gens = vec![vecq(&[1, 1]), vecq(&[0, 1])];
        assert_eq!(cone_point(&gens, &vecq(&[1, 0])).unwrap(), None);
        let l = cone_point(&gens, &vecq(&[2, 5])).unwrap().unwrap();
        check(&gens, &vecq(&[2, 5]), &l);
    }

    #[test]
    fn non_simplicial() {
        // four rays around the positive quadrant of a 3d cone
        let gens = vec![vecq(&[1, 0, 1]), vecq(&[0, 1, 1]), vecq(&[-1, 0, 1]), vecq(&[0, -1, 1])];
        let t = vecq(&[0, 0, 1]);
        let l = cone_point(&gens, &t).unwrap().unwrap();
        check(&gens, &t, &l);
        assert_eq!(cone_point(&gens, &vecq(&[2, 0, 1])).unwrap(), None);
        assert_eq!(cone_point(&gens, &vecq(&[0, 0, -1])).unwrap(), None);
    }

    #[test]
    fn redundant_generators() {
        let gens = vec![vecq(&[2]), vecq(&[3]), vecq(&[5])];
        let l = cone_point(&gens, &vecq(&[7])).unwrap().unwrap();
        check(&gens, &vecq(&[7]), &l);
        assert_eq!(cone_point(&gens, &vecq(&[-1])).unwrap(), None);
    }

    #[test]
    fn cap_enforced() {
        let gens: Vec<_> = (1..=8).map(|i| vecq(&[i])).collect();
        assert!(cone_point(&gens, &vecq(&[1])).is_err());
    }
}
