//! Truncated power series in one variable and the order valuation obtained
//! by substituting them into polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::verifier::poly::RatPoly;

/// `sum_{i < precision} c_i x^i + O(x^precision)`
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub var: String,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesOrder {
    Exact(usize),
    /// every coefficient below the precision vanishes
    BeyondTruncation {
        precision: usize,
    },
}

impl SeriesOrder {
    pub fn exact(&self) -> Option<usize> {
        match self {
            SeriesOrder::Exact(k) => Some(*k),
            SeriesOrder::BeyondTruncation { .. } => None,
        }
    }
}

impl TruncatedSeries {
    /// Coefficients `0..precision`; missing ones are zero.
    pub fn new(var: impl Into<String>, mut coeffs: Vec<BigRational>, precision: usize) -> Self {
        coeffs.resize(precision, BigRational::zero());
        TruncatedSeries {
            var: var.into(),
            coeffs,
        }
    }

    pub fn constant(var: &str, c: BigRational, precision: usize) -> Self {
        Self::new(var, vec![c], precision)
    }

    /// The variable itself.
    pub fn variable(var: &str, precision: usize) -> Self {
        Self::new(var, vec![BigRational::zero(), BigRational::one()], precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => SeriesOrder::Exact(k),
            None => SeriesOrder::BeyondTruncation {
                precision: self.precision(),
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        let c = (0..p).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: c,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Product; known to `min(p_a + ord b, p_b + ord a)`, capped at the
    /// smaller precision.
    pub fn mul(&self, other: &Self) -> Self {
        let ord = |s: &Self| s.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(s.precision());
        let p = (self.precision() + ord(other))
            .min(other.precision() + ord(self))
            .min(self.precision().max(other.precision()));
        let mut c = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= p {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(p - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: c,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.var, BigRational::one(), self.precision());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `f / x`, losing one coefficient of precision; `None` unless `c_0 = 0`.
    pub fn div_x(&self) -> Option<Self> {
        if !self.coeffs.first()?.is_zero() {
            return None;
        }
        Some(TruncatedSeries {
            var: self.var.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `x * f`, gaining one coefficient of precision.
    pub fn mul_x(&self) -> Self {
        let mut c = Vec::with_capacity(self.precision() + 1);
        c.push(BigRational::zero());
        c.extend(self.coeffs.iter().cloned());
        TruncatedSeries {
            var: self.var.clone(),
            coeffs: c,
        }
    }

    /// The square root with constant term 1 of a series with constant term 1,
    /// solved degree by degree.
    pub fn sqrt_one(&self) -> Option<Self> {
        if self.coeffs.first()? != &BigRational::one() {
            return None;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut s: Vec<BigRational> = vec![BigRational::one()];
        for k in 1..self.precision() {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s.push(acc / &two);
        }
        Some(TruncatedSeries {
            var: self.var.clone(),
            coeffs: s,
        })
    }
}

/// Order of `f(subs)` where `f` has variables `names`.
pub fn series_order(
    f: &RatPoly,
    names: &[String],
    subs: &HashMap<String, TruncatedSeries>,
) -> Result<SeriesOrder, String> {
    Ok(substitute(f, names, subs)?.order())
}

/// `f(subs)` as a truncated series.
pub fn substitute(
    f: &RatPoly,
    names: &[String],
    subs: &HashMap<String, TruncatedSeries>,
) -> Result<TruncatedSeries, String> {
    let series: Vec<&TruncatedSeries> = names
        .iter()
        .map(|n| subs.get(n).ok_or_else(|| format!("variable {n} has no substitution")))
        .collect::<Result<_, _>>()?;
    let precision = series.iter().map(|s| s.precision()).min().unwrap_or(0);
    let var = series.first().map(|s| s.var.clone()).unwrap_or_else(|| "x".into());
    let mut total = TruncatedSeries::new(var.clone(), vec![], precision);
    let mut powers: Vec<Vec<TruncatedSeries>> = series
        .iter()
        .map(|s| vec![TruncatedSeries::constant(&var, BigRational::one(), s.precision())])
        .collect();
    for (exps, c) in f.terms() {
        let mut term = TruncatedSeries::constant(&var, c.clone(), precision);
        for (j, &e) in exps.iter().enumerate() {
            while powers[j].len() <= e as usize {
                let next = powers[j].last().expect("nonempty").mul(series[j]);
                powers[j].push(next);
            }
            if e > 0 {
                term = term.mul(&powers[j][e as usize]);
            }
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// `p(x) = x + a_2 x^2 + ...` with pseudorandom rationals `a_i = n/d`,
/// `n` in `[-9, 9]` and `d` in `[1, 9]`, from the given seed.
pub fn seeded_series(seed: u64, precision: usize) -> TruncatedSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![BigRational::zero(), BigRational::one()];
    for _ in 2..precision {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=9);
        c.push(BigRational::new(n.into(), d.into()));
    }
    TruncatedSeries::new("x", c, precision)
}

/// `phi(x) = x + b_2 x^2 + ...` with `phi^2 = x p(x)`.
pub fn sqrt_branch(p: &TruncatedSeries) -> Option<TruncatedSeries> {
    Some(p.div_x()?.sqrt_one()?.mul_x())
}

/// Lowest orders reached by the span of `polys` after substitution, found by
/// Gaussian elimination on the series coefficients. Combinations vanishing
/// to the full precision are counted separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotOrders {
    pub orders: Vec<usize>,
    pub beyond_truncation: usize,
    pub precision: usize,
}

impl PivotOrders {
    /// `dim P_d / P_{d+1}` restricted to the span, for `d` in `0..=max`.
    pub fn ranks(&self, max: usize) -> Vec<usize> {
        (0..=max)
            .map(|d| self.orders.iter().filter(|&&o| o == d).count())
            .collect()
    }
}

pub fn pivot_orders(series: &[TruncatedSeries]) -> PivotOrders {
    let precision = series.iter().map(|s| s.precision()).min().unwrap_or(0);
    // pivot column -> reduced row, normalized to 1 at the pivot
    let mut pivots: Vec<Option<Vec<BigRational>>> = vec![None; precision];
    let mut beyond = 0;
    for s in series {
        let mut row: Vec<BigRational> = s.coeffs()[..precision].to_vec();
        loop {
            let Some(k) = row.iter().position(|c| !c.is_zero()) else {
                beyond += 1;
                break;
            };
            match &pivots[k] {
                Some(p) => {
                    let f = row[k].clone();
                    for (r, q) in row.iter_mut().zip(p).skip(k) {
                        if !q.is_zero() {
                            *r -= &f * q;
                        }
                    }
                }
                None => {
                    let inv = row[k].recip();
                    for r in row.iter_mut().skip(k) {
                        *r *= &inv;
                    }
                    pivots[k] = Some(row);
                    break;
                }
            }
        }
    }
    PivotOrders {
        orders: (0..precision).filter(|&k| pivots[k].is_some()).collect(),
        beyond_truncation: beyond,
        precision,
    }
}

/// True when every coefficient is an integer of absolute value at most `b`.
pub fn bounded_integral(s: &TruncatedSeries, b: i64) -> bool {
    s.coeffs()
        .iter()
        .all(|c| c.is_integer() && c.to_integer().abs() <= BigInt::from(b))
}

/// The `x, p(x), phi(x)` data of the one-variable transcendental model at
/// one truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct TranscendentalCheck {
    pub seed: u64,
    pub truncation: usize,
    pub bound: usize,
    /// ranks of `gr` of `k[x, y]`, `y -> p(x)`, in degrees `0..=bound`
    pub r_ranks: Vec<usize>,
    /// ranks of `gr` of `k[x, y, z] / (z^2 - x y)`, `z -> phi(x)`
    pub s_ranks: Vec<usize>,
    /// order of `y - p(x)` with `p` truncated to a polynomial
    pub p_infinity: SeriesOrder,
    /// order of `z^2 - x y`
    pub branch_relation: SeriesOrder,
    pub y_order: SeriesOrder,
}

impl TranscendentalCheck {
    /// `{0..bound}` lies in the value semigroup of `k[x, y]`.
    pub fn semigroup_prefix(&self) -> bool {
        self.r_ranks.iter().all(|&r| r >= 1)
    }

    pub fn ranks_agree(&self) -> bool {
        self.r_ranks == self.s_ranks && self.r_ranks.iter().all(|&r| r == 1)
    }

    pub fn p_infinity_flag(&self) -> bool {
        matches!(self.p_infinity, SeriesOrder::BeyondTruncation { .. })
    }

    pub fn ok(&self) -> bool {
        self.semigroup_prefix()
            && self.ranks_agree()
            && self.p_infinity_flag()
            && matches!(self.branch_relation, SeriesOrder::BeyondTruncation { .. })
            && self.y_order == SeriesOrder::Exact(1)
    }
}

fn shifted_prefix(s: &TruncatedSeries, shift: usize, len: usize) -> TruncatedSeries {
    let mut c = vec![BigRational::zero(); len];
    for (i, v) in s.coeffs().iter().enumerate() {
        if i + shift >= len {
            break;
        }
        c[i + shift] = v.clone();
    }
    TruncatedSeries::new(s.var.clone(), c, len)
}

/// Ranks in degrees `0..=bound` only see coefficients below `bound + 1`,
/// so the spanning monomials are cut there before elimination.
pub fn transcendental_check(seed: u64, truncation: usize, bound: usize) -> Result<TranscendentalCheck, String> {
    if truncation <= bound + 1 {
        return Err(format!("truncation {truncation} must exceed the bound {bound} + 1"));
    }
    let p = seeded_series(seed, truncation);
    let phi = sqrt_branch(&p).ok_or("p(x)/x has no square root with constant term 1")?;
    let x = TruncatedSeries::variable("x", truncation);
    let len = bound + 1;
    let p_low = TruncatedSeries::new("x", p.coeffs()[..len].to_vec(), len);
    let phi_low = TruncatedSeries::new("x", phi.coeffs()[..len].to_vec(), len);
    let p_pows: Vec<TruncatedSeries> = (0..=bound as u32).map(|b| p_low.pow(b)).collect();
    let mut r_rows = Vec::new();
    let mut s_rows = Vec::new();
    for total in 0..=bound {
        for b in 0..=total {
            let a = total - b;
            let row = shifted_prefix(&p_pows[b], a, len);
            r_rows.push(row.clone());
            s_rows.push(row);
            if total >= 1 && b < total {
                // x^(a-1) y^b z
                s_rows.push(shifted_prefix(&p_pows[b].mul(&phi_low), a - 1, len));
            }
        }
    }
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let mut subs = HashMap::new();
    subs.insert("x".to_string(), x);
    subs.insert("y".to_string(), p.clone());
    subs.insert("z".to_string(), phi);
    let one = BigRational::one();
    let mut terms = vec![(one.clone(), vec![0, 1, 0])];
    for (i, c) in p.coeffs().iter().enumerate() {
        terms.push((-c, vec![i as u32, 0, 0]));
    }
    let p_inf = RatPoly::from_terms(3, &terms);
    let branch = RatPoly::from_terms(3, &[(one.clone(), vec![0, 0, 2]), (-one.clone(), vec![1, 1, 0])]);
    let y = RatPoly::from_terms(3, &[(one, vec![0, 1, 0])]);
    Ok(TranscendentalCheck {
        seed,
        truncation,
        bound,
        r_ranks: pivot_orders(&r_rows).ranks(bound),
        s_ranks: pivot_orders(&s_rows).ranks(bound),
        p_infinity: series_order(&p_inf, &names, &subs)?,
        branch_relation: series_order(&branch, &names, &subs)?,
        y_order: series_order(&y, &names, &subs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn p16() -> TruncatedSeries {
        // p(x) = x + 2x^2 + x^3
        TruncatedSeries::new("x", vec![q(0), q(1), q(2), q(1)], 16)
    }

    #[test]
    fn orders() {
        let mut subs = HashMap::new();
        subs.insert("x".to_string(), TruncatedSeries::variable("x", 16));
        subs.insert("y".to_string(), p16());
        let n = names(&["x", "y"]);
        let y = RatPoly::from_terms(2, &[(q(1), vec![0, 1])]);
        assert_eq!(series_order(&y, &n, &subs).unwrap(), SeriesOrder::Exact(1));
        // y - x - 2x^2 - x^3 vanishes identically
        let f = RatPoly::from_terms(
            2,
            &[
                (q(1), vec![0, 1]),
                (q(-1), vec![1, 0]),
                (q(-2), vec![2, 0]),
                (q(-1), vec![3, 0]),
            ],
        );
        assert_eq!(
            series_order(&f, &n, &subs).unwrap(),
            SeriesOrder::BeyondTruncation { precision: 16 }
        );
        // y - x = 2x^2 + ...
        let g = RatPoly::from_terms(2, &[(q(1), vec![0, 1]), (q(-1), vec![1, 0])]);
        assert_eq!(series_order(&g, &n, &subs).unwrap(), SeriesOrder::Exact(2));
    }

    #[test]
    fn square_root_branch() {
        for seed in [1u64, 7, 42] {
            let p = seeded_series(seed, 32);
            let phi = sqrt_branch(&p).unwrap();
            assert_eq!(phi.precision(), 32);
            assert_eq!(phi.coeff(1), Some(&q(1)));
            let diff = phi.mul(&phi).sub(&p.mul_x());
            assert!(matches!(diff.order(), SeriesOrder::BeyondTruncation { .. }));
        }
    }

    #[test]
    fn seeded_is_deterministic() {
        assert_eq!(seeded_series(5, 20), seeded_series(5, 20));
        assert_ne!(seeded_series(5, 20), seeded_series(6, 20));
    }

    #[test]
    fn pivots() {
        let x = TruncatedSeries::variable("x", 8);
        let p = p16();
        let s = vec![x.pow(0), x.clone(), p.clone(), x.pow(2), p.sub(&x)];
        let r = pivot_orders(&s);
        assert_eq!(r.orders, vec![0, 1, 2, 3]);
        assert_eq!(r.beyond_truncation, 1);
        assert_eq!(r.ranks(4), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn transcendental_model() {
        for n in [16, 32, 64] {
            let c = transcendental_check(3, n, 12).unwrap();
            assert!(c.ok(), "{c:?}");
            assert_eq!(c.r_ranks, vec![1; 13]);
        }
        assert!(transcendental_check(3, 10, 12).is_err());
    }

    #[test]
    fn order_is_additive() {
        let mut subs = HashMap::new();
        subs.insert("x".to_string(), TruncatedSeries::variable("x", 24));
        subs.insert("y".to_string(), seeded_series(11, 24));
        let n = names(&["x", "y"]);
        let f = RatPoly::from_terms(2, &[(q(1), vec![0, 1]), (q(-1), vec![1, 0])]);
        let g = RatPoly::from_terms(2, &[(q(2), vec![0, 2]), (q(1), vec![3, 0])]);
        let of = series_order(&f, &n, &subs).unwrap().exact().unwrap();
        let og = series_order(&g, &n, &subs).unwrap().exact().unwrap();
        let fg = f.mul(&crate::verifier::poly::Rationals, &g);
        assert_eq!(series_order(&fg, &n, &subs).unwrap(), SeriesOrder::Exact(of + og));
    }

    #[test]
    fn integer_bound() {
        assert!(bounded_integral(&p16(), 2));
        assert!(!bounded_integral(&p16(), 1));
    }
}
