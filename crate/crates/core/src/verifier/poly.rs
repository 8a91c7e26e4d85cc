//! Sparse multivariate polynomials over a coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait CoeffRing {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &BigRational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// The rationals as a coefficient ring.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn scale(&self, a: &BigRational, q: &BigRational) -> BigRational {
        a * q
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

pub type Exponents = Vec<u32>;

/// `sum c_u y^u`, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    nvars: usize,
    terms: BTreeMap<Exponents, T>,
}

pub type RatPoly = Poly<BigRational>;

impl<T: Clone + PartialEq + fmt::Debug> Poly<T> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<R: CoeffRing<Elem = T>>(ring: &R, nvars: usize, c: T) -> Self {
        Self::monomial(ring, vec![0; nvars], c)
    }

    pub fn monomial<R: CoeffRing<Elem = T>>(ring: &R, exps: Exponents, c: T) -> Self {
        let mut p = Self::zero(exps.len());
        if !ring.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate<R: CoeffRing<Elem = T>>(&mut self, ring: &R, exps: Exponents, c: T) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !ring.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), &c);
                if ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(ring, e.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: CoeffRing<Elem = T>>(&self, ring: &R) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.accumulate(ring, e, ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale<R: CoeffRing<Elem = T>>(&self, ring: &R, q: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(ring, e.clone(), ring.scale(c, q));
        }
        out
    }

    pub fn pow<R: CoeffRing<Elem = T>>(&self, ring: &R, k: u32) -> Self {
        let mut out = Self::constant(ring, self.nvars, ring.one());
        for _ in 0..k {
            out = out.mul(ring, self);
        }
        out
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<U, S, F>(&self, ring: &S, f: F) -> Poly<U>
    where
        U: Clone + PartialEq + fmt::Debug,
        S: CoeffRing<Elem = U>,
        F: Fn(&Exponents, &T) -> U,
    {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(ring, e.clone(), f(e, c));
        }
        out
    }

    /// Coefficients converted by a partial map; `None` if any fails.
    pub fn try_map_coeffs<U, F>(&self, f: F) -> Option<Poly<U>>
    where
        U: Clone + PartialEq + fmt::Debug,
        F: Fn(&T) -> Option<U>,
    {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), f(c)?);
        }
        Some(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Terms selected by `keep`.
    pub fn filter_terms<F: Fn(&Exponents) -> bool>(&self, keep: F) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl RatPoly {
    /// Parse-free constructor from `(coefficient, exponents)` pairs.
    pub fn from_terms(nvars: usize, terms: &[(BigRational, Exponents)]) -> Self {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.accumulate(&Rationals, e.clone(), c.clone());
        }
        p
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let neg = c < &BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic() {
        let x = RatPoly::from_terms(2, &[(q(1), vec![1, 0])]);
        let y = RatPoly::from_terms(2, &[(q(1), vec![0, 1])]);
        let s = x.add(&Rationals, &y);
        let d = x.sub(&Rationals, &y);
        // (x+y)(x-y) = x^2 - y^2
        let p = s.mul(&Rationals, &d);
        assert_eq!(p, RatPoly::from_terms(2, &[(q(1), vec![2, 0]), (q(-1), vec![0, 2])]));
        assert!(s.sub(&Rationals, &s).is_zero());
        assert_eq!(s.pow(&Rationals, 2).len(), 3);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.display_with(&names), "x^2 - y^2");
    }
}
