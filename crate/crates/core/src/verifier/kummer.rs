//! Integrality certificates from the elementary symmetric functions of the
//! conjugates of `z` under the diagonal root-of-unity action.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::poly::{CoeffRing, Exponents, Poly, RatPoly, Rationals};
use super::{action_exponents, MonomialExtension, Result, VerifierError};
use crate::lattice::LatticeError;
use crate::values::GroupElement;

type CycPoly = Poly<Cyclotomic>;

#[derive(Clone, Debug)]
pub struct SymmetricCertificate {
    pub z: RatPoly,
    /// order of the acting group
    pub r: usize,
    pub z_value: GroupElement,
    pub conjugates: Vec<CycPoly>,
    pub conjugate_values: Vec<GroupElement>,
    /// `S_1, ..., S_r`
    pub s_polys: Vec<RatPoly>,
    /// `None` for `S_i = 0`
    pub s_values: Vec<Option<GroupElement>>,
    pub strict: bool,
    pub inequalities_ok: bool,
    /// indices `i >= 1` with `nu(S_i) = i * nu(z)`
    pub equality_indices: Vec<usize>,
    /// `(i, (-1)^i in(S_i) in(z)^(r-i))`, starting with `(0, in(z)^r)`
    pub integral_equation: Vec<(usize, RatPoly)>,
    pub equation_vanishes: bool,
    /// product expansion and Newton's identities agree
    pub cross_check_ok: bool,
}

impl SymmetricCertificate {
    pub fn ok(&self) -> bool {
        self.inequalities_ok && self.equation_vanishes && self.cross_check_ok
    }

    pub fn equation_string(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .integral_equation
            .iter()
            .map(|(_, t)| format!("({})", t.display_with(names)))
            .collect();
        format!("{} = 0", parts.join(" + "))
    }
}

fn value_of(ext: &MonomialExtension, u: &Exponents) -> Result<GroupElement> {
    let b: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
    ext.monomial_value(&b)
}

/// Minimal value over the terms and the leading form.
fn leading<T: Clone + PartialEq + std::fmt::Debug>(
    ext: &MonomialExtension,
    p: &Poly<T>,
) -> Result<Option<(GroupElement, Poly<T>)>> {
    let mut best: Option<GroupElement> = None;
    for (u, _) in p.terms() {
        let v = value_of(ext, u)?;
        if best
            .as_ref()
            .map_or(Ok::<bool, VerifierError>(true), |b| Ok(v.compare(b)?.is_lt()))?
        {
            best = Some(v);
        }
    }
    let Some(best) = best else { return Ok(None) };
    let mut keep = Vec::new();
    for (u, _) in p.terms() {
        if value_of(ext, u)? == best {
            keep.push(u.clone());
        }
    }
    Ok(Some((best, p.filter_terms(|u| keep.contains(u)))))
}

/// `S_1..S_r` from `prod (X - c_k)`.
fn by_product(field: &CyclotomicField, nvars: usize, conj: &[CycPoly]) -> Vec<CycPoly> {
    // coefficients of X^0..X^r
    let mut coeffs = vec![CycPoly::constant(field, nvars, field.one())];
    for c in conj {
        let mut next = vec![CycPoly::zero(nvars); coeffs.len() + 1];
        for (k, a) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(field, a);
            next[k] = next[k].sub(field, &a.mul(field, c));
        }
        coeffs = next;
    }
    let r = conj.len();
    // coefficient of X^(r-i) is (-1)^i S_i
    (1..=r)
        .map(|i| {
            let c = &coeffs[r - i];
            if i % 2 == 1 {
                c.neg(field)
            } else {
                c.clone()
            }
        })
        .collect()
}

/// `S_1..S_r` from the power sums by Newton's identities.
fn by_newton(field: &CyclotomicField, nvars: usize, conj: &[CycPoly]) -> Vec<CycPoly> {
    let r = conj.len();
    let mut powers: Vec<CycPoly> = conj.to_vec();
    let mut p = Vec::with_capacity(r);
    for k in 1..=r {
        if k > 1 {
            for (pw, c) in powers.iter_mut().zip(conj) {
                *pw = pw.mul(field, c);
            }
        }
        let sum = powers.iter().fold(CycPoly::zero(nvars), |acc, x| acc.add(field, x));
        p.push(sum);
    }
    let mut e = vec![CycPoly::constant(field, nvars, field.one())];
    for k in 1..=r {
        let mut acc = CycPoly::zero(nvars);
        for i in 1..=k {
            let t = e[k - i].mul(field, &p[i - 1]);
            acc = if i % 2 == 1 {
                acc.add(field, &t)
            } else {
                acc.sub(field, &t)
            };
        }
        e.push(acc.scale(field, &BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    e.split_off(1)
}

/// Certificate that `in(z)` is integral over the invariant graded ring:
/// `nu(S_i) >= i nu(z)` (strict for `i < r` when `strict`) and the leading
/// terms of `prod (X - sigma(z))` at `X = z` cancel.
pub fn kummer_symmetric_certificate(
    z: &RatPoly,
    ext: &MonomialExtension,
    strict: bool,
) -> Result<SymmetricCertificate> {
    let n = ext.n();
    if z.nvars() != n {
        return Err(VerifierError::Invalid(format!(
            "z has {} variables, expected {n}",
            z.nvars()
        )));
    }
    let Some((z_value, in_z)) = leading(ext, z)? else {
        return Err(VerifierError::AmbiguousLeadingForm("z is zero".into()));
    };
    let (order, actions) = action_exponents(ext)?;
    let field = CyclotomicField::new(order);
    let r = actions.len();
    let mut conjugates = Vec::with_capacity(r);
    for g in &actions {
        let c = z.map_coeffs(&field, |u, q| {
            let k: i64 = u.iter().zip(g).map(|(a, b)| *a as i64 * b).sum();
            field.scale(&field.root_power(k), q)
        });
        conjugates.push(c);
    }
    let mut conjugate_values = Vec::with_capacity(r);
    for c in &conjugates {
        let (v, _) =
            leading(ext, c)?.ok_or_else(|| VerifierError::AmbiguousLeadingForm("conjugate vanished".into()))?;
        conjugate_values.push(v);
    }
    let prod = by_product(&field, n, &conjugates);
    let newton = by_newton(&field, n, &conjugates);
    let cross_check_ok = prod == newton;
    let mut s_polys = Vec::with_capacity(r);
    for (i, s) in prod.iter().enumerate() {
        let q = s
            .try_map_coeffs(|c| field.as_rational(c))
            .ok_or_else(|| LatticeError::Invariant(format!("S_{} has non-rational coefficients", i + 1)))?;
        s_polys.push(q);
    }

    let mut s_values = Vec::with_capacity(r);
    let mut inequalities_ok = true;
    let mut equality_indices = Vec::new();
    let mut integral_equation = vec![(0, in_z.pow(&Rationals, r as u32))];
    for (idx, s) in s_polys.iter().enumerate() {
        let i = idx + 1;
        let bound = z_value.scale_int(&BigInt::from(i));
        match leading(ext, s)? {
            None => s_values.push(None),
            Some((v, in_s)) => {
                let cmp = v.compare(&bound)?;
                let ok = if strict && i < r { cmp.is_gt() } else { cmp.is_ge() };
                inequalities_ok &= ok;
                if cmp.is_eq() {
                    equality_indices.push(i);
                    let mut term = in_s.mul(&Rationals, &in_z.pow(&Rationals, (r - i) as u32));
                    if i % 2 == 1 {
                        term = term.neg(&Rationals);
                    }
                    integral_equation.push((i, term));
                }
                s_values.push(Some(v));
            }
        }
    }
    let total = integral_equation
        .iter()
        .fold(RatPoly::zero(n), |acc, (_, t)| acc.add(&Rationals, t));
    Ok(SymmetricCertificate {
        z: z.clone(),
        r,
        z_value,
        conjugates,
        conjugate_values,
        s_polys,
        s_values,
        strict,
        inequalities_ok,
        equality_indices,
        integral_equation,
        equation_vanishes: total.is_zero(),
        cross_check_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;
    use crate::values::OrderedGroup;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ext(rows: &[Vec<i64>], ys: &[Vec<i64>]) -> MonomialExtension {
        let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).unwrap();
        let y = ys.iter().map(|c| g.int_element(c).unwrap()).collect();
        MonomialExtension::new(IntMatrix::from_rows(rows).unwrap(), y, None).unwrap()
    }

    /// Expansion of prod over the four sign patterns, computed by hand.
    #[test]
    fn squares_map() {
        let x = ext(&[vec![2, 0], vec![0, 2]], &[vec![1, 0], vec![0, 1]]);
        let z = RatPoly::from_terms(2, &[(q(1), vec![1, 0]), (q(1), vec![0, 1])]);
        let cert = kummer_symmetric_certificate(&z, &x, false).unwrap();
        assert_eq!(cert.r, 4);
        assert!(cert.ok());
        assert!(cert.s_polys[0].is_zero());
        assert_eq!(
            cert.s_polys[1],
            RatPoly::from_terms(2, &[(q(-2), vec![2, 0]), (q(-2), vec![0, 2])])
        );
        assert!(cert.s_polys[2].is_zero());
        assert_eq!(
            cert.s_polys[3],
            RatPoly::from_terms(2, &[(q(1), vec![4, 0]), (q(-2), vec![2, 2]), (q(1), vec![0, 4])])
        );
        assert_eq!(cert.equality_indices, vec![2, 4]);
        assert_eq!(cert.s_values[3], Some(cert.z_value.scale_int(&BigInt::from(4))));
        let strict = kummer_symmetric_certificate(&z, &x, true).unwrap();
        assert!(!strict.inequalities_ok);
    }

    #[test]
    fn kummer_quadratic() {
        let x = ext(&[vec![2, 0], vec![0, 1]], &[vec![1, 0], vec![0, 1]]);
        let z = RatPoly::from_terms(2, &[(q(1), vec![1, 0])]);
        let cert = kummer_symmetric_certificate(&z, &x, false).unwrap();
        assert_eq!(cert.r, 2);
        assert!(cert.s_polys[0].is_zero());
        assert_eq!(cert.s_polys[1], RatPoly::from_terms(2, &[(q(-1), vec![2, 0])]));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(cert.equation_string(&names), "(x^2) + (-x^2) = 0");
        assert!(cert.ok());
    }

    #[test]
    fn trivial_group() {
        let x = ext(&[vec![1, 0], vec![0, 1]], &[vec![1, 0], vec![0, 1]]);
        let z = RatPoly::from_terms(2, &[(q(3), vec![1, 1])]);
        let cert = kummer_symmetric_certificate(&z, &x, true).unwrap();
        assert_eq!(cert.r, 1);
        assert_eq!(cert.s_polys[0], z);
        assert!(cert.ok());
    }

    #[test]
    fn cube_roots() {
        let x = ext(&[vec![2, 1], vec![1, 2]], &[vec![1, 0], vec![0, 1]]);
        let z = RatPoly::from_terms(2, &[(q(1), vec![1, 0]), (q(2), vec![0, 1]), (q(1), vec![1, 1])]);
        let cert = kummer_symmetric_certificate(&z, &x, false).unwrap();
        assert_eq!(cert.r, 3);
        assert!(cert.ok(), "{cert:?}");
    }
}
