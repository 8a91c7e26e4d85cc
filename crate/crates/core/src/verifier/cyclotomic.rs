//! Exact arithmetic in `Q(w)`, `w` a primitive `e`-th root of unity, as
//! rational vectors modulo the cyclotomic polynomial `Phi_e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::CoeffRing;

/// Integer coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0);
    // t^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Quotient of `a` by the monic `b`, asserting a zero remainder.
fn exact_divide(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<BigInt>,
}

/// Element of `Q(w)` in the power basis `1, w, ..., w^(deg-1)`.
pub type Cyclotomic = Vec<BigRational>;

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn rational(&self, q: BigRational) -> Cyclotomic {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = q;
        v
    }

    /// `w^k`
    pub fn root_power(&self, k: i64) -> Cyclotomic {
        let k = k.rem_euclid(self.order as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        self.reduce(v)
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Cyclotomic {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            for (j, mj) in self.modulus[..d].iter().enumerate() {
                v[shift + j] -= &top * BigRational::from_integer(mj.clone());
            }
        }
        v.resize(d, BigRational::zero());
        v
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self, a: &Cyclotomic) -> Option<BigRational> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }
}

impl CoeffRing for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        vec![BigRational::zero(); self.degree()]
    }

    fn one(&self) -> Cyclotomic {
        self.rational(BigRational::one())
    }

    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    fn scale(&self, a: &Cyclotomic, q: &BigRational) -> Cyclotomic {
        a.iter().map(|x| x * q).collect()
    }

    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.iter().all(Zero::is_zero)
    }
}
