//! Rational enclosures of the built-in irrational basis constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const GUARD_BITS: u32 = 24;

/// `floor(2^prec * arctan(1/x))` up to an additive error, returned as
/// `(approximation, error_bound_in_ulps)`.
fn arctan_inv_fixed(x: u32, prec: u32) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    // floor(floor(a)/n) == floor(a/n), so each term is floor(true term)
    let mut power = (BigInt::one() << prec) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // one unit per truncated term plus the alternating tail
    (sum, BigInt::from(k + 1))
}

/// Enclosure of pi of width at most `2^-bits`, via Machin's formula.
pub(crate) fn pi_enclosure(bits: u32) -> (BigRational, BigRational) {
    let prec = bits + GUARD_BITS;
    let (a, ea) = arctan_inv_fixed(5, prec);
    let (b, eb) = arctan_inv_fixed(239, prec);
    let approx = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    let denom = BigInt::one() << prec;
    (
        BigRational::new(&approx - &err, denom.clone()),
        BigRational::new(approx + err, denom),
    )
}

/// Enclosure of `sqrt(n)` of width `2^-bits`.
pub(crate) fn sqrt_enclosure(n: u32, bits: u32) -> (BigRational, BigRational) {
    let scaled = BigInt::from(n) << (2 * bits);
    let r = scaled.sqrt();
    let denom = BigInt::one() << bits;
    if &r * &r == scaled {
        let v = BigRational::new(r, denom);
        return (v.clone(), v);
    }
    (
        BigRational::new(r.clone(), denom.clone()),
        BigRational::new(r + 1, denom),
    )
}
