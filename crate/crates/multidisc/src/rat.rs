//! Exact rational scalars used as polynomial coefficients.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; zero is represented as 0/1. Those invariants are
//! maintained by `num_rational::BigRational` itself, so this module only adds
//! the small constructors and conversions the rest of the crate needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number (reduced, denominator > 0).
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` by repeated squaring.
pub fn rat_pow(base: &Rat, mut exp: u32) -> Rat {
    let mut acc = Rat::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Nearest `f64` (may be infinite for huge values; NaN never occurs).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range conversions saturate rather than poison downstream math.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Canonical display: plain integer when the denominator is one, else "n/d".
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Positive rational `g` such that dividing every input by `g` yields
/// coprime integers: gcd of numerators over lcm of denominators.
/// Returns 1 for an empty or all-zero input.
pub fn rational_content<'a>(items: impl Iterator<Item = &'a Rat>) -> Rat {
    use num_integer::Integer;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for r in items {
        if r.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(r.numer());
        den_lcm = den_lcm.lcm(r.denom());
    }
    if num_gcd.is_zero() {
        return Rat::one();
    }
    Rat::new(num_gcd, den_lcm)
}
