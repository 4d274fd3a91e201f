//! Exact arbitrary-precision arithmetic and elementary number theory
//! shared by every other module.

mod intops;
mod quadext;

pub use intops::{divisors, factor, is_prime, is_squarefree, kronecker, squarefree_factor};
pub use quadext::QuadExtVal;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Exact rational number, normalized on construction (positive denominator,
/// numerator and denominator coprime).
pub type Rat = BigRational;

/// Shorthand for small integer literals.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
