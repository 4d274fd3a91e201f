//! Quaternion algebras (a, b / Q): Hilbert symbols, ramified places and the
//! reduced discriminant.

use crate::arith::{factor, kronecker, Int, Rat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A place of Q: a finite prime or the archimedean place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(Int),
    Infinity,
}

impl Place {
    pub fn prime(p: i64) -> Self {
        Place::Prime(Int::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "oo"),
        }
    }
}

/// Squarefree-free integer representative of the square class of a rational.
fn square_class(x: &Rat) -> Int {
    x.numer() * x.denom()
}

fn eps(u: &Int) -> u32 {
    // (u-1)/2 mod 2 for odd u
    let half: Int = (u - Int::one()) / Int::from(2);
    u32::from(half.is_odd())
}

fn omega(u: &Int) -> u32 {
    // (u^2-1)/8 mod 2 for odd u
    let v: Int = (u * u - Int::one()) / Int::from(8);
    u32::from(v.is_odd())
}

/// Hilbert symbol (a, b) over Q_v for nonzero rationals.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("hilbert symbol requires nonzero arguments"));
    }
    let a = square_class(a);
    let b = square_class(b);
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if *p == Int::from(2) {
                return Ok(hilbert_symbol_2(&a, &b));
            }
            if p < &Int::from(2) || p.is_even() {
                return Err(Error::domain(format!("{p} is not a prime place")));
            }
            Ok(hilbert_symbol_odd(&a, &b, p))
        }
    }
}

fn split_valuation(x: &Int, p: &Int) -> (u32, Int) {
    let mut u = x.clone();
    let mut val = 0;
    while (&u % p).is_zero() {
        u /= p;
        val += 1;
    }
    (val, u)
}

fn hilbert_symbol_odd(a: &Int, b: &Int, p: &Int) -> i32 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    let mut sign = 1i32;
    if alpha % 2 == 1 && beta % 2 == 1 && eps(p) == 1 {
        sign = -sign;
    }
    if beta % 2 == 1 {
        sign *= kronecker(&u, p);
    }
    if alpha % 2 == 1 {
        sign *= kronecker(&v, p);
    }
    sign
}

fn hilbert_symbol_2(a: &Int, b: &Int) -> i32 {
    let two = Int::from(2);
    let (alpha, u) = split_valuation(a, &two);
    let (beta, v) = split_valuation(b, &two);
    let exponent = eps(&u) * eps(&v) + (alpha % 2) * omega(&v) + (beta % 2) * omega(&u);
    if exponent % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The even-cardinality set of places where (a, b / Q) is division locally.
pub fn ramified_set(a: &Rat, b: &Rat) -> Result<BTreeSet<Place>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("ramified_set requires nonzero arguments"));
    }
    let mut probe: BTreeSet<Int> = BTreeSet::new();
    probe.insert(Int::from(2));
    for x in [a, b] {
        for part in [x.numer(), x.denom()] {
            if !part.abs().is_one() {
                for (p, _) in factor(part)? {
                    probe.insert(p);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for p in probe {
        if hilbert_symbol(a, b, &Place::Prime(p.clone()))? == -1 {
            out.insert(Place::Prime(p));
        }
    }
    if hilbert_symbol(a, b, &Place::Infinity)? == -1 {
        out.insert(Place::Infinity);
    }
    if out.len() % 2 != 0 {
        return Err(Error::internal(format!(
            "odd ramified set for ({a}, {b}): product formula violated"
        )));
    }
    Ok(out)
}

/// Product of the finite ramified primes (1 for a split algebra).
pub fn disc_of(a: &Rat, b: &Rat) -> Result<Int> {
    let mut d = Int::one();
    for place in ramified_set(a, b)? {
        if let Place::Prime(p) = place {
            d *= p;
        }
    }
    Ok(d)
}

/// True iff the algebra is division and split at the infinite place.
pub fn is_totally_indefinite_division(a: &Rat, b: &Rat) -> Result<bool> {
    let ram = ramified_set(a, b)?;
    Ok(!ram.is_empty() && !ram.contains(&Place::Infinity))
}

/// A quaternion algebra over Q with structure constants i^2 = a, j^2 = b,
/// ij = -ji, with its ramification data computed once on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QAlgebra {
    a: Rat,
    b: Rat,
    ramified: BTreeSet<Place>,
    disc: Int,
}

impl QAlgebra {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::domain("structure constants must be nonzero"));
        }
        let ramified = ramified_set(&a, &b)?;
        let disc = disc_of(&a, &b)?;
        Ok(QAlgebra { a, b, ramified, disc })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(Rat::from_integer(Int::from(a)), Rat::from_integer(Int::from(b)))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn disc(&self) -> &Int {
        &self.disc
    }

    pub fn is_totally_indefinite_division(&self) -> bool {
        !self.ramified.is_empty() && !self.ramified.contains(&Place::Infinity)
    }

    /// Isomorphism of quaternion algebras over Q is decided by the ramified
    /// set (local-global classification).
    pub fn is_isomorphic(&self, other: &QAlgebra) -> bool {
        self.ramified == other.ramified
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rat_int};

    fn sym(a: i64, b: i64, v: &Place) -> i32 {
        hilbert_symbol(&rat_int(a), &rat_int(b), v).unwrap()
    }

    #[test]
    fn split_when_a_is_square() {
        for b in [-7i64, -1, 2, 3, 5, 30] {
            assert_eq!(sym(1, b, &Place::prime(2)), 1);
            assert_eq!(sym(1, b, &Place::prime(3)), 1);
            assert_eq!(sym(1, b, &Place::Infinity), 1);
            assert_eq!(sym(4, b, &Place::prime(5)), 1);
        }
    }

    /// Oracle for (-1,-1)_2: solvability of x^2 + y^2 + z^2 = 0 mod 8 in
    /// primitive triples decides isotropy of the norm form at 2.
    #[test]
    fn hamilton_at_two_matches_mod8_enumeration() {
        let mut solvable = false;
        for x in 0..8i64 {
            for y in 0..8i64 {
                for z in 0..8i64 {
                    if (x % 2, y % 2, z % 2) == (0, 0, 0) {
                        continue;
                    }
                    if (x * x + y * y + z * z) % 8 == 0 {
                        solvable = true;
                    }
                }
            }
        }
        assert!(!solvable);
        assert_eq!(sym(-1, -1, &Place::prime(2)), -1);
    }

    #[test]
    fn b6_symbols() {
        assert_eq!(sym(-6, 2, &Place::prime(3)), -1);
        assert_eq!(sym(-6, 2, &Place::prime(2)), -1);
        assert_eq!(sym(-6, 2, &Place::prime(5)), 1);
        assert_eq!(sym(-6, 2, &Place::Infinity), 1);
    }

    fn ram(a: i64, b: i64) -> Vec<Place> {
        ramified_set(&rat_int(a), &rat_int(b)).unwrap().into_iter().collect()
    }

    #[test]
    fn ramified_sets() {
        assert_eq!(ram(-1, -1), vec![Place::prime(2), Place::Infinity]);
        assert_eq!(ram(-6, 2), vec![Place::prime(2), Place::prime(3)]);
        assert_eq!(ram(-10, 2), vec![Place::prime(2), Place::prime(5)]);
        assert_eq!(ram(1, 5), vec![]);
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_of(&rat_int(-6), &rat_int(2)).unwrap(), int(6));
        assert_eq!(disc_of(&rat_int(1), &rat_int(5)).unwrap(), int(1));
        assert_eq!(disc_of(&rat_int(-1), &rat_int(-1)).unwrap(), int(2));
    }

    #[test]
    fn totally_indefinite_division_examples() {
        let tid = |a, b| is_totally_indefinite_division(&rat_int(a), &rat_int(b)).unwrap();
        assert!(tid(-6, 2));
        assert!(!tid(-1, -1));
        assert!(!tid(1, 7));
    }

    #[test]
    fn rational_arguments_reduce_to_square_classes() {
        // (1/2, 3) has the same symbols as (2, 3)
        for v in [Place::prime(2), Place::prime(3), Place::Infinity] {
            assert_eq!(
                hilbert_symbol(&rat(1, 2), &rat_int(3), &v).unwrap(),
                sym(2, 3, &v)
            );
        }
    }

    #[test]
    fn zero_arguments_rejected() {
        assert!(hilbert_symbol(&rat_int(0), &rat_int(3), &Place::prime(3)).is_err());
        assert!(ramified_set(&rat_int(2), &rat_int(0)).is_err());
    }
}
