//! Quaternion elements with exact rational coordinates over the basis
//! 1, i, j, ij of a parent algebra.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::quaternion::QAlgebra;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    pub c: [Rat; 4],
}

impl Quat {
    pub fn new(c: [Rat; 4]) -> Self {
        Quat { c }
    }

    pub fn zero() -> Self {
        Quat::new([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn one() -> Self {
        Quat::new([Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Quat::new(c.map(|x| Rat::from_integer(Int::from(x))))
    }

    pub fn scalar(r: Rat) -> Self {
        Quat::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_pure(&self) -> bool {
        self.c[0].is_zero()
    }

    pub fn trd(&self) -> Rat {
        &self.c[0] + &self.c[0]
    }

    pub fn nrd(&self, alg: &QAlgebra) -> Rat {
        let [x0, x1, x2, x3] = &self.c;
        let a = alg.a();
        let b = alg.b();
        x0 * x0 - a * (x1 * x1) - b * (x2 * x2) + a * b * (x3 * x3)
    }

    pub fn conj(&self) -> Quat {
        Quat::new([
            self.c[0].clone(),
            -self.c[1].clone(),
            -self.c[2].clone(),
            -self.c[3].clone(),
        ])
    }

    pub fn add(&self, other: &Quat) -> Quat {
        Quat::new([
            &self.c[0] + &other.c[0],
            &self.c[1] + &other.c[1],
            &self.c[2] + &other.c[2],
            &self.c[3] + &other.c[3],
        ])
    }

    pub fn sub(&self, other: &Quat) -> Quat {
        Quat::new([
            &self.c[0] - &other.c[0],
            &self.c[1] - &other.c[1],
            &self.c[2] - &other.c[2],
            &self.c[3] - &other.c[3],
        ])
    }

    pub fn neg(&self) -> Quat {
        Quat::new(self.c.clone().map(|x| -x))
    }

    pub fn scale(&self, r: &Rat) -> Quat {
        Quat::new([
            &self.c[0] * r,
            &self.c[1] * r,
            &self.c[2] * r,
            &self.c[3] * r,
        ])
    }

    /// Product in the algebra: i^2 = a, j^2 = b, ij = -ji, with k = ij,
    /// k^2 = -ab, jk = -bi... all sign conventions follow from bilinearity.
    pub fn mul(&self, other: &Quat, alg: &QAlgebra) -> Quat {
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &other.c;
        let a = alg.a();
        let b = alg.b();
        let ab = a * b;
        // (x0 + x1 i + x2 j + x3 k)(y0 + y1 i + y2 j + y3 k), k = ij
        let c0 = x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - &ab * (x3 * y3);
        let c1 = x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2);
        let c2 = x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1);
        let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Quat::new([c0, c1, c2, c3])
    }

    pub fn inv(&self, alg: &QAlgebra) -> Result<Quat> {
        let n = self.nrd(alg);
        if n.is_zero() {
            return Err(Error::domain("zero-divisor or zero quaternion has no inverse"));
        }
        Ok(self.conj().scale(&(Rat::one() / n)))
    }

    pub fn has_integer_coords(&self) -> bool {
        self.c.iter().all(|x| x.denom().is_one())
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "ij"];
        let mut first = true;
        for (coef, name) in self.c.iter().zip(names) {
            if coef.is_zero() {
                continue;
            }
            let abs = coef.abs();
            let sign = if coef.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let body = if name.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                name.to_string()
            } else {
                format!("{abs}{name}")
            };
            write!(f, "{}{}{}", if first { "" } else { " " }, sign, body)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
