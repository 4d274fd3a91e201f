//! Values in a real quadratic extension Q(sqrt(d)), represented exactly as
//! base + coef * sqrt(d) with d squarefree and not a perfect square.
//!
//! A value with coef = 0 is plain rational and is compatible with any
//! radicand. Mixing two distinct radicands is a domain error: the engine
//! works one square root at a time.

use crate::arith::{squarefree_factor, Int, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtVal {
    base: Rat,
    coef: Rat,
    /// Squarefree, |radicand| > 1 whenever coef != 0; zero for plain rationals.
    radicand: Int,
}

impl QuadExtVal {
    pub fn from_rat(r: Rat) -> Self {
        QuadExtVal {
            base: r,
            coef: Rat::zero(),
            radicand: Int::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(Int::from(n)))
    }

    /// base + coef * sqrt(radicand); the radicand is reduced to its
    /// squarefree part, absorbing square factors into coef.
    pub fn new(base: Rat, coef: Rat, radicand: Int) -> Result<Self> {
        if coef.is_zero() || radicand.is_zero() {
            return Ok(Self::from_rat(base));
        }
        let (s, f) = squarefree_factor(&radicand)?;
        if s.is_one() {
            // sqrt of a perfect square collapses to a rational
            return Ok(Self::from_rat(base + coef * Rat::from_integer(f)));
        }
        if s.is_negative() {
            return Err(Error::domain(format!(
                "negative radicand {radicand} is outside the real quadratic domain"
            )));
        }
        let coef = coef * Rat::from_integer(f);
        Ok(QuadExtVal {
            base,
            coef,
            radicand: s,
        })
    }

    pub fn sqrt_of(radicand: i64) -> Result<Self> {
        Self::new(Rat::zero(), Rat::one(), Int::from(radicand))
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    pub fn radicand(&self) -> &Int {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.coef.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.base)
        } else {
            None
        }
    }

    /// Common radicand of two values, or a domain error when both are
    /// irrational over different squarefree radicands.
    fn join_radicand(&self, other: &Self) -> Result<Int> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(Int::zero()),
            (false, true) => Ok(self.radicand.clone()),
            (true, false) => Ok(other.radicand.clone()),
            (false, false) => {
                if self.radicand == other.radicand {
                    Ok(self.radicand.clone())
                } else {
                    Err(Error::domain(format!(
                        "mixed radicands sqrt({}) and sqrt({})",
                        self.radicand, other.radicand
                    )))
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let rad = self.join_radicand(other)?;
        Ok(QuadExtVal {
            base: &self.base + &other.base,
            coef: &self.coef + &other.coef,
            radicand: rad,
        }
        .normalized())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadExtVal {
            base: -self.base.clone(),
            coef: -self.coef.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let rad = self.join_radicand(other)?;
        let d = Rat::from_integer(rad.clone());
        let base = &self.base * &other.base + &self.coef * &other.coef * d;
        let coef = &self.base * &other.coef + &self.coef * &other.base;
        Ok(QuadExtVal {
            base,
            coef,
            radicand: rad,
        }
        .normalized())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        // multiply by the conjugate: norm = base^2 - d * coef^2 is nonzero
        // for nonzero values since d is not a square
        let conj = QuadExtVal {
            base: other.base.clone(),
            coef: -other.coef.clone(),
            radicand: other.radicand.clone(),
        };
        let num = self.mul(&conj)?;
        let d = Rat::from_integer(other.radicand.clone());
        let norm = &other.base * &other.base - &other.coef * &other.coef * d;
        Ok(QuadExtVal {
            base: num.base / &norm,
            coef: num.coef / &norm,
            radicand: num.radicand,
        }
        .normalized())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadExtVal {
            base: &self.base * r,
            coef: &self.coef * r,
            radicand: self.radicand.clone(),
        }
        .normalized()
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::from_int(1);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn normalized(mut self) -> Self {
        if self.coef.is_zero() {
            self.radicand = Int::zero();
        }
        self
    }

    /// Parses "a", "a/b", "sqrt(d)", "c*sqrt(d)", and "a+c*sqrt(d)" /
    /// "a-c*sqrt(d)" with rational a, c.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::domain("empty numeric literal"));
        }
        // split a +- tail at the top level (skip a leading sign)
        let bytes = s.as_bytes();
        for i in (1..s.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !s[..i].ends_with(['(', '*', '/'])
                && s[i..].contains("sqrt")
            {
                let head = Self::parse(&s[..i])?;
                let tail = Self::parse(&s[i..])?;
                return head.add(&tail);
            }
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(&s)),
        };
        let val = if let Some(idx) = body.find("sqrt(") {
            let inner = body[idx + 5..]
                .strip_suffix(')')
                .ok_or_else(|| Error::domain(format!("unbalanced sqrt in {s:?}")))?;
            let rad: Int = inner
                .parse()
                .map_err(|_| Error::domain(format!("bad radicand in {s:?}")))?;
            let coef = match body[..idx].strip_suffix('*') {
                Some("") | None if idx == 0 => Rat::one(),
                Some(c) => parse_rat(c)?,
                None => return Err(Error::domain(format!("expected '*' before sqrt in {s:?}"))),
            };
            QuadExtVal::new(Rat::zero(), coef, rad)?
        } else {
            Self::from_rat(parse_rat(body)?)
        };
        Ok(if neg { val.neg() } else { val })
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<Int> {
        t.parse()
            .map_err(|_| Error::domain(format!("bad integer literal {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::domain("zero denominator"));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

impl fmt::Display for QuadExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", self.base);
        }
        let root = if self.coef.abs() == Rat::one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.coef.abs(), self.radicand)
        };
        let sign = if self.coef.is_negative() { "-" } else { "+" };
        if self.base.is_zero() {
            if self.coef.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            }
        } else {
            write!(f, "{}{}{}", self.base, sign, root)
        }
    }
}
