//! Integer factorization, divisor enumeration and the Kronecker symbol.
//!
//! Factorization uses trial division followed by Brent's variant of the
//! Pollard rho method, which is ample for inputs up to about 10^12.

use crate::error::{Error, Result};
use crate::arith::Int;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the standard 7-base certificate).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        if a % n == 0 {
            // a witness divisible by n certifies nothing (e.g. 28178 = 2*73*193)
            continue;
        }
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
        if c > 40 {
            // fall back to trial division rather than retrying forever
            let mut t = 3u64;
            while t * t <= n {
                if n % t == 0 {
                    return t;
                }
                t += 2;
            }
            return n;
        }
    }
}

fn factor_u64(mut n: u64, out: &mut Vec<(u64, u32)>) {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut primes: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
            continue;
        }
        let d = brent_rho(m);
        if d == 1 || d == m {
            // no proper factor found: m is prime for all practical purposes
            primes.push(m);
            continue;
        }
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    for p in primes {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable();
}

/// Prime factorization of |n| as ascending (prime, multiplicity) pairs.
pub fn factor(n: &Int) -> Result<Vec<(Int, u32)>> {
    if n.is_zero() {
        return Err(Error::domain("factor(0) is undefined"));
    }
    let abs = n.abs();
    let small = abs
        .to_u64()
        .ok_or_else(|| Error::domain(format!("{n} exceeds the supported factorization range")))?;
    let mut out = Vec::new();
    factor_u64(small, &mut out);
    Ok(out.into_iter().map(|(p, e)| (Int::from(p), e)).collect())
}

/// Primality of a nonnegative integer (false for anything above u64 range
/// is never reported; such inputs are a domain error).
pub fn is_prime(n: &Int) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    let small = n
        .to_u64()
        .ok_or_else(|| Error::domain(format!("{n} exceeds the supported primality range")))?;
    Ok(is_prime_u64(small))
}

/// True iff no square of a prime divides n.
pub fn is_squarefree(n: &Int) -> Result<bool> {
    Ok(factor(n)?.iter().all(|(_, e)| *e == 1))
}

/// Writes n = s * f^2 with s squarefree, f > 0 and sign(s) = sign(n).
pub fn squarefree_factor(n: &Int) -> Result<(Int, Int)> {
    if n.is_zero() {
        return Err(Error::domain("squarefree_factor(0) is undefined"));
    }
    let mut s = Int::from(if n.is_negative() { -1i32 } else { 1 });
    let mut f = Int::from(1u32);
    for (p, e) in factor(n)? {
        if e % 2 == 1 {
            s *= &p;
        }
        f *= p.pow(e / 2);
    }
    Ok((s, f))
}

/// All positive divisors of n >= 1, ascending.
pub fn divisors(n: &Int) -> Result<Vec<Int>> {
    if !n.is_positive() {
        return Err(Error::domain(format!("divisors requires n >= 1, got {n}")));
    }
    let mut divs = vec![Int::from(1u32)];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = Int::from(1u32);
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Full Kronecker symbol (a | n), multiplicative in both arguments.
pub fn kronecker(a: &Int, n: &Int) -> i32 {
    let mut a = a.clone();
    let mut n = n.clone();
    if n.is_zero() {
        return if a.abs() == Int::from(1u32) { 1 } else { 0 };
    }
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    // factor out twos of n: (a|2) is 0 for even a, +1 for a = +-1 mod 8, -1 otherwise
    let two = Int::from(2u32);
    let mut e2 = 0u32;
    while n.is_even() {
        n /= &two;
        e2 += 1;
    }
    if e2 > 0 {
        if a.is_even() {
            return 0;
        }
        if e2 % 2 == 1 {
            let m8 = ((&a % 8i32) + 8i32) % 8i32;
            let m8 = m8.to_i32().unwrap();
            if m8 == 3 || m8 == 5 {
                result = -result;
            }
        }
    }
    // now n odd and positive: Jacobi symbol loop
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let m8 = (&n % 8i32).to_i32().unwrap();
            if m8 == 3 || m8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4i32).to_i32().unwrap() == 3 && (&n % 4i32).to_i32().unwrap() == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n == Int::from(1u32) {
        result
    } else {
        0
    }
}
