//! Exact integers and rationals, primality and small modular helpers.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; both are
//! kept in canonical form by those crates (no leading zero limbs, reduced
//! fractions with positive denominator, a single zero).

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Largest value accepted by [`is_prime`].
///
/// Miller-Rabin with the bases 2, 3, 5, 7, 11, 13, 17 is deterministic below
/// 341 550 071 728 321; the documented limit is rounded down from that.
pub const PRIMALITY_BOUND: u64 = 330_000_000_000_000;

const MR_BASES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("{0} exceeds the deterministic primality bound {PRIMALITY_BOUND}")]
    PrimalityBound(Integer),
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
}

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational, ArithError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            a / b
        }
    })
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic primality for `n < PRIMALITY_BOUND`.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &Integer) -> Result<bool, ArithError> {
    if n.is_negative() {
        return Err(ArithError::OutOfRange(format!(
            "is_prime({n}) needs n >= 0"
        )));
    }
    match n.to_u64() {
        Some(v) if v <= PRIMALITY_BOUND => Ok(is_prime_u64(v)),
        _ => Err(ArithError::PrimalityBound(n.clone())),
    }
}

/// Smallest prime strictly greater than `bound`.
pub fn next_prime_above(bound: &Integer) -> Result<Integer, ArithError> {
    if bound.is_negative() {
        return Err(ArithError::OutOfRange(format!(
            "next_prime_above({bound}) needs bound >= 0"
        )));
    }
    let mut c = bound + 1u32;
    while !is_prime(&c)? {
        c += 1u32;
    }
    Ok(c)
}

pub(crate) fn next_prime_u64(bound: u64) -> u64 {
    let mut c = bound + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

pub fn binomial(n: &Integer, k: &Integer) -> Result<Integer, ArithError> {
    if k.is_negative() || k > n {
        return Err(ArithError::OutOfRange(format!(
            "binomial({n}, {k}) needs 0 <= k <= n"
        )));
    }
    let k = std::cmp::min(k.clone(), n - k);
    let k = k
        .to_u64()
        .ok_or_else(|| ArithError::OutOfRange(format!("binomial lower index {k} too large")))?;
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

pub fn parse_integer(s: &str) -> Result<Integer, ArithError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ArithError::Parse(s.to_string()));
    }
    Integer::from_str(s).map_err(|_| ArithError::Parse(s.to_string()))
}

/// Parses `a` or `a/b` (decimal, `b > 0`); the result is canonicalized.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(s)?)),
        Some((n, d)) => {
            let n = parse_integer(n)?;
            if d.starts_with('-') {
                return Err(ArithError::Parse(s.to_string()));
            }
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Whether `q` is the square of a rational number.
pub fn is_rational_square(q: &Rational) -> bool {
    exact_sqrt(q.numer()).is_some() && exact_sqrt(q.denom()).is_some()
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Integer {
    it.into_iter()
        .fold(Integer::one(), |acc, q| acc.lcm(q.denom()))
}

/// The fraction `n/d` with `|n|, d <= sqrt(m/2)` congruent to `r` modulo
/// `m`, when one exists.
pub(crate) fn rational_reconstruction(r: &Integer, m: &Integer) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}
