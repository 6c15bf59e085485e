//! Dense univariate polynomials over Q and over Z/p.

mod bivariate;
mod cyclotomic;
pub(crate) mod factor;
pub(crate) mod hensel;
mod parse;
mod resultant;
mod sturm;
pub(crate) mod zp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{denominator_lcm, rat_int, Integer, Rational};

pub use bivariate::{BivariatePoly, Specialization};
pub use cyclotomic::cyclotomic;
pub use factor::{eisenstein_witness, factor_q, is_irreducible, squarefree_part, FactorizationQ};
pub use parse::{parse_poly, parse_poly_in, SyntaxError, MAX_EXPONENT};
pub use resultant::{discriminant, resultant};
pub use sturm::{sturm_real_roots, sturm_sequence};
pub use zp::PolyZp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("resultant of a zero polynomial")]
    ZeroInput,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// A polynomial with rational coefficients, stored in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn from_integers(coeffs: &[Integer]) -> Self {
        Self::new(coeffs.iter().map(|c| rat_int(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &Rational) -> Poly {
        self.compose(&Poly::new(vec![a.clone(), Rational::one()]))
    }

    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(df) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if df < dg {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = g.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            let c = &r[i + dg] * &inv;
            if !c.is_zero() {
                for (j, gj) in g.coeffs.iter().enumerate() {
                    r[i + j] -= &c * gj;
                }
            }
            q[i] = c;
        }
        r.truncate(dg);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(g)?.1)
    }

    /// Exact quotient; `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        match self.divrem(g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            // Keeping remainders primitive limits coefficient growth.
            b = r.primitive_rational();
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(d, s, t)` with `s*self + t*g = d`, `d` monic.
    pub fn ext_gcd(&self, g: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lc().recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Writes `self = content * prim` with `prim` a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Vec<Integer>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = denominator_lcm(&self.coeffs);
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = ints.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// The primitive integer polynomial associated with `self`, as a `Poly`.
    pub fn primitive_rational(&self) -> Poly {
        Poly::from_integers(&self.integer_primitive().1)
    }

    /// Sign-preserving primitive part: divides by a positive rational.
    pub fn primitive_positive(&self) -> Poly {
        let (c, _) = self.integer_primitive();
        if c.is_zero() {
            return Poly::zero();
        }
        self.scale(&c.abs().recip())
    }

    /// `x^deg * self(1/x)`.
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// `self(c*x)`.
    pub fn scale_var(&self, c: &Rational) -> Poly {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Poly::new(out)
    }
}

/// An integer `R` with `|z| <= R` for every complex root `z` of the integer
/// polynomial `a` (Fujiwara's bound, rounded up).
pub(crate) fn root_bound(a: &[Integer]) -> Integer {
    let n = a.len() - 1;
    let lc = a[n].abs();
    let mut best = Integer::zero();
    for k in 1..=n {
        let mut c = a[n - k].abs();
        if k == n {
            c = (c + 1u32) / 2u32;
        }
        if c.is_zero() {
            continue;
        }
        // smallest r with r^k * lc >= c
        let q = (&c + &lc - 1u32) / &lc;
        let mut r = q.nth_root(k as u32);
        while num_traits::pow(r.clone(), k) * &lc < c {
            r += 1u32;
        }
        best = best.max(r);
    }
    best * 2u32
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Poly {
    /// Formats with the given variable name, descending degree.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        let (q, r) = p("x^2-1").divrem(&p("x-1")).unwrap();
        assert_eq!((q, r), (p("x+1"), Poly::zero()));
        assert_eq!(p("x^2").compose(&p("x+1")), p("x^2+2*x+1"));
        assert_eq!(p("x").divrem(&Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2-1").gcd(&p("x-1")).unwrap(), p("x-1"));
        assert_eq!(p("x^2+1").gcd(&p("x^2-1")).unwrap(), Poly::one());
        assert_eq!(p("2*x^2-2").gcd(&Poly::zero()).unwrap(), p("x^2-1"));
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Err(PolyError::BothZero));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p("x^3-2");
        let b = p("x^2+x+1");
        let (d, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(d, Poly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), d);
    }

    #[test]
    fn primitive_forms() {
        let f = p("1/2*x^2 - 3/4");
        let (c, prim) = f.integer_primitive();
        assert_eq!(c, rat(1, 4));
        assert_eq!(
            prim,
            vec![Integer::from(-3), Integer::from(0), Integer::from(2)]
        );
        let g = p("-2*x + 4");
        assert_eq!(g.primitive_positive(), p("-x + 2"));
        assert_eq!(g.primitive_rational(), p("x - 2"));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p("2 - 4*x + x^5").to_string(), "x^5 - 4*x + 2");
        assert_eq!(p("-x^2 + 1/2*x - 1/3").to_string(), "-x^2 + 1/2*x - 1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn root_bound_dominates_roots() {
        for (f, r) in [
            ("x-10", 10),
            ("x^2-2", 2),
            ("x^5-4*x+2", 2),
            ("3*x^2-300", 10),
        ] {
            let (_, c) = p(f).integer_primitive();
            assert!(root_bound(&c) >= Integer::from(r), "{f}");
        }
    }
}
