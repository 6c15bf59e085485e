//! Number fields `Q(θ)` presented by a single primitive element.

mod nfpoly;
mod norm;
mod roots;
mod tower;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{denominator_lcm, rational_reconstruction, Integer, RatOp, Rational};
use crate::polyq::zp::{large_primes, Crt, PolyZp};
use crate::polyq::{is_irreducible, Poly, PolyError};

/// Above this field degree inverses go through modular images.
const MODULAR_INVERSE_DEGREE: usize = 6;

pub use nfpoly::NfPoly;
pub use norm::{factor_over_nf, TRAGER_SHIFT_LIMIT};
pub use roots::roots_in_field;
pub use tower::{
    adjoin_root, automorphism_group, is_member, splitting_degree, splitting_field, Adjunction,
    Automorphisms, Membership, TowerSummary, DEFAULT_DEGREE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("defining polynomial {0} is not irreducible of degree >= 1")]
    NotIrreducible(Poly),
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateLength { expected: usize, got: usize },
    #[error("adjoined polynomial must have degree at least 2")]
    LinearAdjunction,
    #[error("no primitive element found for shifts up to {0}")]
    PrimitiveElementSearchExhausted(u32),
    #[error("splitting field degree would reach {needed}, above the cap {cap}")]
    DegreeCapExceeded { cap: u64, needed: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

struct FieldData {
    min_poly: Poly,
    /// Coefficients of `min_poly` when it is integral, for the integer fast
    /// path.
    integral: Option<Vec<Integer>>,
}

/// `Q[x]/(m)` for a monic irreducible `m`. Cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    /// Checks that `min_poly` is irreducible and makes it monic.
    pub fn new(min_poly: &Poly) -> Result<Self, NfError> {
        if min_poly.degree().unwrap_or(0) == 0 || !is_irreducible(min_poly) {
            return Err(NfError::NotIrreducible(min_poly.clone()));
        }
        Ok(Self::from_irreducible(min_poly.monic()))
    }

    /// Caller guarantees irreducibility.
    pub(crate) fn from_irreducible(min_poly: Poly) -> Self {
        debug_assert!(min_poly.deg() >= 1);
        let min_poly = min_poly.monic();
        let integral = min_poly
            .is_integral()
            .then(|| min_poly.coeffs().iter().map(|c| c.to_integer()).collect());
        NumberField(Arc::new(FieldData { min_poly, integral }))
    }

    /// Q itself, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::from_irreducible(Poly::x())
    }

    pub fn min_poly(&self) -> &Poly {
        &self.0.min_poly
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.deg()
    }

    pub fn zero(&self) -> NfElement {
        self.from_poly(&Poly::zero())
    }

    pub fn one(&self) -> NfElement {
        self.from_poly(&Poly::one())
    }

    pub fn rational(&self, q: Rational) -> NfElement {
        self.from_poly(&Poly::constant(q))
    }

    /// The class of `x`, written θ.
    pub fn generator(&self) -> NfElement {
        self.from_poly(&Poly::x())
    }

    /// `p(θ)`, reduced modulo the minimal polynomial.
    pub fn from_poly(&self, p: &Poly) -> NfElement {
        NfElement {
            field: self.clone(),
            value: p.rem(self.min_poly()).expect("min_poly nonzero"),
        }
    }

    /// `a * b mod m`, over the integers when `m` is integral.
    fn mul_reduce(&self, a: &Poly, b: &Poly) -> Poly {
        let Some(m) = &self.0.integral else {
            return (a * b).rem(self.min_poly()).expect("min_poly nonzero");
        };
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (da, ia) = cleared(a);
        let (db, ib) = cleared(b);
        let mut c = vec![Integer::zero(); ia.len() + ib.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        let d = m.len() - 1;
        for i in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if !top.is_zero() {
                for (j, mj) in m[..d].iter().enumerate() {
                    c[i - d + j] -= &top * mj;
                }
            }
        }
        c.truncate(d);
        let den = da * db;
        Poly::new(
            c.into_iter()
                .map(|v| Rational::new(v, den.clone()))
                .collect(),
        )
    }

    /// Inverse by images modulo word-size primes and rational
    /// reconstruction, checked by multiplication.
    fn modular_inverse(&self, a: &Poly) -> Option<Poly> {
        let m = self.0.integral.as_ref()?;
        let (den, ia) = cleared(a);
        let d = m.len() - 1;
        let mut crt = Crt::new(d);
        let mut next_check = 4;
        for (used, p) in large_primes().enumerate().take(4096) {
            let mp = PolyZp::from_integers(m, p);
            let Some(inv) = PolyZp::from_integers(&ia, p).inverse_mod(&mp) else {
                continue;
            };
            crt.add(&inv.coeffs_padded(d), p);
            if used + 1 < next_check {
                continue;
            }
            next_check *= 2;
            let coords: Option<Vec<Rational>> = crt
                .values()
                .iter()
                .map(|v| rational_reconstruction(v, crt.modulus()))
                .collect();
            if let Some(coords) = coords {
                let x = Poly::new(coords);
                let ax = self.mul_reduce(&Poly::from_integers(&ia), &x);
                if ax == Poly::one() {
                    return Some(x.scale(&Rational::from_integer(den)));
                }
            }
        }
        None
    }

    /// Element with the given power-basis coordinates.
    pub fn element(&self, coords: Vec<Rational>) -> Result<NfElement, NfError> {
        if coords.len() != self.degree() {
            return Err(NfError::CoordinateLength {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(self.from_poly(&Poly::new(coords)))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.min_poly == o.0.min_poly
    }
}

impl Eq for NumberField {}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.min_poly())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.min_poly())
    }
}

/// An element of a number field, stored as a polynomial in θ of degree
/// below the field degree.
#[derive(Clone, PartialEq, Eq)]
pub struct NfElement {
    field: NumberField,
    value: Poly,
}

impl NfElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// The representative polynomial in θ.
    pub fn as_poly(&self) -> &Poly {
        &self.value
    }

    /// Power-basis coordinates `c_0, ..., c_{d-1}`.
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.field.degree())
            .map(|k| self.value.coeff(k))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.value.deg() == 0
    }

    fn same_field(&self, o: &Self) -> Result<(), NfError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(NfError::FieldMismatch)
        }
    }

    fn with(&self, value: Poly) -> Self {
        NfElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn inverse(&self) -> Result<Self, NfError> {
        if self.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        if self.field.degree() > MODULAR_INVERSE_DEGREE {
            if let Some(v) = self.field.modular_inverse(&self.value) {
                return Ok(self.with(v));
            }
        }
        let (_, s, _) = self.value.ext_gcd(self.field.min_poly())?;
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
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

    /// `p(self)` for a rational polynomial `p`.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        p.coeffs().iter().rev().fold(self.field.zero(), |acc, c| {
            &(&acc * self) + &self.field.rational(c.clone())
        })
    }

    pub fn checked(&self, o: &Self, op: RatOp) -> Result<Self, NfError> {
        self.same_field(o)?;
        Ok(match op {
            RatOp::Add => self + o,
            RatOp::Sub => self - o,
            RatOp::Mul => self * o,
            RatOp::Div => self * &o.inverse()?,
        })
    }
}

/// Denominator lcm and the integer numerators of `p`.
fn cleared(p: &Poly) -> (Integer, Vec<Integer>) {
    let den = denominator_lcm(p.coeffs());
    let ints = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (den, ints)
}

/// Field arithmetic with field and zero-divisor checks.
pub fn nf_arith(a: &NfElement, b: &NfElement, op: RatOp) -> Result<NfElement, NfError> {
    a.checked(b, op)
}

// Operator forms panic on mismatched fields; use `nf_arith` for a checked
// variant.
impl Add for &NfElement {
    type Output = NfElement;
    fn add(self, o: &NfElement) -> NfElement {
        assert!(self.field == o.field, "field mismatch");
        self.with(&self.value + &o.value)
    }
}

impl Sub for &NfElement {
    type Output = NfElement;
    fn sub(self, o: &NfElement) -> NfElement {
        assert!(self.field == o.field, "field mismatch");
        self.with(&self.value - &o.value)
    }
}

impl Mul for &NfElement {
    type Output = NfElement;
    fn mul(self, o: &NfElement) -> NfElement {
        assert!(self.field == o.field, "field mismatch");
        self.with(self.field.mul_reduce(&self.value, &o.value))
    }
}

impl Neg for &NfElement {
    type Output = NfElement;
    fn neg(self) -> NfElement {
        self.with(-&self.value)
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.display_in("a"))
    }
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElement({self} in {})", self.field)
    }
}

/// Minimal polynomial over Q: the first linear dependency among
/// `1, a, a^2, ...`, found by incremental elimination.
pub fn minimal_polynomial(a: &NfElement) -> Poly {
    let d = a.field.degree();
    // rows: (reduced vector, combination of powers, pivot column)
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
    let mut power = a.field.one();
    for k in 0..=d {
        let mut v = power.coords();
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (rv, rc, pc) in &rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = &v[*pc] / &rv[*pc];
            for (x, y) in v.iter_mut().zip(rv) {
                *x -= &f * y;
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x -= &f * y;
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(pc) => rows.push((v, comb, pc)),
            None => {
                let m = Poly::new(comb).monic();
                debug_assert!(is_irreducible(&m));
                return m;
            }
        }
        power = &power * a;
    }
    unreachable!("d + 1 powers in a d-dimensional space are dependent")
}

/// `[Q(a) : Q]`; divides the field degree.
pub fn element_degree(a: &NfElement) -> usize {
    minimal_polynomial(a).deg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::polyq::parse_poly;
    use proptest::prelude::*;

    pub(crate) fn field(s: &str) -> NumberField {
        NumberField::new(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let k = field("x^2-2");
        let a = k.element(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!((&a * &a).coords(), vec![rat(3, 1), rat(2, 1)]);
        let b = k.element(vec![rat(-1, 1), rat(1, 1)]).unwrap();
        assert_eq!(&a * &b, k.one());
        let c = field("x^3-2");
        let t = c.generator();
        assert_eq!(&t * &t.pow(2), c.rational(rat_int(2)));
        assert_eq!(nf_arith(&a, &t, RatOp::Add), Err(NfError::FieldMismatch));
        assert_eq!(
            nf_arith(&a, &k.zero(), RatOp::Div),
            Err(NfError::DivisionByZero)
        );
        assert_eq!(nf_arith(&a, &b, RatOp::Div).unwrap(), &a * &a);
    }

    #[test]
    fn construction_checks() {
        assert!(NumberField::new(&parse_poly("x^2-4").unwrap()).is_err());
        assert!(NumberField::new(&parse_poly("3").unwrap()).is_err());
        assert_eq!(field("2*x^2-4").min_poly(), &parse_poly("x^2-2").unwrap());
        let k = field("x^2-2");
        assert_eq!(
            k.element(vec![rat(1, 1)]),
            Err(NfError::CoordinateLength {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let k = field("x^2-2");
        assert_eq!(
            minimal_polynomial(&k.rational(rat_int(2))),
            parse_poly("x-2").unwrap()
        );
        let a = k.element(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(minimal_polynomial(&a), parse_poly("x^2-2*x-1").unwrap());
        let q = field("x^4-2");
        assert_eq!(
            minimal_polynomial(&q.generator().pow(2)),
            parse_poly("x^2-2").unwrap()
        );
        let r = field("x^12-2");
        assert_eq!(element_degree(&r.generator().pow(6)), 2);
        assert_eq!(element_degree(&r.generator().pow(4)), 3);
        let f = field("x^5-4*x+2");
        assert_eq!(element_degree(&f.generator()), 5);
    }

    #[test]
    fn rationals_as_degree_one_field() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        let a = q.rational(rat(3, 4));
        assert_eq!(minimal_polynomial(&a), parse_poly("x - 3/4").unwrap());
    }

    fn arb_field() -> impl Strategy<Value = NumberField> {
        prop_oneof![
            Just("x^2-2"),
            Just("x^2+1"),
            Just("x^3-2"),
            Just("x^3-3*x-1"),
            Just("x^4+1"),
            Just("x^4-10*x^2+1"),
            Just("x^5-4*x+2"),
            Just("x^6+x^3+1"),
            Just("x^4-2"),
        ]
        .prop_map(field)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn minimal_polynomial_annihilates(k in arb_field(),
                                          cs in proptest::collection::vec(-4i64..=4, 6)) {
            let a = k.from_poly(&Poly::from_ints(&cs));
            let m = minimal_polynomial(&a);
            prop_assert!(a.eval_poly(&m).is_zero());
            prop_assert_eq!(k.degree() % m.deg(), 0);
        }

        #[test]
        fn inverse_round_trip(k in arb_field(), cs in proptest::collection::vec(-4i64..=4, 6)) {
            let a = k.from_poly(&Poly::from_ints(&cs));
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inverse().unwrap(), k.one());
        }
    }
}
