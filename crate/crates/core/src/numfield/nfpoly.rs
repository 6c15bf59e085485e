use std::fmt;

use super::{NfElement, NfError, NumberField};
use crate::polyq::Poly;

/// A polynomial with coefficients in a number field, ascending and trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct NfPoly {
    field: NumberField,
    coeffs: Vec<NfElement>,
}

impl NfPoly {
    pub fn new(field: &NumberField, mut coeffs: Vec<NfElement>) -> Result<Self, NfError> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(NfError::FieldMismatch);
        }
        while coeffs.last().is_some_and(NfElement::is_zero) {
            coeffs.pop();
        }
        Ok(NfPoly {
            field: field.clone(),
            coeffs,
        })
    }

    fn raw(field: &NumberField, mut coeffs: Vec<NfElement>) -> Self {
        while coeffs.last().is_some_and(NfElement::is_zero) {
            coeffs.pop();
        }
        NfPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_rational(field: &NumberField, f: &Poly) -> Self {
        Self::raw(
            field,
            f.coeffs()
                .iter()
                .map(|c| field.rational(c.clone()))
                .collect(),
        )
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::raw(field, Vec::new())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[NfElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with 0 for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> NfElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The same polynomial when all coefficients are rational.
    pub fn to_rational(&self) -> Option<Poly> {
        self.coeffs
            .iter()
            .map(|c| c.is_rational().then(|| c.as_poly().coeff(0)))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().expect("nonzero leading coefficient");
        Self::raw(&self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        Self::raw(
            &self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        Self::raw(
            &self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        // accumulate unreduced products, reduce once per coefficient
        let mut acc = vec![Poly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                acc[i + j] = &acc[i + j] + &(a.as_poly() * b.as_poly());
            }
        }
        Self::raw(
            &self.field,
            acc.iter().map(|c| self.field.from_poly(c)).collect(),
        )
    }

    pub fn divrem(&self, g: &Self) -> Result<(Self, Self), NfError> {
        if self.field != g.field {
            return Err(NfError::FieldMismatch);
        }
        let dg = g.degree().ok_or(NfError::DivisionByZero)?;
        let inv = g.lc().inverse()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dg];
        for i in (0..q.len()).rev() {
            let c = &r[i + dg] * &inv;
            if !c.is_zero() {
                for (j, gj) in g.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * gj);
                }
            }
            q[i] = c;
        }
        r.truncate(dg);
        Ok((Self::raw(&self.field, q), Self::raw(&self.field, r)))
    }

    /// Monic gcd by the Euclidean algorithm over the field.
    pub fn gcd(&self, o: &Self) -> Result<Self, NfError> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: &NfElement) -> NfElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &NfElement) -> Self {
        // Horner with the linear polynomial x + c
        let lin = Self::raw(&self.field, vec![c.clone(), self.field.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.field), |acc, a| {
                acc.mul(&lin).add(&Self::raw(&self.field, vec![a.clone()]))
            })
    }
}

impl fmt::Display for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let one = *c == self.field.one();
            match (one, mono.is_empty()) {
                (true, false) => f.write_str(&mono)?,
                (_, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfPoly({self} over {})", self.field)
    }
}
