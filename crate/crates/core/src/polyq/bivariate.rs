use std::fmt;

use num_traits::Zero;

use super::parse::{parse_terms, SyntaxError};
use super::{Poly, PolyError};
use crate::arith::Rational;

/// `f(x, y) = sum_j c_j(x) y^j`, stored by powers of `y`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    by_y: Vec<Poly>,
}

/// Result of substituting `x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub poly: Poly,
    /// Set when the `y`-degree dropped.
    pub degenerate: bool,
}

impl BivariatePoly {
    pub fn new(mut by_y: Vec<Poly>) -> Self {
        while by_y.last().is_some_and(Poly::is_zero) {
            by_y.pop();
        }
        BivariatePoly { by_y }
    }

    pub fn parse(text: &str) -> Result<Self, SyntaxError> {
        let terms = parse_terms(text, b"xy")?;
        let dy = terms.iter().map(|t| t.1[1]).max().unwrap_or(0);
        let mut table: Vec<Vec<Rational>> = vec![Vec::new(); dy + 1];
        for (c, e) in terms {
            let row = &mut table[e[1]];
            if row.len() <= e[0] {
                row.resize(e[0] + 1, Rational::zero());
            }
            row[e[0]] += c;
        }
        Ok(Self::new(table.into_iter().map(Poly::new).collect()))
    }

    pub fn is_zero(&self) -> bool {
        self.by_y.is_empty()
    }

    pub fn degree_y(&self) -> usize {
        self.by_y.len().saturating_sub(1)
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn coeff_y(&self, j: usize) -> Poly {
        self.by_y.get(j).cloned().unwrap_or_default()
    }

    /// `f(b, y)` as a polynomial in `y`.
    pub fn specialize(&self, b: &Rational) -> Result<Specialization, PolyError> {
        if self.by_y.len() < 2 {
            return Err(PolyError::DegreeZero);
        }
        let poly = Poly::new(self.by_y.iter().map(|c| c.eval(b)).collect());
        let degenerate = poly.degree() != Some(self.degree_y());
        Ok(Specialization { poly, degenerate })
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (j, c) in self.by_y.iter().enumerate().rev() {
            for (i, a) in c.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let neg = a < &Rational::zero();
                let mag = if neg { -a.clone() } else { a.clone() };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mut mono = Vec::new();
                for (v, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => mono.push(v.to_string()),
                        _ => mono.push(format!("{v}^{e}")),
                    }
                }
                let one = mag == Rational::from_integer(1.into());
                match (one, mono.is_empty()) {
                    (_, true) => out.push_str(&mag.to_string()),
                    (true, false) => out.push_str(&mono.join("*")),
                    (false, false) => out.push_str(&format!("{mag}*{}", mono.join("*"))),
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly({self})")
    }
}
