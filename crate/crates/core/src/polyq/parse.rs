//! Text grammar for polynomials.
//!
//! ```text
//! poly  := [sign] term (sign term)*
//! term  := coeff | coeff '*' mono | mono
//! mono  := var ['^' digits] ('*' var ['^' digits])*
//! coeff := digits ['/' digits]
//! ```
//!
//! Whitespace is ignored everywhere. Univariate input admits a single
//! variable name; the bivariate form admits `x` and `y`, each at most once
//! per term.

use num_traits::Zero;
use thiserror::Error;

use super::Poly;
use crate::arith::{parse_integer, Integer, Rational};

/// Exponents above this are rejected rather than allocated.
pub const MAX_EXPONENT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    // (original byte offset, byte) with whitespace removed
    toks: Vec<(usize, u8)>,
    i: usize,
    src_len: usize,
    vars: &'a [u8],
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.toks.get(self.i).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.src_len, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<String, SyntaxError> {
        let start = self.i;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected digits");
        }
        Ok(self.toks[start..self.i]
            .iter()
            .map(|t| t.1 as char)
            .collect())
    }

    fn coeff(&mut self) -> Result<Rational, SyntaxError> {
        let pos = self.pos();
        let num = self.digits()?;
        let num = parse_integer(&num).map_err(|e| SyntaxError {
            pos,
            msg: e.to_string(),
        })?;
        if self.peek() == Some(b'/') {
            self.i += 1;
            let dpos = self.pos();
            let den = self.digits()?;
            let den = parse_integer(&den).map_err(|e| SyntaxError {
                pos: dpos,
                msg: e.to_string(),
            })?;
            if den.is_zero() {
                return Err(SyntaxError {
                    pos: dpos,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn mono(&mut self, exps: &mut [Option<usize>]) -> Result<(), SyntaxError> {
        loop {
            let Some(v) = self.peek() else {
                return self.err("expected a variable");
            };
            let Some(idx) = self.vars.iter().position(|&c| c == v) else {
                return self.err(format!("unexpected character {:?}", v as char));
            };
            if exps[idx].is_some() {
                return self.err(format!("variable {} repeated in a term", v as char));
            }
            self.i += 1;
            let mut e = 1usize;
            if self.peek() == Some(b'^') {
                self.i += 1;
                let pos = self.pos();
                let d = self.digits()?;
                e = d
                    .parse::<usize>()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| SyntaxError {
                        pos,
                        msg: format!("exponent must be at most {MAX_EXPONENT}"),
                    })?;
            }
            exps[idx] = Some(e);
            if self.peek() == Some(b'*') {
                self.i += 1;
                continue;
            }
            return Ok(());
        }
    }

    fn term(&mut self) -> Result<(Rational, Vec<usize>), SyntaxError> {
        let mut exps = vec![None; self.vars.len()];
        let c = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.i += 1;
                    self.mono(&mut exps)?;
                }
                c
            }
            Some(_) => {
                self.mono(&mut exps)?;
                Rational::from_integer(Integer::from(1))
            }
            None => return self.err("expected a term"),
        };
        Ok((c, exps.into_iter().map(|e| e.unwrap_or(0)).collect()))
    }

    fn terms(&mut self) -> Result<Vec<(Rational, Vec<usize>)>, SyntaxError> {
        if self.toks.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = Vec::new();
        let mut neg = false;
        if let Some(s @ (b'+' | b'-')) = self.peek() {
            neg = s == b'-';
            self.i += 1;
        }
        loop {
            let (c, e) = self.term()?;
            out.push((if neg { -c } else { c }, e));
            match self.peek() {
                None => return Ok(out),
                Some(s @ (b'+' | b'-')) => {
                    neg = s == b'-';
                    self.i += 1;
                }
                Some(b) => return self.err(format!("unexpected character {:?}", b as char)),
            }
        }
    }
}

pub(crate) fn parse_terms(
    text: &str,
    vars: &[u8],
) -> Result<Vec<(Rational, Vec<usize>)>, SyntaxError> {
    if let Some((pos, _)) = text.char_indices().find(|(_, c)| !c.is_ascii()) {
        return Err(SyntaxError {
            pos,
            msg: "non-ASCII input".into(),
        });
    }
    let toks = text
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .collect();
    Cursor {
        toks,
        i: 0,
        src_len: text.len(),
        vars,
    }
    .terms()
}

/// Parses a polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<Poly, SyntaxError> {
    parse_poly_in(text, 'x')
}

/// Parses a polynomial in the given single-letter variable.
pub fn parse_poly_in(text: &str, var: char) -> Result<Poly, SyntaxError> {
    let var = u8::try_from(var)
        .ok()
        .filter(u8::is_ascii_alphabetic)
        .ok_or(SyntaxError {
            pos: 0,
            msg: "variable must be an ASCII letter".into(),
        })?;
    let terms = parse_terms(text, &[var])?;
    let deg = terms.iter().map(|t| t.1[0]).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e[0]] += c;
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f = parse_poly("x^5 - 4*x + 2").unwrap();
        assert_eq!(f, Poly::from_ints(&[2, -4, 0, 0, 0, 1]));
        let g = parse_poly("1/2*x + 1/3").unwrap();
        assert_eq!(g.coeffs(), &[rat(1, 3), rat(1, 2)]);
        assert!(parse_poly("x^^2").is_err());
    }

    #[test]
    fn whitespace_and_signs() {
        assert_eq!(
            parse_poly(" - x ^ 2 +\t3 ").unwrap(),
            Poly::from_ints(&[3, 0, -1])
        );
        assert_eq!(parse_poly("x + x").unwrap(), Poly::from_ints(&[0, 2]));
        assert_eq!(parse_poly("x^2 - x^2").unwrap(), Poly::zero());
        assert_eq!(parse_poly("3*x^0").unwrap(), Poly::from_ints(&[3]));
        assert_eq!(
            parse_poly_in("y^2 - 2", 'y').unwrap(),
            Poly::from_ints(&[-2, 0, 1])
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "+", "x^", "2x", "x*", "1/0", "x+-1", "x^2^3", "y", "x*x", "x^100001", "1.5",
            "--x", "x^-1", "é", "3*", "(x)",
        ] {
            assert!(parse_poly(bad).is_err(), "{bad:?}");
        }
        let e = parse_poly("x + 2y").unwrap_err();
        assert_eq!(e.pos, 5);
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(
            cs in proptest::collection::vec((-1_000_000i64..=1_000_000, 1i64..50), 0..=11)
        ) {
            let f = Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect());
            let s = f.to_string();
            let g = parse_poly(&s).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), s);
        }

        #[test]
        fn arbitrary_input_never_panics(s in "\\PC{0,40}") {
            let _ = parse_poly(&s);
        }
    }
}
