//! Text format for polynomial families.
//!
//! ```text
//! finite: <poly>; <poly>; ...
//! degree = k
//! degree <= k [p=P] [prefix: <poly>; ...]
//! radical-tower base=B n=A..C
//! qab
//! qsolv
//! ```

use std::fmt;
use std::str::FromStr;

use super::WitnessError;
use crate::polyq::{parse_poly, Poly};

/// A family of polynomials whose roots generate the field under study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Finite(Vec<Poly>),
    FixedDegree(u64),
    /// All polynomials of degree at most `k`, of which only `prefix` is
    /// checked. `prime` asks for a witness prime no smaller than it.
    BoundedDegree {
        k: u64,
        prefix: Vec<Poly>,
        prime: Option<u64>,
    },
    /// `x^n - base` for `n` in `from..=to`.
    RadicalTower {
        base: i64,
        from: u32,
        to: u32,
    },
    /// All cyclotomic polynomials.
    Cyclotomic,
    /// All polynomials with solvable Galois group.
    Solvable,
}

fn bad(msg: impl Into<String>) -> WitnessError {
    WitnessError::Family(msg.into())
}

fn parse_list(text: &str) -> Result<Vec<Poly>, WitnessError> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            return Err(bad("empty polynomial in list"));
        }
        let p = parse_poly(part).map_err(|e| bad(format!("{part:?}: {e}")))?;
        if p.is_zero() {
            return Err(bad("the zero polynomial cannot be a family member"));
        }
        out.push(p);
    }
    Ok(out)
}

fn parse_count(text: &str, what: &str) -> Result<u64, WitnessError> {
    let k: u64 = text
        .trim()
        .parse()
        .map_err(|_| bad(format!("{what} must be a positive integer, got {text:?}")))?;
    if k == 0 {
        return Err(bad(format!("{what} must be at least 1")));
    }
    Ok(k)
}

fn parse_bounded(rest: &str) -> Result<FamilySpec, WitnessError> {
    let (head, prefix) = match rest.split_once("prefix:") {
        Some((h, p)) => (h, parse_list(p)?),
        None => (rest, Vec::new()),
    };
    let mut words = head.split_whitespace();
    let k = parse_count(words.next().unwrap_or(""), "degree bound")?;
    let mut prime = None;
    for w in words {
        match w.strip_prefix("p=") {
            Some(v) if prime.is_none() => prime = Some(parse_count(v, "p")?),
            _ => return Err(bad(format!("unexpected {w:?} after the degree bound"))),
        }
    }
    if let Some(f) = prefix.iter().find(|f| f.deg() as u64 > k) {
        return Err(bad(format!("prefix member {f} has degree above {k}")));
    }
    Ok(FamilySpec::BoundedDegree { k, prefix, prime })
}

fn parse_radical(rest: &str) -> Result<FamilySpec, WitnessError> {
    let (mut base, mut range) = (None, None);
    for w in rest.split_whitespace() {
        if let Some(v) = w.strip_prefix("base=") {
            let b: i64 = v.parse().map_err(|_| bad(format!("bad base {v:?}")))?;
            base = Some(b);
        } else if let Some(v) = w.strip_prefix("n=") {
            let (a, c) = v
                .split_once("..")
                .ok_or_else(|| bad(format!("expected n=A..C, got {w:?}")))?;
            let small = |t: &str| {
                u32::try_from(parse_count(t, "n")?)
                    .map_err(|_| bad(format!("n = {t} is too large")))
            };
            let (a, c) = (small(a)?, small(c)?);
            if a < 2 || c < a {
                return Err(bad("exponent range must satisfy 2 <= A <= C"));
            }
            range = Some((a, c));
        } else {
            return Err(bad(format!("unexpected {w:?} in radical-tower")));
        }
    }
    let base = base.ok_or_else(|| bad("radical-tower needs base=B"))?;
    let (from, to) = range.ok_or_else(|| bad("radical-tower needs n=A..C"))?;
    if base == 0 {
        return Err(bad("base must be nonzero"));
    }
    Ok(FamilySpec::RadicalTower { base, from, to })
}

impl FromStr for FamilySpec {
    type Err = WitnessError;

    fn from_str(text: &str) -> Result<Self, WitnessError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("finite:") {
            return Ok(FamilySpec::Finite(parse_list(rest)?));
        }
        if let Some(rest) = text.strip_prefix("degree") {
            let rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix("<=") {
                return parse_bounded(r);
            }
            if let Some(r) = rest.strip_prefix('=') {
                return Ok(FamilySpec::FixedDegree(parse_count(r, "degree")?));
            }
            return Err(bad("expected `degree = k` or `degree <= k`"));
        }
        if let Some(rest) = text.strip_prefix("radical-tower") {
            return parse_radical(rest);
        }
        match text {
            "qab" => Ok(FamilySpec::Cyclotomic),
            "qsolv" => Ok(FamilySpec::Solvable),
            _ => Err(bad(format!(
                "unknown family {text:?}; expected finite:, degree =, degree <=, \
                 radical-tower, qab or qsolv"
            ))),
        }
    }
}

fn join(polys: &[Poly]) -> String {
    let parts: Vec<String> = polys.iter().map(Poly::to_string).collect();
    parts.join("; ")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Finite(ps) => write!(f, "finite: {}", join(ps)),
            FamilySpec::FixedDegree(k) => write!(f, "degree = {k}"),
            FamilySpec::BoundedDegree { k, prefix, prime } => {
                write!(f, "degree <= {k}")?;
                if let Some(p) = prime {
                    write!(f, " p={p}")?;
                }
                if !prefix.is_empty() {
                    write!(f, " prefix: {}", join(prefix))?;
                }
                Ok(())
            }
            FamilySpec::RadicalTower { base, from, to } => {
                write!(f, "radical-tower base={base} n={from}..{to}")
            }
            FamilySpec::Cyclotomic => f.write_str("qab"),
            FamilySpec::Solvable => f.write_str("qsolv"),
        }
    }
}
