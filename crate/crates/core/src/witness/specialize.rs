//! Integer specializations `f(b, y)` of a bivariate polynomial.

use std::fmt;

use rayon::prelude::*;

use super::WitnessError;
use crate::arith::rat_int;
use crate::galois::{galois_group, GroupTag};
use crate::polyq::{is_irreducible, BivariatePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The `y`-degree dropped.
    Degenerate,
    Reducible,
    /// Irreducible of degree above 5.
    Irreducible,
    IrreducibleWithGroup(GroupTag),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Degenerate => f.write_str("degenerate"),
            Outcome::Reducible => f.write_str("reducible"),
            Outcome::Irreducible => f.write_str("irreducible"),
            Outcome::IrreducibleWithGroup(g) => write!(f, "irreducible, group {g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationReport {
    pub input: BivariatePoly,
    pub outcomes: Vec<(i64, Outcome)>,
}

impl SpecializationReport {
    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.outcomes.iter().filter(|(_, o)| pred(o)).count()
    }

    pub fn irreducible_count(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Irreducible | Outcome::IrreducibleWithGroup(_)))
    }

    pub fn irreducible_fraction(&self) -> f64 {
        if self.outcomes.is_empty() {
            return 0.0;
        }
        self.irreducible_count() as f64 / self.outcomes.len() as f64
    }
}

impl fmt::Display for SpecializationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f(x, y) = {}", self.input)?;
        for (b, o) in &self.outcomes {
            writeln!(f, "b = {b}: {o}")?;
        }
        write!(
            f,
            "irreducible {}/{}, reducible {}, degenerate {}",
            self.irreducible_count(),
            self.outcomes.len(),
            self.count(|o| *o == Outcome::Reducible),
            self.count(|o| *o == Outcome::Degenerate),
        )
    }
}

fn classify(f: &BivariatePoly, b: i64) -> Outcome {
    let s = f
        .specialize(&rat_int(b))
        .expect("y-degree checked by the caller");
    if s.degenerate {
        return Outcome::Degenerate;
    }
    if !is_irreducible(&s.poly) {
        return Outcome::Reducible;
    }
    if s.poly.deg() > 5 {
        return Outcome::Irreducible;
    }
    galois_group(&s.poly).map_or(Outcome::Irreducible, |c| {
        Outcome::IrreducibleWithGroup(c.tag)
    })
}

/// Classifies `f(b, y)` for every integer `b` in `lo..=hi`. Runs on the
/// current rayon pool; the result is in `b` order whatever the pool size.
pub fn specialize_and_classify(
    f: &BivariatePoly,
    lo: i64,
    hi: i64,
) -> Result<SpecializationReport, WitnessError> {
    if f.degree_y() < 1 {
        return Err(WitnessError::OutOfRange(format!("{f} has degree 0 in y")));
    }
    if lo > hi {
        return Err(WitnessError::OutOfRange(format!("empty range {lo}..{hi}")));
    }
    let outcomes = (lo..=hi)
        .into_par_iter()
        .map(|b| (b, classify(f, b)))
        .collect();
    Ok(SpecializationReport {
        input: f.clone(),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(s: &str) -> BivariatePoly {
        BivariatePoly::parse(s).unwrap()
    }

    #[test]
    fn square_roots_split_at_squares() {
        let r = specialize_and_classify(&bi("y^2-x"), 1, 20).unwrap();
        let reducible: Vec<i64> = r
            .outcomes
            .iter()
            .filter(|(_, o)| *o == Outcome::Reducible)
            .map(|(b, _)| *b)
            .collect();
        assert_eq!(reducible, vec![1, 4, 9, 16]);
        let r = specialize_and_classify(&bi("y^2-x"), 0, 0).unwrap();
        assert_eq!(r.outcomes, vec![(0, Outcome::Reducible)]);
    }

    #[test]
    fn quintic_family() {
        let r = specialize_and_classify(&bi("y^5-4*y+x"), 1, 10).unwrap();
        assert_eq!(
            r.outcomes[1],
            (2, Outcome::IrreducibleWithGroup(GroupTag::S5))
        );
    }

    #[test]
    fn degenerate_and_errors() {
        let r = specialize_and_classify(&bi("x*y^2+y+1"), -1, 1).unwrap();
        assert_eq!(r.outcomes[1], (0, Outcome::Degenerate));
        assert!(specialize_and_classify(&bi("x^2+1"), 0, 3).is_err());
        assert!(specialize_and_classify(&bi("y-x"), 3, 0).is_err());
    }

    #[test]
    fn pool_size_does_not_change_the_report() {
        let f = bi("y^3-x*y+x");
        let run = |n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| specialize_and_classify(&f, -30, 30).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
