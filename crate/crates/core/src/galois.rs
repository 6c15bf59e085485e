//! Galois groups of irreducible polynomials of degree at most 5, the
//! prime-degree `S_p` criterion and solvability by radicals.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{is_prime_u64, is_rational_square, next_prime_u64, rat_int, Rational};
use crate::numfield::{
    factor_over_nf, splitting_degree, NfError, NumberField, TowerSummary, DEFAULT_DEGREE_CAP,
};
use crate::polyq::{
    discriminant, factor_q, is_irreducible, sturm_real_roots, Poly, PolyError, PolyZp,
};

/// Good primes examined by the modular cycle-type sieve.
pub const CYCLE_TYPE_PRIMES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not irreducible over Q")]
    NotIrreducible(Poly),
    #[error("degree {0} is outside 1..=5")]
    DegreeOutOfRange(usize),
    #[error("degree {0} is not prime")]
    DegreeNotPrime(usize),
    #[error("splitting field degree would reach {needed}, above the cap {cap}")]
    DegreeCapExceeded { cap: u64, needed: u64 },
    #[error("solvability of {0} is not decided by the available criteria")]
    Undecidable(Poly),
    #[error(transparent)]
    Field(NfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<NfError> for GaloisError {
    fn from(e: NfError) -> Self {
        match e {
            NfError::DegreeCapExceeded { cap, needed } => {
                GaloisError::DegreeCapExceeded { cap, needed }
            }
            NfError::Poly(p) => GaloisError::Poly(p),
            other => GaloisError::Field(other),
        }
    }
}

/// Transitive groups of degree at most 5, up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupTag {
    C1,
    C2,
    C3,
    S3,
    C4,
    V4,
    D4,
    A4,
    S4,
    C5,
    D5,
    F20,
    A5,
    S5,
}

impl GroupTag {
    pub const ALL: [GroupTag; 14] = [
        GroupTag::C1,
        GroupTag::C2,
        GroupTag::C3,
        GroupTag::S3,
        GroupTag::C4,
        GroupTag::V4,
        GroupTag::D4,
        GroupTag::A4,
        GroupTag::S4,
        GroupTag::C5,
        GroupTag::D5,
        GroupTag::F20,
        GroupTag::A5,
        GroupTag::S5,
    ];

    pub fn order(self) -> u64 {
        match self {
            GroupTag::C1 => 1,
            GroupTag::C2 => 2,
            GroupTag::C3 => 3,
            GroupTag::S3 => 6,
            GroupTag::C4 | GroupTag::V4 => 4,
            GroupTag::D4 => 8,
            GroupTag::A4 => 12,
            GroupTag::S4 => 24,
            GroupTag::C5 => 5,
            GroupTag::D5 => 10,
            GroupTag::F20 => 20,
            GroupTag::A5 => 60,
            GroupTag::S5 => 120,
        }
    }

    /// Degree of the permutation representation.
    pub fn degree(self) -> usize {
        match self {
            GroupTag::C1 => 1,
            GroupTag::C2 => 2,
            GroupTag::C3 | GroupTag::S3 => 3,
            GroupTag::C4 | GroupTag::V4 | GroupTag::D4 | GroupTag::A4 | GroupTag::S4 => 4,
            _ => 5,
        }
    }

    pub fn is_solvable(self) -> bool {
        !matches!(self, GroupTag::A5 | GroupTag::S5)
    }

    /// Whether the group lies in the alternating group of its degree.
    pub fn is_even(self) -> bool {
        matches!(
            self,
            GroupTag::C1
                | GroupTag::C3
                | GroupTag::V4
                | GroupTag::A4
                | GroupTag::C5
                | GroupTag::D5
                | GroupTag::A5
        )
    }

    /// Orders of the elements of the group.
    pub fn element_orders(self) -> &'static [u64] {
        match self {
            GroupTag::C1 => &[1],
            GroupTag::C2 => &[1, 2],
            GroupTag::C3 => &[1, 3],
            GroupTag::S3 => &[1, 2, 3],
            GroupTag::C4 => &[1, 2, 4],
            GroupTag::V4 => &[1, 2],
            GroupTag::D4 => &[1, 2, 4],
            GroupTag::A4 => &[1, 2, 3],
            GroupTag::S4 => &[1, 2, 3, 4],
            GroupTag::C5 => &[1, 5],
            GroupTag::D5 => &[1, 2, 5],
            GroupTag::F20 => &[1, 2, 4, 5],
            GroupTag::A5 => &[1, 2, 3, 5],
            GroupTag::S5 => &[1, 2, 3, 4, 5, 6],
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.to_string() == s)
    }

    /// Degree-5 group with a splitting field of degree `order`.
    fn quintic_by_order(order: u64) -> Option<Self> {
        match order {
            5 => Some(GroupTag::C5),
            10 => Some(GroupTag::D5),
            20 => Some(GroupTag::F20),
            60 => Some(GroupTag::A5),
            120 => Some(GroupTag::S5),
            _ => None,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One fact used in an identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Discriminant {
        value: Rational,
        square: bool,
    },
    /// Degrees of the rational factors of the resolvent cubic of a quartic.
    ResolventCubic {
        resolvent: Poly,
        factor_degrees: Vec<usize>,
    },
    /// Whether the quartic stays irreducible over `Q(sqrt(disc))`.
    OverDiscriminantField {
        irreducible: bool,
    },
    /// Factor degrees of `f mod p`, a cycle type of the group.
    CycleType {
        prime: u64,
        degrees: Vec<usize>,
    },
    RealRoots {
        count: usize,
    },
    SplittingTower(TowerSummary),
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        match self {
            Evidence::Discriminant { value, square } => {
                json!({"kind": "discriminant", "value": value.to_string(), "square": square})
            }
            Evidence::ResolventCubic {
                resolvent,
                factor_degrees,
            } => json!({
                "kind": "resolvent_cubic",
                "resolvent": resolvent.to_string(),
                "factor_degrees": factor_degrees,
            }),
            Evidence::OverDiscriminantField { irreducible } => {
                json!({"kind": "over_discriminant_field", "irreducible": irreducible})
            }
            Evidence::CycleType { prime, degrees } => {
                json!({"kind": "cycle_type", "prime": prime, "degrees": degrees})
            }
            Evidence::RealRoots { count } => json!({"kind": "real_roots", "count": count}),
            Evidence::SplittingTower(s) => json!({
                "kind": "splitting_tower",
                "steps": s.steps,
                "total_degree": s.total_degree,
            }),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Discriminant { value, square } => {
                write!(
                    f,
                    "discriminant {value} ({})",
                    if *square { "square" } else { "not a square" }
                )
            }
            Evidence::ResolventCubic {
                resolvent,
                factor_degrees,
            } => write!(
                f,
                "resolvent cubic {resolvent} with factor degrees {factor_degrees:?}"
            ),
            Evidence::OverDiscriminantField { irreducible } => write!(
                f,
                "{} over Q(sqrt(disc))",
                if *irreducible {
                    "irreducible"
                } else {
                    "reducible"
                }
            ),
            Evidence::CycleType { prime, degrees } => {
                write!(f, "cycle type {degrees:?} modulo {prime}")
            }
            Evidence::RealRoots { count } => write!(f, "{count} real roots"),
            Evidence::SplittingTower(s) => {
                write!(f, "splitting tower {s} of degree {}", s.total_degree)
            }
        }
    }
}

/// An identified Galois group with the facts that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisClass {
    pub degree: usize,
    pub tag: GroupTag,
    pub solvable: bool,
    pub evidence: Vec<Evidence>,
}

impl GaloisClass {
    fn new(degree: usize, tag: GroupTag, evidence: Vec<Evidence>) -> Self {
        GaloisClass {
            degree,
            tag,
            solvable: tag.is_solvable(),
            evidence,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "group": self.tag.to_string(),
            "order": self.tag.order(),
            "solvable": self.solvable,
            "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Galois group of an irreducible `f` with `1 <= deg f <= 5`.
pub fn galois_group(f: &Poly) -> Result<GaloisClass, GaloisError> {
    galois_group_with_cap(f, DEFAULT_DEGREE_CAP)
}

/// As [`galois_group`], with an explicit cap for the splitting tower.
pub fn galois_group_with_cap(f: &Poly, cap: u64) -> Result<GaloisClass, GaloisError> {
    let n = f.degree().unwrap_or(0);
    if !(1..=5).contains(&n) {
        return Err(GaloisError::DegreeOutOfRange(n));
    }
    if !is_irreducible(f) {
        return Err(GaloisError::NotIrreducible(f.clone()));
    }
    let f = f.monic();
    match n {
        1 => Ok(GaloisClass::new(1, GroupTag::C1, Vec::new())),
        2 => {
            let ev = discriminant_evidence(&f)?;
            Ok(GaloisClass::new(2, GroupTag::C2, vec![ev]))
        }
        3 => {
            let ev = discriminant_evidence(&f)?;
            let tag = if is_square(&ev) {
                GroupTag::C3
            } else {
                GroupTag::S3
            };
            Ok(GaloisClass::new(3, tag, vec![ev]))
        }
        4 => quartic(&f),
        _ => quintic(&f, cap),
    }
}

fn discriminant_evidence(f: &Poly) -> Result<Evidence, GaloisError> {
    let value = discriminant(f)?;
    let square = is_rational_square(&value);
    Ok(Evidence::Discriminant { value, square })
}

fn is_square(ev: &Evidence) -> bool {
    matches!(ev, Evidence::Discriminant { square: true, .. })
}

/// Resolvent cubic of a monic quartic, with roots `r1 r2 + r3 r4` and its
/// conjugates.
pub fn resolvent_cubic(f: &Poly) -> Poly {
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let four = rat_int(4);
    Poly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        rat_int(1),
    ])
}

fn quartic(f: &Poly) -> Result<GaloisClass, GaloisError> {
    let disc = discriminant_evidence(f)?;
    let square = is_square(&disc);
    let resolvent = resolvent_cubic(f);
    let mut factor_degrees: Vec<usize> = factor_q(&resolvent)
        .factors
        .iter()
        .flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m as usize))
        .collect();
    factor_degrees.sort_unstable();
    let pattern = factor_degrees.clone();
    let mut evidence = vec![
        disc.clone(),
        Evidence::ResolventCubic {
            resolvent,
            factor_degrees,
        },
    ];
    let tag = match pattern.as_slice() {
        [3] => {
            if square {
                GroupTag::A4
            } else {
                GroupTag::S4
            }
        }
        [1, 1, 1] => GroupTag::V4,
        _ => {
            // one rational root: C4 exactly when f factors over Q(sqrt(disc))
            let Evidence::Discriminant { value, .. } = &disc else {
                unreachable!()
            };
            let k = NumberField::new(&Poly::new(vec![-value.clone(), rat_int(0), rat_int(1)]))?;
            let irreducible = factor_over_nf(f, &k)?.len() == 1;
            evidence.push(Evidence::OverDiscriminantField { irreducible });
            if irreducible {
                GroupTag::D4
            } else {
                GroupTag::C4
            }
        }
    };
    Ok(GaloisClass::new(4, tag, evidence))
}

/// Cycle types of `f mod p` at good primes, in prime order.
pub fn cycle_types(f: &Poly, count: usize) -> Vec<(u64, Vec<usize>)> {
    let (_, ints) = f.integer_primitive();
    let n = f.deg();
    let mut out = Vec::with_capacity(count);
    let mut p = 1;
    while out.len() < count {
        p = next_prime_u64(p);
        let fp = PolyZp::from_integers(&ints, p);
        if fp.deg() != n || !fp.is_squarefree() {
            continue;
        }
        out.push((p, fp.monic().factor_degrees()));
    }
    out
}

fn quintic(f: &Poly, cap: u64) -> Result<GaloisClass, GaloisError> {
    let mut evidence = Vec::new();
    for (prime, degrees) in cycle_types(f, CYCLE_TYPE_PRIMES) {
        let decisive = degrees == [2, 3];
        evidence.push(Evidence::CycleType { prime, degrees });
        if decisive {
            // an element of order 6 exists only in S5
            return Ok(GaloisClass::new(5, GroupTag::S5, evidence));
        }
    }
    let real = sturm_real_roots(f)?;
    evidence.push(Evidence::RealRoots { count: real });
    if real == 3 {
        // irreducible of prime degree with exactly two non-real roots
        return Ok(GaloisClass::new(5, GroupTag::S5, evidence));
    }
    evidence.push(discriminant_evidence(f)?);
    let summary = splitting_degree(f, cap)?;
    let tag = GroupTag::quintic_by_order(summary.total_degree)
        .expect("a transitive subgroup of S5 has order 5, 10, 20, 60 or 120");
    evidence.push(Evidence::SplittingTower(summary));
    Ok(GaloisClass::new(5, tag, evidence))
}

/// Irreducible of prime degree `p` with exactly `p - 2` real roots, which
/// forces the Galois group to be `S_p`. Sound, not complete.
pub fn sp_criterion(f: &Poly) -> Result<bool, GaloisError> {
    let p = f.degree().unwrap_or(0);
    if !is_prime_u64(p as u64) {
        return Err(GaloisError::DegreeNotPrime(p));
    }
    Ok(is_irreducible(f) && sturm_real_roots(f)? == p - 2)
}

/// Solvability by radicals with the facts that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    /// The identified group, for degree at most 5.
    pub group: Option<GroupTag>,
    pub evidence: Vec<Evidence>,
}

/// Decides solvability by radicals for irreducible `f` of degree at most 5,
/// and refutes it in prime degree when [`sp_criterion`] applies.
pub fn is_solvable_by_radicals(f: &Poly) -> Result<Solvability, GaloisError> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Err(GaloisError::DegreeOutOfRange(0));
    }
    if !is_irreducible(f) {
        return Err(GaloisError::NotIrreducible(f.clone()));
    }
    if n <= 5 {
        let class = galois_group(f)?;
        return Ok(Solvability {
            solvable: class.solvable,
            group: Some(class.tag),
            evidence: class.evidence,
        });
    }
    if is_prime_u64(n as u64) && sp_criterion(f)? {
        return Ok(Solvability {
            solvable: false,
            group: None,
            evidence: vec![Evidence::RealRoots { count: n - 2 }],
        });
    }
    Err(GaloisError::Undecidable(f.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn tag(s: &str) -> GroupTag {
        galois_group(&p(s)).unwrap().tag
    }

    #[test]
    fn low_degree_examples() {
        assert_eq!(tag("x-3"), GroupTag::C1);
        assert_eq!(tag("x^2+1"), GroupTag::C2);
        assert_eq!(tag("x^3-2"), GroupTag::S3);
        assert_eq!(tag("x^3-3*x-1"), GroupTag::C3);
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(tag("x^4+1"), GroupTag::V4);
        assert_eq!(tag("x^4-10*x^2+1"), GroupTag::V4);
        assert_eq!(tag("x^4-2"), GroupTag::D4);
        // Φ5 is cyclic of order 4
        assert_eq!(tag("x^4+x^3+x^2+x+1"), GroupTag::C4);
        assert_eq!(tag("x^4+8*x+12"), GroupTag::A4);
        assert_eq!(tag("x^4+x+1"), GroupTag::S4);
    }

    #[test]
    fn quintic_examples() {
        let c = galois_group(&p("x^5-4*x+2")).unwrap();
        assert_eq!(c.tag, GroupTag::S5);
        assert!(!c.solvable);
        let c = galois_group(&p("x^5-2")).unwrap();
        assert_eq!(c.tag, GroupTag::F20);
        assert!(c.solvable);
        assert_eq!(tag("x^5+x^4-4*x^3-3*x^2+3*x+1"), GroupTag::C5);
        assert_eq!(tag("x^5-5*x+12"), GroupTag::D5);
        assert_eq!(tag("x^5+20*x+16"), GroupTag::A5);
    }

    #[test]
    fn errors() {
        assert_eq!(
            galois_group(&p("x^2-1")).unwrap_err(),
            GaloisError::NotIrreducible(p("x^2-1"))
        );
        assert_eq!(
            galois_group(&p("x^6+x+1")).unwrap_err(),
            GaloisError::DegreeOutOfRange(6)
        );
        assert_eq!(
            sp_criterion(&p("x^4+x+1")).unwrap_err(),
            GaloisError::DegreeNotPrime(4)
        );
        assert!(matches!(
            galois_group_with_cap(&p("x^5-2"), 10),
            Err(GaloisError::DegreeCapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn sp_criterion_examples() {
        assert!(sp_criterion(&p("x^5-4*x+2")).unwrap());
        assert!(!sp_criterion(&p("x^5-2")).unwrap());
        // x^7 - 28x + 4: the Sturm count decides, whatever it is
        let f = p("x^7-28*x+4");
        let real = sturm_real_roots(&f).unwrap();
        assert_eq!(sp_criterion(&f).unwrap(), is_irreducible(&f) && real == 5);
    }

    #[test]
    fn solvability() {
        assert!(is_solvable_by_radicals(&p("x^4+1")).unwrap().solvable);
        assert!(!is_solvable_by_radicals(&p("x^5-4*x+2")).unwrap().solvable);
        let f = p("x^7-28*x+4");
        match is_solvable_by_radicals(&f) {
            Ok(s) => {
                assert!(!s.solvable);
                assert!(sp_criterion(&f).unwrap());
            }
            Err(e) => assert_eq!(e, GaloisError::Undecidable(f)),
        }
        assert!(matches!(
            is_solvable_by_radicals(&p("x^6+x+1")),
            Err(GaloisError::Undecidable(_))
        ));
    }

    #[test]
    fn resolvent_roots() {
        // roots ±√2, ±√3
        let r = resolvent_cubic(&p("x^4-5*x^2+6"));
        // pairings: (√2,-√2)(√3,-√3) -> -5; (√2,√3)(-√2,-√3) -> 2√6; (√2,-√3)(-√2,√3) -> -2√6
        assert_eq!(r, p("x^3+5*x^2-24*x-120"));
    }

    #[test]
    fn json_shape() {
        let v = galois_group(&p("x^3-2")).unwrap().to_json();
        assert_eq!(v["group"], "S3");
        assert_eq!(v["order"], 6);
        assert_eq!(v["evidence"][0]["kind"], "discriminant");
        assert_eq!(v["evidence"][0]["value"], "-108");
    }
}
