//! Witness construction for each kind of family.

use num_traits::{ToPrimitive, Zero};

use super::certificate::{DegreeData, Obstruction, WitnessCertificate};
use super::{FamilySpec, WitnessError};
use crate::arith::{binomial, int, next_prime_above, next_prime_u64, rat_int, Integer};
use crate::numfield::{splitting_degree, TowerSummary};
use crate::polyq::{eisenstein_witness, sturm_real_roots, Poly};

/// How many further primes are tried when `x^p - 4x + 2` does not have
/// `p - 2` real roots.
pub const STURM_RETRIES: usize = 10;

/// `(1 + θ)^n` in the basis `1, θ, ..., θ^(m-1)` of `Q(θ)`, `θ^m = p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalPower {
    pub coords: Vec<Integer>,
    /// All coordinates past the first vanish.
    pub in_q: bool,
}

/// Binomial expansion of `(1 + p^(1/m))^n`: the term `C(n, i) θ^i` lands on
/// `θ^(i mod m)` with the factor `p^(i div m)`.
pub fn radical_power_membership(p: u64, m: usize, n: u32) -> RadicalPower {
    assert!(m >= 1, "root degree must be positive");
    let p = Integer::from(p);
    let n_big = Integer::from(n);
    let mut coords = vec![Integer::zero(); m];
    let mut p_pow = int(1);
    for i in 0..=n as usize {
        if i > 0 && i % m == 0 {
            p_pow *= &p;
        }
        let c = binomial(&n_big, &Integer::from(i)).expect("0 <= i <= n");
        coords[i % m] += c * &p_pow;
    }
    let in_q = coords[1..].iter().all(Zero::is_zero);
    RadicalPower { coords, in_q }
}

/// `x^m - p`, Eisenstein at `p`.
fn pure_radical(p: u64, m: usize) -> Poly {
    &Poly::monomial(rat_int(1), m) - &Poly::constant(rat_int(p))
}

/// `x^p - p`.
pub(crate) fn radical_field(p: u64) -> Poly {
    pure_radical(p, p as usize)
}

/// `x^p - 4x + 2`, Eisenstein at 2.
pub(crate) fn nonsolvable_poly(p: usize) -> Poly {
    &Poly::monomial(rat_int(1), p) + &Poly::from_ints(&[2, -4])
}

/// Minimal polynomial `(x - 1)^p - p` of `1 + p^(1/p)`. The verifier
/// recomputes it in `Q(p^(1/p))`.
fn radical_witness(p: u64) -> Poly {
    radical_field(p).shift(&rat_int(-1))
}

fn small(n: &Integer) -> Result<u64, WitnessError> {
    n.to_u64()
        .ok_or_else(|| WitnessError::OutOfRange(format!("{n} does not fit in 64 bits")))
}

fn radical_certificate(
    family: FamilySpec,
    p: Integer,
    degree_data: DegreeData,
) -> Result<WitnessCertificate, WitnessError> {
    let obstruction = Obstruction::for_family(&family);
    let w = radical_witness(small(&p)?);
    Ok(WitnessCertificate::assemble(
        family,
        w,
        p,
        obstruction,
        degree_data,
    ))
}

fn tower_of(polys: &[Poly], cap: u64) -> Result<TowerSummary, WitnessError> {
    let product = polys.iter().fold(Poly::one(), |acc, f| &acc * f);
    Ok(splitting_degree(&product, cap)?)
}

/// A finite family generates a field of degree `t`; any prime `p > t`
/// gives the witness `1 + p^(1/p)`.
pub fn witness_finite_family(polys: &[Poly], cap: u64) -> Result<WitnessCertificate, WitnessError> {
    if polys.is_empty() {
        return Err(WitnessError::EmptyFamily);
    }
    if polys.iter().any(Poly::is_zero) {
        return Err(WitnessError::ZeroPolynomial);
    }
    let tower = tower_of(polys, cap)?;
    let p = next_prime_above(&Integer::from(tower.total_degree))?;
    radical_certificate(
        FamilySpec::Finite(polys.to_vec()),
        p,
        DegreeData::ExactSplitting(tower),
    )
}

/// Polynomials of degree exactly `k`: every finite subextension has degree
/// a product of numbers at most `k`, so a prime `p > k` never divides it.
pub fn witness_fixed_degree_family(k: u64) -> Result<WitnessCertificate, WitnessError> {
    if k == 0 {
        return Err(WitnessError::OutOfRange("degree must be at least 1".into()));
    }
    let p = next_prime_above(&Integer::from(k))?;
    radical_certificate(FamilySpec::FixedDegree(k), p, DegreeData::ProductBound(k))
}

/// First prime from `start` on for which `x^p - 4x + 2` is Eisenstein at 2
/// with exactly `p - 2` real roots, and `accept` holds.
fn nonsolvable_prime(start: u64, accept: impl Fn(u64) -> bool) -> Result<u64, WitnessError> {
    let mut p = start;
    for _ in 0..=STURM_RETRIES {
        let f = nonsolvable_poly(p as usize);
        let eisenstein = eisenstein_witness(&f).ok().flatten() == Some(int(2));
        let real = sturm_real_roots(&f).map_err(|e| WitnessError::Galois(e.into()))?;
        if eisenstein && real as u64 == p - 2 && accept(p) {
            return Ok(p);
        }
        p = next_prime_u64(p);
    }
    Err(WitnessError::SturmMismatch {
        prime: start,
        tries: STURM_RETRIES,
    })
}

fn nonsolvable_certificate(
    family: FamilySpec,
    p: u64,
    degree_data: DegreeData,
) -> WitnessCertificate {
    let w = nonsolvable_poly(p as usize);
    let obstruction = Obstruction::for_family(&family);
    WitnessCertificate::assemble(family, w, Integer::from(p), obstruction, degree_data)
}

/// Polynomials of degree at most `k`, checked on the finite `prefix`. The
/// witness is a root of `x^p - 4x + 2` with `p` prime above `max(k, 3)`.
pub fn witness_bounded_degree_family(
    k: u64,
    prefix: &[Poly],
    prime: Option<u64>,
    cap: u64,
) -> Result<WitnessCertificate, WitnessError> {
    if k == 0 {
        return Err(WitnessError::OutOfRange(
            "degree bound must be at least 1".into(),
        ));
    }
    if let Some(f) = prefix.iter().find(|f| f.is_zero() || f.deg() as u64 > k) {
        return Err(WitnessError::Family(format!(
            "prefix member {f} is zero or has degree above {k}"
        )));
    }
    if let Some(q) = prime {
        if q < 5 || !crate::arith::is_prime_u64(q) {
            return Err(WitnessError::InvalidPrime(q));
        }
    }
    let floor = next_prime_u64(k.max(3));
    let start = prime.map_or(floor, |q| q.max(floor));
    if start > crate::polyq::MAX_EXPONENT as u64 {
        return Err(WitnessError::OutOfRange(format!(
            "prime {start} is too large"
        )));
    }
    let tower = if prefix.is_empty() {
        None
    } else {
        Some(tower_of(prefix, cap)?)
    };
    let t = tower.as_ref().map_or(1, |t| t.total_degree);
    let p = nonsolvable_prime(start, |p| t % p != 0)?;
    let family = FamilySpec::BoundedDegree {
        k,
        prefix: prefix.to_vec(),
        prime,
    };
    let degree_data = DegreeData::PrefixOnly {
        s: prefix.len(),
        tower,
    };
    Ok(nonsolvable_certificate(family, p, degree_data))
}

/// Certificate for any family kind.
///
/// The `x^n - b` family and `Q_solv` consist of radicals, so a root of a
/// non-solvable quintic serves. For `Q_ab` the witness `1 + 3^(1/3)`
/// generates a non-normal cubic field, as does each of its powers.
pub fn witness_for_family(spec: &FamilySpec, cap: u64) -> Result<WitnessCertificate, WitnessError> {
    match spec {
        FamilySpec::Finite(ps) => witness_finite_family(ps, cap),
        FamilySpec::FixedDegree(k) => witness_fixed_degree_family(*k),
        FamilySpec::BoundedDegree { k, prefix, prime } => {
            witness_bounded_degree_family(*k, prefix, *prime, cap)
        }
        FamilySpec::RadicalTower { from, to, .. } => {
            let p = nonsolvable_prime(5, |_| true)?;
            let s = (to - from + 1) as usize;
            let data = DegreeData::PrefixOnly { s, tower: None };
            Ok(nonsolvable_certificate(spec.clone(), p, data))
        }
        FamilySpec::Solvable => {
            let p = nonsolvable_prime(5, |_| true)?;
            let data = DegreeData::PrefixOnly { s: 0, tower: None };
            Ok(nonsolvable_certificate(spec.clone(), p, data))
        }
        FamilySpec::Cyclotomic => {
            let data = DegreeData::PrefixOnly { s: 0, tower: None };
            radical_certificate(spec.clone(), int(3), data)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use crate::numfield::{element_degree, minimal_polynomial, NfElement, NumberField};
    use crate::polyq::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    /// `(1 + θ)^n` by repeated field multiplication.
    fn power_in_field(p: u64, m: usize, n: u32) -> NfElement {
        let k = NumberField::new(&pure_radical(p, m)).unwrap();
        (&k.one() + &k.generator()).pow(n)
    }

    #[test]
    fn radical_power_examples() {
        let r = radical_power_membership(2, 2, 2);
        assert_eq!(r.coords, vec![int(3), int(2)]);
        assert!(!r.in_q);
        let r = radical_power_membership(2, 1, 1);
        assert_eq!(r.coords, vec![int(3)]);
        assert!(r.in_q);
        assert!(!radical_power_membership(5, 5, 7).in_q);
    }

    #[test]
    fn radical_power_matches_field_multiplication() {
        for (p, m, n) in [(5, 5, 7), (3, 4, 11), (7, 2, 9), (2, 3, 20)] {
            let expansion = radical_power_membership(p, m, n);
            let product = power_in_field(p, m, n);
            let coords: Vec<_> = expansion
                .coords
                .iter()
                .map(|c| rat_int(c.clone()))
                .collect();
            assert_eq!(product.coords(), coords, "p={p} m={m} n={n}");
        }
    }

    #[test]
    fn radical_witness_is_the_minimal_polynomial() {
        for q in [2u64, 3, 5, 13] {
            let k = NumberField::new(&radical_field(q)).unwrap();
            let w = minimal_polynomial(&(&k.one() + &k.generator()));
            assert_eq!(radical_witness(q), w);
        }
    }

    #[test]
    fn finite_family_examples() {
        let c = witness_finite_family(&[p("x^2-2"), p("x^3-3")], 5000).unwrap();
        assert_eq!(c.prime, int(13));
        assert_eq!(c.description, "1 + 13^(1/13)");
        match &c.degree_data {
            DegreeData::ExactSplitting(t) => assert_eq!(t.total_degree, 12),
            other => panic!("{other:?}"),
        }
        let c = witness_finite_family(&[p("x-1")], 5000).unwrap();
        assert_eq!(c.prime, int(2));
        assert_eq!(c.witness_min_poly, p("x^2-2*x-1"));
        let c = witness_finite_family(&[p("x^2+1")], 5000).unwrap();
        assert_eq!(c.prime, int(3));
        assert!(matches!(
            witness_finite_family(&[], 5000),
            Err(WitnessError::EmptyFamily)
        ));
        assert!(matches!(
            witness_finite_family(&[p("x^5-4*x+2")], 100),
            Err(WitnessError::DegreeCapExceeded { cap: 100, .. })
        ));
    }

    #[test]
    fn fixed_degree_primes() {
        for (k, want) in [(1, 2), (2, 3), (3, 5), (4, 5), (5, 7), (6, 7)] {
            let c = witness_fixed_degree_family(k).unwrap();
            assert_eq!(c.prime, int(want));
            assert_eq!(c.degree_data, DegreeData::ProductBound(k));
        }
        // k = 1 is the witness 1 + sqrt(2)
        assert_eq!(
            witness_fixed_degree_family(1).unwrap().witness_min_poly,
            p("x^2-2*x-1")
        );
    }

    #[test]
    fn bounded_degree_examples() {
        let c = witness_bounded_degree_family(4, &[p("x^2-2"), p("x^3-3")], Some(5), 5000).unwrap();
        assert_eq!(c.prime, int(5));
        assert_eq!(c.witness_min_poly, p("x^5-4*x+2"));
        let t = |c: &WitnessCertificate| match &c.degree_data {
            DegreeData::PrefixOnly { tower, .. } => tower.as_ref().map(|t| t.total_degree),
            other => panic!("{other:?}"),
        };
        assert_eq!(t(&c), Some(12));
        let c = witness_bounded_degree_family(1, &[], None, 5000).unwrap();
        assert_eq!(c.prime, int(5));
        assert_eq!(t(&c), None);
        let c = witness_bounded_degree_family(4, &[p("x^4-2")], None, 5000).unwrap();
        assert_eq!(t(&c), Some(8));
        assert!(is_prime(&c.prime).unwrap());
        // x^p - 4x + 2 has two critical points, so at most 3 real roots:
        // the real-root hypothesis fails at every prime above 5
        assert_eq!(
            witness_bounded_degree_family(6, &[], None, 5000),
            Err(WitnessError::SturmMismatch {
                prime: 7,
                tries: STURM_RETRIES
            })
        );
        assert!(matches!(
            witness_bounded_degree_family(4, &[], Some(4), 5000),
            Err(WitnessError::InvalidPrime(4))
        ));
        assert!(witness_bounded_degree_family(2, &[p("x^3")], None, 5000).is_err());
    }

    #[test]
    fn radical_witness_powers_keep_prime_degree() {
        for q in [2u64, 3, 5, 7] {
            let k = NumberField::new(&radical_field(q)).unwrap();
            let w = &k.one() + &k.generator();
            let mut pw = k.one();
            for _ in 1..=25 {
                pw = &pw * &w;
                assert_eq!(element_degree(&pw), q as usize);
            }
        }
    }
}
