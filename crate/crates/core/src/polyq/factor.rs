//! Factorization over Q: squarefree decomposition, modular factorization,
//! Hensel lifting and subset recombination.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::hensel::{hensel_lift, mul_mod, IntPoly};
use super::zp::{int_mod, PolyZp};
use super::{Poly, PolyError};
use crate::arith::{next_prime_u64, Integer, Rational};

/// Number of good primes whose factor-degree patterns are compared.
const PATTERN_PRIMES: usize = 6;
/// Primes scanned while looking for good ones.
const PRIME_SCAN_LIMIT: u64 = 2_000;

/// `f = unit * prod(factor^mult)` with monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationQ {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl FactorizationQ {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part(f: &Poly) -> Poly {
    if f.deg() == 0 {
        return Poly::one();
    }
    let g = f.gcd(&f.derivative()).expect("f nonzero");
    f.exact_div(&g).expect("gcd divides").monic()
}

/// Yun's algorithm: `[(a_1, 1), (a_2, 2), ...]` with `f = lc * prod a_i^i`.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df).unwrap();
    let mut b = f.exact_div(&a).unwrap();
    let mut c = df.exact_div(&a).unwrap();
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        a = b.gcd(&d).unwrap();
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Modular squarefreeness: a good prime certifies that `f` is squarefree.
pub(crate) fn squarefree_mod_some_prime(f: &[Integer]) -> bool {
    let lc = f.last().unwrap();
    let mut p = 2;
    for _ in 0..20 {
        p = next_prime_u64(p);
        if int_mod(lc, p) == 0 {
            continue;
        }
        if PolyZp::from_integers(f, p).is_squarefree() {
            return true;
        }
    }
    false
}

pub fn factor_q(f: &Poly) -> FactorizationQ {
    if f.deg() == 0 {
        return FactorizationQ {
            unit: f.lc(),
            factors: Vec::new(),
        };
    }
    let unit = f.lc();
    let (_, prim) = f.integer_primitive();
    let parts = if squarefree_mod_some_prime(&prim) {
        vec![(f.monic(), 1)]
    } else {
        squarefree_decomposition(f)
    };
    let mut factors = Vec::new();
    for (part, mult) in parts {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.deg(), a.1)
            .cmp(&(b.0.deg(), b.1))
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    FactorizationQ { unit, factors }
}

/// Whether `f` (degree >= 1) is irreducible over Q.
pub fn is_irreducible(f: &Poly) -> bool {
    f.deg() >= 1 && factor_q(f).is_irreducible()
}

/// Monic irreducible factors of a squarefree polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let (_, mut prim) = f.integer_primitive();
    let mut out = Vec::new();
    if prim[0].is_zero() {
        out.push(Poly::x());
        prim.remove(0);
    }
    if prim.len() > 1 {
        for g in zassenhaus(&prim) {
            out.push(Poly::from_integers(&g).monic());
        }
    }
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn norm2_ceil(f: &[Integer]) -> Integer {
    let sq: Integer = f.iter().map(|c| c * c).sum();
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1u32
    }
}

fn symmetric(a: &[Integer], m: &Integer) -> IntPoly {
    let half = m / 2u32;
    a.iter()
        .map(|c| if c > &half { c - m } else { c.clone() })
        .collect()
}

fn primitive(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    let g = a.iter().fold(Integer::zero(), |g, c| g.gcd(c));
    let g = if a.last().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    };
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over Z, or `None`.
fn int_div(a: &[Integer], b: &[Integer]) -> Option<IntPoly> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da < db {
        return None;
    }
    let lb = &b[db];
    if !(&a[da] % lb).is_zero() || (!b[0].is_zero() && !(&a[0] % &b[0]).is_zero()) {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![Integer::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Good primes (p odd, p ∤ lc, f mod p squarefree) with their factor degrees.
fn good_primes(f: &[Integer]) -> Vec<(u64, Vec<usize>)> {
    let lc = f.last().unwrap();
    let mut out = Vec::new();
    let mut p = 2;
    while out.len() < PATTERN_PRIMES && p < PRIME_SCAN_LIMIT {
        p = next_prime_u64(p);
        if int_mod(lc, p) == 0 {
            continue;
        }
        let fp = PolyZp::from_integers(f, p);
        if !fp.is_squarefree() {
            continue;
        }
        out.push((p, fp.monic().factor_degrees()));
    }
    out
}

/// Zassenhaus factorization of a primitive squarefree integer polynomial
/// with nonzero constant term.
pub(crate) fn zassenhaus(f: &[Integer]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    let f = primitive(f.to_vec());
    if n <= 1 {
        return vec![f];
    }
    let primes = good_primes(&f);
    assert!(!primes.is_empty(), "no good prime below {PRIME_SCAN_LIMIT}");
    let mut allowed = vec![true; n + 1];
    for (_, degs) in &primes {
        for (a, r) in allowed.iter_mut().zip(subset_sums(degs, n)) {
            *a &= r;
        }
    }
    if !allowed[1..n].iter().any(|&a| a) {
        return vec![f];
    }
    // Fewest modular factors keeps recombination small; ties go to the
    // smallest prime.
    let (p, _) = primes
        .iter()
        .min_by_key(|(p, d)| (d.len(), *p))
        .cloned()
        .unwrap();
    let modular = PolyZp::from_integers(&f, p).monic().factor_squarefree();
    if modular.len() == 1 {
        return vec![f];
    }
    let lc = f[n].abs();
    let bound = Integer::from(2u32) * &lc * (Integer::one() << n) * norm2_ceil(&f);
    let (lifted, m) = hensel_lift(&f, &modular, p, &bound);
    recombine(f, lifted, &m, &allowed)
}

fn recombine(f: IntPoly, lifted: Vec<IntPoly>, m: &Integer, allowed: &[bool]) -> Vec<IntPoly> {
    let mut g = f;
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    'sizes: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        let lcg = g.last().unwrap().clone();
        let g0 = &g[0] * &lcg;
        loop {
            let combo: Vec<usize> = idx.iter().map(|&i| remaining[i]).collect();
            let deg: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed[deg] && deg < g.len() - 1 {
                let c0 = combo
                    .iter()
                    .fold(lcg.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(m));
                let c0 = symmetric(&[c0], m).pop().unwrap();
                if !c0.is_zero() && (&g0 % &c0).is_zero() {
                    let cand = combo
                        .iter()
                        .fold(vec![lcg.clone()], |acc, &i| mul_mod(&acc, &lifted[i], m));
                    let h = primitive(symmetric(&cand, m));
                    if let Some(q) = int_div(&g, &h) {
                        out.push(h);
                        g = q;
                        remaining.retain(|i| !combo.contains(i));
                        continue 'sizes;
                    }
                }
            }
            // next combination of s indices out of r
            let mut k = s;
            loop {
                if k == 0 {
                    s += 1;
                    continue 'sizes;
                }
                k -= 1;
                if idx[k] < r - s + k {
                    idx[k] += 1;
                    for j in k + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if g.len() > 1 {
        out.push(primitive(g));
    }
    out
}

/// A prime `q` proving irreducibility by Eisenstein's criterion, if one
/// divides the constant term.
pub fn eisenstein_witness(f: &Poly) -> Result<Option<Integer>, PolyError> {
    if f.deg() == 0 {
        return Err(PolyError::DegreeZero);
    }
    if !f.is_integral() {
        return Err(PolyError::NonIntegerCoefficients);
    }
    let c: Vec<Integer> = f.coeffs().iter().map(|q| q.numer().clone()).collect();
    let n = c.len() - 1;
    let a0 = c[0].abs();
    if a0.is_zero() {
        return Ok(None);
    }
    let g = c[..n].iter().fold(Integer::zero(), |g, v| g.gcd(v));
    // candidate primes: prime factors of gcd of the non-leading coefficients
    let mut rest = g;
    let mut q = Integer::from(2u32);
    while rest > Integer::one() {
        if &q * &q > rest {
            q = rest.clone();
        }
        if (&rest % &q).is_zero() {
            while (&rest % &q).is_zero() {
                rest /= &q;
            }
            if !(&c[n] % &q).is_zero() && !(&c[0] % (&q * &q)).is_zero() {
                return Ok(Some(q));
            }
        }
        q += 1u32;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat_int};
    use crate::polyq::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    /// Rational roots by the rational root theorem.
    fn rational_roots_oracle(f: &Poly) -> Vec<Rational> {
        let (_, c) = f.integer_primitive();
        let divisors = |v: &Integer| -> Vec<Integer> {
            let v = v.abs();
            let mut out = Vec::new();
            let mut d = Integer::one();
            while d <= v {
                if (&v % &d).is_zero() {
                    out.push(d.clone());
                }
                d += 1u32;
            }
            out
        };
        if c[0].is_zero() {
            return vec![Rational::zero()];
        }
        let mut out = Vec::new();
        for a in divisors(&c[0]) {
            for b in divisors(c.last().unwrap()) {
                for s in [1, -1] {
                    let r = Rational::new(&a * s, b.clone());
                    if f.eval(&r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn examples() {
        let fx = factor_q(&p("x^2-1"));
        assert_eq!(fx.factors, vec![(p("x-1"), 1), (p("x+1"), 1)]);
        assert!(factor_q(&p("x^5-4*x+2")).is_irreducible());
        assert!(factor_q(&p("x^4+1")).is_irreducible());
        let c = factor_q(&p("7"));
        assert_eq!((c.unit, c.factors.len()), (rat_int(7), 0));
    }

    #[test]
    fn repeated_factors_and_units() {
        let f = p("-3*x^5 + 6*x^4 - 3*x^3");
        let fx = factor_q(&f);
        assert_eq!(fx.unit, rat_int(-3));
        assert_eq!(fx.factors, vec![(p("x-1"), 2), (p("x"), 3)]);
        assert_eq!(fx.expand(), f);
    }

    #[test]
    fn swinnerton_dyer_like_inputs() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert!(factor_q(&p("x^4-10*x^2+1")).is_irreducible());
        // x^8 - 40x^6 + 352x^4 - 960x^2 + 576 = minimal polynomial of
        // sqrt(2)+sqrt(3)+sqrt(5)
        assert!(factor_q(&p("x^8-40*x^6+352*x^4-960*x^2+576")).is_irreducible());
        let f = &p("x^4-10*x^2+1") * &p("x^4-10*x^2+1").shift(&rat_int(1));
        assert_eq!(factor_q(&f).factors.len(), 2);
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_witness(&p("x^5-4*x+2")).unwrap(), Some(int(2)));
        for n in 1..10 {
            let f = &Poly::monomial(rat_int(1), n) - &Poly::constant(rat_int(2));
            assert_eq!(eisenstein_witness(&f).unwrap(), Some(int(2)));
        }
        assert_eq!(eisenstein_witness(&p("x^2-1")).unwrap(), None);
        assert_eq!(eisenstein_witness(&p("x^3+9*x+3")).unwrap(), Some(int(3)));
        assert_eq!(eisenstein_witness(&p("x^2+4")).unwrap(), None);
        assert_eq!(
            eisenstein_witness(&p("1/2*x^2+1")),
            Err(PolyError::NonIntegerCoefficients)
        );
        // x^4 + 1 becomes Eisenstein at 2 after x -> x + 1
        assert_eq!(
            eisenstein_witness(&p("x^4+1").shift(&rat_int(1))).unwrap(),
            Some(int(2))
        );
    }

    fn arb_irreducible() -> impl Strategy<Value = Poly> {
        // small integer polys of degree 1..=4 that happen to be irreducible
        proptest::collection::vec(-5i64..=5, 2..=5)
            .prop_map(|mut v| {
                *v.last_mut().unwrap() = 1;
                Poly::from_ints(&v)
            })
            .prop_filter("irreducible", |f| {
                f.deg() >= 1 && rational_roots_oracle(f).is_empty() || f.deg() == 1
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_and_factor_properties(parts in proptest::collection::vec(arb_irreducible(), 1..4),
                                            unit in 1i64..5) {
            let f = parts.iter().fold(Poly::constant(rat_int(unit)), |a, b| &a * b);
            let fx = factor_q(&f);
            prop_assert_eq!(fx.expand(), f.clone());
            for (g, _) in &fx.factors {
                prop_assert!(g.is_monic());
                if g.deg() >= 2 {
                    prop_assert!(rational_roots_oracle(g).is_empty());
                }
                // consistent under a shift
                prop_assert!(factor_q(&g.shift(&rat_int(1))).is_irreducible());
            }
        }
    }
}
