//! Resultants by the subresultant polynomial remainder sequence.

use num_traits::{One, Zero};

use super::{Poly, PolyError};
use crate::arith::{Integer, Rational};

fn deg(a: &[Integer]) -> usize {
    a.len() - 1
}

fn trim(mut a: Vec<Integer>) -> Vec<Integer> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn content(a: &[Integer]) -> Integer {
    use num_integer::Integer as _;
    a.iter().fold(Integer::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let (da, db) = (deg(a), deg(b));
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = da - db + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        r = trim(r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two nonzero integer polynomials (ascending coefficients).
pub(crate) fn resultant_int(a: &[Integer], b: &[Integer]) -> Integer {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return Integer::zero();
    }
    let mut sign = Integer::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return sign * num_traits::pow(b[0].clone(), deg(&a));
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = num_traits::pow(ca.clone(), deg(&b)) * num_traits::pow(cb.clone(), deg(&a));
    a.iter_mut().for_each(|c| *c /= &ca);
    b.iter_mut().for_each(|c| *c /= &cb);
    let mut g = Integer::one();
    let mut h = Integer::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return Integer::zero();
        }
        let div = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.into_iter().map(|c| c / &div).collect();
        g = a[deg(&a)].clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let lb = b[0].clone();
            let h_final = if da == 0 {
                Integer::one()
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return sign * t * h_final;
        }
    }
}

/// `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of `f`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let (cf, pf) = f.integer_primitive();
    let (cg, pg) = g.integer_primitive();
    let scale = num_traits::pow(cf, g.deg()) * num_traits::pow(cg, f.deg());
    Ok(Rational::from_integer(resultant_int(&pf, &pg)) * scale)
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &Poly) -> Result<Rational, PolyError> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(PolyError::DegreeZero)?;
    let r = resultant(f, &f.derivative())? / f.lc();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}
