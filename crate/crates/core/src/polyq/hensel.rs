//! Multifactor Hensel lifting over Z.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::zp::PolyZp;
use crate::arith::Integer;

pub(crate) type IntPoly = Vec<Integer>;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(a: &[Integer], m: &Integer) -> IntPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn mul_mod(a: &[Integer], b: &[Integer], m: &Integer) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

pub(crate) fn add_mod(a: &[Integer], b: &[Integer], m: &Integer) -> IntPoly {
    let n = a.len().max(b.len());
    let z = Integer::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

pub(crate) fn sub_mod(a: &[Integer], b: &[Integer], m: &Integer) -> IntPoly {
    let n = a.len().max(b.len());
    let z = Integer::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic polynomial modulo `m`.
pub(crate) fn divrem_monic(a: &[Integer], b: &[Integer], m: &Integer) -> (IntPoly, IntPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Integer::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

pub(crate) fn inverse_mod_int(a: &Integer, m: &Integer) -> Integer {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn to_int(a: &PolyZp) -> IntPoly {
    a.coeffs().iter().map(|&c| Integer::from(c)).collect()
}

/// One quadratic step: from `f ≡ g h (mod m)` with `s g + t h ≡ 1` and `h`
/// monic to the same relations modulo `m2 = m^2`.
fn hensel_step(
    f: &[Integer],
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m2: &Integer,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = sub_mod(f, &mul_mod(g, h, m2), m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, m2), h, m2);
    let g1 = add_mod(
        &add_mod(g, &mul_mod(t, &e, m2), m2),
        &mul_mod(&q, g, m2),
        m2,
    );
    let h1 = add_mod(h, &r, m2);
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g1, m2), &mul_mod(t, &h1, m2), m2),
        &[Integer::one()],
        m2,
    );
    let (c, d) = divrem_monic(&mul_mod(s, &b, m2), &h1, m2);
    let s1 = sub_mod(s, &d, m2);
    let t1 = sub_mod(
        &sub_mod(t, &mul_mod(t, &b, m2), m2),
        &mul_mod(&c, &g1, m2),
        m2,
    );
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc(f) * prod(factors) (mod p)` to monic factors modulo the
/// returned modulus `M = p^(2^j) > bound`.
pub(crate) fn hensel_lift(
    f: &[Integer],
    factors: &[PolyZp],
    p: u64,
    bound: &Integer,
) -> (Vec<IntPoly>, Integer) {
    let pb = Integer::from(p);
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let mut out = Vec::with_capacity(factors.len());
    lift_rec(f, factors, p, &modulus, &mut out);
    (out, modulus)
}

fn lift_rec(f: &[Integer], factors: &[PolyZp], p: u64, target: &Integer, out: &mut Vec<IntPoly>) {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = inverse_mod_int(&lc, target);
        out.push(reduce(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            target,
        ));
        return;
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let one = PolyZp::one(p);
    let h0 = left.iter().fold(one.clone(), |a, b| a.mul(b));
    let g0 = right
        .iter()
        .fold(PolyZp::new(vec![super::zp::int_mod(&lc, p)], p), |a, b| {
            a.mul(b)
        });
    let s0 = g0.inverse_mod(&h0).expect("coprime modular factors");
    let t0 = one.sub(&s0.mul(&g0)).divrem(&h0).0;
    let (mut g, mut h, mut s, mut t) = (to_int(&g0), to_int(&h0), to_int(&s0), to_int(&t0));
    let mut m = Integer::from(p);
    while &m < target {
        m = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
    }
    // m == target because both are p^(2^j) reached from p.
    lift_rec(&h, left, p, target, out);
    lift_rec(&g, right, p, target, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_known_factorization() {
        // (x - 3)(x + 5)(x^2 + 7) = x^4 + 2x^3 - 8x^2 + 14x - 105
        let f: IntPoly = [-105, 14, -8, 2, 1]
            .iter()
            .map(|&c| Integer::from(c))
            .collect();
        let p = 11;
        let fp = PolyZp::from_integers(&f, p);
        let facs = fp.factor_squarefree();
        let (lifted, m) = hensel_lift(&f, &facs, p, &Integer::from(10_000));
        assert!(m > Integer::from(10_000));
        let prod = lifted
            .iter()
            .fold(vec![Integer::one()], |a, b| mul_mod(&a, b, &m));
        assert_eq!(prod, reduce(&f, &m));
    }

    #[test]
    fn lifts_with_leading_coefficient() {
        // (2x - 1)(3x + 4) = 6x^2 + 5x - 4
        let f: IntPoly = [-4, 5, 6].iter().map(|&c| Integer::from(c)).collect();
        let p = 7;
        let facs = PolyZp::from_integers(&f, p).factor_squarefree();
        let (lifted, m) = hensel_lift(&f, &facs, p, &Integer::from(1000));
        let prod = lifted
            .iter()
            .fold(vec![Integer::from(6)], |a, b| mul_mod(&a, b, &m));
        assert_eq!(prod, reduce(&f, &m));
    }
}
