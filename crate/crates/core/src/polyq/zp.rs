//! Polynomials over Z/p for word-sized primes `p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::arith::{inv_mod, is_prime_u64, pow_mod, Integer};

/// Residue of an integer modulo a word-sized prime.
pub(crate) fn int_mod(a: &Integer, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Largest primes below 2^31, descending; used for multimodular work.
pub(crate) fn large_primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31)
        .rev()
        .filter(|&q| q % 2 == 1 && is_prime_u64(q))
}

/// A polynomial over Z/p, ascending coefficients in `[0, p)`, no trailing zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyZp {
    c: Vec<u64>,
    p: u64,
}

impl PolyZp {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        debug_assert!(p < 1 << 32);
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyZp { c, p }
    }

    pub fn zero(p: u64) -> Self {
        PolyZp { c: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        Self::new(vec![1], p)
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    /// Reduction of a rational polynomial; `None` if some denominator is
    /// divisible by `p`.
    pub fn from_poly(f: &Poly, p: u64) -> Option<Self> {
        let mut c = Vec::with_capacity(f.coeffs().len());
        for a in f.coeffs() {
            let d = int_mod(a.denom(), p);
            if d == 0 {
                return None;
            }
            c.push(int_mod(a.numer(), p) * inv_mod(d, p) % p);
        }
        Some(Self::new(c, p))
    }

    pub fn from_integers(f: &[Integer], p: u64) -> Self {
        Self::new(f.iter().map(|a| int_mod(a, p)).collect(), p)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn scale(&self, a: u64) -> Self {
        Self::new(self.c.iter().map(|&v| v * a % self.p).collect(), self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
            p,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
            p,
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(out, p)
    }

    pub fn divrem(&self, g: &Self) -> (Self, Self) {
        let dg = g.degree().expect("division by zero polynomial mod p");
        let p = self.p;
        if self.c.len() <= dg {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(g.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dg];
        for i in (0..q.len()).rev() {
            let c = r[i + dg] * inv % p;
            if c != 0 {
                for (j, &gj) in g.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - c * gj % p) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dg);
        (Self::new(q, p), Self::new(r, p))
    }

    pub fn rem(&self, g: &Self) -> Self {
        self.divrem(g).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The inverse of `self` modulo `m`, when `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(self.p), Self::one(self.p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0.degree() == Some(0)).then(|| s0.scale(inv_mod(r0.lc(), self.p)))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &v)| v * (k as u64 % p) % p)
                .collect(),
            p,
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &v| (acc * x + v) % self.p)
    }

    /// `self^e mod m` for an arbitrary-size exponent.
    pub fn pow_mod_big(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(bit) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        self.pow_mod_big(&BigInt::from(e), m)
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.deg() > 0 {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree() {
            out.extend(std::iter::repeat_n(d, g.deg() / d));
        }
        out.sort_unstable();
        out
    }

    /// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Self>) {
        let n = self.deg();
        if n == d {
            out.push(self.monic());
            return;
        }
        let p = self.p;
        let exp = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = Self::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
            if a.deg() == 0 {
                continue;
            }
            let g = self.gcd(&a);
            let g = if g.deg() > 0 && g.deg() < n {
                g
            } else {
                let b = a.pow_mod_big(&exp, self).sub(&Self::one(p));
                self.gcd(&b)
            };
            if g.deg() > 0 && g.deg() < n {
                g.equal_degree(d, rng, out);
                self.divrem(&g).0.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, `p` odd.
    ///
    /// Output is sorted by (degree, coefficients) so it does not depend on the
    /// random choices made while splitting.
    pub fn factor_squarefree(&self) -> Vec<Self> {
        assert!(self.p % 2 == 1, "factor_squarefree needs an odd prime");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree() {
            g.equal_degree(d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
        out
    }

    /// Roots in Z/p of a nonzero polynomial, ascending.
    pub fn roots(&self) -> Vec<u64> {
        let p = self.p;
        let f = self.monic();
        let x = Self::x(p);
        let g = f.gcd(&x.pow_mod(p, &f).sub(&x));
        let mut r: Vec<u64> = if g.deg() == 0 {
            Vec::new()
        } else {
            g.factor_squarefree()
                .into_iter()
                .map(|l| (p - l.c[0]) % p)
                .collect()
        };
        r.sort_unstable();
        r
    }
}

/// Resultant over Z/p by the Euclidean algorithm.
pub(crate) fn resultant_mod(a: &PolyZp, b: &PolyZp) -> u64 {
    let p = a.p;
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.is_zero() || b.is_zero() {
        return 0;
    }
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.deg(), b.deg());
        if db == 0 {
            return acc * pow_mod(b.lc(), da as u64, p) % p;
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return 0;
        }
        if da % 2 == 1 && db % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = acc * pow_mod(b.lc(), (da - r.deg()) as u64, p) % p;
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(i, ys[i])` for `i = 0..ys.len()`.
pub(crate) fn interpolate_mod(ys: &[u64], p: u64) -> PolyZp {
    let n = ys.len();
    assert!((n as u64) < p);
    // divided differences on nodes 0, 1, ..., n-1
    let mut dd = ys.to_vec();
    for j in 1..n {
        let inv = inv_mod(j as u64, p);
        for i in (j..n).rev() {
            dd[i] = (dd[i] + p - dd[i - 1]) % p * inv % p;
        }
    }
    let mut acc = PolyZp::zero(p);
    for j in (0..n).rev() {
        // acc = acc * (x - j) + dd[j]
        acc = acc.mul(&PolyZp::new(vec![(p - j as u64 % p) % p, 1], p));
        acc = acc.add(&PolyZp::new(vec![dd[j]], p));
    }
    acc
}

/// Chinese remaindering of residues into the symmetric range.
pub(crate) struct Crt {
    modulus: Integer,
    values: Vec<Integer>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: Integer::from(1),
            values: vec![Integer::zero(); len],
        }
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    /// Values in `[0, M)`.
    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    pub fn add(&mut self, residues: &[u64], p: u64) {
        let m_mod_p = int_mod(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p);
        let pb = BigInt::from(p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = int_mod(v, p);
            let t = (r + p - cur) % p * inv % p;
            *v += &self.modulus * t;
        }
        self.modulus *= pb;
    }

    /// Values in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<Integer> {
        let half = &self.modulus / 2u32;
        self.values
            .iter()
            .map(|v| {
                if *v > half {
                    v - &self.modulus
                } else {
                    v.clone()
                }
            })
            .collect()
    }
}
