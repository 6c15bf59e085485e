//! Roots of a rational polynomial inside a number field, by p-adic lifting.
//!
//! With `ω = aθ` integral and `p` a prime for which both `m_ω` and the
//! target are squarefree, `Z_p[ω]` splits into unramified components, one
//! per irreducible factor of `m_ω mod p`. A root in K reduces to a root in
//! every component, so roots are searched among combinations of component
//! roots. Local roots are Newton-lifted and their local traces of `β ω^j`
//! summed; for a true root these sums are small integers that determine
//! `β` through the trace form. Survivors are verified exactly. A component
//! without roots proves there are none.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::norm::IntegralModel;
use super::{NfElement, NumberField};
use crate::arith::{denominator_lcm, next_prime_u64, Integer, Rational};
use crate::polyq::hensel::{add_mod, divrem_monic, hensel_lift, mul_mod, reduce, sub_mod, IntPoly};
use crate::polyq::zp::PolyZp;
use crate::polyq::{factor_q, root_bound, squarefree_part, Poly};

/// Good primes examined when choosing the working prime.
const PRIME_SCAN: usize = 24;
/// For targets above this degree only the most promising primes are counted.
const CHEAP_TARGET_DEGREE: usize = 12;
const COUNTED_PRIMES: usize = 4;
/// Above this many partial combinations on either side of the
/// meet-in-the-middle search, factor over K instead.
const HALF_LIMIT: u128 = 1 << 21;

type FqPoly = Vec<PolyZp>;

/// Arithmetic in `F_q = F_p[y]/(m)`, `m` irreducible and monic, `p` odd.
struct Fq<'a> {
    m: &'a PolyZp,
    p: u64,
    f: usize,
}

impl Fq<'_> {
    fn zero(&self) -> PolyZp {
        PolyZp::zero(self.p)
    }

    fn mul(&self, a: &PolyZp, b: &PolyZp) -> PolyZp {
        a.mul(b).rem(self.m)
    }

    fn inv(&self, a: &PolyZp) -> PolyZp {
        a.inverse_mod(self.m).expect("nonzero element of a field")
    }

    fn trim(mut a: FqPoly) -> FqPoly {
        while a.last().is_some_and(PolyZp::is_zero) {
            a.pop();
        }
        a
    }

    fn pmul(&self, a: &[PolyZp], b: &[PolyZp]) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Self::trim(out.into_iter().map(|c| c.rem(self.m)).collect())
    }

    fn psub(&self, a: &[PolyZp], b: &[PolyZp]) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        Self::trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    /// `(quotient, remainder)` of `a` by nonzero `b`.
    fn pdivrem(&self, a: &[PolyZp], b: &[PolyZp]) -> (FqPoly, FqPoly) {
        let db = b.len() - 1;
        let inv = self.inv(&b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(&r[i + db], &inv);
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[i + j] = r[i + j].sub(&self.mul(&c, bj));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (Self::trim(q), Self::trim(r))
    }

    fn pmonic(&self, a: &[PolyZp]) -> FqPoly {
        let inv = self.inv(a.last().unwrap());
        a.iter().map(|c| self.mul(c, &inv)).collect()
    }

    fn pgcd(&self, a: &[PolyZp], b: &[PolyZp]) -> FqPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.pdivrem(&a, &b).1;
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.pmonic(&a)
        }
    }

    fn ppow_bits(
        &self,
        base: &[PolyZp],
        bits: impl DoubleEndedIterator<Item = bool>,
        t: &[PolyZp],
    ) -> FqPoly {
        let mut acc = vec![PolyZp::one(self.p)];
        let base = self.pdivrem(base, t).1;
        for bit in bits.rev() {
            acc = self.pdivrem(&self.pmul(&acc, &acc), t).1;
            if bit {
                acc = self.pdivrem(&self.pmul(&acc, &base), t).1;
            }
        }
        acc
    }

    fn ppow_u64(&self, base: &[PolyZp], e: u64, t: &[PolyZp]) -> FqPoly {
        let bits = (0..64 - e.leading_zeros()).map(|i| e >> i & 1 == 1);
        self.ppow_bits(base, bits, t)
    }

    fn ppow_big(&self, base: &[PolyZp], e: &Integer, t: &[PolyZp]) -> FqPoly {
        let bits = (0..e.bits()).map(|i| e.bit(i));
        self.ppow_bits(base, bits.collect::<Vec<_>>().into_iter(), t)
    }

    fn x(&self) -> FqPoly {
        vec![self.zero(), PolyZp::one(self.p)]
    }

    /// Product of the distinct linear factors of a monic squarefree `t`.
    fn linear_part(&self, t: &[PolyZp]) -> FqPoly {
        if t.len() <= 1 {
            return vec![PolyZp::one(self.p)];
        }
        let mut xq = self.x();
        for _ in 0..self.f {
            xq = self.ppow_u64(&xq, self.p, t);
        }
        self.pgcd(t, &self.psub(&xq, &self.x()))
    }

    /// Roots of a monic product of distinct linear factors.
    fn split_linear(&self, g: FqPoly, rng: &mut ChaCha8Rng, out: &mut Vec<PolyZp>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(PolyZp::zero(self.p).sub(&g[0])),
            _ => {
                let q = num_traits::pow(Integer::from(self.p), self.f);
                let e = (q - 1u32) / 2u32;
                loop {
                    let a = PolyZp::new(
                        (0..self.f).map(|_| rng.gen_range(0..self.p)).collect(),
                        self.p,
                    );
                    let lin = vec![a, PolyZp::one(self.p)];
                    let h = self.psub(&self.ppow_big(&lin, &e, &g), &[PolyZp::one(self.p)]);
                    let d = self.pgcd(&g, &h);
                    if d.len() > 1 && d.len() < g.len() {
                        let rest = self.pdivrem(&g, &d).0;
                        self.split_linear(d, rng, out);
                        self.split_linear(self.pmonic(&rest), rng, out);
                        return;
                    }
                }
            }
        }
    }
}

/// Working data for one prime.
struct PrimeChoice {
    p: u64,
    comps: Vec<PolyZp>,
    /// Linear part of the target in each component, once counted.
    linear: Vec<FqPoly>,
}

impl PrimeChoice {
    fn count(&mut self, t: &[Integer]) -> u128 {
        let p = self.p;
        self.linear = self
            .comps
            .iter()
            .map(|m| {
                let fq = Fq { m, p, f: m.deg() };
                let tq: FqPoly = PolyZp::from_integers(t, p)
                    .coeffs()
                    .iter()
                    .map(|&c| PolyZp::new(vec![c], p))
                    .collect();
                fq.linear_part(&tq)
            })
            .collect();
        self.linear
            .iter()
            .fold(1u128, |acc, g| acc.saturating_mul((g.len() - 1) as u128))
    }
}

/// Distinct roots of `t` in `K`, sorted by coordinates.
pub fn roots_in_field(t: &Poly, k: &NumberField) -> Vec<NfElement> {
    if t.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let t = squarefree_part(t);
    let mut roots = if k.degree() == 1 {
        factor_q(&t)
            .factors
            .iter()
            .filter(|(h, _)| h.deg() == 1)
            .map(|(h, _)| k.rational(-h.coeff(0)))
            .collect()
    } else {
        padic_roots(&t, k)
    };
    roots.sort_by_key(|a| a.coords());
    roots
}

fn padic_roots(t: &Poly, k: &NumberField) -> Vec<NfElement> {
    let model = IntegralModel::new(k);
    let n = t.deg();
    // t_b(x) = b^n t(x / b) is monic and integral; its roots are b * roots
    let b = denominator_lcm(t.coeffs());
    let tb: Vec<Integer> = t
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| (c * Rational::from_integer(num_traits::pow(b.clone(), n - j))).to_integer())
        .collect();

    let mut choices = Vec::new();
    let mut p = 2;
    while choices.len() < PRIME_SCAN && p < 1_000_000 {
        p = next_prime_u64(p);
        let m = PolyZp::from_integers(&model.m_omega, p);
        if !m.is_squarefree() || !PolyZp::from_integers(&tb, p).is_squarefree() {
            continue;
        }
        choices.push(PrimeChoice {
            p,
            comps: m.factor_squarefree(),
            linear: Vec::new(),
        });
    }
    choices.sort_by_key(|c| (c.comps.len(), c.p));
    let counted = if n <= CHEAP_TARGET_DEGREE {
        choices.len()
    } else {
        COUNTED_PRIMES.min(choices.len())
    };
    let mut best: Option<(u128, usize)> = None;
    let mut max_roots = n;
    for (i, c) in choices.iter_mut().take(counted).enumerate() {
        let total = c.count(&tb);
        if total == 0 {
            return Vec::new();
        }
        max_roots = max_roots.min(c.linear.iter().map(|g| g.len() - 1).min().unwrap());
        if best.is_none_or(|(bt, _)| total < bt) {
            best = Some((total, i));
        }
    }
    let Some((_, idx)) = best else {
        return factor_roots(t, k);
    };
    let counts: Vec<usize> = choices[idx].linear.iter().map(|g| g.len() - 1).collect();
    if half_size(&counts) > HALF_LIMIT {
        return factor_roots(t, k);
    }
    let choice = &choices[idx];
    Searcher::new(k, &model, &tb, &b, t, choice).run(max_roots)
}

/// Roots read off the linear factors over K; the slow but general route.
fn factor_roots(t: &Poly, k: &NumberField) -> Vec<NfElement> {
    super::factor_over_nf(t, k)
        .expect("factorization over K")
        .into_iter()
        .filter(|(h, _)| h.deg() == 1)
        .map(|(h, _)| -&h.coeffs()[0])
        .collect()
}

/// Power sums `S_0 .. S_{len-1}` of the roots of a monic polynomial, by
/// Newton's identities, reduced modulo `modulus` when given.
fn power_sums(m: &[Integer], len: usize, modulus: Option<&Integer>) -> Vec<Integer> {
    let f = m.len() - 1;
    let red = |v: Integer| match modulus {
        Some(q) => v.mod_floor(q),
        None => v,
    };
    let mut s: Vec<Integer> = Vec::with_capacity(len);
    for k in 0..len {
        let v = if k == 0 {
            Integer::from(f)
        } else {
            let mut acc = Integer::zero();
            if k <= f {
                acc += &m[f - k] * k;
            }
            for l in 1..k.min(f + 1) {
                acc += &m[f - l] * &s[k - l];
            }
            -acc
        };
        s.push(red(v));
    }
    s
}

/// Index splitting `counts` into two parts with balanced products.
fn split_point(counts: &[usize]) -> usize {
    let total: u128 = counts.iter().map(|&c| c as u128).product();
    let mut prod = 1u128;
    for (i, &c) in counts.iter().enumerate() {
        if prod * prod >= total {
            return i;
        }
        prod *= c as u128;
    }
    counts.len()
}

/// Larger half of a meet-in-the-middle split of `counts`.
fn half_size(counts: &[usize]) -> u128 {
    let split = split_point(counts);
    let prod = |c: &[usize]| c.iter().map(|&x| x as u128).product::<u128>();
    prod(&counts[..split]).max(prod(&counts[split..]))
}

/// One unramified component `(Z/P)[y]/(M)` with the trace vectors
/// `Tr(ρ ω^j)` of its lifted roots and their weighted sums.
struct Component {
    traces: Vec<Vec<Integer>>,
    keys: Vec<Integer>,
}

struct Searcher<'a> {
    k: &'a NumberField,
    model: &'a IntegralModel,
    b: &'a Integer,
    t: &'a Poly,
    modulus: Integer,
    trace_bound: Integer,
    /// Bound on `Σ_j λ_j Tr(β ω^j)` for a true root.
    key_bound: Integer,
    comps: Vec<Component>,
}

impl<'a> Searcher<'a> {
    fn new(
        k: &'a NumberField,
        model: &'a IntegralModel,
        tb: &'a [Integer],
        b: &'a Integer,
        t: &'a Poly,
        choice: &PrimeChoice,
    ) -> Self {
        let p = choice.p;
        let d = model.degree();
        // |Tr(β ω^j)| <= d R_t R^j for an integral root β of t_b
        let rt = root_bound(tb).max(Integer::one());
        let trace_bound = rt * d * num_traits::pow(model.root_bound.clone(), d - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0x7007 ^ p);
        // single traces can be constant across local roots (a Frobenius orbit
        // covering every root of t), so the search keys on a random
        // combination of all of them
        let weights: Vec<Integer> = (0..d)
            .map(|_| Integer::from(rng.gen_range(1u32..1 << 16)))
            .collect();
        let key_bound = &trace_bound * weights.iter().sum::<Integer>();
        // spare bits make a chance pass of the key test negligible
        let (lifted, modulus) =
            hensel_lift(&model.m_omega, &choice.comps, p, &(&key_bound << 64u32));
        let dtb: Vec<Integer> = tb.iter().enumerate().skip(1).map(|(j, c)| c * j).collect();
        let comps = choice
            .comps
            .iter()
            .zip(&choice.linear)
            .zip(&lifted)
            .map(|((m, g), big_m)| {
                let fq = Fq { m, p, f: m.deg() };
                let mut roots = Vec::new();
                fq.split_linear(g.clone(), &mut rng, &mut roots);
                let ring = LocalRing {
                    m: big_m,
                    modulus: &modulus,
                };
                let sums = power_sums(big_m, m.deg(), Some(&modulus));
                let traces = roots
                    .iter()
                    .map(|rho| {
                        let mut z = ring.newton(tb, &dtb, rho, m, p);
                        (0..d)
                            .map(|_| {
                                let tr = z
                                    .iter()
                                    .zip(&sums)
                                    .fold(Integer::zero(), |acc, (c, s)| acc + c * s)
                                    .mod_floor(&modulus);
                                z = ring.mul(&z, &[Integer::zero(), Integer::one()]);
                                tr
                            })
                            .collect()
                    })
                    .collect::<Vec<Vec<Integer>>>();
                let keys = traces
                    .iter()
                    .map(|tr| {
                        tr.iter()
                            .zip(&weights)
                            .fold(Integer::zero(), |acc, (t, w)| acc + t * w)
                            .mod_floor(&modulus)
                    })
                    .collect();
                Component { traces, keys }
            })
            .collect();
        Searcher {
            k,
            model,
            b,
            t,
            modulus,
            trace_bound,
            key_bound,
            comps,
        }
    }

    fn symmetric(&self, v: Integer) -> Integer {
        let v = v.mod_floor(&self.modulus);
        if v > &self.modulus >> 1u32 {
            v - &self.modulus
        } else {
            v
        }
    }

    /// Tries every combination of local roots whose traces are small.
    fn run(&self, max_roots: usize) -> Vec<NfElement> {
        let d = self.model.degree();
        let dm_inv = self.dual_scale();
        let split = split_point(&self.counts());
        let left = self.partial_sums(&self.comps[..split]);
        let mut right = self.partial_sums(&self.comps[split..]);
        right.sort_by(|x, y| x.0.cmp(&y.0));
        let width = &self.key_bound * 2u32;
        let mut found: Vec<NfElement> = Vec::new();
        for (sa, pa) in &left {
            // right sums s with sa + s in [-bound, bound] modulo P
            let lo = (-&self.key_bound - sa).mod_floor(&self.modulus);
            let hi = &lo + &width;
            let mut windows = vec![(lo.clone(), hi.clone().min(&self.modulus - 1u32))];
            if hi >= self.modulus {
                windows.push((Integer::zero(), hi - &self.modulus));
            }
            for (wlo, whi) in windows {
                let start = right.partition_point(|x| x.0 < wlo);
                for (_, pb) in right[start..].iter().take_while(|x| x.0 <= whi) {
                    let pick: Vec<usize> = pa.iter().chain(pb).copied().collect();
                    let traces: Option<Vec<Integer>> = (0..d)
                        .map(|j| {
                            let v = self.symmetric(
                                self.comps
                                    .iter()
                                    .zip(&pick)
                                    .fold(Integer::zero(), |acc, (c, &i)| acc + &c.traces[i][j]),
                            );
                            (v.abs() <= self.trace_bound).then_some(v)
                        })
                        .collect();
                    if let Some(root) = traces.and_then(|tr| self.recover(&dm_inv, &tr)) {
                        if !found.contains(&root) {
                            found.push(root);
                            if found.len() >= max_roots {
                                return found;
                            }
                        }
                    }
                }
            }
        }
        found
    }

    fn counts(&self) -> Vec<usize> {
        self.comps.iter().map(|c| c.traces.len()).collect()
    }

    /// Keys summed over every choice of local roots in
    /// `comps`, modulo P, with the choices made.
    fn partial_sums(&self, comps: &[Component]) -> Vec<(Integer, Vec<usize>)> {
        let mut out = vec![(Integer::zero(), Vec::new())];
        for c in comps {
            out = out
                .iter()
                .flat_map(|(s, pick)| {
                    c.keys.iter().enumerate().map(move |(i, key)| {
                        let mut pick = pick.clone();
                        pick.push(i);
                        ((s + key).mod_floor(&self.modulus), pick)
                    })
                })
                .collect();
        }
        out
    }

    /// Recovers `β = b * root` from `T_j = Tr(β ω^j)` with the dual basis:
    /// `β m'(ω) = Σ_j T_j c_j(ω)` where `m(x) / (x - ω) = Σ_j c_j(ω) x^j`,
    /// then verifies the root exactly.
    fn recover(&self, dm_inv: &NfElement, traces: &[Integer]) -> Option<NfElement> {
        let m = &self.model.m_omega;
        let d = self.model.degree();
        // coefficient of ω^k in Σ_j T_j c_j(ω) is Σ_j T_j m_(j+k+1)
        let mut apow = Integer::one();
        let coords: Vec<Rational> = (0..d)
            .map(|k| {
                let v: Integer = (0..d - k).map(|j| &traces[j] * &m[j + k + 1]).sum();
                let v = Rational::new(v * &apow, self.b.clone());
                apow *= &self.model.a;
                v
            })
            .collect();
        let root = &self.k.from_poly(&Poly::new(coords)) * dm_inv;
        root.eval_poly(self.t).is_zero().then_some(root)
    }

    /// `1 / m_ω'(ω)` in K.
    fn dual_scale(&self) -> NfElement {
        let m = &self.model.m_omega;
        let mut apow = Integer::one();
        let coords: Vec<Rational> = (1..m.len())
            .map(|j| {
                let v = Rational::from_integer(&m[j] * j * &apow);
                apow *= &self.model.a;
                v
            })
            .collect();
        self.k
            .from_poly(&Poly::new(coords))
            .inverse()
            .expect("separable")
    }
}

/// `(Z/P)[y]/(M)` for a lifted component `M`.
struct LocalRing<'a> {
    m: &'a [Integer],
    modulus: &'a Integer,
}

impl LocalRing<'_> {
    fn mul(&self, a: &[Integer], b: &[Integer]) -> IntPoly {
        divrem_monic(&mul_mod(a, b, self.modulus), self.m, self.modulus).1
    }

    fn eval(&self, coeffs: &[Integer], x: &[Integer]) -> IntPoly {
        let mut acc: IntPoly = Vec::new();
        for c in coeffs.iter().rev() {
            acc = add_mod(&self.mul(&acc, x), std::slice::from_ref(c), self.modulus);
        }
        acc
    }

    /// Newton lift of a simple root `rho` of `t` modulo `(p, m)` to this ring.
    fn newton(&self, t: &[Integer], dt: &[Integer], rho: &PolyZp, m: &PolyZp, p: u64) -> IntPoly {
        let dt_bar = PolyZp::from_integers(dt, p);
        let dt_at = dt_bar
            .coeffs()
            .iter()
            .rev()
            .fold(PolyZp::zero(p), |acc, &c| {
                acc.mul(rho).add(&PolyZp::new(vec![c], p)).rem(m)
            });
        let u0 = dt_at.inverse_mod(m).expect("simple root");
        let to_int =
            |a: &PolyZp| -> IntPoly { a.coeffs().iter().map(|&c| Integer::from(c)).collect() };
        let mut beta = to_int(rho);
        let mut u = to_int(&u0);
        let mut q = Integer::from(p);
        let two = [Integer::from(2u32)];
        while &q < self.modulus {
            q = &q * &q;
            let m_q = reduce(self.m, &q);
            let step = LocalRing {
                m: &m_q,
                modulus: &q,
            };
            let tv = step.eval(t, &beta);
            beta = sub_mod(&beta, &step.mul(&tv, &u), &q);
            let dv = step.eval(dt, &beta);
            let corr = sub_mod(&two, &step.mul(&dv, &u), &q);
            u = step.mul(&u, &corr);
        }
        beta
    }
}
