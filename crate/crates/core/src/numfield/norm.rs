//! Norms `N_{K/Q}(g(x - sθ))` by evaluation, interpolation and CRT, and
//! Trager factorization on top of them.

use num_traits::{One, Signed, Zero};

use super::{NfError, NfPoly, NumberField};
use crate::arith::{denominator_lcm, Integer, Rational};
use crate::polyq::factor::squarefree_mod_some_prime;
use crate::polyq::zp::{interpolate_mod, large_primes, resultant_mod, Crt, PolyZp};
use crate::polyq::{factor_q, root_bound, Poly};

/// Shifts tried before giving up on a squarefree norm.
pub const TRAGER_SHIFT_LIMIT: u32 = 50;

/// `ω = a θ` has the monic integer minimal polynomial `m_ω`.
pub(crate) struct IntegralModel {
    pub a: Integer,
    pub m_omega: Vec<Integer>,
    /// At least 1 and at least every `|ω_i|`.
    pub root_bound: Integer,
}

impl IntegralModel {
    pub fn new(k: &NumberField) -> Self {
        let m = k.min_poly();
        let d = m.deg();
        let a = denominator_lcm(m.coeffs());
        let m_omega: Vec<Integer> = m
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let v = c * Rational::from_integer(num_traits::pow(a.clone(), d - j));
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let root_bound = root_bound(&m_omega).max(Integer::one());
        IntegralModel {
            a,
            m_omega,
            root_bound,
        }
    }

    pub fn degree(&self) -> usize {
        self.m_omega.len() - 1
    }

    /// Integer coordinates of `scale * c(θ)` in the ω power basis, where
    /// `scale = a^(d-1)`; the caller clears the remaining denominators.
    pub fn omega_coords(&self, c: &Poly) -> Vec<Rational> {
        let d = self.degree();
        (0..d)
            .map(|j| {
                c.coeff(j) * Rational::from_integer(num_traits::pow(self.a.clone(), d - 1 - j))
            })
            .collect()
    }
}

/// `N(x) = N_{K/Q}(g(x - sθ))`, monic of degree `deg(g) * [K:Q]`.
/// `g` must be monic.
pub(crate) fn shifted_norm(g: &NfPoly, s: u32) -> Poly {
    let k = g.field();
    let model = IntegralModel::new(k);
    let d = model.degree();
    let n = g.deg();
    debug_assert!(g.lc() == k.one());

    // G_k(ω) = b a^(d-1) g_k with integer coordinates
    let scaled: Vec<Vec<Rational>> = g
        .coeffs()
        .iter()
        .map(|c| model.omega_coords(c.as_poly()))
        .collect();
    let b = denominator_lcm(scaled.iter().flatten());
    let a_pows: Vec<Integer> = (0..=n)
        .map(|e| num_traits::pow(model.a.clone(), e))
        .collect();
    // P(X, ω) = Σ_k a^(n-k) G_k(ω) (X - sω)^k
    let coeffs: Vec<Vec<Integer>> = scaled
        .iter()
        .enumerate()
        .map(|(kk, row)| {
            row.iter()
                .map(|c| (c * Rational::from_integer(&b * &a_pows[n - kk])).to_integer())
                .collect()
        })
        .collect();

    // |coefficients of Res| <= B1^d, with B1 bounding the 1-norm of P(X, ω_i)
    let r = &model.root_bound;
    let sr1 = Integer::one() + r * s;
    let mut b1 = Integer::zero();
    let mut sr_pow = Integer::one();
    for row in &coeffs {
        let mut rp = Integer::one();
        let mut val = Integer::zero();
        for c in row {
            val += c.abs() * &rp;
            rp *= r;
        }
        b1 += val * &sr_pow;
        sr_pow *= &sr1;
    }
    let bound = num_traits::pow(b1, d) * 2u32;

    let npts = n * d + 1;
    let mut crt = Crt::new(npts);
    for p in large_primes() {
        if crt.modulus() > &bound {
            break;
        }
        let m = PolyZp::from_integers(&model.m_omega, p);
        let rows: Vec<PolyZp> = coeffs.iter().map(|c| PolyZp::from_integers(c, p)).collect();
        let s_p = s as u64 % p;
        let values: Vec<u64> = (0..npts as u64)
            .map(|x0| {
                // X0 - s y
                let lin = PolyZp::new(vec![x0 % p, (p - s_p) % p], p);
                let mut acc = PolyZp::zero(p);
                for row in rows.iter().rev() {
                    acc = acc.mul(&lin).add(row).rem(&m);
                }
                resultant_mod(&m, &acc)
            })
            .collect();
        crt.add(
            interpolate_mod(&values, p).coeffs_padded(npts).as_slice(),
            p,
        );
    }
    let big_m = crt.symmetric();
    // N(x) is proportional to M(a x)
    let mut apow = Integer::one();
    let scaled: Vec<Integer> = big_m
        .iter()
        .map(|c| {
            let v = c * &apow;
            apow *= &model.a;
            v
        })
        .collect();
    Poly::from_integers(&scaled).monic()
}

/// The first shift `s` with `N_{K/Q}(g(x - sθ))` squarefree, and that norm.
pub(crate) fn squarefree_norm(g: &NfPoly) -> Result<(u32, Poly), NfError> {
    let g = g.monic();
    for s in 1..=TRAGER_SHIFT_LIMIT {
        let norm = shifted_norm(&g, s);
        let (_, prim) = norm.integer_primitive();
        let squarefree = squarefree_mod_some_prime(&prim)
            || norm
                .gcd(&norm.derivative())
                .map(|h| h.deg() == 0)
                .unwrap_or(false);
        if squarefree {
            return Ok((s, norm));
        }
    }
    Err(NfError::PrimitiveElementSearchExhausted(TRAGER_SHIFT_LIMIT))
}

/// Norm factors of a squarefree `g` over `K`: the shift used and the monic
/// irreducible factors over Q of `N_{K/Q}(g(x - sθ))`. A factor of degree
/// `e * [K:Q]` corresponds to a factor of degree `e` over `K`.
pub(crate) fn trager_norm_factors(g: &NfPoly) -> Result<(u32, Vec<Poly>), NfError> {
    let k = g.field();
    if k.degree() == 1 {
        let f = g.to_rational().expect("coefficients in Q");
        return Ok((
            0,
            factor_q(&f).factors.into_iter().map(|(h, _)| h).collect(),
        ));
    }
    let (s, norm) = squarefree_norm(g)?;
    Ok((
        s,
        factor_q(&norm)
            .factors
            .into_iter()
            .map(|(h, _)| h)
            .collect(),
    ))
}

/// Irreducible factors of a rational polynomial over `K`, monic, with
/// multiplicities. Returns an empty list for constants.
pub fn factor_over_nf(f: &Poly, k: &NumberField) -> Result<Vec<(NfPoly, u32)>, NfError> {
    let mut out = Vec::new();
    for (g, mult) in factor_q(f).factors {
        for h in factor_irreducible_over_nf(&g, k)? {
            out.push((h, mult));
        }
    }
    Ok(out)
}

/// Factors a Q-irreducible `g` over `K`, mapping norm factors back by gcd.
fn factor_irreducible_over_nf(g: &Poly, k: &NumberField) -> Result<Vec<NfPoly>, NfError> {
    let gk = NfPoly::from_rational(k, g);
    let (s, norm_factors) = trager_norm_factors(&gk)?;
    if norm_factors.len() == 1 {
        return Ok(vec![gk.monic()]);
    }
    let st = &k.generator() * &k.rational(Rational::from_integer(s.into()));
    // g(x - sθ) has the factor gcd(g(x - sθ), h_i(x)); shift back afterwards
    let shifted = gk.shift(&-&st);
    let mut out = Vec::with_capacity(norm_factors.len());
    for h in &norm_factors {
        let hk = NfPoly::from_rational(k, h);
        let part = shifted.gcd(&hk)?;
        out.push(part.shift(&st));
    }
    Ok(out)
}

impl PolyZp {
    /// Coefficients padded with zeros to length `n`.
    pub(crate) fn coeffs_padded(&self, n: usize) -> Vec<u64> {
        let mut c = self.coeffs().to_vec();
        c.resize(n, 0);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::numfield::tests::field;
    use crate::polyq::{parse_poly, resultant};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    /// Norm by the exact bivariate resultant: Res_y(m(y), g(x - s y)) with
    /// g rational, computed at enough integer points and interpolated over Q.
    fn norm_oracle(g: &Poly, m: &Poly, s: i64) -> Poly {
        let n = g.deg() * m.deg();
        let pts: Vec<(Rational, Rational)> = (0..=n as i64)
            .map(|x0| {
                let inner = Poly::from_ints(&[x0, -s]);
                (rat_int(x0), resultant(m, &g.compose(&inner)).unwrap())
            })
            .collect();
        // Lagrange interpolation
        let mut out = Poly::zero();
        for (i, (xi, yi)) in pts.iter().enumerate() {
            let mut term = Poly::constant(yi.clone());
            for (j, (xj, _)) in pts.iter().enumerate() {
                if i != j {
                    term = &term * &Poly::new(vec![-xj.clone(), Rational::one()]);
                    term = term.scale(&(xi - xj).recip());
                }
            }
            out = &out + &term;
        }
        out.monic()
    }

    #[test]
    fn norm_matches_resultant_oracle() {
        for (g, m) in [
            ("x^2-3", "x^2-2"),
            ("x^3-2", "x^3-2"),
            ("x^2+x+1", "1/2*x^3 - 1/3*x + 1"),
            ("x^4+1", "x^2+1"),
        ] {
            let k = field(m);
            let gk = NfPoly::from_rational(&k, &p(g));
            for s in 1..3 {
                assert_eq!(
                    shifted_norm(&gk, s as u32),
                    norm_oracle(&p(g), k.min_poly(), s),
                    "{g} over {m}"
                );
            }
        }
    }

    #[test]
    fn factor_over_nf_examples() {
        let k = field("x^2-2");
        let fx = factor_over_nf(&p("x^2-2"), &k).unwrap();
        assert_eq!(fx.len(), 2);
        assert!(fx.iter().all(|(h, _)| h.deg() == 1));
        assert_eq!(factor_over_nf(&p("x^2-3"), &k).unwrap().len(), 1);
        let c = field("x^3-2");
        let fx = factor_over_nf(&p("x^3-2"), &c).unwrap();
        let mut degs: Vec<usize> = fx.iter().map(|(h, _)| h.deg()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn quartic_over_its_discriminant_field() {
        // x^4 + 1 splits into two quadratics over Q(sqrt 2)
        let k = field("x^2-2");
        let fx = factor_over_nf(&p("x^4+1"), &k).unwrap();
        assert_eq!(
            fx.iter().map(|(h, _)| h.deg()).collect::<Vec<_>>(),
            vec![2, 2]
        );
    }

    fn arb_small_field() -> impl Strategy<Value = NumberField> {
        prop_oneof![
            Just("x^2-2"),
            Just("x^2+3"),
            Just("x^3-2"),
            Just("x^3-3*x-1"),
            Just("x^2+x+1"),
        ]
        .prop_map(field)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn factors_multiply_back(k in arb_small_field(),
                                 cs in proptest::collection::vec(-3i64..=3, 2..=4)) {
            let mut cs = cs;
            *cs.last_mut().unwrap() = 1;
            let f = Poly::from_ints(&cs);
            let fx = factor_over_nf(&f, &k).unwrap();
            let prod = fx.iter().fold(NfPoly::from_rational(&k, &Poly::one()), |acc, (h, m)| {
                (0..*m).fold(acc, |a, _| a.mul(h))
            });
            prop_assert_eq!(prod, NfPoly::from_rational(&k, &f));
        }
    }
}
