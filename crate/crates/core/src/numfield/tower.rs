//! Splitting fields by iterated adjunction, membership and automorphisms.

use std::fmt;

use super::norm::{squarefree_norm, trager_norm_factors};
use super::{roots_in_field, NfElement, NfError, NfPoly, NumberField};
use crate::arith::rat_int;
use crate::polyq::{discriminant, factor_q, squarefree_part, Poly};

/// Default bound on splitting field degrees.
pub const DEFAULT_DEGREE_CAP: u64 = 5000;

/// Degrees of the successive adjunctions and their product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSummary {
    pub steps: Vec<u64>,
    pub total_degree: u64,
}

impl fmt::Display for TowerSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A field `L = K(α)` presented by `γ = α + shift·θ`, with `θ` and `α`
/// expressed in `L`.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub field: NumberField,
    pub old_generator: NfElement,
    pub new_root: NfElement,
    pub shift: u32,
}

/// Adjoins a root of `g`, irreducible over `K` of degree at least 2.
pub fn adjoin_root(k: &NumberField, g: &NfPoly) -> Result<Adjunction, NfError> {
    if g.field() != k {
        return Err(NfError::FieldMismatch);
    }
    if g.deg() < 2 {
        return Err(NfError::LinearAdjunction);
    }
    let g = g.monic();
    if k.degree() == 1 {
        let f = g.to_rational().expect("coefficients in Q");
        let field = NumberField::new(&f)?;
        let old = field.rational(k.generator().as_poly().coeff(0));
        return Ok(Adjunction {
            new_root: field.generator(),
            old_generator: old,
            field,
            shift: 0,
        });
    }
    let (s, norm) = squarefree_norm(&g)?;
    if !factor_q(&norm).is_irreducible() {
        return Err(NfError::NotIrreducible(norm));
    }
    let field = NumberField::from_irreducible(norm);
    let gamma = field.generator();
    // θ maps to a root r of m_K in L with g^r(γ - s r) = 0
    for r in roots_in_field(k.min_poly(), &field) {
        let alpha = &gamma - &(&r * &field.rational(rat_int(s)));
        let value = g.coeffs().iter().rev().fold(field.zero(), |acc, c| {
            &(&acc * &alpha) + &r.eval_poly(c.as_poly())
        });
        if value.is_zero() {
            return Ok(Adjunction {
                field,
                old_generator: r,
                new_root: alpha,
                shift: s,
            });
        }
    }
    unreachable!("the generator of K embeds into K(α)");
}

/// Splitting field degree of `f`, with the degree of every adjunction.
pub fn splitting_degree(f: &Poly, cap: u64) -> Result<TowerSummary, NfError> {
    build_tower(f, cap, false).map(|(_, s)| s)
}

/// Splitting field of `f` and its tower summary.
pub fn splitting_field(f: &Poly, cap: u64) -> Result<(NumberField, TowerSummary), NfError> {
    build_tower(f, cap, true)
}

fn build_tower(
    f: &Poly,
    cap: u64,
    want_field: bool,
) -> Result<(NumberField, TowerSummary), NfError> {
    let f = squarefree_part(f);
    let n = f.degree().unwrap_or(0);
    let mut k = NumberField::rationals();
    let mut summary = TowerSummary {
        steps: Vec::new(),
        total_degree: 1,
    };
    let grow = |summary: &mut TowerSummary, e: u64| {
        let needed = summary.total_degree * e;
        if needed > cap {
            return Err(NfError::DegreeCapExceeded { cap, needed });
        }
        summary.steps.push(e);
        summary.total_degree = needed;
        Ok(())
    };
    if n <= 1 {
        return Ok((k, summary));
    }
    let factors: Vec<Poly> = factor_q(&f)
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .filter(|g| g.deg() >= 2)
        .collect();
    for (idx, g) in factors.iter().enumerate() {
        let last = idx + 1 == factors.len();
        loop {
            let roots = if k.degree() == 1 {
                Vec::new()
            } else {
                roots_in_field(g, &k)
            };
            let missing = g.deg() - roots.len();
            if missing == 0 {
                break;
            }
            if missing == 2 {
                // the two missing roots generate K(sqrt(disc g)), and that
                // square root is not in K since the roots are not
                grow(&mut summary, 2)?;
                if want_field || !last {
                    let t = Poly::new(vec![-discriminant(g)?, rat_int(0), rat_int(1)]);
                    let norm = squarefree_norm(&NfPoly::from_rational(&k, &t))?.1;
                    k = NumberField::from_irreducible(norm);
                }
                break;
            }
            // factor what is left after removing the known roots
            let mut rest = NfPoly::from_rational(&k, g);
            for r in &roots {
                let lin = NfPoly::new(&k, vec![-r, k.one()])?;
                rest = rest.divrem(&lin)?.0;
            }
            let d = k.degree();
            let (_, norms) = trager_norm_factors(&rest)?;
            // a norm factor of degree d*e belongs to a factor of degree e over K
            let smallest = norms
                .into_iter()
                .min_by_key(Poly::deg)
                .expect("a nonlinear factor remains");
            grow(&mut summary, (smallest.deg() / d) as u64)?;
            k = NumberField::from_irreducible(smallest);
        }
    }
    Ok((k, summary))
}

/// Outcome of a membership test, with a root of the target when it lies in
/// the field.
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<NfElement>,
}

/// Whether some root of `target` lies in `K`.
pub fn is_member(target: &Poly, k: &NumberField) -> Membership {
    let witness = roots_in_field(target, k).into_iter().next();
    Membership {
        member: witness.is_some(),
        witness,
    }
}

/// Automorphisms of `K` as images of `θ`, identity first.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    pub images: Vec<NfElement>,
    pub is_normal: bool,
    pub is_abelian: bool,
}

impl Automorphisms {
    /// Image of `θ` under `σ_i ∘ σ_j`, that is `h_j(h_i)`.
    pub fn compose(&self, i: usize, j: usize) -> NfElement {
        self.images[i].eval_poly(self.images[j].as_poly())
    }
}

pub fn automorphism_group(k: &NumberField) -> Automorphisms {
    let theta = k.generator();
    let mut images = roots_in_field(k.min_poly(), k);
    if let Some(pos) = images.iter().position(|h| *h == theta) {
        let id = images.remove(pos);
        images.insert(0, id);
    }
    let is_normal = images.len() == k.degree();
    let mut auts = Automorphisms {
        images,
        is_normal,
        is_abelian: false,
    };
    let n = auts.images.len();
    auts.is_abelian =
        is_normal && (1..n).all(|i| (1..i).all(|j| auts.compose(i, j) == auts.compose(j, i)));
    auts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::tests::field;
    use crate::numfield::{element_degree, minimal_polynomial};
    use crate::polyq::{cyclotomic, parse_poly};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn degree(s: &str) -> u64 {
        splitting_degree(&p(s), DEFAULT_DEGREE_CAP)
            .unwrap()
            .total_degree
    }

    #[test]
    fn splitting_degree_examples() {
        assert_eq!(degree("x^2-2"), 2);
        assert_eq!(degree("x^3-2"), 6);
        assert_eq!(
            splitting_degree(&p("x^3-2"), 100).unwrap().steps,
            vec![3, 2]
        );
        assert_eq!(degree("x^5-2*x^3-3*x^2+6"), 12);
        assert_eq!(degree("x^3-3*x-1"), 3);
        assert_eq!(degree("x^4-2"), 8);
        assert_eq!(degree("x^4+1"), 4);
        assert_eq!(degree("x^5-1"), 4);
        assert_eq!(degree("x^4-10*x^2+1"), 4);
        assert_eq!(degree("x^4-x^3-3*x^2+5*x-2"), 1);
    }

    #[test]
    fn quintic_towers() {
        assert_eq!(degree("x^5-4*x+2"), 120);
        assert_eq!(degree("x^5-2"), 20);
    }

    #[test]
    fn cap_is_enforced() {
        let err = splitting_degree(&p("x^3-2"), 4).unwrap_err();
        assert_eq!(err, NfError::DegreeCapExceeded { cap: 4, needed: 6 });
    }

    #[test]
    fn splitting_field_contains_all_roots() {
        for s in ["x^3-2", "x^4-2", "x^4-5*x^2+6", "x^4+x+1"] {
            let f = p(s);
            let (k, summary) = splitting_field(&f, DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(k.degree() as u64, summary.total_degree, "{s}");
            assert_eq!(roots_in_field(&f, &k).len(), f.deg(), "{s}");
        }
    }

    #[test]
    fn adjoin_root_examples() {
        let q = NumberField::rationals();
        let a = adjoin_root(&q, &NfPoly::from_rational(&q, &p("x^2-2"))).unwrap();
        assert_eq!(a.field.degree(), 2);

        let k = field("x^2-2");
        let a = adjoin_root(&k, &NfPoly::from_rational(&k, &p("x^2-3"))).unwrap();
        assert_eq!(a.field.degree(), 4);
        assert_eq!(minimal_polynomial(&a.old_generator), p("x^2-2"));
        assert_eq!(minimal_polynomial(&a.new_root), p("x^2-3"));
        assert_eq!(
            minimal_polynomial(&(&a.old_generator + &a.new_root)),
            p("x^4-10*x^2+1")
        );

        let c = field("x^3-2");
        let fx = crate::numfield::factor_over_nf(&p("x^3-2"), &c).unwrap();
        let quad = fx.into_iter().find(|(h, _)| h.deg() == 2).unwrap().0;
        let a = adjoin_root(&c, &quad).unwrap();
        assert_eq!(a.field.degree(), 6);
        assert!(quad
            .coeffs()
            .iter()
            .rev()
            .fold(a.field.zero(), |acc, co| {
                &(&acc * &a.new_root) + &a.old_generator.eval_poly(co.as_poly())
            })
            .is_zero());
        assert!(matches!(
            adjoin_root(&k, &NfPoly::from_rational(&k, &p("x-1"))),
            Err(NfError::LinearAdjunction)
        ));
    }

    #[test]
    fn membership_examples() {
        let m = is_member(&p("x^2-2"), &field("x^4-2"));
        assert!(m.member);
        let w = m.witness.unwrap();
        assert_eq!(w.eval_poly(&p("x^2-2")), w.field().zero());
        assert_eq!(element_degree(&w), 2);
        assert!(!is_member(&p("x^2-2"), &field("x^3-2")).member);
        assert!(!is_member(&p("x^2-3"), &field("x^2-2")).member);
        assert!(is_member(&p("x^2+1"), &NumberField::new(&cyclotomic(8)).unwrap()).member);
    }

    #[test]
    fn automorphism_examples() {
        let a = automorphism_group(&field("x^2-2"));
        assert_eq!(a.images.len(), 2);
        assert!(a.is_normal && a.is_abelian);
        let a = automorphism_group(&field("x^3-2"));
        assert_eq!(a.images.len(), 1);
        assert!(!a.is_normal && !a.is_abelian);
        let z5 = NumberField::new(&cyclotomic(5)).unwrap();
        let a = automorphism_group(&z5);
        assert_eq!(a.images.len(), 4);
        assert!(a.is_normal && a.is_abelian);
        assert_eq!(a.images[0], z5.generator());
        // S3: the splitting field of x^3 - 2 is normal and not abelian
        let (k, _) = splitting_field(&p("x^3-2"), 100).unwrap();
        let a = automorphism_group(&k);
        assert!(a.is_normal && !a.is_abelian);
        for i in 0..a.images.len() {
            for j in 0..a.images.len() {
                assert!(a.images.contains(&a.compose(i, j)));
            }
        }
    }

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn small_sweep_divides_factorial() {
        for deg in 1..=3usize {
            let count = 7usize.pow(deg as u32);
            for idx in 0..count {
                let mut cs: Vec<i64> = (0..deg)
                    .map(|i| (idx / 7usize.pow(i as u32) % 7) as i64 - 3)
                    .collect();
                cs.push(1);
                let f = Poly::from_ints(&cs);
                let (k, s) = splitting_field(&f, DEFAULT_DEGREE_CAP).unwrap();
                let sf = squarefree_part(&f);
                assert_eq!(factorial(sf.deg()) % s.total_degree, 0, "{f}");
                assert_eq!(s.steps.iter().product::<u64>(), s.total_degree);
                let roots = roots_in_field(&f, &k);
                assert_eq!(roots.len(), sf.deg(), "{f}");
                for r in &roots {
                    assert_eq!(s.total_degree % element_degree(r) as u64, 0, "{f}");
                }
            }
        }
    }
}
