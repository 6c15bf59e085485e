//! Membership in `Q_ab` and `Q_solv`, and the `x^n - 2` tower.

use std::fmt;

use super::WitnessError;
use crate::galois::{galois_group, is_solvable_by_radicals, GaloisError, GroupTag};
use crate::numfield::TowerSummary;
use crate::numfield::{automorphism_group, is_member, splitting_field, NfError, NumberField};
use crate::polyq::{factor_q, is_irreducible, Poly};

/// Whether a root of the irreducible `m` lies in `Q_ab`, that is whether
/// `Q[x]/(m)` is normal with abelian automorphism group.
pub fn member_qab(m: &Poly) -> Result<bool, NfError> {
    if m.deg() == 0 || !is_irreducible(m) {
        return Err(NfError::NotIrreducible(m.clone()));
    }
    if m.deg() == 1 {
        return Ok(true);
    }
    let auts = automorphism_group(&NumberField::new(&m.monic())?);
    Ok(auts.is_normal && auts.is_abelian)
}

/// Whether a root of the irreducible `m` is expressible by radicals.
pub fn member_qsolv(m: &Poly) -> Result<bool, GaloisError> {
    Ok(is_solvable_by_radicals(m)?.solvable)
}

/// A square root of `b` in `Q_solv`, which makes `y^2 - b` reducible there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareRootReport {
    pub b_min_poly: Poly,
    pub sqrt_min_poly: Poly,
    /// Group of `sqrt_min_poly` when its degree is at most 5. Otherwise
    /// solvability follows from adjoining a square root to a solvable field.
    pub sqrt_group: Option<GroupTag>,
}

impl fmt::Display for SquareRootReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 - b splits over Q_solv for b a root of {}: sqrt(b) has minimal polynomial {}",
            self.b_min_poly, self.sqrt_min_poly
        )?;
        match self.sqrt_group {
            Some(g) => write!(f, ", solvable with group {g}"),
            None => write!(f, ", solvable as a square root over a solvable field"),
        }
    }
}

/// Exhibits `sqrt(b)` for `b` a root of `b_min_poly`, with its minimal
/// polynomial over Q taken from the factors of `b_min_poly(x^2)`.
pub fn qsolv_square_root_demo(b_min_poly: &Poly) -> Result<SquareRootReport, WitnessError> {
    if !member_qsolv(b_min_poly)? {
        return Err(WitnessError::NotInQsolv(b_min_poly.clone()));
    }
    let squared = b_min_poly.compose(&Poly::monomial(crate::arith::rat_int(1), 2));
    let sqrt_min_poly = factor_q(&squared)
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .min_by(|a, b| (a.deg(), a.to_string()).cmp(&(b.deg(), b.to_string())))
        .expect("a nonconstant polynomial has a factor");
    let sqrt_group = if sqrt_min_poly.deg() <= 5 {
        let class = galois_group(&sqrt_min_poly)?;
        debug_assert!(class.solvable);
        Some(class.tag)
    } else {
        None
    };
    Ok(SquareRootReport {
        b_min_poly: b_min_poly.clone(),
        sqrt_min_poly,
        sqrt_group,
    })
}

/// Relative degree claimed for adjoining `sqrt(2)` to the splitting field
/// of `x^n - 2`, `n >= 3`.
pub const CLAIMED_RELATIVE_DEGREE: u64 = 2;

/// Whether `sqrt(2)` lies in the splitting field `K` of
/// `prod_{3 <= n <= n_max} (x^n - 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalTowerReport {
    pub n_max: u32,
    pub tower: TowerSummary,
    pub sqrt2_in_field: bool,
    /// A square root of 2 in `K`, in its power basis.
    pub sqrt2: Option<String>,
    /// `[K(sqrt 2) : K]`.
    pub relative_degree: u64,
    pub contradicts_claim: bool,
}

impl fmt::Display for RadicalTowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n_max = {}: splitting field degree {} (steps {})",
            self.n_max, self.tower.total_degree, self.tower
        )?;
        match &self.sqrt2 {
            Some(r) if r.len() <= 200 => writeln!(f, "sqrt(2) is in the field: {r}")?,
            Some(r) => writeln!(
                f,
                "sqrt(2) is in the field, as a verified element with {} characters \
                 in the power basis",
                r.len()
            )?,
            None => writeln!(f, "sqrt(2) is not in the field")?,
        }
        write!(
            f,
            "measured [K(sqrt 2) : K] = {}; claimed {}",
            self.relative_degree, CLAIMED_RELATIVE_DEGREE
        )?;
        if self.contradicts_claim {
            write!(f, "; DIVERGES from the claim")?;
        }
        Ok(())
    }
}

/// Largest `n_max` the tower analysis accepts. At 5 the splitting tower
/// does not finish within minutes.
pub const MAX_TOWER_EXPONENT: u32 = 4;

pub fn radical_tower_analysis(n_max: u32, cap: u64) -> Result<RadicalTowerReport, WitnessError> {
    if !(3..=MAX_TOWER_EXPONENT).contains(&n_max) {
        return Err(WitnessError::OutOfRange(format!(
            "n_max = {n_max} is outside 3..={MAX_TOWER_EXPONENT}"
        )));
    }
    let two = crate::arith::rat_int(2);
    let product = (3..=n_max as usize).fold(Poly::one(), |acc, n| {
        &acc * &(&Poly::monomial(crate::arith::rat_int(1), n) - &Poly::constant(two.clone()))
    });
    let (k, tower) = splitting_field(&product, cap)?;
    let membership = is_member(&Poly::from_ints(&[-2, 0, 1]), &k);
    let relative_degree = if membership.member { 1 } else { 2 };
    Ok(RadicalTowerReport {
        n_max,
        tower,
        sqrt2_in_field: membership.member,
        sqrt2: membership.witness.map(|w| w.to_string()),
        relative_degree,
        contradicts_claim: relative_degree != CLAIMED_RELATIVE_DEGREE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::{cyclotomic, parse_poly};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn qab_examples() {
        assert!(member_qab(&p("x^4+x^3+x^2+x+1")).unwrap());
        assert!(!member_qab(&p("x^3-2")).unwrap());
        assert!(member_qab(&p("x^2-2")).unwrap());
        assert!(member_qab(&p("x-5")).unwrap());
        // normal but with group S3
        assert!(!member_qab(&p("x^6+108")).unwrap());
        assert!(member_qab(&p("x^2-1")).is_err());
    }

    #[test]
    fn qab_cyclotomic_and_radicals() {
        for n in 1..=30 {
            assert!(member_qab(&cyclotomic(n)).unwrap(), "Φ_{n}");
        }
        for s in ["x^3-2", "x^4-2", "x^5-2"] {
            assert!(!member_qab(&p(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn qsolv_examples() {
        assert!(member_qsolv(&p("x^5-2")).unwrap());
        assert!(!member_qsolv(&p("x^5-4*x+2")).unwrap());
        assert!(member_qsolv(&p("x-7")).unwrap());
    }

    #[test]
    fn square_root_demo() {
        let r = qsolv_square_root_demo(&p("x-2")).unwrap();
        assert_eq!(r.sqrt_min_poly, p("x^2-2"));
        assert_eq!(r.sqrt_group, Some(GroupTag::C2));
        let r = qsolv_square_root_demo(&p("x^2-2")).unwrap();
        assert_eq!(r.sqrt_min_poly, p("x^4-2"));
        assert_eq!(r.sqrt_group, Some(GroupTag::D4));
        // b = 4 has the rational square roots ±2
        let r = qsolv_square_root_demo(&p("x-4")).unwrap();
        assert_eq!(r.sqrt_min_poly.deg(), 1);
        let r = qsolv_square_root_demo(&p("x^3-2")).unwrap();
        assert_eq!(r.sqrt_min_poly, p("x^6-2"));
        assert_eq!(r.sqrt_group, None);
        assert!(matches!(
            qsolv_square_root_demo(&p("x^5-4*x+2")),
            Err(WitnessError::NotInQsolv(_))
        ));
    }

    #[test]
    fn radical_tower_small() {
        let r = radical_tower_analysis(3, 5000).unwrap();
        assert_eq!(r.tower.total_degree, 6);
        assert!(!r.sqrt2_in_field);
        assert_eq!(r.relative_degree, 2);
        assert!(!r.contradicts_claim);
        let r = radical_tower_analysis(4, 5000).unwrap();
        assert!(r.sqrt2_in_field);
        assert_eq!(r.relative_degree, 1);
        assert!(r.contradicts_claim);
        assert!(radical_tower_analysis(2, 5000).is_err());
        assert!(radical_tower_analysis(5, 5000).is_err());
    }
}
