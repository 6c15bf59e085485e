use super::Poly;
use crate::arith::rat_int;

/// The `n`-th cyclotomic polynomial, `n >= 1`.
///
/// Computed as `(x^n - 1) / prod(Phi_d)` over proper divisors `d` of `n`.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: Vec<Option<Poly>> = vec![None; n + 1];
    build(n, &mut memo)
}

fn build(n: usize, memo: &mut Vec<Option<Poly>>) -> Poly {
    if let Some(p) = &memo[n] {
        return p.clone();
    }
    let mut f = &Poly::monomial(rat_int(1), n) - &Poly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi = build(d, memo);
        f = f.exact_div(&phi).expect("Phi_d divides x^n - 1");
    }
    memo[n] = Some(f.clone());
    f
}
