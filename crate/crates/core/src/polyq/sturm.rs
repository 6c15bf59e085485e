//! Sturm sequences and exact real-root counting.

use num_traits::{Signed, Zero};

use super::{Poly, PolyError};

/// `f, f', -rem(f, f'), ...`, each term rescaled by a positive rational.
pub fn sturm_sequence(f: &Poly) -> Vec<Poly> {
    let mut seq = vec![f.primitive_positive()];
    let d = f.derivative().primitive_positive();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            return seq;
        }
        seq.push((-r).primitive_positive());
    }
}

fn sign_changes(signs: impl Iterator<Item = bool>) -> usize {
    let mut prev = None;
    let mut count = 0;
    for s in signs {
        if prev.is_some_and(|p| p != s) {
            count += 1;
        }
        prev = Some(s);
    }
    count
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn sturm_real_roots(f: &Poly) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    if f.gcd(&f.derivative())?.deg() > 0 {
        return Err(PolyError::NotSquarefree);
    }
    let seq = sturm_sequence(f);
    let at_pos = sign_changes(seq.iter().map(|g| g.lc().is_positive()));
    let at_neg = sign_changes(
        seq.iter()
            .map(|g| g.lc().is_positive() != (g.deg() % 2 == 1)),
    );
    debug_assert!(seq.iter().all(|g| !g.lc().is_zero()));
    Ok(at_neg - at_pos)
}
