//! Witnesses `α` whose powers all avoid a field generated by a family of
//! polynomials, with replayable certificates.

mod certificate;
mod construct;
mod family;
mod membership;
mod specialize;

use thiserror::Error;

pub use certificate::{
    verify_certificate, verify_with_policy, Check, DegreeData, Obstruction, ReplayFailure,
    ReplayPolicy, WitnessCertificate,
};
pub use construct::{
    radical_power_membership, witness_bounded_degree_family, witness_finite_family,
    witness_fixed_degree_family, witness_for_family, RadicalPower, STURM_RETRIES,
};
pub use family::FamilySpec;
pub use membership::{
    member_qab, member_qsolv, qsolv_square_root_demo, radical_tower_analysis, RadicalTowerReport,
    SquareRootReport, MAX_TOWER_EXPONENT,
};
pub use specialize::{specialize_and_classify, Outcome, SpecializationReport};

use crate::arith::ArithError;
use crate::galois::GaloisError;
use crate::numfield::NfError;
use crate::polyq::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("malformed family: {0}")]
    Family(String),
    #[error("the family has no polynomials")]
    EmptyFamily,
    #[error("the zero polynomial cannot be a family member")]
    ZeroPolynomial,
    #[error("splitting field degree would reach {needed}, above the cap {cap}")]
    DegreeCapExceeded { cap: u64, needed: u64 },
    #[error("x^{prime} - 4*x + 2 does not have {} real roots, nor did the next {tries} primes", prime - 2)]
    SturmMismatch { prime: u64, tries: usize },
    #[error("requested prime {0} must be a prime of at least 5")]
    InvalidPrime(u64),
    #[error("{0} is not in Q_solv")]
    NotInQsolv(Poly),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Galois(GaloisError),
    #[error(transparent)]
    Field(NfError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl From<NfError> for WitnessError {
    fn from(e: NfError) -> Self {
        match e {
            NfError::DegreeCapExceeded { cap, needed } => {
                WitnessError::DegreeCapExceeded { cap, needed }
            }
            other => WitnessError::Field(other),
        }
    }
}

impl From<GaloisError> for WitnessError {
    fn from(e: GaloisError) -> Self {
        match e {
            GaloisError::DegreeCapExceeded { cap, needed } => {
                WitnessError::DegreeCapExceeded { cap, needed }
            }
            other => WitnessError::Galois(other),
        }
    }
}
