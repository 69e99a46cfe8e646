use thiserror::Error;

use crate::geometry::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least two candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("candidate positions must be strictly increasing (position {index} is {value})")]
    CandidatesNotIncreasing { index: usize, value: Rational },
    #[error("the leftmost candidate must sit at 0, found {0}")]
    LeftExtremeNotZero(Rational),
    #[error("the rightmost candidate must sit at 1, found {0}")]
    RightExtremeNotOne(Rational),
    #[error("theta must lie strictly between 0 and 1, found {0}")]
    ThetaOutOfRange(Rational),
    #[error("an arrangement needs at least one proxy")]
    EmptyArrangement,
    #[error("proxy positions must be strictly increasing (position {index} is {value})")]
    ProxiesNotIncreasing { index: usize, value: Rational },
    #[error("a profile needs at least one voter")]
    EmptyProfile,
    #[error("voter positions must lie in [0, 1], found {0}")]
    VoterOutOfRange(Rational),
    #[error("brute force is capped at {cap} candidates, instance has {m}")]
    CapExceeded { m: usize, cap: usize },
    #[error("a proxy budget of {0} is too small, at least 3 is required")]
    BudgetTooSmall(usize),
    #[error("grid resolution must be at least 2, got {0}")]
    ResolutionTooSmall(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
