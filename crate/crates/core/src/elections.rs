//! Median-rule elections, held directly or through proxies.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Instance, Rational, TieBreak};

/// Which of two median voters decides an even-sized election.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Side {
    #[default]
    Leftmost,
    Rightmost,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Leftmost, Side::Rightmost];
}

/// Voter positions in `[0, 1]`; duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    voters: Vec<Rational>,
}

impl Profile {
    pub fn new(voters: Vec<Rational>) -> Result<Profile> {
        if voters.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if let Some(v) = voters
            .iter()
            .find(|v| v.is_negative() || *v > &Rational::one())
        {
            return Err(Error::VoterOutOfRange(v.clone()));
        }
        Ok(Profile { voters })
    }

    pub fn voters(&self) -> &[Rational] {
        &self.voters
    }

    pub fn len(&self) -> usize {
        self.voters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }
}

/// Median of `positions`; for an even count, the lower or upper median.
fn median(positions: &[Rational], side: Side) -> Rational {
    let mut sorted = positions.to_vec();
    sorted.sort();
    let n = sorted.len();
    let at = match (n % 2, side) {
        (1, _) => n / 2,
        (_, Side::Leftmost) => n / 2 - 1,
        (_, Side::Rightmost) => n / 2,
    };
    sorted.swap_remove(at)
}

/// Winner of the median rule: the favourite of the median voter, with the
/// lower or upper median breaking ties between two weak Condorcet winners.
pub fn median_condorcet_winner(
    profile: &Profile,
    inst: &Instance,
    tb: TieBreak,
    side: Side,
) -> usize {
    inst.top_of(&median(profile.voters(), side), tb)
}

/// Each voter replaced by its nearest proxy. Positions outside `[0, 1]` are
/// kept as they are.
pub fn proxy_profile(profile: &Profile, arr: &Arrangement, tb: TieBreak) -> Vec<Rational> {
    profile
        .voters()
        .iter()
        .map(|v| arr.proxies()[arr.nearest(v, tb)].clone())
        .collect()
}

/// Winners of the direct and the proxy election.
pub fn outcomes(
    profile: &Profile,
    inst: &Instance,
    arr: &Arrangement,
    tb: TieBreak,
    side: Side,
) -> (usize, usize) {
    let direct = median_condorcet_winner(profile, inst, tb, side);
    let delegated = inst.top_of(&median(&proxy_profile(profile, arr, tb), side), tb);
    (direct, delegated)
}

/// Distance between the direct winner and the proxy-election winner.
pub fn outcome_distance(
    profile: &Profile,
    inst: &Instance,
    arr: &Arrangement,
    tb: TieBreak,
    side: Side,
) -> Rational {
    let (direct, delegated) = outcomes(profile, inst, arr, tb, side);
    (inst.candidate(direct) - inst.candidate(delegated)).abs()
}
