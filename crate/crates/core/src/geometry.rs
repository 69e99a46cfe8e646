//! Number-line primitives shared by every solver: instances, favourite
//! candidates, Voronoi cells, bisectors and reflections.
//!
//! Candidate indices are zero-based throughout the crate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Endpoint, Interval, IntervalSet};

/// Exact rational number. Every coordinate and threshold in the crate is one.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n / d`.
///
/// # Panics
///
/// When `d` is zero.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / BigInt::from(2)
}

/// Reflection of `x` about `about`, i.e. `2 * about - x`.
pub fn mirror(x: &Rational, about: &Rational) -> Rational {
    about * BigInt::from(2) - x
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Direction in which exact distance ties are resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    #[default]
    AlwaysLeft,
    AlwaysRight,
}

impl TieBreak {
    pub const BOTH: [TieBreak; 2] = [TieBreak::AlwaysLeft, TieBreak::AlwaysRight];
}

/// Index of the site nearest to `x` among strictly increasing `sites`.
///
/// # Panics
///
/// When `sites` is empty.
pub fn nearest_index(sites: &[Rational], x: &Rational, tb: TieBreak) -> usize {
    assert!(!sites.is_empty(), "nearest_index needs at least one site");
    let right = sites.partition_point(|s| s < x);
    if right == sites.len() {
        return right - 1;
    }
    if right == 0 || &sites[right] == x {
        return right;
    }
    let left = right - 1;
    let to_left = x - &sites[left];
    let to_right = &sites[right] - x;
    match to_left.cmp(&to_right) {
        Ordering::Less => left,
        Ordering::Greater => right,
        Ordering::Equal => match tb {
            TieBreak::AlwaysLeft => left,
            TieBreak::AlwaysRight => right,
        },
    }
}

/// Cells of strictly increasing `sites` over the whole line. Each boundary is
/// the midpoint of two adjacent sites and belongs to the side `tb` selects.
pub fn site_cells(sites: &[Rational], tb: TieBreak) -> Vec<IntervalSet> {
    let mut cells = Vec::with_capacity(sites.len());
    let mut lo = Endpoint::NegInf;
    let (lo_open_at_bisector, hi_open_at_bisector) = match tb {
        TieBreak::AlwaysLeft => (true, false),
        TieBreak::AlwaysRight => (false, true),
    };
    let mut lo_open = true;
    for k in 0..sites.len() {
        let (hi, hi_open) = if k + 1 < sites.len() {
            (
                Endpoint::Finite(midpoint(&sites[k], &sites[k + 1])),
                hi_open_at_bisector,
            )
        } else {
            (Endpoint::PosInf, true)
        };
        cells.push(IntervalSet::from(Interval::new(
            lo,
            lo_open,
            hi.clone(),
            hi_open,
        )));
        lo = hi;
        lo_open = lo_open_at_bisector;
    }
    cells
}

/// An instance: candidates on `[0, 1]` with both extremes occupied, plus the
/// representation threshold `theta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    candidates: Vec<Rational>,
    theta: Rational,
}

impl Instance {
    pub fn new(candidates: Vec<Rational>, theta: Rational) -> Result<Instance> {
        if candidates.len() < 2 {
            return Err(Error::TooFewCandidates(candidates.len()));
        }
        for (index, w) in candidates.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::CandidatesNotIncreasing {
                    index: index + 1,
                    value: w[1].clone(),
                });
            }
        }
        if !candidates[0].is_zero() {
            return Err(Error::LeftExtremeNotZero(candidates[0].clone()));
        }
        let last = candidates.last().unwrap();
        if !last.is_one() {
            return Err(Error::RightExtremeNotOne(last.clone()));
        }
        if !theta.is_positive() || theta >= Rational::one() {
            return Err(Error::ThetaOutOfRange(theta));
        }
        Ok(Instance { candidates, theta })
    }

    /// Same candidates under a different threshold.
    pub fn with_theta(&self, theta: Rational) -> Result<Instance> {
        Instance::new(self.candidates.clone(), theta)
    }

    pub fn candidates(&self) -> &[Rational] {
        &self.candidates
    }

    pub fn candidate(&self, i: usize) -> &Rational {
        &self.candidates[i]
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|c_a - c_b| <= theta`
    pub fn close(&self, a: usize, b: usize) -> bool {
        (&self.candidates[a] - &self.candidates[b]).abs() <= self.theta
    }

    /// Least common multiple of all candidate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        common_denominator(&self.candidates)
    }

    /// Index of the favourite candidate of a voter or proxy at `x`.
    pub fn top_of(&self, x: &Rational, tb: TieBreak) -> usize {
        nearest_index(&self.candidates, x, tb)
    }

    /// Midpoints of the `m - 1` adjacent candidate pairs.
    pub fn candidate_bisectors(&self) -> Vec<Rational> {
        self.candidates
            .windows(2)
            .map(|w| midpoint(&w[0], &w[1]))
            .collect()
    }

    /// One cell per candidate. With `extended` the cells cover the whole line,
    /// otherwise they are clipped to `[0, 1]`.
    pub fn voronoi_partition(&self, tb: TieBreak, extended: bool) -> Vec<IntervalSet> {
        let cells = site_cells(&self.candidates, tb);
        if extended {
            cells
        } else {
            let unit = IntervalSet::unit();
            cells.iter().map(|c| c.intersection(&unit)).collect()
        }
    }

    /// Left and right infeasible regions of candidate `i`: the union of the
    /// extended cells of candidates more than `theta` to its left, and to its right.
    pub fn infeasible_regions(&self, i: usize, tb: TieBreak) -> (IntervalSet, IntervalSet) {
        let cells = self.voronoi_partition(tb, true);
        let ci = &self.candidates[i];
        let mut left = IntervalSet::empty();
        let mut right = IntervalSet::empty();
        for (l, c) in self.candidates.iter().enumerate() {
            if c < &(ci - &self.theta) {
                left = left.union(&cells[l]);
            } else if c > &(ci + &self.theta) {
                right = right.union(&cells[l]);
            }
        }
        (left, right)
    }

    /// Bisector between the furthest candidate within `theta` to the right of
    /// `c_h` and the nearest one beyond it; `None` if every candidate to the
    /// right is within `theta`.
    pub fn theta_bisector_right(&self, h: usize) -> Option<Rational> {
        let reach = &self.candidates[h] + &self.theta;
        let beyond = self.candidates.partition_point(|c| c <= &reach);
        (beyond < self.len())
            .then(|| midpoint(&self.candidates[beyond - 1], &self.candidates[beyond]))
    }

    /// Mirror of [`Instance::theta_bisector_right`] on the left of `c_h`.
    pub fn theta_bisector_left(&self, h: usize) -> Option<Rational> {
        let reach = &self.candidates[h] - &self.theta;
        let first_close = self.candidates.partition_point(|c| c < &reach);
        (first_close > 0).then(|| {
            midpoint(
                &self.candidates[first_close - 1],
                &self.candidates[first_close],
            )
        })
    }
}

/// Strictly increasing proxy positions. Proxies may sit anywhere on the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    proxies: Vec<Rational>,
}

impl Arrangement {
    pub fn new(proxies: Vec<Rational>) -> Result<Arrangement> {
        if proxies.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        for (index, w) in proxies.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::ProxiesNotIncreasing {
                    index: index + 1,
                    value: w[1].clone(),
                });
            }
        }
        Ok(Arrangement { proxies })
    }

    /// Sorts and removes duplicates before validating.
    pub fn from_unsorted(mut proxies: Vec<Rational>) -> Result<Arrangement> {
        proxies.sort();
        proxies.dedup();
        Arrangement::new(proxies)
    }

    pub fn proxies(&self) -> &[Rational] {
        &self.proxies
    }

    pub fn len(&self) -> usize {
        self.proxies.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Midpoints of adjacent proxies.
    pub fn bisectors(&self) -> Vec<Rational> {
        self.proxies
            .windows(2)
            .map(|w| midpoint(&w[0], &w[1]))
            .collect()
    }

    /// Index of the proxy a voter at `x` delegates to.
    pub fn nearest(&self, x: &Rational, tb: TieBreak) -> usize {
        nearest_index(&self.proxies, x, tb)
    }

    /// `true` when every proxy sits on a candidate.
    pub fn is_restricted_for(&self, inst: &Instance) -> bool {
        self.proxies
            .iter()
            .all(|p| inst.candidates().binary_search(p).is_ok())
    }
}
