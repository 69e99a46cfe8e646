//! Finite unions of intervals on the extended real line.
//!
//! An [`IntervalSet`] is kept in normal form: its intervals are non-empty,
//! pairwise disjoint, sorted left to right, and maximal (no two of them could
//! be joined into a single interval). Each endpoint carries its own openness
//! flag, and the unbounded ends are represented by explicit infinities, which
//! are always open.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::geometry::{mirror, Rational};

/// An endpoint of an interval: a finite rational or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn reflect(&self, about: &Rational) -> Endpoint {
        match self {
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
            Endpoint::Finite(x) => Endpoint::Finite(mirror(x, about)),
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(r: Rational) -> Self {
        Endpoint::Finite(r)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// A single non-empty interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Endpoint,
    lo_open: bool,
    hi: Endpoint,
    hi_open: bool,
}

impl Interval {
    /// Builds an interval, returning `None` when the described set is empty.
    /// Infinite endpoints are forced open.
    pub fn new(lo: Endpoint, lo_open: bool, hi: Endpoint, hi_open: bool) -> Option<Interval> {
        let lo_open = lo_open || !lo.is_finite();
        let hi_open = hi_open || !hi.is_finite();
        if lo == Endpoint::PosInf || hi == Endpoint::NegInf {
            return None;
        }
        match lo.cmp(&hi) {
            Ordering::Less => {}
            Ordering::Equal if !lo_open && !hi_open => {}
            _ => return None,
        }
        Some(Interval {
            lo,
            lo_open,
            hi,
            hi_open,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo.into(), false, hi.into(), false)
    }

    pub fn open(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo.into(), true, hi.into(), true)
    }

    /// `(lo, hi]`
    pub fn left_open(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo.into(), true, hi.into(), false)
    }

    /// `[lo, hi)`
    pub fn right_open(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo.into(), false, hi.into(), true)
    }

    pub fn point(x: Rational) -> Interval {
        Interval {
            lo: Endpoint::Finite(x.clone()),
            lo_open: false,
            hi: Endpoint::Finite(x),
            hi_open: false,
        }
    }

    pub fn line() -> Interval {
        Interval {
            lo: Endpoint::NegInf,
            lo_open: true,
            hi: Endpoint::PosInf,
            hi_open: true,
        }
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above_lo = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite(lo) => match x.cmp(lo) {
                Ordering::Greater => true,
                Ordering::Equal => !self.lo_open,
                Ordering::Less => false,
            },
            Endpoint::PosInf => false,
        };
        let below_hi = match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite(hi) => match x.cmp(hi) {
                Ordering::Less => true,
                Ordering::Equal => !self.hi_open,
                Ordering::Greater => false,
            },
            Endpoint::NegInf => false,
        };
        above_lo && below_hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) =
            if cmp_lower(&self.lo, self.lo_open, &other.lo, other.lo_open) == Ordering::Less {
                (other.lo.clone(), other.lo_open)
            } else {
                (self.lo.clone(), self.lo_open)
            };
        let (hi, hi_open) =
            if cmp_upper(&self.hi, self.hi_open, &other.hi, other.hi_open) == Ordering::Greater {
                (other.hi.clone(), other.hi_open)
            } else {
                (self.hi.clone(), self.hi_open)
            };
        Interval::new(lo, lo_open, hi, hi_open)
    }

    /// Mirror image about `about`; endpoint openness travels with the endpoint.
    pub fn reflect(&self, about: &Rational) -> Interval {
        Interval {
            lo: self.hi.reflect(about),
            lo_open: self.hi_open,
            hi: self.lo.reflect(about),
            hi_open: self.lo_open,
        }
    }

    /// A canonical rational member: the midpoint for bounded intervals,
    /// otherwise the point `step` inside the finite end (or zero for the whole line).
    pub fn representative(&self, step: &Rational) -> Rational {
        match (&self.lo, &self.hi) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => {
                (a + b) / Rational::from_integer(2.into())
            }
            (Endpoint::NegInf, Endpoint::Finite(b)) => b - step,
            (Endpoint::Finite(a), Endpoint::PosInf) => a + step,
            _ => Rational::zero(),
        }
    }

    /// True when the two intervals overlap or touch so that their union is an interval.
    fn joins(&self, next: &Interval) -> bool {
        // `self` starts no later than `next`.
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.hi_open && next.lo_open),
            Ordering::Less => false,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_open { '(' } else { '[' };
        let close = if self.hi_open { ')' } else { ']' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// Orders lower bounds: at equal values a closed bound starts earlier.
fn cmp_lower(a: &Endpoint, a_open: bool, b: &Endpoint, b_open: bool) -> Ordering {
    a.cmp(b).then(a_open.cmp(&b_open))
}

/// Orders upper bounds: at equal values an open bound ends earlier.
fn cmp_upper(a: &Endpoint, a_open: bool, b: &Endpoint, b_open: bool) -> Ordering {
    a.cmp(b).then(b_open.cmp(&a_open))
}

/// A finite union of intervals in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn line() -> IntervalSet {
        IntervalSet {
            intervals: vec![Interval::line()],
        }
    }

    /// `[0, 1]`
    pub fn unit() -> IntervalSet {
        IntervalSet::from(Interval::closed(Rational::zero(), Rational::one()).unwrap())
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> IntervalSet {
        let mut list: Vec<Interval> = intervals.into_iter().collect();
        list.sort_by(|a, b| cmp_lower(&a.lo, a.lo_open, &b.lo, b.lo_open));
        let mut merged: Vec<Interval> = Vec::with_capacity(list.len());
        for iv in list {
            match merged.last_mut() {
                Some(last) if last.joins(&iv) => {
                    if cmp_upper(&iv.hi, iv.hi_open, &last.hi, last.hi_open) == Ordering::Greater {
                        last.hi = iv.hi;
                        last.hi_open = iv.hi_open;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of maximal convex subsets.
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let a = &self.intervals[i];
            let b = &other.intervals[j];
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if cmp_upper(&a.hi, a.hi_open, &b.hi, b.hi_open) == Ordering::Less {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        !self.intersection(other).is_empty()
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut lo = Endpoint::NegInf;
        let mut lo_open = true;
        for iv in &self.intervals {
            if let Some(gap) = Interval::new(lo, lo_open, iv.lo.clone(), !iv.lo_open) {
                out.push(gap);
            }
            lo = iv.hi.clone();
            lo_open = !iv.hi_open;
        }
        if let Some(gap) = Interval::new(lo, lo_open, Endpoint::PosInf, true) {
            out.push(gap);
        }
        IntervalSet::from_intervals(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.complement())
    }

    pub fn reflect(&self, about: &Rational) -> IntervalSet {
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .rev()
                .map(|iv| iv.reflect(about))
                .collect(),
        }
    }

    /// Greatest lower bound, `None` for the empty set.
    pub fn infimum(&self) -> Option<&Endpoint> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    /// Least upper bound, `None` for the empty set.
    pub fn supremum(&self) -> Option<&Endpoint> {
        self.intervals.last().map(|iv| &iv.hi)
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet {
            intervals: vec![iv],
        }
    }
}

impl From<Option<Interval>> for IntervalSet {
    fn from(iv: Option<Interval>) -> Self {
        IntervalSet {
            intervals: iv.into_iter().collect(),
        }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::from_intervals(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (n, iv) in self.intervals.iter().enumerate() {
            if n > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
