//! Proxies placed anywhere on the real line.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::geometry::{midpoint, mirror, site_cells, Arrangement, Instance, Rational, TieBreak};
use crate::interval::{Endpoint, Interval, IntervalSet};
use crate::restricted::{reference_sweep, Solution};

/// Feasibility sets of the optimal dynamic program, one layer per proxy.
///
/// `layer(j)[i]` holds every position of proxy `j` (zero-based) whose
/// favourite candidate is `c_i` and for which some placement of the proxies
/// before it represents every voter left of it.
#[derive(Clone, Debug)]
pub struct FeasibilityState {
    cells: Vec<IntervalSet>,
    layers: Vec<Vec<IntervalSet>>,
}

impl FeasibilityState {
    pub fn new(inst: &Instance, tb: TieBreak) -> FeasibilityState {
        let cells = site_cells(inst.candidates(), tb);
        let first = (0..inst.len())
            .map(|i| {
                if inst.close(0, i) {
                    cells[i].clone()
                } else {
                    IntervalSet::empty()
                }
            })
            .collect();
        FeasibilityState {
            cells,
            layers: vec![first],
        }
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, j: usize) -> &[IntervalSet] {
        &self.layers[j]
    }

    /// The whole feasibility set of proxy `j`.
    pub fn union(&self, j: usize) -> IntervalSet {
        self.layers[j]
            .iter()
            .fold(IntervalSet::empty(), |acc, s| acc.union(s))
    }

    /// Number of maximal convex subsets of the feasibility set of proxy `j`.
    pub fn subset_count(&self, j: usize) -> usize {
        self.union(j).len()
    }

    /// Appends the layer for one more proxy.
    pub fn push_layer(&mut self, inst: &Instance) {
        let next = propagate_layer(inst, &self.cells, self.layers.last().unwrap());
        self.layers.push(next);
    }
}

/// Positions of the leftmost proxy that represent the voter at 0.
pub fn init_feasibility(inst: &Instance, tb: TieBreak) -> IntervalSet {
    FeasibilityState::new(inst, tb).union(0)
}

/// Feasibility sets of the next proxy, split by favourite candidate, from
/// those of the previous one.
pub fn propagate_feasibility(
    inst: &Instance,
    tb: TieBreak,
    prev: &[IntervalSet],
) -> Vec<IntervalSet> {
    propagate_layer(inst, &site_cells(inst.candidates(), tb), prev)
}

fn propagate_layer(
    inst: &Instance,
    cells: &[IntervalSet],
    prev: &[IntervalSet],
) -> Vec<IntervalSet> {
    let m = inst.len();
    let mut next = vec![IntervalSet::empty(); m];
    for h in 0..m {
        if prev[h].is_empty() {
            continue;
        }
        // Same favourite: anything strictly right of some earlier position.
        let alpha = prev[h].infimum().unwrap().clone();
        let after = Interval::new(alpha, true, Endpoint::PosInf, true).map(IntervalSet::from);
        next[h] = next[h].union(&cells[h].intersection(&after.unwrap_or_default()));

        let Some(upper) = inst.theta_bisector_right(h) else {
            continue;
        };
        for i in h + 1..m {
            let lower = inst.theta_bisector_left(i);
            if lower.as_ref().is_some_and(|l| l > &upper) {
                continue;
            }
            let reach: IntervalSet = prev[h]
                .intervals()
                .iter()
                .filter_map(|s| pair_reach(s, lower.as_ref(), &upper))
                .collect();
            next[i] = next[i].union(&cells[i].intersection(&reach));
        }
    }
    next
}

/// Positions `z` for which some `p` in `s` has `lower <= (p + z) / 2 <= upper`.
fn pair_reach(s: &Interval, lower: Option<&Rational>, upper: &Rational) -> Option<Interval> {
    let hi = s.lo().reflect(upper);
    let lo = match lower {
        Some(b) => s.hi().reflect(b),
        None => Endpoint::NegInf,
    };
    Interval::new(lo, s.hi_open(), hi, s.lo_open())
}

/// Positions of the rightmost proxy that represent the voter at 1.
fn final_region(inst: &Instance, cells: &[IntervalSet]) -> Vec<IntervalSet> {
    let last = inst.len() - 1;
    (0..inst.len())
        .map(|i| {
            if inst.close(i, last) {
                cells[i].clone()
            } else {
                IntervalSet::empty()
            }
        })
        .collect()
}

/// Canonical member of a non-empty set: the representative of its leftmost
/// interval, stepping `1 / (4D)` inside an unbounded end.
fn pick(set: &IntervalSet, step: &Rational) -> Rational {
    set.intervals()[0].representative(step)
}

/// Smallest arrangement on the real line, together with every feasibility
/// layer built on the way.
pub fn solve_unrestricted_traced(inst: &Instance, tb: TieBreak) -> (Solution, FeasibilityState) {
    let mut state = FeasibilityState::new(inst, tb);
    let accept = final_region(inst, &state.cells);
    let step = Rational::new(BigInt::one(), inst.denominator_lcm() * 4u32);
    loop {
        let j = state.depth() - 1;
        let last = &state.layers[j];
        if let Some(i) = (0..inst.len()).find(|&i| last[i].intersects(&accept[i])) {
            let z = pick(&last[i].intersection(&accept[i]), &step);
            let proxies = reconstruct(inst, &state, j, i, z, &step);
            let solution = Solution::new(
                Arrangement::new(proxies).expect("reconstruction moves strictly left"),
            );
            return (solution, state);
        }
        assert!(
            state.depth() < inst.len(),
            "a proxy on every candidate is always representative"
        );
        state.push_layer(inst);
    }
}

pub fn solve_unrestricted_optimal(inst: &Instance, tb: TieBreak) -> Solution {
    solve_unrestricted_traced(inst, tb).0
}

/// Walks back from proxy `j` at `z` in cell `i`, picking a mutually feasible
/// predecessor each time.
fn reconstruct(
    inst: &Instance,
    state: &FeasibilityState,
    j: usize,
    i: usize,
    z: Rational,
    step: &Rational,
) -> Vec<Rational> {
    let mut proxies = vec![z];
    let (mut j, mut i) = (j, i);
    while j > 0 {
        let z = proxies.last().unwrap();
        let prev = &state.layers[j - 1];
        let (h, options) = (0..=i)
            .find_map(|h| {
                let options = predecessors(inst, &prev[h], h, i, z);
                (!options.is_empty()).then_some((h, options))
            })
            .expect("every feasible position has a feasible predecessor");
        proxies.push(pick(&options, step));
        j -= 1;
        i = h;
    }
    proxies.reverse();
    proxies
}

/// Members of `prev_h` (positions with favourite `c_h`) mutually feasible with
/// a successor at `z` whose favourite is `c_i`.
fn predecessors(
    inst: &Instance,
    prev_h: &IntervalSet,
    h: usize,
    i: usize,
    z: &Rational,
) -> IntervalSet {
    if prev_h.is_empty() {
        return IntervalSet::empty();
    }
    if h == i {
        let before = Interval::new(Endpoint::NegInf, true, Endpoint::Finite(z.clone()), true);
        return prev_h.intersection(&before.into());
    }
    let Some(upper) = inst.theta_bisector_right(h) else {
        return IntervalSet::empty();
    };
    let lo = match inst.theta_bisector_left(i) {
        Some(b) => Endpoint::Finite(mirror(z, &b)),
        None => Endpoint::NegInf,
    };
    let window = Interval::new(lo, false, Endpoint::Finite(mirror(z, &upper)), false);
    prev_h.intersection(&window.into())
}

/// Expand-and-merge state: a proxy pair straddling every bisector found by the
/// reference sweep, pushed apart until neighbouring pairs collide.
#[derive(Clone, Debug)]
pub struct ExpandMergeState {
    pub bisectors: Vec<Rational>,
    /// Current half-distance between the two proxies of each pair.
    pub reach: Vec<Rational>,
    pub frozen: Vec<bool>,
    /// Amount every unfrozen pair moved in each round.
    pub steps: Vec<Rational>,
}

impl ExpandMergeState {
    pub fn new(inst: &Instance) -> ExpandMergeState {
        let (pairs, _) = reference_sweep(inst);
        let bisectors: Vec<Rational> = pairs
            .iter()
            .map(|&(l, r)| midpoint(inst.candidate(l), inst.candidate(r)))
            .collect();
        let min_gap = inst
            .candidates()
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .unwrap();
        let eps = min_gap / BigInt::from(3);
        let t = bisectors.len();
        ExpandMergeState {
            bisectors,
            reach: vec![eps; t],
            frozen: vec![false; t],
            steps: Vec::new(),
        }
    }

    pub fn left(&self, j: usize) -> Rational {
        &self.bisectors[j] - &self.reach[j]
    }

    pub fn right(&self, j: usize) -> Rational {
        &self.bisectors[j] + &self.reach[j]
    }

    fn moving(&self, j: usize) -> u32 {
        u32::from(!self.frozen[j])
    }

    /// Runs one round: every unfrozen pair expands until the next collision,
    /// then all pairs adjacent to a collision freeze. Returns false once
    /// nothing can move towards a neighbour.
    pub fn step(&mut self) -> bool {
        let t = self.bisectors.len();
        let advance = (0..t.saturating_sub(1))
            .filter_map(|j| {
                let ends = self.moving(j) + self.moving(j + 1);
                (ends > 0).then(|| (self.left(j + 1) - self.right(j)) / BigInt::from(ends))
            })
            .min();
        let Some(advance) = advance else {
            return false;
        };
        for j in 0..t {
            if !self.frozen[j] {
                self.reach[j] += &advance;
            }
        }
        let collided: Vec<usize> = (0..t - 1)
            .filter(|&j| self.right(j) == self.left(j + 1))
            .collect();
        for j in collided {
            self.frozen[j] = true;
            self.frozen[j + 1] = true;
        }
        self.steps.push(advance);
        true
    }

    pub fn run(&mut self) {
        while self.step() {}
    }

    /// Distinct proxy positions, collided proxies merged.
    pub fn arrangement(&self) -> Arrangement {
        let mut proxies: Vec<Rational> = (0..self.bisectors.len())
            .flat_map(|j| [self.left(j), self.right(j)])
            .collect();
        proxies.dedup();
        Arrangement::new(proxies).expect("pairs never cross")
    }
}

pub fn upper_bound_unrestricted(inst: &Instance) -> Arrangement {
    let mut state = ExpandMergeState::new(inst);
    state.run();
    state.arrangement()
}

/// `floor(3/2 * ceil(1/theta))`, the size guarantee of expand-and-merge.
pub fn unrestricted_bound(theta: &Rational) -> usize {
    let n: usize = theta
        .recip()
        .ceil()
        .to_integer()
        .try_into()
        .expect("1/theta fits in usize");
    3 * n / 2
}

/// Evenly spaced candidates whose spacing just exceeds `theta`, so that every
/// candidate needs a proxy of its own: `ceil(1/theta)` in total.
pub fn gen_lower_unrestricted(theta: &Rational) -> Result<Instance> {
    if !theta.is_positive() || theta >= &Rational::one() {
        return Err(Error::ThetaOutOfRange(theta.clone()));
    }
    let inv = theta.recip();
    let floor = inv.floor().to_integer();
    let n = if inv.is_integer() {
        floor - 1u32
    } else {
        floor
    };
    let n: i64 = n.try_into().expect("1/theta fits in i64");
    let candidates = (0..=n).map(|l| Rational::new(l.into(), n.into())).collect();
    Instance::new(candidates, theta.clone())
}

/// Largest `theta` that a budget of `k` proxies is guaranteed to achieve,
/// with an arrangement of at most `k` proxies reaching it on `inst`.
pub fn dual_theta_for_k(inst: &Instance, k: usize) -> Result<(Rational, Arrangement)> {
    if k < 3 {
        return Err(Error::BudgetTooSmall(k));
    }
    let theta = Rational::new(BigInt::one(), BigInt::from(2 * k / 3));
    let scaled = inst.with_theta(theta.clone())?;
    Ok((theta, upper_bound_unrestricted(&scaled)))
}

/// Lower bound on the optimal count: half the number of sweep bisectors,
/// rounded up.
pub fn approx_lower_bound(inst: &Instance) -> usize {
    reference_sweep(inst).0.len().div_ceil(2)
}
