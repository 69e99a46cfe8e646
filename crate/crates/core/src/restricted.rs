//! Proxies restricted to candidate positions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{midpoint, Arrangement, Instance, Rational, TieBreak};
use crate::verify::is_representative;

/// Output of a solver: an arrangement together with its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub count: usize,
    pub arrangement: Arrangement,
}

impl Solution {
    pub fn new(arrangement: Arrangement) -> Solution {
        Solution {
            count: arrangement.len(),
            arrangement,
        }
    }
}

/// Reachability table of the restricted dynamic program.
///
/// `reachable(j, k)` holds when the prefix instance `c_0..=c_j` admits a
/// representative arrangement of exactly `k` proxies on candidates whose
/// rightmost proxy sits on `c_j`. Counts are one-based, indices zero-based.
#[derive(Clone, Debug)]
pub struct DpTable {
    m: usize,
    reachable: Vec<bool>,
    back: Vec<Option<usize>>,
}

impl DpTable {
    fn slot(&self, j: usize, k: usize) -> usize {
        j * (self.m + 1) + k
    }

    pub fn reachable(&self, j: usize, k: usize) -> bool {
        k <= self.m && self.reachable[self.slot(j, k)]
    }

    /// Predecessor proxy position for `(j, k)`, present whenever `k >= 2` and
    /// the entry is reachable.
    pub fn witness(&self, j: usize, k: usize) -> Option<usize> {
        if k > self.m {
            return None;
        }
        self.back[self.slot(j, k)]
    }

    pub fn size(&self) -> usize {
        self.m
    }
}

/// Decides whether two consecutive proxies on `c_i < c_j` serve every voter
/// between them. The proxies' bisector either coincides with an adjacent
/// candidate bisector, in which case the two candidates flanking it are
/// checked, or lies strictly inside one cell, in which case two voters at
/// distance `eps` on either side are checked.
fn consecutive_pair_ok(
    inst: &Instance,
    i: usize,
    j: usize,
    bisectors: &[Rational],
    eps: &Rational,
) -> bool {
    let c = inst.candidates();
    let split = midpoint(&c[i], &c[j]);
    if let Ok(l) = bisectors.binary_search(&split) {
        return inst.close(l, i) && inst.close(l + 1, j);
    }
    // Off every adjacent bisector, so the tie rule is irrelevant here.
    let tb = TieBreak::AlwaysLeft;
    let left_voter = &split - eps;
    let right_voter = &split + eps;
    inst.close(inst.top_of(&left_voter, tb), i) && inst.close(inst.top_of(&right_voter, tb), j)
}

/// Smallest positive gap between the bisectors of any two (not necessarily
/// adjacent) candidates.
fn smallest_bisector_gap(inst: &Instance) -> Rational {
    let c = inst.candidates();
    let mut all: Vec<Rational> = Vec::with_capacity(c.len() * (c.len() - 1) / 2);
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            all.push(midpoint(&c[a], &c[b]));
        }
    }
    all.sort();
    all.dedup();
    all.windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(Rational::one)
}

pub fn build_table(inst: &Instance) -> DpTable {
    let m = inst.len();
    let mut t = DpTable {
        m,
        reachable: vec![false; m * (m + 1)],
        back: vec![None; m * (m + 1)],
    };
    let bisectors = inst.candidate_bisectors();
    let eps = smallest_bisector_gap(inst) / BigInt::from(3);

    for j in 0..m {
        let s = t.slot(j, 1);
        t.reachable[s] = inst.close(0, j);
        for k in 2..=j + 1 {
            let found = (k - 2..j).find(|&i| {
                t.reachable[t.slot(i, k - 1)] && consecutive_pair_ok(inst, i, j, &bisectors, &eps)
            });
            let s = t.slot(j, k);
            t.reachable[s] = found.is_some() || k == j + 1;
            t.back[s] = found;
        }
    }
    t
}

/// Smallest restricted arrangement, reconstructed right to left choosing the
/// smallest admissible index at every step.
///
/// The result does not depend on `tb`: proxies on candidates are never tied,
/// and a proxy bisector on a candidate bisector imposes the same two
/// conditions under either rule.
pub fn solve_restricted_optimal(inst: &Instance, _tb: TieBreak) -> Solution {
    let table = build_table(inst);
    let m = inst.len();
    let (count, last) = (1..=m)
        .find_map(|k| {
            (0..m)
                .find(|&j| table.reachable(j, k) && inst.close(j, m - 1))
                .map(|j| (k, j))
        })
        .expect("a proxy on every candidate is always representative");

    let mut positions = vec![last];
    let (mut j, mut k) = (last, count);
    while k > 1 {
        j = match table.witness(j, k) {
            Some(i) => i,
            // Diagonal entry: one proxy on every candidate up to `j`.
            None => j - 1,
        };
        k -= 1;
        positions.push(j);
    }
    positions.reverse();
    let proxies = positions
        .into_iter()
        .map(|i| inst.candidate(i).clone())
        .collect();
    Solution::new(Arrangement::new(proxies).expect("indices strictly increase"))
}

/// Reference-candidate sweep. Starting from `c_0`, each step jumps to the
/// first candidate beyond `theta` of the current reference and records the
/// adjacent pair straddling that reach. Returns the pairs and the references.
pub(crate) fn reference_sweep(inst: &Instance) -> (Vec<(usize, usize)>, Vec<usize>) {
    let c = inst.candidates();
    let mut pairs = Vec::new();
    let mut references = vec![0];
    let mut reference = 0;
    loop {
        let reach = &c[reference] + inst.theta();
        if &reach >= c.last().unwrap() {
            break;
        }
        let right = c.partition_point(|x| x <= &reach);
        pairs.push((right - 1, right));
        references.push(right);
        reference = right;
    }
    (pairs, references)
}

/// Places a proxy on both sides of every bisector found by the sweep.
pub fn upper_bound_restricted(inst: &Instance) -> Arrangement {
    let (pairs, _) = reference_sweep(inst);
    let proxies = pairs
        .iter()
        .flat_map(|&(l, r)| [inst.candidate(l).clone(), inst.candidate(r).clone()])
        .collect();
    Arrangement::from_unsorted(proxies).expect("the sweep always creates a bisector")
}

/// `2 (1/theta - 1)` when `1/theta` is an integer, `2 floor(1/theta)` otherwise.
pub fn restricted_bound(theta: &Rational) -> usize {
    let inv = theta.recip();
    let n = inv.floor().to_integer();
    let n: usize = n.try_into().expect("1/theta fits in usize");
    if inv.is_integer() {
        2 * (n - 1)
    } else {
        2 * n
    }
}

/// Integer `p` with `1/p <= theta < 1/(p - 1)`.
pub(crate) fn lower_bound_order(theta: &Rational) -> usize {
    theta
        .recip()
        .ceil()
        .to_integer()
        .try_into()
        .expect("1/theta fits in usize")
}

/// Worst case for restricted positioning: `2p - 1` candidates whose
/// consecutive gaps run `theta + e, e, theta + e, 2e, theta + e, e, ...`.
/// Every representative restricted arrangement needs `2p - 2` proxies.
pub fn gen_lower_restricted(theta: &Rational) -> Result<Instance> {
    if !theta.is_positive() || theta >= &Rational::one() {
        return Err(Error::ThetaOutOfRange(theta.clone()));
    }
    let p = lower_bound_order(theta);
    let pb = BigInt::from(p);
    let slack = Rational::one() - theta * (&pb - 1u32);
    let eps = if p % 2 == 1 {
        // 5 (p - 1) / 2
        slack / Rational::new((&pb - 1u32) * 5u32, BigInt::from(2))
    } else {
        // 5 p / 2 - 3
        slack / Rational::new(&pb * 5u32 - 6u32, BigInt::from(2))
    };
    let wide = theta + &eps;
    let mut candidates = vec![Rational::zero()];
    let mut at = Rational::zero();
    for pair in 0..p - 1 {
        at += &wide;
        candidates.push(at.clone());
        at += if pair % 2 == 0 {
            eps.clone()
        } else {
            &eps * BigInt::from(2)
        };
        candidates.push(at.clone());
    }
    debug_assert!(at.is_one());
    Instance::new(candidates, theta.clone())
}

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

/// Tries every subset of candidate positions by increasing size.
pub fn brute_force_restricted(inst: &Instance, tb: TieBreak, cap: usize) -> Result<Solution> {
    let m = inst.len();
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    for size in 1..=m {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let arr = Arrangement::new(chosen.iter().map(|&i| inst.candidate(i).clone()).collect())
                .expect("indices strictly increase");
            if is_representative(inst, &arr, tb) {
                return Ok(Solution::new(arr));
            }
            if !next_combination(&mut chosen, m) {
                break;
            }
        }
    }
    unreachable!("a proxy on every candidate is always representative")
}

/// Advances `chosen` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(chosen: &mut [usize], n: usize) -> bool {
    let k = chosen.len();
    for pos in (0..k).rev() {
        if chosen[pos] < n - k + pos {
            chosen[pos] += 1;
            for later in pos + 1..k {
                chosen[later] = chosen[later - 1] + 1;
            }
            return true;
        }
    }
    false
}
