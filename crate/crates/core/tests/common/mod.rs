#![allow(dead_code)]

use num_traits::ToPrimitive;
use proxyrep_core::{rat, Instance, Rational, TieBreak};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::Rng;

/// Candidates `k / den` for a random `den <= max_den`, between 2 and `max_m`
/// of them, with `theta` drawn from `(1/10, 9/10)`.
pub fn random_instance(rng: &mut StdRng, max_m: usize, max_den: i64) -> Instance {
    let den = rng.gen_range(2..=max_den);
    let m = rng.gen_range(2..=max_m).min(den as usize + 1);
    let mut c = vec![rat(0, 1)];
    let mut interior: Vec<usize> = sample(rng, den as usize - 1, m - 2).into_vec();
    interior.sort_unstable();
    c.extend(interior.into_iter().map(|k| rat(k as i64 + 1, den)));
    c.push(rat(1, 1));
    Instance::new(c, random_theta(rng)).unwrap()
}

pub fn random_theta(rng: &mut StdRng) -> Rational {
    let d = rng.gen_range(11..=100);
    let lo = d / 10 + 1;
    let hi = (9 * d - 1) / 10;
    rat(rng.gen_range(lo..=hi), d)
}

pub fn random_voters(rng: &mut StdRng, max_n: usize) -> Vec<Rational> {
    let n = rng.gen_range(1..=max_n);
    let den = rng.gen_range(1..=60);
    (0..n).map(|_| rat(rng.gen_range(0..=den), den)).collect()
}

/// Brute-force unrestricted optimum over proxies on the grid `l / (8D)` in
/// `[-1, 2]`, `D` the common candidate denominator.
///
/// Works in integer units of `1 / (128 D)`: candidates are multiples of 128,
/// candidate bisectors of 64, grid proxies of 16 and proxy bisectors of 8, so
/// an odd unit offset always lands strictly inside a cell. Each proxy serves
/// a contiguous range of voters whose favourites are monotone, so checking
/// the two extreme voters of every range is enough.
pub struct GridOracle {
    unit: i64,
    candidates: Vec<i64>,
    theta_num: i128,
    theta_den: i128,
    tb: TieBreak,
}

impl GridOracle {
    pub fn new(inst: &Instance, tb: TieBreak) -> GridOracle {
        let d = inst.candidates().iter().fold(1i64, |acc, c| {
            num_integer::lcm(acc, c.denom().to_i64().unwrap())
        });
        let unit = 128 * d;
        let candidates = inst
            .candidates()
            .iter()
            .map(|c| (c.numer().to_i64().unwrap()) * (unit / c.denom().to_i64().unwrap()))
            .collect();
        GridOracle {
            unit,
            candidates,
            theta_num: inst.theta().numer().to_i128().unwrap(),
            theta_den: inst.theta().denom().to_i128().unwrap(),
            tb,
        }
    }

    fn top(&self, x: i64) -> usize {
        let mut best = 0;
        for (k, c) in self.candidates.iter().enumerate() {
            let d = (x - c).abs();
            let b = (x - self.candidates[best]).abs();
            if d < b || (d == b && self.tb == TieBreak::AlwaysRight) {
                best = k;
            }
        }
        best
    }

    fn close(&self, a: usize, b: usize) -> bool {
        let gap = (self.candidates[a] - self.candidates[b]).abs() as i128;
        gap * self.theta_den <= self.theta_num * self.unit as i128
    }

    /// Whether a proxy at `p` represents every voter in `[lo, hi]`.
    fn serves(&self, p: i64, lo: i64, hi: i64) -> bool {
        let (lo, hi) = (lo.max(0), hi.min(self.unit));
        if lo > hi {
            return true;
        }
        let t = self.top(p);
        self.close(self.top(lo), t) && self.close(self.top(hi), t)
    }

    pub fn optimum(&self) -> usize {
        let step = 16;
        let grid: Vec<i64> = (-self.unit / step..=2 * self.unit / step)
            .map(|l| l * step)
            .collect();
        let left_keeps_tie = self.tb == TieBreak::AlwaysLeft;
        let mut dist = vec![usize::MAX; grid.len()];
        for (a, &p) in grid.iter().enumerate() {
            if self.serves(p, 0, p) {
                dist[a] = 1;
            }
        }
        let mut best = usize::MAX;
        for a in 0..grid.len() {
            if dist[a] == usize::MAX {
                continue;
            }
            let p = grid[a];
            if self.serves(p, p, self.unit) {
                best = best.min(dist[a]);
            }
            for b in a + 1..grid.len() {
                let q = grid[b];
                let mid = (p + q) / 2;
                let (left_end, right_start) = if left_keeps_tie {
                    (mid, mid + 1)
                } else {
                    (mid - 1, mid)
                };
                if !self.serves(p, p, left_end) {
                    break;
                }
                if self.serves(q, right_start, q) && dist[a] + 1 < dist[b] {
                    dist[b] = dist[a] + 1;
                }
            }
        }
        best
    }
}
