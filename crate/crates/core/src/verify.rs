//! Deciding whether an arrangement is theta-representative.
//!
//! [`verify_arrangement`] is exact: for each proxy it intersects the proxy's
//! cell (clipped to `[0, 1]`) with the infeasible regions of the proxy's
//! favourite candidate. [`grid_oracle_verify`] checks voters one at a time on
//! a sample of points and exists to cross-check the exact verifier.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    common_denominator, midpoint, rat, site_cells, Arrangement, Instance, Rational, TieBreak,
};
use crate::interval::IntervalSet;

/// A voter whose favourite candidate is more than `theta` away from the
/// favourite candidate of the proxy it delegates to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub voter: Rational,
    pub voter_top: usize,
    pub proxy: Rational,
    pub proxy_top: usize,
}

impl Violation {
    /// Re-derives the witness from scratch and checks that it really is one.
    pub fn is_genuine(&self, inst: &Instance, arr: &Arrangement, tb: TieBreak) -> bool {
        let voter_top = inst.top_of(&self.voter, tb);
        let nearest = &arr.proxies()[arr.nearest(&self.voter, tb)];
        let proxy_top = inst.top_of(nearest, tb);
        voter_top == self.voter_top
            && nearest == &self.proxy
            && proxy_top == self.proxy_top
            && !inst.close(voter_top, proxy_top)
            && self.voter >= Rational::zero()
            && self.voter <= Rational::one()
    }
}

/// Cells of the proxies clipped to `[0, 1]`. Proxies far outside the segment
/// may own an empty cell.
pub fn proxy_voronoi_cells(arr: &Arrangement, tb: TieBreak) -> Vec<IntervalSet> {
    let unit = IntervalSet::unit();
    site_cells(arr.proxies(), tb)
        .iter()
        .map(|c| c.intersection(&unit))
        .collect()
}

/// Exact decision: `Ok(())` when the arrangement is theta-representative,
/// otherwise the leftmost violation of the first offending proxy.
#[allow(clippy::result_large_err)]
pub fn verify_arrangement(
    inst: &Instance,
    arr: &Arrangement,
    tb: TieBreak,
) -> std::result::Result<(), Violation> {
    let cells = proxy_voronoi_cells(arr, tb);
    for (proxy, cell) in arr.proxies().iter().zip(&cells) {
        if cell.is_empty() {
            continue;
        }
        let proxy_top = inst.top_of(proxy, tb);
        let (left, right) = inst.infeasible_regions(proxy_top, tb);
        let bad = cell.intersection(&left.union(&right));
        if let Some(first) = bad.intervals().first() {
            // Clipped to [0, 1], so both ends are finite.
            let voter = first.representative(&Rational::zero());
            return Err(Violation {
                voter_top: inst.top_of(&voter, tb),
                voter,
                proxy: proxy.clone(),
                proxy_top,
            });
        }
    }
    Ok(())
}

pub fn is_representative(inst: &Instance, arr: &Arrangement, tb: TieBreak) -> bool {
    verify_arrangement(inst, arr, tb).is_ok()
}

/// Adjacent candidate pairs more than `theta` apart whose bisector matches no
/// bisector of adjacent proxies. Any such pair rules the arrangement out.
pub fn check_bisector_coincidence(inst: &Instance, arr: &Arrangement) -> Vec<(usize, usize)> {
    let proxy_bisectors = arr.bisectors();
    let c = inst.candidates();
    (0..c.len() - 1)
        .filter(|&i| &c[i + 1] - &c[i] > *inst.theta())
        .filter(|&i| !proxy_bisectors.contains(&midpoint(&c[i], &c[i + 1])))
        .map(|i| (i, i + 1))
        .collect()
}

/// Checks voters one by one on the uniform grid `l / resolution` of `[0, 1]`,
/// at every candidate and proxy bisector, and just either side of each
/// bisector (offset `1 / (2 * resolution * D)`, `D` the common denominator of
/// all coordinates). A reported violation is always genuine.
pub fn grid_oracle_verify(
    inst: &Instance,
    arr: &Arrangement,
    tb: TieBreak,
    resolution: u64,
) -> Result<std::result::Result<(), Violation>> {
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let denominator = common_denominator(inst.candidates().iter().chain(arr.proxies()));
    let offset = Rational::new(BigInt::one(), BigInt::from(2 * resolution) * denominator);

    let mut voters: Vec<Rational> = (0..=resolution)
        .map(|l| rat(l as i64, resolution as i64))
        .collect();
    for b in inst
        .candidate_bisectors()
        .into_iter()
        .chain(arr.bisectors())
    {
        voters.push(&b - &offset);
        voters.push(&b + &offset);
        voters.push(b);
    }
    voters.retain(|v| !v.is_negative() && v <= &Rational::one());
    voters.sort();
    voters.dedup();

    for voter in voters {
        let voter_top = brute_top(inst.candidates(), &voter, tb);
        let proxy = arr.proxies()[brute_top(arr.proxies(), &voter, tb)].clone();
        let proxy_top = brute_top(inst.candidates(), &proxy, tb);
        if (inst.candidate(voter_top) - inst.candidate(proxy_top)).abs() > *inst.theta() {
            return Ok(Err(Violation {
                voter,
                voter_top,
                proxy,
                proxy_top,
            }));
        }
    }
    Ok(Ok(()))
}

/// Linear scan for the nearest site.
fn brute_top(sites: &[Rational], x: &Rational, tb: TieBreak) -> usize {
    let mut best = 0;
    let mut best_dist = (x - &sites[0]).abs();
    for (k, s) in sites.iter().enumerate().skip(1) {
        let d = (x - s).abs();
        // Sites are increasing, so an equal distance means `s` lies right of `x`.
        if d < best_dist || (d == best_dist && tb == TieBreak::AlwaysRight) {
            best = k;
            best_dist = d;
        }
    }
    best
}

/// `k` proxies spread evenly over `[0, 1]`, or a single proxy at 1/2 when `k = 1`.
pub fn evenly_spaced(k: usize) -> Result<Arrangement> {
    match k {
        0 => Err(Error::EmptyArrangement),
        1 => Arrangement::new(vec![rat(1, 2)]),
        _ => Arrangement::new((0..k).map(|l| rat(l as i64, k as i64 - 1)).collect()),
    }
}

/// Three candidates `0, x, 1` with `x` just above `theta`, placed so that the
/// bisector `x / 2` avoids every bisector of [`evenly_spaced`]`(k)`. The
/// evenly spaced arrangement then fails on this instance.
pub fn evenly_spaced_counterexample(theta: &Rational, k: usize) -> Result<Instance> {
    if k < 2 {
        return Err(Error::EmptyArrangement);
    }
    if !theta.is_positive() || theta >= &Rational::one() {
        return Err(Error::ThetaOutOfRange(theta.clone()));
    }
    let steps = BigInt::from(k - 1);
    // Grid point of spacing 1/(k-1) strictly above theta.
    let above = (theta * &steps).floor() + Rational::one();
    let ceiling = above / &steps;
    let room = ceiling - theta;
    let forbidden: Vec<Rational> = evenly_spaced(k)?
        .bisectors()
        .iter()
        .map(|b| b * BigInt::from(2))
        .collect();
    let x = (2..)
        .map(|d| theta + &room / BigInt::from(d))
        .find(|x| !forbidden.contains(x) && x < &Rational::one())
        .expect("infinitely many choices avoid finitely many bisectors");
    Instance::new(vec![Rational::zero(), x, Rational::one()], theta.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::*;
    use crate::interval::Interval;
    use proptest::prelude::*;

    #[test]
    fn proxy_cell_examples() {
        let arr = Arrangement::new(vec![rat(1, 6), rat(5, 6)]).unwrap();
        let cells = proxy_voronoi_cells(&arr, TieBreak::AlwaysLeft);
        assert_eq!(
            cells[0],
            IntervalSet::from(Interval::closed(rat(0, 1), rat(1, 2)))
        );
        assert_eq!(
            cells[1],
            IntervalSet::from(Interval::left_open(rat(1, 2), rat(1, 1)))
        );

        let cells = proxy_voronoi_cells(&two_merged_pairs_arrangement(), TieBreak::AlwaysLeft);
        assert_eq!(
            cells[0],
            IntervalSet::from(Interval::closed(rat(0, 1), rat(11, 60)))
        );
        assert_eq!(
            cells[1],
            IntervalSet::from(Interval::left_open(rat(11, 60), rat(49, 60)))
        );
        assert_eq!(
            cells[2],
            IntervalSet::from(Interval::left_open(rat(49, 60), rat(1, 1)))
        );

        let single = Arrangement::new(vec![rat(1, 2)]).unwrap();
        assert_eq!(
            proxy_voronoi_cells(&single, TieBreak::AlwaysRight)[0],
            IntervalSet::unit()
        );

        let far = Arrangement::new(vec![rat(-5, 1), rat(-3, 1), rat(1, 2)]).unwrap();
        let cells = proxy_voronoi_cells(&far, TieBreak::AlwaysLeft);
        assert!(cells[0].is_empty() && cells[1].is_empty());
    }

    #[test]
    fn merged_pair_arrangement_verifies() {
        for tb in TieBreak::BOTH {
            assert_eq!(
                verify_arrangement(&two_merged_pairs(), &two_merged_pairs_arrangement(), tb),
                Ok(())
            );
        }
    }

    #[test]
    fn printed_right_proxy_fails() {
        // 7/6 + 1/30 instead of 7/6 - 1/30 moves the right proxy bisector off 49/60.
        let inst = two_merged_pairs();
        let arr = Arrangement::new(vec![rat(-2, 15), rat(1, 2), rat(6, 5)]).unwrap();
        assert_eq!(check_bisector_coincidence(&inst, &arr), vec![(2, 3)]);
        for tb in TieBreak::BOTH {
            let v = verify_arrangement(&inst, &arr, tb).unwrap_err();
            assert!(v.is_genuine(&inst, &arr, tb));
        }
    }

    #[test]
    fn proxies_on_every_candidate_verify() {
        let inst = instance(&[(0, 1), (1, 7), (2, 7), (3, 5), (1, 1)], (1, 10));
        let arr = Arrangement::new(inst.candidates().to_vec()).unwrap();
        for tb in TieBreak::BOTH {
            assert_eq!(verify_arrangement(&inst, &arr, tb), Ok(()));
            assert_eq!(grid_oracle_verify(&inst, &arr, tb, 100).unwrap(), Ok(()));
        }
        assert!(check_bisector_coincidence(&inst, &arr).is_empty());
    }

    #[test]
    fn extremes_only_fail_around_the_middle_candidate() {
        let inst = instance(&[(0, 1), (9, 20), (1, 1)], (2, 5));
        let arr = Arrangement::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
        let v = verify_arrangement(&inst, &arr, TieBreak::AlwaysLeft).unwrap_err();
        assert!(v.voter > rat(9, 40) && v.voter <= rat(1, 2));
        assert_eq!((v.voter_top, v.proxy_top), (1, 0));
        assert!(v.is_genuine(&inst, &arr, TieBreak::AlwaysLeft));
        assert_eq!(
            check_bisector_coincidence(&inst, &arr),
            vec![(0, 1), (1, 2)]
        );
        let g = grid_oracle_verify(&inst, &arr, TieBreak::AlwaysLeft, 40).unwrap();
        assert!(g.unwrap_err().is_genuine(&inst, &arr, TieBreak::AlwaysLeft));
    }

    #[test]
    fn coincidence_screen_passes_merged_pairs() {
        assert!(
            check_bisector_coincidence(&two_merged_pairs(), &two_merged_pairs_arrangement())
                .is_empty()
        );
    }

    #[test]
    fn grid_oracle_accepts_merged_pairs() {
        for tb in TieBreak::BOTH {
            let r =
                grid_oracle_verify(&two_merged_pairs(), &two_merged_pairs_arrangement(), tb, 60);
            assert_eq!(r.unwrap(), Ok(()));
        }
        assert_eq!(
            grid_oracle_verify(
                &two_merged_pairs(),
                &two_merged_pairs_arrangement(),
                TieBreak::AlwaysLeft,
                1
            ),
            Err(Error::ResolutionTooSmall(1))
        );
    }

    #[test]
    fn evenly_spaced_counterexamples_fail() {
        for (n, d) in [(1, 3), (2, 5), (1, 2), (7, 10), (1, 10)] {
            let theta = rat(n, d);
            for k in 2..=6 {
                let inst = evenly_spaced_counterexample(&theta, k).unwrap();
                let x = inst.candidate(1);
                assert!(x > &theta);
                let arr = evenly_spaced(k).unwrap();
                assert!(!check_bisector_coincidence(&inst, &arr).is_empty());
                for tb in TieBreak::BOTH {
                    assert!(verify_arrangement(&inst, &arr, tb).is_err());
                }
            }
        }
    }

    #[test]
    fn verify_is_deterministic() {
        let inst = instance(&[(0, 1), (9, 20), (1, 1)], (2, 5));
        let arr = Arrangement::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
        let a = verify_arrangement(&inst, &arr, TieBreak::AlwaysRight);
        let b = verify_arrangement(&inst, &arr, TieBreak::AlwaysRight);
        assert_eq!(a, b);
    }

    fn arb_case() -> impl Strategy<Value = (Instance, Arrangement)> {
        (2usize..=8, 2i64..=60, 1i64..=59, 1usize..=6)
            .prop_flat_map(|(m, den, tn, k)| {
                let take = (m - 2).min(den as usize - 1);
                (
                    prop::sample::subsequence((1..den).collect::<Vec<_>>(), take),
                    Just(den),
                    Just(tn % (den - 1).max(1) + 1),
                    prop::collection::vec((-30i64..=90, 1i64..=60), k),
                )
            })
            .prop_filter_map("valid instance", |(interior, den, tn, proxies)| {
                let mut c = vec![rat(0, 1)];
                c.extend(interior.into_iter().map(|n| rat(n, den)));
                c.push(rat(1, 1));
                let inst = Instance::new(c, rat(tn, den)).ok()?;
                let arr = Arrangement::from_unsorted(
                    proxies
                        .into_iter()
                        .map(|(n, d)| rat(n * 60 / d, 60))
                        .collect(),
                )
                .ok()?;
                Some((inst, arr))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn exact_and_grid_verifiers_agree((inst, arr) in arb_case(), right in any::<bool>(), res in 2u64..=50) {
            let tb = if right { TieBreak::AlwaysRight } else { TieBreak::AlwaysLeft };
            let exact = verify_arrangement(&inst, &arr, tb);
            let grid = grid_oracle_verify(&inst, &arr, tb, res).unwrap();
            if exact.is_ok() {
                prop_assert!(grid.is_ok());
            }
            if let Err(v) = &grid {
                prop_assert!(v.is_genuine(&inst, &arr, tb));
                prop_assert!(exact.is_err());
            }
            // The bisector samples make the oracle exact at any resolution.
            prop_assert_eq!(exact.is_ok(), grid.is_ok());
        }

        #[test]
        fn violations_are_genuine((inst, arr) in arb_case(), right in any::<bool>()) {
            let tb = if right { TieBreak::AlwaysRight } else { TieBreak::AlwaysLeft };
            if let Err(v) = verify_arrangement(&inst, &arr, tb) {
                prop_assert!(v.is_genuine(&inst, &arr, tb));
            }
        }

        #[test]
        fn coincidence_screen_is_sound((inst, arr) in arb_case(), right in any::<bool>()) {
            let tb = if right { TieBreak::AlwaysRight } else { TieBreak::AlwaysLeft };
            if !check_bisector_coincidence(&inst, &arr).is_empty() {
                prop_assert!(verify_arrangement(&inst, &arr, tb).is_err());
            }
        }
    }
}
