mod common;

use common::GridOracle;
use proptest::prelude::*;
use proxyrep_core::restricted::solve_restricted_optimal;
use proxyrep_core::unrestricted::solve_unrestricted_optimal;
use proxyrep_core::{rat, Instance, TieBreak};

#[test]
fn grid_oracle_on_known_instances() {
    let merged = Instance::new(
        vec![rat(0, 1), rat(11, 30), rat(19, 30), rat(1, 1)],
        rat(1, 3),
    )
    .unwrap();
    assert_eq!(GridOracle::new(&merged, TieBreak::AlwaysLeft).optimum(), 3);
    let ends = Instance::new(vec![rat(0, 1), rat(1, 1)], rat(1, 2)).unwrap();
    assert_eq!(GridOracle::new(&ends, TieBreak::AlwaysRight).optimum(), 2);
}

fn arb_instance() -> impl Strategy<Value = Instance> {
    (2i64..=24)
        .prop_flat_map(|den| {
            (
                Just(den),
                prop::collection::btree_set(1..den, 0..=3),
                2i64..=98,
            )
        })
        .prop_map(|(den, interior, tn)| {
            let mut c = vec![rat(0, 1)];
            c.extend(interior.into_iter().map(|k| rat(k, den)));
            c.push(rat(1, 1));
            Instance::new(c, rat(tn, 99)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn grid_never_beats_exact(inst in arb_instance()) {
        for tb in TieBreak::BOTH {
            let exact = solve_unrestricted_optimal(&inst, tb).count;
            let grid = GridOracle::new(&inst, tb).optimum();
            prop_assert!(exact <= grid);
            prop_assert!(grid <= solve_restricted_optimal(&inst, tb).count);
        }
    }
}
