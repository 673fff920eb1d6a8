//! Property tests for the structural invariants: monotonicity, frontier
//! soundness, weighted-evaluation consistency, equality-relation laws,
//! symmetrization soundness and cross-module count agreement.

use num_rational::BigRational;
use proptest::prelude::*;

use quorumlab::{
    banzhaf_enum, crucial_vector, games_equal, legco_game, maximal_losing, minimal_winning,
    player, refute_symmetric_realization, separable, symmetrize, AmalgamatedMatrix, Coalition,
    EnumCap, GameDef, PlayerCategories, ProfileTable, Scenario, WeightedRule,
};

fn cap() -> EnumCap {
    EnumCap::default()
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// A small weighted game: nonnegative integer weights with a threshold
/// pinned inside (0, total] so the axioms hold.
fn weighted_game() -> impl Strategy<Value = GameDef> {
    (2usize..=7, proptest::collection::vec(0i64..=4, 2..=7)).prop_filter_map(
        "degenerate weights",
        |(_, weights)| {
            let total: i64 = weights.iter().sum();
            if total == 0 {
                return None;
            }
            let threshold = (total + 1) / 2;
            AmalgamatedMatrix::single(threshold.max(1), &weights)
                .ok()
                .map(GameDef::Weighted)
        },
    )
}

fn legco_like() -> impl Strategy<Value = GameDef> {
    (1u32..=4, 0usize..3).prop_map(|(n, s)| {
        legco_game(n, Scenario::ALL[s]).unwrap()
    })
}

fn any_game() -> impl Strategy<Value = GameDef> {
    prop_oneof![weighted_game(), legco_like()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Winning survives adding members, on random chains S ⊆ T.
    #[test]
    fn monotone_along_chains(game in any_game(), seed in any::<u64>()) {
        let n = game.player_count();
        let full = Coalition::full(n).mask();
        let s = Coalition::from_mask(seed as u128 & full);
        let t = Coalition::from_mask((seed as u128 ^ seed as u128 >> 7) & full).union(s);
        if game.eval(s).unwrap() {
            prop_assert!(game.eval(t).unwrap(), "{s} wins but superset {t} loses");
        }
    }

    // Every winning coalition contains a minimal winning one; every losing
    // coalition is contained in a maximal losing one.
    #[test]
    fn frontier_soundness(game in any_game(), seed in any::<u64>()) {
        let n = game.player_count();
        let s = Coalition::from_mask(seed as u128 & Coalition::full(n).mask());
        if game.eval(s).unwrap() {
            let frontier = minimal_winning(&game, cap()).unwrap();
            prop_assert!(frontier.iter().any(|m| m.is_subset_of(s)));
        } else {
            let frontier = maximal_losing(&game, cap()).unwrap();
            prop_assert!(frontier.iter().any(|m| s.is_subset_of(*m)));
        }
    }

    // One-row matrix evaluation is exactly the threshold comparison.
    #[test]
    fn single_row_eval_is_threshold(
        weights in proptest::collection::vec(0i64..=4, 2..=7),
        threshold in 1i64..=10,
    ) {
        prop_assume!(weights.iter().sum::<i64>() >= threshold);
        let matrix = AmalgamatedMatrix::single(threshold, &weights).unwrap();
        let game = GameDef::Weighted(matrix);
        let n = weights.len() as u32;
        for mask in 0..1u128 << n {
            let s = Coalition::from_mask(mask);
            let direct: i64 = s.players().map(|p| weights[p.index() as usize - 1]).sum();
            prop_assert_eq!(game.eval(s).unwrap(), direct >= threshold);
        }
    }

    // games_equal is reflexive and symmetric on everything it accepts.
    #[test]
    fn equality_relation_laws(a in any_game(), b in any_game()) {
        prop_assert!(games_equal(&a, &a, cap()).unwrap().equal);
        if a.player_count() == b.player_count() {
            let ab = games_equal(&a, &b, cap()).unwrap();
            let ba = games_equal(&b, &a, cap()).unwrap();
            prop_assert_eq!(ab.equal, ba.equal);
        }
    }

    // Averaging weights within chambers preserves the realized game (for
    // chamber-symmetric games): perturb a known realization, keep only
    // perturbations that still realize the game, and demand the averaged
    // matrix realizes it too.
    #[test]
    fn symmetrization_soundness(
        n in 3u32..=5,
        row_pick in 0usize..3,
        slot in 0usize..10,
        delta_num in -2i64..=2,
    ) {
        let game = legco_game(n, Scenario::StatusQuo).unwrap();
        let base = quorumlab::canonical_realization(n).unwrap();
        let rows: Vec<WeightedRule> = base
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut weights = row.weights().to_vec();
                if i == row_pick % base.rows().len() {
                    let j = slot % (weights.len() - 1);
                    weights[j] += ratio(delta_num, 3);
                    if weights[j] < ratio(0, 1) {
                        weights[j] = ratio(0, 1);
                    }
                }
                WeightedRule::new(row.threshold().clone(), weights).unwrap()
            })
            .collect();
        let perturbed = AmalgamatedMatrix::new(rows).unwrap();
        prop_assume!(games_equal(&game, &GameDef::Weighted(perturbed.clone()), cap()).unwrap().equal);
        let averaged = symmetrize(&perturbed, PlayerCategories::new(n)).unwrap();
        prop_assert!(
            games_equal(&game, &GameDef::Weighted(averaged), cap()).unwrap().equal,
            "symmetrized perturbation no longer realizes the game"
        );
    }
}

// Cross-module agreement: summing a player's crucial vector over all
// sizes gives exactly their swing count.
#[test]
fn crucial_vector_totals_are_swing_counts() {
    for n in 1..=4u32 {
        let game = legco_game(n, Scenario::StatusQuo).unwrap();
        let swings = banzhaf_enum(&game, cap()).unwrap();
        for i in 1..=2 * n + 1 {
            let vector = crucial_vector(&game, player(i), cap()).unwrap();
            assert_eq!(vector.total(), *swings.count(player(i)), "n={n} player {i}");
        }
    }
}

// Oracle agreement between the two LP entry points: the one-row sweep
// assigns every maximal losing profile to its single row, so it fails
// exactly when the separation oracle on the full frontier fails.
#[test]
fn one_row_sweep_agrees_with_separation_oracle() {
    for n in 2..=6u32 {
        let game = legco_game(n, Scenario::StatusQuo).unwrap();
        let table = ProfileTable::of(&game).unwrap();
        let full_row = separable(&game, &table.maximal_losing).unwrap();
        let sweep = refute_symmetric_realization(&game, 1).unwrap();
        assert_eq!(full_row.is_none(), sweep.refuted, "n={n}");
        // And per single profile, a feasible full row implies each
        // one-profile restriction is feasible.
        if full_row.is_some() {
            for p in &table.maximal_losing {
                assert!(separable(&game, std::slice::from_ref(p)).unwrap().is_some());
            }
        }
    }
}

// games_equal transitivity spot-check on three realizations of one game.
#[test]
fn equality_transitivity_spot_check() {
    let a = legco_game(2, Scenario::StatusQuo).unwrap();
    let b = GameDef::Weighted(AmalgamatedMatrix::single(4, &[1, 1, 1, 1, 1]).unwrap());
    let c = GameDef::Weighted(AmalgamatedMatrix::single(8, &[2, 2, 2, 2, 2]).unwrap());
    assert!(games_equal(&a, &b, cap()).unwrap().equal);
    assert!(games_equal(&b, &c, cap()).unwrap().equal);
    assert!(games_equal(&a, &c, cap()).unwrap().equal);
}
