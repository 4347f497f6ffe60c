//! Randomized structural properties. Games are generated directly
//! from integer tensors so failures shrink to small readable
//! counterexamples.

use proptest::prelude::*;
use strateq::equilibria::{
    check_nudi, enumerate_pne, find_cce, find_ce, is_cce, is_ce, is_ne, welfare_objective,
};
use strateq::game::{profiles, Behavior, CorrelatedDistribution, Game, MixedProfile, PureProfile};
use strateq::gamefile::{parse_game_file, serialize_game_file, GameFile};
use strateq::rational::{rat, ratio};
use strateq::rationality::{cir, pir};
use strateq::transforms::{apply_z_games, strategically_equivalent, Equivalence, ZGame};
use strateq::Rational;

fn arb_game() -> impl Strategy<Value = Game> {
    (2usize..=3)
        .prop_flat_map(|players| proptest::collection::vec(2usize..=3, players))
        .prop_flat_map(|counts| {
            let total: usize = counts.iter().product();
            let players = counts.len();
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, total), players)
                .prop_map(move |tensors| {
                    let payoffs = tensors
                        .into_iter()
                        .map(|t| t.into_iter().map(rat).collect())
                        .collect();
                    Game::new(counts.clone(), payoffs).expect("shape matches by construction")
                })
        })
}

fn arb_transfers(game: &Game) -> impl Strategy<Value = Vec<ZGame>> {
    let counts = game.action_counts().to_vec();
    let players = counts.len();
    proptest::collection::vec(
        (
            0..players,
            proptest::collection::vec(0usize..8, players - 1),
            -6i64..=6,
            1i64..=3,
        )
            .prop_map(move |(player, raw_rest, num, den)| {
                let rest: Vec<usize> = raw_rest
                    .iter()
                    .enumerate()
                    .map(|(pos, &r)| {
                        let j = if pos < player { pos } else { pos + 1 };
                        r % counts[j]
                    })
                    .collect();
                ZGame {
                    player,
                    opponents_profile: rest,
                    amount: ratio(num, den),
                    shape: counts.clone(),
                }
            }),
        1..6,
    )
}

fn arb_game_with_transfers() -> impl Strategy<Value = (Game, Vec<ZGame>)> {
    arb_game().prop_flat_map(|game| {
        let transfers = arb_transfers(&game);
        (Just(game), transfers)
    })
}

/// Nonnegative weights summing to one over the game's profile space.
fn arb_correlated(game: &Game) -> impl Strategy<Value = CorrelatedDistribution> {
    let counts = game.action_counts().to_vec();
    let total: usize = counts.iter().product();
    proptest::collection::vec(0u64..6, total)
        .prop_filter("some weight must be positive", |raw| {
            raw.iter().any(|&w| w > 0)
        })
        .prop_map(move |raw| {
            let sum: u64 = raw.iter().sum();
            let weights: Vec<Rational> = raw.iter().map(|&w| ratio(w as i64, sum as i64)).collect();
            CorrelatedDistribution::new(counts.clone(), weights).expect("weights sum to one")
        })
}

fn arb_game_with_correlated() -> impl Strategy<Value = (Game, CorrelatedDistribution)> {
    arb_game().prop_flat_map(|game| {
        let dist = arb_correlated(&game);
        (Just(game), dist)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Adding opponent-conditioned transfers always lands inside the
    /// equivalence class, and the recovered certificate re-verifies.
    #[test]
    fn transfer_sums_stay_equivalent((game, transfers) in arb_game_with_transfers()) {
        let shifted = apply_z_games(&game, &transfers).expect("shapes match");
        let verdict = strategically_equivalent(&game, &shifted).expect("same shape");
        match verdict {
            Equivalence::Equivalent(cert) => {
                prop_assert!(cert.verify(&game, &shifted));
            }
            Equivalence::NotEquivalent { .. } => prop_assert!(false, "transfer sum refuted"),
        }
    }

    /// The relation is symmetric: the reverse direction also certifies.
    #[test]
    fn equivalence_is_symmetric((game, transfers) in arb_game_with_transfers()) {
        let shifted = apply_z_games(&game, &transfers).expect("shapes match");
        let forward = strategically_equivalent(&game, &shifted).expect("same shape");
        let backward = strategically_equivalent(&shifted, &game).expect("same shape");
        prop_assert_eq!(forward.is_equivalent(), backward.is_equivalent());
    }

    /// Pure equilibria are exactly the pure behaviors with no
    /// profitable unilateral deviation, and they survive transfers.
    #[test]
    fn pure_equilibria_match_deviation_checks((game, transfers) in arb_game_with_transfers()) {
        let pne: Vec<PureProfile> = enumerate_pne(&game);
        for profile in profiles(game.action_counts()) {
            let profile = PureProfile::new(profile);
            let report = check_nudi(&game, &Behavior::Pure(profile.clone()))
                .expect("behavior matches game");
            prop_assert_eq!(report.holds, pne.contains(&profile));
        }
        let shifted = apply_z_games(&game, &transfers).expect("shapes match");
        prop_assert_eq!(pne, enumerate_pne(&shifted));
    }

    /// Chain of inclusions on every pure equilibrium: Nash as a point
    /// mass, correlated as its joint law, coarse correlated last.
    #[test]
    fn equilibrium_nesting(game in arb_game()) {
        for profile in enumerate_pne(&game) {
            let mixed = MixedProfile::pure(game.action_counts(), &profile);
            prop_assert!(is_ne(&game, &mixed).expect("shape matches").holds);
            let joint = mixed.to_correlated();
            prop_assert!(is_ce(&game, &joint).expect("shape matches").holds);
            prop_assert!(is_cce(&game, &joint).expect("shape matches").holds);
        }
    }

    /// LP vertices of both polytopes satisfy their defining tests.
    #[test]
    fn polytope_vertices_reverify(game in arb_game()) {
        let objective = welfare_objective(&game);
        let ce = find_ce(&game, &objective).expect("nonempty polytope");
        prop_assert!(is_ce(&game, &ce).expect("shape matches").holds);
        prop_assert!(is_cce(&game, &ce).expect("shape matches").holds);
        let cce = find_cce(&game, &objective).expect("nonempty polytope");
        prop_assert!(is_cce(&game, &cce).expect("shape matches").holds);
    }

    /// A mixed guarantee is at least the pure one for every player.
    #[test]
    fn coalition_level_dominates_pure(game in arb_game()) {
        for player in 0..game.num_players() {
            let pure_level = pir(&game, player).expect("player in range");
            let mixed_level = cir(&game, player).expect("player in range");
            prop_assert!(pure_level <= mixed_level);
        }
    }

    /// Serialize then parse is the identity, labels or not.
    #[test]
    fn game_files_round_trip(game in arb_game()) {
        let file = GameFile::bare(game);
        let text = serialize_game_file(&file);
        let reparsed = parse_game_file(&text).expect("serializer output parses");
        prop_assert_eq!(&file, &reparsed);
        prop_assert_eq!(text, serialize_game_file(&reparsed));
    }

    /// Conditioning a correlated behavior on a recommendation yields a
    /// distribution over opponent profiles, and marginals stay
    /// consistent with the joint.
    #[test]
    fn correlated_marginals_are_consistent((game, dist) in arb_game_with_correlated()) {
        for player in 0..game.num_players() {
            let own = dist.marginal_self(player);
            let total: Rational = own.iter().cloned().sum();
            prop_assert_eq!(&total, &rat(1));
            for (action, mass) in own.iter().enumerate() {
                if mass == &rat(0) {
                    continue;
                }
                let conditional = dist.condition(player, action).expect("positive mass");
                let sum: Rational = conditional.iter().cloned().sum();
                prop_assert_eq!(&sum, &rat(1));
            }
        }
    }

    /// Correlated verdicts are invariant under transfers; the coarse
    /// test never rejects what the fine test accepts.
    #[test]
    fn correlated_checks_respect_transfers(
        ((game, dist), transfers) in arb_game_with_correlated()
            .prop_flat_map(|(game, dist)| {
                let transfers = arb_transfers(&game);
                (Just((game, dist)), transfers)
            })
    ) {
        let shifted = apply_z_games(&game, &transfers).expect("shapes match");
        let fine = is_ce(&game, &dist).expect("shape matches").holds;
        prop_assert_eq!(fine, is_ce(&shifted, &dist).expect("shape matches").holds);
        let coarse = is_cce(&game, &dist).expect("shape matches").holds;
        prop_assert_eq!(coarse, is_cce(&shifted, &dist).expect("shape matches").holds);
        if fine {
            prop_assert!(coarse);
        }
    }
}
