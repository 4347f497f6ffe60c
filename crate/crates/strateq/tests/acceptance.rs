//! End-to-end acceptance checks, one test per criterion. Every
//! assertion is exact: the arithmetic is rational, so there are no
//! tolerances anywhere. Each test prints a single pass/fail line
//! (visible with `--nocapture`) before asserting.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use strateq::classic::{matching_pennies, prisoners_dilemma, unbalanced_pennies};
use strateq::equilibria::{
    enumerate_ne_2p, enumerate_pne, find_cce, find_ce, is_cce, is_ce, is_ne, welfare_objective,
};
use strateq::game::{profiles, Behavior, CorrelatedDistribution, Game, MixedProfile, PureProfile};
use strateq::gamefile::{parse_game_file, serialize_game_file, GameFile};
use strateq::harness::{
    check_axiom, random_game, random_z_game, sample_correlated, sample_mixed, verify_proposition,
    Axiom, GameFamilySpec, Proposition,
};
use strateq::lp::zero_sum_value;
use strateq::rational::{rat, ratio};
use strateq::rationality::{cir_solution, cir_values, pir_values};
use strateq::report::{report_text, status_line, verdict_text};
use strateq::transforms::apply_z_games;
use strateq::Rational;

fn announce(label: &str, passed: bool) {
    print!("{}", status_line(label, passed));
}

#[test]
fn criterion_1_behavior_witnesses_at_scale() {
    let start = Instant::now();
    let family = GameFamilySpec::new((2, 3), (2, 4), (-9, 9), 0xACCE01, 500);
    let report = verify_proposition(Proposition::P1, &family, 20).expect("family is valid");
    let elapsed = start.elapsed();
    let ok = report.verified() && report.games_checked == 500 && elapsed.as_secs() < 300;
    announce(
        "criterion 1: behavior-level witnesses over 500 games within five minutes",
        ok,
    );
    assert_eq!(report.games_checked, 500);
    assert!(
        report.failures.is_empty(),
        "failures: {:?}",
        report.failures
    );
    assert!(
        elapsed.as_secs() < 300,
        "took {}s, budget is 300s",
        elapsed.as_secs()
    );
}

#[test]
fn criterion_2_recommendation_witnesses_at_scale() {
    let family = GameFamilySpec::new((2, 2), (2, 4), (-9, 9), 0xACCE02, 200);
    let report = verify_proposition(Proposition::P2, &family, 20).expect("family is valid");
    let ok = report.verified() && report.games_checked == 200;
    announce(
        "criterion 2: recommendation-level witnesses over 200 two-player games",
        ok,
    );
    assert_eq!(report.games_checked, 200);
    assert!(
        report.failures.is_empty(),
        "failures: {:?}",
        report.failures
    );
}

#[test]
fn criterion_3_elevation_inequalities() {
    let family = GameFamilySpec::new((2, 3), (2, 4), (-9, 9), 0xACCE03, 500);
    let report = verify_proposition(Proposition::P3, &family, 20).expect("family is valid");
    let ok = report.verified() && report.games_checked == 500 && report.witnesses_verified > 0;
    announce(
        "criterion 3: every pure equilibrium elevates with both inequality families exact",
        ok,
    );
    assert_eq!(report.games_checked, 500);
    assert!(report.witnesses_verified > 0, "no equilibria elevated");
    assert!(
        report.failures.is_empty(),
        "failures: {:?}",
        report.failures
    );
}

#[test]
fn criterion_4_contradiction_pairs() {
    let family = GameFamilySpec::new((2, 2), (2, 3), (-9, 9), 0xACCE04, 50);
    let report = verify_proposition(Proposition::P4, &family, 20).expect("family is valid");
    let ok = report.verified()
        && report.games_checked == 50
        && report.witnesses_verified == 2 * report.cases_checked;
    announce(
        "criterion 4: contradiction pairs from 50 games with two strict equilibria",
        ok,
    );
    assert_eq!(report.games_checked, 50);
    assert_eq!(report.witnesses_verified, 2 * report.cases_checked);
    assert!(
        report.failures.is_empty(),
        "failures: {:?}",
        report.failures
    );
}

#[test]
fn criterion_5_transfer_invariance() {
    let spec = GameFamilySpec::new((2, 3), (2, 3), (-9, 9), 0xACCE05, 200);
    let mut checked = 0usize;
    for index in 0..spec.count {
        let game = random_game(&spec, index as u64).expect("family is valid");
        let mut rng = ChaCha20Rng::seed_from_u64(0x5E5E + index as u64);
        let transfers: Vec<_> = (0..10).map(|_| random_z_game(&game, &mut rng)).collect();
        let shifted = apply_z_games(&game, &transfers).expect("shapes match");

        assert_eq!(
            enumerate_pne(&game),
            enumerate_pne(&shifted),
            "pure equilibria moved under transfers, game {index}"
        );
        for _ in 0..4 {
            let mixed = sample_mixed(&game, &mut rng);
            assert_eq!(
                is_ne(&game, &mixed).unwrap().holds,
                is_ne(&shifted, &mixed).unwrap().holds,
                "Nash verdict moved under transfers, game {index}"
            );
            let correlated = sample_correlated(&game, &mut rng);
            assert_eq!(
                is_ce(&game, &correlated).unwrap().holds,
                is_ce(&shifted, &correlated).unwrap().holds,
                "correlated verdict moved, game {index}"
            );
            assert_eq!(
                is_cce(&game, &correlated).unwrap().holds,
                is_cce(&shifted, &correlated).unwrap().holds,
                "coarse verdict moved, game {index}"
            );
            checked += 1;
        }
    }
    announce(
        "criterion 5: equilibrium notions invariant under 10-transfer sums on 200 games",
        checked == 800,
    );
    assert_eq!(checked, 800);
}

#[test]
fn criterion_6_equilibrium_nesting() {
    let spec = GameFamilySpec::new((2, 2), (2, 3), (-9, 9), 0xACCE06, 60);
    let mut games: Vec<Game> = (0..spec.count)
        .map(|i| random_game(&spec, i as u64).expect("family is valid"))
        .collect();
    games.push(prisoners_dilemma());
    games.push(matching_pennies());
    games.push(strateq::classic::coordination());
    games.push(strateq::classic::stag_hunt());

    for game in &games {
        for profile in enumerate_pne(game) {
            let mixed = MixedProfile::pure(game.action_counts(), &profile);
            assert!(is_ne(game, &mixed).unwrap().holds, "PNE not NE");
        }
        let enumeration = enumerate_ne_2p(game).expect("two players");
        for ne in &enumeration.equilibria {
            assert!(is_ne(game, ne).unwrap().holds, "enumerated NE fails check");
            let joint = ne.to_correlated();
            assert!(is_ce(game, &joint).unwrap().holds, "NE not CE");
            assert!(is_cce(game, &joint).unwrap().holds, "NE not CCE");
        }
        let objective = welfare_objective(game);
        let ce = find_ce(game, &objective).expect("polytope is nonempty");
        assert!(is_ce(game, &ce).unwrap().holds, "CE vertex fails re-check");
        assert!(is_cce(game, &ce).unwrap().holds, "CE not CCE");
        let cce = find_cce(game, &objective).expect("polytope is nonempty");
        assert!(
            is_cce(game, &cce).unwrap().holds,
            "CCE vertex fails re-check"
        );
    }
    announce(
        "criterion 6: pure within Nash within correlated within coarse, with vertex membership",
        true,
    );
}

#[test]
fn criterion_7_fixture_values() {
    let pd = prisoners_dilemma();
    let mp = matching_pennies();

    let pd_pir = pir_values(&pd);
    let mp_cir = cir_values(&mp).expect("two players");
    let pd_pne = enumerate_pne(&pd);
    let mp_pne = enumerate_pne(&mp);
    let mp_ne = enumerate_ne_2p(&mp).expect("two players");

    let half = ratio(1, 2);
    let uniform_each = vec![half.clone(), half.clone()];
    let p1 = cir_solution(&mp, 0).expect("two players");
    let p2 = cir_solution(&mp, 1).expect("two players");

    let ok = pd_pir == vec![rat(1), rat(1)]
        && mp_cir == vec![rat(0), rat(0)]
        && p1.row_strategy == uniform_each
        && p2.row_strategy == uniform_each
        && pd_pne == vec![PureProfile::new(vec![1, 1])]
        && mp_pne.is_empty()
        && mp_ne.complete
        && mp_ne.equilibria == vec![MixedProfile::uniform(mp.action_counts())];
    announce("criterion 7: exact fixture values", ok);

    assert_eq!(pd_pir, vec![rat(1), rat(1)]);
    assert_eq!(mp_cir, vec![rat(0), rat(0)]);
    assert_eq!(p1.row_strategy, uniform_each);
    assert_eq!(p2.row_strategy, uniform_each);
    assert_eq!(pd_pne, vec![PureProfile::new(vec![1, 1])]);
    assert!(mp_pne.is_empty());
    assert!(mp_ne.complete);
    assert_eq!(
        mp_ne.equilibria,
        vec![MixedProfile::uniform(mp.action_counts())]
    );
}

#[test]
fn criterion_8_exact_linear_programming() {
    // Value and duality; zero_sum_value cross-checks both players'
    // guarantees internally on every call.
    let solution = zero_sum_value(&unbalanced_pennies()).expect("zero-sum fixture");
    assert_eq!(solution.value, ratio(1, 3));
    assert_eq!(solution.row_strategy, vec![ratio(1, 3), ratio(2, 3)]);

    let spec = GameFamilySpec::new((2, 2), (2, 4), (-9, 9), 0xACCE08, 20);
    for index in 0..spec.count {
        let game = random_game(&spec, index as u64).expect("family is valid");
        let zero_sum = Game::bimatrix(
            rows_of(&game, 0),
            rows_of(&game, 0)
                .iter()
                .map(|row| row.iter().map(|v| -v).collect())
                .collect(),
        )
        .expect("same shape");
        zero_sum_value(&zero_sum).expect("solver terminates with duality intact");

        let objective = welfare_objective(&game);
        let ce = find_ce(&game, &objective).expect("nonempty polytope");
        assert!(is_ce(&game, &ce).unwrap().holds, "vertex fails re-check");
    }

    // Degenerate systems: the all-ties game underdetermines every
    // support system; enumeration must terminate and say so rather
    // than guess.
    let flat = Game::zero(vec![2, 2]).expect("valid shape");
    let enumeration = enumerate_ne_2p(&flat).expect("two players");
    assert!(!enumeration.complete);
    for ne in &enumeration.equilibria {
        assert!(is_ne(&flat, ne).unwrap().holds);
    }
    let ce = find_ce(&flat, &welfare_objective(&flat)).expect("nonempty polytope");
    assert!(is_ce(&flat, &ce).unwrap().holds);

    announce(
        "criterion 8: exact solver passes duality, re-verification, and degenerate fixtures",
        true,
    );
}

fn rows_of(game: &Game, player: usize) -> Vec<Vec<Rational>> {
    let counts = game.action_counts();
    (0..counts[0])
        .map(|a| {
            (0..counts[1])
                .map(|b| game.payoff(player, &[a, b]).clone())
                .collect()
        })
        .collect()
}

#[test]
fn criterion_9_determinism_and_round_trips() {
    let family = GameFamilySpec::new((2, 3), (2, 3), (-9, 9), 0xACCE09, 40);
    let first = verify_proposition(Proposition::P1, &family, 8).expect("family is valid");
    let second = verify_proposition(Proposition::P1, &family, 8).expect("family is valid");
    assert_eq!(report_text(&first), report_text(&second));

    let map = strateq::harness::builtin_solution_map("pne").expect("built-in");
    let v1 = check_axiom(&map, Axiom::Se, &family, 6).expect("family is valid");
    let v2 = check_axiom(&map, Axiom::Se, &family, 6).expect("family is valid");
    assert_eq!(verdict_text(&v1, &map), verdict_text(&v2, &map));

    // Text format round-trips bit for bit: parse after serialize is
    // the identity on games, labels included.
    let spec = GameFamilySpec::new((2, 3), (2, 4), (-9, 9), 0xACCE10, 100);
    for index in 0..spec.count {
        let game = random_game(&spec, index as u64).expect("family is valid");
        let file = GameFile::bare(game);
        let text = serialize_game_file(&file);
        let reparsed = parse_game_file(&text).expect("serializer output parses");
        assert_eq!(file, reparsed, "round trip changed game {index}");
        assert_eq!(text, serialize_game_file(&reparsed), "serializer unstable");
    }
    for name in ["pd", "mp", "coordination", "stag_hunt", "majority"] {
        let path = format!("{}/fixtures/{name}.game", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(path).expect("fixture file exists");
        let file = parse_game_file(&text).expect("fixture parses");
        let reparsed = parse_game_file(&serialize_game_file(&file)).expect("round trip parses");
        assert_eq!(file, reparsed);
    }

    // Same seed, same games, byte for byte.
    let a = random_game(&spec, 7).expect("family is valid");
    let b = random_game(&spec, 7).expect("family is valid");
    assert_eq!(a, b);

    announce(
        "criterion 9: seeded runs reproduce byte-identical reports and parse inverts serialize",
        true,
    );
}

/// The nesting criterion also wants correlated strictness visible: a
/// correlated equilibrium that no product distribution matches.
#[test]
fn correlated_strictly_extends_nash() {
    let co = strateq::classic::coordination();
    let flip = CorrelatedDistribution::from_pairs(
        co.action_counts(),
        &[(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
    )
    .expect("valid distribution");
    assert!(is_ce(&co, &flip).unwrap().holds);

    // Its own-action marginals are uniform, and uniform independent
    // play is not a Nash equilibrium here.
    let product = MixedProfile::uniform(co.action_counts());
    assert!(!is_ne(&co, &product).unwrap().holds);
    assert_eq!(flip.marginal_self(0), product.strategy(0));

    let pures: BTreeSet<Behavior> = profiles(co.action_counts())
        .map(|p| Behavior::Pure(PureProfile::new(p)))
        .collect();
    assert_eq!(pures.len(), 4);
}
