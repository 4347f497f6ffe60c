//! Individual-rationality values and the two rationality predicates
//! on behaviors.
//!
//! Three punishment levels per player, differing in what the punishers
//! and the punished may do:
//!
//! * [`pir`]: the player picks one pure action, the opponents respond
//!   with the worst joint pure profile. The classic pure maximin.
//! * [`cir`]: the player may mix, the opponents jointly correlate
//!   against them. The value of the auxiliary zero-sum game between
//!   the player and the opponent coalition.
//! * [`ir_values`]: the two-player individual rationality level, which
//!   coincides with [`cir`] because a single opponent's correlated
//!   strategies are just mixed strategies. With three or more players
//!   the analogous independent-punishment value is not an LP and is
//!   out of scope, so the general accessor refuses those games.
//!
//! [`pir`] never exceeds [`cir`]: mixing only helps the punished
//! player, while correlation never hurts punishers whose worst case is
//! already over pure profiles.
//!
//! The predicates are strict. A behavior satisfies pure individual
//! rationality when every player's expected payoff strictly exceeds
//! their [`pir`] level, and recommendation rationality when every
//! positive-probability recommendation still strictly beats that level
//! conditionally. Payoffs exactly at the punishment level count as
//! failures.

use crate::error::{Error, Result};
use crate::game::{Behavior, CorrelatedDistribution, Game, PureProfile};
use crate::lp::{zero_sum_value, ZeroSumSolution};
use crate::rational::{rat_vec_serde, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Pure individual rationality level of one player: the best payoff
/// they can guarantee with a single pure action against adversarial
/// pure opponents.
pub fn pir(game: &Game, player: usize) -> Result<Rational> {
    pir_with_action(game, player).map(|(value, _)| value)
}

/// [`pir`] together with the smallest action index attaining it.
pub fn pir_with_action(game: &Game, player: usize) -> Result<(Rational, usize)> {
    game.check_player(player)?;
    let mut best: Option<(Rational, usize)> = None;
    for action in 0..game.action_counts()[player] {
        let worst = worst_case(game, player, action);
        let improves = match &best {
            None => true,
            Some((value, _)) => worst > *value,
        };
        if improves {
            best = Some((worst, action));
        }
    }
    Ok(best.expect("games have at least one action per player"))
}

fn worst_case(game: &Game, player: usize, action: usize) -> Rational {
    let rest_counts = crate::game::opponent_counts(game.action_counts(), player);
    crate::game::profiles(&rest_counts)
        .map(|rest| {
            let full = crate::game::compose_profile(player, action, &rest);
            game.payoff(player, &full).clone()
        })
        .min()
        .expect("opponent profile space is never empty")
}

/// All players' [`pir`] levels.
pub fn pir_values(game: &Game) -> Vec<Rational> {
    (0..game.num_players())
        .map(|i| pir(game, i).expect("player index in range"))
        .collect()
}

/// Correlated individual rationality level of one player: the value of
/// the zero-sum game in which the player mixes over own actions and
/// the opponent coalition correlates over joint punishments.
pub fn cir(game: &Game, player: usize) -> Result<Rational> {
    cir_solution(game, player).map(|s| s.value)
}

/// [`cir`] with the optimal strategies of both sides: the player's
/// maximin mix and the coalition's punishing distribution over joint
/// opponent profiles (lexicographic order).
pub fn cir_solution(game: &Game, player: usize) -> Result<ZeroSumSolution> {
    game.check_player(player)?;
    let own = game.action_counts()[player];
    let rest_counts = crate::game::opponent_counts(game.action_counts(), player);
    let rests: Vec<Vec<usize>> = crate::game::profiles(&rest_counts).collect();
    let rows: Vec<Vec<Rational>> = (0..own)
        .map(|action| {
            rests
                .iter()
                .map(|rest| {
                    let full = crate::game::compose_profile(player, action, rest);
                    game.payoff(player, &full).clone()
                })
                .collect()
        })
        .collect();
    let cols: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| row.iter().map(|v| -v).collect())
        .collect();
    let auxiliary = Game::bimatrix(rows, cols)?;
    zero_sum_value(&auxiliary)
}

/// All players' [`cir`] levels.
pub fn cir_values(game: &Game) -> Result<Vec<Rational>> {
    (0..game.num_players()).map(|i| cir(game, i)).collect()
}

/// Two-player individual rationality levels. Errors on any other
/// player count; see the module docs for why.
pub fn ir_values(game: &Game) -> Result<Vec<Rational>> {
    if game.num_players() != 2 {
        return Err(Error::UnsupportedPlayerCount {
            required: 2,
            found: game.num_players(),
        });
    }
    cir_values(game)
}

/// Every punishment level of every player in one bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalityValues {
    #[serde(with = "rat_vec_serde")]
    pub pir: Vec<Rational>,
    #[serde(with = "rat_vec_serde")]
    pub cir: Vec<Rational>,
    /// Present only for two-player games.
    #[serde(skip_serializing_if = "Option::is_none", default, with = "opt_rat_vec")]
    pub ir: Option<Vec<Rational>>,
}

mod opt_rat_vec {
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(values) => s.collect_seq(values.iter().map(format_rational)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|strings| {
            strings
                .iter()
                .map(|s| {
                    parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
                })
                .collect()
        })
        .transpose()
    }
}

/// Compute all punishment levels of a game.
pub fn rationality_values(game: &Game) -> Result<RationalityValues> {
    Ok(RationalityValues {
        pir: pir_values(game),
        cir: cir_values(game)?,
        ir: if game.num_players() == 2 {
            Some(ir_values(game)?)
        } else {
            None
        },
    })
}

/// A player whose expected payoff fails to strictly beat their pure
/// punishment level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PirViolation {
    pub player: usize,
    #[serde(with = "crate::rational::rat_serde")]
    pub value: Rational,
    #[serde(with = "crate::rational::rat_serde")]
    pub threshold: Rational,
}

/// First player (smallest index) violating strict pure individual
/// rationality under `behavior`, or `None` if all strictly pass.
pub fn pir_violation(game: &Game, behavior: &Behavior) -> Result<Option<PirViolation>> {
    for player in 0..game.num_players() {
        let value = game.evaluate_payoff(behavior, player)?;
        let threshold = pir(game, player)?;
        if value <= threshold {
            return Ok(Some(PirViolation {
                player,
                value,
                threshold,
            }));
        }
    }
    Ok(None)
}

/// Strict pure individual rationality of a behavior: every player's
/// expected payoff strictly exceeds their [`pir`] level.
pub fn pir_holds(game: &Game, behavior: &Behavior) -> Result<bool> {
    Ok(pir_violation(game, behavior)?.is_none())
}

/// A recommendation whose conditional payoff fails to strictly beat
/// the recommended player's pure punishment level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PirarViolation {
    pub player: usize,
    pub action: usize,
    #[serde(with = "crate::rational::rat_serde")]
    pub conditional_value: Rational,
    #[serde(with = "crate::rational::rat_serde")]
    pub threshold: Rational,
}

/// First violation of strict individual rationality after a
/// recommendation: some player, told to play some positive-probability
/// action, conditionally expects no more than their [`pir`] level.
/// Scans players then actions in index order.
pub fn pirar_violation(game: &Game, behavior: &Behavior) -> Result<Option<PirarViolation>> {
    let joint = to_correlated(game, behavior)?;
    for player in 0..game.num_players() {
        let threshold = pir(game, player)?;
        let own = joint.marginal_self(player);
        for (action, mass) in own.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            let conditional = joint.condition(player, action)?;
            let value = game.payoff_against(player, action, &conditional);
            if value <= threshold {
                return Ok(Some(PirarViolation {
                    player,
                    action,
                    conditional_value: value,
                    threshold,
                }));
            }
        }
    }
    Ok(None)
}

/// Strict individual rationality after recommendations; see
/// [`pirar_violation`].
pub fn pirar_holds(game: &Game, behavior: &Behavior) -> Result<bool> {
    Ok(pirar_violation(game, behavior)?.is_none())
}

/// View any behavior as the joint distribution it induces.
pub fn to_correlated(game: &Game, behavior: &Behavior) -> Result<CorrelatedDistribution> {
    // surface shape errors through the evaluator's checks
    game.evaluate_payoff(behavior, 0)?;
    Ok(match behavior {
        Behavior::Pure(p) => CorrelatedDistribution::point_mass(game.action_counts(), p),
        Behavior::Mixed(m) => m.to_correlated(),
        Behavior::Correlated(x) => x.clone(),
    })
}

/// Point-mass helper used all over the tests and witness code.
pub fn pure_behavior(profile: Vec<usize>) -> Behavior {
    Behavior::Pure(PureProfile::new(profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;
    use crate::game::MixedProfile;
    use crate::rational::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn pir_of_fixtures() {
        let pd = classic::prisoners_dilemma();
        assert_eq!(pir_values(&pd), vec![rat(1), rat(1)]);
        assert_eq!(pir_with_action(&pd, 0).unwrap(), (rat(1), 1));

        let mp = classic::matching_pennies();
        assert_eq!(pir_values(&mp), vec![rat(-1), rat(-1)]);

        let co = classic::coordination();
        assert_eq!(pir_values(&co), vec![rat(0), rat(0)]);

        let sh = classic::stag_hunt();
        assert_eq!(pir_values(&sh), vec![rat(2), rat(2)]);
        assert_eq!(pir_with_action(&sh, 0).unwrap(), (rat(2), 1));

        let mv = classic::three_player_majority();
        assert_eq!(pir_values(&mv), vec![rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn cir_of_fixtures() {
        // defect still guarantees 1 against correlated punishment
        assert_eq!(
            cir_values(&classic::prisoners_dilemma()).unwrap(),
            vec![rat(1), rat(1)]
        );
        // mixing lifts the guarantee from -1 to the game value 0
        assert_eq!(
            cir_values(&classic::matching_pennies()).unwrap(),
            vec![rat(0), rat(0)]
        );
        // value of ((2,0),(0,1)) is 2/3; symmetric for player 2
        assert_eq!(
            cir_values(&classic::coordination()).unwrap(),
            vec![ratio(2, 3), ratio(2, 3)]
        );
        // hare is a saddle guarantee, mixing does not help
        assert_eq!(
            cir_values(&classic::stag_hunt()).unwrap(),
            vec![rat(2), rat(2)]
        );
        // uniform own mix earns 1/2 against the coalition's best split
        // between the two unanimous punishments
        assert_eq!(
            cir_values(&classic::three_player_majority()).unwrap(),
            vec![ratio(1, 2); 3]
        );
    }

    #[test]
    fn cir_punishment_is_optimal() {
        let mv = classic::three_player_majority();
        let sol = cir_solution(&mv, 0).unwrap();
        assert_eq!(sol.value, ratio(1, 2));
        // the coalition splits between the unanimous profiles (indices
        // 0 and 3 of the joint space {00,01,10,11})
        assert_eq!(sol.col_strategy[1], rat(0));
        assert_eq!(sol.col_strategy[2], rat(0));
        assert_eq!(&sol.col_strategy[0] + &sol.col_strategy[3], rat(1));
    }

    #[test]
    fn ir_is_cir_for_two_players_and_refuses_more() {
        let mp = classic::matching_pennies();
        assert_eq!(ir_values(&mp).unwrap(), cir_values(&mp).unwrap());
        assert!(matches!(
            ir_values(&classic::three_player_majority()),
            Err(Error::UnsupportedPlayerCount { .. })
        ));
        let bundle = rationality_values(&mp).unwrap();
        assert_eq!(bundle.ir, Some(vec![rat(0), rat(0)]));
        let bundle = rationality_values(&classic::three_player_majority()).unwrap();
        assert_eq!(bundle.ir, None);
    }

    #[test]
    fn mixing_beats_pure_guarantee_exactly_when_expected() {
        // pure guarantee 0, mixed guarantee 1/3
        let up = classic::unbalanced_pennies();
        assert_eq!(pir(&up, 0).unwrap(), rat(0));
        assert_eq!(cir(&up, 0).unwrap(), ratio(1, 3));
        assert_eq!(pir(&up, 1).unwrap(), ratio(-1, 2));
        assert_eq!(cir(&up, 1).unwrap(), ratio(-1, 3));
    }

    #[test]
    fn cir_never_below_pir_on_random_games() {
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        for _ in 0..20 {
            let shape = match rng.gen_range(0..3) {
                0 => vec![2, 2],
                1 => vec![3, 2],
                _ => vec![2, 2, 2],
            };
            let game =
                crate::game::Game::from_fn(shape, |_, _| rat(rng.gen_range(-4..=4))).unwrap();
            for player in 0..game.num_players() {
                assert!(cir(&game, player).unwrap() >= pir(&game, player).unwrap());
            }
        }
    }

    #[test]
    fn strict_pir_fails_exactly_at_the_threshold() {
        let pd = classic::prisoners_dilemma();
        // mutual defection pays exactly the punishment level
        let violation = pir_violation(&pd, &pure_behavior(vec![1, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(violation.player, 0);
        assert_eq!(violation.value, rat(1));
        assert_eq!(violation.threshold, rat(1));
        // mutual cooperation strictly beats it for both
        assert!(pir_holds(&pd, &pure_behavior(vec![0, 0])).unwrap());
    }

    #[test]
    fn pirar_on_correlated_support() {
        let pd = classic::prisoners_dilemma();
        let half_half = Behavior::Correlated(
            CorrelatedDistribution::from_pairs(
                pd.action_counts(),
                &[(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
            )
            .unwrap(),
        );
        // unconditionally both earn 2 > 1, so plain rationality holds
        assert!(pir_holds(&pd, &half_half).unwrap());
        // but told to defect, a player conditionally earns exactly 1
        let violation = pirar_violation(&pd, &half_half).unwrap().unwrap();
        assert_eq!((violation.player, violation.action), (0, 1));
        assert_eq!(violation.conditional_value, rat(1));
        assert_eq!(violation.threshold, rat(1));
    }

    #[test]
    fn pirar_holds_on_uniform_pennies() {
        let mp = classic::matching_pennies();
        let uniform = Behavior::Mixed(MixedProfile::uniform(mp.action_counts()));
        assert!(pir_holds(&mp, &uniform).unwrap());
        assert!(pirar_holds(&mp, &uniform).unwrap());
    }

    #[test]
    fn pirar_skips_zero_probability_recommendations() {
        let co = classic::coordination();
        // point mass on (0, 0): actions 1 never recommended
        let point = pure_behavior(vec![0, 0]);
        assert!(pirar_holds(&co, &point).unwrap());
        // payoffs (2, 1) strictly beat thresholds (0, 0)
        assert!(pir_holds(&co, &point).unwrap());
    }

    #[test]
    fn pure_behavior_pir_and_pirar_agree() {
        // conditioning a point mass changes nothing, so the two
        // predicates coincide on pure behaviors
        let games = [
            classic::prisoners_dilemma(),
            classic::coordination(),
            classic::stag_hunt(),
            classic::three_player_majority(),
        ];
        for game in &games {
            for profile in crate::game::profiles(game.action_counts()) {
                let b = pure_behavior(profile);
                assert_eq!(pir_holds(game, &b).unwrap(), pirar_holds(game, &b).unwrap());
            }
        }
    }
}
