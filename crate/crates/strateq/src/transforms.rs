//! Payoff-transfer games, the strategic-equivalence decision
//! procedure, and the four witness constructions that realize the
//! equivalence arguments as checkable certificates.
//!
//! The primitive transform is the z-game: player `i` receives amount
//! `c` exactly when the opponents play a fixed joint profile, no
//! matter what `i` does. Adding z-games never changes any player's
//! deviation incentives, so games reachable from one another by finite
//! sums of z-games are strategically equivalent. Reachability has a
//! closed form: `v` is reachable from `u` iff each player's payoff
//! difference depends only on the opponents' actions. The certificate
//! of equivalence is exactly that difference table.
//!
//! Each witness construction returns a [`WitnessCertificate`]: the
//! original game, the transformed game, the equivalence certificate
//! between them, and a list of exact inequalities that make the
//! intended conclusion checkable by anyone, with no trust in this
//! code.

use crate::equilibria::{check_nudi, is_strict_pne};
use crate::error::{Error, Result};
use crate::game::{
    add_games, compose_profile, opponent_counts, opponent_part, profile_count, profile_index,
    profiles, Behavior, Game, PureProfile,
};
use crate::rational::{format_rational, rat_mat_serde, rat_serde, strict_abs_bound, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A payoff transfer: `player` receives `amount` whenever the
/// opponents jointly play `opponents_profile`, regardless of own play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZGame {
    pub player: usize,
    pub opponents_profile: Vec<usize>,
    #[serde(with = "rat_serde")]
    pub amount: Rational,
    pub shape: Vec<usize>,
}

impl ZGame {
    /// The transfer as an ordinary game over its shape.
    pub fn materialize(&self) -> Result<Game> {
        make_z_game(
            self.amount.clone(),
            self.player,
            &self.opponents_profile,
            &self.shape,
        )
    }
}

/// Build the transfer game directly: player `i`'s tensor holds
/// `amount` at every profile whose opponent part equals
/// `opponents_profile`; everything else is zero.
pub fn make_z_game(
    amount: Rational,
    player: usize,
    opponents_profile: &[usize],
    shape: &[usize],
) -> Result<Game> {
    let probe = Game::zero(shape.to_vec())?;
    probe.check_player(player)?;
    let rest_counts = opponent_counts(shape, player);
    if opponents_profile.len() != rest_counts.len() {
        return Err(Error::ShapeMismatch {
            expected: rest_counts,
            found: opponents_profile.iter().map(|&a| a + 1).collect(),
        });
    }
    for (pos, (&action, &count)) in opponents_profile.iter().zip(&rest_counts).enumerate() {
        if action >= count {
            let j = if pos < player { pos } else { pos + 1 };
            return Err(Error::ActionOutOfRange {
                player: j,
                action,
                count,
            });
        }
    }
    Game::from_fn(shape.to_vec(), |j, profile| {
        if j == player && opponent_part(profile, player) == opponents_profile {
            amount.clone()
        } else {
            Rational::zero()
        }
    })
}

/// Add a batch of transfers to a game.
pub fn apply_z_games(game: &Game, transfers: &[ZGame]) -> Result<Game> {
    let mut out = game.clone();
    for z in transfers {
        out = add_games(&out, &z.materialize()?)?;
    }
    Ok(out)
}

/// Proof that two games differ only by opponent-determined transfers:
/// for each player `i`, `offsets[i]` maps the opponents' joint profile
/// (lexicographic index) to the payoff difference `v_i - u_i` there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    #[serde(with = "rat_mat_serde")]
    pub offsets: Vec<Vec<Rational>>,
}

impl EquivalenceCertificate {
    /// Exact recheck: the offset tables reproduce `v - u` everywhere.
    pub fn verify(&self, u: &Game, v: &Game) -> bool {
        if !u.same_shape(v) || self.offsets.len() != u.num_players() {
            return false;
        }
        for player in 0..u.num_players() {
            let rest_counts = opponent_counts(u.action_counts(), player);
            if self.offsets[player].len() != profile_count(&rest_counts) {
                return false;
            }
            for (idx, profile) in profiles(u.action_counts()).enumerate() {
                let rest = opponent_part(&profile, player);
                let expected = &self.offsets[player][profile_index(&rest_counts, &rest)];
                let actual = &v.payoff_tensor(player)[idx] - &u.payoff_tensor(player)[idx];
                if &actual != expected {
                    return false;
                }
            }
        }
        true
    }

    /// The all-zero certificate of a game with itself.
    pub fn zero(shape: &[usize]) -> Self {
        let offsets = (0..shape.len())
            .map(|player| vec![Rational::zero(); profile_count(&opponent_counts(shape, player))])
            .collect();
        EquivalenceCertificate { offsets }
    }
}

/// Outcome of the equivalence decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equivalence {
    Equivalent(EquivalenceCertificate),
    /// Two profiles differing only in `player`'s own action where the
    /// payoff difference `v - u` disagrees, refuting equivalence.
    NotEquivalent {
        player: usize,
        profile_a: PureProfile,
        profile_b: PureProfile,
        #[serde(with = "rat_serde")]
        difference_a: Rational,
        #[serde(with = "rat_serde")]
        difference_b: Rational,
    },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }

    pub fn certificate(self) -> Option<EquivalenceCertificate> {
        match self {
            Equivalence::Equivalent(cert) => Some(cert),
            Equivalence::NotEquivalent { .. } => None,
        }
    }
}

/// Decide whether `v` is reachable from `u` by finite transfer sums:
/// true exactly when each player's difference `v_i - u_i` is constant
/// along their own action for every fixed opponent profile. Returns
/// the difference table as a certificate, or a concrete refutation.
pub fn strategically_equivalent(u: &Game, v: &Game) -> Result<Equivalence> {
    u.check_same_shape(v)?;
    let mut offsets = Vec::with_capacity(u.num_players());
    for player in 0..u.num_players() {
        let own_count = u.action_counts()[player];
        let rest_counts = opponent_counts(u.action_counts(), player);
        let mut table = Vec::with_capacity(profile_count(&rest_counts));
        for rest in profiles(&rest_counts) {
            let base = compose_profile(player, 0, &rest);
            let offset = v.payoff(player, &base) - u.payoff(player, &base);
            for action in 1..own_count {
                let other = compose_profile(player, action, &rest);
                let diff = v.payoff(player, &other) - u.payoff(player, &other);
                if diff != offset {
                    return Ok(Equivalence::NotEquivalent {
                        player,
                        profile_a: PureProfile::new(base),
                        profile_b: PureProfile::new(other),
                        difference_a: offset,
                        difference_b: diff,
                    });
                }
            }
            table.push(offset);
        }
        offsets.push(table);
    }
    Ok(Equivalence::Equivalent(EquivalenceCertificate { offsets }))
}

/// Comparison recorded in a certificate inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Eq => "=",
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
        })
    }
}

/// One exact, independently checkable inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedInequality {
    pub description: String,
    #[serde(with = "rat_serde")]
    pub lhs: Rational,
    pub relation: Comparison,
    #[serde(with = "rat_serde")]
    pub rhs: Rational,
}

impl CheckedInequality {
    pub fn new(
        description: impl Into<String>,
        lhs: Rational,
        relation: Comparison,
        rhs: Rational,
    ) -> Self {
        CheckedInequality {
            description: description.into(),
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Comparison::Lt => self.lhs < self.rhs,
            Comparison::Le => self.lhs <= self.rhs,
            Comparison::Eq => self.lhs == self.rhs,
            Comparison::Ge => self.lhs >= self.rhs,
            Comparison::Gt => self.lhs > self.rhs,
        }
    }
}

impl std::fmt::Display for CheckedInequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} {} {}",
            self.description,
            format_rational(&self.lhs),
            self.relation,
            format_rational(&self.rhs)
        )
    }
}

/// A transformed game plus everything needed to recheck the claim it
/// was built to demonstrate: the equivalence table back to the
/// original and the exact inequalities of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub original: Game,
    pub transformed: Game,
    pub equivalence: EquivalenceCertificate,
    pub checked_inequalities: Vec<CheckedInequality>,
}

impl WitnessCertificate {
    /// Self-validation: the equivalence table reproduces
    /// `transformed - original` exactly and every recorded inequality
    /// holds. Returns the first failure as an error message.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if !self.equivalence.verify(&self.original, &self.transformed) {
            return Err("equivalence offsets do not reproduce the payoff difference".into());
        }
        for ineq in &self.checked_inequalities {
            if !ineq.holds() {
                return Err(format!("inequality failed: {ineq}"));
            }
        }
        Ok(())
    }
}

fn certified(original: &Game, transformed: Game) -> (Game, EquivalenceCertificate) {
    let equivalence = strategically_equivalent(original, &transformed)
        .expect("constructions preserve shape")
        .certificate()
        .expect("transfer sums are always equivalent");
    (transformed, equivalence)
}

/// Witness that a behavior with a profitable unilateral deviation
/// cannot be individually rational in every equivalent game.
///
/// Premise: player `i` strictly gains by deviating from `x` to the
/// pure action `deviation`. The construction zeroes player `i`'s
/// payoffs along that action's row by opponent-determined transfers.
/// In the transformed game the deviation row guarantees 0, so the pure
/// punishment level is at least 0, while the behavior's expected
/// payoff drops strictly below 0.
pub fn pir_violation_witness(
    game: &Game,
    behavior: &Behavior,
    player: usize,
    deviation: usize,
) -> Result<WitnessCertificate> {
    game.check_player(player)?;
    let current = game.evaluate_payoff(behavior, player)?;
    if deviation >= game.action_counts()[player] {
        return Err(Error::ActionOutOfRange {
            player,
            action: deviation,
            count: game.action_counts()[player],
        });
    }
    let others = behavior.opponents_marginal(game.action_counts(), player);
    let deviated = game.payoff_against(player, deviation, &others);
    if deviated <= current {
        return Err(Error::PreconditionNotMet(format!(
            "deviating to action {deviation} yields {} against {}, not a strict improvement",
            format_rational(&deviated),
            format_rational(&current),
        )));
    }

    let rest_counts = opponent_counts(game.action_counts(), player);
    let transformed = subtract_own_row(game, player, deviation);
    let (transformed, equivalence) = certified(game, transformed);

    let mut checked_inequalities = Vec::new();
    for rest in profiles(&rest_counts) {
        let full = compose_profile(player, deviation, &rest);
        checked_inequalities.push(CheckedInequality::new(
            format!(
                "transformed payoff of player {} on the zeroed action {} at opponents {:?}",
                player + 1,
                deviation + 1,
                one_based(&rest)
            ),
            transformed.payoff(player, &full).clone(),
            Comparison::Eq,
            Rational::zero(),
        ));
    }
    let guarantee = crate::rationality::pir(&transformed, player)?;
    checked_inequalities.push(CheckedInequality::new(
        format!(
            "pure punishment level of player {} in the transformed game",
            player + 1
        ),
        guarantee,
        Comparison::Ge,
        Rational::zero(),
    ));
    let transformed_value = transformed.evaluate_payoff(behavior, player)?;
    checked_inequalities.push(CheckedInequality::new(
        format!(
            "expected payoff of player {} under the behavior in the transformed game",
            player + 1
        ),
        transformed_value,
        Comparison::Lt,
        Rational::zero(),
    ));

    let cert = WitnessCertificate {
        original: game.clone(),
        transformed,
        equivalence,
        checked_inequalities,
    };
    debug_assert_eq!(cert.verify(), Ok(()));
    Ok(cert)
}

/// Witness that a recommendation a player would rather disobey cannot
/// stay conditionally rational in every equivalent game.
///
/// Premise: the joint distribution recommends `recommended` to player
/// `i` with positive probability, and conditionally on that,
/// deviating to `deviation` strictly improves. Zeroing the deviation
/// row makes the pure punishment level at least 0 while obedience
/// conditionally pays strictly below 0.
pub fn pirar_violation_witness(
    game: &Game,
    x: &crate::game::CorrelatedDistribution,
    player: usize,
    recommended: usize,
    deviation: usize,
) -> Result<WitnessCertificate> {
    game.check_player(player)?;
    if x.action_counts() != game.action_counts() {
        return Err(Error::ShapeMismatch {
            expected: game.action_counts().to_vec(),
            found: x.action_counts().to_vec(),
        });
    }
    let own_count = game.action_counts()[player];
    for action in [recommended, deviation] {
        if action >= own_count {
            return Err(Error::ActionOutOfRange {
                player,
                action,
                count: own_count,
            });
        }
    }
    let conditional = x.condition(player, recommended)?;
    let obey = game.payoff_against(player, recommended, &conditional);
    let disobey = game.payoff_against(player, deviation, &conditional);
    if disobey <= obey {
        return Err(Error::PreconditionNotMet(format!(
            "conditionally on recommendation {}, deviating to {} yields {} against {}, \
             not a strict improvement",
            recommended + 1,
            deviation + 1,
            format_rational(&disobey),
            format_rational(&obey),
        )));
    }

    let transformed = subtract_own_row(game, player, deviation);
    let (transformed, equivalence) = certified(game, transformed);

    let mut checked_inequalities = Vec::new();
    let guarantee = crate::rationality::pir(&transformed, player)?;
    checked_inequalities.push(CheckedInequality::new(
        format!(
            "pure punishment level of player {} in the transformed game",
            player + 1
        ),
        guarantee,
        Comparison::Ge,
        Rational::zero(),
    ));
    let conditional_value = transformed.payoff_against(player, recommended, &conditional);
    checked_inequalities.push(CheckedInequality::new(
        format!(
            "conditional payoff of player {} obeying recommendation {} in the transformed game",
            player + 1,
            recommended + 1
        ),
        conditional_value,
        Comparison::Lt,
        Rational::zero(),
    ));

    let cert = WitnessCertificate {
        original: game.clone(),
        transformed,
        equivalence,
        checked_inequalities,
    };
    debug_assert_eq!(cert.verify(), Ok(()));
    Ok(cert)
}

/// Elevate a pure equilibrium to a weak simultaneous maximizer of an
/// equivalent game by paying every player a large bonus whenever their
/// opponents stand at the equilibrium.
///
/// With `L` strictly above every payoff magnitude and a transfer of
/// `2L` per player, the equilibrium profile beats same-opponent
/// profiles because it already did, and beats the rest because they
/// missed the bonus: its payoff exceeds `L` while theirs stay below.
pub fn sm_elevation(game: &Game, target: &PureProfile) -> Result<WitnessCertificate> {
    game.check_profile(&target.actions)?;
    let behavior = Behavior::Pure(target.clone());
    if !check_nudi(game, &behavior)?.holds {
        return Err(Error::NotAPureNashEquilibrium {
            profile: target.actions.clone(),
        });
    }
    let bound =
        strict_abs_bound((0..game.num_players()).flat_map(|i| game.payoff_tensor(i).iter()));
    let bonus = Rational::from_integer(2.into()) * &bound;
    let transformed = bonus_at_profile(game, target, &bonus);
    let (transformed, equivalence) = certified(game, transformed);

    let mut checked_inequalities = Vec::new();
    for player in 0..game.num_players() {
        let at_target = transformed.payoff(player, &target.actions).clone();
        let target_rest = opponent_part(&target.actions, player);
        for profile in profiles(game.action_counts()) {
            if profile == target.actions {
                continue;
            }
            let there = transformed.payoff(player, &profile).clone();
            if opponent_part(&profile, player) == target_rest {
                checked_inequalities.push(CheckedInequality::new(
                    format!(
                        "player {} at the elevated profile vs own deviation to {:?}",
                        player + 1,
                        one_based(&profile)
                    ),
                    at_target.clone(),
                    Comparison::Ge,
                    there,
                ));
            } else {
                checked_inequalities.push(CheckedInequality::new(
                    format!(
                        "player {} elevated payoff clears the bound {}",
                        player + 1,
                        format_rational(&bound)
                    ),
                    at_target.clone(),
                    Comparison::Ge,
                    bound.clone(),
                ));
                checked_inequalities.push(CheckedInequality::new(
                    format!(
                        "the bound {} clears player {} at unelevated {:?}",
                        format_rational(&bound),
                        player + 1,
                        one_based(&profile)
                    ),
                    bound.clone(),
                    Comparison::Ge,
                    there,
                ));
            }
        }
    }

    let cert = WitnessCertificate {
        original: game.clone(),
        transformed,
        equivalence,
        checked_inequalities,
    };
    debug_assert_eq!(cert.verify(), Ok(()));
    Ok(cert)
}

/// From two distinct strict pure equilibria, build two equivalent
/// games whose unique strict simultaneous maximizers differ: one
/// elevates each equilibrium with a transfer of `3L`.
///
/// Any solution that both respects equivalence and selects exactly the
/// strict maximizer would have to output two different singletons on
/// the same equivalence class, which is impossible; the pair of
/// certificates is that impossibility made concrete.
pub fn usm_contradiction(
    game: &Game,
    first: &PureProfile,
    second: &PureProfile,
) -> Result<(WitnessCertificate, WitnessCertificate)> {
    game.check_profile(&first.actions)?;
    game.check_profile(&second.actions)?;
    if first == second {
        return Err(Error::ProfilesEqual);
    }
    for profile in [first, second] {
        if !is_strict_pne(game, profile)? {
            return Err(Error::NotStrictPne {
                profile: profile.actions.clone(),
            });
        }
    }
    let bound =
        strict_abs_bound((0..game.num_players()).flat_map(|i| game.payoff_tensor(i).iter()));
    let bonus = Rational::from_integer(3.into()) * &bound;
    let make = |target: &PureProfile| -> Result<WitnessCertificate> {
        let transformed = bonus_at_profile(game, target, &bonus);
        let (transformed, equivalence) = certified(game, transformed);
        let mut checked_inequalities = Vec::new();
        for player in 0..game.num_players() {
            let at_target = transformed.payoff(player, &target.actions).clone();
            for profile in profiles(game.action_counts()) {
                if profile == target.actions {
                    continue;
                }
                checked_inequalities.push(CheckedInequality::new(
                    format!(
                        "player {} strictly prefers the elevated profile to {:?}",
                        player + 1,
                        one_based(&profile)
                    ),
                    at_target.clone(),
                    Comparison::Gt,
                    transformed.payoff(player, &profile).clone(),
                ));
            }
        }
        let cert = WitnessCertificate {
            original: game.clone(),
            transformed,
            equivalence,
            checked_inequalities,
        };
        debug_assert_eq!(cert.verify(), Ok(()));
        Ok(cert)
    };
    Ok((make(first)?, make(second)?))
}

/// `v_i(c, rest) = u_i(c, rest) - u_i(row, rest)`: transfer, at every
/// opponent profile, the negative of player `i`'s payoff on `row`.
fn subtract_own_row(game: &Game, player: usize, row: usize) -> Game {
    Game::from_fn(game.action_counts().to_vec(), |j, profile| {
        if j != player {
            return game.payoff(j, profile).clone();
        }
        let rest = opponent_part(profile, player);
        let anchor = compose_profile(player, row, &rest);
        game.payoff(j, profile) - game.payoff(player, &anchor)
    })
    .expect("shape preserved")
}

/// Pay every player `bonus` whenever their opponents stand at the
/// target profile (the sum of one z-game per player).
fn bonus_at_profile(game: &Game, target: &PureProfile, bonus: &Rational) -> Game {
    Game::from_fn(game.action_counts().to_vec(), |player, profile| {
        let base = game.payoff(player, profile).clone();
        if opponent_part(profile, player) == opponent_part(&target.actions, player) {
            base + bonus
        } else {
            base
        }
    })
    .expect("shape preserved")
}

fn one_based(profile: &[usize]) -> Vec<usize> {
    profile.iter().map(|&a| a + 1).collect()
}
