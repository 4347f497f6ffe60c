//! Finite normal-form games and the three behavior kinds, with exact
//! marginal/conditional algebra and multilinear payoff evaluation.
//!
//! A [`Game`] stores one dense payoff tensor per player over the joint
//! action space, in lexicographic profile order with the last player's
//! index varying fastest. Behaviors come in three kinds, a pure
//! profile, a product of per-player mixed strategies, or a joint
//! correlated distribution, and [`Game::evaluate_payoff`] extends the
//! payoff functions multilinearly over all of them.

use crate::error::{Error, Result};
use crate::rational::{rat_mat_serde, rat_vec_serde, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Iterate all action profiles of a shape in lexicographic order
/// (last player's index varies fastest).
pub fn profiles(action_counts: &[usize]) -> ProfileIter {
    ProfileIter {
        counts: action_counts.to_vec(),
        next: if action_counts.iter().any(|&c| c == 0) {
            None
        } else {
            Some(vec![0; action_counts.len()])
        },
    }
}

/// Odometer over a product of index ranges.
pub struct ProfileIter {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bump = current.clone();
        let mut pos = self.counts.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            bump[pos] += 1;
            if bump[pos] < self.counts[pos] {
                self.next = Some(bump);
                break;
            }
            bump[pos] = 0;
        }
        Some(current)
    }
}

/// Number of joint profiles of a shape.
pub fn profile_count(action_counts: &[usize]) -> usize {
    action_counts.iter().product()
}

/// Lexicographic index of a profile (last index fastest).
pub fn profile_index(action_counts: &[usize], actions: &[usize]) -> usize {
    debug_assert_eq!(action_counts.len(), actions.len());
    let mut idx = 0;
    for (a, c) in actions.iter().zip(action_counts) {
        debug_assert!(a < c);
        idx = idx * c + a;
    }
    idx
}

/// Inverse of [`profile_index`].
pub fn profile_from_index(action_counts: &[usize], mut index: usize) -> Vec<usize> {
    let mut actions = vec![0; action_counts.len()];
    for pos in (0..action_counts.len()).rev() {
        actions[pos] = index % action_counts[pos];
        index /= action_counts[pos];
    }
    actions
}

/// Action counts of everyone but `player`, preserving player order.
pub fn opponent_counts(action_counts: &[usize], player: usize) -> Vec<usize> {
    let mut counts = action_counts.to_vec();
    counts.remove(player);
    counts
}

/// Drop `player`'s coordinate from a full profile.
pub fn opponent_part(profile: &[usize], player: usize) -> Vec<usize> {
    let mut rest = profile.to_vec();
    rest.remove(player);
    rest
}

/// Rebuild a full profile from `player`'s action and the others' profile.
pub fn compose_profile(player: usize, action: usize, others: &[usize]) -> Vec<usize> {
    let mut full = others.to_vec();
    full.insert(player, action);
    full
}

/// A joint pure action profile, one action index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PureProfile {
    pub actions: Vec<usize>,
}

impl PureProfile {
    pub fn new(actions: Vec<usize>) -> Self {
        PureProfile { actions }
    }
}

impl From<Vec<usize>> for PureProfile {
    fn from(actions: Vec<usize>) -> Self {
        PureProfile { actions }
    }
}

/// One exact probability distribution per player over that player's
/// actions. Wraps the invariant: entries nonnegative, each summing to 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MixedProfile {
    #[serde(with = "rat_mat_serde")]
    per_player: Vec<Vec<Rational>>,
}

impl MixedProfile {
    pub fn new(per_player: Vec<Vec<Rational>>) -> Result<Self> {
        for (player, dist) in per_player.iter().enumerate() {
            validate_distribution(dist)
                .map_err(|m| Error::InvalidDistribution(format!("player {player}: {m}")))?;
        }
        Ok(MixedProfile { per_player })
    }

    /// Degenerate mixed profile playing `profile` with probability 1.
    pub fn pure(action_counts: &[usize], profile: &PureProfile) -> Self {
        let per_player = action_counts
            .iter()
            .zip(&profile.actions)
            .map(|(&count, &action)| {
                let mut dist = vec![Rational::zero(); count];
                dist[action] = Rational::one();
                dist
            })
            .collect();
        MixedProfile { per_player }
    }

    pub fn uniform(action_counts: &[usize]) -> Self {
        let per_player = action_counts
            .iter()
            .map(|&count| vec![Rational::new(1.into(), (count as i64).into()); count])
            .collect();
        MixedProfile { per_player }
    }

    pub fn num_players(&self) -> usize {
        self.per_player.len()
    }

    pub fn strategy(&self, player: usize) -> &[Rational] {
        &self.per_player[player]
    }

    pub fn strategies(&self) -> &[Vec<Rational>] {
        &self.per_player
    }

    pub fn action_counts(&self) -> Vec<usize> {
        self.per_player.iter().map(Vec::len).collect()
    }

    /// The induced product distribution over joint profiles.
    pub fn to_correlated(&self) -> CorrelatedDistribution {
        let counts = self.action_counts();
        let mut weights = Vec::with_capacity(profile_count(&counts));
        for profile in profiles(&counts) {
            let mut w = Rational::one();
            for (player, &action) in profile.iter().enumerate() {
                w *= &self.per_player[player][action];
            }
            weights.push(w);
        }
        CorrelatedDistribution {
            action_counts: counts,
            weights,
        }
    }
}

/// An exact joint distribution over the full profile space, stored
/// densely in lexicographic profile order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CorrelatedDistribution {
    action_counts: Vec<usize>,
    #[serde(with = "rat_vec_serde")]
    weights: Vec<Rational>,
}

impl CorrelatedDistribution {
    pub fn new(action_counts: Vec<usize>, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != profile_count(&action_counts) {
            return Err(Error::InvalidDistribution(format!(
                "expected {} weights for shape {:?}, got {}",
                profile_count(&action_counts),
                action_counts,
                weights.len()
            )));
        }
        validate_distribution(&weights).map_err(Error::InvalidDistribution)?;
        Ok(CorrelatedDistribution {
            action_counts,
            weights,
        })
    }

    /// Point mass on a single profile.
    pub fn point_mass(action_counts: &[usize], profile: &PureProfile) -> Self {
        let mut weights = vec![Rational::zero(); profile_count(action_counts)];
        weights[profile_index(action_counts, &profile.actions)] = Rational::one();
        CorrelatedDistribution {
            action_counts: action_counts.to_vec(),
            weights,
        }
    }

    pub fn uniform(action_counts: &[usize]) -> Self {
        let total = profile_count(action_counts);
        CorrelatedDistribution {
            action_counts: action_counts.to_vec(),
            weights: vec![Rational::new(1.into(), (total as i64).into()); total],
        }
    }

    /// Build from sparse `(profile, weight)` pairs; unlisted profiles get 0.
    pub fn from_pairs(action_counts: &[usize], pairs: &[(Vec<usize>, Rational)]) -> Result<Self> {
        let mut weights = vec![Rational::zero(); profile_count(action_counts)];
        for (profile, weight) in pairs {
            weights[profile_index(action_counts, profile)] += weight;
        }
        CorrelatedDistribution::new(action_counts.to_vec(), weights)
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, profile: &[usize]) -> &Rational {
        &self.weights[profile_index(&self.action_counts, profile)]
    }

    /// Marginal distribution of `player`'s own action.
    pub fn marginal_self(&self, player: usize) -> Vec<Rational> {
        let mut marginal = vec![Rational::zero(); self.action_counts[player]];
        for (idx, profile) in profiles(&self.action_counts).enumerate() {
            marginal[profile[player]] += &self.weights[idx];
        }
        marginal
    }

    /// Marginal distribution over the opponents' joint actions, in
    /// lexicographic order over [`opponent_counts`].
    pub fn marginal_others(&self, player: usize) -> Vec<Rational> {
        let rest_counts = opponent_counts(&self.action_counts, player);
        let mut marginal = vec![Rational::zero(); profile_count(&rest_counts)];
        for (idx, profile) in profiles(&self.action_counts).enumerate() {
            let rest = opponent_part(&profile, player);
            marginal[profile_index(&rest_counts, &rest)] += &self.weights[idx];
        }
        marginal
    }

    /// Conditional distribution over the opponents' joint actions given
    /// that `player` was told to play `action`. Defined only when that
    /// event has positive probability.
    pub fn condition(&self, player: usize, action: usize) -> Result<Vec<Rational>> {
        let mass: Rational = {
            let mut m = Rational::zero();
            for (idx, profile) in profiles(&self.action_counts).enumerate() {
                if profile[player] == action {
                    m += &self.weights[idx];
                }
            }
            m
        };
        if mass.is_zero() {
            return Err(Error::ZeroProbabilityCondition { player, action });
        }
        let rest_counts = opponent_counts(&self.action_counts, player);
        let mut conditional = vec![Rational::zero(); profile_count(&rest_counts)];
        for (idx, profile) in profiles(&self.action_counts).enumerate() {
            if profile[player] == action {
                let rest = opponent_part(&profile, player);
                conditional[profile_index(&rest_counts, &rest)] += &self.weights[idx] / &mass;
            }
        }
        Ok(conditional)
    }
}

fn validate_distribution(weights: &[Rational]) -> std::result::Result<(), String> {
    if weights.is_empty() {
        return Err("empty distribution".into());
    }
    let mut total = Rational::zero();
    for (idx, w) in weights.iter().enumerate() {
        if w < &Rational::zero() {
            return Err(format!("negative weight at index {idx}"));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(format!(
            "weights sum to {}, expected 1",
            crate::rational::format_rational(&total)
        ));
    }
    Ok(())
}

/// A behavior in a game: the object a solution map outputs and the
/// axioms quantify over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Behavior {
    Pure(PureProfile),
    Mixed(MixedProfile),
    Correlated(CorrelatedDistribution),
}

/// The three behavior models a solution map can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BehaviorKind {
    Pure,
    Mixed,
    Correlated,
}

impl std::fmt::Display for BehaviorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BehaviorKind::Pure => "pure",
            BehaviorKind::Mixed => "mixed",
            BehaviorKind::Correlated => "correlated",
        })
    }
}

impl Behavior {
    pub fn kind(&self) -> BehaviorKind {
        match self {
            Behavior::Pure(_) => BehaviorKind::Pure,
            Behavior::Mixed(_) => BehaviorKind::Mixed,
            Behavior::Correlated(_) => BehaviorKind::Correlated,
        }
    }

    /// Marginal distribution of the opponents' joint play under this
    /// behavior, the reference point for unilateral deviations.
    pub fn opponents_marginal(&self, action_counts: &[usize], player: usize) -> Vec<Rational> {
        match self {
            Behavior::Pure(p) => {
                let rest_counts = opponent_counts(action_counts, player);
                let rest = opponent_part(&p.actions, player);
                let mut dist = vec![Rational::zero(); profile_count(&rest_counts)];
                dist[profile_index(&rest_counts, &rest)] = Rational::one();
                dist
            }
            Behavior::Mixed(m) => {
                let rest_counts = opponent_counts(action_counts, player);
                let mut dist = Vec::with_capacity(profile_count(&rest_counts));
                for rest in profiles(&rest_counts) {
                    let mut w = Rational::one();
                    let mut strategy_idx = 0;
                    for (j, &count) in action_counts.iter().enumerate() {
                        if j == player {
                            continue;
                        }
                        debug_assert_eq!(m.strategy(j).len(), count);
                        w *= &m.strategy(j)[rest[strategy_idx]];
                        strategy_idx += 1;
                    }
                    dist.push(w);
                }
                dist
            }
            Behavior::Correlated(x) => x.marginal_others(player),
        }
    }
}

/// A finite normal-form game: one exact payoff tensor per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Game {
    action_counts: Vec<usize>,
    #[serde(with = "rat_mat_serde")]
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    /// Build a game from its action counts and per-player payoff
    /// tensors in lexicographic profile order (last index fastest).
    pub fn new(action_counts: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if action_counts.is_empty() {
            return Err(Error::InvalidGame(
                "a game needs at least one player".into(),
            ));
        }
        if let Some(player) = action_counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidGame(format!(
                "player {player} has no actions"
            )));
        }
        if payoffs.len() != action_counts.len() {
            return Err(Error::InvalidGame(format!(
                "{} payoff tensors for {} players",
                payoffs.len(),
                action_counts.len()
            )));
        }
        let expected = profile_count(&action_counts);
        for (player, tensor) in payoffs.iter().enumerate() {
            if tensor.len() != expected {
                return Err(Error::InvalidGame(format!(
                    "player {player} has {} payoff entries, expected {expected}",
                    tensor.len()
                )));
            }
        }
        Ok(Game {
            action_counts,
            payoffs,
        })
    }

    /// Build a game by evaluating `payoff(player, profile)` everywhere.
    pub fn from_fn(
        action_counts: Vec<usize>,
        mut payoff: impl FnMut(usize, &[usize]) -> Rational,
    ) -> Result<Self> {
        let num_players = action_counts.len();
        let mut tensors = vec![Vec::with_capacity(profile_count(&action_counts)); num_players];
        for profile in profiles(&action_counts) {
            for (player, tensor) in tensors.iter_mut().enumerate() {
                tensor.push(payoff(player, &profile));
            }
        }
        Game::new(action_counts, tensors)
    }

    /// The all-zero game of a shape.
    pub fn zero(action_counts: Vec<usize>) -> Result<Self> {
        let total = profile_count(&action_counts);
        let players = action_counts.len();
        Game::new(action_counts, vec![vec![Rational::zero(); total]; players])
    }

    /// Two-player game from row-major payoff matrices
    /// (rows: player 1's actions, columns: player 2's actions).
    pub fn bimatrix(rows: Vec<Vec<Rational>>, cols: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        let k = rows.first().map(Vec::len).unwrap_or(0);
        if cols.len() != m || cols.iter().chain(rows.iter()).any(|r| r.len() != k) {
            return Err(Error::InvalidGame(
                "bimatrix payoff matrices must have identical rectangular shape".into(),
            ));
        }
        let u1 = rows.into_iter().flatten().collect();
        let u2 = cols.into_iter().flatten().collect();
        Game::new(vec![m, k], vec![u1, u2])
    }

    pub fn num_players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn num_profiles(&self) -> usize {
        profile_count(&self.action_counts)
    }

    /// All payoff entries of one player, lexicographic profile order.
    pub fn payoff_tensor(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[player][profile_index(&self.action_counts, profile)]
    }

    pub fn same_shape(&self, other: &Game) -> bool {
        self.action_counts == other.action_counts
    }

    pub fn check_same_shape(&self, other: &Game) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: self.action_counts.clone(),
                found: other.action_counts.clone(),
            })
        }
    }

    pub fn check_player(&self, player: usize) -> Result<()> {
        if player < self.num_players() {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange {
                player,
                num_players: self.num_players(),
            })
        }
    }

    pub fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.num_players() {
            return Err(Error::ShapeMismatch {
                expected: self.action_counts.clone(),
                found: profile.iter().map(|&a| a + 1).collect(),
            });
        }
        for (player, (&action, &count)) in profile.iter().zip(&self.action_counts).enumerate() {
            if action >= count {
                return Err(Error::ActionOutOfRange {
                    player,
                    action,
                    count,
                });
            }
        }
        Ok(())
    }

    fn check_behavior_shape(&self, behavior: &Behavior) -> Result<()> {
        let ok = match behavior {
            Behavior::Pure(p) => {
                self.check_profile(&p.actions)?;
                true
            }
            Behavior::Mixed(m) => m.action_counts() == self.action_counts,
            Behavior::Correlated(x) => x.action_counts() == self.action_counts,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: self.action_counts.clone(),
                found: match behavior {
                    Behavior::Mixed(m) => m.action_counts(),
                    Behavior::Correlated(x) => x.action_counts().to_vec(),
                    Behavior::Pure(_) => unreachable!(),
                },
            })
        }
    }

    /// Expected payoff of `player` under a behavior: a tensor lookup
    /// for pure profiles, the multilinear extension for mixed profiles,
    /// and the weighted sum for correlated distributions.
    pub fn evaluate_payoff(&self, behavior: &Behavior, player: usize) -> Result<Rational> {
        self.check_player(player)?;
        self.check_behavior_shape(behavior)?;
        Ok(match behavior {
            Behavior::Pure(p) => self.payoff(player, &p.actions).clone(),
            Behavior::Mixed(m) => {
                let mut total = Rational::zero();
                for (idx, profile) in profiles(&self.action_counts).enumerate() {
                    if self.payoffs[player][idx].is_zero() {
                        continue;
                    }
                    let mut w = Rational::one();
                    for (j, &action) in profile.iter().enumerate() {
                        if w.is_zero() {
                            break;
                        }
                        w *= &m.strategy(j)[action];
                    }
                    total += w * &self.payoffs[player][idx];
                }
                total
            }
            Behavior::Correlated(x) => {
                let mut total = Rational::zero();
                for (idx, w) in x.weights().iter().enumerate() {
                    if !w.is_zero() {
                        total += w * &self.payoffs[player][idx];
                    }
                }
                total
            }
        })
    }

    /// Expected payoff of `player` when they deviate to the pure action
    /// `action` while everyone else keeps playing their marginal of
    /// `behavior`. This is the right-hand side of every unilateral
    /// deviation comparison.
    pub fn deviation_payoff(
        &self,
        behavior: &Behavior,
        player: usize,
        action: usize,
    ) -> Result<Rational> {
        self.check_player(player)?;
        self.check_behavior_shape(behavior)?;
        if action >= self.action_counts[player] {
            return Err(Error::ActionOutOfRange {
                player,
                action,
                count: self.action_counts[player],
            });
        }
        let others = behavior.opponents_marginal(&self.action_counts, player);
        Ok(self.payoff_against(player, action, &others))
    }

    /// Expected payoff of playing `action` against a distribution over
    /// the opponents' joint profiles (lexicographic order).
    pub fn payoff_against(&self, player: usize, action: usize, others: &[Rational]) -> Rational {
        let rest_counts = opponent_counts(&self.action_counts, player);
        let mut total = Rational::zero();
        for (rest_idx, rest) in profiles(&rest_counts).enumerate() {
            if others[rest_idx].is_zero() {
                continue;
            }
            let full = compose_profile(player, action, &rest);
            total += &others[rest_idx] * self.payoff(player, &full);
        }
        total
    }
}

/// Entrywise sum of two games over the same action space.
pub fn add_games(u: &Game, v: &Game) -> Result<Game> {
    u.check_same_shape(v)?;
    let payoffs = u
        .payoffs
        .iter()
        .zip(&v.payoffs)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    Game::new(u.action_counts.clone(), payoffs)
}
