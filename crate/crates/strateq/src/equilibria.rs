//! Equilibrium membership tests, pure-equilibrium and two-player
//! mixed-equilibrium enumeration, equilibrium-polytope optimization,
//! and simultaneous-maximizer detection.
//!
//! Every test here reduces to the same primitive: no unilateral
//! deviation improvement. A pure profile passing it is a pure Nash
//! equilibrium, a product distribution an equilibrium, a joint
//! distribution a coarse-correlated equilibrium; the correlated
//! equilibrium refines it by testing each recommendation
//! conditionally. All comparisons are exact.

use crate::error::{Error, Result};
use crate::game::{
    compose_profile, opponent_counts, opponent_part, profile_index, profiles, Behavior,
    CorrelatedDistribution, Game, MixedProfile, PureProfile,
};
use crate::lp::{LinearProgram, LinearSolution, Relation};
use crate::rational::{rat_serde, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One profitable unilateral deviation. `recommendation` is set only
/// by the conditional (correlated-equilibrium) check and names the
/// recommended action being abandoned; `gain` is the exact payoff
/// improvement, mass-weighted in the conditional case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub player: usize,
    pub recommendation: Option<usize>,
    pub action: usize,
    #[serde(with = "rat_serde")]
    pub gain: Rational,
}

/// Outcome of a deviation scan: `holds` iff no profitable deviation
/// exists; `violations` lists every one found, players then actions in
/// index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub holds: bool,
    pub violations: Vec<Deviation>,
}

impl DeviationReport {
    fn from_violations(violations: Vec<Deviation>) -> Self {
        DeviationReport {
            holds: violations.is_empty(),
            violations,
        }
    }

    /// The first violation in scan order, if any.
    pub fn first(&self) -> Option<&Deviation> {
        self.violations.first()
    }
}

/// Scan for unilateral deviation improvements: for every player `i`
/// and pure action `b_i`, compare `u_i(b_i, x_{-i})` against `u_i(x)`.
/// Pure deviations suffice for mixed ones by multilinearity.
pub fn check_nudi(game: &Game, behavior: &Behavior) -> Result<DeviationReport> {
    let mut violations = Vec::new();
    for player in 0..game.num_players() {
        let current = game.evaluate_payoff(behavior, player)?;
        let others = behavior.opponents_marginal(game.action_counts(), player);
        for action in 0..game.action_counts()[player] {
            let deviated = game.payoff_against(player, action, &others);
            if deviated > current {
                violations.push(Deviation {
                    player,
                    recommendation: None,
                    action,
                    gain: deviated - &current,
                });
            }
        }
    }
    Ok(DeviationReport::from_violations(violations))
}

/// All pure Nash equilibria, in lexicographic profile order.
pub fn enumerate_pne(game: &Game) -> Vec<PureProfile> {
    profiles(game.action_counts())
        .filter(|profile| {
            let behavior = Behavior::Pure(PureProfile::new(profile.clone()));
            check_nudi(game, &behavior)
                .expect("enumerated profiles are always in range")
                .holds
        })
        .map(PureProfile::new)
        .collect()
}

/// Whether every unilateral deviation from `profile` strictly loses.
pub fn is_strict_pne(game: &Game, profile: &PureProfile) -> Result<bool> {
    game.check_profile(&profile.actions)?;
    let own = profile.actions.clone();
    for player in 0..game.num_players() {
        let current = game.payoff(player, &own);
        for action in 0..game.action_counts()[player] {
            if action == own[player] {
                continue;
            }
            let mut deviated = own.clone();
            deviated[player] = action;
            if game.payoff(player, &deviated) >= current {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nash-equilibrium test for a product of mixed strategies.
pub fn is_ne(game: &Game, profile: &MixedProfile) -> Result<DeviationReport> {
    check_nudi(game, &Behavior::Mixed(profile.clone()))
}

/// Coarse-correlated-equilibrium test: no player prefers abandoning
/// the device for a fixed pure action before seeing anything.
pub fn is_cce(game: &Game, x: &CorrelatedDistribution) -> Result<DeviationReport> {
    check_nudi(game, &Behavior::Correlated(x.clone()))
}

/// Correlated-equilibrium test: every positive-probability
/// recommendation must be a conditional best reply. Implemented in the
/// mass-weighted form
/// `sum over a_{-i} of x(a_i, a_{-i}) * (u_i(a_i, a_{-i}) - u_i(b_i, a_{-i})) >= 0`,
/// which needs no division and is vacuous exactly on zero-probability
/// recommendations.
pub fn is_ce(game: &Game, x: &CorrelatedDistribution) -> Result<DeviationReport> {
    if x.action_counts() != game.action_counts() {
        return Err(Error::ShapeMismatch {
            expected: game.action_counts().to_vec(),
            found: x.action_counts().to_vec(),
        });
    }
    let mut violations = Vec::new();
    for player in 0..game.num_players() {
        let own_count = game.action_counts()[player];
        let rest_counts = opponent_counts(game.action_counts(), player);
        let rests: Vec<Vec<usize>> = profiles(&rest_counts).collect();
        for recommended in 0..own_count {
            for action in 0..own_count {
                if action == recommended {
                    continue;
                }
                let mut regret = Rational::zero();
                for rest in &rests {
                    let stay = compose_profile(player, recommended, rest);
                    let mass = x.weight(&stay);
                    if mass.is_zero() {
                        continue;
                    }
                    let go = compose_profile(player, action, rest);
                    regret += mass * (game.payoff(player, &go) - game.payoff(player, &stay));
                }
                if regret > Rational::zero() {
                    violations.push(Deviation {
                        player,
                        recommendation: Some(recommended),
                        action,
                        gain: regret,
                    });
                }
            }
        }
    }
    Ok(DeviationReport::from_violations(violations))
}

/// Result of two-player support enumeration. `complete` is false when
/// some support's indifference system was singular with a continuum of
/// candidate solutions; the listed equilibria are still genuine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeEnumeration {
    pub equilibria: Vec<MixedProfile>,
    pub complete: bool,
}

/// Enumerate all Nash equilibria of a two-player game by equal-size
/// support enumeration with exact linear solving. Every returned
/// profile passes [`is_ne`]; degenerate support systems set the
/// `complete` flag to false instead of being resolved.
pub fn enumerate_ne_2p(game: &Game) -> Result<NeEnumeration> {
    if game.num_players() != 2 {
        return Err(Error::UnsupportedPlayerCount {
            required: 2,
            found: game.num_players(),
        });
    }
    let m = game.action_counts()[0];
    let k = game.action_counts()[1];
    let u = |player: usize, a: usize, b: usize| game.payoff(player, &[a, b]);

    let mut found: BTreeSet<MixedProfile> = BTreeSet::new();
    let mut complete = true;
    for size in 1..=m.min(k) {
        for s0 in subsets(m, size) {
            for s1 in subsets(k, size) {
                // Player 2's support mix must make player 1 indifferent
                // across S0; symmetrically for player 1's mix.
                let solved_y = indifference_mix(&s1, &s0, |b, a| u(0, a, b).clone());
                let solved_x = indifference_mix(&s0, &s1, |a, b| u(1, a, b).clone());
                let (y, v0) = match solved_y {
                    SupportSolve::Mix(y, v) => (y, v),
                    SupportSolve::None => continue,
                    SupportSolve::Continuum => {
                        complete = false;
                        continue;
                    }
                };
                let (x, v1) = match solved_x {
                    SupportSolve::Mix(x, v) => (x, v),
                    SupportSolve::None => continue,
                    SupportSolve::Continuum => {
                        complete = false;
                        continue;
                    }
                };
                // strict positivity keeps each equilibrium attached to
                // its own support iteration
                if x.iter().any(|p| p <= &Rational::zero())
                    || y.iter().any(|p| p <= &Rational::zero())
                {
                    continue;
                }
                let full_x = scatter(m, &s0, &x);
                let full_y = scatter(k, &s1, &y);
                let outside_ok = (0..m).all(|a| {
                    s0.contains(&a) || {
                        let earned: Rational = (0..k).map(|b| &full_y[b] * u(0, a, b)).sum();
                        earned <= v0
                    }
                }) && (0..k).all(|b| {
                    s1.contains(&b) || {
                        let earned: Rational = (0..m).map(|a| &full_x[a] * u(1, a, b)).sum();
                        earned <= v1
                    }
                });
                if !outside_ok {
                    continue;
                }
                let profile = MixedProfile::new(vec![full_x, full_y])
                    .expect("support solutions are exact distributions");
                debug_assert!(is_ne(game, &profile).expect("shape matches").holds);
                found.insert(profile);
            }
        }
    }
    Ok(NeEnumeration {
        equilibria: found.into_iter().collect(),
        complete,
    })
}

enum SupportSolve {
    /// The support weights and the indifferent player's value.
    Mix(Vec<Rational>, Rational),
    None,
    Continuum,
}

/// Solve for a mix over `mixing_support` making the other player
/// indifferent across `target_support`: one equation per target action
/// plus normalization, unknowns the weights and the common value.
fn indifference_mix(
    mixing_support: &[usize],
    target_support: &[usize],
    payoff: impl Fn(usize, usize) -> Rational,
) -> SupportSolve {
    let s = mixing_support.len();
    let mut rows = Vec::with_capacity(target_support.len() + 1);
    let mut rhs = Vec::with_capacity(target_support.len() + 1);
    for &t in target_support {
        let mut row: Vec<Rational> = mixing_support.iter().map(|&mx| payoff(mx, t)).collect();
        row.push(-Rational::one());
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut norm = vec![Rational::one(); s];
    norm.push(Rational::zero());
    rows.push(norm);
    rhs.push(Rational::one());
    match crate::lp::solve_linear_system(&rows, &rhs) {
        LinearSolution::Unique(mut sol) => {
            let value = sol.pop().expect("value unknown present");
            SupportSolve::Mix(sol, value)
        }
        LinearSolution::Underdetermined(_) => SupportSolve::Continuum,
        LinearSolution::Inconsistent => SupportSolve::None,
    }
}

fn scatter(len: usize, support: &[usize], weights: &[Rational]) -> Vec<Rational> {
    let mut full = vec![Rational::zero(); len];
    for (&idx, w) in support.iter().zip(weights) {
        full[idx] = w.clone();
    }
    full
}

/// All `size`-element subsets of `0..n`, lexicographic.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if size == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..=n.saturating_sub(size) {
            prefix.push(i);
            go(i + 1, n, size - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Profiles that globally maximize every player's payoff at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximizerReport {
    /// `a` with `u_i(a) >= u_i(b)` for all players `i` and profiles `b`.
    pub weak_maximizers: Vec<PureProfile>,
    /// The profile with `u_i(a) > u_i(b)` for all `i` and all `b != a`,
    /// necessarily unique when it exists.
    pub strict_maximizer: Option<PureProfile>,
}

/// Find all weak simultaneous maximizers and the strict one if any.
pub fn find_maximizers(game: &Game) -> MaximizerReport {
    let num_players = game.num_players();
    let maxima: Vec<&Rational> = (0..num_players)
        .map(|i| {
            game.payoff_tensor(i)
                .iter()
                .max()
                .expect("payoff tensors are nonempty")
        })
        .collect();
    let unique_argmax = (0..num_players).all(|i| {
        game.payoff_tensor(i)
            .iter()
            .filter(|v| *v == maxima[i])
            .count()
            == 1
    });
    let weak_maximizers: Vec<PureProfile> = profiles(game.action_counts())
        .enumerate()
        .filter(|(idx, _)| (0..num_players).all(|i| &game.payoff_tensor(i)[*idx] == maxima[i]))
        .map(|(_, p)| PureProfile::new(p))
        .collect();
    let strict_maximizer = if unique_argmax && weak_maximizers.len() == 1 {
        Some(weak_maximizers[0].clone())
    } else {
        None
    };
    MaximizerReport {
        weak_maximizers,
        strict_maximizer,
    }
}

/// Social welfare objective: the coefficient of each profile is the
/// sum of all players' payoffs there.
pub fn welfare_objective(game: &Game) -> Vec<Rational> {
    (0..game.num_profiles())
        .map(|idx| {
            (0..game.num_players())
                .map(|i| game.payoff_tensor(i)[idx].clone())
                .sum()
        })
        .collect()
}

/// One player's payoff as the objective.
pub fn player_objective(game: &Game, player: usize) -> Result<Vec<Rational>> {
    game.check_player(player)?;
    Ok(game.payoff_tensor(player).to_vec())
}

/// The constant-zero objective (pure feasibility search).
pub fn zero_objective(game: &Game) -> Vec<Rational> {
    vec![Rational::zero(); game.num_profiles()]
}

/// An exact vertex of the correlated-equilibrium polytope maximizing a
/// linear objective over profile probabilities.
pub fn find_ce(game: &Game, objective: &[Rational]) -> Result<CorrelatedDistribution> {
    let mut constraints = Vec::new();
    for player in 0..game.num_players() {
        let own_count = game.action_counts()[player];
        let rest_counts = opponent_counts(game.action_counts(), player);
        for recommended in 0..own_count {
            for action in 0..own_count {
                if action == recommended {
                    continue;
                }
                let mut coeffs = vec![Rational::zero(); game.num_profiles()];
                for rest in profiles(&rest_counts) {
                    let stay = compose_profile(player, recommended, &rest);
                    let go = compose_profile(player, action, &rest);
                    coeffs[profile_index(game.action_counts(), &stay)] =
                        game.payoff(player, &stay) - game.payoff(player, &go);
                }
                constraints.push(coeffs);
            }
        }
    }
    solve_polytope(game, objective, constraints)
}

/// An exact vertex of the coarse-correlated-equilibrium polytope
/// maximizing a linear objective.
pub fn find_cce(game: &Game, objective: &[Rational]) -> Result<CorrelatedDistribution> {
    let mut constraints = Vec::new();
    for player in 0..game.num_players() {
        for action in 0..game.action_counts()[player] {
            let mut coeffs = vec![Rational::zero(); game.num_profiles()];
            for (idx, profile) in profiles(game.action_counts()).enumerate() {
                let rest = opponent_part(&profile, player);
                let go = compose_profile(player, action, &rest);
                coeffs[idx] = game.payoff(player, &profile) - game.payoff(player, &go);
            }
            constraints.push(coeffs);
        }
    }
    solve_polytope(game, objective, constraints)
}

fn solve_polytope(
    game: &Game,
    objective: &[Rational],
    no_regret_rows: Vec<Vec<Rational>>,
) -> Result<CorrelatedDistribution> {
    let total = game.num_profiles();
    if objective.len() != total {
        return Err(Error::MalformedProgram(format!(
            "objective has {} coefficients for {} profiles",
            objective.len(),
            total
        )));
    }
    let mut lp = LinearProgram::maximize(objective.to_vec());
    for coeffs in no_regret_rows {
        lp = lp.constrain(coeffs, Relation::Ge, Rational::zero());
    }
    lp = lp.constrain(vec![Rational::one(); total], Relation::Eq, Rational::one());
    let (weights, _) = lp
        .solve()?
        .optimal()
        .expect("equilibrium polytopes are never empty");
    Ok(
        CorrelatedDistribution::new(game.action_counts().to_vec(), weights)
            .expect("LP vertices satisfy the simplex constraints exactly"),
    )
}
