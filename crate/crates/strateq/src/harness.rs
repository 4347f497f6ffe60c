//! Audit harness: pluggable solution maps, axiom checkers over random
//! game families, and drivers that mechanically confirm the witness
//! constructions on every sampled case.
//!
//! Axioms quantify over infinitely many equivalent games, so audits
//! are budgeted: invariance is probed with sampled transfers, and the
//! constructive witnesses supply the refutations. A `Violated` verdict
//! always carries a counterexample that re-verifies exactly from its
//! own data.

use crate::equilibria::{
    check_nudi, enumerate_ne_2p, enumerate_pne, find_cce, find_ce, find_maximizers, is_ce,
    is_strict_pne, welfare_objective,
};
use crate::error::{Error, Result};
use crate::game::{
    opponent_counts, profiles, Behavior, BehaviorKind, CorrelatedDistribution, Game, MixedProfile,
    PureProfile,
};
use crate::rational::{ratio, strict_abs_bound, Rational};
use crate::rationality::{pir_violation, pir_with_action, pirar_violation, to_correlated};
use crate::transforms::{
    apply_z_games, pir_violation_witness, pirar_violation_witness, sm_elevation,
    strategically_equivalent, usm_contradiction, CheckedInequality, Comparison, WitnessCertificate,
    ZGame,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A named, deterministic mapping from games to finite behavior sets,
/// the object audited against axioms.
#[derive(Clone)]
pub struct SolutionMap {
    pub name: String,
    pub kind: BehaviorKind,
    compute: Arc<dyn Fn(&Game) -> BTreeSet<Behavior> + Send + Sync>,
}

impl SolutionMap {
    pub fn new(
        name: impl Into<String>,
        kind: BehaviorKind,
        compute: impl Fn(&Game) -> BTreeSet<Behavior> + Send + Sync + 'static,
    ) -> Self {
        SolutionMap {
            name: name.into(),
            kind,
            compute: Arc::new(compute),
        }
    }

    pub fn compute(&self, game: &Game) -> BTreeSet<Behavior> {
        (self.compute)(game)
    }
}

impl fmt::Debug for SolutionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionMap")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

/// Pure equilibria as behaviors.
pub fn pne_map() -> SolutionMap {
    SolutionMap::new("pne", BehaviorKind::Pure, |game| {
        enumerate_pne(game)
            .into_iter()
            .map(Behavior::Pure)
            .collect()
    })
}

/// All profiles maximizing the payoff sum, ties included.
pub fn welfare_max_map() -> SolutionMap {
    SolutionMap::new("welfare_max", BehaviorKind::Pure, |game| {
        let welfare = welfare_objective(game);
        let best = welfare.iter().max().cloned();
        profiles(game.action_counts())
            .enumerate()
            .filter(|(idx, _)| Some(&welfare[*idx]) == best.as_ref())
            .map(|(_, p)| Behavior::Pure(PureProfile::new(p)))
            .collect()
    })
}

/// Each player independently plays the smallest-index action attaining
/// their pure punishment level.
pub fn maximin_play_map() -> SolutionMap {
    SolutionMap::new("maximin_play", BehaviorKind::Pure, |game| {
        let profile: Vec<usize> = (0..game.num_players())
            .map(|i| pir_with_action(game, i).expect("player index in range").1)
            .collect();
        BTreeSet::from([Behavior::Pure(PureProfile::new(profile))])
    })
}

/// The uniform distribution over joint profiles.
pub fn uniform_correlated_map() -> SolutionMap {
    SolutionMap::new("uniform_correlated", BehaviorKind::Correlated, |game| {
        BTreeSet::from([Behavior::Correlated(CorrelatedDistribution::uniform(
            game.action_counts(),
        ))])
    })
}

/// Mixed equilibria by support enumeration; empty off two-player games.
pub fn ne_2p_map() -> SolutionMap {
    SolutionMap::new("ne_2p", BehaviorKind::Mixed, |game| {
        if game.num_players() != 2 {
            return BTreeSet::new();
        }
        enumerate_ne_2p(game)
            .expect("two players")
            .equilibria
            .into_iter()
            .map(Behavior::Mixed)
            .collect()
    })
}

/// On 2x2 games with exactly two strict pure equilibria, the one
/// maximizing the product of unilateral deviation losses (both on a
/// tie); empty elsewhere.
pub fn risk_dominant_2x2_map() -> SolutionMap {
    SolutionMap::new("risk_dominant_2x2", BehaviorKind::Pure, |game| {
        if game.action_counts() != [2, 2] {
            return BTreeSet::new();
        }
        let strict: Vec<PureProfile> = enumerate_pne(game)
            .into_iter()
            .filter(|p| is_strict_pne(game, p).expect("profile in range"))
            .collect();
        if strict.len() != 2 {
            return BTreeSet::new();
        }
        let product = |p: &PureProfile| -> Rational {
            (0..2)
                .map(|i| {
                    let mut flipped = p.actions.clone();
                    flipped[i] = 1 - flipped[i];
                    game.payoff(i, &p.actions) - game.payoff(i, &flipped)
                })
                .product()
        };
        let products: Vec<Rational> = strict.iter().map(product).collect();
        let best = products.iter().max().cloned().expect("two candidates");
        strict
            .into_iter()
            .zip(products)
            .filter(|(_, prod)| *prod == best)
            .map(|(p, _)| Behavior::Pure(p))
            .collect()
    })
}

/// The welfare-maximizing vertex of the conditional-deviation polytope.
pub fn ce_welfare_map() -> SolutionMap {
    SolutionMap::new("ce_welfare", BehaviorKind::Correlated, |game| {
        let dist = find_ce(game, &welfare_objective(game)).expect("polytope is never empty");
        BTreeSet::from([Behavior::Correlated(dist)])
    })
}

/// The welfare-maximizing vertex of the unconditional-deviation polytope.
pub fn cce_welfare_map() -> SolutionMap {
    SolutionMap::new("cce_welfare", BehaviorKind::Correlated, |game| {
        let dist = find_cce(game, &welfare_objective(game)).expect("polytope is never empty");
        BTreeSet::from([Behavior::Correlated(dist)])
    })
}

/// Every built-in audit subject.
pub fn builtin_solution_maps() -> Vec<SolutionMap> {
    vec![
        pne_map(),
        welfare_max_map(),
        maximin_play_map(),
        uniform_correlated_map(),
        ne_2p_map(),
        risk_dominant_2x2_map(),
        ce_welfare_map(),
        cce_welfare_map(),
    ]
}

/// Look up a built-in by name.
pub fn builtin_solution_map(name: &str) -> Option<SolutionMap> {
    builtin_solution_maps().into_iter().find(|m| m.name == name)
}

/// The audited axioms. `Se` is output invariance under payoff
/// transfers; `Pir` and `Pirar` are the strict individual-rationality
/// requirements (unconditional and per-recommendation); `Sm` demands
/// weak simultaneous maximizers be selected; `Usm` demands a strict
/// one be selected alone; `Nudi` forbids profitable unilateral
/// deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Axiom {
    Se,
    Pir,
    Pirar,
    Sm,
    Usm,
    Nudi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Se => "SE",
            Axiom::Pir => "PIR",
            Axiom::Pirar => "PIRAR",
            Axiom::Sm => "SM",
            Axiom::Usm => "USM",
            Axiom::Nudi => "NUDI",
        })
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "se" => Ok(Axiom::Se),
            "pir" => Ok(Axiom::Pir),
            "pirar" => Ok(Axiom::Pirar),
            "sm" => Ok(Axiom::Sm),
            "usm" => Ok(Axiom::Usm),
            "nudi" => Ok(Axiom::Nudi),
            other => Err(Error::PreconditionNotMet(format!(
                "unknown axiom '{other}' (expected SE, PIR, PIRAR, SM, USM, or NUDI)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    PassedBudget,
    Violated,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::PassedBudget => "passed within budget",
            AuditStatus::Violated => "violated",
        })
    }
}

/// Self-contained evidence behind a `Violated` verdict. Every variant
/// re-verifies from its own data plus the audited map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    /// A selected behavior fails the axiom's inequality on the game
    /// itself.
    DirectViolation {
        game: Game,
        behavior: Behavior,
        inequalities: Vec<CheckedInequality>,
    },
    /// A weak simultaneous maximizer the map fails to select.
    MissingMaximizer {
        game: Game,
        profile: PureProfile,
        behavior: Behavior,
    },
    /// The game has a strict simultaneous maximizer but the output is
    /// not that singleton.
    WrongSingleton {
        game: Game,
        profile: PureProfile,
        expected: Behavior,
    },
    /// A sampled transfer changed the output set.
    TransformChangedOutput {
        game: Game,
        transform: ZGame,
        before: BTreeSet<Behavior>,
        after: BTreeSet<Behavior>,
    },
    /// A certificate game, equivalent to the original, on which the
    /// axiom's requirement fails for the recorded behavior.
    OrbitWitness {
        game: Game,
        behavior: Behavior,
        profile: Option<PureProfile>,
        witness: WitnessCertificate,
    },
    /// Two equivalent games with distinct unique strict maximizers; no
    /// transfer-invariant map can satisfy the singleton requirement on
    /// both.
    ContradictionPair {
        game: Game,
        first: WitnessCertificate,
        second: WitnessCertificate,
    },
}

impl Counterexample {
    /// Recheck the violation from scratch against the audited map.
    pub fn reverify(&self, axiom: Axiom, map: &SolutionMap) -> bool {
        match self {
            Counterexample::DirectViolation {
                game,
                behavior,
                inequalities,
            } => {
                if !map.compute(game).contains(behavior) {
                    return false;
                }
                if !inequalities.iter().all(|i| i.holds()) {
                    return false;
                }
                match axiom {
                    Axiom::Nudi => check_nudi(game, behavior)
                        .map(|r| !r.holds)
                        .unwrap_or(false),
                    Axiom::Pir => pir_violation(game, behavior)
                        .map(|v| v.is_some())
                        .unwrap_or(false),
                    Axiom::Pirar => pirar_violation(game, behavior)
                        .map(|v| v.is_some())
                        .unwrap_or(false),
                    _ => false,
                }
            }
            Counterexample::MissingMaximizer {
                game,
                profile,
                behavior,
            } => {
                behavior == &behavior_of_kind(game.action_counts(), profile, map.kind)
                    && find_maximizers(game).weak_maximizers.contains(profile)
                    && !map.compute(game).contains(behavior)
            }
            Counterexample::WrongSingleton {
                game,
                profile,
                expected,
            } => {
                expected == &behavior_of_kind(game.action_counts(), profile, map.kind)
                    && find_maximizers(game).strict_maximizer.as_ref() == Some(profile)
                    && map.compute(game) != BTreeSet::from([expected.clone()])
            }
            Counterexample::TransformChangedOutput {
                game,
                transform,
                before,
                after,
            } => {
                let transformed = match apply_z_games(game, std::slice::from_ref(transform)) {
                    Ok(v) => v,
                    Err(_) => return false,
                };
                matches!(
                    strategically_equivalent(game, &transformed),
                    Ok(eq) if eq.is_equivalent()
                ) && before != after
                    && map.compute(game) == *before
                    && map.compute(&transformed) == *after
            }
            Counterexample::OrbitWitness {
                game,
                behavior,
                profile,
                witness,
            } => {
                if witness.original != *game || witness.verify().is_err() {
                    return false;
                }
                match axiom {
                    Axiom::Pir | Axiom::Pirar => map.compute(game).contains(behavior),
                    Axiom::Sm => match profile {
                        Some(p) => {
                            enumerate_pne(game).contains(p)
                                && !map.compute(game).contains(behavior)
                                && find_maximizers(&witness.transformed)
                                    .weak_maximizers
                                    .contains(p)
                        }
                        None => false,
                    },
                    _ => false,
                }
            }
            Counterexample::ContradictionPair {
                game,
                first,
                second,
            } => {
                first.original == *game
                    && second.original == *game
                    && first.verify().is_ok()
                    && second.verify().is_ok()
                    && match (
                        find_maximizers(&first.transformed).strict_maximizer,
                        find_maximizers(&second.transformed).strict_maximizer,
                    ) {
                        (Some(a), Some(b)) => a != b,
                        _ => false,
                    }
                    && matches!(
                        strategically_equivalent(&first.transformed, &second.transformed),
                        Ok(eq) if eq.is_equivalent()
                    )
            }
        }
    }
}

/// Outcome of one axiom audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditVerdict {
    pub map: String,
    pub axiom: Axiom,
    pub status: AuditStatus,
    pub counterexample: Option<Counterexample>,
    pub games_checked: usize,
    pub cases_checked: usize,
}

impl AuditVerdict {
    /// Recheck the verdict's evidence. `PassedBudget` has none and
    /// trivially passes; `Violated` must re-derive from the stored
    /// counterexample.
    pub fn reverify(&self, map: &SolutionMap) -> bool {
        match (&self.status, &self.counterexample) {
            (AuditStatus::PassedBudget, _) => true,
            (AuditStatus::Violated, Some(ce)) => ce.reverify(self.axiom, map),
            (AuditStatus::Violated, None) => false,
        }
    }
}

/// A reproducible random game family: player and action counts drawn
/// uniformly from inclusive ranges, payoffs uniform over an inclusive
/// integer range. Identical spec and seed regenerate identical games.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFamilySpec {
    pub min_players: usize,
    pub max_players: usize,
    pub min_actions: usize,
    pub max_actions: usize,
    pub min_payoff: i64,
    pub max_payoff: i64,
    pub seed: u64,
    pub count: usize,
}

impl GameFamilySpec {
    pub fn new(
        players: (usize, usize),
        actions: (usize, usize),
        payoffs: (i64, i64),
        seed: u64,
        count: usize,
    ) -> Self {
        GameFamilySpec {
            min_players: players.0,
            max_players: players.1,
            min_actions: actions.0,
            max_actions: actions.1,
            min_payoff: payoffs.0,
            max_payoff: payoffs.1,
            seed,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_players < 1 || self.min_players > self.max_players {
            return Err(Error::PreconditionNotMet(format!(
                "invalid player range {}..={}",
                self.min_players, self.max_players
            )));
        }
        if self.min_actions < 1 || self.min_actions > self.max_actions {
            return Err(Error::PreconditionNotMet(format!(
                "invalid action range {}..={}",
                self.min_actions, self.max_actions
            )));
        }
        if self.min_payoff > self.max_payoff {
            return Err(Error::PreconditionNotMet(format!(
                "invalid payoff range {}..={}",
                self.min_payoff, self.max_payoff
            )));
        }
        Ok(())
    }
}

// Disjoint ChaCha stream ranges keep game payoffs, transfer draws, and
// behavior draws independent while staying reproducible from one seed.
const TRANSFORM_STREAM_BASE: u64 = 1 << 40;
const BEHAVIOR_STREAM_BASE: u64 = 1 << 41;

fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The family's game at `index`, identical across runs.
pub fn random_game(spec: &GameFamilySpec, index: u64) -> Result<Game> {
    spec.validate()?;
    let mut rng = stream_rng(spec.seed, index);
    let num_players = rng.gen_range(spec.min_players..=spec.max_players);
    let counts: Vec<usize> = (0..num_players)
        .map(|_| rng.gen_range(spec.min_actions..=spec.max_actions))
        .collect();
    let cells = crate::game::profile_count(&counts);
    let payoffs = (0..num_players)
        .map(|_| {
            (0..cells)
                .map(|_| {
                    Rational::from_integer(rng.gen_range(spec.min_payoff..=spec.max_payoff).into())
                })
                .collect()
        })
        .collect();
    Game::new(counts, payoffs)
}

fn family_games(spec: &GameFamilySpec) -> Result<Vec<Game>> {
    if spec.count == 0 {
        return Err(Error::EmptyFamily);
    }
    (0..spec.count as u64)
        .map(|i| random_game(spec, i))
        .collect()
}

/// Scan the family in index order, keeping games with at least two
/// strict pure equilibria, until `spec.count` are collected or the
/// scan budget runs out. Returns (index, game) pairs.
pub fn games_with_two_strict_pne(spec: &GameFamilySpec) -> Result<Vec<(u64, Game)>> {
    spec.validate()?;
    if spec.count == 0 {
        return Err(Error::EmptyFamily);
    }
    let cap = (spec.count as u64).saturating_mul(2000).max(10_000);
    let mut found = Vec::new();
    for index in 0..cap {
        let game = random_game(spec, index)?;
        if strict_pnes(&game)?.len() >= 2 {
            found.push((index, game));
            if found.len() == spec.count {
                break;
            }
        }
    }
    Ok(found)
}

fn strict_pnes(game: &Game) -> Result<Vec<PureProfile>> {
    let mut out = Vec::new();
    for p in enumerate_pne(game) {
        if is_strict_pne(game, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// A pure profile viewed as a behavior of the given kind: itself, the
/// degenerate mixed profile, or the point-mass distribution.
pub fn behavior_of_kind(counts: &[usize], profile: &PureProfile, kind: BehaviorKind) -> Behavior {
    match kind {
        BehaviorKind::Pure => Behavior::Pure(profile.clone()),
        BehaviorKind::Mixed => Behavior::Mixed(MixedProfile::pure(counts, profile)),
        BehaviorKind::Correlated => {
            Behavior::Correlated(CorrelatedDistribution::point_mass(counts, profile))
        }
    }
}

/// Random probability weights on a lattice: a denominator up to 8 and
/// that many unit masses dropped into the cells.
fn lattice_weights(len: usize, rng: &mut ChaCha20Rng) -> Vec<Rational> {
    let denom = rng.gen_range(1..=8u32);
    let mut cells = vec![0u32; len];
    for _ in 0..denom {
        cells[rng.gen_range(0..len)] += 1;
    }
    cells
        .into_iter()
        .map(|c| ratio(c as i64, denom as i64))
        .collect()
}

/// A random per-player lattice mix.
pub fn sample_mixed(game: &Game, rng: &mut ChaCha20Rng) -> MixedProfile {
    MixedProfile::new(
        game.action_counts()
            .iter()
            .map(|&k| lattice_weights(k, rng))
            .collect(),
    )
    .expect("lattice weights form distributions")
}

/// A random joint lattice distribution.
pub fn sample_correlated(game: &Game, rng: &mut ChaCha20Rng) -> CorrelatedDistribution {
    CorrelatedDistribution::new(
        game.action_counts().to_vec(),
        lattice_weights(game.num_profiles(), rng),
    )
    .expect("lattice weights form distributions")
}

/// Behaviors to test a game against: every pure profile for the pure
/// kind; `count` lattice samples plus computed equilibrium outputs for
/// the mixed and correlated kinds, so boundary and interior cases both
/// appear.
pub fn sample_behaviors(
    game: &Game,
    kind: BehaviorKind,
    count: usize,
    rng: &mut ChaCha20Rng,
) -> Vec<Behavior> {
    match kind {
        BehaviorKind::Pure => profiles(game.action_counts())
            .map(|p| Behavior::Pure(PureProfile::new(p)))
            .collect(),
        BehaviorKind::Mixed => {
            let mut out: Vec<Behavior> = (0..count)
                .map(|_| Behavior::Mixed(sample_mixed(game, rng)))
                .collect();
            if game.num_players() == 2 {
                out.extend(
                    enumerate_ne_2p(game)
                        .expect("two players")
                        .equilibria
                        .into_iter()
                        .map(Behavior::Mixed),
                );
            }
            out
        }
        BehaviorKind::Correlated => {
            let mut out: Vec<Behavior> = (0..count)
                .map(|_| Behavior::Correlated(sample_correlated(game, rng)))
                .collect();
            out.push(Behavior::Correlated(CorrelatedDistribution::uniform(
                game.action_counts(),
            )));
            let objective = welfare_objective(game);
            out.push(Behavior::Correlated(
                find_ce(game, &objective).expect("polytope is never empty"),
            ));
            out.push(Behavior::Correlated(
                find_cce(game, &objective).expect("polytope is never empty"),
            ));
            out
        }
    }
}

/// Draw one transfer for `game`: a uniform player and opponent
/// profile, with an amount scaled past the game's largest payoff so
/// transfers dominate rather than vanish.
pub fn random_z_game(game: &Game, rng: &mut ChaCha20Rng) -> ZGame {
    let player = rng.gen_range(0..game.num_players());
    let rest_counts = opponent_counts(game.action_counts(), player);
    let opponents_profile = rest_counts.iter().map(|&c| rng.gen_range(0..c)).collect();
    let scale = strict_abs_bound((0..game.num_players()).flat_map(|i| game.payoff_tensor(i)));
    let amount = ratio(rng.gen_range(-3..=3i64), rng.gen_range(1..=2i64)) * scale;
    ZGame {
        player,
        opponents_profile,
        amount,
        shape: game.action_counts().to_vec(),
    }
}

/// Audit `map` against `axiom` over the family, stopping at the first
/// violation. Transfer invariance uses `transform_budget` sampled
/// transfers per game; the other axioms are checked directly on each
/// game and, where a constructive witness applies, across the game's
/// equivalence class too.
pub fn check_axiom(
    map: &SolutionMap,
    axiom: Axiom,
    family: &GameFamilySpec,
    transform_budget: usize,
) -> Result<AuditVerdict> {
    family.validate()?;
    audit_games(
        map,
        axiom,
        &family_games(family)?,
        transform_budget,
        family.seed,
    )
}

/// The audit core over an explicit game list: useful for auditing
/// fixtures. `seed` drives transfer sampling only.
pub fn audit_games(
    map: &SolutionMap,
    axiom: Axiom,
    games: &[Game],
    transform_budget: usize,
    seed: u64,
) -> Result<AuditVerdict> {
    if axiom == Axiom::Pirar && map.kind != BehaviorKind::Correlated {
        return Err(Error::IncompatibleAxiom {
            axiom: axiom.to_string(),
            kind: map.kind.to_string(),
        });
    }
    let mut cases = 0usize;
    for (index, game) in games.iter().enumerate() {
        let found = audit_one_game(
            map,
            axiom,
            game,
            transform_budget,
            seed,
            index as u64,
            &mut cases,
        )?;
        if let Some(counterexample) = found {
            return Ok(AuditVerdict {
                map: map.name.clone(),
                axiom,
                status: AuditStatus::Violated,
                counterexample: Some(counterexample),
                games_checked: index + 1,
                cases_checked: cases,
            });
        }
    }
    Ok(AuditVerdict {
        map: map.name.clone(),
        axiom,
        status: AuditStatus::PassedBudget,
        counterexample: None,
        games_checked: games.len(),
        cases_checked: cases,
    })
}

fn audit_one_game(
    map: &SolutionMap,
    axiom: Axiom,
    game: &Game,
    transform_budget: usize,
    seed: u64,
    index: u64,
    cases: &mut usize,
) -> Result<Option<Counterexample>> {
    let output = map.compute(game);
    match axiom {
        Axiom::Se => {
            let mut rng = stream_rng(seed, TRANSFORM_STREAM_BASE + index);
            for _ in 0..transform_budget {
                let transform = random_z_game(game, &mut rng);
                let transformed = apply_z_games(game, std::slice::from_ref(&transform))?;
                let after = map.compute(&transformed);
                *cases += 1;
                if after != output {
                    return Ok(Some(Counterexample::TransformChangedOutput {
                        game: game.clone(),
                        transform,
                        before: output,
                        after,
                    }));
                }
            }
        }
        Axiom::Nudi => {
            for behavior in &output {
                *cases += 1;
                let report = check_nudi(game, behavior)?;
                if let Some(dev) = report.first() {
                    let inequalities = vec![CheckedInequality::new(
                        format!(
                            "gain of player {} deviating to action {}",
                            dev.player + 1,
                            dev.action + 1
                        ),
                        dev.gain.clone(),
                        Comparison::Gt,
                        Rational::zero(),
                    )];
                    return Ok(Some(Counterexample::DirectViolation {
                        game: game.clone(),
                        behavior: behavior.clone(),
                        inequalities,
                    }));
                }
            }
        }
        Axiom::Pir => {
            for behavior in &output {
                *cases += 1;
                if let Some(v) = pir_violation(game, behavior)? {
                    let inequalities = vec![CheckedInequality::new(
                        format!(
                            "expected payoff of player {} does not strictly exceed their \
                             pure punishment level",
                            v.player + 1
                        ),
                        v.value,
                        Comparison::Le,
                        v.threshold,
                    )];
                    return Ok(Some(Counterexample::DirectViolation {
                        game: game.clone(),
                        behavior: behavior.clone(),
                        inequalities,
                    }));
                }
                let report = check_nudi(game, behavior)?;
                if let Some(dev) = report.first() {
                    let witness = pir_violation_witness(game, behavior, dev.player, dev.action)?;
                    return Ok(Some(Counterexample::OrbitWitness {
                        game: game.clone(),
                        behavior: behavior.clone(),
                        profile: None,
                        witness,
                    }));
                }
            }
        }
        Axiom::Pirar => {
            for behavior in &output {
                *cases += 1;
                if let Some(v) = pirar_violation(game, behavior)? {
                    let inequalities = vec![CheckedInequality::new(
                        format!(
                            "conditional payoff of player {} obeying recommendation {} \
                             does not strictly exceed their pure punishment level",
                            v.player + 1,
                            v.action + 1
                        ),
                        v.conditional_value,
                        Comparison::Le,
                        v.threshold,
                    )];
                    return Ok(Some(Counterexample::DirectViolation {
                        game: game.clone(),
                        behavior: behavior.clone(),
                        inequalities,
                    }));
                }
                let dist = to_correlated(game, behavior)?;
                let report = is_ce(game, &dist)?;
                if let Some(dev) = report.first() {
                    let recommended = dev
                        .recommendation
                        .expect("conditional check names the recommendation");
                    let witness =
                        pirar_violation_witness(game, &dist, dev.player, recommended, dev.action)?;
                    return Ok(Some(Counterexample::OrbitWitness {
                        game: game.clone(),
                        behavior: behavior.clone(),
                        profile: None,
                        witness,
                    }));
                }
            }
        }
        Axiom::Sm => {
            for profile in find_maximizers(game).weak_maximizers {
                *cases += 1;
                let behavior = behavior_of_kind(game.action_counts(), &profile, map.kind);
                if !output.contains(&behavior) {
                    return Ok(Some(Counterexample::MissingMaximizer {
                        game: game.clone(),
                        profile,
                        behavior,
                    }));
                }
            }
            for profile in enumerate_pne(game) {
                *cases += 1;
                let behavior = behavior_of_kind(game.action_counts(), &profile, map.kind);
                if !output.contains(&behavior) {
                    let witness = sm_elevation(game, &profile)?;
                    return Ok(Some(Counterexample::OrbitWitness {
                        game: game.clone(),
                        behavior,
                        profile: Some(profile),
                        witness,
                    }));
                }
            }
        }
        Axiom::Usm => {
            if let Some(profile) = find_maximizers(game).strict_maximizer {
                *cases += 1;
                let expected = behavior_of_kind(game.action_counts(), &profile, map.kind);
                if output != BTreeSet::from([expected.clone()]) {
                    return Ok(Some(Counterexample::WrongSingleton {
                        game: game.clone(),
                        profile,
                        expected,
                    }));
                }
            }
            let strict = strict_pnes(game)?;
            if strict.len() >= 2 {
                *cases += 1;
                let (first, second) = usm_contradiction(game, &strict[0], &strict[1])?;
                return Ok(Some(Counterexample::ContradictionPair {
                    game: game.clone(),
                    first,
                    second,
                }));
            }
        }
    }
    Ok(None)
}

/// The mechanically verified statements. `P1` through `P4` are the
/// four witness constructions; `C1` through `C3` are their
/// consequences for equilibrium solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Proposition {
    P1,
    P2,
    P3,
    P4,
    C1,
    C2,
    C3,
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Proposition::P1 => "P1",
            Proposition::P2 => "P2",
            Proposition::P3 => "P3",
            Proposition::P4 => "P4",
            Proposition::C1 => "C1",
            Proposition::C2 => "C2",
            Proposition::C3 => "C3",
        })
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "P1" => Ok(Proposition::P1),
            "P2" => Ok(Proposition::P2),
            "P3" => Ok(Proposition::P3),
            "P4" => Ok(Proposition::P4),
            "C1" => Ok(Proposition::C1),
            "C2" => Ok(Proposition::C2),
            "C3" => Ok(Proposition::C3),
            other => Err(Error::PreconditionNotMet(format!(
                "unknown proposition '{other}' (expected P1..P4 or C1..C3)"
            ))),
        }
    }
}

/// Outcome of one verification run. `failures` empty means every
/// sampled case was confirmed; `witnesses_verified` counts the
/// constructed certificates that passed their own recheck.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub proposition: Proposition,
    pub family: GameFamilySpec,
    pub samples_per_game: usize,
    pub games_checked: usize,
    pub cases_checked: usize,
    pub witnesses_verified: usize,
    pub failures: Vec<String>,
}

impl PropositionReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run one verification driver over the family.
///
/// `samples_per_game` is the sampling budget: lattice behaviors per
/// game and kind for the deviation and recommendation statements, and
/// the transfer budget for the invariance checks.
pub fn verify_proposition(
    prop: Proposition,
    family: &GameFamilySpec,
    samples_per_game: usize,
) -> Result<PropositionReport> {
    family.validate()?;
    if family.count == 0 {
        return Err(Error::EmptyFamily);
    }
    let mut report = PropositionReport {
        proposition: prop,
        family: family.clone(),
        samples_per_game,
        games_checked: 0,
        cases_checked: 0,
        witnesses_verified: 0,
        failures: Vec::new(),
    };
    match prop {
        Proposition::P1 => {
            for (index, game) in family_games(family)?.into_iter().enumerate() {
                let mut rng = stream_rng(family.seed, BEHAVIOR_STREAM_BASE + index as u64);
                for kind in [
                    BehaviorKind::Pure,
                    BehaviorKind::Mixed,
                    BehaviorKind::Correlated,
                ] {
                    for behavior in sample_behaviors(&game, kind, samples_per_game, &mut rng) {
                        witness_unilateral_failure(&game, &behavior, index, &mut report)?;
                    }
                }
                report.games_checked += 1;
            }
        }
        Proposition::P2 => {
            for (index, game) in family_games(family)?.into_iter().enumerate() {
                let mut rng = stream_rng(family.seed, BEHAVIOR_STREAM_BASE + index as u64);
                for behavior in
                    sample_behaviors(&game, BehaviorKind::Correlated, samples_per_game, &mut rng)
                {
                    witness_recommendation_failure(&game, &behavior, index, &mut report)?;
                }
                report.games_checked += 1;
            }
        }
        Proposition::P3 => {
            for (index, game) in family_games(family)?.into_iter().enumerate() {
                for profile in enumerate_pne(&game) {
                    report.cases_checked += 1;
                    match sm_elevation(&game, &profile) {
                        Ok(cert) => {
                            if let Err(e) = cert.verify() {
                                report.failures.push(format!(
                                    "game {index}: elevation certificate failed: {e}"
                                ));
                            } else if !find_maximizers(&cert.transformed)
                                .weak_maximizers
                                .contains(&profile)
                            {
                                report.failures.push(format!(
                                    "game {index}: elevated profile is not a weak maximizer"
                                ));
                            } else {
                                report.witnesses_verified += 1;
                            }
                        }
                        Err(e) => report
                            .failures
                            .push(format!("game {index}: elevation failed: {e}")),
                    }
                }
                report.games_checked += 1;
            }
        }
        Proposition::P4 => {
            let found = games_with_two_strict_pne(family)?;
            if found.len() < family.count {
                report.failures.push(format!(
                    "found only {} of {} games with two strict pure equilibria",
                    found.len(),
                    family.count
                ));
            }
            for (index, game) in &found {
                report.cases_checked += 1;
                let strict = strict_pnes(game)?;
                match usm_contradiction(game, &strict[0], &strict[1]) {
                    Ok((first, second)) => {
                        let mut ok = true;
                        for (label, cert) in [("first", &first), ("second", &second)] {
                            if let Err(e) = cert.verify() {
                                report
                                    .failures
                                    .push(format!("game {index}: {label} certificate failed: {e}"));
                                ok = false;
                            }
                        }
                        let a = find_maximizers(&first.transformed).strict_maximizer;
                        let b = find_maximizers(&second.transformed).strict_maximizer;
                        if a.is_none() || b.is_none() || a == b {
                            report
                                .failures
                                .push(format!("game {index}: strict maximizers not distinct"));
                            ok = false;
                        }
                        if !strategically_equivalent(&first.transformed, &second.transformed)?
                            .is_equivalent()
                        {
                            report.failures.push(format!(
                                "game {index}: certificate games are not equivalent"
                            ));
                            ok = false;
                        }
                        if ok {
                            report.witnesses_verified += 2;
                        }
                    }
                    Err(e) => report
                        .failures
                        .push(format!("game {index}: contradiction pair failed: {e}")),
                }
                report.games_checked += 1;
            }
        }
        Proposition::C1 => {
            let equilibrium_maps = [pne_map(), ne_2p_map(), ce_welfare_map(), cce_welfare_map()];
            for (index, game) in family_games(family)?.into_iter().enumerate() {
                for map in &equilibrium_maps {
                    for behavior in map.compute(&game) {
                        report.cases_checked += 1;
                        if !check_nudi(&game, &behavior)?.holds {
                            report.failures.push(format!(
                                "game {index}: output of {} admits a profitable deviation",
                                map.name
                            ));
                        }
                    }
                }
                let mut rng = stream_rng(family.seed, BEHAVIOR_STREAM_BASE + index as u64);
                for kind in [
                    BehaviorKind::Pure,
                    BehaviorKind::Mixed,
                    BehaviorKind::Correlated,
                ] {
                    for behavior in sample_behaviors(&game, kind, samples_per_game, &mut rng) {
                        witness_unilateral_failure(&game, &behavior, index, &mut report)?;
                    }
                }
                report.games_checked += 1;
            }
        }
        Proposition::C2 | Proposition::C3 => {
            let games = family_games(family)?;
            let map = pne_map();
            for axiom in [Axiom::Se, Axiom::Sm] {
                let verdict = audit_games(&map, axiom, &games, samples_per_game, family.seed)?;
                report.cases_checked += verdict.cases_checked;
                if verdict.status != AuditStatus::PassedBudget {
                    report
                        .failures
                        .push(format!("pne violated {axiom} on the family"));
                }
            }
            for (index, game) in games.into_iter().enumerate() {
                let selected = map.compute(&game);
                for p in profiles(game.action_counts()) {
                    report.cases_checked += 1;
                    let behavior = Behavior::Pure(PureProfile::new(p));
                    let nudi = check_nudi(&game, &behavior)?;
                    let in_solution = selected.contains(&behavior);
                    if in_solution != nudi.holds {
                        report.failures.push(format!(
                            "game {index}: selection disagrees with the deviation test"
                        ));
                        continue;
                    }
                    if let Some(dev) = nudi.first() {
                        match pir_violation_witness(&game, &behavior, dev.player, dev.action) {
                            Ok(cert) => match cert.verify() {
                                Ok(()) => report.witnesses_verified += 1,
                                Err(e) => report.failures.push(format!(
                                    "game {index}: elimination certificate failed: {e}"
                                )),
                            },
                            Err(e) => report
                                .failures
                                .push(format!("game {index}: no elimination witness: {e}")),
                        }
                    }
                }
                report.games_checked += 1;
            }
        }
    }
    Ok(report)
}

/// P1 core step: a behavior with a profitable unilateral deviation
/// must admit a verifying punishment witness.
fn witness_unilateral_failure(
    game: &Game,
    behavior: &Behavior,
    index: usize,
    report: &mut PropositionReport,
) -> Result<()> {
    report.cases_checked += 1;
    let nudi = check_nudi(game, behavior)?;
    let Some(dev) = nudi.first() else {
        return Ok(());
    };
    match pir_violation_witness(game, behavior, dev.player, dev.action) {
        Ok(cert) => match cert.verify() {
            Ok(()) => report.witnesses_verified += 1,
            Err(e) => report
                .failures
                .push(format!("game {index}: witness certificate failed: {e}")),
        },
        Err(e) => report.failures.push(format!(
            "game {index}: deviation by player {} to action {} yielded no witness: {e}",
            dev.player + 1,
            dev.action + 1
        )),
    }
    Ok(())
}

/// P2 core step: a distribution with a profitable conditional
/// deviation must admit a verifying recommendation witness.
fn witness_recommendation_failure(
    game: &Game,
    behavior: &Behavior,
    index: usize,
    report: &mut PropositionReport,
) -> Result<()> {
    report.cases_checked += 1;
    let dist = to_correlated(game, behavior)?;
    let ce = is_ce(game, &dist)?;
    let Some(dev) = ce.first() else {
        return Ok(());
    };
    let recommended = dev
        .recommendation
        .expect("conditional check names the recommendation");
    match pirar_violation_witness(game, &dist, dev.player, recommended, dev.action) {
        Ok(cert) => match cert.verify() {
            Ok(()) => report.witnesses_verified += 1,
            Err(e) => report
                .failures
                .push(format!("game {index}: witness certificate failed: {e}")),
        },
        Err(e) => report.failures.push(format!(
            "game {index}: recommendation {} deviation {} for player {} yielded no witness: {e}",
            recommended + 1,
            dev.action + 1,
            dev.player + 1
        )),
    }
    Ok(())
}
