//! Exact-arithmetic toolkit for finite normal-form games.
//!
//! Everything is computed over arbitrary-precision rationals; there is
//! no floating point anywhere, so every equilibrium test, punishment
//! level, and certificate in this crate is an exact statement about the
//! game, not an approximation.
//!
//! The crate centers on one equivalence relation: two games are
//! strategically equivalent when one can be reached from the other by
//! adding finitely many side payments that depend only on the
//! *opponents'* actions. Such transfers never change what any player
//! wants to do, yet they move payoff levels around, and a number of
//! natural-sounding requirements on solution concepts turn out to be
//! incompatible with them. The [`transforms`] module decides the
//! relation and builds certificate games witnessing those
//! incompatibilities; the [`harness`] module audits solution concepts
//! against the requirements mechanically.
//!
//! # Modules
//!
//! * [`game`]: dense payoff tensors, pure/mixed/correlated behaviors,
//!   and exact expected payoff evaluation.
//! * [`rational`]: the [`Rational`] alias plus parsing and formatting.
//! * [`classic`]: small named fixtures (prisoner's dilemma, matching
//!   pennies, coordination, stag hunt, three-player majority).
//! * [`lp`]: an exact two-phase simplex solver, linear-system solving,
//!   and zero-sum game values with duality checked on every solve.
//! * [`rationality`]: pure and coalition punishment levels and the
//!   strict individual-rationality predicates built on them.
//! * [`equilibria`]: pure, mixed, correlated, and coarse correlated
//!   equilibrium tests; pure-equilibrium enumeration; support
//!   enumeration for two-player mixed equilibria; LP corners of the
//!   correlated polytopes.
//! * [`transforms`]: opponent-conditioned transfers, the equivalence
//!   decision with offset certificates, and the four witness
//!   constructions (behavior-level and recommendation-level
//!   rationality failures, equilibrium elevation, and the
//!   two-certificate contradiction showing no transfer-invariant
//!   singleton selection of strict equilibria exists).
//! * [`harness`]: named solution maps, axiom audits with re-verifiable
//!   counterexamples, seeded random game families, and mechanical
//!   verification of the statements the witness constructions prove.
//! * [`gamefile`]: the text format for games and behavior specs
//!   (1-based, label-aware).
//! * [`report`]: deterministic text and JSON renderings of analyses,
//!   certificates, audit verdicts, and verification reports.
//!
//! # Runnable examples
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! ```text
//! cargo run --example analyze_fixtures      # punishment levels and equilibria
//! cargo run --example equivalence           # deciding transfer equivalence
//! cargo run --example rationality_values    # pure vs coalition punishment
//! cargo run --example equilibrium_tour      # PNE/NE/CE/CCE nesting
//! cargo run --example witness_behavior      # rationality failure certificates
//! cargo run --example witness_recommendation  # conditional failure certificates
//! cargo run --example elevate_equilibrium   # equilibria become maximizers
//! cargo run --example impossibility         # the contradiction pair
//! cargo run --example audit_solution_maps   # axiom audits over random games
//! cargo run --example verify_statements     # mechanical verification
//! ```
//!
//! The same functionality is scriptable through the thin `strateq`
//! binary; see the repository README for the command surface.

pub mod classic;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod gamefile;
pub mod harness;
pub mod lp;
pub mod rational;
pub mod rationality;
pub mod report;
pub mod transforms;

pub use error::{Error, Result};
pub use game::{Behavior, BehaviorKind, CorrelatedDistribution, Game, MixedProfile, PureProfile};
pub use rational::Rational;
