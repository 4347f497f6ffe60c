//! Human-readable report rendering. Every renderer is deterministic:
//! identical inputs produce byte-identical text, so reports can be
//! diffed and archived. Exact values are printed in canonical "p/q"
//! form and actions by their labels (or 1-based indices) throughout.

use crate::equilibria::{enumerate_pne, find_cce, find_ce, find_maximizers, welfare_objective};
use crate::error::Result;
use crate::game::{Behavior, Game, PureProfile};
use crate::gamefile::{format_behavior, format_profile, serialize_game, GameFile};
use crate::harness::{AuditVerdict, Counterexample, PropositionReport, SolutionMap};
use crate::rational::format_rational;
use crate::rationality::rationality_values;
use crate::transforms::{Equivalence, WitnessCertificate};
use serde::{Deserialize, Serialize};

/// Summary of one game: punishment levels, pure equilibria, maximizer
/// report, and one welfare-optimal vertex of each correlated polytope.
/// All values are canonical strings, so the struct serializes the same
/// way it prints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub players: usize,
    pub actions: Vec<usize>,
    pub pure_punishment: Vec<String>,
    pub coalition_punishment: Vec<String>,
    pub individual_rationality: Option<Vec<String>>,
    pub pure_equilibria: Vec<String>,
    pub weak_maximizers: Vec<String>,
    pub strict_maximizer: Option<String>,
    pub ce_vertex: String,
    pub cce_vertex: String,
}

/// Compute the full analysis of a parsed game.
pub fn analyze(file: &GameFile) -> Result<AnalyzeReport> {
    let game = &file.game;
    let values = rationality_values(game)?;
    let maximizers = find_maximizers(game);
    let objective = welfare_objective(game);
    let ce = find_ce(game, &objective)?;
    let cce = find_cce(game, &objective)?;
    Ok(AnalyzeReport {
        players: game.num_players(),
        actions: game.action_counts().to_vec(),
        pure_punishment: values.pir.iter().map(format_rational).collect(),
        coalition_punishment: values.cir.iter().map(format_rational).collect(),
        individual_rationality: values.ir.map(|v| v.iter().map(format_rational).collect()),
        pure_equilibria: enumerate_pne(game)
            .iter()
            .map(|p| format_profile(file, p))
            .collect(),
        weak_maximizers: maximizers
            .weak_maximizers
            .iter()
            .map(|p| format_profile(file, p))
            .collect(),
        strict_maximizer: maximizers
            .strict_maximizer
            .map(|p| format_profile(file, &p)),
        ce_vertex: format_behavior(file, &Behavior::Correlated(ce)),
        cce_vertex: format_behavior(file, &Behavior::Correlated(cce)),
    })
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join("; ")
    }
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("players: {}\n", self.players));
        out.push_str(&format!(
            "actions: {}\n",
            self.actions
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ));
        out.push_str(&format!(
            "pure punishment levels: {}\n",
            self.pure_punishment.join(" ")
        ));
        out.push_str(&format!(
            "coalition punishment levels: {}\n",
            self.coalition_punishment.join(" ")
        ));
        out.push_str(&format!(
            "individual rationality levels: {}\n",
            match &self.individual_rationality {
                Some(v) => v.join(" "),
                None => "(two-player games only)".into(),
            }
        ));
        out.push_str(&format!(
            "pure equilibria: {}\n",
            list_or_none(&self.pure_equilibria)
        ));
        out.push_str(&format!(
            "weak simultaneous maximizers: {}\n",
            list_or_none(&self.weak_maximizers)
        ));
        out.push_str(&format!(
            "strict simultaneous maximizer: {}\n",
            self.strict_maximizer.as_deref().unwrap_or("none")
        ));
        out.push_str(&format!(
            "correlated equilibrium vertex (welfare objective): {}\n",
            self.ce_vertex
        ));
        out.push_str(&format!(
            "coarse correlated equilibrium vertex (welfare objective): {}\n",
            self.cce_vertex
        ));
        out
    }
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|l| format!("  {l}\n"))
        .collect::<Vec<_>>()
        .join("")
}

/// Render a witness certificate: headline, transformed game, offset
/// tables, every checked inequality, and the recheck outcome.
pub fn witness_text(file: &GameFile, headline: &str, cert: &WitnessCertificate) -> String {
    let mut out = String::new();
    out.push_str(headline);
    out.push('\n');
    out.push_str("transformed game:\n");
    let labeled = GameFile {
        game: cert.transformed.clone(),
        labels: file.labels.clone(),
    };
    out.push_str(&indent(&crate::gamefile::serialize_game_file(&labeled)));
    out.push_str("transfer offsets by opponent profile (lexicographic):\n");
    for (player, offsets) in cert.equivalence.offsets.iter().enumerate() {
        out.push_str(&format!(
            "  player {}: {}\n",
            player + 1,
            offsets
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str(&format!("checks ({}):\n", cert.checked_inequalities.len()));
    for ineq in &cert.checked_inequalities {
        out.push_str(&format!("  {ineq}\n"));
    }
    out.push_str(&format!(
        "certificate verifies: {}\n",
        match cert.verify() {
            Ok(()) => "yes".into(),
            Err(e) => format!("NO ({e})"),
        }
    ));
    out
}

/// Render an equivalence decision: the offset certificate, or the
/// refuting pair of profiles.
pub fn equivalence_text(file: &GameFile, equivalence: &Equivalence) -> String {
    match equivalence {
        Equivalence::Equivalent(cert) => {
            let mut out = String::from("equivalent: yes\n");
            out.push_str("transfer offsets by opponent profile (lexicographic):\n");
            for (player, offsets) in cert.offsets.iter().enumerate() {
                out.push_str(&format!(
                    "  player {}: {}\n",
                    player + 1,
                    offsets
                        .iter()
                        .map(format_rational)
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            out
        }
        Equivalence::NotEquivalent {
            player,
            profile_a,
            profile_b,
            difference_a,
            difference_b,
        } => {
            let mut out = String::from("equivalent: no\n");
            out.push_str(&format!(
                "player {} payoff differences disagree between profiles {} and {}: {} vs {}\n",
                player + 1,
                format_profile(file, profile_a),
                format_profile(file, profile_b),
                format_rational(difference_a),
                format_rational(difference_b),
            ));
            out.push_str(
                "the profiles differ only in that player's own action, so no sum of \
                 opponent-conditioned transfers can explain the gap\n",
            );
            out
        }
    }
}

fn behavior_line(game: &Game, behavior: &Behavior) -> String {
    format_behavior(&GameFile::bare(game.clone()), behavior)
}

fn profile_line(game: &Game, profile: &PureProfile) -> String {
    format_profile(&GameFile::bare(game.clone()), profile)
}

/// Render an audit verdict, re-deriving the counterexample through the
/// map as a final integrity line.
pub fn verdict_text(verdict: &AuditVerdict, map: &SolutionMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("map: {}\n", verdict.map));
    out.push_str(&format!("axiom: {}\n", verdict.axiom));
    out.push_str(&format!("status: {}\n", verdict.status));
    out.push_str(&format!("games checked: {}\n", verdict.games_checked));
    out.push_str(&format!("cases checked: {}\n", verdict.cases_checked));
    match &verdict.counterexample {
        None => {}
        Some(ce) => {
            match ce {
                Counterexample::DirectViolation {
                    game,
                    behavior,
                    inequalities,
                } => {
                    out.push_str("counterexample: selected behavior fails the requirement\n");
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    out.push_str(&format!("behavior: {}\n", behavior_line(game, behavior)));
                    for ineq in inequalities {
                        out.push_str(&format!("  {ineq}\n"));
                    }
                }
                Counterexample::MissingMaximizer { game, profile, .. } => {
                    out.push_str("counterexample: weak simultaneous maximizer not selected\n");
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    out.push_str(&format!("profile: {}\n", profile_line(game, profile)));
                }
                Counterexample::WrongSingleton { game, profile, .. } => {
                    out.push_str(
                        "counterexample: strict simultaneous maximizer exists but the \
                         output is not that singleton\n",
                    );
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    out.push_str(&format!("profile: {}\n", profile_line(game, profile)));
                }
                Counterexample::TransformChangedOutput {
                    game,
                    transform,
                    before,
                    after,
                } => {
                    out.push_str("counterexample: a payoff transfer changed the output set\n");
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    out.push_str(&format!(
                        "transfer: pay player {} amount {} when opponents play {}\n",
                        transform.player + 1,
                        format_rational(&transform.amount),
                        transform
                            .opponents_profile
                            .iter()
                            .map(|a| (a + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                    ));
                    let render = |set: &std::collections::BTreeSet<Behavior>| {
                        if set.is_empty() {
                            "none".to_string()
                        } else {
                            set.iter()
                                .map(|b| behavior_line(game, b))
                                .collect::<Vec<_>>()
                                .join("; ")
                        }
                    };
                    out.push_str(&format!("output before: {}\n", render(before)));
                    out.push_str(&format!("output after:  {}\n", render(after)));
                }
                Counterexample::OrbitWitness {
                    game,
                    behavior,
                    witness,
                    ..
                } => {
                    out.push_str("counterexample: requirement fails on an equivalent game\n");
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    out.push_str(&format!("behavior: {}\n", behavior_line(game, behavior)));
                    out.push_str(&witness_text(
                        &GameFile::bare(game.clone()),
                        "witness:",
                        witness,
                    ));
                }
                Counterexample::ContradictionPair {
                    game,
                    first,
                    second,
                } => {
                    out.push_str(
                        "counterexample: two equivalent games with distinct unique strict \
                         maximizers\n",
                    );
                    out.push_str("game:\n");
                    out.push_str(&indent(&serialize_game(game)));
                    let bare = GameFile::bare(game.clone());
                    out.push_str(&witness_text(&bare, "first certificate:", first));
                    out.push_str(&witness_text(&bare, "second certificate:", second));
                }
            }
            out.push_str(&format!(
                "counterexample re-verifies: {}\n",
                if verdict.reverify(map) { "yes" } else { "NO" }
            ));
        }
    }
    out
}

/// Render a verification report.
pub fn report_text(report: &PropositionReport) -> String {
    let f = &report.family;
    let mut out = String::new();
    out.push_str(&format!("proposition: {}\n", report.proposition));
    out.push_str(&format!(
        "family: seed {}, {} games, players {}..{}, actions {}..{}, payoffs {}..{}\n",
        f.seed,
        f.count,
        f.min_players,
        f.max_players,
        f.min_actions,
        f.max_actions,
        f.min_payoff,
        f.max_payoff,
    ));
    out.push_str(&format!("samples per game: {}\n", report.samples_per_game));
    out.push_str(&format!("games checked: {}\n", report.games_checked));
    out.push_str(&format!("cases checked: {}\n", report.cases_checked));
    out.push_str(&format!(
        "witnesses verified: {}\n",
        report.witnesses_verified
    ));
    if report.failures.is_empty() {
        out.push_str("failures: none\n");
    } else {
        out.push_str(&format!("failures ({}):\n", report.failures.len()));
        for failure in &report.failures {
            out.push_str(&format!("  {failure}\n"));
        }
    }
    out.push_str(&format!(
        "verified: {}\n",
        if report.verified() { "yes" } else { "NO" }
    ));
    out
}

/// Pretty JSON with a trailing newline; deterministic for identical
/// values.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// One pass/fail line used by audit summaries.
pub fn status_line(label: &str, passed: bool) -> String {
    format!("{}: {}\n", label, if passed { "pass" } else { "FAIL" })
}
