//! The text format for games and the command-line syntax for
//! behaviors. Players and actions are 1-based on this surface; action
//! labels, when declared, may stand in for indices anywhere an action
//! is named.
//!
//! Game files:
//!
//! ```text
//! # lines starting the hash begin comments
//! players: 2
//! actions: 2 2
//! labels 1: C D
//! labels 2: C D
//! payoffs 1: 3 0 4 1
//! payoffs 2: 3 4 0 1
//! ```
//!
//! Payoffs are exact rationals ("p" or "p/q") in lexicographic profile
//! order with the last player's action varying fastest; they may
//! continue across lines. Behavior specs: pure "D,D", mixed
//! "1/2,1/2;1/2,1/2" (players separated by ';'), correlated
//! "1/2@C,C 1/2@D,D" (weighted profiles separated by spaces).

use crate::error::{Error, Result};
use crate::game::{
    profile_index, profiles, Behavior, CorrelatedDistribution, Game, MixedProfile, PureProfile,
};
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A parsed game plus any action labels declared for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFile {
    pub game: Game,
    /// Per-player label lists; `None` when the file declares none.
    pub labels: Vec<Option<Vec<String>>>,
}

impl GameFile {
    /// A file wrapper with no labels.
    pub fn bare(game: Game) -> Self {
        let labels = vec![None; game.num_players()];
        GameFile { game, labels }
    }

    /// Display name of an action: its label, or its 1-based index.
    pub fn action_name(&self, player: usize, action: usize) -> String {
        match &self.labels[player] {
            Some(names) => names[action].clone(),
            None => (action + 1).to_string(),
        }
    }

    /// Resolve an action token for `player`: a declared label, or a
    /// 1-based index.
    pub fn resolve_action(&self, player: usize, token: &str) -> Result<usize> {
        if let Some(names) = &self.labels[player] {
            if let Some(idx) = names.iter().position(|n| n == token) {
                return Ok(idx);
            }
        }
        let count = self.game.action_counts()[player];
        match token.parse::<usize>() {
            Ok(n) if n >= 1 && n <= count => Ok(n - 1),
            _ => Err(Error::InvalidDistribution(format!(
                "unknown action '{token}' for player {} (expected a label or 1..={count})",
                player + 1
            ))),
        }
    }
}

struct Token {
    line: usize,
    column: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Vec<Token>> {
    let mut lines = Vec::new();
    for (line_idx, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (col, ch) in content.char_indices().chain([(content.len(), ' ')]) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token {
                        line: line_idx + 1,
                        column: s + 1,
                        text: content[s..col].to_string(),
                    });
                }
            } else if start.is_none() {
                start = Some(col);
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn parse_error(token: &Token, message: impl Into<String>) -> Error {
    Error::Parse {
        line: token.line,
        column: token.column,
        message: message.into(),
    }
}

fn end_error(lines: &[Vec<Token>], message: impl Into<String>) -> Error {
    let (line, column) = lines
        .last()
        .and_then(|l| l.last())
        .map(|t| (t.line, t.column + t.text.chars().count()))
        .unwrap_or((1, 1));
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A header token like `"3:"`: its 1-based index.
fn header_index(token: &Token, what: &str) -> Result<usize> {
    let text = token
        .text
        .strip_suffix(':')
        .ok_or_else(|| parse_error(token, format!("expected '{what} <n>:'")))?;
    let n: usize = text
        .parse()
        .map_err(|_| parse_error(token, format!("expected a player number, found '{text}'")))?;
    if n == 0 {
        return Err(parse_error(token, "players are numbered from 1"));
    }
    Ok(n - 1)
}

fn count_token(token: &Token, what: &str) -> Result<usize> {
    let n: usize = token
        .text
        .parse()
        .map_err(|_| parse_error(token, format!("expected a {what}, found '{}'", token.text)))?;
    if n == 0 {
        return Err(parse_error(token, format!("{what} must be at least 1")));
    }
    Ok(n)
}

/// Parse the full file: game and labels.
pub fn parse_game_file(text: &str) -> Result<GameFile> {
    let lines = tokenize(text);
    let mut iter = lines.iter();

    let players_line = iter
        .next()
        .ok_or_else(|| end_error(&lines, "empty file: expected 'players: <n>'"))?;
    if players_line[0].text != "players:" {
        return Err(parse_error(&players_line[0], "expected 'players: <n>'"));
    }
    if players_line.len() != 2 {
        return Err(parse_error(
            &players_line[0],
            "expected exactly one count after 'players:'",
        ));
    }
    let num_players = count_token(&players_line[1], "player count")?;

    let actions_line = iter
        .next()
        .ok_or_else(|| end_error(&lines, "expected 'actions: <k1> <k2> ...'"))?;
    if actions_line[0].text != "actions:" {
        return Err(parse_error(
            &actions_line[0],
            "expected 'actions: <k1> <k2> ...'",
        ));
    }
    if actions_line.len() != num_players + 1 {
        return Err(parse_error(
            &actions_line[0],
            format!(
                "expected {} action counts, found {}",
                num_players,
                actions_line.len() - 1
            ),
        ));
    }
    let mut action_counts = Vec::with_capacity(num_players);
    for token in &actions_line[1..] {
        action_counts.push(count_token(token, "action count")?);
    }

    let mut labels: Vec<Option<Vec<String>>> = vec![None; num_players];
    let mut payoffs: Vec<Option<Vec<Rational>>> = vec![None; num_players];
    let cells = crate::game::profile_count(&action_counts);
    let mut expecting_player = 0usize;
    let mut current: Option<(usize, Vec<Rational>)> = None;

    let finish_block = |current: &mut Option<(usize, Vec<Rational>)>,
                        payoffs: &mut Vec<Option<Vec<Rational>>>,
                        at: &Token|
     -> Result<()> {
        if let Some((player, values)) = current.take() {
            if values.len() != cells {
                return Err(parse_error(
                    at,
                    format!(
                        "player {} expects {} payoffs, found {}",
                        player + 1,
                        cells,
                        values.len()
                    ),
                ));
            }
            payoffs[player] = Some(values);
        }
        Ok(())
    };

    for line in iter {
        let head = &line[0];
        if head.text == "labels" {
            if current.is_some() || expecting_player > 0 {
                return Err(parse_error(head, "labels must precede the payoff blocks"));
            }
            if line.len() < 2 {
                return Err(parse_error(head, "expected 'labels <player>: <names...>'"));
            }
            let player = header_index(&line[1], "labels")?;
            if player >= num_players {
                return Err(parse_error(
                    &line[1],
                    format!(
                        "player {} out of range (the game has {num_players})",
                        player + 1
                    ),
                ));
            }
            let names: Vec<String> = line[2..].iter().map(|t| t.text.clone()).collect();
            if names.len() != action_counts[player] {
                return Err(parse_error(
                    &line[1],
                    format!(
                        "player {} expects {} labels, found {}",
                        player + 1,
                        action_counts[player],
                        names.len()
                    ),
                ));
            }
            for (pos, name) in names.iter().enumerate() {
                if name.contains([',', ';', '@', ':']) {
                    return Err(parse_error(
                        &line[2 + pos],
                        format!("label '{name}' may not contain ',', ';', '@', or ':'"),
                    ));
                }
                if names[..pos].contains(name) {
                    return Err(parse_error(
                        &line[2 + pos],
                        format!("duplicate label '{name}' for player {}", player + 1),
                    ));
                }
            }
            if labels[player].is_some() {
                return Err(parse_error(
                    &line[1],
                    format!("labels for player {} declared twice", player + 1),
                ));
            }
            labels[player] = Some(names);
            continue;
        }
        if head.text == "payoffs" {
            finish_block(&mut current, &mut payoffs, head)?;
            if line.len() < 2 {
                return Err(parse_error(head, "expected 'payoffs <player>:'"));
            }
            let player = header_index(&line[1], "payoffs")?;
            if player >= num_players {
                return Err(parse_error(
                    &line[1],
                    format!(
                        "player {} out of range (the game has {num_players})",
                        player + 1
                    ),
                ));
            }
            if player != expecting_player {
                return Err(parse_error(
                    &line[1],
                    format!(
                        "expected payoffs for player {}, found player {}",
                        expecting_player + 1,
                        player + 1
                    ),
                ));
            }
            expecting_player += 1;
            current = Some((player, Vec::with_capacity(cells)));
            for token in &line[2..] {
                push_payoff(&mut current, token, cells)?;
            }
            continue;
        }
        if current.is_some() {
            for token in line {
                push_payoff(&mut current, token, cells)?;
            }
            continue;
        }
        return Err(parse_error(
            head,
            format!(
                "unexpected '{}' (expected 'labels', or 'payoffs')",
                head.text
            ),
        ));
    }
    if let Some((player, values)) = current.take() {
        if values.len() != cells {
            return Err(end_error(
                &lines,
                format!(
                    "player {} expects {} payoffs, found {}",
                    player + 1,
                    cells,
                    values.len()
                ),
            ));
        }
        payoffs[player] = Some(values);
    }
    let mut tensors = Vec::with_capacity(num_players);
    for (player, block) in payoffs.into_iter().enumerate() {
        match block {
            Some(values) => tensors.push(values),
            None => {
                return Err(end_error(
                    &lines,
                    format!("missing payoffs for player {}", player + 1),
                ))
            }
        }
    }
    Ok(GameFile {
        game: Game::new(action_counts, tensors)?,
        labels,
    })
}

fn push_payoff(
    current: &mut Option<(usize, Vec<Rational>)>,
    token: &Token,
    cells: usize,
) -> Result<()> {
    let (player, values) = current.as_mut().expect("inside a payoff block");
    if values.len() == cells {
        return Err(parse_error(
            token,
            format!(
                "too many payoffs for player {} (expected {})",
                *player + 1,
                cells
            ),
        ));
    }
    match parse_rational(&token.text) {
        Some(v) => {
            values.push(v);
            Ok(())
        }
        None => Err(parse_error(
            token,
            format!(
                "'{}' is not a rational ('p' or 'p/q', nonzero denominator)",
                token.text
            ),
        )),
    }
}

/// Parse a game, discarding labels.
pub fn parse_game(text: &str) -> Result<Game> {
    Ok(parse_game_file(text)?.game)
}

/// Canonical text for a game. `parse_game` inverts this exactly.
pub fn serialize_game(game: &Game) -> String {
    serialize_game_file(&GameFile::bare(game.clone()))
}

/// Canonical text including label lines.
pub fn serialize_game_file(file: &GameFile) -> String {
    let game = &file.game;
    let mut out = format!("players: {}\n", game.num_players());
    out.push_str("actions:");
    for &k in game.action_counts() {
        out.push_str(&format!(" {k}"));
    }
    out.push('\n');
    for (player, labels) in file.labels.iter().enumerate() {
        if let Some(names) = labels {
            out.push_str(&format!("labels {}: {}\n", player + 1, names.join(" ")));
        }
    }
    for player in 0..game.num_players() {
        out.push_str(&format!("payoffs {}:", player + 1));
        for value in game.payoff_tensor(player) {
            out.push(' ');
            out.push_str(&format_rational(value));
        }
        out.push('\n');
    }
    out
}

/// Parse a behavior spec against a game's shape and labels. The form
/// decides the kind: '@' means correlated, ';' means mixed, otherwise
/// a pure profile (falling back to mixed for one-player weight lists).
pub fn parse_behavior(file: &GameFile, spec: &str) -> Result<Behavior> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::InvalidDistribution("empty behavior spec".into()));
    }
    if spec.contains('@') {
        return parse_correlated_spec(file, spec).map(Behavior::Correlated);
    }
    if spec.contains(';') {
        return parse_mixed_spec(file, spec).map(Behavior::Mixed);
    }
    match parse_profile(file, spec) {
        Ok(profile) => Ok(Behavior::Pure(profile)),
        Err(profile_err) => {
            if file.game.num_players() == 1 {
                parse_mixed_spec(file, spec).map(Behavior::Mixed)
            } else {
                Err(profile_err)
            }
        }
    }
}

/// Parse a pure profile like "D,D" or "2,2".
pub fn parse_profile(file: &GameFile, spec: &str) -> Result<PureProfile> {
    let tokens: Vec<&str> = spec.trim().split(',').map(str::trim).collect();
    let n = file.game.num_players();
    if tokens.len() != n {
        return Err(Error::InvalidDistribution(format!(
            "profile '{spec}' names {} actions, the game has {n} players",
            tokens.len()
        )));
    }
    let mut actions = Vec::with_capacity(n);
    for (player, token) in tokens.iter().enumerate() {
        actions.push(file.resolve_action(player, token)?);
    }
    Ok(PureProfile::new(actions))
}

fn parse_weight(token: &str) -> Result<Rational> {
    match parse_rational(token) {
        Some(v) if v >= Rational::zero() => Ok(v),
        Some(_) => Err(Error::InvalidDistribution(format!(
            "negative weight '{token}'"
        ))),
        None => Err(Error::InvalidDistribution(format!(
            "'{token}' is not a rational weight"
        ))),
    }
}

fn parse_mixed_spec(file: &GameFile, spec: &str) -> Result<MixedProfile> {
    let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
    let n = file.game.num_players();
    if parts.len() != n {
        return Err(Error::InvalidDistribution(format!(
            "mixed spec '{spec}' lists {} players, the game has {n}",
            parts.len()
        )));
    }
    let mut per_player = Vec::with_capacity(n);
    for (player, part) in parts.iter().enumerate() {
        let weights: Vec<Rational> = part
            .split(',')
            .map(str::trim)
            .map(parse_weight)
            .collect::<Result<_>>()?;
        let count = file.game.action_counts()[player];
        if weights.len() != count {
            return Err(Error::InvalidDistribution(format!(
                "player {} lists {} weights, expected {count}",
                player + 1,
                weights.len()
            )));
        }
        per_player.push(weights);
    }
    MixedProfile::new(per_player)
}

fn parse_correlated_spec(file: &GameFile, spec: &str) -> Result<CorrelatedDistribution> {
    let counts = file.game.action_counts();
    let mut weights = vec![Rational::zero(); file.game.num_profiles()];
    let mut seen = vec![false; weights.len()];
    for atom in spec.split_whitespace() {
        let (weight, profile) = atom.split_once('@').ok_or_else(|| {
            Error::InvalidDistribution(format!("expected '<weight>@<profile>', found '{atom}'"))
        })?;
        let weight = parse_weight(weight)?;
        let profile = parse_profile(file, profile)?;
        let idx = profile_index(counts, &profile.actions);
        if seen[idx] {
            return Err(Error::InvalidDistribution(format!(
                "profile '{}' listed twice",
                format_profile(file, &profile)
            )));
        }
        seen[idx] = true;
        weights[idx] = weight;
    }
    CorrelatedDistribution::new(counts.to_vec(), weights)
}

/// Render a pure profile in spec syntax.
pub fn format_profile(file: &GameFile, profile: &PureProfile) -> String {
    profile
        .actions
        .iter()
        .enumerate()
        .map(|(player, &action)| file.action_name(player, action))
        .collect::<Vec<_>>()
        .join(",")
}

/// Render a behavior in spec syntax. `parse_behavior` inverts this.
pub fn format_behavior(file: &GameFile, behavior: &Behavior) -> String {
    match behavior {
        Behavior::Pure(profile) => format_profile(file, profile),
        Behavior::Mixed(mix) => (0..file.game.num_players())
            .map(|player| {
                mix.strategy(player)
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";"),
        Behavior::Correlated(dist) => {
            let mut atoms = Vec::new();
            for profile in profiles(file.game.action_counts()) {
                let w = dist.weight(&profile);
                if !w.is_zero() {
                    atoms.push(format!(
                        "{}@{}",
                        format_rational(&w),
                        format_profile(file, &PureProfile::new(profile))
                    ));
                }
            }
            atoms.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;
    use crate::harness::{random_game, GameFamilySpec};
    use crate::rational::{rat, ratio};

    const PD_FILE: &str = "\
# a 2x2 dilemma
players: 2
actions: 2 2
labels 1: C D
labels 2: C D
payoffs 1: 3 0 4 1
payoffs 2: 3 4 0 1
";

    #[test]
    fn parses_the_dilemma_fixture() {
        let file = parse_game_file(PD_FILE).unwrap();
        assert_eq!(file.game, classic::prisoners_dilemma());
        assert_eq!(file.game.payoff(0, &[1, 0]), &rat(4));
        assert_eq!(file.labels[0], Some(vec!["C".into(), "D".into()]));
    }

    #[test]
    fn payoffs_may_continue_across_lines() {
        let text = "\
players: 2
actions: 2 2
payoffs 1:
3 0
4 1
payoffs 2: 3 4 0 1
";
        assert_eq!(parse_game(text).unwrap(), classic::prisoners_dilemma());
    }

    #[test]
    fn round_trips_fixture_games() {
        for game in [
            classic::prisoners_dilemma(),
            classic::matching_pennies(),
            classic::three_player_majority(),
            classic::unbalanced_pennies(),
        ] {
            assert_eq!(parse_game(&serialize_game(&game)).unwrap(), game);
        }
    }

    #[test]
    fn round_trips_labeled_files() {
        let file = parse_game_file(PD_FILE).unwrap();
        let text = serialize_game_file(&file);
        assert_eq!(parse_game_file(&text).unwrap(), file);
    }

    #[test]
    fn round_trips_random_games() {
        let spec = GameFamilySpec::new((2, 3), (2, 4), (-9, 9), 77, 25);
        for index in 0..25 {
            let game = random_game(&spec, index).unwrap();
            assert_eq!(parse_game(&serialize_game(&game)).unwrap(), game);
        }
    }

    #[test]
    fn wrong_payoff_count_names_the_player() {
        let text = "\
players: 2
actions: 2 2
payoffs 1: 3 0 4
payoffs 2: 3 4 0 1
";
        match parse_game(text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("player 1"), "{message}");
                assert!(message.contains("4 payoffs"), "{message}");
                assert!(message.contains("found 3"), "{message}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_and_column_for_bad_rationals() {
        let text = "\
players: 2
actions: 2 2
payoffs 1: 3 0 4/0 1
payoffs 2: 3 4 0 1
";
        match parse_game(text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (3, 16));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_structure() {
        assert!(parse_game("").is_err());
        assert!(parse_game("players: 0\n").is_err());
        assert!(parse_game("players: 2\nactions: 2\n").is_err());
        assert!(parse_game("players: x\n").is_err());
        let missing = "players: 2\nactions: 2 2\npayoffs 1: 0 0 0 0\n";
        assert!(matches!(parse_game(missing), Err(Error::Parse { .. })));
        let out_of_order = "\
players: 2
actions: 2 2
payoffs 2: 3 4 0 1
payoffs 1: 3 0 4 1
";
        assert!(parse_game(out_of_order).is_err());
        let dup_label = "\
players: 2
actions: 2 2
labels 1: A A
payoffs 1: 0 0 0 0
payoffs 2: 0 0 0 0
";
        assert!(parse_game(dup_label).is_err());
    }

    #[test]
    fn behavior_specs_round_trip() {
        let file = parse_game_file(PD_FILE).unwrap();
        let pure = parse_behavior(&file, "D,D").unwrap();
        assert_eq!(pure, Behavior::Pure(PureProfile::new(vec![1, 1])));
        assert_eq!(format_behavior(&file, &pure), "D,D");

        let mixed = parse_behavior(&file, "1/2,1/2;1/3,2/3").unwrap();
        match &mixed {
            Behavior::Mixed(m) => {
                assert_eq!(m.strategy(1), &[ratio(1, 3), ratio(2, 3)]);
            }
            other => panic!("expected mixed, got {other:?}"),
        }
        assert_eq!(format_behavior(&file, &mixed), "1/2,1/2;1/3,2/3");

        let correlated = parse_behavior(&file, "1/2@C,C 1/2@D,D").unwrap();
        match &correlated {
            Behavior::Correlated(d) => {
                assert_eq!(d.weight(&[0, 0]), &ratio(1, 2));
                assert_eq!(d.weight(&[0, 1]), &rat(0));
            }
            other => panic!("expected correlated, got {other:?}"),
        }
        assert_eq!(format_behavior(&file, &correlated), "1/2@C,C 1/2@D,D");

        // numeric indices resolve even with labels declared
        assert_eq!(parse_behavior(&file, "2,2").unwrap(), pure);
    }

    #[test]
    fn behavior_specs_validate() {
        let file = parse_game_file(PD_FILE).unwrap();
        assert!(parse_behavior(&file, "D").is_err());
        assert!(parse_behavior(&file, "D,X").is_err());
        assert!(parse_behavior(&file, "3,1").is_err());
        assert!(parse_behavior(&file, "1/2,1/2").is_err());
        assert!(parse_behavior(&file, "1/2,1/2;1/2,1/3").is_err());
        assert!(parse_behavior(&file, "1/2,1/2;1/2").is_err());
        assert!(parse_behavior(&file, "-1/2,3/2;1/2,1/2").is_err());
        assert!(parse_behavior(&file, "1/2@C,C 1/3@D,D").is_err());
        assert!(parse_behavior(&file, "1/2@C,C 1/2@C,C").is_err());
        assert!(parse_behavior(&file, "1/2&C,C").is_err());
    }

    #[test]
    fn unlabeled_games_use_indices() {
        let file = GameFile::bare(classic::matching_pennies());
        let pure = parse_behavior(&file, "1,2").unwrap();
        assert_eq!(pure, Behavior::Pure(PureProfile::new(vec![0, 1])));
        assert_eq!(format_behavior(&file, &pure), "1,2");
    }
}
