use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use strateq::equilibria::{check_nudi, is_ce};
use strateq::error::Error;
use strateq::gamefile::{parse_behavior, parse_game_file, parse_profile, GameFile};
use strateq::harness::{
    builtin_solution_map, builtin_solution_maps, check_axiom, verify_proposition, AuditStatus,
    Axiom, GameFamilySpec, Proposition,
};
use strateq::rationality::to_correlated;
use strateq::report::{
    analyze, equivalence_text, report_text, to_json, verdict_text, witness_text,
};
use strateq::transforms::{
    pir_violation_witness, pirar_violation_witness, sm_elevation, strategically_equivalent,
    usm_contradiction, Equivalence, WitnessCertificate,
};
use strateq::Result;

/// Exit codes: 0 clean, 1 a violation or refutation was found, 2
/// usage or input error.
#[derive(Parser)]
#[command(
    name = "strateq",
    version,
    about = "Exact analysis of finite normal-form games: \
equivalence transforms, punishment levels, equilibria, witness certificates, and axiom audits"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Punishment levels, pure equilibria, maximizers, and one
    /// welfare-optimal vertex of each correlated polytope
    Analyze { file: PathBuf },
    /// Certificates that a behavior fails individual rationality in an
    /// equivalent game
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Certificate elevating a pure equilibrium to a weak simultaneous
    /// maximizer of an equivalent game
    Elevate {
        file: PathBuf,
        /// Profile, e.g. "D,D" or "2,2"
        #[arg(long)]
        profile: String,
    },
    /// From two distinct strict pure equilibria, two equivalent games
    /// whose unique strict maximizers differ
    Contradict {
        file: PathBuf,
        /// First strict equilibrium, e.g. "A,A"
        #[arg(long)]
        a: String,
        /// Second strict equilibrium, e.g. "B,B"
        #[arg(long)]
        b: String,
    },
    /// Decide whether two games differ only by opponent-conditioned
    /// payoff transfers
    Equiv { first: PathBuf, second: PathBuf },
    /// Audit a built-in solution map against an axiom over a random
    /// game family
    Audit {
        /// Map name; see --map help for the list
        #[arg(long, value_parser = parse_map_name)]
        map: String,
        /// SE, PIR, PIRAR, SM, USM, or NUDI
        #[arg(long)]
        axiom: String,
        /// Sampled transfers per game for the SE check
        #[arg(long, default_value_t = 10)]
        budget: usize,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Mechanically verify a statement (P1..P4, C1..C3) over a random
    /// game family
    Verify {
        /// P1, P2, P3, P4, C1, C2, or C3
        #[arg(long)]
        prop: String,
        /// Sampled behaviors per game and kind (or transfer budget for
        /// C2/C3)
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Witness that a behavior with a profitable unilateral deviation
    /// fails the punishment-level test in an equivalent game
    Nudi {
        file: PathBuf,
        /// Behavior spec: pure "D,D", mixed "1/2,1/2;1/2,1/2",
        /// correlated "1/2@C,C 1/2@D,D"
        #[arg(long)]
        behavior: String,
        /// Deviating player (1-based); omit to scan for one
        #[arg(long, requires = "action")]
        player: Option<usize>,
        /// Deviation action (label or 1-based index)
        #[arg(long, requires = "player")]
        action: Option<String>,
    },
    /// Witness that a recommendation a player would disobey fails the
    /// conditional punishment-level test in an equivalent game
    Pirar {
        file: PathBuf,
        /// Behavior spec; interpreted as a joint distribution
        #[arg(long)]
        behavior: String,
        /// Recommended player (1-based); omit to scan for a violation
        #[arg(long, requires_all = ["recommended", "action"])]
        player: Option<usize>,
        /// Recommended action (label or 1-based index)
        #[arg(long, requires_all = ["player", "action"])]
        recommended: Option<String>,
        /// Deviation action (label or 1-based index)
        #[arg(long, requires_all = ["player", "recommended"])]
        action: Option<String>,
    },
}

/// Random family shape; ranges are inclusive, "lo..hi" or a single
/// value.
#[derive(Args)]
struct FamilyArgs {
    /// Player count range, e.g. "2..3"
    #[arg(long, default_value = "2..3")]
    players: String,
    /// Per-player action count range, e.g. "2..4"
    #[arg(long, default_value = "2..4")]
    actions: String,
    /// Integer payoff range, e.g. "-9..9"
    #[arg(long, default_value = "-9..9", allow_hyphen_values = true)]
    payoffs: String,
    /// Generator seed; same seed, same games
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of games
    #[arg(long, default_value_t = 100)]
    count: usize,
}

fn parse_map_name(s: &str) -> std::result::Result<String, String> {
    if builtin_solution_map(s).is_some() {
        Ok(s.to_string())
    } else {
        let names: Vec<String> = builtin_solution_maps()
            .iter()
            .map(|m| m.name.clone())
            .collect();
        Err(format!(
            "unknown map '{s}'; built-ins: {}",
            names.join(", ")
        ))
    }
}

fn split_range(s: &str) -> Option<(&str, &str)> {
    let (lo, hi) = s.split_once("..")?;
    Some((lo, hi.strip_prefix('=').unwrap_or(hi)))
}

fn parse_usize_range(s: &str, what: &str) -> Result<(usize, usize)> {
    let parse = |t: &str| -> Result<usize> {
        t.trim()
            .parse()
            .map_err(|_| Error::PreconditionNotMet(format!("invalid {what} range '{s}'")))
    };
    match split_range(s) {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => parse(s).map(|v| (v, v)),
    }
}

fn parse_i64_range(s: &str, what: &str) -> Result<(i64, i64)> {
    let parse = |t: &str| -> Result<i64> {
        t.trim()
            .parse()
            .map_err(|_| Error::PreconditionNotMet(format!("invalid {what} range '{s}'")))
    };
    match split_range(s) {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => parse(s).map(|v| (v, v)),
    }
}

impl FamilyArgs {
    fn to_spec(&self) -> Result<GameFamilySpec> {
        let spec = GameFamilySpec::new(
            parse_usize_range(&self.players, "player")?,
            parse_usize_range(&self.actions, "action")?,
            parse_i64_range(&self.payoffs, "payoff")?,
            self.seed,
            self.count,
        );
        spec.validate()?;
        Ok(spec)
    }
}

fn load(path: &Path) -> Result<GameFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidGame(format!("cannot read {}: {e}", path.display())))?;
    parse_game_file(&text)
}

/// JSON shape for the witness commands: either a certificate or the
/// reason no violation exists.
#[derive(Serialize)]
struct WitnessOutput<'a> {
    violation_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a WitnessCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct ContradictOutput<'a> {
    first: &'a WitnessCertificate,
    second: &'a WitnessCertificate,
}

fn emit_witness(json: bool, file: &GameFile, headline: &str, cert: &WitnessCertificate) {
    if json {
        print!(
            "{}",
            to_json(&WitnessOutput {
                violation_found: true,
                certificate: Some(cert),
                reason: None,
            })
        );
    } else {
        print!("{}", witness_text(file, headline, cert));
    }
}

fn emit_no_violation(json: bool, reason: String) {
    if json {
        print!(
            "{}",
            to_json(&WitnessOutput {
                violation_found: false,
                certificate: None,
                reason: Some(reason),
            })
        );
    } else {
        println!("no violation: {reason}");
    }
}

fn resolve_player(file: &GameFile, player: usize) -> Result<usize> {
    let n = file.game.num_players();
    if player >= 1 && player <= n {
        Ok(player - 1)
    } else {
        Err(Error::PreconditionNotMet(format!(
            "--player must be between 1 and {n}"
        )))
    }
}

fn one_based(profile: &[usize]) -> String {
    let parts: Vec<String> = profile.iter().map(|a| (a + 1).to_string()).collect();
    parts.join(",")
}

/// Library errors carry 0-based indices; the command line is 1-based,
/// so shift the variants that name profiles or actions.
fn render_error(e: &Error) -> String {
    match e {
        Error::NotAPureNashEquilibrium { profile } => format!(
            "profile {} is not a pure Nash equilibrium",
            one_based(profile)
        ),
        Error::NotStrictPne { profile } => format!(
            "profile {} is not a strict pure Nash equilibrium",
            one_based(profile)
        ),
        Error::ZeroProbabilityCondition { player, action } => format!(
            "cannot condition on action {} of player {}: marginal probability is zero",
            action + 1,
            player + 1
        ),
        Error::ActionOutOfRange {
            player,
            action,
            count,
        } => format!(
            "action {} out of range for player {} ({count} actions)",
            action + 1,
            player + 1
        ),
        other => other.to_string(),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { file } => {
            let file = load(&file)?;
            let report = analyze(&file)?;
            if cli.json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
        Command::Witness(WitnessCommand::Nudi {
            file,
            behavior,
            player,
            action,
        }) => {
            let file = load(&file)?;
            let behavior = parse_behavior(&file, &behavior)?;
            let (player, action) = match (player, action) {
                (Some(p), Some(a)) => {
                    let p = resolve_player(&file, p)?;
                    (p, file.resolve_action(p, &a)?)
                }
                _ => match check_nudi(&file.game, &behavior)?.first() {
                    Some(dev) => (dev.player, dev.action),
                    None => {
                        emit_no_violation(
                            cli.json,
                            "no player has a profitable unilateral deviation".into(),
                        );
                        return Ok(0);
                    }
                },
            };
            match pir_violation_witness(&file.game, &behavior, player, action) {
                Ok(cert) => {
                    emit_witness(
                        cli.json,
                        &file,
                        "the behavior fails the punishment-level test in this \
                         equivalent game:",
                        &cert,
                    );
                    Ok(1)
                }
                Err(Error::PreconditionNotMet(reason)) => {
                    emit_no_violation(cli.json, reason);
                    Ok(0)
                }
                Err(e) => Err(e),
            }
        }
        Command::Witness(WitnessCommand::Pirar {
            file,
            behavior,
            player,
            recommended,
            action,
        }) => {
            let file = load(&file)?;
            let behavior = parse_behavior(&file, &behavior)?;
            let dist = to_correlated(&file.game, &behavior)?;
            let (player, recommended, action) = match (player, recommended, action) {
                (Some(p), Some(r), Some(a)) => {
                    let p = resolve_player(&file, p)?;
                    (p, file.resolve_action(p, &r)?, file.resolve_action(p, &a)?)
                }
                _ => match is_ce(&file.game, &dist)?.first() {
                    Some(dev) => (
                        dev.player,
                        dev.recommendation.expect("conditional check names it"),
                        dev.action,
                    ),
                    None => {
                        emit_no_violation(
                            cli.json,
                            "every positive-probability recommendation is conditionally \
                             optimal"
                                .into(),
                        );
                        return Ok(0);
                    }
                },
            };
            match pirar_violation_witness(&file.game, &dist, player, recommended, action) {
                Ok(cert) => {
                    emit_witness(
                        cli.json,
                        &file,
                        "obeying the recommendation fails the conditional \
                         punishment-level test in this equivalent game:",
                        &cert,
                    );
                    Ok(1)
                }
                Err(Error::PreconditionNotMet(reason)) => {
                    emit_no_violation(cli.json, reason);
                    Ok(0)
                }
                Err(Error::ZeroProbabilityCondition { player, action }) => {
                    emit_no_violation(
                        cli.json,
                        format!(
                            "player {} is never recommended action {}, so the \
                             requirement is vacuous there",
                            player + 1,
                            action + 1
                        ),
                    );
                    Ok(0)
                }
                Err(e) => Err(e),
            }
        }
        Command::Elevate { file, profile } => {
            let file = load(&file)?;
            let profile = parse_profile(&file, &profile)?;
            let cert = sm_elevation(&file.game, &profile)?;
            if cli.json {
                print!("{}", to_json(&cert));
            } else {
                print!(
                    "{}",
                    witness_text(
                        &file,
                        "the equilibrium is a weak simultaneous maximizer of this \
                         equivalent game:",
                        &cert,
                    )
                );
            }
            Ok(0)
        }
        Command::Contradict { file, a, b } => {
            let file = load(&file)?;
            let first = parse_profile(&file, &a)?;
            let second = parse_profile(&file, &b)?;
            let (cert_a, cert_b) = usm_contradiction(&file.game, &first, &second)?;
            if cli.json {
                print!(
                    "{}",
                    to_json(&ContradictOutput {
                        first: &cert_a,
                        second: &cert_b,
                    })
                );
            } else {
                print!(
                    "{}",
                    witness_text(
                        &file,
                        "first certificate (its unique strict maximizer is the first \
                         profile):",
                        &cert_a,
                    )
                );
                print!(
                    "{}",
                    witness_text(
                        &file,
                        "second certificate (its unique strict maximizer is the second \
                         profile):",
                        &cert_b,
                    )
                );
                println!(
                    "both games are equivalent to the original, so no transfer-invariant \
                     singleton selection exists"
                );
            }
            Ok(1)
        }
        Command::Equiv { first, second } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let equivalence = strategically_equivalent(&a.game, &b.game)?;
            if cli.json {
                print!("{}", to_json(&equivalence));
            } else {
                print!("{}", equivalence_text(&a, &equivalence));
            }
            match equivalence {
                Equivalence::Equivalent(_) => Ok(0),
                Equivalence::NotEquivalent { .. } => Ok(1),
            }
        }
        Command::Audit {
            map,
            axiom,
            budget,
            family,
        } => {
            let spec = family.to_spec()?;
            let map = builtin_solution_map(&map).expect("validated by the value parser");
            let axiom: Axiom = axiom.parse()?;
            let verdict = check_axiom(&map, axiom, &spec, budget)?;
            if cli.json {
                print!("{}", to_json(&verdict));
            } else {
                print!("{}", verdict_text(&verdict, &map));
            }
            Ok(if verdict.status == AuditStatus::Violated {
                1
            } else {
                0
            })
        }
        Command::Verify {
            prop,
            samples,
            family,
        } => {
            let spec = family.to_spec()?;
            let prop: Proposition = prop.parse()?;
            let report = verify_proposition(prop, &spec, samples)?;
            if cli.json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report_text(&report));
            }
            Ok(if report.verified() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", render_error(&e));
            ExitCode::from(2)
        }
    }
}
