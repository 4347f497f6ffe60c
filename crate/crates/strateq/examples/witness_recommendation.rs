//! The same construction at the level of recommendations. Under the
//! uniform joint distribution on the prisoner's dilemma every
//! recommendation pays above the punishment level conditionally, yet a
//! player told to cooperate would still rather defect. That
//! disobedience incentive is enough to build an equivalent game in
//! which obeying the recommendation pays below the punishment level,
//! so conditional rationality cannot be required of solutions either.

use strateq::equilibria::is_ce;
use strateq::game::CorrelatedDistribution;
use strateq::gamefile::parse_game_file;
use strateq::rationality::pirar_violation;
use strateq::report::witness_text;
use strateq::transforms::pirar_violation_witness;

fn main() -> strateq::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/pd.game"))
        .expect("fixture file exists");
    let file = parse_game_file(&text)?;
    let game = &file.game;

    let uniform = CorrelatedDistribution::uniform(game.action_counts());
    match pirar_violation(game, &strateq::Behavior::Correlated(uniform.clone()))? {
        None => println!("every recommendation beats the punishment level conditionally"),
        Some(v) => println!(
            "recommendation-level rationality already fails for player {}",
            v.player + 1
        ),
    }
    let report = is_ce(game, &uniform)?;
    let deviation = report.first().expect("uniform play is not obedient here");
    println!(
        "but player {} told to play {} gains {} by switching to {}",
        deviation.player + 1,
        deviation.recommendation.expect("conditional check") + 1,
        strateq::rational::format_rational(&deviation.gain),
        deviation.action + 1
    );
    println!();

    let cert = pirar_violation_witness(
        game,
        &uniform,
        deviation.player,
        deviation.recommendation.expect("conditional check"),
        deviation.action,
    )?;
    print!(
        "{}",
        witness_text(
            &file,
            "in this equivalent game, obeying that recommendation pays \
             below the punishment level:",
            &cert,
        )
    );
    Ok(())
}
