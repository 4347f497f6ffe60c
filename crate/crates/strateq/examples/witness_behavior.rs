//! Mutual cooperation in the prisoner's dilemma beats both punishment
//! levels, yet a player would deviate. That deviation incentive is
//! enough to build an equivalent game in which cooperation pays the
//! cooperator less than the worst they could guarantee alone, so no
//! requirement pinned to punishment levels can force solutions to
//! contain it.

use strateq::game::{Behavior, PureProfile};
use strateq::gamefile::parse_game_file;
use strateq::rational::format_rational;
use strateq::rationality::{pir_holds, pir_values};
use strateq::report::witness_text;
use strateq::transforms::pir_violation_witness;

fn main() -> strateq::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/pd.game"))
        .expect("fixture file exists");
    let file = parse_game_file(&text)?;
    let game = &file.game;

    let cooperate = Behavior::Pure(PureProfile::new(vec![0, 0]));
    let levels: Vec<String> = pir_values(game).iter().map(format_rational).collect();
    println!("pure punishment levels: {}", levels.join(", "));
    println!(
        "mutual cooperation individually rational here: {}",
        pir_holds(game, &cooperate)?
    );
    println!();

    // Player 1 deviating to defect gains 1, and that gain is the
    // whole construction: zero out the deviation row for player 1.
    let cert = pir_violation_witness(game, &cooperate, 0, 1)?;
    print!(
        "{}",
        witness_text(
            &file,
            "in this equivalent game the same behavior is no longer \
             individually rational:",
            &cert,
        )
    );
    Ok(())
}
