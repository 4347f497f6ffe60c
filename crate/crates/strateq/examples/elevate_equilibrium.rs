//! Every pure equilibrium is a weak simultaneous maximizer of some
//! equivalent game: pay each player a large bonus whenever the others
//! stick to the equilibrium. The bonus rides on opponents' actions
//! only, so incentives are untouched, but the equilibrium profile now
//! pays everyone more than any profile outside it can.

use strateq::equilibria::{enumerate_pne, find_maximizers};
use strateq::gamefile::parse_game_file;
use strateq::report::witness_text;
use strateq::transforms::sm_elevation;

fn main() -> strateq::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["pd", "stag_hunt"] {
        let text =
            std::fs::read_to_string(format!("{dir}/{name}.game")).expect("fixture file exists");
        let file = parse_game_file(&text)?;
        println!("== {name} ==");
        for profile in enumerate_pne(&file.game) {
            let cert = sm_elevation(&file.game, &profile)?;
            print!(
                "{}",
                witness_text(
                    &file,
                    "elevated to a weak simultaneous maximizer of:",
                    &cert,
                )
            );
            let report = find_maximizers(&cert.transformed);
            let shown: Vec<String> = report
                .weak_maximizers
                .iter()
                .map(|p| strateq::gamefile::format_profile(&file, p))
                .collect();
            println!("maximizers of the transformed game: {}", shown.join("; "));
            println!();
        }
    }
    Ok(())
}
