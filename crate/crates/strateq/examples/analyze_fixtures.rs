//! Full analysis of the bundled fixture games: punishment levels, pure
//! equilibria, simultaneous maximizers, and one welfare-optimal vertex
//! of each correlated polytope.

use strateq::gamefile::parse_game_file;
use strateq::report::analyze;

fn main() -> strateq::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["pd", "mp", "coordination", "stag_hunt", "majority"] {
        let path = format!("{dir}/{name}.game");
        let text = std::fs::read_to_string(&path).expect("fixture file exists");
        let file = parse_game_file(&text)?;
        println!("== {name} ==");
        print!("{}", analyze(&file)?.to_text());
        println!();
    }
    Ok(())
}
