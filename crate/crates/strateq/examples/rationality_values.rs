//! The three punishment levels and how they separate. Pure punishment
//! lets the committed player be exploited; coalition punishment lets
//! opponents correlate. Majority voting splits all three apart from
//! the player's perspective, and a scaled matching-pennies game shows
//! the pure and mixed guarantees differing for a lone player.

use strateq::classic::{matching_pennies, three_player_majority, unbalanced_pennies};
use strateq::rational::format_rational;
use strateq::rationality::{cir_solution, rationality_values};

fn main() -> strateq::Result<()> {
    let majority = three_player_majority();
    let values = rationality_values(&majority)?;
    println!("three-player majority:");
    println!("  pure punishment:      {}", row(&values.pir));
    println!("  coalition punishment: {}", row(&values.cir));
    println!("  (a committed voter can be stranded in the minority, so the");
    println!("   pure level is 0; mixing evenly recovers 1/2)");

    let mp = matching_pennies();
    let values = rationality_values(&mp)?;
    println!();
    println!("matching pennies:");
    println!("  pure punishment:      {}", row(&values.pir));
    println!("  coalition punishment: {}", row(&values.cir));
    let solution = cir_solution(&mp, 0)?;
    println!(
        "  player 1's maximin mix: {} (value {})",
        row(&solution.row_strategy),
        format_rational(&solution.value)
    );

    let up = unbalanced_pennies();
    let values = rationality_values(&up)?;
    println!();
    println!("unbalanced pennies:");
    println!("  pure punishment:      {}", row(&values.pir));
    println!("  coalition punishment: {}", row(&values.cir));
    let solution = cir_solution(&up, 0)?;
    println!(
        "  player 1 guarantees {} only by mixing {}",
        format_rational(&solution.value),
        row(&solution.row_strategy)
    );
    Ok(())
}

fn row(values: &[strateq::Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    parts.join(", ")
}
