//! The four equilibrium notions on the fixtures, and the chain that
//! relates them: every pure equilibrium is a Nash equilibrium, every
//! Nash equilibrium induces a correlated equilibrium, and every
//! correlated equilibrium is a coarse one. Traffic-light style
//! correlation in the coordination game shows the inclusion PNE into
//! CE is strict in value terms.

use strateq::classic::{coordination, matching_pennies, prisoners_dilemma};
use strateq::equilibria::{
    enumerate_ne_2p, enumerate_pne, find_cce, find_ce, is_cce, is_ce, welfare_objective,
};
use strateq::game::{Behavior, CorrelatedDistribution};
use strateq::gamefile::{format_behavior, GameFile};
use strateq::rational::{format_rational, ratio};

fn main() -> strateq::Result<()> {
    let pd = prisoners_dilemma();
    let pd_file = GameFile::bare(pd.clone());
    println!("prisoner's dilemma:");
    for profile in enumerate_pne(&pd) {
        println!(
            "  pure equilibrium: {}",
            format_behavior(&pd_file, &Behavior::Pure(profile))
        );
    }

    let mp = matching_pennies();
    println!();
    println!("matching pennies:");
    println!("  pure equilibria: {}", enumerate_pne(&mp).len());
    let enumeration = enumerate_ne_2p(&mp)?;
    for ne in &enumeration.equilibria {
        println!(
            "  mixed equilibrium: {}",
            format_behavior(&GameFile::bare(mp.clone()), &Behavior::Mixed(ne.clone()))
        );
    }
    println!("  enumeration complete: {}", enumeration.complete);

    let co = coordination();
    let co_file = GameFile::bare(co.clone());
    println!();
    println!("coordination:");
    // A fair coin flip between the two strict equilibria is a
    // correlated equilibrium no product distribution replicates.
    let flip = CorrelatedDistribution::from_pairs(
        co.action_counts(),
        &[(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
    )?;
    println!(
        "  coin flip between the equilibria: {}",
        format_behavior(&co_file, &Behavior::Correlated(flip.clone()))
    );
    println!("  correlated equilibrium: {}", is_ce(&co, &flip)?.holds);
    println!("  coarse correlated too:  {}", is_cce(&co, &flip)?.holds);

    let objective = welfare_objective(&co);
    let best_ce = find_ce(&co, &objective)?;
    let best_cce = find_cce(&co, &objective)?;
    println!(
        "  welfare-optimal CE vertex:  {}",
        format_behavior(&co_file, &Behavior::Correlated(best_ce.clone()))
    );
    println!(
        "  welfare-optimal CCE vertex: {}",
        format_behavior(&co_file, &Behavior::Correlated(best_cce))
    );
    let welfare: strateq::Rational = best_ce
        .weights()
        .iter()
        .zip(&objective)
        .map(|(w, o)| w * o)
        .sum();
    println!("  welfare at that CE vertex: {}", format_rational(&welfare));
    Ok(())
}
