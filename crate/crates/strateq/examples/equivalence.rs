//! Two games are strategically equivalent when they differ only by
//! side payments conditioned on the opponents' actions. Adding such
//! transfers to the prisoner's dilemma changes every payoff level yet
//! leaves every strategic property in place; the decision procedure
//! recovers the offsets exactly. A game that differs in a player's own
//! action is refuted with a concrete pair of profiles.

use strateq::classic::prisoners_dilemma;
use strateq::gamefile::GameFile;
use strateq::rational::rat;
use strateq::report::equivalence_text;
use strateq::transforms::{apply_z_games, strategically_equivalent, ZGame};

fn main() -> strateq::Result<()> {
    let pd = prisoners_dilemma();
    let shape = pd.action_counts().to_vec();

    // Pay player 1 an extra 5 whenever player 2 cooperates, and tax
    // player 2 by 2 whenever player 1 defects.
    let transfers = vec![
        ZGame {
            player: 0,
            opponents_profile: vec![0],
            amount: rat(5),
            shape: shape.clone(),
        },
        ZGame {
            player: 1,
            opponents_profile: vec![1],
            amount: rat(-2),
            shape: shape.clone(),
        },
    ];
    let shifted = apply_z_games(&pd, &transfers)?;
    println!("shifted payoffs, player 1: {:?}", tensor(&shifted, 0));
    println!("shifted payoffs, player 2: {:?}", tensor(&shifted, 1));

    let verdict = strategically_equivalent(&pd, &shifted)?;
    println!();
    print!(
        "{}",
        equivalence_text(&GameFile::bare(pd.clone()), &verdict)
    );

    // A bonus on one profile only is a transfer that depends on the
    // player's own action, so it breaks equivalence; the decision
    // procedure pins down where the difference shows.
    let tampered = strateq::Game::from_fn(shape.clone(), |player, profile| {
        let base = pd.payoff(player, profile).clone();
        if player == 0 && profile == [0, 0] {
            base + rat(1)
        } else {
            base
        }
    })?;
    let refuted = strategically_equivalent(&pd, &tampered)?;
    println!();
    print!("{}", equivalence_text(&GameFile::bare(pd), &refuted));
    Ok(())
}

fn tensor(game: &strateq::Game, player: usize) -> Vec<String> {
    game.payoff_tensor(player)
        .iter()
        .map(strateq::rational::format_rational)
        .collect()
}
