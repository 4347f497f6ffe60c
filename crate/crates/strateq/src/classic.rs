//! Small well-known games used as fixtures throughout the tests and
//! examples. All payoffs are exact integers.

use crate::game::Game;
use crate::rational::{rat, Rational};

/// Prisoner's dilemma. Actions are (cooperate, defect) for both
/// players. Mutual cooperation pays (3, 3), mutual defection (1, 1),
/// and a lone defector gets 4 while the cooperator gets 0.
///
/// Defect strictly dominates, so (defect, defect) is the unique pure
/// equilibrium even though (cooperate, cooperate) pays more to both.
pub fn prisoners_dilemma() -> Game {
    Game::bimatrix(
        vec![vec![rat(3), rat(0)], vec![rat(4), rat(1)]],
        vec![vec![rat(3), rat(4)], vec![rat(0), rat(1)]],
    )
    .expect("fixed shape")
}

/// Matching pennies. Actions are (heads, tails); player 1 wins 1 from
/// player 2 on a match and loses 1 otherwise. Zero-sum, no pure
/// equilibrium, unique mixed equilibrium at uniform play with value 0.
pub fn matching_pennies() -> Game {
    Game::bimatrix(
        vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(1)]],
        vec![vec![rat(-1), rat(1)], vec![rat(1), rat(-1)]],
    )
    .expect("fixed shape")
}

/// Asymmetric coordination (battle of the sexes). Coordinating on the
/// first action pays (2, 1), on the second (1, 2), and miscoordination
/// pays (0, 0). Both diagonal profiles are strict pure equilibria, and
/// there is one mixed equilibrium at ((2/3, 1/3), (1/3, 2/3)).
pub fn coordination() -> Game {
    Game::bimatrix(
        vec![vec![rat(2), rat(0)], vec![rat(0), rat(1)]],
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(2)]],
    )
    .expect("fixed shape")
}

/// Stag hunt. Actions are (stag, hare). Hunting stag together pays
/// (4, 4); hunting hare is safe and pays 3 against stag, 2 against
/// hare; a stag hunter abandoned by a hare hunter gets 0. Both
/// diagonal profiles are strict pure equilibria; (stag, stag) is
/// payoff dominant while (hare, hare) is risk dominant.
pub fn stag_hunt() -> Game {
    Game::bimatrix(
        vec![vec![rat(4), rat(0)], vec![rat(3), rat(2)]],
        vec![vec![rat(4), rat(3)], vec![rat(0), rat(2)]],
    )
    .expect("fixed shape")
}

/// Three-player majority vote. Each player picks side 0 or 1 and is
/// paid 1 for being in the majority, 0 otherwise. The two unanimous
/// profiles are strict pure equilibria.
pub fn three_player_majority() -> Game {
    Game::from_fn(vec![2, 2, 2], |player, profile| {
        let ones: usize = profile.iter().sum();
        let majority = usize::from(ones >= 2);
        if profile[player] == majority {
            rat(1)
        } else {
            rat(0)
        }
    })
    .expect("fixed shape")
}

/// A 2x2 zero-sum game with no saddle point: player 1's payoff matrix
/// is ((1, 0), (0, 1/2)). The unique equilibrium has both players
/// mixing (1/3, 2/3) and the value is 1/3, strictly above player 1's
/// pure guarantee of 0.
pub fn unbalanced_pennies() -> Game {
    let rows = vec![vec![rat(1), rat(0)], vec![rat(0), ratio_half()]];
    let cols = rows
        .iter()
        .map(|row| row.iter().map(|v| -v.clone()).collect())
        .collect();
    Game::bimatrix(rows, cols).expect("fixed shape")
}

fn ratio_half() -> Rational {
    crate::rational::ratio(1, 2)
}
