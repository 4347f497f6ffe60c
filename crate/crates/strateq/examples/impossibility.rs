//! No transfer-invariant solution concept can always pick out a unique
//! strict simultaneous maximizer. Any game with two distinct strict
//! pure equilibria yields two equivalent games whose unique strict
//! maximizers differ: a selection respecting equivalence would have to
//! output both, and a singleton cannot.

use strateq::classic::{coordination, stag_hunt};
use strateq::equilibria::{find_maximizers, is_strict_pne};
use strateq::game::{profiles, PureProfile};
use strateq::gamefile::{format_profile, GameFile};
use strateq::report::witness_text;
use strateq::transforms::{strategically_equivalent, usm_contradiction};

fn main() -> strateq::Result<()> {
    for (name, game) in [("coordination", coordination()), ("stag hunt", stag_hunt())] {
        let strict: Vec<PureProfile> = profiles(game.action_counts())
            .map(PureProfile::new)
            .filter(|p| is_strict_pne(&game, p).unwrap_or(false))
            .collect();
        let file = GameFile::bare(game.clone());
        let shown: Vec<String> = strict.iter().map(|p| format_profile(&file, p)).collect();
        println!("== {name}: strict equilibria {} ==", shown.join(" and "));
        let (first, second) = usm_contradiction(&game, &strict[0], &strict[1])?;

        print!("{}", witness_text(&file, "first certificate:", &first));
        print!("{}", witness_text(&file, "second certificate:", &second));

        let a = find_maximizers(&first.transformed)
            .strict_maximizer
            .expect("certificate guarantees a strict maximizer");
        let b = find_maximizers(&second.transformed)
            .strict_maximizer
            .expect("certificate guarantees a strict maximizer");
        let linked = strategically_equivalent(&first.transformed, &second.transformed)?;
        println!(
            "distinct strict maximizers {} vs {}; the two games are \
             themselves equivalent: {}",
            format_profile(&file, &a),
            format_profile(&file, &b),
            linked.is_equivalent()
        );
        println!();
    }
    Ok(())
}
