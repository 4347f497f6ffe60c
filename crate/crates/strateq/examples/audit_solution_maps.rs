//! Audit the built-in solution maps against the axioms over a seeded
//! random family. Pure-equilibrium selection survives everything it
//! can be tested on; welfare maximization fails individual rationality
//! once the equivalence class is searched; any nonempty selection of
//! strict equilibria fails uniqueness somewhere.

use strateq::harness::{builtin_solution_map, check_axiom, Axiom, GameFamilySpec};
use strateq::report::verdict_text;

fn main() -> strateq::Result<()> {
    let family = GameFamilySpec::new((2, 2), (2, 3), (-9, 9), 7, 40);
    let cases = [
        ("pne", Axiom::Se),
        ("pne", Axiom::Sm),
        ("welfare_max", Axiom::Pir),
        ("uniform_correlated", Axiom::Pirar),
        ("risk_dominant_2x2", Axiom::Usm),
    ];
    for (map_name, axiom) in cases {
        let map = builtin_solution_map(map_name).expect("built-in name");
        let verdict = check_axiom(&map, axiom, &family, 8)?;
        print!("{}", verdict_text(&verdict, &map));
        println!();
    }
    Ok(())
}
