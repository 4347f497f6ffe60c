//! Mechanically verify the statements behind the witness
//! constructions over seeded random families: P1 and P2 rebuild and
//! check a certificate for every sampled rationality failure, P3
//! elevates every pure equilibrium found, P4 derives a contradiction
//! pair from every game with two strict equilibria, and C1 through C3
//! confirm what the equilibrium maps survive.

use strateq::harness::{verify_proposition, GameFamilySpec, Proposition};
use strateq::report::report_text;

fn main() -> strateq::Result<()> {
    let family = GameFamilySpec::new((2, 3), (2, 3), (-9, 9), 11, 30);
    for prop in [
        Proposition::P1,
        Proposition::P2,
        Proposition::P3,
        Proposition::P4,
        Proposition::C1,
        Proposition::C2,
        Proposition::C3,
    ] {
        let report = verify_proposition(prop, &family, 8)?;
        print!("{}", report_text(&report));
        println!();
    }
    Ok(())
}
