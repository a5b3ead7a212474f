//! For each small parameter tuple, realise its branching profile by an
//! explicit permutation constellation: a transitive triple whose cycle
//! types match the two branch-point profiles and a single middle cycle,
//! counted up to simultaneous conjugation.
//!
//! Run with: `cargo run --example constellation_search`

use std::collections::HashSet;

use germcover::constellation::search;
use germcover::ramdata::{enumerate, validate, zannier_profile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bound = 7;
    let mut seen = HashSet::new();
    println!("branching profiles of tuples with degree N <= {bound}:\n");
    for p in enumerate(bound) {
        let profile = zannier_profile(&p)?;
        if !seen.insert(profile.clone()) {
            continue; // several tuples can share one profile
        }
        let d = validate(&p)?;
        let outcome = search(&profile)?;
        println!(
            "alpha = {:?}, beta = {:?}, middle cycle {} on {} sheets: {} class(es){}",
            profile.alpha,
            profile.beta,
            profile.n,
            profile.n_sheets,
            outcome.classes.len(),
            if outcome.exhaustive { "" } else { " (lower bound)" }
        );
        assert!(
            !outcome.classes.is_empty(),
            "every admissible profile must be realisable"
        );
        // Two-component germs are rigid: one class exactly.
        if d.n_comps == 2 {
            assert_eq!(outcome.classes.len(), 1);
        }
    }

    // Show one witness triple in full.
    let p = germcover::Params::b(1, 2, 1, 1);
    let profile = zannier_profile(&p)?;
    let outcome = search(&profile)?;
    println!(
        "\nwitness for {p} (alpha = {:?}, beta = {:?}):",
        profile.alpha, profile.beta
    );
    let c = &outcome.classes[0];
    println!("  sigma_alpha = {:?}  cycle type {}", c.sigma_alpha.images(), c.sigma_alpha.cycle_type());
    println!("  sigma_mid   = {:?}  cycle type {}", c.sigma_mid.images(), c.sigma_mid.cycle_type());
    println!("  sigma_beta  = {:?}  cycle type {}", c.sigma_beta.images(), c.sigma_beta.cycle_type());
    Ok(())
}
