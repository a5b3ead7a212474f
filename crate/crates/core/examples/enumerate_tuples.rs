//! Walk every canonical parameter tuple up to a covering-degree bound,
//! print the derived numerical invariants, and confirm the branching
//! balance and the invariant round trip on all of them.
//!
//! Run with: `cargo run --example enumerate_tuples`

use germcover::ramdata::{
    canonicalize, check_balance, enumerate, params_from_invariants, snc_model, validate,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bound = 12;
    let tuples = enumerate(bound);
    println!(
        "canonical tuples with covering degree N <= {bound}: {}\n",
        tuples.len()
    );

    println!("{:<26} {:>4} {:>4} {:>4} {:>3}", "tuple", "d1", "d2", "N", "n");
    for p in &tuples {
        let d = validate(p)?;
        println!(
            "{:<26} {:>4} {:>4} {:>4} {:>3}",
            p.to_string(),
            d.d1,
            d.d2,
            d.n_sheets,
            d.n_comps
        );
    }

    // Every tuple's simple-normal-crossing side data satisfies the four
    // balance equations tying component multiplicities to (d1, d2, N, n).
    for p in &tuples {
        let d = validate(p)?;
        let report = check_balance(&snc_model(p)?, &d);
        assert!(report.pass(), "balance fails for {p}");
    }
    println!("\nbranching balance holds for all {} tuples", tuples.len());

    // The four invariants (d1, d2, N, n) pin each canonical tuple down
    // uniquely, so enumeration and inversion are mutually consistent.
    for p in &tuples {
        let d = validate(p)?;
        let q = params_from_invariants(d.d1, d.d2, d.n_sheets, d.n_comps)?;
        assert_eq!(&q, p, "inversion disagrees for {p}");
        assert_eq!(canonicalize(&q)?, q, "canonical form is not stable");
    }
    println!("invariants (d1, d2, N, n) invert back to every tuple");
    Ok(())
}
