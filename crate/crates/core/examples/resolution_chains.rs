//! Resolve the curve u^{d1} = v^{d2} by continued-fraction subdivision
//! of the plane fan, print the two weighted arms of the exceptional
//! chain, and confirm that the arm determinants recover the exponents
//! and survive blowups at every allowed position.
//!
//! Run with: `cargo run --example resolution_chains`

use germcover::resolution::{blowup_chain, chain_determinant, resolution_chains};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d1, d2) in [(3, 2), (5, 3), (12, 7), (25, 18)] {
        let data = resolution_chains(d1, d2)?;
        println!("exponents ({d1}, {d2}):");
        println!(
            "  arm towards the u-axis: weights {:?}, determinant {}",
            data.chain_e1,
            chain_determinant(&data.chain_e1)
        );
        println!("  central component: weight {}", data.weight_e0);
        println!(
            "  arm towards the v-axis: weights {:?}, determinant {}",
            data.chain_e2,
            chain_determinant(&data.chain_e2)
        );
        println!("  fan rays in order: {:?}", data.rays);

        assert_eq!(chain_determinant(&data.chain_e1), d1 as i64);
        assert_eq!(chain_determinant(&data.chain_e2), d2 as i64);

        // A blowup inserts a -1 component and corrects its neighbours;
        // the chain determinant never moves.
        let arm = &data.chain_e1;
        let original = chain_determinant(arm);
        for edge in 0..=arm.len() {
            let blown = blowup_chain(arm, edge)?;
            assert_eq!(chain_determinant(&blown), original);
        }
        println!(
            "  determinant {original} is stable under blowups at all {} edges\n",
            arm.len() + 1
        );
    }
    Ok(())
}
