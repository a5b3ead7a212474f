//! Solve the generator system numerically with high-precision Newton
//! iteration: first for a tuple that has an exact closed form (so the
//! numeric answer can be checked coefficient by coefficient), then for
//! a neighbouring tuple that has none.
//!
//! Run with: `cargo run --example numeric_generators`

use germcover::covering::newton::{approx_f64, embed_scalar};
use germcover::{
    build_closed, extract_belyi, solve_belyi_numeric, CoverError, Params, Sign,
};

const BITS: usize = 256;
const SEED: u64 = 9;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // This tuple's generators live in a quadratic extension, one
    // solution per square-root branch.
    let params = Params::b(1, 2, 1, 1);
    let numeric = solve_belyi_numeric(&params, BITS, SEED)?;
    println!("numeric generators for {params} at {BITS} bits:");
    println!("  residuals: system {:.3e}, collapse {:.3e}", numeric.residual_system, numeric.residual_h);

    // Compare against both exact branches; the Newton solver must have
    // landed on one of them.
    let mut best = f64::INFINITY;
    for sign in [Sign::Plus, Sign::Minus] {
        let exact = extract_belyi(&build_closed(&params, sign)?)?;
        let mut worst = 0.0f64;
        for (approx, coeff) in numeric.g1.iter().zip(exact.g1().coeffs()) {
            let want = embed_scalar(coeff, BITS);
            worst = worst.max(approx_f64(&approx.dist1(&want, BITS)));
        }
        for (approx, coeff) in numeric.g2.iter().zip(exact.g2().coeffs()) {
            let want = embed_scalar(coeff, BITS);
            worst = worst.max(approx_f64(&approx.dist1(&want, BITS)));
        }
        best = best.min(worst);
    }
    println!("  distance to nearest exact branch: {best:.3e}");
    assert!(best < 1e-25);

    // A tuple with no closed form: the solver is the only way in.
    let params = Params::b(1, 2, 1, 2);
    match build_closed(&params, Sign::Plus) {
        Err(CoverError::NoClosedForm(_)) => {
            println!("\n{params} has no closed form; solving numerically:")
        }
        other => panic!("expected no closed form, got {other:?}"),
    }
    let numeric = solve_belyi_numeric(&params, BITS, SEED)?;
    println!("  residuals: system {:.3e}, collapse {:.3e}", numeric.residual_system, numeric.residual_h);
    for (i, c) in numeric.g1.iter().enumerate() {
        println!("  g1[{i}] = {:.15} + {:.3e} i", approx_f64(&c.re), approx_f64(&c.im));
    }
    for (i, c) in numeric.g2.iter().enumerate() {
        println!("  g2[{i}] = {:.15} + {:.3e} i", approx_f64(&c.re), approx_f64(&c.im));
    }
    assert!(numeric.residual_system < 1e-20 && numeric.residual_h < 1e-20);
    Ok(())
}
