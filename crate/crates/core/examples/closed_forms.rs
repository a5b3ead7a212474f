//! Build one covering map from every closed-form recipe in the
//! catalogue and print its components, Jacobian constant, and
//! pushforward constants.
//!
//! Run with: `cargo run --example closed_forms`

use germcover::{build_closed, jacobian, Params, Sign};

fn show(label: &str, params: &Params, sign: Sign) -> Result<(), Box<dyn std::error::Error>> {
    let map = build_closed(params, sign)?;
    let d = &map.derived;
    println!("{label}: {params}");
    println!("  u  = {}", map.u);
    println!("  v  = {}", map.v);
    println!("  J  = {}", jacobian(&map.u, &map.v)?);
    println!(
        "  frame {:?}, mu = {}, pushforward constants ({}, {})",
        map.frame, map.mu, map.c1, map.c2
    );
    println!(
        "  branch exponents ({}, {}), {} sheets, {} components\n",
        d.d1, d.d2, d.n_sheets, d.n_comps
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Jet construction: u is the truncated binomial series in
    // y^{k2} - x^{k1}, and v = xy.
    show("jet recipe", &Params::a(2, 3, 1, 0), Sign::Plus)?;
    show("jet recipe, deeper truncation", &Params::a(3, 4, 2, 0), Sign::Plus)?;

    // Antiderivative construction: u integrates (x^{k1} - y^{k2})^{l1}
    // termwise in x, and v = y.
    show("antiderivative recipe", &Params::b(2, 3, 1, 0), Sign::Plus)?;
    show("antiderivative recipe, squared", &Params::b(3, 5, 2, 0), Sign::Plus)?;

    // Mirror: the l1 = 0 shapes come from the antiderivative recipe
    // with the variables and the two map components exchanged.
    show("mirrored antiderivative", &Params::b(3, 2, 0, 1), Sign::Plus)?;

    // Three-component families: the generator coefficients live in a
    // quadratic extension, and conjugation gives a second solution.
    show("quadratic pair, first branch", &Params::b(1, 2, 1, 1), Sign::Plus)?;
    show("quadratic pair, second branch", &Params::b(1, 2, 1, 1), Sign::Minus)?;
    show("quadratic pair, other family", &Params::a(2, 3, 1, 1), Sign::Plus)?;

    // The sporadic degree-15 map is stored with exact coefficients and
    // is the one catalogue entry recorded in the axis frame.
    show("sporadic degree 15", &Params::b(1, 1, 2, 4), Sign::Plus)?;
    Ok(())
}
