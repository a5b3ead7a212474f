//! The two-component maps u = (p+1) x y^q - x^{p+1}, v = y have an
//! extra geometric property: the ramification curve meets every member
//! of the branch-curve pencil with the same local multiplicity.  This
//! example walks the plane-curve identities that property reduces to.
//!
//! Run with: `cargo run --example cusp_intersection`

use germcover::{
    check_fiber_split, delta_invariant, extra_map, extra_report, extra_rhs, local_intersection,
    phi_polynomial, verify_covering, BiPoly,
};

const SEED: u64 = 11;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (p, q) = (2u64, 3u64);

    // The fibre product of the map with itself splits off the diagonal;
    // the residual factor is governed by the symmetric cofactor Phi.
    println!("Phi for p = {p}: {}", phi_polynomial(p));
    let split = check_fiber_split(p, q)?;
    assert!(split.pass());
    println!("fibre-product split identity holds for (p, q) = ({p}, {q})");

    // delta invariant of the cusp x^p = y^q, by sieving the gaps of the
    // numerical semigroup generated by p and q.
    let delta = delta_invariant(p, q)?;
    println!("delta({p}, {q}) = {delta} (gaps of <{p}, {q}>)");
    assert_eq!(delta, (p - 1) * (q - 1) / 2);

    // Local intersection multiplicity at the origin of the cusp with a
    // scaled copy of itself: always p*q, whatever the scale.
    let vars = ["x", "y"];
    let cusp = BiPoly::from_int_terms(vars, &[(p as u32, 0, 1), (0, q as u32, -1)]);
    for c in [2i64, 7, -5] {
        let scaled = BiPoly::from_int_terms(vars, &[(p as u32, 0, c), (0, q as u32, -1)]);
        let mult = local_intersection(&cusp, &scaled, SEED)?;
        println!("(x^{p} - y^{q}) . ({c} x^{p} - y^{q}) at the origin = {mult}");
        assert_eq!(mult, p * q);
    }

    // The bookkeeping side: 2*delta + p - 1 collapses to pq - q.
    println!("2 delta + p - 1 = {} = pq - q", extra_rhs(p, q)?);

    // The witness map itself passes the full covering battery, and the
    // bundled report rechecks all of the identities above.
    let map = extra_map(p, q)?;
    println!("\nwitness map: u = {}, v = {}", map.u, map.v);
    assert!(verify_covering(&map, SEED).pass());
    let report = extra_report(p, q, SEED)?;
    for c in &report.checks {
        println!("  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.check);
    }
    assert!(report.pass());
    Ok(())
}
