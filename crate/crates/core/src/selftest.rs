//! End-to-end acceptance sweep: nine timed criteria covering the whole
//! pipeline (closed forms, formula reproduction, the sporadic
//! degree-15 germ, combinatorial balance equations, constellation
//! existence, resolution determinants, the cusp intersection property,
//! the numeric solver, and invariant round-trips).
//!
//! Used by the `self-test` command and by the acceptance integration
//! test, which prints one line per criterion.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{BiPoly, ExactScalar};
use crate::constellation;
use crate::covering::newton::{approx_f64, embed_scalar, solve_belyi_numeric};
use crate::covering::{
    build_a_n3, build_b_n3, build_closed, build_p_series, build_row1, build_row2, extract_belyi,
    CoverError, Sign,
};
use crate::ramdata::{self, Params};
use crate::resolution::{blowup_chain, chain_determinant, resolution_chains};
use crate::verify::{self, extra, jacobian};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub runtime_ms: u128,
    pub budget_ms: u128,
}

fn run(
    index: usize,
    name: &str,
    budget_ms: u128,
    body: impl FnOnce() -> (bool, String),
) -> CriterionResult {
    let clock = Instant::now();
    let (ok, mut detail) = body();
    let runtime_ms = clock.elapsed().as_millis();
    if ok && runtime_ms > budget_ms {
        detail = format!("{detail}; exceeded time budget");
    }
    CriterionResult {
        index,
        name: name.to_string(),
        pass: ok && runtime_ms <= budget_ms,
        detail,
        runtime_ms,
        budget_ms,
    }
}

/// Run all nine criteria with the given seed for the randomised parts.
pub fn acceptance_report(seed: u64) -> Vec<CriterionResult> {
    vec![
        run(1, "closed_form_sweep", 60_000, || closed_form_sweep(seed)),
        run(2, "formula_reproduction", 60_000, formula_reproduction),
        run(3, "sporadic_degree_15", 10_000, || sporadic_degree_15(seed)),
        run(4, "balance_equations", 5_000, balance_equations),
        run(5, "profile_realizability", 120_000, profile_realizability),
        run(6, "resolution_determinants", 10_000, resolution_determinants),
        run(7, "cusp_intersection_property", 10_000, || {
            cusp_intersection_property(seed)
        }),
        run(8, "numeric_solver", 60_000, || numeric_solver(seed)),
        run(9, "invariant_round_trip", 60_000, invariant_round_trip),
    ]
}

/// Criterion 1: every canonical tuple with `N <= 30` that a closed-form
/// builder covers yields a map passing the exact verification battery
/// (both square-root signs for the `n = 3` families).
fn closed_form_sweep(seed: u64) -> (bool, String) {
    let mut built = 0usize;
    let mut skipped = 0usize;
    for p in ramdata::enumerate(30) {
        let signs: &[Sign] = if p.l1 == 1 && p.l2 == 1 {
            &[Sign::Plus, Sign::Minus]
        } else {
            &[Sign::Plus]
        };
        for &sign in signs {
            match build_closed(&p, sign) {
                Ok(f) => {
                    let report = verify::verify_covering(&f, seed);
                    if !report.pass() {
                        let bad: Vec<&str> = report
                            .checks
                            .iter()
                            .filter(|c| !c.pass)
                            .map(|c| c.check.as_str())
                            .collect();
                        return (false, format!("{p} fails {bad:?}"));
                    }
                    built += 1;
                }
                Err(CoverError::NoClosedForm(_)) => {
                    skipped += 1;
                    break;
                }
                Err(e) => return (false, format!("{p}: {e}")),
            }
        }
    }
    (
        built > 0,
        format!("verified {built} closed-form maps exactly ({skipped} tuples have no closed form)"),
    )
}

/// Criterion 2: the two `l1 = 1` closed forms agree with their quoted
/// polynomial expressions for ten coprime exponent pairs.
fn formula_reproduction() -> (bool, String) {
    let pairs: [(u64, u64); 10] = [
        (2, 1),
        (3, 1),
        (2, 3),
        (3, 2),
        (2, 5),
        (5, 2),
        (3, 4),
        (4, 3),
        (4, 5),
        (5, 6),
    ];
    let vars = ["x", "y"];
    let e = |n: u64| u32::try_from(n).unwrap();
    let i = |n: u64| i64::try_from(n).unwrap();
    for &(k1, k2) in &pairs {
        let f = match build_row1(k1, k2, 1) {
            Ok(f) => f,
            Err(err) => return (false, format!("jet builder ({k1},{k2},1): {err}")),
        };
        let u1 = BiPoly::from_terms(
            vars,
            [
                (e(k1), 0, ExactScalar::from_ratio(i(k2), i(k1 + k2))),
                (0, e(k2), ExactScalar::from_ratio(i(k1), i(k1 + k2))),
            ],
        );
        let v1 = BiPoly::from_int_terms(vars, &[(1, 1, 1)]);
        if f.u != u1 || f.v != v1 {
            return (
                false,
                format!("jet form ({k1},{k2}): got u = {}, v = {}", f.u, f.v),
            );
        }

        let g = match build_row2(k1, k2, 1) {
            Ok(g) => g,
            Err(err) => return (false, format!("antiderivative builder ({k1},{k2},1): {err}")),
        };
        let u2 = BiPoly::from_terms(
            vars,
            [
                (1, e(k2), ExactScalar::from_ratio(i(k1 + 1), i(k1))),
                (e(k1 + 1), 0, ExactScalar::from_ratio(-1, i(k1))),
            ],
        );
        let v2 = BiPoly::from_int_terms(vars, &[(0, 1, 1)]);
        if g.u != u2 || g.v != v2 {
            return (
                false,
                format!("antiderivative form ({k1},{k2}): got u = {}, v = {}", g.u, g.v),
            );
        }
    }
    (true, "both l1 = 1 closed forms match their quoted expressions on 10 coprime pairs".to_string())
}

/// Criterion 3: the sporadic degree-15 germ has Jacobian `2835 y^6`,
/// restricts to `(s^3, s^5)` on the axis, has covering degree 15 and
/// invariants `(d1, d2, N, n) = (5, 3, 15, 7)`.
fn sporadic_degree_15(seed: u64) -> (bool, String) {
    let f = build_p_series();
    let d = f.derived;
    if (d.d1, d.d2, d.n_sheets, d.n_comps) != (5, 3, 15, 7) {
        return (false, format!("invariants {:?}", d));
    }
    let jac = match jacobian(&f.u, &f.v) {
        Ok(j) => j,
        Err(e) => return (false, e.to_string()),
    };
    let expected = BiPoly::from_int_terms(f.u.vars(), &[(0, 6, 2835)]);
    if jac != expected {
        return (false, format!("Jacobian {jac}"));
    }
    // Restriction to the ramification axis y = 0.
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let us = f.u.substitute_monomial(&one, 1, &zero, 1, "s");
    let vs = f.v.substitute_monomial(&one, 1, &zero, 1, "s");
    match (us, vs) {
        (Ok(us), Ok(vs)) => {
            if us.as_monomial().map(|(k, c)| (k, c.clone())) != Some((3, one.clone()))
                || vs.as_monomial().map(|(k, c)| (k, c.clone())) != Some((5, one.clone()))
            {
                return (false, format!("axis image ({us}, {vs})"));
            }
        }
        _ => return (false, "axis substitution failed".to_string()),
    }
    match verify::covering_degree(&f, seed) {
        Ok(15) => (),
        Ok(n) => return (false, format!("covering degree {n}")),
        Err(e) => return (false, e.to_string()),
    }
    (
        true,
        "J = 2835 y^6, axis image (s^3, s^5), degree 15, invariants (5,3,15,7)".to_string(),
    )
}

/// Criterion 4: the four balance equations hold for every enumerated
/// tuple with `N <= 100`.
fn balance_equations() -> (bool, String) {
    let tuples = ramdata::enumerate(100);
    for p in &tuples {
        let d = match ramdata::validate(p) {
            Ok(d) => d,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        let model = match ramdata::snc_model(p) {
            Ok(m) => m,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        let report = ramdata::check_balance(&model, &d);
        if !report.pass() {
            return (false, format!("{p}: {report:?}"));
        }
    }
    (
        true,
        format!("all four balance equations hold on {} tuples", tuples.len()),
    )
}

/// Criterion 5: every profile with `N <= 7` is realised by at least one
/// genus-0 transitive constellation class (exhaustive search), and
/// `n = 2` profiles by exactly one.
fn profile_realizability() -> (bool, String) {
    let tuples = ramdata::enumerate(7);
    let mut total = 0usize;
    let mut unique = 0usize;
    for p in &tuples {
        let d = match ramdata::validate(p) {
            Ok(d) => d,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        if d.n_sheets > 7 {
            continue;
        }
        let profile = match ramdata::zannier_profile(p) {
            Ok(pr) => pr,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        let outcome = match constellation::search(&profile) {
            Ok(o) => o,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        if !outcome.exhaustive {
            return (false, format!("{p}: search not exhaustive"));
        }
        if outcome.classes.is_empty() {
            return (false, format!("{p}: no realising class"));
        }
        if d.n_comps == 2 {
            if outcome.classes.len() != 1 {
                return (
                    false,
                    format!("{p}: {} classes for a 2-component chain", outcome.classes.len()),
                );
            }
            unique += 1;
        }
        total += 1;
    }
    (
        total > 0 && unique > 0,
        format!("{total} profiles realised; {unique} two-component profiles each have a unique class"),
    )
}

/// Criterion 6: resolution chain determinants reproduce the exponents
/// for all coprime `2 <= d2 < d1 <= 50`, and blowing up anywhere on a
/// chain of length `<= 6` preserves the determinant.
fn resolution_determinants() -> (bool, String) {
    let mut pairs = 0usize;
    let mut blowups = 0usize;
    for d1 in 2u64..=50 {
        for d2 in 2..d1 {
            if num_integer::gcd(d1, d2) != 1 {
                continue;
            }
            let data = match resolution_chains(d1, d2) {
                Ok(d) => d,
                Err(e) => return (false, format!("({d1},{d2}): {e}")),
            };
            if chain_determinant(&data.chain_e1) != d1 as i64
                || chain_determinant(&data.chain_e2) != d2 as i64
            {
                return (false, format!("({d1},{d2}): wrong chain determinants"));
            }
            pairs += 1;
            for chain in [&data.chain_e1, &data.chain_e2, &data.full_chain()] {
                if chain.len() > 6 {
                    continue;
                }
                let det = chain_determinant(chain);
                for edge in 0..=chain.len() {
                    let blown = match blowup_chain(chain, edge) {
                        Ok(b) => b,
                        Err(e) => return (false, format!("({d1},{d2}) edge {edge}: {e}")),
                    };
                    if chain_determinant(&blown) != det {
                        return (
                            false,
                            format!("({d1},{d2}) edge {edge}: determinant changed"),
                        );
                    }
                    blowups += 1;
                }
            }
        }
    }
    (
        pairs > 0 && blowups > 0,
        format!("{pairs} exponent pairs; determinant invariant under {blowups} blowups"),
    )
}

/// Criterion 7: the cusp intersection property holds for every coprime
/// `2 <= p < q <= 7`.
fn cusp_intersection_property(seed: u64) -> (bool, String) {
    let mut count = 0usize;
    for p in 2u64..=7 {
        for q in (p + 1)..=7 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let report = match extra::extra_report(p, q, seed) {
                Ok(r) => r,
                Err(e) => return (false, format!("({p},{q}): {e}")),
            };
            if !report.pass() {
                let bad: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.check.as_str())
                    .collect();
                return (false, format!("({p},{q}) fails {bad:?}"));
            }
            count += 1;
        }
    }
    (
        count > 0,
        format!("intersection property verified for {count} coprime (p, q) pairs"),
    )
}

/// Largest coefficient-wise distance between a numeric generator pair
/// and an exact one, in the `t` basis at the numeric precision.
fn generator_distance(
    nb: &crate::covering::newton::NumericBelyi,
    exact: &crate::covering::BelyiData,
) -> f64 {
    let p = nb.precision_bits;
    let mut worst = 0f64;
    for (num, poly) in [(&nb.g1, exact.g1()), (&nb.g2, exact.g2())] {
        for (j, approx) in num.iter().enumerate() {
            let target = embed_scalar(&poly.coeff(j), p);
            let d = approx_f64(&approx.dist1(&target, p));
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Criterion 8: at 256 bits the Newton solver reproduces the exact
/// surd solutions of both `n = 3` families with `(k1,k2) = (1,2)` to
/// `1e-25` coefficient-wise; the tuple `(b; 1,2,2,1)` is rejected as
/// inadmissible; and the nearest admissible tuple without a closed
/// form, `(b; 1,2,1,2)`, solves with residuals below `1e-20`.
fn numeric_solver(seed: u64) -> (bool, String) {
    // Inadmissible tuple: both the closed-form path and the solver
    // must reject it (the component multiplicities share a factor).
    let bad = Params::b(1, 2, 2, 1);
    if build_closed(&bad, Sign::Plus).is_ok() || solve_belyi_numeric(&bad, 256, seed).is_ok() {
        return (false, format!("{bad} accepted despite gcd(m1, m2) = 3"));
    }

    let mut worst_overall = 0f64;
    for (name, params, exacts) in [
        (
            "b-family",
            Params::b(1, 2, 1, 1),
            [build_b_n3(1, 2, Sign::Plus), build_b_n3(1, 2, Sign::Minus)],
        ),
        (
            "a-family",
            Params::a(1, 2, 1, 1),
            [build_a_n3(1, 2, Sign::Plus), build_a_n3(1, 2, Sign::Minus)],
        ),
    ] {
        let nb = match solve_belyi_numeric(&params, 256, seed) {
            Ok(nb) => nb,
            Err(e) => return (false, format!("{name}: {e}")),
        };
        let mut best = f64::INFINITY;
        for exact in exacts {
            let f = match exact {
                Ok(f) => f,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            let data = match extract_belyi(&f) {
                Ok(d) => d,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            best = best.min(generator_distance(&nb, &data));
        }
        if best > 1e-25 {
            return (false, format!("{name}: best coefficient distance {best:e}"));
        }
        worst_overall = worst_overall.max(best);
    }

    let neighbour = Params::b(1, 2, 1, 2);
    if build_closed(&neighbour, Sign::Plus).is_ok() {
        return (false, format!("{neighbour} unexpectedly has a closed form"));
    }
    let nb = match solve_belyi_numeric(&neighbour, 256, seed) {
        Ok(nb) => nb,
        Err(e) => return (false, format!("{neighbour}: {e}")),
    };
    if nb.residual_system > 1e-20 || nb.residual_h > 1e-20 {
        return (
            false,
            format!(
                "{neighbour}: residuals {:e} / {:e}",
                nb.residual_system, nb.residual_h
            ),
        );
    }
    (
        true,
        format!(
            "surd solutions matched to {worst_overall:e}; inadmissible tuple rejected; residuals {:e} / {:e}",
            nb.residual_system, nb.residual_h
        ),
    )
}

/// Criterion 9: invariants determine the canonical tuple for every
/// enumerated tuple with `N <= 100`, and canonicalisation is stable
/// under repetition and under the subscript mirror.
fn invariant_round_trip() -> (bool, String) {
    let tuples = ramdata::enumerate(100);
    for p in &tuples {
        let d = match ramdata::validate(p) {
            Ok(d) => d,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        match ramdata::params_from_invariants(d.d1, d.d2, d.n_sheets, d.n_comps) {
            Ok(q) if q == *p => (),
            Ok(q) => return (false, format!("{p} recovered as {q}")),
            Err(e) => return (false, format!("{p}: {e}")),
        }
        let c = match ramdata::canonicalize(p) {
            Ok(c) => c,
            Err(e) => return (false, format!("{p}: {e}")),
        };
        if c != *p {
            return (false, format!("enumerated tuple {p} is not canonical"));
        }
        match ramdata::canonicalize(&c) {
            Ok(cc) if cc == c => (),
            Ok(cc) => return (false, format!("canonicalise unstable: {c} -> {cc}")),
            Err(e) => return (false, format!("{c}: {e}")),
        }
        if p.family == crate::ramdata::Case::B {
            let mirror = Params::b(p.k2, p.k1, p.l2, p.l1);
            if ramdata::validate(&mirror).is_ok() {
                match ramdata::canonicalize(&mirror) {
                    Ok(m) if m == *p => (),
                    Ok(m) => return (false, format!("mirror of {p} canonicalises to {m}")),
                    Err(e) => return (false, format!("mirror of {p}: {e}")),
                }
            }
        }
    }
    (
        true,
        format!("invariants invert and canonical form is stable on {} tuples", tuples.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        // The quick criteria run directly; the expensive ones are
        // exercised by the acceptance integration test.
        let (ok, detail) = formula_reproduction();
        assert!(ok, "{detail}");
        let (ok, detail) = sporadic_degree_15(5);
        assert!(ok, "{detail}");
        let (ok, detail) = balance_equations();
        assert!(ok, "{detail}");
        let (ok, detail) = resolution_determinants();
        assert!(ok, "{detail}");
        let (ok, detail) = cusp_intersection_property(5);
        assert!(ok, "{detail}");
        let (ok, detail) = invariant_round_trip();
        assert!(ok, "{detail}");
    }

    #[test]
    fn result_records_budget_overrun() {
        let r = run(0, "noop", 0, || {
            std::thread::sleep(std::time::Duration::from_millis(5));
            (true, "slept".to_string())
        });
        assert!(!r.pass);
        assert!(r.detail.contains("exceeded"));
    }
}
