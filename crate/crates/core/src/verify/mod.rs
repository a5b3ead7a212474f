//! Independent verification of the covering identities.
//!
//! Everything here recomputes the claimed identities from scratch —
//! Jacobian proportionality, monomial pushforward, covering degree via
//! resultants at seeded generic targets, branch-image consistency, and
//! the one-variable generator conditions — and assembles the outcomes
//! into a [`VerificationReport`].  Exact mode admits no tolerances;
//! tolerance mode exists solely to assess numeric solver output.

pub mod extra;
mod modp;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{resultant_allow_constant, AlgebraError, BiPoly, ExactScalar, UniPoly, Var};
use crate::covering::newton::{approx_f64, NumericBelyi};
use crate::covering::{BelyiData, CoveringMap, Frame};
use crate::ramdata::{self, RamError};

/// Failure modes of the individual checkers.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Params(#[from] RamError),
    #[error(transparent)]
    Cover(#[from] crate::covering::CoverError),
    /// The Jacobian does not collapse to a constant multiple of the
    /// expected form.
    #[error("Jacobian is not a constant multiple of the ramification form: {witness}")]
    JacobianForm { witness: String },
    /// A component of the pushforward is not the expected monomial.
    #[error("pushforward of {which} is not a nonzero multiple of s^{expected}: {witness}")]
    Pushforward {
        which: char,
        expected: u64,
        witness: String,
    },
    /// Fibre degrees over fresh targets never stabilised.
    #[error("no squarefree fibre resultant of stable degree within {tries} targets")]
    DegreeUnstable { tries: u32 },
    /// Local intersection numbers across shears never stabilised.
    #[error("intersection order did not stabilise within {tries} shears")]
    IntersectionUnstable { tries: u32 },
    /// The branch relation fails along the ramification curve.
    #[error("branch relation u^d1 = c v^d2 fails: {witness}")]
    BranchImage { witness: String },
    /// Local intersection of curves sharing a component is undefined.
    #[error("inputs share a component through the origin (zero resultant)")]
    CommonComponent,
    /// Local intersection needs both curves through the origin.
    #[error("input {which} does not vanish at the origin")]
    NotVanishing { which: u8 },
    #[error("arguments must be coprime: gcd({p}, {q}) = {g}")]
    NonCoprime { p: u64, q: u64, g: u64 },
    #[error("arguments must satisfy 2 <= p < q, got ({p}, {q})")]
    OutOfRange { p: u64, q: u64 },
}

/// Whether a report asserts exact identities or numeric bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Tolerance(f64),
}

/// One named check with its outcome and a human-readable witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub witness: String,
}

/// An ordered bundle of check outcomes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            checks: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, check: &str, pass: bool, witness: impl Into<String>) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            pass,
            witness: witness.into(),
        });
    }

    /// Record a `Result`-shaped check: `Ok` passes with the given
    /// witness, `Err` fails with the error's message.
    fn record<T>(
        &mut self,
        check: &str,
        outcome: Result<T, VerifyError>,
        witness: impl FnOnce(&T) -> String,
    ) {
        match outcome {
            Ok(v) => {
                let w = witness(&v);
                self.push(check, true, w);
            }
            Err(e) => self.push(check, false, e.to_string()),
        }
    }
}

/// `J(F) = u_x v_y - u_y v_x`, exactly.
pub fn jacobian(u: &BiPoly, v: &BiPoly) -> Result<BiPoly, AlgebraError> {
    u.partial(Var::X)
        .try_mul(&v.partial(Var::Y))?
        .try_sub(&u.partial(Var::Y).try_mul(&v.partial(Var::X))?)
}

/// The linear form the Jacobian must be a power of, rebuilt here from
/// the parameter record (deliberately not shared with the builders).
fn expected_form(f: &CoveringMap) -> BiPoly {
    let vars = f.u.vars();
    match f.frame {
        Frame::Standard => BiPoly::from_int_terms(
            vars,
            &[
                (0, u32::try_from(f.params.k2).unwrap(), 1),
                (u32::try_from(f.params.k1).unwrap(), 0, -1),
            ],
        ),
        Frame::AxisY => BiPoly::from_int_terms(vars, &[(0, 1, 1)]),
    }
}

/// Substitute the ramification-curve parametrisation into `p`.
fn pushed(p: &BiPoly, f: &CoveringMap) -> Result<UniPoly, AlgebraError> {
    let one = ExactScalar::one();
    match f.frame {
        Frame::Standard => p.substitute_monomial(
            &one,
            u32::try_from(f.params.k2).unwrap(),
            &one,
            u32::try_from(f.params.k1).unwrap(),
            "s",
        ),
        Frame::AxisY => p.substitute_monomial(&one, 1, &ExactScalar::zero(), 1, "s"),
    }
}

/// Recompute the Jacobian and extract the constant `mu` with
/// `J(F) = mu * form^{n-1}` (either sign orientation of the form is
/// accepted; the witness records the realised constant).
pub fn check_jacobian_form(f: &CoveringMap) -> Result<ExactScalar, VerifyError> {
    let jac = jacobian(&f.u, &f.v)?;
    let pw = expected_form(f).pow(u32::try_from(f.derived.n_comps - 1).unwrap())?;
    let quot = jac
        .exact_divide(&pw)
        .map_err(|_| VerifyError::JacobianForm {
            witness: jac.to_string(),
        })?;
    match quot.as_monomial() {
        Some(((0, 0), c)) => Ok(c.clone()),
        _ => Err(VerifyError::JacobianForm {
            witness: jac.to_string(),
        }),
    }
}

/// Recompute the pushforward constants: `u` along the ramification
/// curve must be `c1 s^{d2}` and `v` must be `c2 s^{d1}`, both nonzero.
pub fn check_pushforward(f: &CoveringMap) -> Result<(ExactScalar, ExactScalar), VerifyError> {
    let read = |p: &BiPoly, which: char, expected: u64| -> Result<ExactScalar, VerifyError> {
        let s = pushed(p, f)?;
        match s.as_monomial() {
            Some((d, c)) if d as u64 == expected => Ok(c.clone()),
            _ => Err(VerifyError::Pushforward {
                which,
                expected,
                witness: s.to_string(),
            }),
        }
    };
    Ok((
        read(&f.u, 'u', f.derived.d2)?,
        read(&f.v, 'v', f.derived.d1)?,
    ))
}

/// Covering degree as the stabilised degree of the fibre eliminant
/// over seeded random rational targets.  For each target the resultant
/// of `u - u0` and `v - v0` is taken in both variables; a degree counts
/// only when every nonzero eliminant is squarefree and both variables
/// agree, and the answer needs the same degree on three consecutive
/// admissible targets.
pub fn covering_degree(f: &CoveringMap, seed: u64) -> Result<u64, VerifyError> {
    const TRIES: u32 = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = f.u.vars();
    let mut last: Option<usize> = None;
    let mut run = 0u32;
    for _ in 0..TRIES {
        let mut draw = || {
            let num = i64::from(rng.gen_range(1..=60i32)) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = i64::from(rng.gen_range(1..=6i32));
            ExactScalar::from_ratio(num, den)
        };
        let (u0, v0) = (draw(), draw());
        let fu = f.u.try_sub(&BiPoly::monomial(vars, (0, 0), u0))?;
        let fv = f.v.try_sub(&BiPoly::monomial(vars, (0, 0), v0))?;
        // Eliminating one variable from the shifted pair yields a
        // univariate polynomial whose simple roots are the fibre points
        // over the random target; its degree is the sheet count once we
        // know it is squarefree. Try one variable and fall back to the
        // other only when the first eliminant degenerates (vanishes or
        // has repeated roots), so the common case costs one resultant.
        let mut deg = None;
        for eliminate in [Var::Y, Var::X] {
            let res = resultant_allow_constant(&fu, &fv, eliminate)?;
            if res.is_zero() {
                continue;
            }
            let squarefree = match modp::certify_squarefree(&res) {
                Some(v) => v,
                None => res.gcd(&res.derivative())?.degree() == Some(0),
            };
            if squarefree {
                deg = res.degree();
                if deg.is_some() {
                    break;
                }
            }
        }
        let Some(deg) = deg else {
            last = None;
            run = 0;
            continue;
        };
        if last == Some(deg) {
            run += 1;
        } else {
            last = Some(deg);
            run = 1;
        }
        if run == 3 {
            return Ok(deg as u64);
        }
    }
    Err(VerifyError::DegreeUnstable { tries: TRIES })
}

/// Branch-image consistency: with the recorded constants,
/// `u^{d1} - (c1^{d1}/c2^{d2}) v^{d2}` must vanish identically along
/// the ramification curve.
pub fn check_branch_image(f: &CoveringMap) -> Result<(), VerifyError> {
    let us = pushed(&f.u, f)?;
    let vs = pushed(&f.v, f)?;
    let c = f
        .c1
        .pow(u32::try_from(f.derived.d1).unwrap())
        .div(&f.c2.pow(u32::try_from(f.derived.d2).unwrap()))
        .map_err(VerifyError::from)?;
    let w = us
        .pow(u32::try_from(f.derived.d1).unwrap())?
        .try_sub(&vs.pow(u32::try_from(f.derived.d2).unwrap())?.scale(&c)?)?;
    if w.is_zero() {
        Ok(())
    } else {
        Err(VerifyError::BranchImage {
            witness: format!("residue {w}"),
        })
    }
}

/// The full exact battery for one covering map: parameter consistency,
/// Jacobian shape (including agreement with the recorded `mu`),
/// pushforward constants (against the recorded pair), covering degree
/// (= N), and branch-image consistency.
pub fn verify_covering(f: &CoveringMap, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new(Mode::Exact);

    let params_ok = match ramdata::validate(&f.params) {
        Ok(d) if d == f.derived => (true, format!("derived invariants match {}", f.params)),
        Ok(_) => (false, "recorded derived block disagrees".to_string()),
        Err(e) => (false, e.to_string()),
    };
    report.push("params_consistency", params_ok.0, params_ok.1);

    match check_jacobian_form(f) {
        Ok(mu) if mu == f.mu => report.push("jacobian_form", true, format!("mu = {mu}")),
        Ok(mu) => report.push(
            "jacobian_form",
            false,
            format!("computed mu = {mu}, recorded {}", f.mu),
        ),
        Err(e) => report.push("jacobian_form", false, e.to_string()),
    }

    match check_pushforward(f) {
        Ok((c1, c2)) if c1 == f.c1 && c2 == f.c2 => report.push(
            "pushforward",
            true,
            format!("(c1, c2) = ({c1}, {c2})"),
        ),
        Ok((c1, c2)) => report.push(
            "pushforward",
            false,
            format!(
                "computed ({c1}, {c2}), recorded ({}, {})",
                f.c1, f.c2
            ),
        ),
        Err(e) => report.push("pushforward", false, e.to_string()),
    }

    match covering_degree(f, seed) {
        Ok(n) if n == f.derived.n_sheets => {
            report.push("covering_degree", true, format!("N = {n}"))
        }
        Ok(n) => report.push(
            "covering_degree",
            false,
            format!("fibre degree {n}, expected {}", f.derived.n_sheets),
        ),
        Err(e) => report.push("covering_degree", false, e.to_string()),
    }

    report.record("branch_image", check_branch_image(f), |_| {
        "u^d1 = c v^d2 along the ramification curve".to_string()
    });

    report
}

/// Exact re-check of the generator conditions: vanishing order at
/// `t = 1` at least `n`, collapse of `h` to `mu (t-1)^{n-1}`, generators
/// nonvanishing at the origin, and `h` coprime to `t g1 g2`.
pub fn check_belyi(b: &BelyiData) -> VerificationReport {
    let mut report = VerificationReport::new(Mode::Exact);
    let one = ExactScalar::one();
    let n = b.derived().n_comps;

    match b.numerator().root_multiplicity(&one) {
        Ok(m) if m as u64 >= n => report.push("vanishing_order", true, format!("order {m} >= {n}")),
        Ok(m) => report.push("vanishing_order", false, format!("order {m} < {n}")),
        Err(e) => report.push("vanishing_order", false, e.to_string()),
    }

    let h = match crate::covering::h_polynomial(b.g1(), b.g2(), b.params()) {
        Ok(h) => h,
        Err(e) => {
            report.push("h_collapse", false, e.to_string());
            return report;
        }
    };
    let step = UniPoly::from_ints(b.g1().var(), &[-1, 1])
        .pow(u32::try_from(n - 1).unwrap())
        .expect("rational ring");
    match h.exact_divide(&step) {
        Ok(q) => match q.as_monomial() {
            Some((0, c)) if c == b.mu_h() => {
                report.push("h_collapse", true, format!("h = {c} (t-1)^{}", n - 1))
            }
            Some((0, c)) => report.push(
                "h_collapse",
                false,
                format!("computed mu_h = {c}, recorded {}", b.mu_h()),
            ),
            _ => report.push("h_collapse", false, format!("quotient {q} not constant")),
        },
        Err(_) => report.push("h_collapse", false, format!("h = {h} not divisible")),
    }

    for (name, g) in [("g1_origin", b.g1()), ("g2_origin", b.g2())] {
        match g.evaluate(&ExactScalar::zero()) {
            Ok(v) if !v.is_zero() => report.push(name, true, format!("g(0) = {v}")),
            Ok(_) => report.push(name, false, "generator vanishes at t = 0".to_string()),
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    let tgg = UniPoly::variable(b.g1().var())
        .try_mul(b.g1())
        .and_then(|p| p.try_mul(b.g2()));
    match tgg.and_then(|p| h.gcd(&p)) {
        Ok(g) if g.degree() == Some(0) => {
            report.push("h_coprime", true, "gcd(h, t g1 g2) is constant".to_string())
        }
        Ok(g) => report.push("h_coprime", false, format!("common factor {g}")),
        Err(e) => report.push("h_coprime", false, e.to_string()),
    }

    report
}

/// Tolerance-mode assessment of numeric solver output: residuals below
/// `eps`, and the quantities that must stay away from zero (generator
/// values at the origin, leading coefficients, `mu_h`) above `eps^{1/4}`.
pub fn check_belyi_numeric(nb: &NumericBelyi, eps: f64) -> VerificationReport {
    let mut report = VerificationReport::new(Mode::Tolerance(eps));
    let p = nb.precision_bits;
    report.push(
        "system_residual",
        nb.residual_system <= eps,
        format!("{:e}", nb.residual_system),
    );
    report.push(
        "h_residual",
        nb.residual_h <= eps,
        format!("{:e}", nb.residual_h),
    );
    let floor = eps.powf(0.25);
    let mut margin = |name: &str, v: f64| {
        report.push(
            name,
            v > floor,
            format!("|value| = {v:e}, floor {floor:e}"),
        );
    };
    margin("g1_origin", approx_f64(&nb.g1[0].norm1(p)));
    margin("g2_origin", approx_f64(&nb.g2[0].norm1(p)));
    margin("g1_leading", approx_f64(&nb.g1[nb.g1.len() - 1].norm1(p)));
    margin("g2_leading", approx_f64(&nb.g2[nb.g2.len() - 1].norm1(p)));
    margin("mu_h", approx_f64(&nb.mu_h.norm1(p)));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::newton::solve_belyi_numeric;
    use crate::covering::{
        build_a_n3, build_b_n3, build_p_series, build_row1, build_row2, extract_belyi, Sign,
    };

    #[test]
    fn verify_accepts_every_closed_builder() {
        let maps = vec![
            build_row1(2, 3, 1).unwrap(),
            build_row1(2, 3, 3).unwrap(),
            build_row1(3, 4, 2).unwrap(),
            build_row2(2, 3, 1).unwrap(),
            build_row2(3, 4, 2).unwrap(),
            build_p_series(),
            build_a_n3(2, 3, Sign::Plus).unwrap(),
            build_b_n3(2, 3, Sign::Minus).unwrap(),
            build_b_n3(1, 4, Sign::Plus).unwrap(),
        ];
        for f in &maps {
            let report = verify_covering(f, 17);
            assert!(
                report.pass(),
                "map {} failed: {:?}",
                f.params,
                report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .collect::<Vec<_>>()
            );
            assert_eq!(report.checks.len(), 5);
        }
    }

    #[test]
    fn jacobian_matches_recorded_mu() {
        let f = build_row1(2, 3, 1).unwrap();
        let mu = check_jacobian_form(&f).unwrap();
        assert_eq!(mu, f.mu);
        assert_eq!(mu, ExactScalar::from_ratio(-6, 5));
    }

    #[test]
    fn pushforward_constants_recomputed() {
        let f = build_row2(2, 3, 1).unwrap();
        let (c1, c2) = check_pushforward(&f).unwrap();
        assert_eq!(c1, ExactScalar::one());
        assert_eq!(c2, ExactScalar::one());
    }

    #[test]
    fn covering_degree_counts_sheets() {
        let f = build_p_series();
        assert_eq!(covering_degree(&f, 5).unwrap(), 15);
        let g = build_row1(2, 3, 1).unwrap();
        assert_eq!(covering_degree(&g, 5).unwrap(), 5);
    }

    #[test]
    fn tampered_map_fails_specific_checks() {
        let mut f = build_row2(2, 3, 1).unwrap();
        // Perturb u by a term off the quasi-homogeneous lattice.
        f.u = f
            .u
            .try_sub(&BiPoly::from_int_terms(f.u.vars(), &[(5, 5, 7)]))
            .unwrap();
        let report = verify_covering(&f, 23);
        assert!(!report.pass());
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.check.as_str())
            .collect();
        assert!(failed.contains(&"jacobian_form"), "failed = {failed:?}");
        assert!(failed.contains(&"pushforward"), "failed = {failed:?}");
    }

    #[test]
    fn tampered_constant_fails_branch_image() {
        let mut f = build_row2(2, 3, 1).unwrap();
        f.c1 = ExactScalar::from_int(2);
        let report = verify_covering(&f, 23);
        let by_name = |name: &str| report.checks.iter().find(|c| c.check == name).unwrap();
        assert!(!by_name("pushforward").pass);
        assert!(!by_name("branch_image").pass);
        assert!(by_name("jacobian_form").pass);
    }

    #[test]
    fn belyi_report_passes_for_exact_generators() {
        let f = build_row1(2, 3, 3).unwrap();
        let b = extract_belyi(&f).unwrap();
        let report = check_belyi(&b);
        assert!(report.pass(), "{:?}", report.checks);
        assert_eq!(report.checks.len(), 5);
        assert_eq!(report.mode, Mode::Exact);
    }

    #[test]
    fn numeric_report_judges_residuals() {
        let nb = solve_belyi_numeric(&crate::ramdata::Params::b(1, 2, 1, 2), 192, 9).unwrap();
        let report = check_belyi_numeric(&nb, 1e-20);
        assert!(report.pass(), "{:?}", report.checks);
        assert_eq!(report.mode, Mode::Tolerance(1e-20));
        // An absurdly tight tolerance must fail the residual checks.
        let strict = check_belyi_numeric(&nb, 1e-300);
        assert!(!strict.pass());
    }

    #[test]
    fn report_serialises_round_trip() {
        let f = build_row2(2, 3, 1).unwrap();
        let report = verify_covering(&f, 17);
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.checks.len(), report.checks.len());
        assert!(back.pass());
    }
}
