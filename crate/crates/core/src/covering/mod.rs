//! Construction of explicit covering germs `F = (u, v)`.
//!
//! A covering germ is built either from its one-variable generator data
//! (two univariate polynomials `g1, g2` subject to the normalisation
//! and multiplicity conditions bundled in [`BelyiData`]) or directly by
//! one of the closed-form recipes that exist for special parameter
//! shapes.  Every builder finishes by *computing* the Jacobian constant
//! and the pushforward constants — the divisions involved double as
//! construction-time checks, so a successfully returned [`CoveringMap`]
//! already satisfies its defining identities.
//!
//! Parameter shapes without a closed form are handled numerically by
//! [`newton::solve_belyi_numeric`].

pub mod newton;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{
    join_ext, scalar_from_parts, scalar_to_parts, AlgebraError, BiPoly, ExactScalar, UniPoly, Var,
};
use crate::ramdata::{self, Case, DerivedData, Params, RamError};

/// Errors from generator validation and map construction.
#[derive(Debug, Error)]
pub enum CoverError {
    /// The parameter tuple itself is inadmissible.
    #[error(transparent)]
    Params(#[from] RamError),
    /// An exact-arithmetic operation failed (mixed rings and the like).
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// No closed-form recipe covers this parameter shape.
    #[error("no closed form is implemented for {0}")]
    NoClosedForm(Params),
    /// `g1(1) = g2(1) = 1` is the fixed normalisation.
    #[error("generator g{which} is not normalised: g{which}(1) != 1")]
    NotNormalized { which: u8 },
    /// Generators must not vanish at the origin.
    #[error("generator g{which} vanishes at t = 0")]
    VanishesAtOrigin { which: u8 },
    /// `deg g_i` must equal `l_i` exactly.
    #[error("generator g{which} has degree {got:?}, expected {expected}")]
    WrongGeneratorDegree {
        which: u8,
        got: Option<usize>,
        expected: u64,
    },
    /// The defining polynomial must vanish to order exactly `n` at `t = 1`.
    #[error("root multiplicity at t = 1 is {got}, expected {expected}")]
    MultiplicityMismatch { got: u64, expected: u64 },
    /// `h` must be a nonzero constant multiple of `(t-1)^(n-1)`.
    #[error("h is not a nonzero multiple of (t-1)^(n-1): h = {witness}")]
    UnexpectedHForm { witness: String },
    /// The Jacobian must be a constant multiple of the ramification form.
    #[error("Jacobian is not a constant multiple of the ramification form: J = {witness}")]
    JacobianNotProportional { witness: String },
    /// Both map components must push forward to monomials of the
    /// prescribed degrees along the ramification curve.
    #[error("pushforward of {which} is not a nonzero multiple of s^{expected}: got {witness}")]
    PushforwardNotMonomial {
        which: char,
        expected: u64,
        witness: String,
    },
    /// Generator extraction is defined only in the standard frame.
    #[error("map is recorded in the axis frame; generator extraction needs the standard frame")]
    FrameMismatch,
    /// The map's coefficients do not lie on the quasi-homogeneous
    /// lattice spanned by the generator data.
    #[error("coefficients of (u, v) do not lie on the quasi-homogeneous lattice")]
    NotQuasiHomogeneous,
    /// A deserialised record carries derived invariants that do not
    /// match its parameters.
    #[error("recorded derived data does not match the parameters")]
    StaleDerivedData,
    /// The numeric solver exhausted its restart budget.
    #[error("Newton iteration failed to converge within {tries} restarts")]
    NoConvergence { tries: u32 },
    /// The numeric solver refuses to run below 128 bits.
    #[error("precision must be at least 128 bits, got {0}")]
    PrecisionTooLow(usize),
}

/// Choice of square root in the quadratic closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn apply(self, s: ExactScalar) -> ExactScalar {
        match self {
            Sign::Plus => s,
            Sign::Minus => -&s,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected '+' or '-', got {other:?}")),
        }
    }
}

/// Coordinate frame of the ramification curve.
///
/// The generic constructions keep the ramification curve at
/// `y^{k2} = x^{k1}` ([`Frame::Standard`]); the sporadic degree-15 map
/// is recorded in coordinates where it is the axis `y = 0`
/// ([`Frame::AxisY`]).  The frame tells the verifier which linear form
/// the Jacobian must be proportional to and along which curve to push
/// forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    #[serde(rename = "standard")]
    Standard,
    #[serde(rename = "axis-y")]
    AxisY,
}

fn int(n: u64) -> ExactScalar {
    ExactScalar::from_int(i64::try_from(n).expect("parameter fits in i64"))
}

fn exp(n: u64) -> u32 {
    u32::try_from(n).expect("exponent fits in u32")
}

/// One-variable generator data `(g1, g2)` of a covering germ, validated.
///
/// Invariants established by [`BelyiData::new`]:
/// `deg g_i = l_i`, `g_i(1) = 1`, `g_i(0) != 0`, the polynomial
/// `P = t^{m2} g2^{d2} - g1^{d1}` vanishes to order exactly `n` at
/// `t = 1`, and `h = m2 g1 g2 - d1 t g1' g2 + d2 t g1 g2'` equals
/// `mu_h (t-1)^{n-1}` with `mu_h != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BelyiData {
    params: Params,
    derived: DerivedData,
    g1: UniPoly,
    g2: UniPoly,
    mu_h: ExactScalar,
}

impl BelyiData {
    /// Validate generator data against the parameter tuple.
    pub fn new(params: Params, g1: UniPoly, g2: UniPoly) -> Result<Self, CoverError> {
        let derived = ramdata::validate(&params)?;
        let one = ExactScalar::one();
        for (which, g, l) in [(1u8, &g1, params.l1), (2u8, &g2, params.l2)] {
            if g.degree() != Some(l as usize) {
                return Err(CoverError::WrongGeneratorDegree {
                    which,
                    got: g.degree(),
                    expected: l,
                });
            }
            if g.evaluate(&one)? != one {
                return Err(CoverError::NotNormalized { which });
            }
            if g.evaluate(&ExactScalar::zero())?.is_zero() {
                return Err(CoverError::VanishesAtOrigin { which });
            }
        }
        let p = belyi_numerator(&g1, &g2, &derived)?;
        let mult = p.root_multiplicity(&one)? as u64;
        if mult != derived.n_comps {
            return Err(CoverError::MultiplicityMismatch {
                got: mult,
                expected: derived.n_comps,
            });
        }
        let h = h_polynomial(&g1, &g2, &params)?;
        let step = UniPoly::from_ints(g1.var(), &[-1, 1]).pow(exp(derived.n_comps - 1))?;
        let quot = h
            .exact_divide(&step)
            .map_err(|_| CoverError::UnexpectedHForm {
                witness: h.to_string(),
            })?;
        let mu_h = match quot.as_monomial() {
            Some((0, c)) => c.clone(),
            _ => {
                return Err(CoverError::UnexpectedHForm {
                    witness: h.to_string(),
                })
            }
        };
        Ok(Self {
            params,
            derived,
            g1,
            g2,
            mu_h,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn derived(&self) -> &DerivedData {
        &self.derived
    }

    pub fn g1(&self) -> &UniPoly {
        &self.g1
    }

    pub fn g2(&self) -> &UniPoly {
        &self.g2
    }

    /// The constant `mu_h` with `h = mu_h (t-1)^{n-1}`.
    pub fn mu_h(&self) -> &ExactScalar {
        &self.mu_h
    }

    /// The defining polynomial `P = t^{m2} g2^{d2} - g1^{d1}`.
    pub fn numerator(&self) -> UniPoly {
        belyi_numerator(&self.g1, &self.g2, &self.derived)
            .expect("validated generators share a ring")
    }
}

/// `P = t^{m2} g2^{d2} - g1^{d1}`, the numerator of `g(t) - 1` cleared
/// of denominators.
pub fn belyi_numerator(
    g1: &UniPoly,
    g2: &UniPoly,
    derived: &DerivedData,
) -> Result<UniPoly, AlgebraError> {
    let lhs = g2.pow(exp(derived.d2))?.mul_var_pow(derived.m2 as usize);
    lhs.try_sub(&g1.pow(exp(derived.d1))?)
}

/// `h = m2 g1 g2 - d1 t g1' g2 + d2 t g1 g2'`.
///
/// For valid generator data this collapses to `mu_h (t-1)^{n-1}`; the
/// expression itself is computed verbatim so it can also witness
/// failures on invalid data.
pub fn h_polynomial(g1: &UniPoly, g2: &UniPoly, params: &Params) -> Result<UniPoly, CoverError> {
    let d = ramdata::validate(params)?;
    let t = UniPoly::variable(g1.var());
    let a = g1.try_mul(g2)?.scale(&int(d.m2))?;
    let b = t
        .try_mul(&g1.derivative().try_mul(g2)?)?
        .scale(&int(d.d1))?;
    let c = t
        .try_mul(&g1.try_mul(&g2.derivative())?)?
        .scale(&int(d.d2))?;
    Ok(a.try_sub(&b)?.try_add(&c)?)
}

/// An explicit polynomial map germ `F = (u, v)` together with its
/// parameter data and the constants realised by construction:
/// `J(F) = mu * form^{n-1}` and `F(gamma(s)) = (c1 s^{d2}, c2 s^{d1})`
/// where `form` and `gamma` depend on the [`Frame`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringMap {
    pub params: Params,
    pub derived: DerivedData,
    pub frame: Frame,
    pub u: BiPoly,
    pub v: BiPoly,
    pub mu: ExactScalar,
    pub c1: ExactScalar,
    pub c2: ExactScalar,
}

/// The ramification form whose `(n-1)`-th power the Jacobian must be
/// proportional to: `y^{k2} - x^{k1}` in the standard frame, `y` in the
/// axis frame.
pub fn ramification_form(params: &Params, frame: Frame) -> BiPoly {
    match frame {
        Frame::Standard => BiPoly::from_int_terms(
            ["x", "y"],
            &[(0, exp(params.k2), 1), (exp(params.k1), 0, -1)],
        ),
        Frame::AxisY => BiPoly::from_int_terms(["x", "y"], &[(0, 1, 1)]),
    }
}

/// Push a polynomial forward along the ramification curve: substitute
/// the parametrisation `(x, y) = (s^{k2}, s^{k1})` (standard frame) or
/// `(x, y) = (s, 0)` (axis frame).
pub fn push_along_curve(
    p: &BiPoly,
    params: &Params,
    frame: Frame,
) -> Result<UniPoly, AlgebraError> {
    let one = ExactScalar::one();
    match frame {
        Frame::Standard => p.substitute_monomial(&one, exp(params.k2), &one, exp(params.k1), "s"),
        Frame::AxisY => p.substitute_monomial(&one, 1, &ExactScalar::zero(), 1, "s"),
    }
}

/// Compute the Jacobian and pushforward constants of `(u, v)` and
/// assemble the map record.  The exact divisions *are* the
/// construction-time checks: a non-proportional Jacobian or a
/// non-monomial pushforward aborts the build.
pub(crate) fn finish_map(
    params: Params,
    derived: DerivedData,
    frame: Frame,
    u: BiPoly,
    v: BiPoly,
) -> Result<CoveringMap, CoverError> {
    let jac = u
        .partial(Var::X)
        .try_mul(&v.partial(Var::Y))?
        .try_sub(&u.partial(Var::Y).try_mul(&v.partial(Var::X))?)?;
    let pw = ramification_form(&params, frame).pow(exp(derived.n_comps - 1))?;
    let quot = jac
        .exact_divide(&pw)
        .map_err(|_| CoverError::JacobianNotProportional {
            witness: jac.to_string(),
        })?;
    let mu = match quot.as_monomial() {
        Some(((0, 0), c)) => c.clone(),
        _ => {
            return Err(CoverError::JacobianNotProportional {
                witness: jac.to_string(),
            })
        }
    };
    let monomial_constant = |p: &BiPoly, which: char, degree: u64| -> Result<ExactScalar, CoverError> {
        let pushed = push_along_curve(p, &params, frame)?;
        match pushed.as_monomial() {
            Some((d, c)) if d as u64 == degree => Ok(c.clone()),
            _ => Err(CoverError::PushforwardNotMonomial {
                which,
                expected: degree,
                witness: pushed.to_string(),
            }),
        }
    };
    let c1 = monomial_constant(&u, 'u', derived.d2)?;
    let c2 = monomial_constant(&v, 'v', derived.d1)?;
    Ok(CoveringMap {
        params,
        derived,
        frame,
        u,
        v,
        mu,
        c1,
        c2,
    })
}

/// The `l1`-jet of `(1 + T)^{m2/d1}`: coefficients are generalised
/// binomial coefficients, generated by the recurrence
/// `c_{i+1} = c_i (m2/d1 - i) / (i + 1)` from `c_0 = 1`.
pub fn jet_series(m2: u64, d1: u64, l1: u64) -> UniPoly {
    assert!(d1 >= 1, "jet_series needs a positive denominator");
    let e = BigRational::new(BigInt::from(m2), BigInt::from(d1));
    let mut c = BigRational::one();
    let mut coeffs = vec![ExactScalar::from_rational(c.clone())];
    for i in 0..l1 {
        c = c * (&e - BigRational::from_integer(BigInt::from(i)))
            / BigRational::from_integer(BigInt::from(i + 1));
        coeffs.push(ExactScalar::from_rational(c.clone()));
    }
    UniPoly::from_coeffs("t", coeffs)
}

/// Jet-truncation construction for family `A` with `l2 = 0`:
/// `u` is the homogenisation of `x^{m2} S(y^{k2}/x^{k1} - 1)` where `S`
/// is the [`jet_series`], and `v = xy`.
pub fn build_row1(k1: u64, k2: u64, l1: u64) -> Result<CoveringMap, CoverError> {
    let params = Params::a(k1, k2, l1, 0);
    let derived = ramdata::validate(&params)?;
    let s = jet_series(derived.m2, derived.d1, l1);
    // x^{m2} ((y^{k2} - x^{k1})/x^{k1})^i = (y^{k2} - x^{k1})^i x^{k1(l1-i)}
    let form = BiPoly::from_int_terms(["x", "y"], &[(0, exp(k2), 1), (exp(k1), 0, -1)]);
    let mut u = BiPoly::zero(["x", "y"]);
    for i in 0..=l1 {
        let ci = s.coeff(i as usize);
        if ci.is_zero() {
            continue;
        }
        let shift = BiPoly::monomial(["x", "y"], (exp(k1 * (l1 - i)), 0), ci);
        u = u.try_add(&form.pow(exp(i))?.try_mul(&shift)?)?;
    }
    let v = BiPoly::from_int_terms(["x", "y"], &[(1, 1, 1)]);
    finish_map(params, derived, Frame::Standard, u, v)
}

/// Antidifferentiation construction for family `B` with `l2 = 0`:
/// `u` is the exact termwise antiderivative in `x` of
/// `lambda (x^{k1} - y^{k2})^{n-1}` with `u(0,y) = 0` and `lambda`
/// fixed by `u(1,1) = 1`; `v = y`.
pub fn build_row2(k1: u64, k2: u64, l1: u64) -> Result<CoveringMap, CoverError> {
    let params = Params::b(k1, k2, l1, 0);
    let derived = ramdata::validate(&params)?;
    let w = BiPoly::from_int_terms(["x", "y"], &[(exp(k1), 0, 1), (0, exp(k2), -1)])
        .pow(exp(l1))?;
    let antider: Vec<(u32, u32, ExactScalar)> = w
        .terms()
        .map(|(&(i, j), c)| {
            let step = ExactScalar::from_ratio(1, i64::from(i) + 1);
            (i + 1, j, c * &step)
        })
        .collect();
    let u0 = BiPoly::try_from_terms(["x", "y"], antider)?;
    // u0(1,1) = integral of (x^{k1} - 1)^{l1} over [0,1], never zero.
    let norm = u0.evaluate(&ExactScalar::one(), &ExactScalar::one())?;
    let u = u0.scale(&norm.inv()?)?;
    let v = BiPoly::from_int_terms(["x", "y"], &[(0, 1, 1)]);
    finish_map(params, derived, Frame::Standard, u, v)
}

/// The sporadic degree-15 germ with parameters `(B, 1, 1, 2, 4)`,
/// recorded literally in the coordinate frame where the ramification
/// curve is the axis `y = 0`.
pub fn build_p_series() -> CoveringMap {
    let params = Params::b(1, 1, 2, 4);
    let derived = ramdata::validate(&params).expect("sporadic parameters are admissible");
    let u = BiPoly::from_int_terms(["x", "y"], &[(3, 0, 1), (1, 2, 9), (0, 3, 9)]);
    let v = BiPoly::from_int_terms(
        ["x", "y"],
        &[(5, 0, 1), (3, 2, 15), (2, 3, 15), (1, 4, 45), (0, 5, 90)],
    );
    finish_map(params, derived, Frame::AxisY, u, v).expect("hard-coded map satisfies its identities")
}

/// Closed form for family `A` with `l1 = l2 = 1`, defined over the
/// quadratic extension by `s = ±sqrt(-d1)`:
/// `u = A - (d2/s) B`, `v = xy (A + s B)` with
/// `A = (k2 x^{k1} + k1 y^{k2})/(k1+k2)` and
/// `B = (x^{k1} - y^{k2})/(k1+k2)`.
pub fn build_a_n3(k1: u64, k2: u64, sign: Sign) -> Result<CoveringMap, CoverError> {
    let params = Params::a(k1, k2, 1, 1);
    let derived = ramdata::validate(&params)?;
    let s = sign.apply(ExactScalar::sqrt_int(
        -i64::try_from(derived.d1).expect("d1 fits in i64"),
    ));
    assert!(s.ext().is_some(), "-d1 is negative, never a perfect square");
    let denom = int(k1 + k2).inv()?;
    let big_a = BiPoly::from_terms(
        ["x", "y"],
        [
            (exp(k1), 0, &int(k2) * &denom),
            (0, exp(k2), &int(k1) * &denom),
        ],
    );
    let big_b = BiPoly::from_terms(
        ["x", "y"],
        [(exp(k1), 0, denom.clone()), (0, exp(k2), -&denom)],
    );
    let u = big_a.try_sub(&big_b.scale(&int(derived.d2).div(&s)?)?)?;
    let xy = BiPoly::from_int_terms(["x", "y"], &[(1, 1, 1)]);
    let v = xy.try_mul(&big_a.try_add(&big_b.scale(&s)?)?)?;
    finish_map(params, derived, Frame::Standard, u, v)
}

/// Closed form for family `B` with `l1 = l2 = 1`, defined over the
/// extension by `s = ±sqrt(k1 k2)` (rational when `k1 k2` is a square):
/// `u = x (a y^{k2} + (1-a) x^{k1})`, `v = y (b x^{k1} + (1-b) y^{k2})`
/// with `a = (k1+1)(k1+s)/(k1(k1-k2))` and `b = (k2+1)(k2+s)/(k2(k2-k1))`.
pub fn build_b_n3(k1: u64, k2: u64, sign: Sign) -> Result<CoveringMap, CoverError> {
    let params = Params::b(k1, k2, 1, 1);
    let derived = ramdata::validate(&params)?;
    // k1 = k2 would need gcd(k1,k2) = gcd(m1,m2) = 1 simultaneously,
    // which admissibility rules out.
    assert_ne!(k1, k2, "admissible parameters have k1 != k2 here");
    let s = sign.apply(ExactScalar::sqrt_int(
        i64::try_from(k1 * k2).expect("k1*k2 fits in i64"),
    ));
    let diff = i64::try_from(k1).unwrap() - i64::try_from(k2).unwrap();
    let a = (&int(k1 + 1) * &(&int(k1) + &s)).div(&(&int(k1) * &ExactScalar::from_int(diff)))?;
    let b = (&int(k2 + 1) * &(&int(k2) + &s)).div(&(&int(k2) * &ExactScalar::from_int(-diff)))?;
    let one = ExactScalar::one();
    let u = BiPoly::from_terms(
        ["x", "y"],
        [(0, exp(k2), a.clone()), (exp(k1), 0, &one - &a)],
    )
    .try_mul(&BiPoly::from_int_terms(["x", "y"], &[(1, 0, 1)]))?;
    let v = BiPoly::from_terms(
        ["x", "y"],
        [(exp(k1), 0, b.clone()), (0, exp(k2), &one - &b)],
    )
    .try_mul(&BiPoly::from_int_terms(["x", "y"], &[(0, 1, 1)]))?;
    finish_map(params, derived, Frame::Standard, u, v)
}

/// Assemble the covering germ from validated generator data:
/// `u = x^nu G1`, `v = x^{1-nu} y G2` with
/// `G_i(x, y) = x^{k1 l_i} g_i(y^{k2}/x^{k1})`.
pub fn from_belyi(data: &BelyiData) -> Result<CoveringMap, CoverError> {
    let params = *data.params();
    let derived = *data.derived();
    let nu = u32::from(derived.nu);
    let lattice = |g: &UniPoly, l: u64, extra: (u32, u32)| -> Result<BiPoly, AlgebraError> {
        let mut terms = Vec::new();
        for (j, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e1 = exp(params.k1) * (exp(l) - j as u32) + extra.0;
            let e2 = exp(params.k2) * j as u32 + extra.1;
            terms.push((e1, e2, c.clone()));
        }
        BiPoly::try_from_terms(["x", "y"], terms)
    };
    let u = lattice(data.g1(), params.l1, (nu, 0))?;
    let v = lattice(data.g2(), params.l2, (1 - nu, 1))?;
    finish_map(params, derived, Frame::Standard, u, v)
}

/// Read the generator data back off a standard-frame map by collecting
/// the quasi-homogeneous lattice coefficients of `u` and `v`.  Fails if
/// the map is recorded in the axis frame, if the recovered generators
/// violate their invariants, or if the map has support off the lattice.
pub fn extract_belyi(f: &CoveringMap) -> Result<BelyiData, CoverError> {
    if f.frame != Frame::Standard {
        return Err(CoverError::FrameMismatch);
    }
    let params = f.params;
    let nu = u32::from(f.derived.nu);
    let read = |p: &BiPoly, l: u64, extra: (u32, u32)| -> Result<UniPoly, AlgebraError> {
        let mut coeffs = Vec::with_capacity(l as usize + 1);
        for j in 0..=exp(l) {
            let e1 = exp(params.k1) * (exp(l) - j) + extra.0;
            let e2 = exp(params.k2) * j + extra.1;
            coeffs.push(p.coeff((e1, e2)));
        }
        UniPoly::try_from_coeffs("t", coeffs)?.with_ext(p.ext())
    };
    let g1 = read(&f.u, params.l1, (nu, 0))?;
    let g2 = read(&f.v, params.l2, (1 - nu, 1))?;
    let data = BelyiData::new(params, g1, g2)?;
    let rebuilt = from_belyi(&data)?;
    if rebuilt.u != f.u || rebuilt.v != f.v {
        return Err(CoverError::NotQuasiHomogeneous);
    }
    Ok(data)
}

/// Dispatch to the closed-form builder covering the parameter shape,
/// if any: family `A` or `B` with `l2 = 0` (and the mirror `l1 = 0`),
/// the two `n = 3` families (which use `sign` to pick the square
/// root), and the sporadic degree-15 germ.
pub fn build_closed(p: &Params, sign: Sign) -> Result<CoveringMap, CoverError> {
    let derived = ramdata::validate(p)?;
    match (p.family, p.l1, p.l2) {
        (Case::B, 2, 4) if p.k1 == 1 && p.k2 == 1 => Ok(build_p_series()),
        (Case::A, _, 0) => build_row1(p.k1, p.k2, p.l1),
        (Case::B, _, 0) => build_row2(p.k1, p.k2, p.l1),
        (Case::B, 0, _) => {
            // mirror shape: exchanging (x,y) and (u,v) simultaneously
            // turns the tuple (k1,k2,0,l2) into (k2,k1,l2,0)
            let mirror = build_row2(p.k2, p.k1, p.l2)?;
            finish_map(
                *p,
                derived,
                Frame::Standard,
                mirror.v.swap_vars(),
                mirror.u.swap_vars(),
            )
        }
        (Case::A, 1, 1) => build_a_n3(p.k1, p.k2, sign),
        (Case::B, 1, 1) => build_b_n3(p.k1, p.k2, sign),
        _ => Err(CoverError::NoClosedForm(*p)),
    }
}

#[derive(Serialize)]
struct CoveringDtoRef<'a> {
    params: &'a Params,
    derived: &'a DerivedData,
    frame: Frame,
    u: &'a BiPoly,
    v: &'a BiPoly,
    mu: Vec<String>,
    c1: Vec<String>,
    c2: Vec<String>,
}

#[derive(Deserialize)]
struct CoveringDto {
    params: Params,
    derived: DerivedData,
    frame: Frame,
    u: BiPoly,
    v: BiPoly,
    mu: Vec<String>,
    c1: Vec<String>,
    c2: Vec<String>,
}

impl Serialize for CoveringMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoveringDtoRef {
            params: &self.params,
            derived: &self.derived,
            frame: self.frame,
            u: &self.u,
            v: &self.v,
            mu: scalar_to_parts(&self.mu),
            c1: scalar_to_parts(&self.c1),
            c2: scalar_to_parts(&self.c2),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoveringMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = CoveringDto::deserialize(deserializer)?;
        let derived = ramdata::validate(&dto.params).map_err(D::Error::custom)?;
        if derived != dto.derived {
            return Err(D::Error::custom(CoverError::StaleDerivedData));
        }
        let ext = join_ext(dto.u.ext(), dto.v.ext()).map_err(D::Error::custom)?;
        let scalar = |parts: &[String]| scalar_from_parts(parts, ext).map_err(D::Error::custom);
        Ok(CoveringMap {
            params: dto.params,
            derived,
            frame: dto.frame,
            u: dto.u,
            v: dto.v,
            mu: scalar(&dto.mu)?,
            c1: scalar(&dto.c1)?,
            c2: scalar(&dto.c2)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    #[test]
    fn jet_series_small_cases() {
        // first-order binomial expansion of (1+T)^{2/5}
        assert_eq!(jet_series(2, 5, 1), UniPoly::from_coeffs("t", vec![rat(1, 1), rat(2, 5)]));
        // 0-jet
        assert_eq!(jet_series(7, 3, 0), UniPoly::one("t"));
        // integer exponent 1 truncates to 1 + T for any jet order
        assert_eq!(jet_series(4, 4, 3), UniPoly::from_ints("t", &[1, 1]));
    }

    #[test]
    fn jet_series_satisfies_recurrence() {
        let (m2, d1) = (7u64, 5u64);
        let s = jet_series(m2, d1, 6);
        let e = rat(m2 as i64, d1 as i64);
        for i in 0..6usize {
            let expected = &s.coeff(i)
                * &(&(&e - &rat(i as i64, 1)) * &rat(1, i as i64 + 1));
            assert_eq!(s.coeff(i + 1), expected);
        }
    }

    #[test]
    fn row1_quadratic_ramification_formula() {
        // u = (k1 y^{k2} + k2 x^{k1})/(k1+k2), v = xy
        let f = build_row1(2, 3, 1).unwrap();
        let u = BiPoly::from_terms(["x", "y"], [(2, 0, rat(3, 5)), (0, 3, rat(2, 5))]);
        let v = BiPoly::from_int_terms(["x", "y"], &[(1, 1, 1)]);
        assert_eq!(f.u, u);
        assert_eq!(f.v, v);
        assert_eq!(f.c1, ExactScalar::one());
        assert_eq!(f.c2, ExactScalar::one());
        // J = (6/5)(x y^2 - x^3 ...) — orientation gives mu = -6/5 against
        // the fixed form (y^3 - x^2); either sign is a valid record.
        assert_eq!(f.mu, rat(-6, 5));
        assert_eq!(f.derived.n_sheets, 5);
    }

    #[test]
    fn row1_higher_jet_is_polynomial_and_normalised() {
        let f = build_row1(2, 3, 3).unwrap();
        // frozen expansion of the l1 = 3 jet construction
        let expected = BiPoly::from_terms(
            ["x", "y"],
            [
                (6, 0, rat(-6, 125)),
                (4, 3, rat(108, 125)),
                (2, 6, rat(27, 125)),
                (0, 9, rat(-4, 125)),
            ],
        );
        assert_eq!(f.u, expected);
        let one = ExactScalar::one();
        assert_eq!(f.u.evaluate(&one, &one).unwrap(), one);
        assert_eq!(f.derived.n_comps, 4);
    }

    #[test]
    fn row2_closed_form_and_jacobian() {
        let f = build_row2(2, 3, 1).unwrap();
        // u = (3y^3 - x^2) x / 2
        let u = BiPoly::from_terms(["x", "y"], [(1, 3, rat(3, 2)), (3, 0, rat(-1, 2))]);
        assert_eq!(f.u, u);
        assert_eq!(f.v, BiPoly::from_int_terms(["x", "y"], &[(0, 1, 1)]));
        assert_eq!(f.mu, rat(3, 2));
        assert_eq!(f.c1, ExactScalar::one());
        assert_eq!(f.c2, ExactScalar::one());
    }

    #[test]
    fn row2_deeper_jet_case() {
        let f = build_row2(3, 4, 2).unwrap();
        // (2x^7 - 7x^4 y^4 + 14x y^8)/9
        let expected = BiPoly::from_terms(
            ["x", "y"],
            [(7, 0, rat(2, 9)), (4, 4, rat(-7, 9)), (1, 8, rat(14, 9))],
        );
        assert_eq!(f.u, expected);
        assert_eq!(f.mu, rat(14, 9));
        assert_eq!(f.derived.n_sheets, 7);
    }

    #[test]
    fn p_series_frozen_identities() {
        let f = build_p_series();
        assert_eq!(f.frame, Frame::AxisY);
        assert_eq!(f.mu, ExactScalar::from_int(2835));
        assert_eq!(f.c1, ExactScalar::one());
        assert_eq!(f.c2, ExactScalar::one());
        assert_eq!(
            (f.derived.d1, f.derived.d2, f.derived.n_sheets, f.derived.n_comps),
            (5, 3, 15, 7)
        );
    }

    #[test]
    fn a_n3_lives_in_the_imaginary_quadratic_ring() {
        let f = build_a_n3(2, 3, Sign::Plus).unwrap();
        // d1 = 11, so the ring is Q(sqrt(-11))
        assert_eq!(f.u.ext(), Some(-11));
        let mu = ExactScalar::quad(
            BigRational::new(BigInt::from(6), BigInt::from(25)),
            BigRational::new(BigInt::from(102), BigInt::from(275)),
            -11,
        )
        .unwrap();
        assert_eq!(f.mu, mu);
        assert_eq!(f.derived.d1, 11);
        assert_eq!(f.derived.d2, 6);
        let g = extract_belyi(&f).unwrap();
        assert_eq!(g.g1().degree(), Some(1));
        assert_eq!(g.g2().degree(), Some(1));
    }

    #[test]
    fn a_n3_both_signs_differ_but_verify() {
        let plus = build_a_n3(1, 2, Sign::Plus).unwrap();
        let minus = build_a_n3(1, 2, Sign::Minus).unwrap();
        assert_ne!(plus.u, minus.u);
        assert_eq!(plus.u.ext(), Some(-5));
        assert!(!plus.mu.is_zero());
        assert!(!minus.mu.is_zero());
    }

    #[test]
    fn b_n3_matches_hand_computed_coefficients() {
        let f = build_b_n3(2, 3, Sign::Plus).unwrap();
        // a = -3 - (3/2) sqrt(6): coefficient of x y^3 in u
        let a = ExactScalar::quad(
            BigRational::from_integer(BigInt::from(-3)),
            BigRational::new(BigInt::from(-3), BigInt::from(2)),
            6,
        )
        .unwrap();
        assert_eq!(f.u.coeff((1, 3)), a);
        // b = 4 + (4/3) sqrt(6): coefficient of x^2 y in v
        let b = ExactScalar::quad(
            BigRational::from_integer(BigInt::from(4)),
            BigRational::new(BigInt::from(4), BigInt::from(3)),
            6,
        )
        .unwrap();
        assert_eq!(f.v.coeff((2, 1)), b);
        let mu = ExactScalar::quad(
            BigRational::from_integer(BigInt::from(84)),
            BigRational::from_integer(BigInt::from(34)),
            6,
        )
        .unwrap();
        assert_eq!(f.mu, mu);
        assert_eq!(f.derived.n_sheets, 12);
    }

    #[test]
    fn b_n3_with_square_product_is_rational() {
        // k1 k2 = 4 is a perfect square: s = ±2, everything rational
        let plus = build_b_n3(1, 4, Sign::Plus).unwrap();
        assert_eq!(plus.u.ext(), None);
        assert_eq!(plus.u.coeff((1, 4)), rat(-2, 1));
        assert_eq!(plus.mu, ExactScalar::from_int(15));
        let minus = build_b_n3(1, 4, Sign::Minus).unwrap();
        assert_eq!(minus.u.coeff((1, 4)), rat(2, 3));
        assert_eq!(minus.mu, rat(5, 9));
    }

    #[test]
    fn belyi_data_validates_each_clause() {
        let params = Params::b(2, 3, 1, 0);
        let good_g1 = UniPoly::from_coeffs("t", vec![rat(-1, 2), rat(3, 2)]);
        let one = UniPoly::one("t");
        let data = BelyiData::new(params, good_g1.clone(), one.clone()).unwrap();
        assert_eq!(*data.mu_h(), rat(3, 2));

        // degree too high
        let err = BelyiData::new(params, UniPoly::from_ints("t", &[0, 0, 1]), one.clone());
        assert!(matches!(err, Err(CoverError::WrongGeneratorDegree { which: 1, .. })));
        // not normalised at t = 1
        let err = BelyiData::new(params, UniPoly::from_ints("t", &[1, 1]), one.clone());
        assert!(matches!(err, Err(CoverError::NotNormalized { which: 1 })));
        // vanishing at the origin
        let err = BelyiData::new(params, UniPoly::from_ints("t", &[0, 1]), one.clone());
        assert!(matches!(err, Err(CoverError::VanishesAtOrigin { which: 1 })));
        // right shape but wrong coefficient: multiplicity collapses
        let bad = UniPoly::from_coeffs("t", vec![rat(1, 2), rat(1, 2)]);
        let err = BelyiData::new(params, bad, one);
        assert!(matches!(err, Err(CoverError::MultiplicityMismatch { .. })));
    }

    #[test]
    fn h_polynomial_frozen_example() {
        let g1 = UniPoly::from_coeffs("t", vec![rat(-1, 2), rat(3, 2)]);
        let g2 = UniPoly::one("t");
        let h = h_polynomial(&g1, &g2, &Params::b(2, 3, 1, 0)).unwrap();
        assert_eq!(h, UniPoly::from_coeffs("t", vec![rat(-3, 2), rat(3, 2)]));
    }

    #[test]
    fn from_belyi_reproduces_row2_and_row1() {
        for f in [build_row2(2, 3, 1).unwrap(), build_row1(2, 3, 1).unwrap(),
                  build_row2(3, 4, 2).unwrap(), build_row1(2, 3, 3).unwrap()] {
            let data = extract_belyi(&f).unwrap();
            let rebuilt = from_belyi(&data).unwrap();
            assert_eq!(rebuilt.u, f.u);
            assert_eq!(rebuilt.v, f.v);
            assert_eq!(rebuilt.mu, f.mu);
        }
    }

    #[test]
    fn extract_belyi_rejects_axis_frame() {
        let err = extract_belyi(&build_p_series());
        assert!(matches!(err, Err(CoverError::FrameMismatch)));
    }

    #[test]
    fn build_closed_dispatch_covers_catalogue_shapes() {
        assert!(build_closed(&Params::a(2, 3, 1, 0), Sign::Plus).is_ok());
        assert!(build_closed(&Params::b(2, 3, 1, 0), Sign::Plus).is_ok());
        assert!(build_closed(&Params::a(1, 2, 1, 1), Sign::Plus).is_ok());
        assert!(build_closed(&Params::b(1, 2, 1, 1), Sign::Minus).is_ok());
        assert!(build_closed(&Params::b(1, 1, 2, 4), Sign::Plus).is_ok());
        // no closed form for generic interior shapes
        let err = build_closed(&Params::b(1, 2, 1, 2), Sign::Plus);
        assert!(matches!(err, Err(CoverError::NoClosedForm(_))));
        // invalid parameters are reported as such, not as missing forms
        let err = build_closed(&Params::b(1, 2, 2, 1), Sign::Plus);
        assert!(matches!(err, Err(CoverError::Params(_))));
    }

    #[test]
    fn mirror_shape_builds_and_verifies() {
        // B(1,2,0,1) is the mirror of B(2,1,1,0)
        let f = build_closed(&Params::b(1, 2, 0, 1), Sign::Plus).unwrap();
        assert_eq!(f.derived.d1, 3);
        assert_eq!(f.derived.d2, 2);
        assert!(!f.mu.is_zero());
        // its ramification form is y^2 - x, so u, v swap roles of the mirror
        let mirror = build_row2(2, 1, 1).unwrap();
        assert_eq!(f.u, mirror.v.swap_vars());
    }

    #[test]
    fn covering_map_json_round_trip() {
        for f in [
            build_row2(2, 3, 1).unwrap(),
            build_b_n3(2, 3, Sign::Plus).unwrap(),
            build_p_series(),
        ] {
            let text = serde_json::to_string(&f).unwrap();
            let back: CoveringMap = serde_json::from_str(&text).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn covering_map_json_rejects_tampered_derived_block() {
        let f = build_row2(2, 3, 1).unwrap();
        let mut value = serde_json::to_value(&f).unwrap();
        value["derived"]["N"] = serde_json::json!(99);
        let err = serde_json::from_value::<CoveringMap>(value);
        assert!(err.is_err());
    }
}
