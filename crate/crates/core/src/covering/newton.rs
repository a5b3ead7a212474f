//! Arbitrary-precision damped-Newton solver for the generator system.
//!
//! For parameter shapes without a closed form, the generator
//! coefficients are found numerically: writing `g_i = 1 + sum_j a_ij
//! (t-1)^j` (which bakes in the normalisation `g_i(1) = 1`), the
//! conditions "`t^{m2} g2^{d2} - g1^{d1}` vanishes to order `n` at
//! `t = 1`" become a square polynomial system in the `l1 + l2 = n - 1`
//! unknown coefficients.  The system is solved by damped Newton
//! iteration in complex interval-free big-float arithmetic at a caller
//! chosen precision, from seeded random starts.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::ExactScalar;
use crate::ramdata::{self, DerivedData, Params};

use super::CoverError;

const RM: RoundingMode = RoundingMode::ToEven;

/// A complex number with [`BigFloat`] components.  All operations take
/// the working precision explicitly, mirroring the underlying library.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// `|x|` for big floats (the wrapper exposes only `neg`).
fn babs(x: &BigFloat) -> BigFloat {
    if x.is_negative() {
        x.neg()
    } else {
        x.clone()
    }
}

fn bf_zero(p: usize) -> BigFloat {
    BigFloat::from_i64(0, p)
}

/// Exact conversion of a big integer by 64-bit limbs.
fn bf_from_bigint(n: &BigInt, p: usize) -> BigFloat {
    let limb = BigFloat::from_f64(18446744073709551616.0, p); // 2^64, exact in f64
    let mut acc = bf_zero(p);
    for &d in n.magnitude().to_u64_digits().iter().rev() {
        acc = acc.mul(&limb, p, RM).add(&BigFloat::from_u64(d, p), p, RM);
    }
    if n.is_negative() {
        acc.neg()
    } else {
        acc
    }
}

fn bf_from_rational(r: &BigRational, p: usize) -> BigFloat {
    bf_from_bigint(r.numer(), p).div(&bf_from_bigint(r.denom(), p), p, RM)
}

/// `2^(-k)` at precision `p`.
fn bf_pow2_neg(k: usize, p: usize) -> BigFloat {
    BigFloat::from_f64(0.5, p).powi(k, p, RM)
}

/// A rough `f64` image (top limbs and exponent), good enough for
/// reports; saturates to `±inf`/`0` outside the `f64` range.
pub fn approx_f64(x: &BigFloat) -> f64 {
    if x.is_zero() || x.is_nan() {
        return 0.0;
    }
    let digits = match x.mantissa_digits() {
        Some(d) if !d.is_empty() => d,
        _ => return 0.0,
    };
    let mut mag = digits[digits.len() - 1] as f64 / 18446744073709551616.0;
    if digits.len() >= 2 {
        mag += digits[digits.len() - 2] as f64 / (18446744073709551616.0 * 18446744073709551616.0);
    }
    let e = x.exponent().unwrap_or(0);
    mag *= 2f64.powf(f64::from(e));
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

impl BigComplex {
    pub fn zero(p: usize) -> Self {
        Self {
            re: bf_zero(p),
            im: bf_zero(p),
        }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Self {
            re: BigFloat::from_i64(n, p),
            im: bf_zero(p),
        }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
        }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
        }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self
                .re
                .mul(&o.re, p, RM)
                .sub(&self.im.mul(&o.im, p, RM), p, RM),
            im: self
                .re
                .mul(&o.im, p, RM)
                .add(&self.im.mul(&o.re, p, RM), p, RM),
        }
    }

    pub fn div(&self, o: &Self, p: usize) -> Self {
        let den = o
            .re
            .mul(&o.re, p, RM)
            .add(&o.im.mul(&o.im, p, RM), p, RM);
        Self {
            re: self
                .re
                .mul(&o.re, p, RM)
                .add(&self.im.mul(&o.im, p, RM), p, RM)
                .div(&den, p, RM),
            im: self
                .im
                .mul(&o.re, p, RM)
                .sub(&self.re.mul(&o.im, p, RM), p, RM)
                .div(&den, p, RM),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, f: &BigFloat, p: usize) -> Self {
        Self {
            re: self.re.mul(f, p, RM),
            im: self.im.mul(f, p, RM),
        }
    }

    /// The 1-norm `|re| + |im|`, equivalent to the modulus up to a
    /// factor of `sqrt(2)` and cheaper to compare.
    pub fn norm1(&self, p: usize) -> BigFloat {
        babs(&self.re).add(&babs(&self.im), p, RM)
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    /// `|self - o|` in the 1-norm.
    pub fn dist1(&self, o: &Self, p: usize) -> BigFloat {
        self.sub(o, p).norm1(p)
    }
}

/// Embed an exact scalar `a + b sqrt(D)` into the complex plane
/// (imaginary when `D < 0`).
pub fn embed_scalar(s: &ExactScalar, p: usize) -> BigComplex {
    let a = bf_from_rational(s.rational_part(), p);
    match s.ext() {
        None => BigComplex {
            re: a,
            im: bf_zero(p),
        },
        Some(d) => {
            let b = bf_from_rational(&s.surd_part(), p);
            let root = BigFloat::from_i64(d.abs(), p).sqrt(p, RM);
            let term = b.mul(&root, p, RM);
            if d < 0 {
                BigComplex { re: a, im: term }
            } else {
                BigComplex {
                    re: a.add(&term, p, RM),
                    im: bf_zero(p),
                }
            }
        }
    }
}

// --- truncated polynomial arithmetic in the shifted variable ---------

fn tadd(a: &[BigComplex], b: &[BigComplex], p: usize) -> Vec<BigComplex> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y, p),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn tmul(a: &[BigComplex], b: &[BigComplex], cap: usize, p: usize) -> Vec<BigComplex> {
    let n = (a.len() + b.len()).saturating_sub(1).min(cap);
    let mut out = vec![BigComplex::zero(p); n];
    for (i, x) in a.iter().enumerate() {
        if i >= cap {
            break;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= cap {
                break;
            }
            out[i + j] = out[i + j].add(&x.mul(y, p), p);
        }
    }
    out
}

fn tpow(base: &[BigComplex], e: u64, cap: usize, p: usize) -> Vec<BigComplex> {
    let mut result = vec![BigComplex::from_i64(1, p)];
    let mut sq = base.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = tmul(&result, &sq, cap, p);
        }
        e >>= 1;
        if e > 0 {
            sq = tmul(&sq, &sq, cap, p);
        }
    }
    result
}

/// Coefficients of `(1 + e)^m` up to order `cap - 1`, binomials exact.
fn binomial_row(m: u64, cap: usize, p: usize) -> Vec<BigComplex> {
    let mut out = Vec::with_capacity(cap);
    let mut c = BigInt::one();
    for k in 0..cap as u64 {
        if k > 0 {
            if k > m {
                break;
            }
            c = c * BigInt::from(m - k + 1) / BigInt::from(k);
        }
        out.push(BigComplex {
            re: bf_from_bigint(&c, p),
            im: bf_zero(p),
        });
    }
    out
}

// --- the generator system --------------------------------------------

struct System {
    derived: DerivedData,
    l1: usize,
    l2: usize,
    /// order of vanishing demanded at `t = 1`
    n: usize,
    p: usize,
    binom_m2: Vec<BigComplex>,
}

impl System {
    fn dim(&self) -> usize {
        self.l1 + self.l2
    }

    /// Shifted coefficient arrays of `g1`, `g2`: constant term 1, the
    /// unknowns in ascending order.
    fn generators(&self, z: &[BigComplex]) -> (Vec<BigComplex>, Vec<BigComplex>) {
        let p = self.p;
        let mut g1 = Vec::with_capacity(self.l1 + 1);
        g1.push(BigComplex::from_i64(1, p));
        g1.extend_from_slice(&z[..self.l1]);
        let mut g2 = Vec::with_capacity(self.l2 + 1);
        g2.push(BigComplex::from_i64(1, p));
        g2.extend_from_slice(&z[self.l1..]);
        (g1, g2)
    }

    /// `P = (1+e)^{m2} g2^{d2} - g1^{d1}` truncated at order `n`
    /// (inclusive); the residual vector is `P_1 .. P_{n-1}`.
    fn defect(&self, z: &[BigComplex]) -> (Vec<BigComplex>, Vec<BigComplex>) {
        let p = self.p;
        let cap = self.n + 1;
        let (g1, g2) = self.generators(z);
        let lhs = tmul(
            &self.binom_m2,
            &tpow(&g2, self.derived.d2, cap, p),
            cap,
            p,
        );
        let rhs = tpow(&g1, self.derived.d1, cap, p);
        let mut poly = tadd(&lhs, &rhs.iter().map(BigComplex::neg).collect::<Vec<_>>(), p);
        poly.resize(cap, BigComplex::zero(p));
        let residual = poly[1..self.n].to_vec();
        (residual, poly)
    }

    /// Rows `r = 1..n-1`, columns the unknowns: the derivative of `P_r`
    /// with respect to `a_{1j}` is `-d1 (g1^{d1-1})_{r-j}`, and with
    /// respect to `a_{2j}` it is `d2 ((1+e)^{m2} g2^{d2-1})_{r-j}`.
    fn jacobian(&self, z: &[BigComplex]) -> Vec<Vec<BigComplex>> {
        let p = self.p;
        let cap = self.n;
        let (g1, g2) = self.generators(z);
        let d1 = BigComplex::from_i64(i64::try_from(self.derived.d1).unwrap(), p);
        let d2 = BigComplex::from_i64(i64::try_from(self.derived.d2).unwrap(), p);
        let base1: Vec<BigComplex> = tpow(&g1, self.derived.d1 - 1, cap, p)
            .iter()
            .map(|c| c.mul(&d1, p).neg())
            .collect();
        let base2: Vec<BigComplex> = tmul(
            &self.binom_m2,
            &tpow(&g2, self.derived.d2 - 1, cap, p),
            cap,
            p,
        )
        .iter()
        .map(|c| c.mul(&d2, p))
        .collect();
        let entry = |base: &[BigComplex], r: usize, j: usize| -> BigComplex {
            if r >= j && r - j < base.len() {
                base[r - j].clone()
            } else {
                BigComplex::zero(p)
            }
        };
        (1..self.n)
            .map(|r| {
                let mut row = Vec::with_capacity(self.dim());
                for j in 1..=self.l1 {
                    row.push(entry(&base1, r, j));
                }
                for j in 1..=self.l2 {
                    row.push(entry(&base2, r, j));
                }
                row
            })
            .collect()
    }
}

fn norm_inf(v: &[BigComplex], p: usize) -> BigFloat {
    let mut best = bf_zero(p);
    for c in v {
        let n = c.norm1(p);
        if matches!(n.cmp(&best), Some(x) if x > 0) {
            best = n;
        }
    }
    best
}

/// Solve `A x = b` in place by Gaussian elimination with partial
/// pivoting on the 1-norm; `None` when a pivot degenerates.
fn solve_linear(
    mut a: Vec<Vec<BigComplex>>,
    mut b: Vec<BigComplex>,
    p: usize,
) -> Option<Vec<BigComplex>> {
    let n = b.len();
    let tiny = bf_pow2_neg(p.saturating_sub(8), p);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col][col].norm1(p);
        for (r, row) in a.iter().enumerate().skip(col + 1) {
            let cand = row[col].norm1(p);
            if matches!(cand.cmp(&best), Some(x) if x > 0) {
                best = cand;
                pivot = r;
            }
        }
        if !matches!(best.cmp(&tiny), Some(x) if x > 0) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col].div(&a[col][col], p);
            for c in col..n {
                let sub = f.mul(&a[col][c], p);
                a[r][c] = a[r][c].sub(&sub, p);
            }
            let sub = f.mul(&b[col], p);
            b[r] = b[r].sub(&sub, p);
        }
    }
    let mut x = vec![BigComplex::zero(p); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc.sub(&a[r][c].mul(&x[c], p), p);
        }
        x[r] = acc.div(&a[r][r], p);
        if !x[r].is_finite() {
            return None;
        }
    }
    Some(x)
}

/// `h = m2 g1 g2 - d1 t g1' g2 + d2 t g1 g2'` on shifted coefficient
/// arrays (`t = 1 + e`, derivatives with respect to `t`).  No
/// truncation: the degree bound `n - 1` holds identically.
fn h_shifted(
    g1: &[BigComplex],
    g2: &[BigComplex],
    derived: &DerivedData,
    p: usize,
) -> Vec<BigComplex> {
    let cap = usize::MAX;
    let deriv = |g: &[BigComplex]| -> Vec<BigComplex> {
        (1..g.len())
            .map(|j| g[j].scale(&BigFloat::from_u64(j as u64, p), p))
            .collect()
    };
    let t = vec![BigComplex::from_i64(1, p), BigComplex::from_i64(1, p)];
    let m2 = BigComplex::from_i64(i64::try_from(derived.m2).unwrap(), p);
    let d1 = BigComplex::from_i64(i64::try_from(derived.d1).unwrap(), p);
    let d2 = BigComplex::from_i64(i64::try_from(derived.d2).unwrap(), p);
    let term1: Vec<BigComplex> = tmul(g1, g2, cap, p)
        .iter()
        .map(|c| c.mul(&m2, p))
        .collect();
    let term2: Vec<BigComplex> = tmul(&tmul(&t, &deriv(g1), cap, p), g2, cap, p)
        .iter()
        .map(|c| c.mul(&d1, p).neg())
        .collect();
    let term3: Vec<BigComplex> = tmul(&tmul(&t, &deriv(g2), cap, p), g1, cap, p)
        .iter()
        .map(|c| c.mul(&d2, p))
        .collect();
    tadd(&tadd(&term1, &term2, p), &term3, p)
}

/// Numeric generator data: the solved coefficients in the ordinary
/// power basis, the constant of the `(t-1)^{n-1}` collapse of `h`, and
/// the achieved residuals.
#[derive(Debug, Clone)]
pub struct NumericBelyi {
    pub params: Params,
    pub derived: DerivedData,
    pub precision_bits: usize,
    /// Coefficients of `g1`, ascending powers of `t`, length `l1 + 1`.
    pub g1: Vec<BigComplex>,
    /// Coefficients of `g2`, ascending powers of `t`, length `l2 + 1`.
    pub g2: Vec<BigComplex>,
    pub mu_h: BigComplex,
    /// Max-norm of the order-`1..n-1` coefficients at the solution.
    pub residual_system: f64,
    /// Max-norm of the sub-leading coefficients of `h`.
    pub residual_h: f64,
    /// Number of random starts consumed (the successful one included).
    pub tries: u32,
}

/// Convert shifted coefficients (powers of `t - 1`) to the ordinary
/// power basis via the binomial theorem.
fn unshift(coeffs: &[BigComplex], p: usize) -> Vec<BigComplex> {
    let n = coeffs.len();
    let mut out = vec![BigComplex::zero(p); n];
    for (j, a) in coeffs.iter().enumerate() {
        // (t-1)^j = sum_k C(j,k) (-1)^{j-k} t^k
        let mut c = BigInt::one();
        for k in 0..=j {
            if k > 0 {
                c = c * BigInt::from(j - k + 1) / BigInt::from(k);
            }
            let signed = if (j - k) % 2 == 1 { -c.clone() } else { c.clone() };
            let w = BigComplex {
                re: bf_from_bigint(&signed, p),
                im: bf_zero(p),
            };
            out[k] = out[k].add(&a.mul(&w, p), p);
        }
    }
    out
}

/// Evaluate a shifted coefficient array at `t = 0` (that is, `e = -1`).
fn eval_at_origin(coeffs: &[BigComplex], p: usize) -> BigComplex {
    let mut acc = BigComplex::zero(p);
    for c in coeffs.iter().rev() {
        acc = c.sub(&acc, p); // acc := c + (-1) * acc
    }
    acc
}

/// Solve the generator system for `params` at the given float
/// precision.  Randomised restarts are drawn from a generator seeded
/// with `seed`; the first start passing all convergence and
/// non-degeneracy checks wins, so results are reproducible.
pub fn solve_belyi_numeric(
    params: &Params,
    precision_bits: usize,
    seed: u64,
) -> Result<NumericBelyi, CoverError> {
    if precision_bits < 128 {
        return Err(CoverError::PrecisionTooLow(precision_bits));
    }
    let derived = ramdata::validate(params)?;
    let p = precision_bits;
    let n = derived.n_comps as usize;
    let system = System {
        derived,
        l1: params.l1 as usize,
        l2: params.l2 as usize,
        n,
        p,
        binom_m2: binomial_row(derived.m2, n + 1, p),
    };
    let dim = system.dim();
    debug_assert_eq!(dim, n - 1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // quadratic convergence stalls at the rounding floor; these
    // thresholds sit comfortably above it and far below any honest
    // nonzero quantity of the problem
    let success = bf_pow2_neg(p / 2, p);
    let stop_early = bf_pow2_neg(p.saturating_sub(24), p);
    let not_tiny = bf_pow2_neg(p / 4, p);
    const RESTARTS: u32 = 32;
    const MAX_STEPS: usize = 120;

    for attempt in 1..=RESTARTS {
        let mut z: Vec<BigComplex> = (0..dim)
            .map(|_| BigComplex {
                re: BigFloat::from_f64(rng.gen_range(-1.5..1.5), p),
                im: BigFloat::from_f64(rng.gen_range(-1.5..1.5), p),
            })
            .collect();
        let (mut fz, mut poly) = system.defect(&z);
        let mut best = norm_inf(&fz, p);
        for _ in 0..MAX_STEPS {
            if matches!(best.cmp(&stop_early), Some(x) if x < 0) {
                break;
            }
            let delta = match solve_linear(system.jacobian(&z), fz.iter().map(BigComplex::neg).collect(), p) {
                Some(d) => d,
                None => break,
            };
            // line search: halve until the residual strictly improves
            let mut step = BigFloat::from_i64(1, p);
            let mut accepted = false;
            for _ in 0..24 {
                let trial: Vec<BigComplex> = z
                    .iter()
                    .zip(&delta)
                    .map(|(zi, di)| zi.add(&di.scale(&step, p), p))
                    .collect();
                let (tf, tpoly) = system.defect(&trial);
                let tn = norm_inf(&tf, p);
                if tf.iter().all(BigComplex::is_finite)
                    && matches!(tn.cmp(&best), Some(x) if x < 0)
                {
                    z = trial;
                    fz = tf;
                    poly = tpoly;
                    best = tn;
                    accepted = true;
                    break;
                }
                step = step.mul(&BigFloat::from_f64(0.5, p), p, RM);
            }
            if !accepted {
                break;
            }
        }
        if !matches!(best.cmp(&success), Some(x) if x < 0) {
            continue;
        }
        // non-degeneracy checks on the candidate solution
        let (g1, g2) = system.generators(&z);
        let h = h_shifted(&g1, &g2, &system.derived, p);
        if h.len() > n {
            continue;
        }
        let residual_h = norm_inf(&h[..n - 1], p);
        let mu_h = h.get(n - 1).cloned().unwrap_or_else(|| BigComplex::zero(p));
        let degenerate = [
            // generators must not vanish at the origin
            eval_at_origin(&g1, p).norm1(p),
            eval_at_origin(&g2, p).norm1(p),
            // leading coefficients must stay away from zero
            g1.last().unwrap().norm1(p),
            g2.last().unwrap().norm1(p),
            // the vanishing order at t = 1 must be exactly n
            poly[n].norm1(p),
            // h must genuinely collapse
            mu_h.norm1(p),
        ]
        .iter()
        .any(|v| !matches!(v.cmp(&not_tiny), Some(x) if x > 0));
        if degenerate || !matches!(residual_h.cmp(&success), Some(x) if x < 0) {
            continue;
        }
        return Ok(NumericBelyi {
            params: *params,
            derived: system.derived,
            precision_bits: p,
            g1: unshift(&g1, p),
            g2: unshift(&g2, p),
            mu_h,
            residual_system: approx_f64(&best),
            residual_h: approx_f64(&residual_h),
            tries: attempt,
        });
    }
    Err(CoverError::NoConvergence { tries: RESTARTS })
}

impl Serialize for BigComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BigComplex", 2)?;
        s.serialize_field("re", &format!("{}", self.re))?;
        s.serialize_field("im", &format!("{}", self.im))?;
        s.end()
    }
}

impl Serialize for NumericBelyi {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("NumericBelyi", 8)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("derived", &self.derived)?;
        s.serialize_field("precision_bits", &self.precision_bits)?;
        s.serialize_field("g1", &self.g1)?;
        s.serialize_field("g2", &self.g2)?;
        s.serialize_field("mu_h", &self.mu_h)?;
        s.serialize_field("residual_system", &self.residual_system)?;
        s.serialize_field("residual_h", &self.residual_h)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{build_b_n3, build_row2, extract_belyi, Sign};

    const P: usize = 256;

    fn assert_close(a: &BigComplex, b: &BigComplex, bound: f64) {
        let d = approx_f64(&a.dist1(b, P));
        assert!(
            d <= bound,
            "distance {d:e} exceeds {bound:e} (a = {:?}, b = {:?})",
            (approx_f64(&a.re), approx_f64(&a.im)),
            (approx_f64(&b.re), approx_f64(&b.im)),
        );
    }

    #[test]
    fn bigint_and_rational_embeddings_are_faithful() {
        let p = 192;
        let huge = BigInt::from(3).pow(101);
        let round = bf_from_bigint(&huge, p);
        // subtracting the exact value leaves nothing
        let back = round.sub(&bf_from_bigint(&huge, p), p, RM);
        assert!(back.is_zero());
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        let x = bf_from_rational(&r, p);
        let three = BigFloat::from_i64(3, p);
        let err = x.mul(&three, p, RM).sub(&BigFloat::from_i64(1, p), p, RM);
        assert!(approx_f64(&babs(&err)) < 1e-50);
    }

    #[test]
    fn unshift_matches_binomial_expansion() {
        let p = 192;
        // (t-1)^2 + 2(t-1) + 3  =  t^2 - 0 t + 2... check directly:
        // coefficients in e: [3, 2, 1] -> t-basis [3-2+1, 2-2, 1] = [2, 0, 1]
        let shifted = vec![
            BigComplex::from_i64(3, p),
            BigComplex::from_i64(2, p),
            BigComplex::from_i64(1, p),
        ];
        let plain = unshift(&shifted, p);
        let expect = [2i64, 0, 1];
        for (c, e) in plain.iter().zip(expect) {
            let d = c.sub(&BigComplex::from_i64(e, p), p).norm1(p);
            assert!(approx_f64(&d) < 1e-50);
        }
    }

    #[test]
    fn solver_rejects_low_precision_and_bad_params() {
        let err = solve_belyi_numeric(&Params::b(2, 3, 1, 0), 64, 0);
        assert!(matches!(err, Err(CoverError::PrecisionTooLow(64))));
        let err = solve_belyi_numeric(&Params::b(1, 2, 2, 1), P, 0);
        assert!(matches!(err, Err(CoverError::Params(_))));
    }

    #[test]
    fn solver_recovers_the_antiderivative_closed_form() {
        // B(2,3,1,0): unique solution g1 = (3t-1)/2, g2 = 1
        let sol = solve_belyi_numeric(&Params::b(2, 3, 1, 0), P, 7).unwrap();
        assert!(sol.residual_system < 1e-60);
        assert!(sol.residual_h < 1e-60);
        let exact = extract_belyi(&build_row2(2, 3, 1).unwrap()).unwrap();
        for (num, ex) in sol.g1.iter().zip(exact.g1().coeffs()) {
            assert_close(num, &embed_scalar(ex, P), 1e-60);
        }
        assert_close(&sol.mu_h, &embed_scalar(exact.mu_h(), P), 1e-60);
    }

    #[test]
    fn solver_lands_on_one_of_the_two_quadratic_branches() {
        let sol = solve_belyi_numeric(&Params::b(1, 2, 1, 1), P, 0).unwrap();
        let candidates = [
            extract_belyi(&build_b_n3(1, 2, Sign::Plus).unwrap()).unwrap(),
            extract_belyi(&build_b_n3(1, 2, Sign::Minus).unwrap()).unwrap(),
        ];
        let matched = candidates.iter().any(|exact| {
            sol.g1
                .iter()
                .zip(exact.g1().coeffs())
                .chain(sol.g2.iter().zip(exact.g2().coeffs()))
                .all(|(num, ex)| {
                    approx_f64(&num.dist1(&embed_scalar(ex, P), P)) <= 1e-30
                })
        });
        assert!(matched, "numeric solution matches neither sign branch");
    }

    #[test]
    fn solver_is_deterministic_under_a_fixed_seed() {
        let a = solve_belyi_numeric(&Params::b(1, 2, 1, 1), P, 11).unwrap();
        let b = solve_belyi_numeric(&Params::b(1, 2, 1, 1), P, 11).unwrap();
        assert_eq!(a.tries, b.tries);
        for (x, y) in a.g1.iter().zip(&b.g1) {
            assert!(x.dist1(y, P).is_zero());
        }
    }
}
