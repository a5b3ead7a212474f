use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// An element of `Q` or of a quadratic extension `Q(sqrt(d))` with `d`
/// squarefree and different from 0 and 1.
///
/// The representation is normalised: a quadratic element whose surd
/// part vanishes collapses to the rational variant, so structural
/// equality coincides with equality in the field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    /// A rational number.
    Rat(BigRational),
    /// `a + b*sqrt(d)` with `b != 0`.
    Quad { a: BigRational, b: BigRational, d: i64 },
}

/// Largest squarefree divisor `m` of `|n|` together with the cofactor
/// root `f`, i.e. `|n| = f^2 * m`.
fn squarefree_decompose(n: i64) -> (i64, i64) {
    let mut m = n.abs();
    let mut f = 1i64;
    let mut p = 2i64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, m)
}

fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_decompose(n).0 == 1
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rat(big(n))
    }

    /// `n/d` as an exact rational.  Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        ExactScalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::Rat(r)
    }

    /// `a + b*sqrt(d)`.  Fails unless `d` is squarefree and not 0 or 1;
    /// a vanishing `b` collapses to the rational variant.
    pub fn quad(a: BigRational, b: BigRational, d: i64) -> Result<Self, AlgebraError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(AlgebraError::BadLiteral(format!("sqrt({d}) is not reduced")));
        }
        Ok(Self::make(a, b, d))
    }

    /// The exact square root of an integer, written as `f*sqrt(m)` with
    /// `m` squarefree (so perfect squares come back rational).
    /// Negative inputs land in the imaginary quadratic extension.
    pub fn sqrt_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (f, m) = squarefree_decompose(n);
        let d = if n < 0 { -m } else { m };
        if d == 1 {
            ExactScalar::Rat(big(f))
        } else {
            ExactScalar::Quad { a: BigRational::zero(), b: big(f), d }
        }
    }

    fn make(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            ExactScalar::Rat(a)
        } else {
            ExactScalar::Quad { a, b, d }
        }
    }

    /// Extension tag: `None` for plain rationals, `Some(d)` for
    /// elements of `Q(sqrt(d))` with a nonzero surd part.
    pub fn ext(&self) -> Option<i64> {
        match self {
            ExactScalar::Rat(_) => None,
            ExactScalar::Quad { d, .. } => Some(*d),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        match self {
            ExactScalar::Rat(a) => a,
            ExactScalar::Quad { a, .. } => a,
        }
    }

    /// Coefficient of `sqrt(d)`; zero for rationals.
    pub fn surd_part(&self) -> BigRational {
        match self {
            ExactScalar::Rat(_) => BigRational::zero(),
            ExactScalar::Quad { b, .. } => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rat(a) if a.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactScalar::Rat(a) if a.is_one())
    }

    /// True for rationals with a rational-number value below zero.
    /// Quadratic elements are not ordered here.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, ExactScalar::Rat(a) if a.is_negative())
    }

    fn joined(&self, other: &Self) -> i64 {
        match (self.ext(), other.ext()) {
            (Some(p), Some(q)) if p != q => {
                panic!("mixed quadratic extensions sqrt({p}) and sqrt({q})")
            }
            (Some(p), _) => p,
            (_, Some(q)) => q,
            (None, None) => unreachable!("joined() called with two rationals"),
        }
    }

    /// Multiplicative inverse.  `1/(a+b*sqrt(d))` is computed with the
    /// conjugate; the norm `a^2 - d*b^2` cannot vanish on a nonzero
    /// element because `d` is squarefree and != 1.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        match self {
            ExactScalar::Rat(a) => {
                if a.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(ExactScalar::Rat(a.recip()))
                }
            }
            ExactScalar::Quad { a, b, d } => {
                let norm = a * a - big(*d) * b * b;
                debug_assert!(!norm.is_zero());
                Ok(Self::make(a / &norm, -(b / &norm), *d))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        use ExactScalar::*;
        match (self, rhs) {
            (Rat(x), Rat(y)) => Rat(x + y),
            _ => {
                let d = self.joined(rhs);
                ExactScalar::make(
                    self.rational_part() + rhs.rational_part(),
                    self.surd_part() + rhs.surd_part(),
                    d,
                )
            }
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rat(a) => ExactScalar::Rat(-a),
            ExactScalar::Quad { a, b, d } => ExactScalar::Quad { a: -a, b: -b, d: *d },
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        use ExactScalar::*;
        match (self, rhs) {
            (Rat(x), Rat(y)) => Rat(x * y),
            _ => {
                let d = self.joined(rhs);
                let (a1, b1) = (self.rational_part(), self.surd_part());
                let (a2, b2) = (rhs.rational_part(), rhs.surd_part());
                ExactScalar::make(
                    a1 * a2 + big(d) * &b1 * &b2,
                    a1 * &b2 + &b1 * a2,
                    d,
                )
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(a) => write!(f, "{a}"),
            ExactScalar::Quad { a, b, d } => {
                if a.is_zero() {
                    write!(f, "{b}*sqrt({d})")
                } else if b.is_negative() {
                    write!(f, "({a} - {}*sqrt({d}))", -b)
                } else {
                    write!(f, "({a} + {b}*sqrt({d}))")
                }
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(d: i64) -> ExactScalar {
        ExactScalar::sqrt_int(d)
    }

    #[test]
    fn surd_arithmetic_collapses_to_rational() {
        let one = ExactScalar::one();
        let r2 = sqrt(2);
        // (1 + sqrt 2)(1 - sqrt 2) = -1
        let p = &(&one + &r2) * &(&one - &r2);
        assert_eq!(p, ExactScalar::from_int(-1));
        // sqrt(2)^2 = 2 demotes to the rational variant
        let sq = &r2 * &r2;
        assert_eq!(sq, ExactScalar::from_int(2));
        assert_eq!(sq.ext(), None);
    }

    #[test]
    fn sqrt_int_reduces_square_factors() {
        assert_eq!(sqrt(9), ExactScalar::from_int(3));
        assert_eq!(sqrt(8), &ExactScalar::from_int(2) * &sqrt(2));
        assert_eq!(sqrt(-4).ext(), Some(-1));
        assert_eq!(sqrt(-20), &ExactScalar::from_int(2) * &sqrt(-5));
        assert_eq!(sqrt(0), ExactScalar::zero());
    }

    #[test]
    fn quad_constructor_rejects_unreduced_radicand() {
        assert!(ExactScalar::quad(big(0), big(1), 12).is_err());
        assert!(ExactScalar::quad(big(0), big(1), 1).is_err());
        assert!(ExactScalar::quad(big(0), big(1), 0).is_err());
        // b = 0 collapses
        let c = ExactScalar::quad(big(3), big(0), 5).unwrap();
        assert_eq!(c, ExactScalar::from_int(3));
    }

    #[test]
    fn inverse_in_imaginary_extension() {
        // z = 2 + 3*sqrt(-5); z * z^-1 = 1
        let z = ExactScalar::quad(big(2), big(3), -5).unwrap();
        let zi = z.inv().unwrap();
        assert_eq!(&z * &zi, ExactScalar::one());
        assert!(ExactScalar::zero().inv().is_err());
    }

    #[test]
    fn pow_is_repeated_multiplication() {
        let z = &ExactScalar::from_ratio(1, 2) + &sqrt(3);
        let mut by_hand = ExactScalar::one();
        for _ in 0..5 {
            by_hand = &by_hand * &z;
        }
        assert_eq!(z.pow(5), by_hand);
        assert_eq!(ExactScalar::zero().pow(0), ExactScalar::one());
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixing_extensions_panics() {
        let _ = &sqrt(2) + &sqrt(3);
    }
}
