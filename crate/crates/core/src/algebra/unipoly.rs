use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::ExactScalar;
use super::{join_ext, AlgebraError};

/// Dense univariate polynomial over `Q` or `Q(sqrt(d))`, lowest degree
/// first, with a named variable.
///
/// The `ext` field records which quadratic extension the coefficients
/// are allowed to live in; it can be wider than the extension actually
/// used (e.g. a polynomial read from a file declaring `Q(sqrt(-5))`
/// whose coefficients happen to be rational).  Equality ignores the
/// tag and compares variable and coefficients only.
#[derive(Clone)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<ExactScalar>,
    ext: Option<i64>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}
impl Eq for UniPoly {}

impl UniPoly {
    pub fn zero(var: &str) -> Self {
        UniPoly { var: var.to_string(), coeffs: Vec::new(), ext: None }
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, ExactScalar::one())
    }

    pub fn constant(var: &str, c: ExactScalar) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(var: &str, k: usize, c: ExactScalar) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(var, coeffs)
    }

    /// `var^1`.
    pub fn variable(var: &str) -> Self {
        Self::monomial(var, 1, ExactScalar::one())
    }

    /// Build from coefficients, lowest degree first.  Panics when the
    /// coefficients mix two different quadratic extensions; use
    /// [`UniPoly::try_from_coeffs`] for fallible construction.
    pub fn from_coeffs(var: &str, coeffs: Vec<ExactScalar>) -> Self {
        Self::try_from_coeffs(var, coeffs).expect("mixed quadratic extensions")
    }

    pub fn try_from_coeffs(var: &str, coeffs: Vec<ExactScalar>) -> Result<Self, AlgebraError> {
        let mut ext = None;
        for c in &coeffs {
            ext = join_ext(ext, c.ext())?;
        }
        let mut p = UniPoly { var: var.to_string(), coeffs, ext };
        p.trim();
        Ok(p)
    }

    /// Convenience constructor from small integers, lowest degree first.
    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ext(&self) -> Option<i64> {
        self.ext
    }

    /// Widen the extension tag (used when deserialising into a declared
    /// ring).  Fails if the coefficients already use a different one.
    pub fn with_ext(mut self, ext: Option<i64>) -> Result<Self, AlgebraError> {
        self.ext = join_ext(self.ext, ext)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    /// `Some((k, c))` when the polynomial is a single term `c*var^k`.
    pub fn as_monomial(&self) -> Option<(usize, &ExactScalar)> {
        let nonzero: Vec<usize> =
            (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect();
        match nonzero.as_slice() {
            [k] => Some((*k, &self.coeffs[*k])),
            _ => None,
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var != other.var {
            return Err(AlgebraError::VariableMismatch(self.var.clone(), other.var.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let ext = join_ext(self.ext, other.ext)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        let mut p = UniPoly { var: self.var.clone(), coeffs, ext };
        p.trim();
        Ok(p)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let ext = join_ext(self.ext, other.ext)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly { var: self.var.clone(), coeffs: Vec::new(), ext });
        }
        let mut coeffs =
            vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut p = UniPoly { var: self.var.clone(), coeffs, ext };
        p.trim();
        Ok(p)
    }

    pub fn scale(&self, c: &ExactScalar) -> Result<Self, AlgebraError> {
        let ext = join_ext(self.ext, c.ext())?;
        let mut p = UniPoly {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ext,
        };
        p.trim();
        Ok(p)
    }

    /// Multiply by `var^k`.
    pub fn mul_var_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { var: self.var.clone(), coeffs, ext: self.ext }
    }

    pub fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let mut result = Self::one(&self.var).with_ext(self.ext)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &ExactScalar::from_int(k as i64) * c)
            .collect();
        let mut p = UniPoly { var: self.var.clone(), coeffs, ext: self.ext };
        p.trim();
        p
    }

    /// Horner evaluation.
    pub fn evaluate(&self, at: &ExactScalar) -> Result<ExactScalar, AlgebraError> {
        join_ext(self.ext, at.ext())?;
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        Ok(acc)
    }

    /// Euclidean division: `self = q*rhs + r` with `deg r < deg rhs`.
    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_var(rhs)?;
        let ext = join_ext(self.ext, rhs.ext)?;
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let d = rhs.coeffs.len() - 1;
        let lead_inv = rhs.leading().unwrap().inv()?;
        let mut rem = self.clone().with_ext(ext)?;
        let mut quo = UniPoly { var: self.var.clone(), coeffs: Vec::new(), ext };
        while !rem.is_zero() && rem.coeffs.len() - 1 >= d {
            let k = rem.coeffs.len() - 1 - d;
            let c = &(rem.leading().unwrap().clone()) * &lead_inv;
            let term = Self::monomial(&self.var, k, c);
            rem = rem.try_sub(&term.try_mul(rhs)?)?;
            quo = quo.try_add(&term)?;
        }
        Ok((quo, rem))
    }

    /// Exact quotient; fails with [`AlgebraError::NotDivisible`] when a
    /// nonzero remainder is left.
    pub fn exact_divide(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Monic greatest common divisor via the Euclidean algorithm
    /// (coefficients are field elements).  `gcd(0,0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading() {
            let li = lead.inv()?;
            a = a.scale(&li)?;
        }
        Ok(a)
    }

    /// Multiplicity of `at` as a root (0 when not a root).  Undefined
    /// for the zero polynomial.
    pub fn root_multiplicity(&self, at: &ExactScalar) -> Result<usize, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let linear = Self::from_coeffs(&self.var, vec![-at, ExactScalar::one()]);
        let mut mult = 0;
        let mut p = self.clone();
        while p.evaluate(at)?.is_zero() {
            p = p.exact_divide(&linear)?;
            mult += 1;
            if p.is_zero() {
                break;
            }
        }
        Ok(mult)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.try_add(rhs).unwrap()
    }
}
impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.try_sub(rhs).unwrap()
    }
}
impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.try_mul(rhs).unwrap()
    }
}
impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ext: self.ext,
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "{}", self.var)?,
                1 => write!(f, "{c}*{}", self.var)?,
                _ if c.is_one() => write!(f, "{}^{k}", self.var)?,
                _ => write!(f, "{c}*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints("t", coeffs)
    }

    #[test]
    fn product_and_difference_of_squares() {
        let p = &t(&[-1, 1]) * &t(&[1, 1]); // (t-1)(t+1)
        assert_eq!(p, t(&[-1, 0, 1]));
    }

    #[test]
    fn division_with_remainder() {
        let p = t(&[1, 0, 1]); // t^2 + 1
        let q = t(&[-1, 1]); // t - 1
        let (quo, rem) = p.div_rem(&q).unwrap();
        assert_eq!(quo, t(&[1, 1]));
        assert_eq!(rem, t(&[2]));
        assert!(p.exact_divide(&q).is_err());
        let exact = (&p * &q).exact_divide(&q).unwrap();
        assert_eq!(exact, p);
    }

    #[test]
    fn gcd_is_monic() {
        let a = &t(&[-1, 1]) * &t(&[2, 1]); // (t-1)(t+2)
        let b = &t(&[-1, 1]) * &t(&[0, 3]); // 3t(t-1)
        assert_eq!(a.gcd(&b).unwrap(), t(&[-1, 1]));
        assert_eq!(t(&[]).gcd(&t(&[])).unwrap(), UniPoly::zero("t"));
    }

    #[test]
    fn multiplicity_by_synthetic_division() {
        // t^3 - (3t-1)^2/4 has a double root at t = 1
        let g = UniPoly::from_coeffs(
            "t",
            vec![
                ExactScalar::from_ratio(-1, 4),
                ExactScalar::from_ratio(6, 4),
                ExactScalar::from_ratio(-9, 4),
                ExactScalar::one(),
            ],
        );
        assert_eq!(g.root_multiplicity(&ExactScalar::one()).unwrap(), 2);
        assert_eq!(t(&[1, 1]).root_multiplicity(&ExactScalar::one()).unwrap(), 0);
        assert!(t(&[]).root_multiplicity(&ExactScalar::one()).is_err());
    }

    #[test]
    fn evaluation_in_extension_field() {
        // p(t) = t^2 - 2 vanishes at sqrt(2)
        let p = t(&[-2, 0, 1]);
        assert!(p.evaluate(&ExactScalar::sqrt_int(2)).unwrap().is_zero());
    }

    #[test]
    fn extension_mixing_is_rejected_at_poly_level() {
        let p = UniPoly::constant("t", ExactScalar::sqrt_int(2));
        let q = UniPoly::constant("t", ExactScalar::sqrt_int(3));
        assert!(matches!(p.try_add(&q), Err(AlgebraError::MixedExtensions(2, 3))));
        let r = UniPoly::variable("s");
        assert!(matches!(p.try_add(&r), Err(AlgebraError::VariableMismatch(_, _))));
    }

    #[test]
    fn derivative_and_monomial_queries() {
        let p = t(&[5, -1, 0, 2]); // 2t^3 - t + 5
        assert_eq!(p.derivative(), t(&[-1, 0, 6]));
        assert_eq!(p.as_monomial(), None);
        let m = t(&[0, 0, 7]);
        let (k, c) = m.as_monomial().unwrap();
        assert_eq!((k, c.clone()), (2, ExactScalar::from_int(7)));
    }
}
