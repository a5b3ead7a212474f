use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::scalar::ExactScalar;
use super::unipoly::UniPoly;
use super::{join_ext, AlgebraError};

/// Which of the two variables an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
        }
    }
}

/// Sparse bivariate polynomial over `Q` or `Q(sqrt(d))` with named
/// variables, stored as exponent-pair -> coefficient.
///
/// As with [`UniPoly`], the extension tag can be wider than what the
/// coefficients use, and equality ignores it.
#[derive(Clone)]
pub struct BiPoly {
    vars: [String; 2],
    terms: BTreeMap<(u32, u32), ExactScalar>,
    ext: Option<i64>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}
impl Eq for BiPoly {}

impl BiPoly {
    pub fn zero(vars: [&str; 2]) -> Self {
        BiPoly { vars: [vars[0].to_string(), vars[1].to_string()], terms: BTreeMap::new(), ext: None }
    }

    pub fn one(vars: [&str; 2]) -> Self {
        Self::monomial(vars, (0, 0), ExactScalar::one())
    }

    pub fn monomial(vars: [&str; 2], e: (u32, u32), c: ExactScalar) -> Self {
        Self::from_terms(vars, [(e.0, e.1, c)])
    }

    /// Panics when coefficients mix extensions; see
    /// [`BiPoly::try_from_terms`].
    pub fn from_terms(
        vars: [&str; 2],
        terms: impl IntoIterator<Item = (u32, u32, ExactScalar)>,
    ) -> Self {
        Self::try_from_terms(vars, terms).expect("mixed quadratic extensions")
    }

    pub fn try_from_terms(
        vars: [&str; 2],
        terms: impl IntoIterator<Item = (u32, u32, ExactScalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars);
        for (i, j, c) in terms {
            p.ext = join_ext(p.ext, c.ext())?;
            p.insert_add((i, j), c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(vars: [&str; 2], terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(vars, terms.iter().map(|&(i, j, c)| (i, j, ExactScalar::from_int(c))))
    }

    fn insert_add(&mut self, e: (u32, u32), c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }

    pub fn ext(&self) -> Option<i64> {
        self.ext
    }

    pub fn with_ext(mut self, ext: Option<i64>) -> Result<Self, AlgebraError> {
        self.ext = join_ext(self.ext, ext)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExactScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: (u32, u32)) -> ExactScalar {
        self.terms.get(&e).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff((0, 0))
    }

    /// `Some((e, c))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<((u32, u32), &ExactScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        let idx = v.index();
        self.terms.keys().map(|e| [e.0, e.1][idx]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch(
                format!("({},{})", self.vars[0], self.vars[1]),
                format!("({},{})", other.vars[0], other.vars[1]),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let ext = join_ext(self.ext, other.ext)?;
        let mut p = self.clone();
        p.ext = ext;
        for (e, c) in &other.terms {
            p.insert_add(*e, c.clone());
        }
        Ok(p)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let ext = join_ext(self.ext, other.ext)?;
        let mut p = Self::zero([&self.vars[0], &self.vars[1]]);
        p.ext = ext;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.insert_add((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn scale(&self, c: &ExactScalar) -> Result<Self, AlgebraError> {
        let ext = join_ext(self.ext, c.ext())?;
        let mut p = Self::zero([&self.vars[0], &self.vars[1]]);
        p.ext = ext;
        for (e, a) in &self.terms {
            p.insert_add(*e, a * c);
        }
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let mut result = Self::one([&self.vars[0], &self.vars[1]]).with_ext(self.ext)?;
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

    pub fn partial(&self, v: Var) -> Self {
        let mut p = Self::zero([&self.vars[0], &self.vars[1]]);
        p.ext = self.ext;
        for (&(i, j), c) in &self.terms {
            let (k, e) = match v {
                Var::X if i > 0 => (i, (i - 1, j)),
                Var::Y if j > 0 => (j, (i, j - 1)),
                _ => continue,
            };
            p.insert_add(e, &ExactScalar::from_int(k as i64) * c);
        }
        p
    }

    pub fn evaluate(&self, x: &ExactScalar, y: &ExactScalar) -> Result<ExactScalar, AlgebraError> {
        join_ext(join_ext(self.ext, x.ext())?, y.ext())?;
        let mut acc = ExactScalar::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i)) * &y.pow(j));
        }
        Ok(acc)
    }

    /// Substitute the parametrised monomial curve
    /// `x = cx * out^ex`, `y = cy * out^ey` and collect the result as a
    /// univariate polynomial in `out`.
    pub fn substitute_monomial(
        &self,
        cx: &ExactScalar,
        ex: u32,
        cy: &ExactScalar,
        ey: u32,
        out: &str,
    ) -> Result<UniPoly, AlgebraError> {
        let ext = join_ext(join_ext(self.ext, cx.ext())?, cy.ext())?;
        let mut coeffs: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let k = (i * ex + j * ey) as usize;
            let val = &(c * &cx.pow(i)) * &cy.pow(j);
            let entry = coeffs.entry(k).or_insert_with(ExactScalar::zero);
            *entry = &*entry + &val;
        }
        let deg = coeffs.keys().next_back().copied().unwrap_or(0);
        let mut v = vec![ExactScalar::zero(); deg + 1];
        for (k, c) in coeffs {
            v[k] = c;
        }
        UniPoly::try_from_coeffs(out, v)?.with_ext(ext)
    }

    /// Coefficients with respect to powers of `v`, as univariate
    /// polynomials in the other variable, lowest power of `v` first.
    pub fn coefficients_in(&self, v: Var) -> Vec<UniPoly> {
        let other = match v {
            Var::X => &self.vars[1],
            Var::Y => &self.vars[0],
        };
        let deg = match self.degree_in(v) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut maps: Vec<BTreeMap<usize, ExactScalar>> = vec![BTreeMap::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let (outer, inner) = match v {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            maps[outer].insert(inner, c.clone());
        }
        maps.into_iter()
            .map(|m| {
                let deg = m.keys().next_back().copied().unwrap_or(0);
                let mut coeffs = vec![ExactScalar::zero(); deg + 1];
                for (k, c) in m {
                    coeffs[k] = c;
                }
                UniPoly::try_from_coeffs(other, coeffs)
                    .expect("coefficients of one polynomial share a ring")
                    .with_ext(self.ext)
                    .expect("tag already joined")
            })
            .collect()
    }

    /// Exact quotient using single-divisor multivariate division in
    /// lexicographic order; fails fast with
    /// [`AlgebraError::NotDivisible`] as soon as the leading term of
    /// the remainder stops being divisible (which certifies
    /// indivisibility for a single divisor).
    pub fn exact_divide(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(rhs)?;
        let ext = join_ext(self.ext, rhs.ext)?;
        let (lt_e, lt_c) = match rhs.terms.iter().next_back() {
            None => return Err(AlgebraError::DivisionByZero),
            Some((e, c)) => (*e, c.clone()),
        };
        let lt_inv = lt_c.inv()?;
        let mut rem = self.clone();
        let mut quo = Self::zero([&self.vars[0], &self.vars[1]]);
        quo.ext = ext;
        while let Some((&re, rc)) = rem.terms.iter().next_back() {
            if re.0 < lt_e.0 || re.1 < lt_e.1 {
                return Err(AlgebraError::NotDivisible);
            }
            let qe = (re.0 - lt_e.0, re.1 - lt_e.1);
            let qc = rc * &lt_inv;
            let qterm = Self::monomial([&self.vars[0], &self.vars[1]], qe, qc);
            rem = rem.try_sub(&qterm.try_mul(rhs)?)?;
            quo = quo.try_add(&qterm)?;
        }
        Ok(quo)
    }

    /// The polynomial `p(y, x)`: exchanges the two exponents while
    /// keeping the variable names.
    pub fn swap_vars(&self) -> Self {
        let mut p = Self::zero([&self.vars[0], &self.vars[1]]);
        p.ext = self.ext;
        for (&(i, j), c) in &self.terms {
            p.insert_add((j, i), c.clone());
        }
        p
    }

    /// Shear `x -> x + c*y` (a unimodular change of coordinates).
    pub fn shear_x(&self, c: &ExactScalar) -> Result<Self, AlgebraError> {
        let ext = join_ext(self.ext, c.ext())?;
        let mut p = Self::zero([&self.vars[0], &self.vars[1]]);
        p.ext = ext;
        for (&(i, j), a) in &self.terms {
            // (x + c*y)^i = sum_r C(i,r) c^(i-r) x^r y^(i-r)
            for r in 0..=i {
                let binom = num_integer::binomial(BigInt::from(i), BigInt::from(r));
                let coef = &(a * &ExactScalar::from_rational(BigRational::from_integer(binom)))
                    * &c.pow(i - r);
                p.insert_add((r, j + i - r), coef);
            }
        }
        Ok(p)
    }

    /// Resultant with respect to `eliminate`, as the determinant of the
    /// Sylvester matrix (rows of the first argument's coefficients
    /// first), computed by fraction-free elimination.  Both inputs must
    /// have positive degree in the eliminated variable.
    pub fn resultant(&self, other: &Self, eliminate: Var) -> Result<UniPoly, AlgebraError> {
        self.check_vars(other)?;
        join_ext(self.ext, other.ext)?;
        let var_name = &self.vars[eliminate.index()];
        let (dp, dq) = (self.degree_in(eliminate), other.degree_in(eliminate));
        if dp.unwrap_or(0) == 0 || dq.unwrap_or(0) == 0 {
            return Err(AlgebraError::DegenerateResultant(var_name.clone()));
        }
        resultant_allow_constant(self, other, eliminate)
    }
}

/// Resultant that tolerates arguments of degree zero in the eliminated
/// variable, using `Res(c, q) = c^{deg q}`, `Res(p, c) = c^{deg p}` and
/// `Res(c, c') = 1`.  Crate-internal: local intersection numbers need
/// this convention, while the public operation rejects the degenerate
/// shapes.
pub(crate) fn resultant_allow_constant(
    p: &BiPoly,
    q: &BiPoly,
    eliminate: Var,
) -> Result<UniPoly, AlgebraError> {
    let kept = match eliminate {
        Var::X => p.vars[1].clone(),
        Var::Y => p.vars[0].clone(),
    };
    let ext = join_ext(p.ext, q.ext)?;
    let pc = p.coefficients_in(eliminate);
    let qc = q.coefficients_in(eliminate);
    let m = pc.len().saturating_sub(1);
    let n = qc.len().saturating_sub(1);
    if p.is_zero() || q.is_zero() {
        return Ok(UniPoly::zero(&kept));
    }
    if m == 0 {
        return pc[0].clone().with_ext(ext)?.pow(n as u32);
    }
    if n == 0 {
        return qc[0].clone().with_ext(ext)?.pow(m as u32);
    }

    // Degree-one shortcut: for `a*t + b` the Sylvester determinant
    // collapses to the substitution formula
    // `Res(a*t + b, f) = sum_j f_j (-b)^j a^(deg f - j)` (and the
    // factor `(-1)^(deg f)` when the linear polynomial is the second
    // argument).  This avoids quadratic-size eliminations for the
    // common case of maps linear in one variable.
    if m == 1 || n == 1 {
        let (coeffs, b, a, negate) = if m == 1 {
            (&qc, &pc[0], &pc[1], false)
        } else {
            (&pc, &qc[0], &qc[1], m % 2 == 1)
        };
        let deg = coeffs.len() - 1;
        let neg_b = UniPoly::zero(&kept).with_ext(ext)?.try_sub(b)?;
        let mut b_pows = vec![UniPoly::one(&kept).with_ext(ext)?];
        let mut a_pows = b_pows.clone();
        for j in 1..=deg {
            b_pows.push(b_pows[j - 1].try_mul(&neg_b)?);
            a_pows.push(a_pows[j - 1].try_mul(a)?);
        }
        let mut acc = UniPoly::zero(&kept).with_ext(ext)?;
        for (j, c) in coeffs.iter().enumerate() {
            acc = acc.try_add(&c.try_mul(&b_pows[j])?.try_mul(&a_pows[deg - j])?)?;
        }
        if negate {
            acc = UniPoly::zero(&kept).with_ext(ext)?.try_sub(&acc)?;
        }
        return Ok(acc);
    }

    // Sylvester matrix, p-rows first: n rows of p's coefficients
    // (descending), then m rows of q's.
    let size = m + n;
    let zero = UniPoly::zero(&kept).with_ext(ext)?;
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(mat, &kept)
}

/// Fraction-free (Bareiss) determinant over the polynomial ring; all
/// intermediate divisions are exact.
fn bareiss_determinant(mut mat: Vec<Vec<UniPoly>>, var: &str) -> Result<UniPoly, AlgebraError> {
    let size = mat.len();
    let mut negate = false;
    let mut prev = UniPoly::one(var);
    for k in 0..size {
        // Choose the lowest-degree nonzero pivot in column k to slow
        // coefficient growth.
        let pivot = (k..size)
            .filter(|&r| !mat[r][k].is_zero())
            .min_by_key(|&r| mat[r][k].degree().unwrap_or(0));
        let Some(pivot) = pivot else {
            return Ok(UniPoly::zero(var));
        };
        if pivot != k {
            mat.swap(pivot, k);
            negate = !negate;
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let a = mat[k][k].try_mul(&mat[i][j])?;
                let b = mat[i][k].try_mul(&mat[k][j])?;
                mat[i][j] = a.try_sub(&b)?.exact_divide(&prev)?;
            }
            mat[i][k] = UniPoly::zero(var);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if negate { -&det } else { det })
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.try_add(rhs).unwrap()
    }
}
impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.try_sub(rhs).unwrap()
    }
}
impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.try_mul(rhs).unwrap()
    }
}
impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -&*c;
        }
        p
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (_, 0) => pow_str(&self.vars[0], i),
                (0, _) => pow_str(&self.vars[1], j),
                _ => format!("{}*{}", pow_str(&self.vars[0], i), pow_str(&self.vars[1], j)),
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(["x", "y"], terms)
    }

    #[test]
    fn ring_operations() {
        let p = xy(&[(1, 0, 1), (0, 1, -1)]); // x - y
        let q = xy(&[(1, 0, 1), (0, 1, 1)]); // x + y
        assert_eq!(&p * &q, xy(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(&(&p + &q) - &p, q);
        assert_eq!(p.partial(Var::X), BiPoly::one(["x", "y"]));
        assert_eq!(p.partial(Var::Y), xy(&[(0, 0, -1)]));
    }

    #[test]
    fn substitution_collapses_to_curve_parameter() {
        // (x^3 + 9x y^2 + 9y^3)(t, 0) = t^3
        let u = xy(&[(3, 0, 1), (1, 2, 9), (0, 3, 9)]);
        let got = u
            .substitute_monomial(&ExactScalar::one(), 1, &ExactScalar::zero(), 1, "t")
            .unwrap();
        assert_eq!(got, UniPoly::from_ints("t", &[0, 0, 0, 1]));
        // (y^3 - x^2)(t^3, t^2) = 0 and (xy)(t^3, t^2) = t^5
        let form = xy(&[(0, 3, 1), (2, 0, -1)]);
        assert!(form
            .substitute_monomial(&ExactScalar::one(), 3, &ExactScalar::one(), 2, "t")
            .unwrap()
            .is_zero());
        let prod = xy(&[(1, 1, 1)]);
        let got = prod
            .substitute_monomial(&ExactScalar::one(), 3, &ExactScalar::one(), 2, "t")
            .unwrap();
        assert_eq!(got, UniPoly::from_ints("t", &[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn exact_division_certifies_divisibility() {
        let x1x2 = ["x1", "x2"];
        // (x1^3 - x2^3)/(x1 - x2) = x1^2 + x1 x2 + x2^2
        let num = BiPoly::from_int_terms(x1x2, &[(3, 0, 1), (0, 3, -1)]);
        let den = BiPoly::from_int_terms(x1x2, &[(1, 0, 1), (0, 1, -1)]);
        let quo = num.exact_divide(&den).unwrap();
        assert_eq!(quo, BiPoly::from_int_terms(x1x2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)]));
        // x^2 + 1 is not divisible by x - 1
        let p = xy(&[(2, 0, 1), (0, 0, 1)]);
        let q = xy(&[(1, 0, 1), (0, 0, -1)]);
        assert!(matches!(p.exact_divide(&q), Err(AlgebraError::NotDivisible)));
    }

    #[test]
    fn resultants_match_classical_values() {
        // Res_y(y - x, y + x) = 2x
        let p = xy(&[(0, 1, 1), (1, 0, -1)]);
        let q = xy(&[(0, 1, 1), (1, 0, 1)]);
        let r = p.resultant(&q, Var::Y).unwrap();
        assert_eq!(r, UniPoly::from_ints("x", &[0, 2]));
        // Res_y(x^2 - y^3, 2x^2 - y^3) = -x^6
        let a = xy(&[(2, 0, 1), (0, 3, -1)]);
        let b = xy(&[(2, 0, 2), (0, 3, -1)]);
        let r = a.resultant(&b, Var::Y).unwrap();
        assert_eq!(r, UniPoly::from_ints("x", &[0, 0, 0, 0, 0, 0, -1]));
        // Res_y(x^3 - y^4, 5x^3 - y^4) = 256 x^12
        let a = xy(&[(3, 0, 1), (0, 4, -1)]);
        let b = xy(&[(3, 0, 5), (0, 4, -1)]);
        let r = a.resultant(&b, Var::Y).unwrap();
        let mut want = vec![0i64; 13];
        want[12] = 256;
        assert_eq!(r, UniPoly::from_ints("x", &want));
    }

    #[test]
    fn degenerate_resultants_are_rejected_publicly() {
        let p = xy(&[(1, 0, 1)]); // x: degree 0 in y
        let q = xy(&[(0, 1, 1)]); // y
        assert!(matches!(
            p.resultant(&q, Var::Y),
            Err(AlgebraError::DegenerateResultant(_))
        ));
        // ... but the internal convention gives Res_y(x, y) = x
        let r = resultant_allow_constant(&p, &q, Var::Y).unwrap();
        assert_eq!(r, UniPoly::from_ints("x", &[0, 1]));
    }

    #[test]
    fn shear_is_a_ring_morphism_on_samples() {
        let p = xy(&[(2, 0, 1), (1, 1, 2), (0, 3, -1)]);
        let c = ExactScalar::from_int(3);
        let sheared = p.shear_x(&c).unwrap();
        // compare by evaluation at a few points
        for (px, py) in [(2i64, 5i64), (-1, 3), (4, -7)] {
            let lhs = sheared
                .evaluate(&ExactScalar::from_int(px), &ExactScalar::from_int(py))
                .unwrap();
            let rhs = p
                .evaluate(
                    &(&ExactScalar::from_int(px) + &(&c * &ExactScalar::from_int(py))),
                    &ExactScalar::from_int(py),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    /// Cofactor-expansion determinant used as an independent oracle for
    /// the fraction-free elimination.
    fn naive_det(mat: &[Vec<UniPoly>], var: &str) -> UniPoly {
        let n = mat.len();
        if n == 1 {
            return mat[0][0].clone();
        }
        let mut acc = UniPoly::zero(var);
        for col in 0..n {
            if mat[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UniPoly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != col)
                        .map(|c| mat[r][c].clone())
                        .collect()
                })
                .collect();
            let term = mat[0][col].try_mul(&naive_det(&minor, var)).unwrap();
            acc = if col % 2 == 0 { acc.try_add(&term) } else { acc.try_sub(&term) }.unwrap();
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // deterministic pseudo-random small matrices
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for n in 2..=4 {
            for _ in 0..6 {
                let mat: Vec<Vec<UniPoly>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| UniPoly::from_ints("x", &[next(), next()]))
                            .collect()
                    })
                    .collect();
                let fast = super::bareiss_determinant(mat.clone(), "x").unwrap();
                let slow = naive_det(&mat, "x");
                assert_eq!(fast, slow);
            }
        }
    }

    /// Sylvester matrix with the same layout the elimination uses
    /// (first argument's coefficient rows first, descending).
    fn sylvester(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Vec<Vec<UniPoly>> {
        let kept = match eliminate {
            Var::X => p.vars()[1].to_string(),
            Var::Y => p.vars()[0].to_string(),
        };
        let pc = p.coefficients_in(eliminate);
        let qc = q.coefficients_in(eliminate);
        let (m, n) = (pc.len() - 1, qc.len() - 1);
        let zero = UniPoly::zero(&kept);
        let mut mat = vec![vec![zero; m + n]; m + n];
        for r in 0..n {
            for (k, c) in pc.iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in qc.iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        mat
    }

    #[test]
    fn linear_shortcut_matches_sylvester_determinant() {
        let cases = [
            // (linear in y, higher degree in y)
            (xy(&[(1, 1, 1), (0, 0, -3)]), xy(&[(0, 3, 2), (2, 1, 1), (1, 0, 4)])),
            (xy(&[(0, 1, 1), (1, 0, -1)]), xy(&[(0, 2, 1), (1, 1, -2), (3, 0, 1)])),
            (xy(&[(2, 1, 3), (0, 0, 5)]), xy(&[(0, 4, 1), (1, 2, 1), (0, 0, 7)])),
        ];
        for (lin, high) in cases {
            for (p, q) in [(&lin, &high), (&high, &lin)] {
                let fast = resultant_allow_constant(p, q, Var::Y).unwrap();
                let slow = naive_det(&sylvester(p, q, Var::Y), "x");
                assert_eq!(fast, slow, "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn resultant_is_multiplicative_in_first_argument() {
        let f = xy(&[(0, 1, 1), (1, 0, -1)]); // y - x
        let g = xy(&[(0, 2, 1), (1, 0, 1), (0, 0, 1)]); // y^2 + x + 1
        let h = xy(&[(0, 1, 2), (2, 0, 1)]); // 2y + x^2
        let lhs = (&f * &g).resultant(&h, Var::Y).unwrap();
        let rhs = &f.resultant(&h, Var::Y).unwrap() * &g.resultant(&h, Var::Y).unwrap();
        assert_eq!(lhs, rhs);
    }
}
