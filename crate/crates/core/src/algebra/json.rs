//! Serialisation of polynomials and scalars.
//!
//! A polynomial is encoded as
//!
//! ```json
//! {"ring": {"vars": ["x", "y"], "ext": null},
//!  "terms": [{"e": [2, 0], "c": ["3/5"]}, ...]}
//! ```
//!
//! where `ext` is either `null` (plain rationals) or `{"D": -5}` for
//! coefficients in `Q(sqrt(D))`.  A coefficient is a one-element array
//! `["n/d"]` for a rational, or `["a", "b"]` for `a + b*sqrt(D)`, each
//! entry a fraction in lowest terms with an explicit denominator.
//! Terms are emitted in increasing lexicographic exponent order with no
//! zero or duplicate entries, so serialising what was deserialised
//! reproduces the canonical byte sequence.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::ExactScalar;
use super::unipoly::UniPoly;
use super::{AlgebraError, BiPoly};

#[derive(Serialize, Deserialize)]
pub(crate) struct ExtDto {
    #[serde(rename = "D")]
    pub d: i64,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RingDto {
    pub vars: Vec<String>,
    pub ext: Option<ExtDto>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermDto {
    pub e: Vec<u32>,
    pub c: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyDto {
    pub ring: RingDto,
    pub terms: Vec<TermDto>,
}

fn fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_fraction(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::BadLiteral(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Coefficient array for a scalar: `["n/d"]` or `["a", "b"]`.
pub(crate) fn scalar_to_parts(s: &ExactScalar) -> Vec<String> {
    match s {
        ExactScalar::Rat(a) => vec![fraction(a)],
        ExactScalar::Quad { a, b, .. } => vec![fraction(a), fraction(b)],
    }
}

/// Parse a coefficient array in the context of a ring with extension
/// `ext`.
pub(crate) fn scalar_from_parts(
    parts: &[String],
    ext: Option<i64>,
) -> Result<ExactScalar, AlgebraError> {
    match parts {
        [a] => Ok(ExactScalar::from_rational(parse_fraction(a)?)),
        [a, b] => {
            let d = ext.ok_or_else(|| {
                AlgebraError::BadEncoding(
                    "two-part coefficient in a ring without an extension".into(),
                )
            })?;
            ExactScalar::quad(parse_fraction(a)?, parse_fraction(b)?, d)
        }
        _ => Err(AlgebraError::BadEncoding(format!(
            "coefficient must have 1 or 2 parts, got {}",
            parts.len()
        ))),
    }
}

fn ring_dto(vars: &[&str], ext: Option<i64>) -> RingDto {
    RingDto {
        vars: vars.iter().map(|v| v.to_string()).collect(),
        ext: ext.map(|d| ExtDto { d }),
    }
}

impl BiPoly {
    pub(crate) fn to_dto(&self) -> PolyDto {
        PolyDto {
            ring: ring_dto(&self.vars(), self.ext()),
            terms: self
                .terms()
                .map(|(&(i, j), c)| TermDto { e: vec![i, j], c: scalar_to_parts(c) })
                .collect(),
        }
    }

    pub(crate) fn from_dto(dto: &PolyDto) -> Result<Self, AlgebraError> {
        if dto.ring.vars.len() != 2 {
            return Err(AlgebraError::BadEncoding(format!(
                "expected 2 variables, got {}",
                dto.ring.vars.len()
            )));
        }
        let ext = dto.ring.ext.as_ref().map(|e| e.d);
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in &dto.terms {
            let [i, j] = t.e.as_slice() else {
                return Err(AlgebraError::BadEncoding("exponent must have 2 entries".into()));
            };
            terms.push((*i, *j, scalar_from_parts(&t.c, ext)?));
        }
        BiPoly::try_from_terms([&dto.ring.vars[0], &dto.ring.vars[1]], terms)?.with_ext(ext)
    }
}

impl UniPoly {
    pub(crate) fn to_dto(&self) -> PolyDto {
        PolyDto {
            ring: ring_dto(&[self.var()], self.ext()),
            terms: self
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| TermDto { e: vec![k as u32], c: scalar_to_parts(c) })
                .collect(),
        }
    }

    pub(crate) fn from_dto(dto: &PolyDto) -> Result<Self, AlgebraError> {
        if dto.ring.vars.len() != 1 {
            return Err(AlgebraError::BadEncoding(format!(
                "expected 1 variable, got {}",
                dto.ring.vars.len()
            )));
        }
        let ext = dto.ring.ext.as_ref().map(|e| e.d);
        let deg = dto.terms.iter().flat_map(|t| t.e.first().copied()).max().unwrap_or(0);
        let mut coeffs = vec![ExactScalar::zero(); deg as usize + 1];
        for t in &dto.terms {
            let [k] = t.e.as_slice() else {
                return Err(AlgebraError::BadEncoding("exponent must have 1 entry".into()));
            };
            let c = scalar_from_parts(&t.c, ext)?;
            coeffs[*k as usize] = &coeffs[*k as usize] + &c;
        }
        UniPoly::try_from_coeffs(&dto.ring.vars[0], coeffs)?.with_ext(ext)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_dto().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = PolyDto::deserialize(deserializer)?;
        BiPoly::from_dto(&dto).map_err(D::Error::custom)
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_dto().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = PolyDto::deserialize(deserializer)?;
        UniPoly::from_dto(&dto).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Var;
    use super::*;

    #[test]
    fn bipoly_round_trips_bit_exactly() {
        let p = BiPoly::from_terms(
            ["x", "y"],
            [
                (2, 0, ExactScalar::from_ratio(3, 5)),
                (0, 3, ExactScalar::from_int(-2)),
            ],
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"ring":{"vars":["x","y"],"ext":null},"terms":[{"e":[0,3],"c":["-2/1"]},{"e":[2,0],"c":["3/5"]}]}"#
        );
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn quadratic_coefficients_carry_the_ring_extension() {
        let z = ExactScalar::quad(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(3)),
            -5,
        )
        .unwrap();
        let p = BiPoly::from_terms(["x", "y"], [(0, 1, z), (1, 0, ExactScalar::one())]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"ring":{"vars":["x","y"],"ext":{"D":-5}},"terms":[{"e":[0,1],"c":["1/2","3/1"]},{"e":[1,0],"c":["1/1"]}]}"#
        );
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.ext(), Some(-5));
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn two_part_coefficient_without_extension_is_rejected() {
        let s = r#"{"ring":{"vars":["x","y"],"ext":null},"terms":[{"e":[0,1],"c":["1/2","3/1"]}]}"#;
        assert!(serde_json::from_str::<BiPoly>(s).is_err());
    }

    #[test]
    fn unipoly_round_trip_and_declared_ring_survives() {
        // all-rational coefficients inside a declared Q(sqrt(2)) ring:
        // the declared ring is preserved through a round trip
        let s = r#"{"ring":{"vars":["t"],"ext":{"D":2}},"terms":[{"e":[0],"c":["-1/1"]},{"e":[3],"c":["2/7"]}]}"#;
        let p: UniPoly = serde_json::from_str(s).unwrap();
        assert_eq!(p.ext(), Some(2));
        assert_eq!(serde_json::to_string(&p).unwrap(), s);
    }

    #[test]
    fn deserialised_polynomials_are_usable_operands() {
        let s = r#"{"ring":{"vars":["x","y"],"ext":null},"terms":[{"e":[0,1],"c":["1/1"]},{"e":[1,0],"c":["-1/1"]}]}"#;
        let p: BiPoly = serde_json::from_str(s).unwrap(); // y - x
        let q = BiPoly::from_int_terms(["x", "y"], &[(0, 1, 1), (1, 0, 1)]); // y + x
        let r = p.resultant(&q, Var::Y).unwrap();
        assert_eq!(r, UniPoly::from_ints("x", &[0, 2]));
    }

    #[test]
    fn fraction_parser_accepts_integers_and_rejects_junk() {
        assert_eq!(parse_fraction("7").unwrap(), BigRational::from_integer(BigInt::from(7)));
        assert_eq!(
            parse_fraction("-3/6").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("a/b").is_err());
    }
}
