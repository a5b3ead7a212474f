//! Fast squarefree certificates by reduction modulo a large prime.
//!
//! [`certify_squarefree`] reduces a polynomial (rational or
//! quadratic-extension coefficients) modulo the Mersenne prime
//! `2^61 - 1` and takes the gcd with its derivative over the residue
//! field.  A constant gcd there is a proof of squarefreeness over the
//! original coefficient field, because the reduction of the true gcd
//! divides both images; a nonconstant gcd is merely inconclusive
//! (`Some(false)`), and reduction failures (degree drop, denominator
//! divisible by the prime) return `None`.  Callers treat anything but
//! `Some(true)` by falling back to exact arithmetic or redrawing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::UniPoly;

const P: u64 = (1 << 61) - 1;

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn mul(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(P)) as u64
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn red_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

fn red_rational(r: &BigRational) -> Option<u64> {
    let den = red_int(r.denom());
    if den == 0 {
        return None;
    }
    Some(mul(red_int(r.numer()), pow(den, P - 2)))
}

/// `a + b s` with `s^2 = d` fixed by the ambient context.
#[derive(Clone, Copy, PartialEq)]
struct El {
    a: u64,
    b: u64,
}

impl El {
    fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// Residue arithmetic context: plain `F_p` work uses `d = 0` with all
/// `b` parts zero (possibly after folding a square root of `d` into the
/// rational part); otherwise `F_p[s]/(s^2 - d)`, a field because `d` is
/// a non-residue.
struct Ctx {
    d: u64,
    fold: Option<u64>,
}

impl Ctx {
    fn new(ext: Option<i64>) -> Option<Ctx> {
        match ext {
            None => Some(Ctx { d: 0, fold: None }),
            Some(d) => {
                let dr = red_int(&BigInt::from(d));
                if dr == 0 {
                    return None;
                }
                // P = 3 mod 4, so d^((P+1)/4) is a square root whenever
                // one exists.
                let w = pow(dr, (P + 1) / 4);
                if mul(w, w) == dr {
                    Some(Ctx { d: 0, fold: Some(w) })
                } else {
                    Some(Ctx { d: dr, fold: None })
                }
            }
        }
    }

    fn reduce(&self, s: &crate::algebra::ExactScalar) -> Option<El> {
        let a = red_rational(s.rational_part())?;
        let b = red_rational(&s.surd_part())?;
        Some(match self.fold {
            Some(w) => El {
                a: add(a, mul(b, w)),
                b: 0,
            },
            None => El { a, b },
        })
    }

    fn mul(&self, x: El, y: El) -> El {
        El {
            a: add(mul(x.a, y.a), mul(self.d, mul(x.b, y.b))),
            b: add(mul(x.a, y.b), mul(x.b, y.a)),
        }
    }

    fn scale(&self, x: El, c: u64) -> El {
        El {
            a: mul(x.a, c),
            b: mul(x.b, c),
        }
    }

    fn sub(&self, x: El, y: El) -> El {
        El {
            a: sub(x.a, y.a),
            b: sub(x.b, y.b),
        }
    }

    fn inv(&self, x: El) -> Option<El> {
        let norm = sub(mul(x.a, x.a), mul(self.d, mul(x.b, x.b)));
        if norm == 0 {
            return None;
        }
        let ni = pow(norm, P - 2);
        Some(El {
            a: mul(x.a, ni),
            b: mul(sub(0, x.b), ni),
        })
    }
}

fn trim(v: &mut Vec<El>) {
    while v.last().is_some_and(|e| e.is_zero()) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over the residue field, or `None` when a
/// leading coefficient fails to invert.
fn gcd_degree(ctx: &Ctx, mut a: Vec<El>, mut b: Vec<El>) -> Option<usize> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = ctx.inv(*b.last().expect("nonempty"))?;
        // a <- a mod b
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = ctx.mul(*a.last().expect("nonempty"), lead);
            for (k, c) in b.iter().enumerate() {
                a[shift + k] = ctx.sub(a[shift + k], ctx.mul(q, *c));
            }
            // the leading term cancels exactly; trim defensively
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        None // gcd(0,0) carries no information here
    } else {
        Some(a.len() - 1)
    }
}

/// `Some(true)` proves `r` squarefree; `Some(false)` and `None` are
/// inconclusive (unlucky prime or failed reduction).
pub(crate) fn certify_squarefree(r: &UniPoly) -> Option<bool> {
    let deg = r.degree()?;
    if deg <= 1 {
        return Some(true);
    }
    let ctx = Ctx::new(r.ext())?;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        coeffs.push(ctx.reduce(&r.coeff(k))?);
    }
    if coeffs.last().expect("nonempty").is_zero() {
        return None; // degree dropped under reduction
    }
    let deriv: Vec<El> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| ctx.scale(*c, (k as u64) % P))
        .collect();
    let g = gcd_degree(&ctx, coeffs, deriv)?;
    Some(g == 0)
}
