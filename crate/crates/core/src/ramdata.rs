//! Discrete parameter families of covering germs.
//!
//! A germ in this crate is indexed by a family tag (`A` or `B`) and
//! four small integers `(k1, k2, l1, l2)`.  From these, all numerical
//! invariants follow: the branch exponents `d1, d2`, the multiplicities
//! `m1, m2` of the two distinguished curves in the source model, the
//! covering degree `N`, the number `n` of exceptional components in the
//! source chain, and the normalisation exponent `nu`.
//!
//! Family `A` (with `nu = 0`):
//! ```text
//! d1 = k1 + k2 + l2*k1*k2,  d2 = l1*k1*k2,
//! m1 = l1*k2,  m2 = l1*k1,  N = l1*d1,  n = l1 + l2 + 1,
//! requiring l1,k1,k2 >= 1, l2 >= 0, l1*k1*k2 >= 2,
//! gcd(k1,k2) = 1, gcd(l1,d1) = 1.
//! ```
//!
//! Family `B` (with `nu = 1`):
//! ```text
//! m1 = k2*l2 + 1,  m2 = k1*l1 + 1,  d1 = k1*m1,  d2 = k2*m2,
//! N = m1*m2,  n = l1 + l2 + 1,
//! requiring k1,k2 >= 1, l1,l2 >= 0, k1 + l2 > 1, k2 + l1 > 1,
//! gcd(k1,k2) = 1, gcd(m1,m2) = 1.
//! ```
//!
//! Different tuples can describe the same germ.  The reductions
//! `A(k1,k2,l1,l2) = A(k2,k1,l1,l2)`,
//! `A(1,k2,l1,l2) = B(1,k2,l1-1,l2+1)` and
//! `B(k1,k2,l1,l2) = B(k2,k1,l2,l1)` generate the identifications;
//! [`canonicalize`] picks the unique representative with `k1 <= k2`,
//! `k1 >= 2` in family `A`, and `l1 <= l2` when `k1 = k2 = 1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which of the two parameter families a tuple belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
}

/// A parameter tuple.  Use [`validate`] to obtain the derived
/// invariants (and to find out whether the tuple is admissible at all).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "case")]
    pub family: Case,
    pub k1: u64,
    pub k2: u64,
    pub l1: u64,
    pub l2: u64,
}

impl Params {
    pub fn new(family: Case, k1: u64, k2: u64, l1: u64, l2: u64) -> Self {
        Params { family, k1, k2, l1, l2 }
    }

    pub fn a(k1: u64, k2: u64, l1: u64, l2: u64) -> Self {
        Self::new(Case::A, k1, k2, l1, l2)
    }

    pub fn b(k1: u64, k2: u64, l1: u64, l2: u64) -> Self {
        Self::new(Case::B, k1, k2, l1, l2)
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.family {
            Case::A => "a",
            Case::B => "b",
        };
        write!(f, "({tag}; k=({},{}), l=({},{}))", self.k1, self.k2, self.l1, self.l2)
    }
}

/// Numerical invariants derived from a valid parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivedData {
    pub d1: u64,
    pub d2: u64,
    pub m1: u64,
    pub m2: u64,
    /// Covering degree.
    #[serde(rename = "N")]
    pub n_sheets: u64,
    /// Number of exceptional components in the source chain.
    #[serde(rename = "n")]
    pub n_comps: u64,
    /// Normalisation exponent: `u` starts with `x^nu`.
    pub nu: u8,
}

/// Errors mirroring the admissibility constraints one-to-one, plus the
/// failure modes of the inverse lookup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamError {
    #[error("k1 and k2 must be at least 1")]
    KOutOfRange,
    #[error("family (a) requires l1 >= 1")]
    L1OutOfRange,
    #[error("family (a) requires l1*k1*k2 >= 2")]
    RamProductTooSmall,
    #[error("gcd(k1,k2) must be 1, got {0}")]
    KNotCoprime(u64),
    #[error("family (a) requires gcd(l1,d1) = 1, got {0}")]
    L1NotCoprimeToD1(u64),
    #[error("family (b) requires k1 + l2 > 1")]
    Side1Collapsed,
    #[error("family (b) requires k2 + l1 > 1")]
    Side2Collapsed,
    #[error("family (b) requires gcd(m1,m2) = 1, got {0}")]
    MNotCoprime(u64),
    #[error("no parameter family has invariants (d1,d2,N,n) = ({0},{1},{2},{3})")]
    NoFamilyMatches(u64, u64, u64, u64),
    #[error("invariants ({0},{1},{2},{3}) match more than one family")]
    AmbiguousInvariants(u64, u64, u64, u64),
}

/// Check admissibility and compute the derived invariants.
pub fn validate(p: &Params) -> Result<DerivedData, RamError> {
    let Params { family, k1, k2, l1, l2 } = *p;
    if k1 == 0 || k2 == 0 {
        return Err(RamError::KOutOfRange);
    }
    let g = k1.gcd(&k2);
    match family {
        Case::A => {
            if l1 == 0 {
                return Err(RamError::L1OutOfRange);
            }
            if l1 * k1 * k2 < 2 {
                return Err(RamError::RamProductTooSmall);
            }
            if g != 1 {
                return Err(RamError::KNotCoprime(g));
            }
            let d1 = k1 + k2 + l2 * k1 * k2;
            let gl = l1.gcd(&d1);
            if gl != 1 {
                return Err(RamError::L1NotCoprimeToD1(gl));
            }
            let d2 = l1 * k1 * k2;
            let derived = DerivedData {
                d1,
                d2,
                m1: l1 * k2,
                m2: l1 * k1,
                n_sheets: l1 * d1,
                n_comps: l1 + l2 + 1,
                nu: 0,
            };
            debug_assert_eq!(derived.d1.gcd(&derived.d2), 1);
            debug_assert!(derived.d1.min(derived.d2) > 1);
            Ok(derived)
        }
        Case::B => {
            if k1 + l2 <= 1 {
                return Err(RamError::Side1Collapsed);
            }
            if k2 + l1 <= 1 {
                return Err(RamError::Side2Collapsed);
            }
            if g != 1 {
                return Err(RamError::KNotCoprime(g));
            }
            let m1 = k2 * l2 + 1;
            let m2 = k1 * l1 + 1;
            let gm = m1.gcd(&m2);
            if gm != 1 {
                return Err(RamError::MNotCoprime(gm));
            }
            let derived = DerivedData {
                d1: k1 * m1,
                d2: k2 * m2,
                m1,
                m2,
                n_sheets: m1 * m2,
                n_comps: l1 + l2 + 1,
                nu: 1,
            };
            debug_assert_eq!(derived.d1.gcd(&derived.d2), 1);
            debug_assert!(derived.d1.min(derived.d2) > 1);
            Ok(derived)
        }
    }
}

/// The combinatorial model of the exceptional configuration: a chain of
/// `n` components over the origin, with the strict transforms of the
/// two branch-curve preimages attached on either side.
///
/// Each side lists `(d, m)` pairs: the local covering degree `d^(j)`
/// and multiplicity `m^(j)` of a component mapping onto that side.
/// The struct is plain data so tests can perturb it; use
/// [`check_balance`] to validate one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncModel {
    pub ell1: u64,
    pub ell2: u64,
    pub side1: Vec<(u64, u64)>,
    pub side2: Vec<(u64, u64)>,
    pub m0: u64,
}

/// Build the combinatorial model attached to a valid parameter tuple.
pub fn snc_model(p: &Params) -> Result<SncModel, RamError> {
    let d = validate(p)?;
    let Params { family, k1, k2, l1, l2, .. } = *p;
    match family {
        Case::A => {
            // side 1: l1 sheets of degree 1 over the d1-axis;
            // side 2: the two ramification branches plus l2 trivial sheets.
            let side1 = vec![(1, d.d1); l1 as usize];
            let mut side2 = vec![(k1, d.m1), (k2, d.m2)];
            side2.extend(std::iter::repeat((1, d.d2)).take(l2 as usize));
            Ok(SncModel { ell1: l1, ell2: l2 + 2, side1, side2, m0: d.n_comps })
        }
        Case::B => {
            let mut side1 = vec![(k1, d.m1)];
            side1.extend(std::iter::repeat((1, d.d1)).take(l1 as usize));
            let mut side2 = vec![(k2, d.m2)];
            side2.extend(std::iter::repeat((1, d.d2)).take(l2 as usize));
            Ok(SncModel { ell1: l1 + 1, ell2: l2 + 1, side1, side2, m0: d.n_comps })
        }
    }
}

/// Result of checking the four balance equations of a combinatorial
/// model against derived invariants:
///
/// 1. the multiplicities on each side sum to `N`, and `m0 = n`;
/// 2. `ell1 + ell2 = n + 1`;
/// 3. on side `i`, every component satisfies `m^(j) * d^(j) = d_i`;
/// 4. `N * prod_j d^(j) = d1 * d2` (product over all components).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceReport {
    pub eq1_multiplicity_sums: bool,
    pub eq2_chain_count: bool,
    pub eq3_degree_products: bool,
    pub eq4_total_degree: bool,
}

impl BalanceReport {
    pub fn pass(&self) -> bool {
        self.eq1_multiplicity_sums
            && self.eq2_chain_count
            && self.eq3_degree_products
            && self.eq4_total_degree
    }
}

pub fn check_balance(model: &SncModel, d: &DerivedData) -> BalanceReport {
    let sum1: u64 = model.side1.iter().map(|&(_, m)| m).sum();
    let sum2: u64 = model.side2.iter().map(|&(_, m)| m).sum();
    let eq1 = sum1 == d.n_sheets && sum2 == d.n_sheets && model.m0 == d.n_comps;
    let eq2 = model.ell1 + model.ell2 == d.n_comps + 1;
    let eq3 = model.side1.iter().all(|&(dd, m)| dd * m == d.d1)
        && model.side2.iter().all(|&(dd, m)| dd * m == d.d2);
    let prod: u64 = model
        .side1
        .iter()
        .chain(model.side2.iter())
        .map(|&(dd, _)| dd)
        .product();
    let eq4 = d.n_sheets * prod == d.d1 * d.d2;
    BalanceReport {
        eq1_multiplicity_sums: eq1,
        eq2_chain_count: eq2,
        eq3_degree_products: eq3,
        eq4_total_degree: eq4,
    }
}

/// Ramification profile of the induced degree-`N` one-variable map:
/// cycle type `alpha` over one critical value, `beta` over the other,
/// and a single length-`n` cycle over the middle one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZannierProfile {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub n: u64,
    #[serde(rename = "N")]
    pub n_sheets: u64,
}

/// Profile of a valid parameter tuple: on side 1 the multiplicities are
/// `m1` and `d1` (repeated `l1` times in family `A`, etc.), mirroring
/// the combinatorial model's side data.
pub fn zannier_profile(p: &Params) -> Result<ZannierProfile, RamError> {
    let model = snc_model(p)?;
    let d = validate(p)?;
    let mut alpha: Vec<u64> = model.side1.iter().map(|&(_, m)| m).collect();
    let mut beta: Vec<u64> = model.side2.iter().map(|&(_, m)| m).collect();
    alpha.sort_unstable_by(|a, b| b.cmp(a));
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let profile = ZannierProfile { alpha, beta, n: d.n_comps, n_sheets: d.n_sheets };
    debug_assert_eq!(
        profile.alpha.len() as u64 + profile.beta.len() as u64,
        profile.n + 1
    );
    Ok(profile)
}

/// Reduce a valid tuple to the canonical representative of its germ.
pub fn canonicalize(p: &Params) -> Result<Params, RamError> {
    validate(p)?;
    let mut q = *p;
    match q.family {
        Case::A => {
            if q.k1 > q.k2 {
                std::mem::swap(&mut q.k1, &mut q.k2);
            }
            if q.k1 == 1 {
                // A(1,k2,l1,l2) describes the same germ as
                // B(1,k2,l1-1,l2+1); push it into family B and fall
                // through to the family-B normalisation.
                q = Params::b(1, q.k2, q.l1 - 1, q.l2 + 1);
            } else {
                debug_assert!(validate(&q).is_ok());
                return Ok(q);
            }
        }
        Case::B => {}
    }
    // family B: subscript swap sends (k1,k2,l1,l2) to (k2,k1,l2,l1)
    if q.k1 > q.k2 || (q.k1 == q.k2 && q.l1 > q.l2) {
        q = Params::b(q.k2, q.k1, q.l2, q.l1);
    }
    debug_assert!(validate(&q).is_ok());
    Ok(q)
}

/// Rows of the closed-form catalogue to which a germ can belong.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CatalogueRow {
    /// Family `A` with `l2 = 0`: truncated-binomial (jet) construction.
    JetTruncation,
    /// Family `B` with `l2 = 0` (or symmetrically `l1 = 0`):
    /// antidifferentiation construction.
    Antiderivative,
    /// The sporadic degree-15 germ `B(1,1,2,4)`.
    Sporadic15,
}

/// Where (if anywhere) the germ sits in the catalogue of parameter
/// shapes whose one-variable data is unique up to equivalence.
pub fn catalogue_membership(p: &Params) -> Result<Option<CatalogueRow>, RamError> {
    let c = canonicalize(p)?;
    if c == Params::b(1, 1, 2, 4) {
        return Ok(Some(CatalogueRow::Sporadic15));
    }
    match c.family {
        Case::A if c.l2 == 0 => Ok(Some(CatalogueRow::JetTruncation)),
        Case::B if c.l2 == 0 || c.l1 == 0 => Ok(Some(CatalogueRow::Antiderivative)),
        _ => Ok(None),
    }
}

/// Recover the canonical parameter tuple from the invariants
/// `(d1, d2, N, n)`, trying both orders of `(d1, d2)` and both
/// families.  Distinct germs never share invariants (checked: the
/// ambiguous case is reported as an error rather than silently
/// resolved).
pub fn params_from_invariants(d1: u64, d2: u64, n_sheets: u64, n_comps: u64) -> Result<Params, RamError> {
    let mut hits: Vec<Params> = Vec::new();
    for (e1, e2) in [(d1, d2), (d2, d1)] {
        for cand in invert_family_a(e1, e2, n_sheets, n_comps)
            .into_iter()
            .chain(invert_family_b(e1, e2, n_sheets, n_comps))
        {
            if let Ok(d) = validate(&cand) {
                if d.n_sheets == n_sheets
                    && d.n_comps == n_comps
                    && ((d.d1, d.d2) == (e1, e2))
                {
                    let c = canonicalize(&cand)?;
                    if !hits.contains(&c) {
                        hits.push(c);
                    }
                }
            }
        }
    }
    match hits.len() {
        0 => Err(RamError::NoFamilyMatches(d1, d2, n_sheets, n_comps)),
        1 => Ok(hits[0]),
        _ => Err(RamError::AmbiguousInvariants(d1, d2, n_sheets, n_comps)),
    }
}

/// Solve the family-`A` relations for candidate tuples: `l1 = N/d1`,
/// `l2 = n - 1 - l1`, then `k1 k2 = d2/l1` and `k1 + k2 = d1 - l2*k1k2`
/// reduce to an integer quadratic.
fn invert_family_a(d1: u64, d2: u64, n_sheets: u64, n_comps: u64) -> Vec<Params> {
    let mut out = Vec::new();
    if d1 == 0 || n_sheets % d1 != 0 {
        return out;
    }
    let l1 = n_sheets / d1;
    if l1 == 0 || n_comps < l1 + 1 || d2 % l1 != 0 {
        return out;
    }
    let l2 = n_comps - 1 - l1;
    let kk = d2 / l1; // k1*k2
    let s = d1 as i64 - (l2 * kk) as i64; // k1 + k2
    if s < 2 {
        return out;
    }
    // k1, k2 are roots of z^2 - s z + kk = 0
    let s = s as u64;
    let disc = (s * s) as i64 - 4 * kk as i64;
    if disc < 0 {
        return out;
    }
    let root = (disc as f64).sqrt() as u64;
    for r in root.saturating_sub(2)..=root + 2 {
        if (r * r) as i64 == disc && (s + r) % 2 == 0 {
            let k2 = (s + r) / 2;
            let k1 = (s - r) / 2;
            if k1 >= 1 {
                out.push(Params::a(k1, k2, l1, l2));
            }
            break;
        }
    }
    out
}

/// Solve the family-`B` relations: each factorisation `N = m1*m2` gives
/// `k_i = d_i/m_i` and `l_i` from `m_{3-i} = k_i*l_i + 1`.
fn invert_family_b(d1: u64, d2: u64, n_sheets: u64, n_comps: u64) -> Vec<Params> {
    let mut out = Vec::new();
    for m1 in 1..=n_sheets {
        if n_sheets % m1 != 0 {
            continue;
        }
        let m2 = n_sheets / m1;
        if d1 % m1 != 0 || d2 % m2 != 0 {
            continue;
        }
        let (k1, k2) = (d1 / m1, d2 / m2);
        if k1 == 0 || k2 == 0 || (m2 - 1) % k1 != 0 || (m1 - 1) % k2 != 0 {
            continue;
        }
        let (l1, l2) = ((m2 - 1) / k1, (m1 - 1) / k2);
        if l1 + l2 + 1 == n_comps {
            out.push(Params::b(k1, k2, l1, l2));
        }
    }
    out
}

/// All canonical valid tuples with covering degree at most `max_n`,
/// sorted by `(N, n, family, k1, k2, l1, l2)`.
///
/// The scan box is `k1, k2, l1, l2 <= max_n`.  For family `A` and for
/// family `B` with `l1*l2 > 0` this loses nothing (each parameter is
/// bounded by `N` there), but family `B` admits tuples with `l1 = 0` or
/// `l2 = 0` whose free exponent exceeds the covering degree — e.g.
/// `B(2,k2,1,0)` has `N = 3` for every odd `k2` — so callers should
/// treat the result as "all germs with small degree *and* small
/// exponents".
pub fn enumerate(max_n: u64) -> Vec<Params> {
    let mut out: Vec<(DerivedData, Params)> = Vec::new();
    // family A canonical: 2 <= k1 < k2 (k1 = k2 impossible: coprime and >= 2)
    for k1 in 2..=max_n {
        if k1 + k1 > max_n {
            break; // d1 >= k1+k2 > max_n
        }
        for k2 in (k1 + 1)..=max_n {
            if k1 + k2 > max_n || k1.gcd(&k2) != 1 {
                continue;
            }
            for l2 in 0.. {
                let d1 = k1 + k2 + l2 * k1 * k2;
                if d1 > max_n {
                    break;
                }
                for l1 in 1..=max_n / d1 {
                    let p = Params::a(k1, k2, l1, l2);
                    if let Ok(d) = validate(&p) {
                        if d.n_sheets <= max_n {
                            debug_assert_eq!(canonicalize(&p).unwrap(), p);
                            out.push((d, p));
                        }
                    }
                }
            }
        }
    }
    // family B canonical: k1 <= k2, and l1 <= l2 when k1 = k2 = 1
    for k1 in 1..=max_n {
        for k2 in k1..=max_n {
            if k1.gcd(&k2) != 1 {
                continue;
            }
            for l1 in 0..=max_n {
                let m2 = k1 * l1 + 1;
                if m2 > max_n {
                    break;
                }
                for l2 in 0..=max_n {
                    let m1 = k2 * l2 + 1;
                    if m1 * m2 > max_n {
                        break;
                    }
                    if k1 == k2 && l1 > l2 {
                        continue;
                    }
                    let p = Params::b(k1, k2, l1, l2);
                    if let Ok(d) = validate(&p) {
                        if d.n_sheets <= max_n {
                            debug_assert_eq!(canonicalize(&p).unwrap(), p);
                            out.push((d, p));
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|(d, p)| (d.n_sheets, d.n_comps, *p));
    out.into_iter().map(|(_, p)| p).collect()
}
