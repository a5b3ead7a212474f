//! Permutation triples with identity product ("constellations").
//!
//! A degree-`N` rational map of the sphere with three critical values is
//! encoded, up to equivalence, by a transitive triple of permutations
//! `(σ_α, σ_mid, σ_β)` of `N` points whose product is the identity; the
//! cycle types over the three critical values are the ramification
//! profiles.  This module realizes profiles `(α, (n,1,…,1), β)` by
//! explicit search and counts the solutions up to simultaneous
//! conjugation, which is the combinatorial meaning of "such a covering
//! exists / is unique".
//!
//! The search fixes `σ_β` as the block permutation of type `β`,
//! enumerates the middle `n`-cycle, derives `σ_α` from the product
//! condition, filters by cycle type and transitivity (genus 0 is then
//! automatic from the profile), and dedupes with a label-invariant
//! canonical form: the minimal breadth-first relabeling of the pair
//! `(σ_mid, σ_β)` over all choices of start point.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ramdata::ZannierProfile;

/// Errors from permutation construction and profile validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstellationError {
    /// The image list does not describe a bijection of `{0,…,n−1}`.
    #[error("image list of length {n} is not a bijection of 0..{n}")]
    NotABijection { n: usize },
    /// A cycle length or profile part is zero.
    #[error("cycle lengths must be positive")]
    ZeroPart,
    /// The three permutations act on different point counts.
    #[error("permutations act on {left} and {right} points; degrees must agree")]
    DegreeMismatch { left: usize, right: usize },
    /// The defining relation fails.
    #[error("sigma_alpha ∘ sigma_mid ∘ sigma_beta is not the identity")]
    ProductNotIdentity,
    /// The generated group has more than one orbit (or the degree is 0).
    #[error("the triple does not act transitively")]
    NotTransitive,
    /// A profile side has no parts at all.
    #[error("profile sides must be non-empty")]
    EmptySide,
    /// A profile side does not sum to the sheet count.
    #[error("profile side {side} sums to {sum}, expected the sheet count {expected}")]
    SideSumMismatch {
        side: &'static str,
        sum: u64,
        expected: u64,
    },
    /// The middle ramification order contradicts the side part counts.
    #[error("middle order {n} must equal |alpha| + |beta| - 1 = {expected}")]
    MiddleOrderMismatch { n: u64, expected: u64 },
    /// The middle ramification order cannot exceed the degree.
    #[error("middle order {n} exceeds the sheet count {sheets}")]
    MiddleOrderTooLarge { n: u64, sheets: u64 },
    /// All parts share a factor, so no primitive covering can exist.
    #[error("profile parts share the common factor {gcd}; parts must be coprime overall")]
    PartsNotCoprime { gcd: u64 },
}

/// Bijection of `{0,…,N−1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `n` points.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from an image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, ConstellationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(ConstellationError::NotABijection { n });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles on `n` points; omitted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, ConstellationError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= n || seen[p] {
                    return Err(ConstellationError::NotABijection { n });
                }
                seen[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image list.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a single point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Whether every point is fixed.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Functional composition: `(self ∘ other)(x) = self(other(x))`.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composition needs equal degrees"
        );
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles, each starting at its least point, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut count = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    /// Multiset of cycle lengths.
    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().into_iter().map(|c| c.len() as u64))
            .expect("cycle lengths are positive")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(D::Error::custom)
    }
}

/// Multiset of cycle lengths, stored in descending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    /// Builds from any iterable of positive lengths; sorts descending.
    pub fn new(parts: impl IntoIterator<Item = u64>) -> Result<Self, ConstellationError> {
        let mut parts: Vec<u64> = parts.into_iter().collect();
        if parts.iter().any(|&p| p == 0) {
            return Err(ConstellationError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Lengths, descending.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the lengths.
    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Transitive permutation triple with `σ_α ∘ σ_mid ∘ σ_β = id`.
///
/// Serialized as an array of the three image arrays, in field order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    pub sigma_alpha: Permutation,
    pub sigma_mid: Permutation,
    pub sigma_beta: Permutation,
}

impl Constellation {
    /// Builds and checks the invariants: equal positive degrees, identity
    /// product, transitivity.
    pub fn new(
        sigma_alpha: Permutation,
        sigma_mid: Permutation,
        sigma_beta: Permutation,
    ) -> Result<Self, ConstellationError> {
        let n = sigma_alpha.degree();
        for other in [&sigma_mid, &sigma_beta] {
            if other.degree() != n {
                return Err(ConstellationError::DegreeMismatch {
                    left: n,
                    right: other.degree(),
                });
            }
        }
        for x in 0..n {
            if sigma_alpha.apply(sigma_mid.apply(sigma_beta.apply(x))) != x {
                return Err(ConstellationError::ProductNotIdentity);
            }
        }
        if !connected(sigma_mid.images(), sigma_beta.images()) {
            return Err(ConstellationError::NotTransitive);
        }
        Ok(Constellation {
            sigma_alpha,
            sigma_mid,
            sigma_beta,
        })
    }

    /// Number of sheets.
    pub fn degree(&self) -> usize {
        self.sigma_alpha.degree()
    }

    /// Genus of the covering surface, from the cycle counts:
    /// `2 − 2g = cyc(σ_α) + cyc(σ_mid) + cyc(σ_β) − N`.
    pub fn genus(&self) -> i64 {
        let n = self.degree() as i64;
        let cycles = (self.sigma_alpha.cycle_count()
            + self.sigma_mid.cycle_count()
            + self.sigma_beta.cycle_count()) as i64;
        let euler = cycles - n;
        assert!(
            (2 - euler) % 2 == 0,
            "an identity product forces the cycle counts to have the degree's parity"
        );
        (2 - euler) / 2
    }
}

impl Serialize for Constellation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (
            self.sigma_alpha.images(),
            self.sigma_mid.images(),
            self.sigma_beta.images(),
        )
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Constellation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, m, b) =
            <(Vec<usize>, Vec<usize>, Vec<usize>)>::deserialize(deserializer)?;
        let a = Permutation::from_images(a).map_err(D::Error::custom)?;
        let m = Permutation::from_images(m).map_err(D::Error::custom)?;
        let b = Permutation::from_images(b).map_err(D::Error::custom)?;
        Constellation::new(a, m, b).map_err(D::Error::custom)
    }
}

/// Knobs for [`search_with`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Enumerate every middle cycle when the candidate count is at most
    /// this; otherwise fall back to seeded sampling.
    pub exhaustive_budget: u64,
    /// Sample count in the randomized fallback.
    pub random_tries: u64,
    /// Seed for the randomized fallback.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive_budget: 20_000_000,
            random_tries: 300_000,
            seed: 0,
        }
    }
}

/// Result of a class search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// One representative per simultaneous-conjugacy class, in a
    /// deterministic (canonical-key) order.
    pub classes: Vec<Constellation>,
    /// When false the list is only a lower bound from seeded sampling.
    pub exhaustive: bool,
}

/// Searches for all constellations with profile `(α, (n,1,…,1), β)` up to
/// simultaneous conjugation, with default options.
pub fn search(profile: &ZannierProfile) -> Result<SearchOutcome, ConstellationError> {
    search_with(profile, &SearchOptions::default())
}

/// [`search`] with explicit budget/sampling options.
pub fn search_with(
    profile: &ZannierProfile,
    opts: &SearchOptions,
) -> Result<SearchOutcome, ConstellationError> {
    let (alpha, beta, sheets, n) = validated_profile(profile)?;
    let beta_images = block_permutation(&beta, sheets);
    let mut state = SearchState::new(alpha, beta_images);
    let total = candidate_count(sheets, n);
    let exhaustive = total <= u128::from(opts.exhaustive_budget);
    if exhaustive {
        run_exhaustive(&mut state, sheets, n);
    } else {
        run_randomized(&mut state, sheets, n, opts);
    }
    Ok(SearchOutcome {
        classes: state.classes.into_values().collect(),
        exhaustive,
    })
}

/// Number of conjugacy classes for the profile (a lower bound when the
/// search could not be exhaustive; see [`search`]).
pub fn count_classes(profile: &ZannierProfile) -> Result<usize, ConstellationError> {
    Ok(search(profile)?.classes.len())
}

/// Whether at least one genus-0 transitive triple realizes the profile.
pub fn verify_zannier(profile: &ZannierProfile) -> Result<bool, ConstellationError> {
    Ok(!search(profile)?.classes.is_empty())
}

/// Checks the profile clause by clause and returns
/// `(α sorted descending, β sorted descending, N, n)` as plain sizes.
fn validated_profile(
    profile: &ZannierProfile,
) -> Result<(Vec<u64>, Vec<u64>, usize, usize), ConstellationError> {
    if profile.alpha.is_empty() || profile.beta.is_empty() {
        return Err(ConstellationError::EmptySide);
    }
    if profile.alpha.iter().chain(&profile.beta).any(|&p| p == 0) {
        return Err(ConstellationError::ZeroPart);
    }
    for (side, parts) in [("alpha", &profile.alpha), ("beta", &profile.beta)] {
        let sum: u64 = parts.iter().sum();
        if sum != profile.n_sheets {
            return Err(ConstellationError::SideSumMismatch {
                side,
                sum,
                expected: profile.n_sheets,
            });
        }
    }
    let expected = (profile.alpha.len() + profile.beta.len()) as u64 - 1;
    if profile.n != expected {
        return Err(ConstellationError::MiddleOrderMismatch {
            n: profile.n,
            expected,
        });
    }
    if profile.n > profile.n_sheets {
        return Err(ConstellationError::MiddleOrderTooLarge {
            n: profile.n,
            sheets: profile.n_sheets,
        });
    }
    let gcd = profile
        .alpha
        .iter()
        .chain(&profile.beta)
        .fold(0u64, |acc, &p| acc.gcd(&p));
    if gcd != 1 {
        return Err(ConstellationError::PartsNotCoprime { gcd });
    }
    let mut alpha = profile.alpha.clone();
    let mut beta = profile.beta.clone();
    alpha.sort_unstable_by(|a, b| b.cmp(a));
    beta.sort_unstable_by(|a, b| b.cmp(a));
    Ok((alpha, beta, profile.n_sheets as usize, profile.n as usize))
}

/// Orbit of 0 under forward steps of two permutations covers everything.
/// (Forward closure suffices: iterating a permutation walks its whole
/// cycle, so inverses are reachable.)
fn connected(mid: &[usize], beta: &[usize]) -> bool {
    let n = mid.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for q in [mid[p], beta[p]] {
            if !seen[q] {
                seen[q] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count == n
}

/// Block permutation of a given type: one cycle per part, on consecutive
/// points in the order the parts are listed.
fn block_permutation(parts: &[u64], n: usize) -> Vec<usize> {
    let mut images: Vec<usize> = (0..n).collect();
    let mut start = 0usize;
    for &p in parts {
        let p = p as usize;
        for i in 0..p {
            images[start + i] = start + (i + 1) % p;
        }
        start += p;
    }
    images
}

/// Number of middle-cycle candidates: `C(N,n) · (n−1)!`, saturating.
fn candidate_count(sheets: usize, n: usize) -> u128 {
    if sheets > 64 {
        return u128::MAX;
    }
    let mut total = num_integer::binomial(sheets as u128, n as u128);
    for i in 2..n {
        total = total.saturating_mul(i as u128);
    }
    total
}

/// Label-invariant key for a transitive pair: the lexicographically least
/// breadth-first relabeling of `(mid, beta)` over all start points.
fn canonical_key(mid: &[usize], beta: &[usize]) -> Vec<usize> {
    let n = mid.len();
    let mut best: Option<Vec<usize>> = None;
    let mut label = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for root in 0..n {
        label.fill(usize::MAX);
        order.clear();
        label[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for q in [mid[p], beta[p]] {
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
        }
        let mut key = Vec::with_capacity(2 * n);
        for &old in &order {
            key.push(label[mid[old]]);
        }
        for &old in &order {
            key.push(label[beta[old]]);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("degree 0 never reaches the key computation")
}

/// Reusable buffers plus the accumulated classes, keyed canonically.
struct SearchState {
    alpha_target: Vec<u64>,
    beta: Vec<usize>,
    mid: Vec<usize>,
    prod: Vec<usize>,
    seen: Vec<bool>,
    lens: Vec<u64>,
    classes: BTreeMap<Vec<usize>, Constellation>,
}

impl SearchState {
    fn new(alpha_target: Vec<u64>, beta: Vec<usize>) -> Self {
        let n = beta.len();
        SearchState {
            alpha_target,
            beta,
            mid: (0..n).collect(),
            prod: vec![0; n],
            seen: vec![false; n],
            lens: Vec::new(),
            classes: BTreeMap::new(),
        }
    }

    /// Tries one middle cycle (given as the list of points it permutes,
    /// in cyclic order) and records its class if the triple is valid.
    fn try_cycle(&mut self, cycle: &[usize]) {
        for (i, &p) in cycle.iter().enumerate() {
            self.mid[p] = cycle[(i + 1) % cycle.len()];
        }
        if self.product_has_target_type() && connected(&self.mid, &self.beta) {
            let key = canonical_key(&self.mid, &self.beta);
            if !self.classes.contains_key(&key) {
                let mid = Permutation {
                    images: self.mid.clone(),
                };
                let beta = Permutation {
                    images: self.beta.clone(),
                };
                let alpha = mid.compose(&beta).inverse();
                let found = Constellation::new(alpha, mid, beta)
                    .expect("searched triples satisfy the invariants");
                debug_assert_eq!(found.genus(), 0);
                self.classes.insert(key, found);
            }
        }
        for &p in cycle {
            self.mid[p] = p;
        }
    }

    /// Whether `mid ∘ beta` has cycle type `α` (its inverse `σ_α` then
    /// has it too).
    fn product_has_target_type(&mut self) -> bool {
        let n = self.beta.len();
        for x in 0..n {
            self.prod[x] = self.mid[self.beta[x]];
        }
        self.seen.fill(false);
        self.lens.clear();
        for start in 0..n {
            if self.seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !self.seen[x] {
                self.seen[x] = true;
                x = self.prod[x];
                len += 1;
            }
            self.lens.push(len);
            if self.lens.len() > self.alpha_target.len() {
                return false;
            }
        }
        self.lens.sort_unstable_by(|a, b| b.cmp(a));
        self.lens == self.alpha_target
    }
}

/// Every `n`-subset of the points, every cyclic order on it.
fn run_exhaustive(state: &mut SearchState, sheets: usize, n: usize) {
    let mut comb: Vec<usize> = (0..n).collect();
    let mut cycle = vec![0usize; n];
    loop {
        cycle.copy_from_slice(&comb);
        state.try_cycle(&cycle);
        // Heap's algorithm over cycle[1..]; cycle[0] stays put, which
        // picks one representative per cyclic order.
        let m = n - 1;
        if m > 1 {
            let mut c = vec![0usize; m];
            let mut i = 0usize;
            while i < m {
                if c[i] < i {
                    if i % 2 == 0 {
                        cycle[1..].swap(0, i);
                    } else {
                        cycle[1..].swap(c[i], i);
                    }
                    state.try_cycle(&cycle);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        }
        // next combination in lexicographic order
        let mut i = n;
        while i > 0 && comb[i - 1] == sheets - n + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        comb[i - 1] += 1;
        for j in i..n {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// Seeded sampling of middle cycles; yields a lower bound on the classes.
fn run_randomized(state: &mut SearchState, sheets: usize, n: usize, opts: &SearchOptions) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pool: Vec<usize> = (0..sheets).collect();
    let mut cycle = vec![0usize; n];
    for _ in 0..opts.random_tries {
        for i in 0..n {
            let j = rng.gen_range(i..sheets);
            pool.swap(i, j);
        }
        cycle.copy_from_slice(&pool[..n]);
        state.try_cycle(&cycle);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramdata::{self, Params};
    use std::collections::BTreeSet;

    fn profile(alpha: &[u64], beta: &[u64], n: u64) -> ZannierProfile {
        ZannierProfile {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
            n,
            n_sheets: alpha.iter().sum(),
        }
    }

    #[test]
    fn cycle_types_of_small_permutations() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        let three_cycle = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(three_cycle.cycle_type().parts(), &[3]);
        let transposition = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(transposition.cycle_type().parts(), &[2, 1]);
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let s = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // (s∘t)(0)=s(0)=1, (s∘t)(1)=s(2)=2, (s∘t)(2)=s(1)=0
        assert_eq!(s.compose(&t).images(), &[1, 2, 0]);
        assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn bad_image_lists_are_rejected() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![1, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn genus_of_explicit_triples() {
        // N=3: β a 3-cycle, middle a transposition, α of type (2,1)
        let beta = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let mid = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let alpha = mid.compose(&beta).inverse();
        assert_eq!(alpha.cycle_type().parts(), &[2, 1]);
        let c = Constellation::new(alpha, mid, beta).unwrap();
        assert_eq!(c.genus(), 0);

        // all three identity on a single point
        let one = Constellation::new(
            Permutation::identity(1),
            Permutation::identity(1),
            Permutation::identity(1),
        )
        .unwrap();
        assert_eq!(one.genus(), 0);

        // identity middle forces α = β⁻¹
        let beta = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let c = Constellation::new(beta.inverse(), Permutation::identity(3), beta).unwrap();
        assert_eq!(c.genus(), 0);
    }

    #[test]
    fn invalid_triples_are_rejected() {
        let beta = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(
            Constellation::new(beta.clone(), Permutation::identity(3), beta.clone()),
            Err(ConstellationError::ProductNotIdentity)
        );
        assert_eq!(
            Constellation::new(
                Permutation::identity(2),
                Permutation::identity(2),
                Permutation::identity(2)
            ),
            Err(ConstellationError::NotTransitive)
        );
        assert_eq!(
            Constellation::new(
                Permutation::identity(2),
                Permutation::identity(3),
                Permutation::identity(3)
            ),
            Err(ConstellationError::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn profile_preconditions_are_reported_per_clause() {
        assert_eq!(
            search(&profile(&[1, 1], &[1, 1], 1)).unwrap_err(),
            ConstellationError::MiddleOrderMismatch { n: 1, expected: 3 }
        );
        assert_eq!(
            search(&profile(&[4], &[2, 2], 2)).unwrap_err(),
            ConstellationError::PartsNotCoprime { gcd: 2 }
        );
        assert_eq!(
            search(&profile(&[1, 1], &[1, 1], 3)).unwrap_err(),
            ConstellationError::MiddleOrderTooLarge { n: 3, sheets: 2 }
        );
        let mut p = profile(&[2, 1], &[3], 2);
        p.beta = vec![2];
        assert_eq!(
            search(&p).unwrap_err(),
            ConstellationError::SideSumMismatch {
                side: "beta",
                sum: 2,
                expected: 3
            }
        );
    }

    #[test]
    fn small_profiles_have_one_class() {
        let out = search(&profile(&[2, 1], &[3], 2)).unwrap();
        assert!(out.exhaustive);
        assert_eq!(out.classes.len(), 1);

        let out = search(&profile(&[5], &[3, 2], 2)).unwrap();
        assert!(out.exhaustive);
        assert_eq!(out.classes.len(), 1);
    }

    #[test]
    fn identity_middle_is_only_trivially_coprime() {
        // n=1 forces σ_mid = id and σ_α = σ_β⁻¹, and transitivity then
        // needs a full cycle on each side — but α=β=(N) has part gcd N,
        // so only the one-sheet profile survives the preconditions.
        let out = search(&profile(&[1], &[1], 1)).unwrap();
        assert_eq!(out.classes.len(), 1);
        assert!(out.classes[0].sigma_mid.is_identity());
        assert_eq!(
            search(&profile(&[2], &[2], 1)).unwrap_err(),
            ConstellationError::PartsNotCoprime { gcd: 2 }
        );
    }

    #[test]
    fn returned_classes_satisfy_all_invariants() {
        let out = search(&profile(&[3, 1], &[2, 2], 3)).unwrap();
        for c in &out.classes {
            assert_eq!(c.genus(), 0);
            assert_eq!(c.sigma_alpha.cycle_type().parts(), &[3, 1]);
            assert_eq!(c.sigma_beta.cycle_type().parts(), &[2, 2]);
            assert_eq!(c.sigma_mid.cycle_type().parts(), &[3, 1]);
        }
        assert!(!out.classes.is_empty());
    }

    #[test]
    fn every_two_part_profile_up_to_seven_sheets_is_unique() {
        for sheets in 2..=7u64 {
            for b1 in 1..sheets {
                let b2 = sheets - b1;
                if b1 < b2 {
                    continue;
                }
                for (alpha, beta) in [
                    (vec![sheets], vec![b1, b2]),
                    (vec![b1, b2], vec![sheets]),
                ] {
                    let p = profile(&alpha, &beta, 2);
                    match search(&p) {
                        Ok(out) => {
                            assert!(out.exhaustive);
                            assert_eq!(out.classes.len(), 1, "profile {p:?}");
                        }
                        Err(ConstellationError::PartsNotCoprime { .. }) => {}
                        Err(other) => panic!("unexpected rejection {other} of {p:?}"),
                    }
                }
            }
        }
    }

    /// Independent oracle: enumerate *all* pairs of the right types over
    /// the full symmetric group and partition the valid triples into
    /// conjugation orbits by breadth-first search over transpositions.
    fn oracle_count(alpha: &[u64], beta: &[u64], n: u64) -> usize {
        let sheets = alpha.iter().sum::<u64>() as usize;
        let mut all = Vec::new();
        let mut items: Vec<usize> = (0..sheets).collect();
        permutations(&mut items, 0, &mut all);
        let alpha_t = CycleType::new(alpha.iter().copied()).unwrap();
        let beta_t = CycleType::new(beta.iter().copied()).unwrap();
        let mut mid_parts = vec![n];
        mid_parts.resize(sheets - n as usize + 1, 1);
        let mid_t = CycleType::new(mid_parts).unwrap();

        let mut valid: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        for m in all.iter().filter(|p| type_of(p) == mid_t) {
            for b in all.iter().filter(|p| type_of(p) == beta_t) {
                let prod: Vec<usize> = (0..sheets).map(|x| m[b[x]]).collect();
                if type_of(&prod) == alpha_t && connected(m, b) {
                    valid.insert((m.clone(), b.clone()));
                }
            }
        }
        let mut orbits = 0;
        while let Some(start) = valid.iter().next().cloned() {
            orbits += 1;
            let mut queue = vec![start.clone()];
            valid.remove(&start);
            while let Some((m, b)) = queue.pop() {
                for t in 0..sheets - 1 {
                    let next = (conjugate_by_adjacent(&m, t), conjugate_by_adjacent(&b, t));
                    if valid.remove(&next) {
                        queue.push(next);
                    }
                }
            }
        }
        orbits
    }

    fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(items, k + 1, out);
            items.swap(k, i);
        }
    }

    fn type_of(images: &[usize]) -> CycleType {
        Permutation::from_images(images.to_vec()).unwrap().cycle_type()
    }

    /// Conjugation by the transposition (t, t+1).
    fn conjugate_by_adjacent(images: &[usize], t: usize) -> Vec<usize> {
        let g = |x: usize| {
            if x == t {
                t + 1
            } else if x == t + 1 {
                t
            } else {
                x
            }
        };
        let mut out = vec![0; images.len()];
        for x in 0..images.len() {
            out[g(x)] = g(images[x]);
        }
        out
    }

    #[test]
    fn search_matches_the_symmetric_group_oracle() {
        let cases: &[(&[u64], &[u64], u64)] = &[
            (&[2, 1], &[3], 2),
            (&[3], &[2, 1], 2),
            (&[3, 1], &[2, 2], 3),
            (&[2, 2], &[3, 1], 3),
            (&[4], &[1, 1, 1, 1], 4),
            (&[5], &[3, 2], 2),
            (&[4, 1], &[3, 2], 3),
            (&[2, 2, 1], &[5], 3),
        ];
        for &(alpha, beta, n) in cases {
            let got = count_classes(&profile(alpha, beta, n)).unwrap();
            let want = oracle_count(alpha, beta, n);
            assert_eq!(got, want, "profile ({alpha:?}, {beta:?}, n={n})");
        }
    }

    #[test]
    fn canonical_key_ignores_labeling() {
        let out = search(&profile(&[3, 1], &[2, 2], 3)).unwrap();
        let c = &out.classes[0];
        let key = canonical_key(c.sigma_mid.images(), c.sigma_beta.images());
        // conjugate by a fixed 4-point shuffle g: images g∘σ∘g⁻¹
        let g = [2usize, 0, 3, 1];
        let conj = |p: &Permutation| {
            let mut out = vec![0; 4];
            for x in 0..4 {
                out[g[x]] = g[p.apply(x)];
            }
            out
        };
        assert_eq!(
            canonical_key(&conj(&c.sigma_mid), &conj(&c.sigma_beta)),
            key
        );
    }

    #[test]
    fn sampling_mode_reports_non_exhaustive() {
        let opts = SearchOptions {
            exhaustive_budget: 0,
            random_tries: 20_000,
            seed: 1,
        };
        let out = search_with(&profile(&[2, 1], &[3], 2), &opts).unwrap();
        assert!(!out.exhaustive);
        assert_eq!(out.classes.len(), 1);
    }

    #[test]
    fn enumerated_coverings_all_admit_a_constellation() {
        for params in ramdata::enumerate(7) {
            let p = ramdata::zannier_profile(&params).unwrap();
            assert_eq!(
                verify_zannier(&p),
                Ok(true),
                "no constellation for {params}"
            );
        }
        let p = ramdata::zannier_profile(&Params::b(2, 3, 1, 0)).unwrap();
        assert_eq!(count_classes(&p), Ok(1));
    }

    #[test]
    fn constellations_round_trip_through_json() {
        let out = search(&profile(&[2, 1], &[3], 2)).unwrap();
        let text = serde_json::to_string(&out.classes[0]).unwrap();
        let back: Constellation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out.classes[0]);
        assert!(serde_json::from_str::<Constellation>("[[0,1],[0,1],[0,1]]").is_err());
    }
}
