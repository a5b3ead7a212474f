//! Weighted exceptional chains of the minimal embedded resolution of
//! the plane curve `u^{d1} = v^{d2}`, computed torically.
//!
//! The curve is resolved by the fan refinement of the first quadrant
//! obtained by inserting the ray `e0 = (d2, d1)` and subdividing the
//! two resulting cones minimally (every adjacent ray pair spans a
//! unimodular cone).  Interior rays correspond to exceptional curves;
//! the self-intersection of the curve for ray `u_i` is `-c` where
//! `u_{i-1} + u_{i+1} = c * u_i`.  Removing the ray `e0` splits the
//! chain into the two arms recorded in [`ResolutionData`]; their
//! intersection-matrix determinants recover `d1` and `d2`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A primitive integer vector (coordinates coprime, not both zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimVec(pub i64, pub i64);

impl PrimVec {
    pub fn new(x: i64, y: i64) -> Result<Self, FanError> {
        if x == 0 && y == 0 {
            return Err(FanError::NotPrimitive(x, y));
        }
        if x.gcd(&y) != 1 {
            return Err(FanError::NotPrimitive(x, y));
        }
        Ok(PrimVec(x, y))
    }
}

fn det(v: PrimVec, w: PrimVec) -> i64 {
    v.0 * w.1 - v.1 * w.0
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("({0},{1}) is not a primitive vector")]
    NotPrimitive(i64, i64),
    #[error("cone spanned by ({0},{1}) and ({2},{3}) is not positively oriented")]
    DegenerateCone(i64, i64, i64, i64),
    #[error("d1 and d2 must be coprime and positive, got ({0},{1})")]
    BadExponents(u64, u64),
    #[error("edge index {0} out of range for a chain of length {1}")]
    EdgeOutOfRange(usize, usize),
}

/// Minimal unimodular subdivision of the cone spanned by `v` and `w`
/// (`det(v,w) > 0`): the interior rays of the boundary of the convex
/// hull of the nonzero lattice points of the cone, in order from `v`
/// to `w`.  Computed by a continued-fraction expansion after moving
/// `(v,w)` to `((1,0), (a,d))` with `0 <= a < d` by a unimodular map.
pub fn subdivide_cone(v: PrimVec, w: PrimVec) -> Result<Vec<PrimVec>, FanError> {
    let d = det(v, w);
    if d <= 0 {
        return Err(FanError::DegenerateCone(v.0, v.1, w.0, w.1));
    }
    if d == 1 {
        return Ok(Vec::new()); // already unimodular
    }
    // unimodular m with m(v) = (1,0): rows (r,s) and (-v1, v0)
    let egcd = v.0.extended_gcd(&v.1);
    debug_assert_eq!(egcd.gcd, 1);
    let (r, s) = (egcd.x, egcd.y);
    let mut m = [[r, s], [-v.1, v.0]];
    let apply = |m: &[[i64; 2]; 2], p: PrimVec| {
        PrimVec(m[0][0] * p.0 + m[0][1] * p.1, m[1][0] * p.0 + m[1][1] * p.1)
    };
    // shear to bring the first coordinate of m(w) into [0, d)
    let a0 = apply(&m, w).0;
    let a = a0.rem_euclid(d);
    let t = (a - a0) / d;
    m[0][0] += t * m[1][0];
    m[0][1] += t * m[1][1];
    debug_assert_eq!(apply(&m, v), PrimVec(1, 0));
    debug_assert_eq!(apply(&m, w), PrimVec(a, d));
    debug_assert!(a > 0, "w would not be primitive");
    // inverse of m (det 1)
    let minv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];

    // ceiling continued fraction of d/(d-a): all partial quotients >= 2
    let mut cs = Vec::new();
    let (mut num, mut den) = (d, d - a);
    while den > 0 {
        let c = Integer::div_ceil(&num, &den);
        cs.push(c);
        let next = c * den - num;
        num = den;
        den = next;
    }

    // hull rays: u0 = (1,0), u1 = (1,1), u_{i+1} = c_i*u_i - u_{i-1}
    let mut rays = Vec::with_capacity(cs.len());
    let mut prev = v;
    let mut cur = apply(&minv, PrimVec(1, 1));
    for &c in &cs {
        rays.push(cur);
        let next = PrimVec(c * cur.0 - prev.0, c * cur.1 - prev.1);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(prev, *rays.last().unwrap());
    debug_assert_eq!(cur, w, "continued-fraction walk must land on w");
    for (p, q) in std::iter::once(&v).chain(rays.iter()).zip(rays.iter().chain([&w])) {
        debug_assert_eq!(det(*p, *q), 1);
    }
    Ok(rays)
}

/// The two weighted arms of the resolution chain, split at the curve
/// carrying the strict transform ray `e0 = (d2, d1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    /// Weights of the arm between the `u`-axis ray and `e0`.
    #[serde(rename = "chain_E1")]
    pub chain_e1: Vec<i64>,
    /// Weight of the component for `e0` itself.
    #[serde(rename = "weight_E0")]
    pub weight_e0: i64,
    /// Weights of the arm between `e0` and the `v`-axis ray.
    #[serde(rename = "chain_E2")]
    pub chain_e2: Vec<i64>,
    /// All rays of the refined fan, endpoints included, in order.
    pub rays: Vec<PrimVec>,
}

impl ResolutionData {
    /// Weights of the full chain `chain_e1 ++ [weight_e0] ++ chain_e2`.
    pub fn full_chain(&self) -> Vec<i64> {
        let mut w = self.chain_e1.clone();
        w.push(self.weight_e0);
        w.extend(&self.chain_e2);
        w
    }
}

/// Resolve `u^{d1} = v^{d2}` for coprime positive exponents.
pub fn resolution_chains(d1: u64, d2: u64) -> Result<ResolutionData, FanError> {
    if d1 == 0 || d2 == 0 || d1.gcd(&d2) != 1 {
        return Err(FanError::BadExponents(d1, d2));
    }
    let e1 = PrimVec(1, 0);
    let e2 = PrimVec(0, 1);
    let e0 = PrimVec(d2 as i64, d1 as i64);
    let mut rays = vec![e1];
    let arm1 = subdivide_cone(e1, e0)?;
    let split = arm1.len();
    rays.extend(&arm1);
    rays.push(e0);
    rays.extend(subdivide_cone(e0, e2)?);
    rays.push(e2);

    // weight of each interior ray: u_{i-1} + u_{i+1} = c * u_i
    let mut weights = Vec::with_capacity(rays.len() - 2);
    for i in 1..rays.len() - 1 {
        let (p, u, q) = (rays[i - 1], rays[i], rays[i + 1]);
        let sum = PrimVec(p.0 + q.0, p.1 + q.1);
        let c = if u.0 != 0 { sum.0 / u.0 } else { sum.1 / u.1 };
        assert_eq!((c * u.0, c * u.1), (sum.0, sum.1), "non-integral weight");
        weights.push(-c);
    }
    let data = ResolutionData {
        chain_e1: weights[..split].to_vec(),
        weight_e0: weights[split],
        chain_e2: weights[split + 1..].to_vec(),
        rays,
    };
    assert_eq!(chain_determinant(&data.chain_e1), d1 as i64);
    assert_eq!(chain_determinant(&data.chain_e2), d2 as i64);
    Ok(data)
}

/// Determinant of the intersection matrix of a weighted chain, up to
/// the sign convention that makes it positive for chains of weights
/// `<= -1`: `det_k = -w_k * det_{k-1} - det_{k-2}`, `det_0 = 1`.
pub fn chain_determinant(weights: &[i64]) -> i64 {
    let (mut prev, mut cur) = (0i64, 1i64);
    for &w in weights {
        let next = -w * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Blow up a point on the chain.  `edge = k` blows up the intersection
/// of components `k-1` and `k` (or a free point of the end component
/// for `k = 0` and `k = len`): a fresh `-1` curve is inserted at
/// position `k` and the adjacent weights drop by one.
pub fn blowup_chain(weights: &[i64], edge: usize) -> Result<Vec<i64>, FanError> {
    if edge > weights.len() {
        return Err(FanError::EdgeOutOfRange(edge, weights.len()));
    }
    let mut out = weights.to_vec();
    if edge > 0 {
        out[edge - 1] -= 1;
    }
    if edge < weights.len() {
        out[edge] -= 1;
    }
    out.insert(edge, -1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: gift-wrap the near-origin face of the convex
    /// hull of the nonzero lattice points of the cone, walking from `v`
    /// to `w` one boundary lattice point at a time; the interior stops
    /// (vertices and edge points alike) are the minimal subdivision rays.
    fn hull_subdivision(v: PrimVec, w: PrimVec) -> Vec<PrimVec> {
        let bound = (v.0.abs() + v.1.abs() + w.0.abs() + w.1.abs() + 4) * 3;
        // all nonzero lattice points of the cone inside the box
        let mut pts = Vec::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                let p = PrimVec(x, y);
                if (x, y) != (0, 0) && det(v, p) >= 0 && det(p, w) >= 0 {
                    pts.push(p);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = v;
        while cur != w {
            // Candidates strictly counterclockwise of cur (as seen from
            // the origin) all have directions within an open half-plane,
            // so "most counterclockwise direction from cur, nearest on
            // ties" is a total order and yields the next boundary point.
            let mut best: Option<PrimVec> = None;
            for &q in &pts {
                if det(cur, q) <= 0 {
                    continue;
                }
                let dq = (q.0 - cur.0, q.1 - cur.1);
                best = Some(match best {
                    None => q,
                    Some(b) => {
                        let db = (b.0 - cur.0, b.1 - cur.1);
                        let turn = db.0 * dq.1 - db.1 * dq.0;
                        let nearer = dq.0.abs() + dq.1.abs() < db.0.abs() + db.1.abs();
                        if turn > 0 || (turn == 0 && nearer) {
                            q
                        } else {
                            b
                        }
                    }
                });
            }
            cur = best.expect("cone walk cannot dead-end");
            if cur != w {
                out.push(cur);
            }
        }
        out
    }

    #[test]
    fn subdivisions_match_the_hull_oracle() {
        let cases = [
            (PrimVec(1, 0), PrimVec(2, 3)),
            (PrimVec(1, 0), PrimVec(1, 5)),
            (PrimVec(1, 0), PrimVec(3, 5)),
            (PrimVec(2, 3), PrimVec(0, 1)),
            (PrimVec(1, 2), PrimVec(-3, 2)),
            (PrimVec(-1, 3), PrimVec(-2, -5)),
            (PrimVec(5, 7), PrimVec(2, 3)),
        ];
        for (v, w) in cases {
            assert_eq!(subdivide_cone(v, w).unwrap(), hull_subdivision(v, w), "cone {v:?},{w:?}");
        }
    }

    #[test]
    fn unimodular_cone_needs_no_rays() {
        assert_eq!(subdivide_cone(PrimVec(1, 0), PrimVec(1, 1)).unwrap(), vec![]);
        assert!(matches!(
            subdivide_cone(PrimVec(1, 1), PrimVec(1, 0)),
            Err(FanError::DegenerateCone(..))
        ));
    }

    #[test]
    fn chain_for_3_2() {
        let r = resolution_chains(3, 2).unwrap();
        assert_eq!(r.full_chain(), vec![-3, -1, -2]);
        assert_eq!(r.chain_e1, vec![-3]);
        assert_eq!(r.weight_e0, -1);
        assert_eq!(r.chain_e2, vec![-2]);
        assert_eq!(r.rays, vec![PrimVec(1, 0), PrimVec(1, 1), PrimVec(2, 3), PrimVec(1, 2), PrimVec(0, 1)]);
    }

    #[test]
    fn chain_for_5_2_and_axis_cases() {
        let r = resolution_chains(5, 2).unwrap();
        assert_eq!(r.full_chain(), vec![-2, -3, -1, -2]);
        // d2 = 1: one arm empty
        let r = resolution_chains(4, 1).unwrap();
        assert_eq!(r.chain_e1, vec![-2, -2, -2]);
        assert_eq!(r.weight_e0, -1);
        assert_eq!(r.chain_e2, Vec::<i64>::new());
        // the smooth case: a single -1 curve
        let r = resolution_chains(1, 1).unwrap();
        assert_eq!(r.full_chain(), vec![-1]);
        assert!(matches!(resolution_chains(4, 2), Err(FanError::BadExponents(4, 2))));
    }

    #[test]
    fn determinant_recurrence() {
        assert_eq!(chain_determinant(&[]), 1);
        assert_eq!(chain_determinant(&[-7]), 7);
        assert_eq!(chain_determinant(&[-2, -2]), 3);
        assert_eq!(chain_determinant(&[-3, -1, -2]), 1);
    }

    #[test]
    fn blowups_preserve_arm_determinants() {
        // interior blowup of (-2,-2)
        assert_eq!(blowup_chain(&[-2, -2], 1).unwrap(), vec![-3, -1, -3]);
        assert_eq!(chain_determinant(&[-3, -1, -3]), 3);
        // end blowup of (-d)
        assert_eq!(blowup_chain(&[-4], 1).unwrap(), vec![-5, -1]);
        assert_eq!(chain_determinant(&[-5, -1]), 4);
        assert_eq!(blowup_chain(&[-4], 0).unwrap(), vec![-1, -5]);
        assert!(blowup_chain(&[-4], 2).is_err());
        // sweep: every edge of every small chain keeps its determinant
        for d1 in 1..=12u64 {
            for d2 in 1..=12u64 {
                if d1.gcd(&d2) != 1 {
                    continue;
                }
                let r = resolution_chains(d1, d2).unwrap();
                for arm in [&r.chain_e1, &r.chain_e2] {
                    let before = chain_determinant(arm);
                    for edge in 0..=arm.len() {
                        let blown = blowup_chain(arm, edge).unwrap();
                        assert_eq!(chain_determinant(&blown), before);
                    }
                }
            }
        }
    }
}
