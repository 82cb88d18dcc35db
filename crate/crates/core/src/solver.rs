//! Mutually orthogonal plane triples through prescribed point supports.
//!
//! Two support shapes occur. In the 3-2-1 case `H1` is the plane through
//! three points, `H2` contains a pair and is orthogonal to `H1`, and `H3` is
//! orthogonal to both through a single point; everything stays rational.
//! In the 2-2-2 case each plane contains one pair. Writing the unit normals as
//! `u_i = α_i·a_i + b_i` with `a_i = a × v_i`, `b_i = b × v_i` turns the
//! orthogonality conditions into the cyclic bilinear system
//!
//! ```text
//! A_i α_i α_{i+1} + B_i α_i + C_i α_{i+1} + D_i = 0      (indices mod 3)
//! A_i = a_i·a_{i+1}, B_i = a_i·b_{i+1}, C_i = b_i·a_{i+1}, D_i = b_i·b_{i+1}
//! ```
//!
//! whose solutions are `α_i = (r_i ± √q) / (2 s_i)` with a discriminant `q`
//! shared by all three indices. Plane coefficients therefore live in ℚ[√q].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::sign::sign_with_root;
use crate::exact::{IntegralPlane, OrientedPlane, Point3, QuadField, Rational, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SupportCase {
    #[serde(rename = "321")]
    ThreeTwoOne,
    #[serde(rename = "222")]
    TwoTwoTwo,
}

impl SupportCase {
    pub fn tag(self) -> &'static str {
        match self {
            SupportCase::ThreeTwoOne => "321",
            SupportCase::TwoTwoTwo => "222",
        }
    }
}

/// Indices of the points lying on `H1`, `H2` and `H3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportTriple {
    sets: [Vec<usize>; 3],
    case: SupportCase,
}

impl SupportTriple {
    pub fn three_two_one(mut a1: [usize; 3], mut a2: [usize; 2], a3: usize) -> Self {
        a1.sort_unstable();
        a2.sort_unstable();
        let t = SupportTriple {
            sets: [a1.to_vec(), a2.to_vec(), vec![a3]],
            case: SupportCase::ThreeTwoOne,
        };
        t.assert_disjoint();
        t
    }

    /// The pairs are stored sorted, and the triple of pairs in lexicographic
    /// order, so each unordered combination has a single representation.
    pub fn two_two_two(p1: [usize; 2], p2: [usize; 2], p3: [usize; 2]) -> Self {
        let mut pairs = [p1, p2, p3];
        for p in pairs.iter_mut() {
            p.sort_unstable();
        }
        pairs.sort_unstable();
        let t = SupportTriple {
            sets: pairs.map(|p| p.to_vec()),
            case: SupportCase::TwoTwoTwo,
        };
        t.assert_disjoint();
        t
    }

    fn assert_disjoint(&self) {
        let mut all: Vec<usize> = self.indices().collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 6, "support sets must be pairwise disjoint: {self}");
    }

    pub fn sets(&self) -> &[Vec<usize>; 3] {
        &self.sets
    }

    pub fn case(&self) -> SupportCase {
        self.case
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.sets.iter().flatten().copied()
    }

    /// The plane (0, 1 or 2) whose support contains `idx`.
    pub fn plane_of(&self, idx: usize) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(&idx))
    }
}

impl fmt::Display for SupportTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.case.tag())?;
        for s in &self.sets {
            write!(f, " {s:?}")?;
        }
        Ok(())
    }
}

/// Three planes over ℤ[√q] sharing the radicand `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralTriple {
    pub planes: [IntegralPlane; 3],
    pub radicand: BigInt,
}

/// Three mutually orthogonal oriented planes with a shared radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTriple {
    planes: [OrientedPlane; 3],
    case: SupportCase,
    field: QuadField,
}

impl PlaneTriple {
    pub fn new(planes: [OrientedPlane; 3], case: SupportCase) -> Self {
        let field = planes[0].field().clone();
        PlaneTriple { planes, case, field }
    }

    pub fn from_integral(t: &IntegralTriple, case: SupportCase) -> Result<Self> {
        let field = QuadField::new(Rational::from_integer(t.radicand.clone()));
        let [h1, h2, h3] = &t.planes;
        Ok(PlaneTriple {
            planes: [
                h1.to_oriented(&field)?,
                h2.to_oriented(&field)?,
                h3.to_oriented(&field)?,
            ],
            case,
            field,
        })
    }

    pub fn planes(&self) -> &[OrientedPlane; 3] {
        &self.planes
    }

    pub fn case(&self) -> SupportCase {
        self.case
    }

    pub fn radicand(&self) -> &Rational {
        self.field.radicand()
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn to_integral(&self) -> [IntegralPlane; 3] {
        [
            self.planes[0].to_integral(),
            self.planes[1].to_integral(),
            self.planes[2].to_integral(),
        ]
    }

    /// Equality as an unordered set of unoriented planes.
    pub fn same_planes(&self, other: &PlaneTriple) -> bool {
        let mut used = [false; 3];
        self.planes.iter().all(|h| {
            let hit = (0..3).find(|&k| !used[k] && h.same_plane(&other.planes[k]));
            if let Some(k) = hit {
                used[k] = true;
            }
            hit.is_some()
        })
    }
}

/// Coefficients of the 2-2-2 system for fixed auxiliary vectors.
///
/// `t_i` is the constant term of the quadratic `s_i α² − r_i α + t_i = 0`
/// satisfied by `α_i`, so that `q = r_i² − 4 s_i t_i` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverCoefficients {
    pub a: [BigInt; 3],
    pub b: [BigInt; 3],
    pub c: [BigInt; 3],
    pub d: [BigInt; 3],
    pub q: BigInt,
    pub r: [BigInt; 3],
    pub s: [BigInt; 3],
    pub t: [BigInt; 3],
}

pub fn solver_coefficients(a_vecs: &[Vec3<BigInt>; 3], b_vecs: &[Vec3<BigInt>; 3]) -> SolverCoefficients {
    let next = |i: usize| (i + 1) % 3;
    let a: [BigInt; 3] = std::array::from_fn(|i| a_vecs[i].dot(&a_vecs[next(i)]));
    let b: [BigInt; 3] = std::array::from_fn(|i| a_vecs[i].dot(&b_vecs[next(i)]));
    let c: [BigInt; 3] = std::array::from_fn(|i| b_vecs[i].dot(&a_vecs[next(i)]));
    let d: [BigInt; 3] = std::array::from_fn(|i| b_vecs[i].dot(&b_vecs[next(i)]));

    let r: [BigInt; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        &a[i] * &b[k] * &d[j] - &a[i] * &c[j] * &d[k] + &a[j] * &b[i] * &d[k] + &a[j] * &c[k] * &d[i]
            - &a[k] * &b[j] * &d[i]
            + &a[k] * &c[i] * &d[j]
            - &b[i] * &b[j] * &b[k]
            - &c[i] * &c[j] * &c[k]
    });
    let s: [BigInt; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        -(&a[i] * &a[k] * &d[j]) + &a[i] * &c[j] * &c[k] - &a[j] * &b[i] * &c[k] + &a[k] * &b[i] * &b[j]
    });
    let t: [BigInt; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        -(&a[j] * &d[i] * &d[k]) + &b[j] * &b[k] * &d[i] - &b[k] * &c[i] * &d[j] + &c[i] * &c[j] * &d[k]
    });
    // The discriminant exactly as the closed form writes it (1-based there).
    let [a1, a2, a3] = &a;
    let [b1, b2, b3] = &b;
    let [c1, c2, c3] = &c;
    let [d1, d2, d3] = &d;
    let p = a1 * b3 * d2 - a1 * c2 * d3 + a2 * b1 * d3 + a2 * c3 * d1 - a3 * b2 * d1 + a3 * c1 * d2
        - b1 * b2 * b3
        - c1 * c2 * c3;
    let f = a1 * a3 * d2 - a1 * c2 * c3 + a2 * b1 * c3 - a3 * b1 * b2;
    let g = -(a2 * d1 * d3) + b2 * b3 * d1 - b3 * c1 * d2 + c1 * c2 * d3;
    let q = &p * &p + BigInt::from(4) * f * g;

    SolverCoefficients { a, b, c, d, q, r, s, t }
}

/// Default auxiliary pair followed by the fallbacks `a = (t, −1, 0)`,
/// `b = (t², 0, −1)` for `t = 0..7`. The spans of the fallbacks have normals
/// `(1, t, t²)`, any three of which are independent, so a nonzero vector lies
/// in at most two spans and three difference vectors rule out at most six.
pub fn auxiliary_candidates() -> Vec<(Vec3<BigInt>, Vec3<BigInt>)> {
    let mut out = vec![(Vec3::<BigInt>::from_i64(1, 0, 0), Vec3::<BigInt>::from_i64(0, 1, 0))];
    for t in 0..7i64 {
        out.push((
            Vec3::<BigInt>::from_i64(t, -1, 0),
            Vec3::<BigInt>::from_i64(t * t, 0, -1),
        ));
    }
    out
}

fn auxiliary_valid(a: &Vec3<BigInt>, b: &Vec3<BigInt>, v: &[Vec3<BigInt>; 3]) -> bool {
    let n = a.cross(b);
    !n.is_zero() && v.iter().all(|vi| !n.dot(vi).is_zero())
}

pub fn integral_normal_through_3(p: [&Vec3<BigInt>; 3]) -> Option<Vec3<BigInt>> {
    let n = p[1].sub(p[0]).cross(&p[2].sub(p[0]));
    if n.is_zero() {
        None
    } else {
        Some(n.canonical_orientation())
    }
}

pub fn integral_planes_321(
    a1: [&Vec3<BigInt>; 3],
    a2: [&Vec3<BigInt>; 2],
    a3: &Vec3<BigInt>,
) -> Result<IntegralTriple> {
    let n1 = integral_normal_through_3(a1).ok_or(Error::CollinearPoints)?;
    let v2 = a2[1].sub(a2[0]);
    if v2.is_zero() {
        return Err(Error::ZeroDifferenceVector);
    }
    let n2 = n1.cross(&v2);
    if n2.is_zero() {
        return Err(Error::DegenerateSupport);
    }
    let n2 = n2.canonical_orientation();
    let n3 = n1.cross(&n2).canonical_orientation();
    Ok(IntegralTriple {
        planes: [
            IntegralPlane::rational_through(n1, a1[0]),
            IntegralPlane::rational_through(n2, a2[0]),
            IntegralPlane::rational_through(n3, a3),
        ],
        radicand: BigInt::zero(),
    })
}

/// Element `x + y√q` of ℤ[√q]³.
type ZqVec = (Vec3<BigInt>, Vec3<BigInt>);

fn zq_dot(u: &ZqVec, w: &ZqVec, q: &BigInt) -> (BigInt, BigInt) {
    (u.0.dot(&w.0) + q * u.1.dot(&w.1), u.0.dot(&w.1) + u.1.dot(&w.0))
}

fn zq_is_zero((x, y): &(BigInt, BigInt), q: &BigInt) -> bool {
    sign_with_root(x, y, q).is_zero()
}

fn zq_vec_is_zero(u: &ZqVec, q: &BigInt) -> bool {
    (0..3).all(|k| sign_with_root(u.0.as_array()[k], u.1.as_array()[k], q).is_zero())
}

/// Candidate normals for index `i`: both roots `α_i = (r_i ± √q)/(2 s_i)`
/// scaled by `2 s_i`, or, when `s_i = 0`, the root at infinity `u_i ∥ a_i`
/// and the finite root `α_i = t_i / r_i`.
fn candidates(i: usize, co: &SolverCoefficients, a_i: &Vec3<BigInt>, b_i: &Vec3<BigInt>) -> Vec<ZqVec> {
    let zero = Vec3::<BigInt>::from_i64(0, 0, 0);
    let (r, s, t) = (&co.r[i], &co.s[i], &co.t[i]);
    if !s.is_zero() {
        let two_s = s * BigInt::from(2);
        let x = a_i.scale(r).add(&b_i.scale(&two_s));
        vec![(x.clone(), a_i.clone()), (x, a_i.neg())]
    } else {
        let mut out = vec![(a_i.clone(), zero.clone())];
        if !r.is_zero() {
            out.push((a_i.scale(t).add(&b_i.scale(r)), zero));
        }
        out
    }
}

/// Solves the 2-2-2 case over ℤ[√q]. Returns every distinct valid triple
/// (at most two for a generic support).
pub fn integral_planes_222(
    pairs: [[&Vec3<BigInt>; 2]; 3],
    aux: Option<(&Vec3<BigInt>, &Vec3<BigInt>)>,
) -> Result<Vec<IntegralTriple>> {
    let v: [Vec3<BigInt>; 3] = std::array::from_fn(|i| pairs[i][1].sub(pairs[i][0]));
    if v.iter().any(|vi| vi.is_zero()) {
        return Err(Error::ZeroDifferenceVector);
    }
    let (a, b) = match aux {
        Some((a, b)) => {
            if !auxiliary_valid(a, b, &v) {
                return Err(Error::AuxiliaryVectorsInvalid);
            }
            (a.clone(), b.clone())
        }
        None => auxiliary_candidates()
            .into_iter()
            .find(|(a, b)| auxiliary_valid(a, b, &v))
            .ok_or(Error::AuxiliaryVectorsInvalid)?,
    };
    let a_vecs: [Vec3<BigInt>; 3] = std::array::from_fn(|i| a.cross(&v[i]));
    let b_vecs: [Vec3<BigInt>; 3] = std::array::from_fn(|i| b.cross(&v[i]));
    let co = solver_coefficients(&a_vecs, &b_vecs);
    if co.q.is_negative() {
        return Ok(Vec::new());
    }
    let q = &co.q;
    let cands: [Vec<ZqVec>; 3] = std::array::from_fn(|i| candidates(i, &co, &a_vecs[i], &b_vecs[i]));

    let mut out: Vec<IntegralTriple> = Vec::new();
    for u1 in &cands[0] {
        if zq_vec_is_zero(u1, q) {
            continue;
        }
        for u2 in &cands[1] {
            if zq_vec_is_zero(u2, q) || !zq_is_zero(&zq_dot(u1, u2, q), q) {
                continue;
            }
            for u3 in &cands[2] {
                if zq_vec_is_zero(u3, q) || !zq_is_zero(&zq_dot(u2, u3, q), q) || !zq_is_zero(&zq_dot(u1, u3, q), q) {
                    continue;
                }
                let us = [u1, u2, u3];
                let orthogonal_to_pairs = (0..3).all(|i| {
                    let vi = (v[i].clone(), Vec3::<BigInt>::from_i64(0, 0, 0));
                    zq_is_zero(&zq_dot(us[i], &vi, q), q)
                });
                if !orthogonal_to_pairs {
                    continue;
                }
                let planes = std::array::from_fn(|i| {
                    let (x, y) = us[i];
                    let p = pairs[i][0];
                    IntegralPlane::new(x.clone(), y.clone(), x.dot(p), y.dot(p), q.clone()).canonical()
                });
                let triple = IntegralTriple {
                    planes,
                    radicand: q.clone(),
                };
                let duplicate = out
                    .iter()
                    .any(|o| (0..3).all(|i| o.planes[i].same_plane(&triple.planes[i])));
                if !duplicate {
                    out.push(triple);
                }
            }
        }
    }
    Ok(out)
}

/// Plane through three points, normal `(p2 − p1) × (p3 − p1)` oriented so its
/// first nonzero coordinate is positive.
pub fn plane_through_3(p1: &Point3, p2: &Point3, p3: &Point3) -> Result<OrientedPlane> {
    let (a, b, c) = (p1.to_vec(), p2.to_vec(), p3.to_vec());
    let n = integral_normal_through_3([&a, &b, &c]).ok_or(Error::CollinearPoints)?;
    let d = n.dot(&a);
    OrientedPlane::from_integers(n, d)
}

/// The unique orthogonal triple with `A1 ⊂ H1`, `A2 ⊂ H2`, `A3 ⊂ H3`.
pub fn planes_321(a1: [&Point3; 3], a2: [&Point3; 2], a3: &Point3) -> Result<PlaneTriple> {
    let a1 = a1.map(Point3::to_vec);
    let a2 = a2.map(Point3::to_vec);
    let t = integral_planes_321([&a1[0], &a1[1], &a1[2]], [&a2[0], &a2[1]], &a3.to_vec())?;
    PlaneTriple::from_integral(&t, SupportCase::ThreeTwoOne)
}

/// All orthogonal triples with the pair `A_i` on `H_i`, using the default
/// auxiliary vectors.
pub fn planes_222(a1: [&Point3; 2], a2: [&Point3; 2], a3: [&Point3; 2]) -> Result<Vec<PlaneTriple>> {
    solve_222(a1, a2, a3, None)
}

/// As [`planes_222`] with explicit auxiliary vectors `a`, `b`.
pub fn planes_222_with_aux(
    a1: [&Point3; 2],
    a2: [&Point3; 2],
    a3: [&Point3; 2],
    a: &Vec3<BigInt>,
    b: &Vec3<BigInt>,
) -> Result<Vec<PlaneTriple>> {
    solve_222(a1, a2, a3, Some((a, b)))
}

fn solve_222(
    a1: [&Point3; 2],
    a2: [&Point3; 2],
    a3: [&Point3; 2],
    aux: Option<(&Vec3<BigInt>, &Vec3<BigInt>)>,
) -> Result<Vec<PlaneTriple>> {
    let p = [a1, a2, a3].map(|pair| pair.map(Point3::to_vec));
    let pairs = [[&p[0][0], &p[0][1]], [&p[1][0], &p[1][1]], [&p[2][0], &p[2][1]]];
    integral_planes_222(pairs, aux)?
        .iter()
        .map(|t| PlaneTriple::from_integral(t, SupportCase::TwoTwoTwo))
        .collect()
}

/// Exact check: normals pairwise orthogonal and every support point on its
/// plane.
pub fn validate_triple(t: &PlaneTriple, supports: [&[Point3]; 3]) -> bool {
    let h = t.planes();
    let orthogonal = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(i, j)| h[i].normal().dot(h[j].normal()).is_zero());
    orthogonal
        && supports
            .iter()
            .zip(h)
            .all(|(pts, plane)| pts.iter().all(|p| plane.evaluate(p).is_zero()))
}
