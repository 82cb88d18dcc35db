//! Point sets on the moment curve `γ(t) = (t, t², t³)` and exact counts of
//! where orthogonal plane triples meet its tail `t ≥ 2`.
//!
//! A plane `n·x = d` meets the curve where `n_z t³ + n_y t² + n_x t − d = 0`,
//! so a plane through three tail points already uses up its three
//! intersections. The counts here are exact Sturm counts over ℚ[√q].

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::PointSet;
use crate::error::{Error, Result};
use crate::exact::{cubic_roots_at_least, CubicPoly, OrientedPlane, Point3, Rational, Vec3};
use crate::solver::{planes_222, planes_321, validate_triple, PlaneTriple};

/// Start of the curve tail used throughout.
pub const TAIL_START: i64 = 2;

/// Parameters `t_start + k·t_step` for `0 ≤ k < count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MomentParams {
    pub t_start: i64,
    pub t_step: i64,
    pub count: usize,
}

impl MomentParams {
    pub fn new(t_start: i64, t_step: i64, count: usize) -> Result<Self> {
        if t_start < TAIL_START {
            return Err(Error::InvalidParameter(format!(
                "t_start {t_start} is below the tail start {TAIL_START}"
            )));
        }
        if t_step <= 0 {
            return Err(Error::InvalidParameter(format!("t_step {t_step} must be positive")));
        }
        if count == 0 || !count.is_multiple_of(8) {
            return Err(Error::InputSizeError(count));
        }
        Ok(MomentParams { t_start, t_step, count })
    }

    pub fn parameters(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.count as i64).map(move |k| self.t_start + k * self.t_step)
    }
}

pub fn moment_point(t: i64) -> Point3 {
    let t = BigInt::from(t);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    Point3::new(t, t2, t3)
}

pub fn counterexample_set(p: &MomentParams) -> Result<PointSet> {
    PointSet::new(p.parameters().map(moment_point).collect())
}

/// Number of real `t ≥ m` with `γ(t)` on `h`.
pub fn curve_plane_intersections_geq(h: &OrientedPlane, m: &Rational) -> Result<usize> {
    let [nx, ny, nz] = h.normal().as_array();
    let f = CubicPoly::new(nz.clone(), ny.clone(), nx.clone(), -h.offset().clone());
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    cubic_roots_at_least(&f, m)
}

/// Per-plane tail intersection counts of a triple.
pub fn plane_tail_counts(t: &PlaneTriple, m: &Rational) -> Result<[usize; 3]> {
    let [h1, h2, h3] = t.planes();
    Ok([
        curve_plane_intersections_geq(h1, m)?,
        curve_plane_intersections_geq(h2, m)?,
        curve_plane_intersections_geq(h3, m)?,
    ])
}

pub fn triple_tail_intersections(t: &PlaneTriple, m: &Rational) -> Result<usize> {
    Ok(plane_tail_counts(t, m)?.iter().sum())
}

/// Squared form of `max_i |⟨u_i, v⟩| / (‖u_i‖‖v‖) ≥ 1/√3` for an orthogonal
/// basis `u`. A zero `v` satisfies it trivially.
pub fn alignment_check(u: [&Vec3<Rational>; 3], v: &Vec3<Rational>) -> Result<bool> {
    if u.iter().any(|ui| ui.is_zero())
        || [(0, 1), (0, 2), (1, 2)]
            .iter()
            .any(|&(i, j)| !num_traits::Zero::is_zero(&u[i].dot(u[j])))
    {
        return Err(Error::DegenerateBasis);
    }
    let v2 = v.norm_squared();
    let three = Rational::from_integer(3.into());
    Ok(u.iter().any(|ui| {
        let d = ui.dot(v);
        &d * &d * &three >= ui.norm_squared() * &v2
    }))
}

/// Outcome of checking orthogonal triples built from supports on the tail.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TailSurvey {
    /// Validated triples whose intersections were counted.
    pub triples: usize,
    pub triples_222: usize,
    /// Largest total intersection count seen.
    pub max_total: usize,
    /// Largest value of the smallest per-plane count.
    pub max_min_plane: usize,
    /// Triples with more than six intersections or no plane with at most one.
    pub violations: usize,
}

impl TailSurvey {
    fn record(&mut self, counts: [usize; 3]) {
        let total: usize = counts.iter().sum();
        let min = *counts.iter().min().expect("three planes");
        self.triples += 1;
        self.max_total = self.max_total.max(total);
        self.max_min_plane = self.max_min_plane.max(min);
        if total > 6 || min > 1 {
            self.violations += 1;
        }
    }
}

/// Builds `samples` random 3-2-1 supports and `samples` random 2-2-2
/// supports from `γ(ts)`, solves them and counts tail intersections at `t ≥ 2`.
/// Supports whose planes do not exist or fail validation are skipped.
pub fn tail_survey(ts: &[i64], samples: usize, seed: u64) -> Result<TailSurvey> {
    if ts.len() < 6 {
        return Err(Error::InvalidParameter(format!(
            "need at least 6 curve parameters, got {}",
            ts.len()
        )));
    }
    let pts: Vec<Point3> = ts.iter().map(|&t| moment_point(t)).collect();
    let m = Rational::from_integer(TAIL_START.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TailSurvey::default();
    for _ in 0..samples {
        let s = sample(&mut rng, pts.len(), 6).into_vec();
        let p = |k: usize| &pts[s[k]];
        let t = match planes_321([p(0), p(1), p(2)], [p(3), p(4)], p(5)) {
            Ok(t) => t,
            Err(Error::DegenerateSupport) => continue,
            Err(e) => return Err(e),
        };
        let sets = [
            vec![p(0).clone(), p(1).clone(), p(2).clone()],
            vec![p(3).clone(), p(4).clone()],
            vec![p(5).clone()],
        ];
        if validate_triple(&t, [&sets[0], &sets[1], &sets[2]]) {
            out.record(plane_tail_counts(&t, &m)?);
        }
    }
    for _ in 0..samples {
        let s = sample(&mut rng, pts.len(), 6).into_vec();
        let p = |k: usize| &pts[s[k]];
        for t in planes_222([p(0), p(1)], [p(2), p(3)], [p(4), p(5)])? {
            let sets = [0, 2, 4].map(|k| vec![p(k).clone(), p(k + 1).clone()]);
            if validate_triple(&t, [&sets[0], &sets[1], &sets[2]]) {
                out.triples_222 += 1;
                out.record(plane_tail_counts(&t, &m)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::solver::plane_through_3;

    fn plane(n: [i64; 3], d: i64) -> OrientedPlane {
        OrientedPlane::from_integers(Vec3::<BigInt>::from_i64(n[0], n[1], n[2]), d.into()).unwrap()
    }

    #[test]
    fn moment_points() {
        assert_eq!(moment_point(2), Point3::new(2, 4, 8));
        assert_eq!(moment_point(0), Point3::new(0, 0, 0));
        assert_eq!(moment_point(-3), Point3::new(-3, 9, -27));
    }

    #[test]
    fn params_validated() {
        let p = MomentParams::new(2, 3, 16).unwrap();
        let ts: Vec<i64> = p.parameters().collect();
        assert_eq!(ts.first(), Some(&2));
        assert_eq!(ts.last(), Some(&47));
        assert_eq!(MomentParams::new(2, 1, 12), Err(Error::InputSizeError(12)));
        assert!(matches!(MomentParams::new(1, 1, 8), Err(Error::InvalidParameter(_))));
        assert!(matches!(MomentParams::new(2, 0, 8), Err(Error::InvalidParameter(_))));
        let x = counterexample_set(&MomentParams::new(2, 1, 8).unwrap()).unwrap();
        assert_eq!(x.points()[7], Point3::new(9, 81, 729));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(curve_plane_intersections_geq(&plane([0, 0, 1], 0), &rat(2)).unwrap(), 0);
        assert_eq!(curve_plane_intersections_geq(&plane([0, 1, 0], 9), &rat(2)).unwrap(), 1);
        let h = plane_through_3(&moment_point(2), &moment_point(3), &moment_point(4)).unwrap();
        assert!(h.same_plane(&plane([26, -9, 1], 24)));
        assert_eq!(curve_plane_intersections_geq(&h, &rat(2)).unwrap(), 3);
    }

    #[test]
    fn coordinate_planes_miss_tail() {
        let t = PlaneTriple::new(
            [plane([1, 0, 0], 0), plane([0, 1, 0], 0), plane([0, 0, 1], 0)],
            crate::solver::SupportCase::ThreeTwoOne,
        );
        assert_eq!(triple_tail_intersections(&t, &rat(2)).unwrap(), 0);
    }

    #[test]
    fn alignment_examples() {
        let e = [
            Vec3::<Rational>::from_i64(1, 0, 0),
            Vec3::<Rational>::from_i64(0, 1, 0),
            Vec3::<Rational>::from_i64(0, 0, 1),
        ];
        let basis = [&e[0], &e[1], &e[2]];
        assert!(alignment_check(basis, &Vec3::<Rational>::from_i64(1, 0, 0)).unwrap());
        assert!(alignment_check(basis, &Vec3::<Rational>::from_i64(1, 1, 1)).unwrap());
        let skew = Vec3::<Rational>::from_i64(1, 1, 0);
        assert_eq!(
            alignment_check([&e[0], &skew, &e[2]], &e[0]),
            Err(Error::DegenerateBasis)
        );
        let zero = Vec3::<Rational>::from_i64(0, 0, 0);
        assert_eq!(
            alignment_check([&e[0], &e[1], &zero], &e[0]),
            Err(Error::DegenerateBasis)
        );
    }

    #[test]
    fn small_survey() {
        let ts: Vec<i64> = (2..=9).collect();
        let s = tail_survey(&ts, 50, 7).unwrap();
        assert!(s.triples > 0);
        assert_eq!(s.violations, 0);
        assert!(s.max_total <= 6);
    }
}
