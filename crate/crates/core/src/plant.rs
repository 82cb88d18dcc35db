//! Supports planted on a known orthogonal plane triple, for recovery tests.

use num_bigint::BigInt;
use rand::Rng;

use crate::exact::{OrientedPlane, Point3, Vec3};
use crate::frames::random_frame;
use crate::solver::{PlaneTriple, SupportCase};

#[derive(Debug, Clone)]
pub struct PlantedTriple {
    /// Points on `H1`, `H2`, `H3`.
    pub supports: [Vec<Point3>; 3],
    pub planes: PlaneTriple,
}

impl PlantedTriple {
    pub fn support_refs(&self) -> [&[Point3]; 3] {
        [&self.supports[0], &self.supports[1], &self.supports[2]]
    }
}

fn point_of(v: &Vec3<BigInt>) -> Point3 {
    Point3::new(v.x.clone(), v.y.clone(), v.z.clone())
}

/// Draws a random frame and `sizes[k]` integer points on plane `k`, retrying
/// until every point lies on its own plane only.
fn plant<R: Rng + ?Sized>(rng: &mut R, sizes: [usize; 3], case: SupportCase) -> PlantedTriple {
    loop {
        let f = random_frame(rng, 30.0);
        let origin = Vec3::<BigInt>::from_i64(
            rng.random_range(-1000..1000),
            rng.random_range(-1000..1000),
            rng.random_range(-1000..1000),
        );
        let bases: [Vec3<BigInt>; 3] =
            std::array::from_fn(|k| origin.add(&f[k].scale(&BigInt::from(rng.random_range(-3..=3)))));
        let planes: [OrientedPlane; 3] = std::array::from_fn(|k| {
            OrientedPlane::from_integers(f[k].clone(), f[k].dot(&bases[k])).expect("frame rows are nonzero")
        });
        let supports: [Vec<Point3>; 3] = std::array::from_fn(|k| {
            (0..sizes[k])
                .map(|_| {
                    let a = BigInt::from(rng.random_range(-9..=9));
                    let b = BigInt::from(rng.random_range(-9..=9));
                    point_of(&bases[k].add(&f[(k + 1) % 3].scale(&a)).add(&f[(k + 2) % 3].scale(&b)))
                })
                .collect()
        });
        let all: Vec<&Point3> = supports.iter().flatten().collect();
        let distinct = all.iter().enumerate().all(|(i, p)| all[..i].iter().all(|q| q != p));
        let only_own = supports.iter().enumerate().all(|(k, pts)| {
            pts.iter()
                .all(|p| (0..3).all(|j| j == k || !planes[j].evaluate(p).is_zero()))
        });
        let a1_spans = sizes[0] < 3 || {
            let v = supports[0].iter().map(Point3::to_vec).collect::<Vec<_>>();
            !v[1].sub(&v[0]).cross(&v[2].sub(&v[0])).is_zero()
        };
        // A pair along the common line of the other two planes' normals would
        // leave its plane undetermined.
        let pairs_free = supports.iter().enumerate().all(|(k, pts)| {
            pts.len() != 2 || {
                let d = pts[1].to_vec().sub(&pts[0].to_vec());
                !d.cross(&f[(k + 1) % 3]).is_zero() && !d.cross(&f[(k + 2) % 3]).is_zero()
            }
        });
        if distinct && only_own && a1_spans && pairs_free {
            return PlantedTriple {
                supports,
                planes: PlaneTriple::new(planes, case),
            };
        }
    }
}

pub fn plant_321<R: Rng + ?Sized>(rng: &mut R) -> PlantedTriple {
    plant(rng, [3, 2, 1], SupportCase::ThreeTwoOne)
}

pub fn plant_222<R: Rng + ?Sized>(rng: &mut R) -> PlantedTriple {
    plant(rng, [2, 2, 2], SupportCase::TwoTwoTwo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::validate_triple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_triples_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = plant_321(&mut rng);
            assert!(validate_triple(&p.planes, p.support_refs()));
            let p = plant_222(&mut rng);
            assert!(validate_triple(&p.planes, p.support_refs()));
        }
    }
}
