//! Oriented planes `{p : normal·p = offset}` and exact side tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::point::Point3;
use super::quadext::{QuadExt, QuadField};
use super::rational::Rational;
use super::sign::{sign_with_root, Sign};
use super::vec3::Vec3;
use crate::error::{Error, Result};

/// A plane with normal and offset in ℚ[√q]. The positive side is where
/// `normal·p > offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedPlane {
    normal: Vec3<QuadExt>,
    offset: QuadExt,
}

impl OrientedPlane {
    pub fn new(normal: Vec3<QuadExt>, offset: QuadExt) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(OrientedPlane { normal, offset })
    }

    /// Plane with the given normal through `p`.
    pub fn through(normal: Vec3<QuadExt>, p: &Point3) -> Result<Self> {
        let offset = normal.dot(&p.to_quad(normal.x.field()));
        Self::new(normal, offset)
    }

    pub fn from_integers(normal: Vec3<BigInt>, offset: BigInt) -> Result<Self> {
        let f = QuadField::rationals();
        Self::new(normal.to_quad(&f), f.rational(Rational::from_integer(offset)))
    }

    pub fn normal(&self) -> &Vec3<QuadExt> {
        &self.normal
    }

    pub fn offset(&self) -> &QuadExt {
        &self.offset
    }

    pub fn field(&self) -> &QuadField {
        self.offset.field()
    }

    /// Value of `normal·p − offset`.
    pub fn evaluate(&self, p: &Point3) -> QuadExt {
        &self.normal.dot(&p.to_quad(self.field())) - &self.offset
    }

    /// Multiplies normal and offset by `k`; a negative `k` flips orientation.
    pub fn scaled(&self, k: &Rational) -> OrientedPlane {
        OrientedPlane {
            normal: self.normal.map(|c| c.scale(k)),
            offset: self.offset.scale(k),
        }
    }

    pub fn flipped(&self) -> OrientedPlane {
        OrientedPlane {
            normal: self.normal.neg(),
            offset: -&self.offset,
        }
    }

    /// Orients the plane so the first nonzero normal coordinate is positive.
    pub fn canonical(&self) -> Result<OrientedPlane> {
        for c in self.normal.as_array() {
            match c.sign()? {
                Sign::Zero => continue,
                Sign::Positive => return Ok(self.clone()),
                Sign::Negative => return Ok(self.flipped()),
            }
        }
        Err(Error::ZeroNormal)
    }

    /// Equality as unoriented point sets.
    pub fn same_plane(&self, other: &OrientedPlane) -> bool {
        if !self.normal.cross(&other.normal).is_zero() {
            return false;
        }
        // normals are parallel: other = λ·self; require d' = λ·d coordinate-wise
        self.normal
            .as_array()
            .into_iter()
            .zip(other.normal.as_array())
            .all(|(n, m)| (&(n * &other.offset) - &(m * &self.offset)).is_zero())
    }

    /// Clears denominators to obtain an equivalent plane over ℤ[√r] with an
    /// integer radicand `r`. The positive side is preserved.
    pub fn to_integral(&self) -> IntegralPlane {
        let q = self.field().radicand();
        let (qa, qb) = (q.numer().clone(), q.denom().clone());
        // √(a/b) = √(ab) / b
        let parts: Vec<(Rational, Rational)> = self
            .normal
            .as_array()
            .into_iter()
            .chain(std::iter::once(&self.offset))
            .map(|e| {
                let rad = if e.rad_part().is_zero() {
                    Rational::zero()
                } else {
                    e.rad_part() / Rational::from_integer(qb.clone())
                };
                (e.rat_part().clone(), rad)
            })
            .collect();
        let lcm = parts
            .iter()
            .fold(BigInt::one(), |acc, (x, y)| acc.lcm(x.denom()).lcm(y.denom()));
        let scale = Rational::from_integer(lcm);
        let ints: Vec<(BigInt, BigInt)> = parts
            .into_iter()
            .map(|(x, y)| ((x * &scale).to_integer(), (y * &scale).to_integer()))
            .collect();
        IntegralPlane::new(
            Vec3::new(ints[0].0.clone(), ints[1].0.clone(), ints[2].0.clone()),
            Vec3::new(ints[0].1.clone(), ints[1].1.clone(), ints[2].1.clone()),
            ints[3].0.clone(),
            ints[3].1.clone(),
            qa * qb,
        )
    }
}

/// Exact side of `p` relative to `h`.
pub fn side_of_plane(p: &Point3, h: &OrientedPlane) -> Result<Sign> {
    h.evaluate(p).sign()
}

/// A plane over ℤ[√r]: `(n + n'√r)·p = d + d'√r`.
///
/// This is the representation used in hot loops: side tests are a handful of
/// integer products and a single comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPlane {
    normal: Vec3<BigInt>,
    normal_root: Vec3<BigInt>,
    offset: BigInt,
    offset_root: BigInt,
    radicand: BigInt,
    rational: bool,
}

impl IntegralPlane {
    pub fn new(
        normal: Vec3<BigInt>,
        normal_root: Vec3<BigInt>,
        offset: BigInt,
        offset_root: BigInt,
        radicand: BigInt,
    ) -> Self {
        let rational = radicand.is_zero() || (normal_root.is_zero() && offset_root.is_zero());
        IntegralPlane {
            normal,
            normal_root,
            offset,
            offset_root,
            radicand,
            rational,
        }
    }

    /// Plane with integer normal `n` through the integer point `p`.
    pub fn rational_through(n: Vec3<BigInt>, p: &Vec3<BigInt>) -> Self {
        let offset = n.dot(p);
        Self::new(
            n,
            Vec3::<BigInt>::from_i64(0, 0, 0),
            offset,
            BigInt::zero(),
            BigInt::zero(),
        )
    }

    pub fn normal(&self) -> (&Vec3<BigInt>, &Vec3<BigInt>) {
        (&self.normal, &self.normal_root)
    }

    pub fn offset(&self) -> (&BigInt, &BigInt) {
        (&self.offset, &self.offset_root)
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    pub fn side(&self, p: &Vec3<BigInt>) -> Sign {
        let x = &self.normal.dot(p) - &self.offset;
        if self.rational {
            return Sign::of(&x);
        }
        let y = &self.normal_root.dot(p) - &self.offset_root;
        sign_with_root(&x, &y, &self.radicand)
    }

    pub fn flipped(&self) -> IntegralPlane {
        IntegralPlane {
            normal: self.normal.neg(),
            normal_root: self.normal_root.neg(),
            offset: -&self.offset,
            offset_root: -&self.offset_root,
            radicand: self.radicand.clone(),
            rational: self.rational,
        }
    }

    /// Orients so the first nonzero normal coordinate is positive.
    pub fn canonical(self) -> IntegralPlane {
        for k in 0..3 {
            let (x, y) = (self.normal.as_array()[k], self.normal_root.as_array()[k]);
            match sign_with_root(x, y, &self.radicand) {
                Sign::Zero => continue,
                Sign::Positive => return self,
                Sign::Negative => return self.flipped(),
            }
        }
        self
    }

    /// Equality as unoriented point sets, decided in ℤ[√r].
    pub fn same_plane(&self, other: &IntegralPlane) -> bool {
        let q = &self.radicand;
        let n = |p: &IntegralPlane, k: usize| (p.normal.as_array()[k].clone(), p.normal_root.as_array()[k].clone());
        let zero = |(x, y): (BigInt, BigInt)| sign_with_root(&x, &y, q).is_zero();
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            let c = zq_sub(
                zq_mul(&n(self, i), &n(other, j), q),
                zq_mul(&n(self, j), &n(other, i), q),
            );
            if !zero(c) {
                return false;
            }
        }
        let d = (self.offset.clone(), self.offset_root.clone());
        let e = (other.offset.clone(), other.offset_root.clone());
        (0..3).all(|k| zero(zq_sub(zq_mul(&n(self, k), &e, q), zq_mul(&n(other, k), &d, q))))
    }

    /// Converts into ℚ[√r] with the given field, whose radicand must be `r`.
    pub fn to_oriented(&self, field: &QuadField) -> Result<OrientedPlane> {
        debug_assert!(self.rational || field.radicand() == &Rational::from_integer(self.radicand.clone()));
        let e = |x: &BigInt, y: &BigInt| {
            field.element(Rational::from_integer(x.clone()), Rational::from_integer(y.clone()))
        };
        OrientedPlane::new(
            Vec3::new(
                e(&self.normal.x, &self.normal_root.x),
                e(&self.normal.y, &self.normal_root.y),
                e(&self.normal.z, &self.normal_root.z),
            ),
            e(&self.offset, &self.offset_root),
        )
    }
}

/// `(a + b√q)(c + d√q)` in ℤ[√q].
pub fn zq_mul(l: &(BigInt, BigInt), r: &(BigInt, BigInt), q: &BigInt) -> (BigInt, BigInt) {
    (&l.0 * &r.0 + &(&l.1 * &r.1) * q, &l.0 * &r.1 + &l.1 * &r.0)
}

pub fn zq_sub(l: (BigInt, BigInt), r: (BigInt, BigInt)) -> (BigInt, BigInt) {
    (l.0 - r.0, l.1 - r.1)
}

impl Vec3<BigInt> {
    /// Sign-canonical orientation: first nonzero coordinate positive.
    pub fn canonical_orientation(self) -> Vec3<BigInt> {
        let flip = self
            .as_array()
            .into_iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        if flip {
            self.neg()
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    fn plane(n: [i64; 3], d: i64) -> OrientedPlane {
        OrientedPlane::from_integers(Vec3::<BigInt>::from_i64(n[0], n[1], n[2]), d.into()).unwrap()
    }

    #[test]
    fn side_examples() {
        let h = plane([0, 0, 1], 0);
        assert_eq!(side_of_plane(&Point3::new(0, 0, 5), &h).unwrap(), Sign::Positive);
        assert_eq!(side_of_plane(&Point3::new(1, 2, 0), &h).unwrap(), Sign::Zero);
        let g = plane([1, 1, -3], 0);
        assert_eq!(side_of_plane(&Point3::new(1, 1, 1), &g).unwrap(), Sign::Negative);
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            OrientedPlane::from_integers(Vec3::<BigInt>::from_i64(0, 0, 0), 1.into()),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn integral_conversion_preserves_sides() {
        let f = QuadField::new(ratio(3, 2));
        let e = |x: Rational, y: Rational| f.element(x, y);
        let h = OrientedPlane::new(
            Vec3::new(e(ratio(1, 3), rat(1)), e(rat(-2), ratio(1, 5)), e(rat(0), rat(-1))),
            e(ratio(7, 4), ratio(-2, 3)),
        )
        .unwrap();
        let ih = h.to_integral();
        for x in -4..=4 {
            for y in -4..=4 {
                for z in -4..=4 {
                    let p = Point3::new(x, y, z);
                    assert_eq!(side_of_plane(&p, &h).unwrap(), ih.side(&p.to_vec()));
                }
            }
        }
    }

    #[test]
    fn same_plane_ignores_scale_and_orientation() {
        let h = plane([1, 2, 3], 4);
        assert!(h.same_plane(&h.scaled(&ratio(-5, 7))));
        assert!(!h.same_plane(&plane([1, 2, 3], 5)));
        assert!(!h.same_plane(&plane([1, 2, 4], 4)));
    }

    #[test]
    fn canonical_orientation() {
        let h = plane([0, -2, 1], 3).canonical().unwrap();
        assert_eq!(h, plane([0, 2, -1], -3));
    }
}
