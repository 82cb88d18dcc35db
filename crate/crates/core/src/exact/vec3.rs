use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::quadext::{QuadExt, QuadField};
use super::rational::Rational;

/// A 3-vector over any exact ring (integers, rationals, ℚ[√q]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn as_array(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Vec3<U> {
        Vec3::new(f(&self.x), f(&self.y), f(&self.z))
    }
}

impl<T> Vec3<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn dot(&self, o: &Vec3<T>) -> T {
        let xy = &(&self.x * &o.x) + &(&self.y * &o.y);
        &xy + &(&self.z * &o.z)
    }

    pub fn cross(&self, o: &Vec3<T>) -> Vec3<T> {
        Vec3::new(
            &(&self.y * &o.z) - &(&self.z * &o.y),
            &(&self.z * &o.x) - &(&self.x * &o.z),
            &(&self.x * &o.y) - &(&self.y * &o.x),
        )
    }

    pub fn add(&self, o: &Vec3<T>) -> Vec3<T> {
        Vec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &Vec3<T>) -> Vec3<T> {
        Vec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, k: &T) -> Vec3<T> {
        Vec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }
}

impl<T> Vec3<T>
where
    for<'a> &'a T: Neg<Output = T>,
{
    pub fn neg(&self) -> Vec3<T> {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Vec3<BigInt> {
    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(x.into(), y.into(), z.into())
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn to_rational(&self) -> Vec3<Rational> {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    pub fn to_quad(&self, field: &QuadField) -> Vec3<QuadExt> {
        self.map(|c| field.rational(Rational::from_integer(c.clone())))
    }
}

impl Vec3<Rational> {
    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
            Rational::from_integer(z.into()),
        )
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn to_quad(&self, field: &QuadField) -> Vec3<QuadExt> {
        self.map(|c| field.rational(c.clone()))
    }
}

impl Vec3<QuadExt> {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn cross_is_orthogonal(a in prop::array::uniform6(-1_000_000i64..1_000_000)) {
            let u = Vec3::<BigInt>::from_i64(a[0], a[1], a[2]);
            let v = Vec3::<BigInt>::from_i64(a[3], a[4], a[5]);
            let w = u.cross(&v);
            prop_assert!(w.dot(&u).is_zero());
            prop_assert!(w.dot(&v).is_zero());
        }
    }

    #[test]
    fn quad_cross_is_orthogonal() {
        let f = QuadField::new(Rational::from_integer(5.into()));
        let e = |x: i64, y: i64| f.element(Rational::from_integer(x.into()), Rational::from_integer(y.into()));
        let u = Vec3::new(e(1, 2), e(-3, 1), e(0, 7));
        let v = Vec3::new(e(4, 0), e(2, -1), e(1, 1));
        let w = u.cross(&v);
        assert!(w.dot(&u).is_zero());
        assert!(w.dot(&v).is_zero());
    }
}
