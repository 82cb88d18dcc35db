use std::fmt;

use num_bigint::BigInt;

use super::quadext::{QuadExt, QuadField};
use super::vec3::Vec3;

/// A point with arbitrary-precision integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3([BigInt; 3]);

impl Point3 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Point3([x.into(), y.into(), z.into()])
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec3<BigInt> {
        let [x, y, z] = &self.0;
        Vec3::new(x.clone(), y.clone(), z.clone())
    }

    pub fn to_quad(&self, field: &QuadField) -> Vec3<QuadExt> {
        self.to_vec().to_quad(field)
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<[i64; 3]> {
        use num_traits::ToPrimitive;
        Some([self.0[0].to_i64()?, self.0[1].to_i64()?, self.0[2].to_i64()?])
    }
}

impl From<[i64; 3]> for Point3 {
    fn from(c: [i64; 3]) -> Self {
        Point3::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}
