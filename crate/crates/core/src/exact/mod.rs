//! Exact arithmetic kernel: rationals, ℚ[√q], vectors, planes and
//! Sturm-sequence root counting.

pub mod plane;
pub mod point;
pub mod poly;
pub mod quadext;
pub mod rational;
pub mod sign;
pub mod vec3;

pub use plane::{side_of_plane, IntegralPlane, OrientedPlane};
pub use point::Point3;
pub use poly::{cubic_roots_at_least, CubicPoly, Poly};
pub use quadext::{quadext_sign, QuadExt, QuadField};
pub use rational::Rational;
pub use sign::Sign;
pub use vec3::Vec3;
