//! Rational orthogonal frames generated from integer quaternions.
//!
//! The rotation matrix of an integer quaternion `q`, scaled by `|q|²`, has
//! integer entries and mutually orthogonal rows of equal length, so every
//! frame produced here is exactly orthogonal.

use num_bigint::BigInt;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::exact::Vec3;

/// Rows of `|q|²·R(q)` for the quaternion `q = w + xi + yj + zk`.
pub fn quaternion_frame(q: [i64; 4]) -> [[i128; 3]; 3] {
    let [w, x, y, z] = q.map(i128::from);
    [
        [w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z],
    ]
}

/// A nonzero integer quaternion whose direction is close to uniform on S³:
/// a Gaussian 4-vector scaled by `scale` and rounded.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> [i64; 4] {
    loop {
        let q: [i64; 4] = std::array::from_fn(|_| {
            let g: f64 = StandardNormal.sample(rng);
            (g * scale).round() as i64
        });
        if q.iter().any(|&c| c != 0) {
            return q;
        }
    }
}

pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> [Vec3<BigInt>; 3] {
    quaternion_frame(random_quaternion(rng, scale)).map(|r| Vec3::new(r[0].into(), r[1].into(), r[2].into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frames_are_orthogonal_with_equal_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let f = random_frame(&mut rng, 1000.0);
            assert!(f[0].dot(&f[1]).is_zero());
            assert!(f[0].dot(&f[2]).is_zero());
            assert!(f[1].dot(&f[2]).is_zero());
            assert_eq!(f[0].norm_squared(), f[1].norm_squared());
            assert_eq!(f[1].norm_squared(), f[2].norm_squared());
        }
    }

    #[test]
    fn identity_quaternion() {
        assert_eq!(quaternion_frame([1, 0, 0, 0]), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }
}
