use std::ops::{Mul, Neg};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(v: &T) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.to_i8() * rhs.to_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

/// Exact sign of `x + y·√q` for `q ≥ 0`.
///
/// Only when `x` and `y` disagree in sign is a comparison of `x²` with `y²·q`
/// needed.
pub fn sign_with_root<T>(x: &T, y: &T, q: &T) -> Sign
where
    T: Signed + Ord,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let sx = Sign::of(x);
    let sy = if q.is_zero() { Sign::Zero } else { Sign::of(y) };
    if sy == Sign::Zero {
        return sx;
    }
    if sx == Sign::Zero || sx == sy {
        return sy;
    }
    let xx = x * x;
    let yyq = &(y * y) * q;
    match xx.cmp(&yyq) {
        std::cmp::Ordering::Greater => sx,
        std::cmp::Ordering::Less => sy,
        std::cmp::Ordering::Equal => Sign::Zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(x: i64, y: i64, q: i64) -> Sign {
        sign_with_root(&BigInt::from(x), &BigInt::from(y), &BigInt::from(q))
    }

    #[test]
    fn integer_cases() {
        assert_eq!(s(1, 0, 7), Sign::Positive);
        assert_eq!(s(-3, 2, 2), Sign::Negative);
        assert_eq!(s(3, -2, 2), Sign::Positive);
        assert_eq!(s(-2, 1, 4), Sign::Zero);
        assert_eq!(s(0, -1, 5), Sign::Negative);
        assert_eq!(s(-1, 100, 0), Sign::Negative);
        assert_eq!(s(0, 0, 3), Sign::Zero);
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Negative * Sign::Negative, Sign::Positive);
        assert_eq!(Sign::Zero * Sign::Negative, Sign::Zero);
        assert_eq!(-Sign::Positive, Sign::Negative);
    }
}
