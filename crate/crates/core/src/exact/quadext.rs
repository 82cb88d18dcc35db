//! Elements `x + y·√q` of the real quadratic field ℚ[√q].
//!
//! Values combined in one expression must share the radicand `q`; combining
//! two irrational values over different radicands is a contract violation
//! and panics. Rational values embed into every field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{fraction_string, rational_sqrt, Rational};
use super::sign::{sign_with_root, Sign};
use crate::error::{Error, Result};

#[derive(Debug)]
struct Radicand {
    value: Rational,
    /// Set when `value` is the square of a rational; elements then collapse to
    /// their rational part.
    sqrt: Option<Rational>,
}

/// Handle to a shared radicand. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct QuadField(Arc<Radicand>);

impl QuadField {
    pub fn new(q: Rational) -> Self {
        let sqrt = rational_sqrt(&q);
        QuadField(Arc::new(Radicand { value: q, sqrt }))
    }

    /// ℚ embedded as ℚ[√0].
    pub fn rationals() -> Self {
        Self::new(Rational::zero())
    }

    pub fn radicand(&self) -> &Rational {
        &self.0.value
    }

    /// True when √q is itself rational (including q = 0).
    pub fn is_degenerate(&self) -> bool {
        self.0.sqrt.is_some()
    }

    pub fn element(&self, x: Rational, y: Rational) -> QuadExt {
        match &self.0.sqrt {
            Some(root) => QuadExt {
                rat: x + y * root,
                rad: Rational::zero(),
                field: self.clone(),
            },
            None => QuadExt {
                rat: x,
                rad: y,
                field: self.clone(),
            },
        }
    }

    pub fn rational(&self, x: Rational) -> QuadExt {
        QuadExt {
            rat: x,
            rad: Rational::zero(),
            field: self.clone(),
        }
    }

    pub fn zero(&self) -> QuadExt {
        self.rational(Rational::zero())
    }

    pub fn one(&self) -> QuadExt {
        self.rational(Rational::one())
    }

    pub fn same_as(&self, other: &QuadField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.value == other.0.value
    }
}

impl Eq for QuadField {}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[derive(Clone)]
pub struct QuadExt {
    rat: Rational,
    rad: Rational,
    field: QuadField,
}

impl QuadExt {
    /// Builds `x + y·√q` in a fresh field. Prefer [`QuadField::element`] when
    /// several values must share `q`.
    pub fn new(x: Rational, y: Rational, q: Rational) -> Self {
        QuadField::new(q).element(x, y)
    }

    pub fn from_rational(x: Rational) -> Self {
        QuadField::rationals().rational(x)
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn rad_part(&self) -> &Rational {
        &self.rad
    }

    pub fn radicand(&self) -> &Rational {
        self.field.radicand()
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// Exact sign of the real number `x + y·√q`.
    pub fn sign(&self) -> Result<Sign> {
        let q = self.radicand();
        if q.is_negative() {
            return Err(Error::InvalidRadicand(fraction_string(q)));
        }
        Ok(sign_with_root(&self.rat, &self.rad, q))
    }

    /// Exact zero test; valid for any radicand since the representation is
    /// canonical whenever √q is irrational.
    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt {
            rat: self.rat.clone(),
            rad: -&self.rad,
            field: self.field.clone(),
        }
    }

    /// Field norm `x² − y²·q`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.rad * &self.rad * self.radicand()
    }

    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Irrational √q (or q < 0 with y ≠ 0 handled formally): norm ≠ 0.
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt {
            rat: &self.rat / &n,
            rad: -&self.rad / &n,
            field: self.field.clone(),
        })
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt {
            rat: &self.rat * k,
            rad: &self.rad * k,
            field: self.field.clone(),
        }
    }

    /// Float approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let q = self.radicand().to_f64().unwrap_or(f64::NAN);
        self.rat.to_f64().unwrap_or(f64::NAN) + self.rad.to_f64().unwrap_or(f64::NAN) * q.sqrt()
    }

    /// Field of a binary operation's result. A rational operand embeds into
    /// any ℚ[√q]; two irrational operands must share the radicand.
    fn joint_field(&self, other: &QuadExt) -> QuadField {
        if self.field.same_as(&other.field) || other.rad.is_zero() {
            return self.field.clone();
        }
        assert!(
            self.rad.is_zero(),
            "mixed radicands {} and {} in one expression",
            self.radicand(),
            other.radicand()
        );
        other.field.clone()
    }
}

/// Sign of an element of ℚ[√q].
pub fn quadext_sign(e: &QuadExt) -> Result<Sign> {
    e.sign()
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.rad == other.rad && (self.rad.is_zero() || self.field.same_as(&other.field))
    }
}

impl Eq for QuadExt {}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})", self.rat, self.rad, self.radicand())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{} + {}√{}", self.rat, self.rad, self.radicand())
        }
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let field = self.joint_field(rhs);
        QuadExt {
            rat: &self.rat + &rhs.rat,
            rad: &self.rad + &rhs.rad,
            field,
        }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let field = self.joint_field(rhs);
        QuadExt {
            rat: &self.rat - &rhs.rat,
            rad: &self.rad - &rhs.rad,
            field,
        }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let field = self.joint_field(rhs);
        let rat = &self.rat * &rhs.rat + &self.rad * &rhs.rad * field.radicand();
        let rad = &self.rat * &rhs.rad + &self.rad * &rhs.rat;
        QuadExt { rat, rad, field }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -&self.rat,
            rad: -&self.rad,
            field: self.field.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    fn qe(x: i64, y: i64, q: i64) -> QuadExt {
        QuadExt::new(rat(x), rat(y), rat(q))
    }

    #[test]
    fn sign_examples() {
        assert_eq!(qe(1, 0, 7).sign().unwrap(), Sign::Positive);
        assert_eq!(qe(-3, 2, 2).sign().unwrap(), Sign::Negative);
        assert_eq!(qe(-2, 1, 4).sign().unwrap(), Sign::Zero);
    }

    #[test]
    fn negative_radicand_is_rejected() {
        assert!(matches!(qe(1, 1, -2).sign(), Err(Error::InvalidRadicand(_))));
    }

    #[test]
    fn perfect_square_radicand_collapses() {
        let e = qe(-2, 1, 4);
        assert!(e.is_rational());
        assert!(e.is_zero());
        let f = QuadExt::new(rat(1), rat(1), ratio(9, 4));
        assert_eq!(f.rat_part(), &ratio(5, 2));
    }

    #[test]
    fn inverse_and_division() {
        let field = QuadField::new(rat(2));
        let e = field.element(rat(3), rat(-2));
        let one = &e * &e.inv().unwrap();
        assert_eq!(one, field.one());
        assert_eq!(field.zero().inv(), Err(Error::DivisionByZero));
        let d = field.element(rat(1), rat(1)).checked_div(&e).unwrap();
        assert_eq!(&d * &e, field.element(rat(1), rat(1)));
    }

    #[test]
    fn rational_values_embed_into_any_field() {
        let e = qe(1, 1, 2);
        let r = qe(3, 0, 5);
        assert_eq!(&e * &r, qe(3, 3, 2));
        assert_eq!(&r + &e, qe(4, 1, 2));
    }

    #[test]
    #[should_panic(expected = "mixed radicands")]
    fn mixing_radicands_panics() {
        let _ = &qe(1, 1, 2) + &qe(1, 1, 3);
    }
}
