//! Univariate polynomials over ℚ[√q] and Sturm-sequence root counting.

use super::quadext::{QuadExt, QuadField};
use super::rational::Rational;
use super::sign::Sign;
use crate::error::{Error, Result};

/// Dense polynomial, coefficients stored lowest degree first with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<QuadExt>,
    field: QuadField,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QuadExt>, field: QuadField) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, field }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &QuadExt) -> QuadExt {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer(k.into())))
            .collect();
        Poly::new(coeffs, self.field.clone())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.field.clone())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&factor * c);
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot, self.field.clone()), Poly::new(rem, self.field.clone())))
    }

    pub fn monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => {
                let inv = l.inv()?;
                Ok(Poly::new(
                    self.coeffs.iter().map(|c| c * &inv).collect(),
                    self.field.clone(),
                ))
            }
        }
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out repeated factors, keeping every distinct root once.
    pub fn square_free(&self) -> Result<Poly> {
        let g = self.gcd(&self.derivative())?;
        if g.degree().unwrap_or(0) == 0 {
            return Ok(self.clone());
        }
        Ok(self.div_rem(&g)?.0)
    }

    /// Sturm sequence `p, p', −rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Result<Vec<Poly>> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return Ok(seq);
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        Ok(seq)
    }

    /// Number of distinct real roots `t ≥ m`.
    pub fn count_roots_at_least(&self, m: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        let p = self.square_free()?;
        let seq = p.sturm_sequence()?;
        let at = self.field.rational(m.clone());
        let at_m = seq.iter().map(|s| s.eval(&at).sign()).collect::<Result<Vec<_>>>()?;
        let at_inf = seq
            .iter()
            .map(|s| s.leading().unwrap().sign())
            .collect::<Result<Vec<_>>>()?;
        let above = sign_variations(&at_m) - sign_variations(&at_inf);
        let on = usize::from(at_m[0] == Sign::Zero);
        Ok(above + on)
    }
}

fn sign_variations(signs: &[Sign]) -> usize {
    let nonzero: Vec<Sign> = signs.iter().copied().filter(|s| !s.is_zero()).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `c3·t³ + c2·t² + c1·t + c0` over a shared ℚ[√q].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    pub c3: QuadExt,
    pub c2: QuadExt,
    pub c1: QuadExt,
    pub c0: QuadExt,
}

impl CubicPoly {
    pub fn new(c3: QuadExt, c2: QuadExt, c1: QuadExt, c0: QuadExt) -> Self {
        CubicPoly { c3, c2, c1, c0 }
    }

    pub fn from_rationals(c: [Rational; 4]) -> Self {
        let f = QuadField::rationals();
        let [c3, c2, c1, c0] = c;
        CubicPoly::new(f.rational(c3), f.rational(c2), f.rational(c1), f.rational(c0))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(
            vec![self.c0.clone(), self.c1.clone(), self.c2.clone(), self.c3.clone()],
            self.c0.field().clone(),
        )
    }

    pub fn eval(&self, t: &QuadExt) -> QuadExt {
        self.to_poly().eval(t)
    }

    pub fn is_zero(&self) -> bool {
        [&self.c3, &self.c2, &self.c1, &self.c0].iter().all(|c| c.is_zero())
    }
}

/// Number of distinct real roots `t ≥ m` of `f`.
pub fn cubic_roots_at_least(f: &CubicPoly, m: &Rational) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    f.to_poly().count_roots_at_least(m)
}
