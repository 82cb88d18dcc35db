//! Floating-point filter for the hot loops.
//!
//! Every value carries a bound `m` on the absolute-value version of the
//! expression that produced it, so the rounding error of `v` is at most a
//! small multiple of `ε·m`. A sign is only reported when `|v|` clears `m` by
//! a wide margin; everything else is left to exact arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::Sign;

/// Relative margin for a certified sign. Expressions here are a few dozen
/// operations deep, so their error stays below `1e-14·m`.
const TOLERANCE: f64 = 1e-9;

/// A square root is only taken of values this far from zero.
const SQRT_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Approx {
    v: f64,
    m: f64,
}

impl Approx {
    /// An exactly representable value.
    pub(crate) fn exact(v: f64) -> Self {
        Approx { v, m: v.abs() }
    }

    pub(crate) fn value(self) -> f64 {
        self.v
    }

    /// The sign if it is certain.
    pub(crate) fn sign(self) -> Option<Sign> {
        certified_sign(self.v, self.m)
    }

    pub(crate) fn sqrt(self) -> Option<Approx> {
        if !(self.v.is_finite() && self.m.is_finite()) || self.v <= SQRT_MARGIN * self.m {
            return None;
        }
        let root = self.v.sqrt();
        Some(Approx {
            v: root,
            m: self.m / root,
        })
    }
}

pub(crate) fn certified_sign(v: f64, m: f64) -> Option<Sign> {
    if v.abs() > TOLERANCE * m && m.is_finite() {
        Some(if v > 0.0 { Sign::Positive } else { Sign::Negative })
    } else {
        None
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, o: Approx) -> Approx {
        Approx {
            v: self.v + o.v,
            m: self.m + o.m,
        }
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, o: Approx) -> Approx {
        Approx {
            v: self.v - o.v,
            m: self.m + o.m,
        }
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, o: Approx) -> Approx {
        Approx {
            v: self.v * o.v,
            m: self.m * o.m,
        }
    }
}

impl Mul<f64> for Approx {
    type Output = Approx;
    fn mul(self, k: f64) -> Approx {
        Approx {
            v: self.v * k,
            m: self.m * k.abs(),
        }
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx { v: -self.v, m: self.m }
    }
}

pub(crate) type AVec = [Approx; 3];

pub(crate) fn dot(a: &AVec, b: &AVec) -> Approx {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &AVec, b: &AVec) -> AVec {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn exact_vec(v: [f64; 3]) -> AVec {
    v.map(Approx::exact)
}

/// Whether some coordinate is certainly nonzero.
pub(crate) fn certainly_nonzero(u: &AVec) -> bool {
    u.iter()
        .any(|c| matches!(c.sign(), Some(Sign::Positive | Sign::Negative)))
}

/// Normals of the 2-2-2 system in floating point, or `None` when the filter
/// cannot certify the solution structure and exact arithmetic must decide.
pub(crate) enum Screen222 {
    NoRealSolution,
    Solutions(Vec<[AVec; 3]>),
    Uncertain,
}

/// Auxiliary pairs mirroring the exact solver's list.
fn aux_pairs() -> impl Iterator<Item = ([f64; 3], [f64; 3])> {
    std::iter::once(([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])).chain((0..7).map(|t| {
        let t = t as f64;
        ([t, -1.0, 0.0], [t * t, 0.0, -1.0])
    }))
}

/// Solves the 2-2-2 system for difference vectors `v` given as exact floats.
pub(crate) fn screen_222(v: &[[f64; 3]; 3]) -> Screen222 {
    let vs = v.map(exact_vec);
    let Some((a, b)) = aux_pairs().find(|(a, b)| {
        let n = cross(&exact_vec(*a), &exact_vec(*b));
        vs.iter().all(|vi| dot(&n, vi).value() != 0.0)
    }) else {
        return Screen222::Uncertain;
    };
    let (a, b) = (exact_vec(a), exact_vec(b));
    let av: [AVec; 3] = std::array::from_fn(|i| cross(&a, &vs[i]));
    let bv: [AVec; 3] = std::array::from_fn(|i| cross(&b, &vs[i]));
    let next = |i: usize| (i + 1) % 3;
    let ca: [Approx; 3] = std::array::from_fn(|i| dot(&av[i], &av[next(i)]));
    let cb: [Approx; 3] = std::array::from_fn(|i| dot(&av[i], &bv[next(i)]));
    let cc: [Approx; 3] = std::array::from_fn(|i| dot(&bv[i], &av[next(i)]));
    let cd: [Approx; 3] = std::array::from_fn(|i| dot(&bv[i], &bv[next(i)]));
    let (a_, b_, c_, d_) = (ca, cb, cc, cd);
    let r: [Approx; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a_[i] * b_[k] * d_[j] - a_[i] * c_[j] * d_[k] + a_[j] * b_[i] * d_[k] + a_[j] * c_[k] * d_[i]
            - a_[k] * b_[j] * d_[i]
            + a_[k] * c_[i] * d_[j]
            - b_[i] * b_[j] * b_[k]
            - c_[i] * c_[j] * c_[k]
    });
    let s: [Approx; 3] = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        -(a_[i] * a_[k] * d_[j]) + a_[i] * c_[j] * c_[k] - a_[j] * b_[i] * c_[k] + a_[k] * b_[i] * b_[j]
    });
    let t0 = -(a_[1] * d_[0] * d_[2]) + b_[1] * b_[2] * d_[0] - b_[2] * c_[0] * d_[1] + c_[0] * c_[1] * d_[2];
    let q = r[0] * r[0] - s[0] * t0 * 4.0;
    match q.sign() {
        None => return Screen222::Uncertain,
        Some(Sign::Negative) => return Screen222::NoRealSolution,
        _ => {}
    }
    if s.iter().any(|si| si.sign().is_none()) {
        return Screen222::Uncertain;
    }
    let Some(root) = q.sqrt() else {
        return Screen222::Uncertain;
    };
    let cand = |i: usize, eps: f64| -> AVec {
        let alpha = r[i] + root * eps;
        std::array::from_fn(|k| alpha * av[i][k] + s[i] * bv[i][k] * 2.0)
    };
    let maybe_orthogonal = |u: &AVec, w: &AVec| dot(u, w).sign().is_none();

    let mut out = Vec::with_capacity(2);
    for e1 in [1.0, -1.0] {
        let u1 = cand(0, e1);
        let u2s: Vec<AVec> = [1.0, -1.0]
            .into_iter()
            .map(|e| cand(1, e))
            .filter(|u2| maybe_orthogonal(&u1, u2))
            .collect();
        let u3s: Vec<AVec> = [1.0, -1.0]
            .into_iter()
            .map(|e| cand(2, e))
            .filter(|u3| maybe_orthogonal(&u1, u3))
            .collect();
        let ([u2], [u3]) = (u2s.as_slice(), u3s.as_slice()) else {
            return Screen222::Uncertain;
        };
        if !maybe_orthogonal(u2, u3) || ![&u1, u2, u3].iter().all(|u| certainly_nonzero(u)) {
            return Screen222::Uncertain;
        }
        out.push([u1, *u2, *u3]);
    }
    Screen222::Solutions(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_needs_margin() {
        let x = Approx::exact(1e20) + Approx::exact(1.0) - Approx::exact(1e20);
        assert_eq!(x.sign(), None);
        let y = Approx::exact(3.0) * Approx::exact(-2.0) + Approx::exact(1.0);
        assert_eq!(y.sign(), Some(Sign::Negative));
        assert_eq!(Approx::exact(0.0).sign(), None);
    }

    #[test]
    fn sqrt_refuses_near_zero() {
        let q = Approx::exact(1e10) - Approx::exact(1e10 - 1.0);
        assert!(q.sqrt().is_none());
        let r = Approx::exact(16.0).sqrt().unwrap();
        assert_eq!(r.value(), 4.0);
    }

    #[test]
    fn screened_normals_are_orthogonal() {
        let v = [[3.0, 1.0, -2.0], [1.0, 4.0, 1.0], [-2.0, 1.0, 5.0]];
        match screen_222(&v) {
            Screen222::Solutions(sols) => {
                assert_eq!(sols.len(), 2);
                for us in sols {
                    for i in 0..3 {
                        let ui: Vec<f64> = us[i].iter().map(|c| c.value()).collect();
                        let norm = ui.iter().map(|c| c * c).sum::<f64>().sqrt();
                        let along: f64 = (0..3).map(|k| ui[k] * v[i][k]).sum();
                        assert!(along.abs() < 1e-9 * norm);
                    }
                    let d = dot(&us[0], &us[1]);
                    assert!(d.sign().is_none());
                }
            }
            Screen222::NoRealSolution => {}
            Screen222::Uncertain => panic!("generic input should be certified"),
        }
    }
}
