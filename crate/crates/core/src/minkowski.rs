//! Linear algebra of Minkowski 3-space with signature (-, +, +).
//!
//! The first coordinate is the timelike one. Every other module builds on
//! [`inner`] and [`cross`]; the cross product is the unique bilinear map with
//! `inner(cross(a, b), c) == det(a, b, c)`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MinkowskiVec(pub [f64; 3]);

impl MinkowskiVec {
    pub const ZERO: Self = Self([0.0; 3]);

    pub const fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self([a1, a2, a3])
    }

    pub fn a1(&self) -> f64 {
        self.0[0]
    }

    pub fn a2(&self) -> f64 {
        self.0[1]
    }

    pub fn a3(&self) -> f64 {
        self.0[2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Minkowski square `<a, a>`.
    pub fn square(&self) -> f64 {
        inner(self, self)
    }

    /// Positive-definite (Euclidean) norm of the components, for error measures.
    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl From<[f64; 3]> for MinkowskiVec {
    fn from(a: [f64; 3]) -> Self {
        Self(a)
    }
}

impl Index<usize> for MinkowskiVec {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl Add for MinkowskiVec {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self([self.0[0] + b.0[0], self.0[1] + b.0[1], self.0[2] + b.0[2]])
    }
}

impl AddAssign for MinkowskiVec {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Sub for MinkowskiVec {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self([self.0[0] - b.0[0], self.0[1] - b.0[1], self.0[2] - b.0[2]])
    }
}

impl Neg for MinkowskiVec {
    type Output = Self;
    fn neg(self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<MinkowskiVec> for f64 {
    type Output = MinkowskiVec;
    fn mul(self, a: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec([self * a.0[0], self * a.0[1], self * a.0[2]])
    }
}

impl Mul<f64> for MinkowskiVec {
    type Output = MinkowskiVec;
    fn mul(self, s: f64) -> MinkowskiVec {
        s * self
    }
}

/// `<a, b> = -a1 b1 + a2 b2 + a3 b3`.
pub fn inner(a: &MinkowskiVec, b: &MinkowskiVec) -> f64 {
    -a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2]
}

/// Lorentzian cross product: the vector `w` with `inner(w, c) = det(a, b, c)`.
pub fn cross(a: &MinkowskiVec, b: &MinkowskiVec) -> MinkowskiVec {
    let [a1, a2, a3] = a.0;
    let [b1, b2, b3] = b.0;
    // Euclidean cross product with the first component negated (lowered index).
    MinkowskiVec([-(a2 * b3 - a3 * b2), a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
}

/// Determinant of the 3x3 matrix with rows `a`, `b`, `c`.
pub fn det3(a: &MinkowskiVec, b: &MinkowskiVec, c: &MinkowskiVec) -> f64 {
    let [a1, a2, a3] = a.0;
    let [b1, b2, b3] = b.0;
    let [c1, c2, c3] = c.0;
    a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Timelike,
    Null,
    Spacelike,
}

pub fn causal_character(a: &MinkowskiVec, tol: f64) -> CausalCharacter {
    let s = a.square();
    if s < -tol {
        CausalCharacter::Timelike
    } else if s > tol {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Null
    }
}

/// Default tolerance for [`causal_character`]: `1e-10 (1 + |<a, a>|)`.
pub fn default_causal_tol(a: &MinkowskiVec) -> f64 {
    1e-10 * (1.0 + a.square().abs())
}

/// Lorentz boost with rapidity `phi` mixing the timelike axis with axis `k` (1 or 2).
pub fn boost(a: &MinkowskiVec, k: usize, phi: f64) -> MinkowskiVec {
    assert!(k == 1 || k == 2, "boost axis must be spatial");
    let (ch, sh) = (phi.cosh(), phi.sinh());
    let mut out = *a;
    out.0[0] = ch * a.0[0] + sh * a.0[k];
    out.0[k] = sh * a.0[0] + ch * a.0[k];
    out
}

/// Rotation by `theta` in the spacelike (2, 3) plane.
pub fn rotate_spatial(a: &MinkowskiVec, theta: f64) -> MinkowskiVec {
    let (c, s) = (theta.cos(), theta.sin());
    MinkowskiVec([a.0[0], c * a.0[1] - s * a.0[2], s * a.0[1] + c * a.0[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a1: f64, a2: f64, a3: f64) -> MinkowskiVec {
        MinkowskiVec::new(a1, a2, a3)
    }

    /// Solve inner(w, e_k) = det(a, b, e_k) for w directly from the basis.
    fn cross_by_determinant(a: &MinkowskiVec, b: &MinkowskiVec) -> MinkowskiVec {
        let e = [v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0)];
        let d: Vec<f64> = e.iter().map(|ek| det3(a, b, ek)).collect();
        // inner(w, e1) = -w1, inner(w, e2) = w2, inner(w, e3) = w3
        v(-d[0], d[1], d[2])
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&v(1.0, 0.0, 0.0), &v(1.0, 0.0, 0.0)), -1.0);
        assert_eq!(inner(&v(0.0, 1.0, 0.0), &v(0.0, 1.0, 0.0)), 1.0);
        assert_eq!(inner(&v(1.0, 1.0, 0.0), &v(-1.0, 1.0, 0.0)), 2.0);
    }

    #[test]
    fn cross_examples() {
        let a = v(1.0, 0.0, 0.0);
        let b = v(0.0, 1.0, 0.0);
        let c = v(0.0, 0.0, 1.0);
        assert_eq!(cross_by_determinant(&a, &b), v(0.0, 0.0, 1.0));
        assert_eq!(cross(&a, &b), cross_by_determinant(&a, &b));
        assert_eq!(cross_by_determinant(&b, &c), v(-1.0, 0.0, 0.0));
        assert_eq!(cross(&b, &c), v(-1.0, 0.0, 0.0));
        let p = v(0.3, -2.0, 5.5);
        assert_eq!(cross(&p, &p), MinkowskiVec::ZERO);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(&v(1.0, 0.0, 0.0), 0.0), CausalCharacter::Timelike);
        assert_eq!(causal_character(&v(1.0, 1.0, 0.0), 0.0), CausalCharacter::Null);
        assert_eq!(causal_character(&v(0.0, 3.0, 4.0), 0.0), CausalCharacter::Spacelike);
        let a = v(1.0, 1.0 + 1e-13, 0.0);
        assert_eq!(causal_character(&a, default_causal_tol(&a)), CausalCharacter::Null);
    }

    #[test]
    fn boosts_preserve_inner() {
        let a = v(0.4, -1.2, 2.0);
        let b = v(-3.0, 0.5, 0.25);
        let (ba, bb) = (boost(&a, 1, 0.7), boost(&b, 1, 0.7));
        assert!((inner(&ba, &bb) - inner(&a, &b)).abs() < 1e-12);
        let (ra, rb) = (rotate_spatial(&a, 1.1), rotate_spatial(&b, 1.1));
        assert!((inner(&ra, &rb) - inner(&a, &b)).abs() < 1e-12);
    }
}
