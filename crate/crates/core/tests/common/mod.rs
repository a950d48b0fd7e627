#![allow(dead_code)]

use proptest::prelude::*;
use pseudospin_core::{ComplexVector3, Operator2, Rotation3C, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
}

pub fn field() -> impl Strategy<Value = ComplexVector3> {
    (complex(), complex(), complex()).prop_map(|(x, y, z)| ComplexVector3::new(x, y, z))
}

pub fn real_field() -> impl Strategy<Value = ComplexVector3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(x, y, z)| ComplexVector3::new(c(x, 0.0), c(y, 0.0), c(z, 0.0)))
}

/// Rotation by the complex angle `theta` in the plane of axes `i`, `j`.
pub fn plane_rotation(i: usize, j: usize, theta: C64) -> Rotation3C {
    let mut r = Rotation3C::identity();
    let (s, co) = (theta.sin(), theta.cos());
    r.0[i][i] = co;
    r.0[j][j] = co;
    r.0[i][j] = -s;
    r.0[j][i] = s;
    r
}

/// Complex orthogonal matrix from three plane rotations and an optional
/// reflection.
pub fn complex_orthogonal() -> impl Strategy<Value = Rotation3C> {
    (complex(), complex(), complex(), any::<bool>()).prop_map(|(a, b, g, reflect)| {
        let mut r = plane_rotation(0, 1, a) * plane_rotation(1, 2, b) * plane_rotation(0, 2, g);
        if reflect {
            r = r * Rotation3C::from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        }
        r
    })
}

/// `(F, B)` with `B = (B1, 0, B3)` real and `F` its image under a complex
/// rotation in the 1-3 plane, so `F^2 = B^2`; both first components are
/// kept away from zero.
pub fn plane_pair() -> impl Strategy<Value = (ComplexVector3, ComplexVector3)> {
    (0.2..1.5f64, any::<bool>(), -1.5..1.5f64, -0.6..0.6f64, -0.6..0.6f64)
        .prop_map(|(b1, neg, b3, re, im)| {
            let b1 = if neg { -b1 } else { b1 };
            let b = ComplexVector3::new(c(b1, 0.0), c(0.0, 0.0), c(b3, 0.0));
            let f = plane_rotation(0, 2, c(re, im)).apply(&b);
            (f, b)
        })
        .prop_filter("F1 away from zero", |(f, _)| f.x.norm() > 0.1)
}

/// Invertible 2x2 operator with `|det| >= 0.2`.
pub fn invertible() -> impl Strategy<Value = Operator2> {
    (complex(), complex(), complex(), complex())
        .prop_map(|(a, b, cc, d)| Operator2::new(a, b, cc, d))
        .prop_filter("well conditioned", |m| m.det().norm() >= 0.2)
}

/// Hermitian positive-definite metric `P^dagger P + 0.1 I`.
pub fn metric() -> impl Strategy<Value = Operator2> {
    (complex(), complex(), complex(), complex()).prop_map(|(a, b, cc, d)| {
        let p = Operator2::new(a, b, cc, d);
        let eta = p.dagger() * p + Operator2::identity().scale(c(0.1, 0.0));
        (eta + eta.dagger()).scale(c(0.5, 0.0))
    })
}
