//! Pseudo-Hermiticity: classification, the complex canonical rotation
//! between a complex field `F` and a real field `B`, and the isometry /
//! metric pair fixed by the canonical limit.
//!
//! Everything beyond [`is_pseudo_hermitian`] and [`eta_adjoint`] works in the
//! 1-3 plane (`F2 = B2 = 0`), the only case with a closed-form rotation.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::linalg::{
    field_square, hamiltonian_from_field, principal_sqrt, validate_metric, ComplexVector3,
    Operator2, Spinor, C64, DEFAULT_TOL, ONE, REAL_TOL, ZERO,
};

/// A 3x3 complex matrix acting on fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3C(pub [[C64; 3]; 3]);

impl Rotation3C {
    pub fn identity() -> Self {
        let mut m = [[ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Self(m)
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        Self(m.map(|row| row.map(C64::from)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[ZERO; 3]; 3];
        for (i, row) in self.0.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[j][i] = *v;
            }
        }
        Self(out)
    }

    pub fn dagger(&self) -> Self {
        let t = self.transpose();
        Self(t.0.map(|row| row.map(|z| z.conj())))
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply(&self, v: &ComplexVector3) -> ComplexVector3 {
        let a = v.to_array();
        let row = |r: &[C64; 3]| r[0] * a[0] + r[1] * a[1] + r[2] * a[2];
        ComplexVector3::new(row(&self.0[0]), row(&self.0[1]), row(&self.0[2]))
    }

    pub fn max_abs_diff(&self, other: &Rotation3C) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `|R R^T - I|_max <= tol`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        (*self * self.transpose()).max_abs_diff(&Self::identity()) <= tol
    }
}

impl Mul for Rotation3C {
    type Output = Rotation3C;
    fn mul(self, rhs: Rotation3C) -> Rotation3C {
        let mut out = [[ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Rotation3C(out)
    }
}

/// True iff `det H` is real and non-positive within `tol`, i.e. `F^2` is a
/// non-negative real number and the spectrum is real.
pub fn is_pseudo_hermitian(h: &Operator2, tol: f64) -> Result<bool> {
    let trace = h.trace().norm();
    if trace > DEFAULT_TOL * h.norm().max(1.0) {
        return Err(Error::NonTraceless { trace });
    }
    let det = h.det();
    Ok(det.im.abs() <= tol * det.re.abs().max(1.0) && det.re <= tol)
}

fn check_plane_pair(f: &ComplexVector3, b: &ComplexVector3) -> Result<()> {
    let scale = f.norm().max(b.norm()).max(1.0);
    if f.y.norm() > REAL_TOL * scale || b.y.norm() > REAL_TOL * scale {
        return Err(Error::PlaneRestrictionViolated { f2: f.y.norm(), b2: b.y.norm() });
    }
    let bsq = b.x * b.x + b.z * b.z;
    let fsq = f.x * f.x + f.z * f.z;
    if bsq.norm() <= DEFAULT_TOL * scale * scale {
        return Err(Error::DegenerateField);
    }
    let mismatch = (fsq - bsq).norm();
    if mismatch > REAL_TOL * bsq.norm().max(1.0) {
        return Err(Error::NormMismatch { mismatch });
    }
    Ok(())
}

/// The complex-orthogonal involution taking `B` to `F` in the 1-3 plane.
///
/// ```text
///            1        ( F1 B1 - B3 F3        0        F1 B3 + B1 F3    )
/// R = -------------   (      0         -(B1^2+B3^2)        0           )
///     B1^2 + B3^2     ( F1 B3 + B1 F3        0      -(F1 B1 - B3 F3)   )
/// ```
///
/// Requires `F2 = B2 = 0` and `F1^2 + F3^2 = B1^2 + B3^2 != 0`.
pub fn canonical_rotation(f: &ComplexVector3, b: &ComplexVector3) -> Result<Rotation3C> {
    check_plane_pair(f, b)?;
    let n = b.x * b.x + b.z * b.z;
    let p = f.x * b.x - b.z * f.z;
    let q = f.x * b.z + b.x * f.z;
    let inv = n.inv();
    Ok(Rotation3C([
        [p * inv, ZERO, q * inv],
        [ZERO, -ONE, ZERO],
        [q * inv, ZERO, -p * inv],
    ]))
}

/// Real field selected by the canonical limit for a family `alpha -> F(alpha)`.
///
/// Returns `B = [sqrt(F(alpha)^2) / |F(0)|] F(0)`: parallel to the
/// `alpha -> 0` field, with `B^2 = F^2` and the sign giving `B.F(0) > 0`.
pub fn canonical_limit_field<Fam>(family: Fam, alpha: f64) -> Result<ComplexVector3>
where
    Fam: Fn(f64) -> ComplexVector3,
{
    let limit = family(0.0);
    if !limit.is_real(REAL_TOL) || limit.re().norm() == 0.0 {
        return Err(Error::NonRealLimit);
    }
    let f = family(alpha);
    let fsq = field_square(&f);
    if !(fsq.im.abs() <= REAL_TOL * fsq.re.abs().max(1.0) && fsq.re >= 0.0) {
        return Err(Error::NonPseudoHermitian { re: fsq.re, im: fsq.im });
    }
    let limit = limit.re();
    let scale = fsq.re.sqrt() / limit.norm();
    Ok(ComplexVector3::from_real(limit.scale(scale)))
}

/// An eigenvector in the unnormalized convention `((F3 +- E)/F1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub vector: Spinor,
    pub value: C64,
}

/// Eigenpairs `(phi+, E+), (phi-, E-)` of `H = (1/2) sigma.F` for a field in
/// the 1-3 plane: `phi+- = ((F3 +- E_F)/F1, 1)`, `E+- = +-E_F/2`.
pub fn eigenpairs_complex(f: &ComplexVector3) -> Result<(EigenPair, EigenPair)> {
    let scale = f.norm().max(1.0);
    if f.y.norm() > REAL_TOL * scale {
        return Err(Error::PlaneRestrictionViolated { f2: f.y.norm(), b2: 0.0 });
    }
    if f.x.norm() <= DEFAULT_TOL * scale {
        return Err(Error::SingularEigenbasis);
    }
    let e = principal_sqrt(f.x * f.x + f.z * f.z);
    let vec = |sign: f64| Spinor::new((f.z + e * sign) / f.x, ONE);
    Ok((
        EigenPair { vector: vec(1.0), value: e * 0.5 },
        EigenPair { vector: vec(-1.0), value: -e * 0.5 },
    ))
}

/// Isometry `M` and metric `eta = (M M^dagger)^-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricPair {
    pub isometry: Operator2,
    pub metric: Operator2,
}

impl MetricPair {
    /// The canonical (trivial) pair `M = eta = I`.
    pub fn identity() -> Self {
        Self { isometry: Operator2::identity(), metric: Operator2::identity() }
    }

    /// `M^-1`.
    pub fn isometry_inverse(&self) -> Operator2 {
        self.isometry
            .inverse(0.0)
            .expect("isometry of a metric pair is invertible")
    }

    /// Equivalent operator `A' = M A M^-1` acting on the eta space.
    pub fn dress(&self, a: &Operator2) -> Operator2 {
        self.isometry * *a * self.isometry_inverse()
    }

    /// `M^-1 A' M`.
    pub fn undress(&self, a: &Operator2) -> Operator2 {
        self.isometry_inverse() * *a * self.isometry
    }

    /// `phi' = M phi`.
    pub fn map_state(&self, phi: &Spinor) -> Spinor {
        self.isometry.apply(phi)
    }
}

/// Isometry mapping the eigenvectors of `H_B` onto those of `H_F`.
///
/// `M = (1/F1) [[B1, F3 - B3], [0, F1]]`, so `M phi+- = phi'+-` for the
/// unnormalized eigenvectors of [`eigenpairs_complex`], and
/// `H_F = M H_B M^-1`.
pub fn build_isometry(f: &ComplexVector3, b: &ComplexVector3) -> Result<MetricPair> {
    check_plane_pair(f, b)?;
    let scale = f.norm().max(b.norm()).max(1.0);
    if f.x.norm() <= DEFAULT_TOL * scale || b.x.norm() <= DEFAULT_TOL * scale {
        return Err(Error::SingularEigenbasis);
    }
    let isometry = Operator2::new(ONE * b.x, f.z - b.z, ZERO, f.x).scale(f.x.inv());
    let mmd = isometry * isometry.dagger();
    let metric = mmd.inverse(DEFAULT_TOL).ok_or(Error::SingularMetric)?;
    // Symmetrise away round-off so downstream Hermiticity checks are exact.
    let metric = (metric + metric.dagger()).scale(C64::new(0.5, 0.0));
    validate_metric(&metric, REAL_TOL)?;
    Ok(MetricPair { isometry, metric })
}

/// Canonical-limit metric pair for a single complex field: the real field
/// is chosen from the family `s -> Re F + i s Im F`.
pub fn metric_for_field(f: &ComplexVector3) -> Result<(ComplexVector3, MetricPair)> {
    let (re, im) = (f.re().to_complex(), f.im().to_complex());
    let b = canonical_limit_field(|s| re + im.scale(C64::new(0.0, s)), 1.0)?;
    Ok((b, build_isometry(f, &b)?))
}

/// `T^+ = eta^-1 T^dagger eta`, the adjoint under the eta inner product.
pub fn eta_adjoint(t: &Operator2, eta: &Operator2) -> Result<Operator2> {
    let inv = eta.inverse(DEFAULT_TOL).ok_or(Error::SingularMetric)?;
    Ok(inv * t.dagger() * *eta)
}

/// True when `H = H^+` under `eta` within `tol`.
pub fn is_eta_hermitian(h: &Operator2, eta: &Operator2, tol: f64) -> Result<bool> {
    Ok(eta_adjoint(h, eta)?.max_abs_diff(h) <= tol * h.norm().max(1.0))
}

/// `H_F` and `H_B` of a valid plane pair.
pub fn hamiltonian_pair(f: &ComplexVector3, b: &ComplexVector3) -> (Operator2, Operator2) {
    (hamiltonian_from_field(f), hamiltonian_from_field(b))
}
