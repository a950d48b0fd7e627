//! Closed-form complex linear algebra for two-level systems.
//!
//! Everything here works on fixed-size value types: 3-component complex
//! fields, 2x2 complex operators and 2-component spinors. The Pauli
//! decomposition `T = t0 I + t.sigma` is the workhorse; Hamiltonians are
//! `H = (1/2) sigma.F` with a complex field `F`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default absolute tolerance for structural checks on unit-scale inputs.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Relative tolerance used to decide whether a complex number is real.
pub const REAL_TOL: f64 = 1e-10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `|Im z| / max(1, |Re z|) < tol`.
pub fn is_real(z: C64, tol: f64) -> bool {
    z.im.abs() / z.re.abs().max(1.0) < tol
}

/// Principal square root with `Re >= 0`, ties broken towards `Im >= 0`.
pub fn principal_sqrt(z: C64) -> C64 {
    // Normalise signed zeros so that sqrt(-x - 0i) does not land on -i sqrt(x).
    let z = C64::new(z.re + 0.0, z.im + 0.0);
    let s = z.sqrt();
    if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
        -s
    } else {
        s
    }
}

/// A real 3-vector (classical Bloch vectors, real magnetic fields).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3::new(s * self.x, s * self.y, s * self.z)
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_complex(&self) -> ComplexVector3 {
        ComplexVector3::from_real(*self)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        rhs.scale(self)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Vec3::new(v[0], v[1], v[2])
    }
}

/// A triple of complex scalars: the external fields F and B.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVector3 {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl ComplexVector3 {
    pub const fn new(x: C64, y: C64, z: C64) -> Self {
        Self { x, y, z }
    }

    pub fn from_real(v: Vec3) -> Self {
        Self::new(v.x.into(), v.y.into(), v.z.into())
    }

    /// Build from `(re, im)` pairs.
    pub fn from_parts(parts: [(f64, f64); 3]) -> Self {
        Self::new(
            C64::new(parts[0].0, parts[0].1),
            C64::new(parts[1].0, parts[1].1),
            C64::new(parts[2].0, parts[2].1),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn to_array(&self) -> [C64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [C64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn re(&self) -> Vec3 {
        Vec3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(&self) -> Vec3 {
        Vec3::new(self.x.im, self.y.im, self.z.im)
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, other: &ComplexVector3) -> C64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Bilinear cross product.
    pub fn cross(&self, other: &ComplexVector3) -> ComplexVector3 {
        ComplexVector3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Hermitian (conjugated) Euclidean norm.
    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()).sqrt()
    }

    pub fn scale(&self, s: C64) -> ComplexVector3 {
        ComplexVector3::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn conj(&self) -> ComplexVector3 {
        ComplexVector3::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// True when every imaginary part is negligible relative to the vector.
    pub fn is_real(&self, tol: f64) -> bool {
        self.im().norm() <= tol * self.re().norm().max(1.0)
    }

    /// Largest component-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexVector3) -> f64 {
        let d = *self - *other;
        d.x.norm().max(d.y.norm()).max(d.z.norm())
    }
}

impl Add for ComplexVector3 {
    type Output = ComplexVector3;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for ComplexVector3 {
    type Output = ComplexVector3;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for ComplexVector3 {
    type Output = ComplexVector3;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Index<usize> for ComplexVector3 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("ComplexVector3 index {i} out of range"),
        }
    }
}

impl IndexMut<usize> for ComplexVector3 {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        match i {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("ComplexVector3 index {i} out of range"),
        }
    }
}

/// `F1^2 + F2^2 + F3^2` without conjugation.
pub fn field_square(f: &ComplexVector3) -> C64 {
    f.dot(f)
}

/// A 2x2 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Operator2(pub [[C64; 2]; 2]);

impl fmt::Debug for Operator2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

impl Operator2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new(m[0][0].into(), m[0][1].into(), m[1][0].into(), m[1][1].into())
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    /// Pauli matrix `sigma_{k+1}` for `k` in `0..3`.
    pub fn pauli(k: usize) -> Self {
        match k {
            0 => Self::new(ZERO, ONE, ONE, ZERO),
            1 => Self::new(ZERO, -I, I, ZERO),
            2 => Self::new(ONE, ZERO, ZERO, -ONE),
            _ => panic!("Pauli index {k} out of range"),
        }
    }

    /// `t0 I + t.sigma`.
    pub fn compose(t0: C64, t: &ComplexVector3) -> Self {
        Self::new(t0 + t.z, t.x - I * t.y, t.x + I * t.y, t0 - t.z)
    }

    /// Inverse of [`Operator2::compose`].
    pub fn decompose(&self) -> (C64, ComplexVector3) {
        let m = &self.0;
        let t0 = (m[0][0] + m[1][1]) * 0.5;
        let tz = (m[0][0] - m[1][1]) * 0.5;
        let tx = (m[0][1] + m[1][0]) * 0.5;
        let ty = (m[1][0] - m[0][1]) * (-I * 0.5);
        (t0, ComplexVector3::new(tx, ty, tz))
    }

    /// Field `F` such that a traceless `H = (1/2) sigma.F`.
    pub fn field(&self) -> ComplexVector3 {
        self.decompose().1.scale(C64::new(2.0, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Self::new(s * m[0][0], s * m[0][1], s * m[1][0], s * m[1][1])
    }

    /// Inverse, or `None` when `|det| <= tol * ||self||^2`.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let d = self.det();
        let scale = self.norm().powi(2).max(f64::MIN_POSITIVE);
        if d.norm() <= tol * scale {
            return None;
        }
        let m = &self.0;
        Some(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(d.inv()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Operator2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Operator2) -> Operator2 {
        *self * *other - *other * *self
    }

    /// `A B + B A`.
    pub fn anticommutator(&self, other: &Operator2) -> Operator2 {
        *self * *other + *other * *self
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + m[0][1].norm_sqr()).sqrt();
        [mean - half_gap, mean + half_gap]
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }
}

impl Add for Operator2 {
    type Output = Operator2;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Operator2 {
    type Output = Operator2;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-ONE)
    }
}

impl Mul for Operator2 {
    type Output = Operator2;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Spinor> for Operator2 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        self.apply(&rhs)
    }
}

/// `H = (1/2) sigma.F`.
pub fn hamiltonian_from_field(f: &ComplexVector3) -> Operator2 {
    Operator2::compose(ZERO, f).scale(C64::new(0.5, 0.0))
}

fn check_traceless(h: &Operator2, tol: f64) -> Result<()> {
    let trace = h.trace().norm();
    if trace > tol * h.norm().max(1.0) {
        return Err(Error::NonTraceless { trace });
    }
    Ok(())
}

/// Eigenvalues `(E+, E-)` of a traceless operator, `E+ = (1/2) sqrt(F^2)`
/// on the principal branch and `E- = -E+`.
pub fn spectrum(h: &Operator2) -> Result<(C64, C64)> {
    check_traceless(h, DEFAULT_TOL)?;
    let e = principal_sqrt(field_square(&h.field())) * 0.5;
    Ok((e, -e))
}

/// `exp(-i H t)` for traceless `H = (1/2) sigma.F`.
///
/// Uses `cos(Et/2) I - i sin(Et/2) (sigma.F)/E` with `E = sqrt(F^2)`. At an
/// exceptional point (`F^2 = 0`) `H` is nilpotent and the series stops at
/// `I - i H t`.
pub fn evolve_operator(h: &Operator2, t: f64) -> Result<Operator2> {
    check_traceless(h, DEFAULT_TOL)?;
    let f = h.field();
    let e = principal_sqrt(field_square(&f));
    if e.norm() < 1e-150 {
        return Ok(Operator2::identity() - h.scale(I * t));
    }
    let phase = e * (0.5 * t);
    let sigma_f = Operator2::compose(ZERO, &f);
    Ok(Operator2::identity().scale(phase.cos()) - sigma_f.scale(I * phase.sin() / e))
}

/// A bare two-component amplitude vector `(c+, c-)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor(pub [C64; 2]);

impl Spinor {
    pub const fn new(up: C64, down: C64) -> Self {
        Self([up, down])
    }

    pub fn from_real(up: f64, down: f64) -> Self {
        Self::new(up.into(), down.into())
    }

    /// Spin-up `(1, 0)`.
    pub fn up() -> Self {
        Self::from_real(1.0, 0.0)
    }

    /// Spin-down `(0, 1)`.
    pub fn down() -> Self {
        Self::from_real(0.0, 1.0)
    }

    pub fn scale(&self, s: C64) -> Spinor {
        Spinor([s * self.0[0], s * self.0[1]])
    }

    pub fn is_zero(&self) -> bool {
        self.0[0] == ZERO && self.0[1] == ZERO
    }

    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.0[0] - other.0[0]).norm().max((self.0[1] - other.0[1]).norm())
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1]])
    }
}

/// Which inner product a state is measured with.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Metric {
    #[default]
    Canonical,
    /// `<x, y>_eta = <x, eta y>`.
    Eta(Operator2),
}

impl Metric {
    /// The metric operator (`I` for the canonical product).
    pub fn operator(&self) -> Operator2 {
        match self {
            Metric::Canonical => Operator2::identity(),
            Metric::Eta(eta) => *eta,
        }
    }

    /// Checks that `eta` is Hermitian with positive eigenvalues.
    pub fn validate(&self, tol: f64) -> Result<()> {
        match self {
            Metric::Canonical => Ok(()),
            Metric::Eta(eta) => validate_metric(eta, tol),
        }
    }
}

/// `eta` must be Hermitian and positive-definite within `tol` (relative to
/// its norm).
pub fn validate_metric(eta: &Operator2, tol: f64) -> Result<()> {
    let scale = eta.norm().max(f64::MIN_POSITIVE);
    if !eta.is_hermitian(tol * scale.max(1.0)) {
        return Err(Error::InvalidMetric("not Hermitian".into()));
    }
    let [lo, _] = eta.hermitian_eigenvalues();
    if lo <= tol * scale {
        return Err(Error::InvalidMetric(format!(
            "smallest eigenvalue {lo:.3e} is not positive"
        )));
    }
    Ok(())
}

/// Sesquilinear form, antilinear in the first slot.
pub fn inner(x: &Spinor, y: &Spinor, metric: &Metric) -> Result<C64> {
    let y = match metric {
        Metric::Canonical => *y,
        Metric::Eta(eta) => {
            validate_metric(eta, REAL_TOL)?;
            eta.apply(y)
        }
    };
    Ok(inner_unchecked(x, &y))
}

/// `conj(x1) y1 + conj(x2) y2`.
pub(crate) fn inner_unchecked(x: &Spinor, y: &Spinor) -> C64 {
    x.0[0].conj() * y.0[0] + x.0[1].conj() * y.0[1]
}

/// `<x, eta y>` without validating `eta`, for hot loops that already did.
pub(crate) fn eta_inner(x: &Spinor, eta: &Operator2, y: &Spinor) -> C64 {
    inner_unchecked(x, &eta.apply(y))
}

/// A quantum state: amplitudes plus the inner product they are read with.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinState {
    pub amplitudes: Spinor,
    pub metric: Metric,
}

impl SpinState {
    pub fn canonical(amplitudes: Spinor) -> Self {
        Self { amplitudes, metric: Metric::Canonical }
    }

    pub fn with_metric(amplitudes: Spinor, metric: Metric) -> Self {
        Self { amplitudes, metric }
    }

    /// `<self, other>` using `self`'s metric.
    pub fn inner(&self, other: &SpinState) -> Result<C64> {
        inner(&self.amplitudes, &other.amplitudes, &self.metric)
    }

    /// `sqrt(<psi, psi>)` under the tagged metric.
    pub fn norm(&self) -> Result<f64> {
        Ok(self.inner(self)?.re.max(0.0).sqrt())
    }

    /// Rescaled to unit norm under the tagged metric.
    pub fn normalized(&self) -> Result<SpinState> {
        if self.amplitudes.is_zero() {
            return Err(Error::ZeroState);
        }
        let n = self.norm()?;
        Ok(SpinState {
            amplitudes: self.amplitudes.scale(C64::new(1.0 / n, 0.0)),
            metric: self.metric,
        })
    }
}
