//! The Rabi problem: a spin in `B_R(t) = (B cos wt, B sin wt, B_z)`, its
//! Gilbert-damped complex version, and the parameter sets for which the
//! damped Hamiltonian is pseudo-Hermitian so damping is suppressed.
//!
//! In the frame rotating with the drive the damped field is
//! `F = (c B, 0, c (B_z + i a) - w)` with `c = (1 + i alpha)/(1 + alpha^2)`;
//! `a` is the spin-transfer torque coefficient of a spin valve pinned along
//! z (zero for the plain damped Rabi problem).

use crate::error::{Error, Result};
use crate::linalg::{
    evolve_operator, hamiltonian_from_field, ComplexVector3, Operator2, Vec3, C64, I, ZERO,
};
use crate::pseudoherm::{build_isometry, MetricPair};

/// Parameters of the (damped) Rabi problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiParameters {
    /// Transverse drive amplitude.
    pub b: f64,
    /// Static longitudinal field.
    pub b_z: f64,
    /// Drive frequency.
    pub omega: f64,
    /// Gilbert damping parameter.
    pub alpha: f64,
    /// Spin-torque coefficient.
    pub a: f64,
}

impl RabiParameters {
    pub fn new(b: f64, b_z: f64, omega: f64, alpha: f64) -> Self {
        Self { b, b_z, omega, alpha, a: 0.0 }
    }

    pub fn with_spin_torque(self, a: f64) -> Self {
        Self { a, ..self }
    }

    /// `delta = B_z - w`.
    pub fn detuning(&self) -> f64 {
        self.b_z - self.omega
    }

    /// `Omega_R^2 = B^2 + delta^2`.
    pub fn rabi_frequency_sq(&self) -> f64 {
        self.b * self.b + self.detuning().powi(2)
    }

    pub fn rabi_frequency(&self) -> f64 {
        self.rabi_frequency_sq().sqrt()
    }

    /// `(1 + i alpha) / (1 + alpha^2)`.
    pub fn gilbert_factor(&self) -> C64 {
        C64::new(1.0, self.alpha) / (1.0 + self.alpha * self.alpha)
    }

    /// Rotating-frame field `(F, 0, Delta)`.
    pub fn rotating_frame_field(&self) -> ComplexVector3 {
        let c = self.gilbert_factor();
        ComplexVector3::new(c * self.b, ZERO, c * C64::new(self.b_z, self.a) - self.omega)
    }

    /// `F^2 + Delta^2` of the rotating-frame field.
    pub fn field_square(&self) -> C64 {
        crate::linalg::field_square(&self.rotating_frame_field())
    }
}

/// Lab-frame field `c (B cos wt, B sin wt, B_z + i a)`; the undamped Rabi
/// field `B_R(t)` when `alpha = a = 0`.
pub fn lab_frame_field(p: &RabiParameters, t: f64) -> ComplexVector3 {
    let (s, co) = (p.omega * t).sin_cos();
    let raw = ComplexVector3::new(
        (p.b * co).into(),
        (p.b * s).into(),
        C64::new(p.b_z, p.a),
    );
    raw.scale(p.gilbert_factor())
}

/// `R_z(w t) = exp(i w sigma_3 t / 2)`.
pub fn rz(omega: f64, t: f64) -> Operator2 {
    let half = 0.5 * omega * t;
    Operator2::diag(C64::new(0.0, half).exp(), C64::new(0.0, -half).exp())
}

const FRAME_SAMPLES: [f64; 7] = [0.0, 0.125, 0.31, 0.77, 1.3, 2.9, 5.3];

/// Transforms a lab-frame Hamiltonian into the frame rotating at `omega`:
/// `H_rot = i (dR_z/dt) R_z^-1 + R_z H_lab R_z^-1`.
///
/// The result must be time-independent; it is evaluated on a fixed set of
/// sample times and rejected with `NotRotatable` if it varies beyond `tol`.
pub fn to_rotating_frame<H>(h_lab: H, omega: f64, tol: f64) -> Result<Operator2>
where
    H: Fn(f64) -> Operator2,
{
    // i (dR_z/dt) R_z^-1 = -(w/2) sigma_3
    let frame_term = Operator2::pauli(2).scale(C64::new(-0.5 * omega, 0.0));
    let at = |t: f64| {
        let r = rz(omega, t);
        let r_inv = rz(-omega, t);
        frame_term + r * h_lab(t) * r_inv
    };
    let h0 = at(0.0);
    let variation = FRAME_SAMPLES
        .iter()
        .map(|&t| at(t).max_abs_diff(&h0))
        .fold(0.0, f64::max);
    if variation > tol * h0.norm().max(1.0) {
        return Err(Error::NotRotatable { variation });
    }
    Ok(h0)
}

/// `H_R = (1/2)(delta sigma_3 + B sigma_1)`.
pub fn rabi_hamiltonian(p: &RabiParameters) -> Operator2 {
    hamiltonian_from_field(&ComplexVector3::from_real(Vec3::new(p.b, 0.0, p.detuning())))
}

/// Largest entry-wise gap between the rotating-frame image of the lab-frame
/// damped field and the rotating-frame field `(cB, 0, c(B_z + ia) - w)`.
pub fn frame_consistency_gap(p: &RabiParameters) -> Result<f64> {
    let rotated = to_rotating_frame(
        |t| hamiltonian_from_field(&lab_frame_field(p, t)),
        p.omega,
        1e-10,
    )?;
    Ok(rotated.max_abs_diff(&hamiltonian_from_field(&p.rotating_frame_field())))
}

/// `<up, exp(-i H_R t) down> = -i (B/Omega_R) sin(Omega_R t / 2)` for the
/// undamped problem (`alpha` is not used).
pub fn rabi_amplitude(p: &RabiParameters, t: f64) -> C64 {
    let w = p.rabi_frequency();
    if w == 0.0 {
        return ZERO;
    }
    -I * (p.b / w) * (0.5 * w * t).sin()
}

/// `B^2 + delta^2 - alpha^2 w^2 + delta w (1 - alpha^2)`; zero exactly when
/// `F^2 + Delta^2` is real (for `a = 0`).
pub fn ph_condition_residual(p: &RabiParameters) -> f64 {
    let d = p.detuning();
    let (a2, w) = (p.alpha * p.alpha, p.omega);
    p.b * p.b + d * d - a2 * w * w + d * w * (1.0 - a2)
}

/// `Im(F^2 + Delta^2)` of the rotating-frame field, spin-torque shift included.
pub fn shifted_condition_residual(p: &RabiParameters) -> f64 {
    p.field_square().im
}

/// `B_z [w (1 + alpha^2) - B_z]`, the value `B^2` must take.
pub fn suppression_radicand(b_z: f64, omega: f64, alpha: f64) -> f64 {
    b_z * (omega * (1.0 + alpha * alpha) - b_z)
}

/// Positive drive amplitude `B` that makes the damped Rabi Hamiltonian
/// pseudo-Hermitian with a real spectrum.
///
/// A positive radicand with `B_z` in `(w, w (1 + alpha^2))` makes
/// `F^2 + Delta^2` real but negative; that window is rejected with
/// `ImaginaryFrequency`.
pub fn solve_suppression_b(b_z: f64, omega: f64, alpha: f64) -> Result<f64> {
    if b_z == 0.0 || alpha == 0.0 {
        return Err(Error::InvalidParameter("suppression needs B_z != 0 and alpha != 0".into()));
    }
    let radicand = suppression_radicand(b_z, omega, alpha);
    if !(radicand > 0.0) {
        return Err(Error::NoRealSolution { radicand });
    }
    let b = radicand.sqrt();
    check_real_frequency(&RabiParameters::new(b, b_z, omega, alpha))?;
    Ok(b)
}

fn check_real_frequency(p: &RabiParameters) -> Result<()> {
    let s = p.field_square();
    if s.re < -1e-12 * s.norm().max(1.0) {
        return Err(Error::ImaginaryFrequency { delta_omega: -s.re });
    }
    Ok(())
}

/// `B^2` for the spin-valve condition:
/// `w (1 + alpha^2) B_z - B_z^2 + (a/alpha)[alpha a - B_z (1 - alpha^2) + w (1 + alpha^2)]`.
pub fn spin_valve_radicand(b_z: f64, omega: f64, alpha: f64, a: f64) -> f64 {
    let a2 = alpha * alpha;
    suppression_radicand(b_z, omega, alpha)
        + (a / alpha) * (alpha * a - b_z * (1.0 - a2) + omega * (1.0 + a2))
}

/// Drive amplitude suppressing damping in a spin valve with torque `a`.
pub fn solve_suppression_spin_valve(b_z: f64, omega: f64, alpha: f64, a: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::InvalidParameter("spin-valve suppression needs alpha != 0".into()));
    }
    let radicand = spin_valve_radicand(b_z, omega, alpha, a);
    if !(radicand > 0.0) {
        return Err(Error::NoRealSolution { radicand });
    }
    let b = radicand.sqrt();
    check_real_frequency(&RabiParameters::new(b, b_z, omega, alpha).with_spin_torque(a))?;
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// No damping (`alpha = a = 0`).
    Hermitian,
    /// `F^2 + Delta^2` real and positive: unitary under the eta product.
    PseudoHermitian,
    NonPseudoHermitian,
    /// `delta = 0`: the critical point of the pseudo-Hermitian family.
    Critical,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Hermitian => "hermitian",
            Regime::PseudoHermitian => "pseudo_hermitian",
            Regime::NonPseudoHermitian => "non_pseudo_hermitian",
            Regime::Critical => "critical",
        }
    }
}

/// Regime of a parameter point; `tol` applies to `Im(F^2 + Delta^2)` relative
/// to `max(1, |F^2 + Delta^2|)`.
pub fn classify(p: &RabiParameters, tol: f64) -> Regime {
    if p.alpha == 0.0 && p.a == 0.0 {
        return Regime::Hermitian;
    }
    if p.detuning().abs() <= tol {
        return Regime::Critical;
    }
    let s = p.field_square();
    if s.im.abs() <= tol * s.norm().max(1.0) && s.re > tol {
        Regime::PseudoHermitian
    } else {
        Regime::NonPseudoHermitian
    }
}

/// A damped Rabi configuration whose rotating-frame Hamiltonian is
/// pseudo-Hermitian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoHermitianRabi {
    pub params: RabiParameters,
    /// `F = c B`.
    pub f: C64,
    /// `Delta = c (B_z + i a) - w`.
    pub delta: C64,
    /// `Omega^2 = F^2 + Delta^2` (equal to `-delta w` when `a = 0`).
    pub omega_sq: f64,
}

impl PseudoHermitianRabi {
    /// Validates that `F^2 + Delta^2` is real within `tol` and non-negative.
    /// `Omega^2 = 0` (the critical point) is accepted.
    pub fn new(params: RabiParameters, tol: f64) -> Result<Self> {
        let field = params.rotating_frame_field();
        let s = params.field_square();
        if s.im.abs() > tol * s.norm().max(1.0) {
            return Err(Error::NonPseudoHermitian { re: s.re, im: s.im });
        }
        if s.re < -tol {
            return Err(Error::ImaginaryFrequency { delta_omega: -s.re });
        }
        Ok(Self { params, f: field.x, delta: field.z, omega_sq: s.re.max(0.0) })
    }

    /// `Omega`.
    pub fn omega(&self) -> f64 {
        self.omega_sq.sqrt()
    }

    pub fn is_critical(&self) -> bool {
        self.omega_sq == 0.0 || self.params.detuning() == 0.0
    }

    pub fn field(&self) -> ComplexVector3 {
        ComplexVector3::new(self.f, ZERO, self.delta)
    }

    /// Rotating-frame `H_F`.
    pub fn hamiltonian(&self) -> Operator2 {
        hamiltonian_from_field(&self.field())
    }

    /// Real field of the canonical limit, `(Omega/Omega_R)(B, 0, delta)`.
    pub fn canonical_field(&self) -> ComplexVector3 {
        let p = &self.params;
        let k = self.omega() / p.rabi_frequency();
        ComplexVector3::from_real(Vec3::new(k * p.b, 0.0, k * p.detuning()))
    }

    /// Isometry and metric linking `H_B` and `H_F`.
    pub fn metric_pair(&self) -> Result<MetricPair> {
        build_isometry(&self.field(), &self.canonical_field())
    }
}

/// `<psi'+, exp(-i H_F t) psi'->_eta = -i (B/Omega_R) sin(Omega t / 2)`;
/// identically zero at the critical point.
pub fn ph_rabi_amplitude(pr: &PseudoHermitianRabi, t: f64) -> Result<C64> {
    let delta_omega = -pr.params.field_square().re;
    if delta_omega > 1e-12 {
        return Err(Error::ImaginaryFrequency { delta_omega });
    }
    if pr.is_critical() {
        return Ok(ZERO);
    }
    let p = &pr.params;
    Ok(-I * (p.b / p.rabi_frequency()) * (0.5 * pr.omega() * t).sin())
}

/// `Omega^2` from the rotating-frame data:
/// `Omega_R^2 + alpha^2/(1 - alpha^2)(Omega_R^2 - w^2)` for `alpha != +-1`,
/// `|delta Omega_R|` for `alpha = +-1`.
pub fn omega_squared(pr: &PseudoHermitianRabi) -> f64 {
    let p = &pr.params;
    let rabi_sq = p.rabi_frequency_sq();
    let a2 = p.alpha * p.alpha;
    if (a2 - 1.0).abs() < 1e-15 {
        (p.detuning() * rabi_sq.sqrt()).abs()
    } else {
        rabi_sq + a2 / (1.0 - a2) * (rabi_sq - p.omega * p.omega)
    }
}

/// Lab-frame (non-rotating) Hamiltonians of a pseudo-Hermitian Rabi problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonrotatingHamiltonians {
    pub problem: PseudoHermitianRabi,
    pub pair: MetricPair,
}

impl NonrotatingHamiltonians {
    /// `H'_B(t) = (1/2 Omega_R)[[d W + w W_R, B W e^{-iwt}], [B W e^{iwt}, -(d W + w W_R)]]`
    /// with `W = Omega`, `W_R = Omega_R`, `d = delta`.
    pub fn h_b(&self, t: f64) -> Operator2 {
        let p = &self.problem.params;
        let (w, wr) = (self.problem.omega(), p.rabi_frequency());
        let diag = C64::from((p.detuning() * w + p.omega * wr) / (2.0 * wr));
        let off = p.b * w / (2.0 * wr);
        Operator2::new(
            diag,
            C64::new(0.0, -p.omega * t).exp() * off,
            C64::new(0.0, p.omega * t).exp() * off,
            -diag,
        )
    }

    /// `H'_F(t) = M H'_B(t) M^-1`.
    pub fn h_f(&self, t: f64) -> Operator2 {
        self.pair.dress(&self.h_b(t))
    }

    /// Lab-frame evolution operator of `H'_F`, from the rotating-frame closed
    /// form: `M R_z(w t)^-1 exp(-i H_B t) M^-1`.
    pub fn evolution(&self, t: f64) -> Result<Operator2> {
        let hb = hamiltonian_from_field(&self.problem.canonical_field());
        let u_rot = evolve_operator(&hb, t)?;
        Ok(self.pair.dress(&(rz(-self.problem.params.omega, t) * u_rot)))
    }
}

pub fn nonrotating_hamiltonians(pr: &PseudoHermitianRabi) -> Result<NonrotatingHamiltonians> {
    Ok(NonrotatingHamiltonians { problem: *pr, pair: pr.metric_pair()? })
}
