//! State evolution, Bloch-vector readout and the classical spin equations.
//!
//! Quantum side: closed-form evolution of time-independent Hamiltonians and
//! RK4 for time-dependent ones, read out as Bloch vectors under the
//! canonical or an eta inner product. Classical side: damped precession of a
//! unit vector in a complex field, its effective-field form, the
//! Landau-Lifshitz-Gilbert equation and the spin-torque variant, integrated
//! with fixed-step RK4.

use crate::error::{Error, Result};
use crate::linalg::{
    eta_inner, evolve_operator, inner_unchecked, validate_metric, ComplexVector3, Metric,
    Operator2, SpinState, Spinor, Vec3, C64, I, REAL_TOL,
};
use crate::pseudoherm::MetricPair;

/// Normalized spin expectation `n`. Components are complex because bare
/// Pauli expectations under an eta product need not be real.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector(pub ComplexVector3);

impl BlochVector {
    pub fn from_real(v: Vec3) -> Self {
        Self(ComplexVector3::from_real(v))
    }

    pub fn real(&self) -> Vec3 {
        self.0.re()
    }

    /// Largest imaginary component magnitude.
    pub fn imag_magnitude(&self) -> f64 {
        let im = self.0.im();
        im.x.abs().max(im.y.abs()).max(im.z.abs())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.imag_magnitude() <= tol
    }

    /// Bilinear `n.n` (equals 1 for canonical readouts).
    pub fn square(&self) -> C64 {
        self.0.dot(&self.0)
    }
}

/// `psi(t) = exp(-i H t) psi0`, keeping the metric tag.
pub fn evolve_state(h: &Operator2, psi0: &SpinState, t: f64) -> Result<SpinState> {
    let u = evolve_operator(h, t)?;
    Ok(SpinState { amplitudes: u.apply(&psi0.amplitudes), metric: psi0.metric })
}

fn expectation(psi: &Spinor, eta: &Operator2, ops: &[Operator2; 3]) -> ComplexVector3 {
    ComplexVector3::new(
        eta_inner(psi, eta, &ops[0].apply(psi)),
        eta_inner(psi, eta, &ops[1].apply(psi)),
        eta_inner(psi, eta, &ops[2].apply(psi)),
    )
}

fn paulis() -> [Operator2; 3] {
    [Operator2::pauli(0), Operator2::pauli(1), Operator2::pauli(2)]
}

/// `n_i = <psi, sigma_i psi> / <psi, psi>`.
pub fn bloch_canonical(psi: &Spinor) -> Result<BlochVector> {
    if psi.is_zero() {
        return Err(Error::ZeroState);
    }
    let norm = inner_unchecked(psi, psi).re;
    let n = expectation(psi, &Operator2::identity(), &paulis());
    Ok(BlochVector(n.scale(C64::new(1.0 / norm, 0.0))))
}

/// Observables read out under an eta product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservableSet {
    /// Plain Pauli matrices `sigma_i`; not eta-Hermitian in general.
    Bare,
    /// `sigma'_i = M sigma_i M^-1` for the given isometry `M`; eta-Hermitian.
    Dressed(Operator2),
}

impl ObservableSet {
    fn operators(&self) -> Result<[Operator2; 3]> {
        match self {
            ObservableSet::Bare => Ok(paulis()),
            ObservableSet::Dressed(m) => {
                let inv = m.inverse(0.0).ok_or(Error::SingularMetric)?;
                Ok(paulis().map(|s| *m * s * inv))
            }
        }
    }
}

/// Unnormalized expectations `<psi, O_i psi>_eta`.
pub fn eta_expectations(
    psi: &Spinor,
    eta: &Operator2,
    observables: &ObservableSet,
) -> Result<ComplexVector3> {
    validate_metric(eta, REAL_TOL)?;
    Ok(expectation(psi, eta, &observables.operators()?))
}

/// `n_i = <psi, O_i psi>_eta / <psi, psi>_eta`.
///
/// With dressed observables and `psi = M phi` this equals
/// [`bloch_canonical`]`(phi)`; bare observables may yield complex components,
/// which are returned as they are.
pub fn bloch_eta(
    psi: &Spinor,
    eta: &Operator2,
    observables: &ObservableSet,
) -> Result<BlochVector> {
    if psi.is_zero() {
        return Err(Error::ZeroState);
    }
    let raw = eta_expectations(psi, eta, observables)?;
    let norm = eta_inner(psi, eta, psi).re;
    Ok(BlochVector(raw.scale(C64::new(1.0 / norm, 0.0))))
}

/// `dn/dt = -n x Re F - n x (n x Im F)`.
pub fn rhs_damped_precession(n: Vec3, f: &ComplexVector3) -> Vec3 {
    let (re, im) = (f.re(), f.im());
    -n.cross(&re) - n.cross(&n.cross(&im))
}

/// `F_eff = Re F + n x Im F`, so that `dn/dt = -n x F_eff`.
pub fn effective_field(n: Vec3, f: &ComplexVector3) -> Vec3 {
    f.re() + n.cross(&f.im())
}

/// `F = (1 + i alpha) B / (1 + alpha^2)`: the complex field whose damped
/// precession is the LLG equation with Gilbert parameter `alpha`.
pub fn gilbert_field(b: Vec3, alpha: f64) -> ComplexVector3 {
    ComplexVector3::from_real(b).scale(C64::new(1.0, alpha) / (1.0 + alpha * alpha))
}

/// Landau-Lifshitz-Gilbert right-hand side for a real field `B`.
pub fn rhs_llg(n: Vec3, b: Vec3, alpha: f64) -> Vec3 {
    let k = 1.0 / (1.0 + alpha * alpha);
    let nxb = n.cross(&b);
    -(k * nxb) - (alpha * k) * n.cross(&nxb)
}

/// LLG with a spin-transfer torque `a n x (n x P)` from a pinned layer with
/// unit magnetization `P`.
pub fn rhs_llg_spin_torque(n: Vec3, b: Vec3, alpha: f64, a: f64, p: Vec3) -> Vec3 {
    rhs_llg(n, b, alpha) + a * n.cross(&n.cross(&p))
}

/// Complex field reproducing [`rhs_llg_spin_torque`] through
/// [`rhs_damped_precession`]: the Gilbert field of `B` minus `i a P`.
pub fn spin_torque_equivalent_field(b: Vec3, alpha: f64, a: f64, p: Vec3) -> ComplexVector3 {
    gilbert_field(b, alpha) - ComplexVector3::from_real(p).scale(C64::new(0.0, a))
}

/// Uniform time grid `start, start + step, ...` with `len` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    start: f64,
    step: f64,
    len: usize,
}

impl TimeGrid {
    /// Grid from `start` to `end` (inclusive, rounded to whole steps).
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {step}")));
        }
        if !(end >= start) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time grid needs end >= start, got [{start}, {end}]"
            )));
        }
        let steps = ((end - start) / step + 1e-9).floor() as usize;
        Ok(Self { start, step, len: steps + 1 })
    }

    pub fn with_len(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) || len == 0 {
            return Err(Error::InvalidParameter("time grid needs step > 0 and len > 0".into()));
        }
        Ok(Self { start, step, len })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn time(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.time(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Rk4,
    Rk4Projected,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Rk4 => "rk4",
            Method::Rk4Projected => "rk4_projected",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub method: Method,
    pub step: f64,
    /// Free-form description of the field configuration.
    pub field: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub n: BlochVector,
    /// Canonical norm of the state, or the raw `|n|` for classical runs.
    pub norm_canonical: f64,
    /// Eta norm of the state; NaN for classical runs.
    pub norm_eta: f64,
}

/// Sampled evolution. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    /// Quantum amplitudes per sample (empty for classical runs).
    pub states: Vec<Spinor>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn rk4_vec<F: Fn(f64, Vec3) -> Vec3>(rhs: &F, t: f64, n: Vec3, h: f64) -> Vec3 {
    let k1 = rhs(t, n);
    let k2 = rhs(t + 0.5 * h, n + (0.5 * h) * k1);
    let k3 = rhs(t + 0.5 * h, n + (0.5 * h) * k2);
    let k4 = rhs(t + h, n + h * k3);
    n + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Classical RK4 integration of `dn/dt = rhs(t, n)` on a uniform grid.
///
/// With `renormalize`, `n` is projected back to the unit sphere after every
/// step; `norm_canonical` always records the pre-projection length.
pub fn integrate<F>(rhs: F, n0: Vec3, grid: &TimeGrid, renormalize: bool) -> Result<Trajectory>
where
    F: Fn(f64, Vec3) -> Vec3,
{
    let mut samples = Vec::with_capacity(grid.len());
    let mut n = n0;
    let sample = |t: f64, n: Vec3, raw: f64| TrajectorySample {
        t,
        n: BlochVector::from_real(n),
        norm_canonical: raw,
        norm_eta: f64::NAN,
    };
    samples.push(sample(grid.start(), n, n.norm()));
    for i in 1..grid.len() {
        let t = grid.time(i - 1);
        let next = rk4_vec(&rhs, t, n, grid.step());
        let raw = next.norm();
        let drift = (raw - n.norm()).abs();
        if drift > 0.01 {
            return Err(Error::StepTooLarge { drift });
        }
        n = if renormalize { next.scale(1.0 / raw) } else { next };
        samples.push(sample(grid.time(i), n, raw));
    }
    Ok(Trajectory {
        samples,
        states: Vec::new(),
        meta: TrajectoryMeta {
            method: if renormalize { Method::Rk4Projected } else { Method::Rk4 },
            step: grid.step(),
            field: String::new(),
        },
    })
}

/// How a quantum trajectory is read out as Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Readout {
    Canonical,
    /// Bare `sigma_i` under the metric `eta`.
    EtaBare(Operator2),
    /// Dressed `M sigma_i M^-1` under the pair's metric.
    EtaDressed(MetricPair),
}

impl Readout {
    pub fn metric(&self) -> Operator2 {
        match self {
            Readout::Canonical => Operator2::identity(),
            Readout::EtaBare(eta) => *eta,
            Readout::EtaDressed(pair) => pair.metric,
        }
    }

    fn observables(&self) -> ObservableSet {
        match self {
            Readout::EtaDressed(pair) => ObservableSet::Dressed(pair.isometry),
            _ => ObservableSet::Bare,
        }
    }

    /// Normalized Bloch vector of `psi` under this readout.
    pub fn bloch(&self, psi: &Spinor) -> Result<BlochVector> {
        match self {
            Readout::Canonical => bloch_canonical(psi),
            _ => bloch_eta(psi, &self.metric(), &self.observables()),
        }
    }

    /// Tag carried by states evolved under this readout.
    pub fn tag(&self) -> Metric {
        match self {
            Readout::Canonical => Metric::Canonical,
            _ => Metric::Eta(self.metric()),
        }
    }
}

fn sample_state(t: f64, psi: &Spinor, readout: &Readout) -> Result<TrajectorySample> {
    let eta = readout.metric();
    Ok(TrajectorySample {
        t,
        n: readout.bloch(psi)?,
        norm_canonical: inner_unchecked(psi, psi).re.max(0.0).sqrt(),
        norm_eta: eta_inner(psi, &eta, psi).re.max(0.0).sqrt(),
    })
}

/// Closed-form evolution of a time-independent `H`, sampled on `grid`.
pub fn evolve_trajectory(
    h: &Operator2,
    psi0: &Spinor,
    grid: &TimeGrid,
    readout: &Readout,
) -> Result<Trajectory> {
    if let Readout::EtaBare(eta) = readout {
        validate_metric(eta, REAL_TOL)?;
    }
    let mut samples = Vec::with_capacity(grid.len());
    let mut states = Vec::with_capacity(grid.len());
    for t in grid.times() {
        let psi = evolve_operator(h, t - grid.start())?.apply(psi0);
        samples.push(sample_state(t, &psi, readout)?);
        states.push(psi);
    }
    Ok(Trajectory {
        samples,
        states,
        meta: TrajectoryMeta {
            method: Method::ClosedForm,
            step: grid.step(),
            field: format!("{:?}", h.field()),
        },
    })
}

/// RK4 on `d psi/dt = -i H(t) psi`, returning the state at every grid time.
pub fn rk4_states<H>(h: H, psi0: &Spinor, grid: &TimeGrid) -> Vec<Spinor>
where
    H: Fn(f64) -> Operator2,
{
    let deriv = |t: f64, psi: &Spinor| h(t).apply(psi).scale(-I);
    let dt = grid.step();
    let mut psi = *psi0;
    let mut out = Vec::with_capacity(grid.len());
    out.push(psi);
    for i in 1..grid.len() {
        let t = grid.time(i - 1);
        let k1 = deriv(t, &psi);
        let k2 = deriv(t + 0.5 * dt, &(psi + k1.scale((0.5 * dt).into())));
        let k3 = deriv(t + 0.5 * dt, &(psi + k2.scale((0.5 * dt).into())));
        let k4 = deriv(t + dt, &(psi + k3.scale(dt.into())));
        let incr = (k1 + k2.scale(2.0.into()) + k3.scale(2.0.into()) + k4).scale((dt / 6.0).into());
        psi = psi + incr;
        out.push(psi);
    }
    out
}

/// RK4 evolution of a time-dependent Hamiltonian, read out on `grid`.
pub fn evolve_time_dependent<H>(
    h: H,
    psi0: &Spinor,
    grid: &TimeGrid,
    readout: &Readout,
) -> Result<Trajectory>
where
    H: Fn(f64) -> Operator2,
{
    let states = rk4_states(h, psi0, grid);
    let samples = grid
        .times()
        .zip(&states)
        .map(|(t, psi)| sample_state(t, psi, readout))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        samples,
        states,
        meta: TrajectoryMeta { method: Method::Rk4, step: grid.step(), field: "time-dependent".into() },
    })
}

/// Result of comparing finite-differenced Bloch trajectories with the
/// classical equation of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceResidual {
    /// `max_t |dn/dt (finite difference) - rhs(n)|`.
    pub max_residual: f64,
    /// Largest `|Im n_i|` seen along the trajectory.
    pub max_imaginary: f64,
    /// Formal order of the difference stencil.
    pub order: u32,
}

/// Evolves `psi0` under `H`, extracts `n(t)` with `readout`, and compares
/// the finite-difference derivative against the matching equation of motion:
///
/// * canonical: damped precession `-n x Re F - n x (n x Im F)`;
/// * eta, bare: `-n x F` as a complex identity;
/// * eta, dressed: `-n x B` with `B` the real field of `M^-1 H M`.
///
/// Central differences inside, second-order one-sided stencils at the ends.
pub fn correspondence_residual(
    h: &Operator2,
    psi0: &Spinor,
    grid: &TimeGrid,
    readout: &Readout,
) -> Result<CorrespondenceResidual> {
    let traj = evolve_trajectory(h, psi0, grid, readout)?;
    let ns: Vec<ComplexVector3> = traj.samples.iter().map(|s| s.n.0).collect();
    let max_imaginary = traj.samples.iter().map(|s| s.n.imag_magnitude()).fold(0.0, f64::max);
    let len = ns.len();
    if len < 2 {
        return Ok(CorrespondenceResidual { max_residual: 0.0, max_imaginary, order: 2 });
    }
    let f = h.field();
    let model = |n: &ComplexVector3| -> ComplexVector3 {
        match readout {
            Readout::Canonical => ComplexVector3::from_real(rhs_damped_precession(n.re(), &f)),
            Readout::EtaBare(_) => -n.cross(&f),
            Readout::EtaDressed(pair) => -n.cross(&pair.undress(h).field()),
        }
    };
    let dt = grid.step();
    let scale = |v: ComplexVector3, s: f64| v.scale(C64::new(s, 0.0));
    let derivative = |i: usize| -> ComplexVector3 {
        if len == 2 {
            return scale(ns[1] - ns[0], 1.0 / dt);
        }
        if i == 0 {
            scale(scale(ns[1], 4.0) - scale(ns[0], 3.0) - ns[2], 0.5 / dt)
        } else if i == len - 1 {
            scale(scale(ns[i], 3.0) - scale(ns[i - 1], 4.0) + ns[i - 2], 0.5 / dt)
        } else {
            scale(ns[i + 1] - ns[i - 1], 0.5 / dt)
        }
    };
    let mut max_residual: f64 = 0.0;
    for (i, n) in ns.iter().enumerate() {
        let diff = derivative(i) - model(n);
        max_residual = max_residual.max(diff.norm());
    }
    let order = if len == 2 { 1 } else { 2 };
    Ok(CorrespondenceResidual { max_residual, max_imaginary, order })
}

/// `sqrt(<psi, psi>_eta)`.
pub fn eta_norm(psi: &Spinor, eta: &Operator2) -> f64 {
    eta_inner(psi, eta, psi).re.max(0.0).sqrt()
}

/// `Re(n) . d` for the unit vector `d` along `direction`.
pub fn alignment(n: &BlochVector, direction: Vec3) -> f64 {
    let d = direction.normalized().unwrap_or_default();
    n.real().dot(&d)
}
