//! One function per subcommand. Each reads what it needs from the scenario
//! and writes its files into `out`.

use std::path::Path;

use pseudospin_core::dynamics::{
    evolve_trajectory, integrate, rhs_damped_precession, rhs_llg, rhs_llg_spin_torque, Readout,
};
use pseudospin_core::grassmann::{correspondence_survey, graded_commutator, quantize, EXACT_TOL};
use pseudospin_core::pseudoherm::metric_for_field;
use pseudospin_core::rabi::{
    classify, frame_consistency_gap, ph_condition_residual, ph_rabi_amplitude,
    shifted_condition_residual, solve_suppression_b, solve_suppression_spin_valve,
};
use pseudospin_core::{
    build_isometry, canonical_rotation, evolve_operator, field_square, hamiltonian_from_field,
    inner, is_pseudo_hermitian, spectrum, CanonicalMap, ComplexVector3, GrassmannElement, Metric,
    MetricPair, Operator2, PseudoHermitianRabi, RabiParameters, Regime, Rotation3C, SpinState,
    Spinor, Trajectory, Vec3, C64,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::output::{c, matrix, vector, write_json, write_json_lines, write_series, write_trajectory};
use crate::scenario::{Kind, MetricTag, Model, ObservableTag, Scenario};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub tol: Option<f64>,
    pub step: Option<f64>,
}

pub fn execute(kind: Kind, scenario: &Scenario, out: &Path, opts: Options) -> Result<()> {
    scenario.check_kind(kind)?;
    let tol = scenario.tolerance(opts.tol, DEFAULT_TOL)?;
    match kind {
        Kind::Check => check(scenario, out, tol),
        Kind::Metric => metric(scenario, out),
        Kind::Evolve => evolve(scenario, out, opts.step),
        Kind::Bloch => bloch(scenario, out, opts.step),
        Kind::Rabi => rabi(scenario, out, tol, opts.step),
        Kind::Suppress => suppress(scenario, out, tol),
        Kind::GrassmannVerify => grassmann_verify(scenario, out),
        Kind::Sweep => sweep(scenario, out, tol),
    }
}

fn rotation(r: &Rotation3C) -> [[[f64; 2]; 3]; 3] {
    r.0.map(|row| row.map(c))
}

fn pair_json(pair: &MetricPair) -> Value {
    json!({ "isometry": matrix(&pair.isometry), "metric": matrix(&pair.metric) })
}

fn check(s: &Scenario, out: &Path, tol: f64) -> Result<()> {
    let f = s.field(Kind::Check)?;
    let h = hamiltonian_from_field(&f);
    let fsq = field_square(&f);
    let (e1, e2) = spectrum(&h)?;
    let report = json!({
        "status": "ok",
        "pseudo_hermitian": is_pseudo_hermitian(&h, tol)?,
        "field_square": c(fsq),
        "det": c(h.det()),
        "eigenvalues": [c(e1), c(e2)],
        "exceptional_point": fsq.norm() <= tol,
        "tol": tol,
    });
    write_json(&report, &out.join("check.json"))
}

/// Real partner field: the scenario's `real_field`, or the canonical limit
/// of the family `s -> Re F + i s Im F`.
fn partner(s: &Scenario, f: &ComplexVector3) -> Result<(ComplexVector3, MetricPair)> {
    match s.real_field()? {
        Some(b) => {
            let b = b.to_complex();
            Ok((b, build_isometry(f, &b)?))
        }
        None => Ok(metric_for_field(f)?),
    }
}

fn metric(s: &Scenario, out: &Path) -> Result<()> {
    let f = s.field(Kind::Metric)?;
    let (b, pair) = partner(s, &f)?;
    let r = canonical_rotation(&f, &b)?;
    let report = json!({
        "status": "ok",
        "field": vector(&f),
        "real_field": vector(&b),
        "rotation": rotation(&r),
        "rotation_det": c(r.det()),
        "isometry": matrix(&pair.isometry),
        "metric": matrix(&pair.metric),
    });
    write_json(&report, &out.join("metric.json"))
}

fn drift(traj: &Trajectory, norm: impl Fn(&pseudospin_core::TrajectorySample) -> f64) -> f64 {
    let first = traj.samples.first().map(&norm).unwrap_or(0.0);
    traj.samples.iter().map(|x| (norm(x) - first).abs()).fold(0.0, f64::max)
}

fn trajectory_summary(traj: &Trajectory) -> Value {
    json!({
        "method": traj.meta.method.as_str(),
        "samples": traj.len(),
        "step": traj.meta.step,
        "norm_canonical_drift": drift(traj, |x| x.norm_canonical),
        "norm_eta_drift": drift(traj, |x| x.norm_eta),
    })
}

fn evolve(s: &Scenario, out: &Path, step: Option<f64>) -> Result<()> {
    let f = s.field(Kind::Evolve)?;
    let grid = s.grid(Kind::Evolve, step)?;
    let mut psi = s.state(Kind::Evolve)?;
    if psi.is_zero() {
        return Err(CliError::Validation("`state` must be nonzero".into()));
    }
    let (readout, pair) = match s.metric {
        MetricTag::Canonical => (Readout::Canonical, None),
        MetricTag::Eta => {
            let (_, pair) = partner(s, &f)?;
            let readout = match s.observables {
                ObservableTag::Dressed => Readout::EtaDressed(pair),
                ObservableTag::Bare => Readout::EtaBare(pair.metric),
            };
            (readout, Some(pair))
        }
    };
    if let (Some(pair), true) = (pair, s.map_initial_state) {
        psi = pair.map_state(&psi);
    }
    let psi0 = SpinState::with_metric(psi, readout.tag()).normalized()?.amplitudes;
    let traj = evolve_trajectory(&hamiltonian_from_field(&f), &psi0, &grid, &readout)?;
    write_trajectory(&traj, &out.join("trajectory.csv"))?;
    let mut report = json!({ "status": "ok", "trajectory": trajectory_summary(&traj) });
    if let Some(pair) = pair {
        report["pair"] = pair_json(&pair);
    }
    write_json(&report, &out.join("evolve.json"))
}

fn bloch(s: &Scenario, out: &Path, step: Option<f64>) -> Result<()> {
    let kind = Kind::Bloch;
    let grid = s.grid(kind, step)?;
    let n0 = s.bloch(kind)?;
    let real_field = || s.real_field()?.ok_or_else(|| CliError::missing("real_field", "bloch"));
    let traj = match s.model {
        Model::DampedPrecession => {
            let f = s.field(kind)?;
            integrate(|_, n| rhs_damped_precession(n, &f), n0, &grid, s.renormalize)?
        }
        Model::Llg => {
            let b = real_field()?;
            let alpha = s.number("alpha", s.alpha, kind)?;
            integrate(|_, n| rhs_llg(n, b, alpha), n0, &grid, s.renormalize)?
        }
        Model::SpinTorque => {
            let b = real_field()?;
            let alpha = s.number("alpha", s.alpha, kind)?;
            let a = s.number("a", s.a, kind)?;
            let p = s.pinned.ok_or_else(|| CliError::missing("pinned", "bloch"))?;
            let p = Vec3::from(p)
                .normalized()
                .ok_or_else(|| CliError::Validation("`pinned` must be a nonzero vector".into()))?;
            integrate(|_, n| rhs_llg_spin_torque(n, b, alpha, a, p), n0, &grid, s.renormalize)?
        }
    };
    write_trajectory(&traj, &out.join("trajectory.csv"))?;
    let report = json!({ "status": "ok", "trajectory": trajectory_summary(&traj) });
    write_json(&report, &out.join("bloch.json"))
}

fn params_json(p: &RabiParameters) -> Value {
    json!({ "b": p.b, "b_z": p.b_z, "omega": p.omega, "alpha": p.alpha, "a": p.a })
}

fn rabi(s: &Scenario, out: &Path, tol: f64, step: Option<f64>) -> Result<()> {
    let p = s.rabi(Kind::Rabi, true)?;
    let grid = s.grid(Kind::Rabi, step)?;
    let regime = classify(&p, tol);
    let pr = PseudoHermitianRabi::new(p, tol)?;
    let pair = pr.metric_pair()?;
    let h = pr.hamiltonian();
    let (up, down) = (pair.map_state(&Spinor::up()), pair.map_state(&Spinor::down()));
    let eta = Metric::Eta(pair.metric);
    let mut rows = Vec::with_capacity(grid.len());
    let mut amplitude_error: f64 = 0.0;
    for t in grid.times() {
        let numeric = inner(&up, &evolve_operator(&h, t - grid.start())?.apply(&down), &eta)?;
        let closed = ph_rabi_amplitude(&pr, t - grid.start())?;
        amplitude_error = amplitude_error.max((numeric - closed).norm());
        rows.push((t, closed, numeric));
    }
    write_series(&rows, ["closed_form", "numeric"], &out.join("amplitude.csv"))?;
    let traj = evolve_trajectory(&h, &down, &grid, &Readout::EtaDressed(pair))?;
    write_trajectory(&traj, &out.join("trajectory.csv"))?;
    let report = json!({
        "status": "ok",
        "params": params_json(&p),
        "regime": regime.as_str(),
        "cond3_residual": ph_condition_residual(&p),
        "shifted_residual": shifted_condition_residual(&p),
        "omega_sq": pr.omega_sq,
        "omega": pr.omega(),
        "rabi_frequency": p.rabi_frequency(),
        "field": vector(&pr.field()),
        "canonical_field": vector(&pr.canonical_field()),
        "isometry": matrix(&pair.isometry),
        "metric": matrix(&pair.metric),
        "frame_consistency_gap": frame_consistency_gap(&p)?,
        "amplitude_max_error": amplitude_error,
        "trajectory": trajectory_summary(&traj),
    });
    write_json(&report, &out.join("rabi.json"))
}

fn suppression_b(p: &RabiParameters) -> pseudospin_core::Result<f64> {
    if p.a == 0.0 {
        solve_suppression_b(p.b_z, p.omega, p.alpha)
    } else {
        solve_suppression_spin_valve(p.b_z, p.omega, p.alpha, p.a)
    }
}

fn suppress(s: &Scenario, out: &Path, tol: f64) -> Result<()> {
    let p = s.rabi(Kind::Suppress, false)?;
    let b = suppression_b(&p)?;
    let p = RabiParameters { b, ..p };
    let pr = PseudoHermitianRabi::new(p, tol)?;
    let report = json!({
        "status": "ok",
        "params": params_json(&p),
        "b": b,
        "b_squared": b * b,
        "cond3_residual": ph_condition_residual(&p),
        "shifted_residual": shifted_condition_residual(&p),
        "omega_sq": pr.omega_sq,
        "regime": classify(&p, tol).as_str(),
    });
    write_json(&report, &out.join("suppress.json"))
}

/// All elements with coefficients in `{0, 1, i}`.
fn coefficient_grid() -> impl Iterator<Item = GrassmannElement> {
    let vals = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    (0..3usize.pow(8)).map(move |mut code| {
        let mut coeffs = [vals[0]; 8];
        for slot in coeffs.iter_mut() {
            *slot = vals[code % 3];
            code /= 3;
        }
        GrassmannElement::new(coeffs)
    })
}

fn grassmann_verify(s: &Scenario, out: &Path) -> Result<()> {
    let b = s.real_field()?.ok_or_else(|| CliError::missing("real_field", "grassmann-verify"))?;
    let b = b.to_complex();
    let survey: Vec<Value> = correspondence_survey(&b)
        .iter()
        .map(|e| json!({ "f": e.f, "g": e.g, "residual": e.report.residual, "exact": e.report.exact }))
        .collect();
    let non_exact: Vec<&Value> = survey.iter().filter(|e| e["exact"] == false).collect();
    let hamiltonian_residual =
        quantize(&GrassmannElement::hamiltonian(&b)).max_abs_diff(&hamiltonian_from_field(&b));
    let mut anticommutator_residual: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let qi = quantize(&GrassmannElement::generator(i));
            let qj = quantize(&GrassmannElement::generator(j));
            let want = Operator2::identity().scale(C64::from(if i == j { 1.0 } else { 0.0 }));
            anticommutator_residual =
                anticommutator_residual.max(graded_commutator(&qi, &qj, 1, 1).max_abs_diff(&want));
        }
    }
    let star_mismatches = coefficient_grid()
        .filter(|f| (f.star() == *f) != f.general_coefficients().is_star_real(0.0))
        .count();
    let mut report = json!({
        "status": "ok",
        "exact_tol": EXACT_TOL,
        "pairs": survey.len(),
        "non_exact": non_exact,
        "hamiltonian_quantization_residual": hamiltonian_residual,
        "anticommutator_residual": anticommutator_residual,
        "star_class_mismatches": star_mismatches,
        "survey": survey,
    });
    if s.field.is_some() {
        let f = s.field(Kind::GrassmannVerify)?;
        let map = CanonicalMap::new(canonical_rotation(&f, &b)?, DEFAULT_TOL)?;
        let plus_mismatches = coefficient_grid()
            .filter(|f| {
                let g = map.pushforward(f);
                let fixed = map.plus(&g).max_abs_diff(&g) < 1e-12;
                fixed != (f.star() == *f) || fixed != g.general_coefficients().is_plus_real(&map.r, 1e-12)
            })
            .count();
        report["plus_class_mismatches"] = json!(plus_mismatches);
    }
    write_json(&report, &out.join("grassmann.json"))
}

#[derive(Debug, Serialize)]
pub struct SweepRecord {
    pub b: f64,
    pub b_z: f64,
    pub omega: f64,
    pub alpha: f64,
    pub a: f64,
    pub cond3_residual: f64,
    pub shifted_residual: f64,
    pub regime: &'static str,
    pub omega_sq: Option<f64>,
    pub suppression_b: Option<f64>,
    pub suppression_error: Option<&'static str>,
}

pub fn sweep_point(p: RabiParameters, tol: f64) -> SweepRecord {
    let regime = classify(&p, tol);
    let omega_sq = match regime {
        Regime::NonPseudoHermitian => None,
        _ => PseudoHermitianRabi::new(p, tol).ok().map(|pr| pr.omega_sq),
    };
    let (suppression_b, suppression_error) = match suppression_b(&p) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.code())),
    };
    SweepRecord {
        b: p.b,
        b_z: p.b_z,
        omega: p.omega,
        alpha: p.alpha,
        a: p.a,
        cond3_residual: ph_condition_residual(&p),
        shifted_residual: shifted_condition_residual(&p),
        regime: regime.as_str(),
        omega_sq,
        suppression_b,
        suppression_error,
    }
}

fn sweep(s: &Scenario, out: &Path, tol: f64) -> Result<()> {
    let spec = s.sweep.as_ref().ok_or_else(|| CliError::missing("sweep", "sweep"))?;
    let axes = [&spec.b, &spec.b_z, &spec.omega, &spec.alpha, &spec.a].map(|a| a.values());
    if axes.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Validation("sweep values must be finite".into()));
    }
    let mut points = Vec::new();
    for &b in &axes[0] {
        for &b_z in &axes[1] {
            for &omega in &axes[2] {
                for &alpha in &axes[3] {
                    for &a in &axes[4] {
                        points.push(RabiParameters::new(b, b_z, omega, alpha).with_spin_torque(a));
                    }
                }
            }
        }
    }
    let records: Vec<SweepRecord> = points.into_par_iter().map(|p| sweep_point(p, tol)).collect();
    write_json_lines(&records, &out.join("sweep.jsonl"))
}
