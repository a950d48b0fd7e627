//! Closed forms checked against the general constructions.

mod common;

use common::*;
use proptest::prelude::*;
use pseudospin_core::rabi::{solve_suppression_b, PseudoHermitianRabi, RabiParameters};
use pseudospin_core::{
    build_isometry, evolve_operator, hamiltonian_from_field, inner, ComplexVector3, Metric,
    Operator2, Spinor, C64,
};

/// `eta = (1/B1^2) [[|F1|^2, conj(F1)(B3 - F3)], [F1 (B3 - conj(F3)), B1^2 + |B3 - F3|^2]]`.
fn eta_closed_form(f: &ComplexVector3, b: &ComplexVector3) -> Operator2 {
    let (b1, b3) = (b.x.re, b.z.re);
    let d = C64::from(b3) - f.z;
    Operator2::new(
        C64::from(f.x.norm_sqr()),
        f.x.conj() * d,
        f.x * (C64::from(b3) - f.z.conj()),
        C64::from(b1 * b1 + d.norm_sqr()),
    )
    .scale(C64::from(1.0 / (b1 * b1)))
}

/// Rabi metric in terms of `F, Delta, Omega, Omega_R`.
fn rabi_eta_closed_form(pr: &PseudoHermitianRabi) -> Operator2 {
    let p = &pr.params;
    let (f, delta) = (pr.f, pr.delta);
    let (w, wr, d) = (pr.omega(), p.rabi_frequency(), p.detuning());
    let k = 1.0 / (p.b * p.b * w * w);
    let x = C64::from(d * w) - delta * wr;
    Operator2::new(
        C64::from(f.norm_sqr() * wr * wr),
        f.conj() * wr * x,
        f * wr * (C64::from(d * w) - delta.conj() * wr),
        C64::from(p.b * p.b * w * w + x.norm_sqr()),
    )
    .scale(C64::from(k))
}

/// `M = (1/(F Omega_R)) [[B Omega, Delta Omega_R - delta Omega], [0, F Omega_R]]`.
fn rabi_isometry_closed_form(pr: &PseudoHermitianRabi) -> Operator2 {
    let p = &pr.params;
    let (w, wr) = (pr.omega(), p.rabi_frequency());
    Operator2::new(
        C64::from(p.b * w),
        pr.delta * wr - p.detuning() * w,
        C64::from(0.0),
        pr.f * wr,
    )
    .scale((pr.f * wr).inv())
}

proptest! {
    #[test]
    fn metric_matches_closed_form((f, b) in plane_pair()) {
        let pair = build_isometry(&f, &b).unwrap();
        let want = eta_closed_form(&f, &b);
        prop_assert!(pair.metric.max_abs_diff(&want) < 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn eta_amplitude_matches_closed_form((f, b) in plane_pair(), t in 0.0..30.0f64) {
        let pair = build_isometry(&f, &b).unwrap();
        let eta = Metric::Eta(pair.metric);
        let up = pair.map_state(&Spinor::up());
        let down = pair.map_state(&Spinor::down());
        let evolved = evolve_operator(&hamiltonian_from_field(&f), t).unwrap().apply(&down);
        let amp = inner(&up, &evolved, &eta).unwrap();
        let e = b.norm();
        let want = C64::new(0.0, -(b.x.re / e) * (0.5 * e * t).sin());
        prop_assert!((amp - want).norm() < 1e-10);
    }

    #[test]
    fn rabi_metric_matches_closed_form(b_z in 0.2..2.0f64, omega in 0.2..3.0f64, alpha in 0.02..0.9f64) {
        let Ok(b) = solve_suppression_b(b_z, omega, alpha) else { return Ok(()); };
        let pr = PseudoHermitianRabi::new(RabiParameters::new(b, b_z, omega, alpha), 1e-10).unwrap();
        prop_assume!(!pr.is_critical() && pr.omega() > 1e-3);
        let pair = pr.metric_pair().unwrap();
        let m = rabi_isometry_closed_form(&pr);
        prop_assert!(pair.isometry.max_abs_diff(&m) < 1e-10 * m.norm().max(1.0));
        let want = rabi_eta_closed_form(&pr);
        prop_assert!(pair.metric.max_abs_diff(&want) < 1e-9 * want.norm().max(1.0));
    }
}

#[test]
fn rabi_metric_example() {
    let pr = PseudoHermitianRabi::new(RabiParameters::new(1.5f64.sqrt(), 1.0, 2.0, 0.5), 1e-12).unwrap();
    let pair = pr.metric_pair().unwrap();
    assert!(pair.metric.max_abs_diff(&rabi_eta_closed_form(&pr)) < 1e-12);
    assert!(pair.isometry.max_abs_diff(&rabi_isometry_closed_form(&pr)) < 1e-12);
}

#[test]
fn metric_canonical_limit_for_damped_example() {
    // F = (V, 0, i alpha), B = (sgn V sqrt(V^2 - alpha^2), 0, 0)
    for v in [1.0, -0.7] {
        let mut last = f64::INFINITY;
        for alpha in [0.4, 0.2, 0.1, 0.05, 0.0] {
            let f = ComplexVector3::new(c(v, 0.0), c(0.0, 0.0), c(0.0, alpha));
            let b1 = v.signum() * (v * v - alpha * alpha).sqrt();
            let b = ComplexVector3::new(c(b1, 0.0), c(0.0, 0.0), c(0.0, 0.0));
            let pair = build_isometry(&f, &b).unwrap();
            assert!(pair.metric.max_abs_diff(&eta_closed_form(&f, &b)) < 1e-14);
            let gap = pair.metric.max_abs_diff(&Operator2::identity());
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-15);
    }
}
