//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{c, plane_rotation};
use pseudospin_core::dynamics::{
    alignment, bloch_canonical, correspondence_residual, effective_field, eta_expectations,
    eta_norm, gilbert_field, rhs_damped_precession, rhs_llg, rk4_states, ObservableSet, Readout,
};
use pseudospin_core::grassmann::{
    graded_commutator, quantize, verify_correspondence, CanonicalMap, GrassmannElement, EXACT_TOL,
};
use pseudospin_core::rabi::{
    ph_condition_residual, rabi_amplitude, shifted_condition_residual, solve_suppression_b,
    solve_suppression_spin_valve, spin_valve_radicand, suppression_radicand, PseudoHermitianRabi,
    RabiParameters,
};
use pseudospin_core::{
    build_isometry, canonical_limit_field, canonical_rotation, evolve_operator,
    hamiltonian_from_field, inner, ComplexVector3, Metric, Operator2, Rotation3C, Spinor,
    TimeGrid, Vec3, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| a + (b - a) * k as f64 / (n - 1) as f64)
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm() > 0.1 && v.norm() <= 1.0 {
            return v.scale(1.0 / v.norm());
        }
    }
}

fn suppressed() -> RabiParameters {
    RabiParameters::new(1.5f64.sqrt(), 1.0, 2.0, 0.5)
}

fn damped_two_level_amplitude() -> Outcome {
    let f = ComplexVector3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.6));
    let b = ComplexVector3::new(c(0.8, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let pair = build_isometry(&f, &b).unwrap();
    let eta = Metric::Eta(pair.metric);
    let (up, down) = (pair.map_state(&Spinor::up()), pair.map_state(&Spinor::down()));
    let h = hamiltonian_from_field(&f);
    let err = max_over(linspace(0.0, 50.0, 200).map(|t| {
        let amp = inner(&up, &evolve_operator(&h, t).unwrap().apply(&down), &eta).unwrap();
        (amp - C64::new(0.0, -(0.4 * t).sin())).norm()
    }));
    outcome(err < 1e-10, format!("max |amp + i sin(0.4t)| = {err:.2e} (< 1e-10, 200 samples)"))
}

fn rabi_oscillations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grid = TimeGrid::new(0.0, 20.0, 5e-4).unwrap();
    let mut err: f64 = 0.0;
    for _ in 0..20 {
        let (b, delta) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let p = RabiParameters::new(b, delta, 0.0, 0.0);
        let h = pseudospin_core::rabi::rabi_hamiltonian(&p);
        let states = rk4_states(|_| h, &Spinor::down(), &grid);
        for (i, psi) in states.iter().enumerate() {
            err = err.max((psi.0[0] - rabi_amplitude(&p, grid.time(i))).norm());
        }
    }
    outcome(err < 1e-8, format!("max |closed form - RK4| = {err:.2e} (< 1e-8, 20 random (B, delta))"))
}

fn pseudo_hermitian_rabi() -> Outcome {
    let p = suppressed();
    let residual = ph_condition_residual(&p).abs();
    let pr = PseudoHermitianRabi::new(p, 1e-12).unwrap();
    let pair = pr.metric_pair().unwrap();
    let eta = Metric::Eta(pair.metric);
    let (up, down) = (pair.map_state(&Spinor::up()), pair.map_state(&Spinor::down()));
    let h = pr.hamiltonian();
    let err = max_over(linspace(0.0, 50.0, 500).map(|t| {
        let amp = inner(&up, &evolve_operator(&h, t).unwrap().apply(&down), &eta).unwrap();
        let want = C64::new(0.0, -(0.6f64.sqrt()) * (t / 2f64.sqrt()).sin());
        (amp - want).norm()
    }));
    outcome(
        residual < 1e-12 && err < 1e-9,
        format!("condition residual = {residual:.1e} (< 1e-12); max amplitude error = {err:.2e} (< 1e-9)"),
    )
}

fn unitarity_split() -> Outcome {
    let pr = PseudoHermitianRabi::new(suppressed(), 1e-12).unwrap();
    let pair = pr.metric_pair().unwrap();
    let psi0 = pair.map_state(&Spinor::down());
    let h = pr.hamiltonian();
    let (eta0, can0) = (eta_norm(&psi0, &pair.metric), eta_norm(&psi0, &Operator2::identity()));
    let (mut eta_drift, mut can_dev): (f64, f64) = (0.0, 0.0);
    for t in linspace(0.0, 100.0, 2001) {
        let psi = evolve_operator(&h, t).unwrap().apply(&psi0);
        eta_drift = eta_drift.max((eta_norm(&psi, &pair.metric) - eta0).abs());
        can_dev = can_dev.max((eta_norm(&psi, &Operator2::identity()) - can0).abs());
    }
    outcome(
        eta_drift < 1e-9 && can_dev > 1e-3,
        format!("eta-norm drift = {eta_drift:.1e} (< 1e-9); canonical norm deviation = {can_dev:.3} (> 1e-3)"),
    )
}

fn canonical_limit() -> Outcome {
    let family = |a: f64| ComplexVector3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, a));
    let gaps: Vec<f64> = [0.4, 0.2, 0.1, 0.05]
        .iter()
        .map(|&a| {
            let b = canonical_limit_field(family, a).unwrap();
            let pair = build_isometry(&family(a), &b).unwrap();
            (pair.metric - Operator2::identity()).norm()
        })
        .collect();
    let ratios: Vec<f64> = gaps.windows(2).map(|w| w[0] / w[1]).collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let linear = ratios.iter().all(|r| (1.0..=4.0).contains(r));
    outcome(
        monotone && linear,
        format!("|eta - I| = {gaps:.4?}; halving ratios = {ratios:.3?} (monotone, each in [1, 4])"),
    )
}

fn llg_identification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut err: f64 = 0.0;
    for _ in 0..1000 {
        let n = random_unit(&mut rng);
        let b = Vec3::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let alpha = rng.gen_range(0.0..2.0);
        err = err.max((rhs_damped_precession(n, &gilbert_field(b, alpha)) - rhs_llg(n, b, alpha)).norm());
    }
    outcome(err < 1e-12, format!("max |damped precession - LLG| = {err:.1e} (< 1e-12, 1000 samples)"))
}

fn correspondence_order() -> Outcome {
    let fields = [
        ("hermitian", ComplexVector3::from_real(Vec3::new(0.6, -0.3, 0.8))),
        ("non-hermitian", ComplexVector3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.6))),
    ];
    let psi0 = Spinor::new(c(0.8, 0.0), c(0.36, 0.48));
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, f) in fields {
        let h = hamiltonian_from_field(&f);
        let r = |dt: f64| {
            let grid = TimeGrid::new(0.0, 5.0, dt).unwrap();
            correspondence_residual(&h, &psi0, &grid, &Readout::Canonical).unwrap().max_residual
        };
        let ratio = r(0.02) / r(0.01);
        pass &= (3.5..=4.5).contains(&ratio);
        parts.push(format!("{name} ratio = {ratio:.3}"));
    }
    outcome(pass, format!("{} (each in [3.5, 4.5])", parts.join(", ")))
}

fn damping_suppression() -> Outcome {
    let pr = PseudoHermitianRabi::new(suppressed(), 1e-12).unwrap();
    let pair = pr.metric_pair().unwrap();
    let psi0 = pair.map_state(&Spinor::down());
    let h = pr.hamiltonian();
    let dressed = ObservableSet::Dressed(pair.isometry);
    let length = |t: f64| {
        let psi = evolve_operator(&h, t).unwrap().apply(&psi0);
        eta_expectations(&psi, &pair.metric, &dressed).unwrap().norm()
    };
    let l0 = length(0.0);
    let drift = max_over(linspace(0.0, 50.0, 1001).map(|t| (length(t) - l0).abs()));

    let align = |p: &RabiParameters, t: f64| {
        let f = p.rotating_frame_field();
        let psi = evolve_operator(&hamiltonian_from_field(&f), t).unwrap().apply(&Spinor::down());
        let n = bloch_canonical(&psi).unwrap();
        alignment(&n, effective_field(n.real(), &f))
    };
    let on = suppressed();
    let off = RabiParameters { b: on.b * 1.05, ..on };
    let off_drift = (align(&off, 50.0) - align(&off, 0.0)).abs();
    let on_drift = (align(&on, 50.0) - align(&on, 0.0)).abs();
    outcome(
        drift < 1e-7 && off_drift > 0.05,
        format!(
            "on-condition |n| drift = {drift:.1e} (< 1e-7); 5% off alignment drift = {off_drift:.3} (> 0.05); on-condition alignment drift = {on_drift:.1e}"
        ),
    )
}

fn rotation_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut err: f64 = 0.0;
    let mut count = 0;
    while count < 500 {
        let b1 = rng.gen_range(0.2..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = ComplexVector3::new(c(b1, 0.0), c(0.0, 0.0), c(rng.gen_range(-1.5..1.5), 0.0));
        let theta = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
        let f = plane_rotation(0, 2, theta).apply(&b);
        let Ok(r) = canonical_rotation(&f, &b) else { continue };
        count += 1;
        let id = Rotation3C::identity();
        err = err
            .max(r.apply(&b).max_abs_diff(&f))
            .max((r * r.transpose()).max_abs_diff(&id))
            .max((r.det() - 1.0).norm())
            .max((r * r).max_abs_diff(&id));
    }
    outcome(err < 1e-11, format!("max deviation over RB=F, RR^T=I, det R=1, R^2=I = {err:.1e} (< 1e-11, 500 pairs)"))
}

fn grassmann_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    let mut exact = true;
    let xi = GrassmannElement::generator;
    for _ in 0..50 {
        let b = ComplexVector3::from_real(Vec3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ));
        let h = GrassmannElement::hamiltonian(&b);
        worst = worst.max(quantize(&h).max_abs_diff(&hamiltonian_from_field(&b)));
        for i in 0..3 {
            exact &= verify_correspondence(&h, &xi(i)).unwrap().exact;
            exact &= verify_correspondence(&xi(i), &h).unwrap().exact;
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let g = graded_commutator(&quantize(&xi(i)), &quantize(&xi(j)), 1, 1);
            let want = Operator2::identity().scale(c(if i == j { 1.0 } else { 0.0 }, 0.0));
            worst = worst.max(g.max_abs_diff(&want));
            exact &= verify_correspondence(&xi(i), &xi(j)).unwrap().exact;
        }
    }

    let vals = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
    let grid = || {
        (0..3usize.pow(8)).map(move |mut code| {
            GrassmannElement::new(std::array::from_fn(|_| {
                let v = vals[code % 3];
                code /= 3;
                v
            }))
        })
    };
    let b = ComplexVector3::from_real(Vec3::new(0.9, 0.0, 0.4));
    let f_field = plane_rotation(0, 2, c(0.3, 0.5)).apply(&b);
    let map = CanonicalMap::new(canonical_rotation(&f_field, &b).unwrap(), 1e-9).unwrap();
    let mut class_mismatch = 0;
    let mut star_fixed = 0;
    for f in grid() {
        let fixed = f.star() == f;
        star_fixed += fixed as usize;
        class_mismatch += (fixed != f.general_coefficients().is_star_real(0.0)) as usize;
        for g in [f, map.pushforward(&f)] {
            let plus_fixed = map.plus(&g).max_abs_diff(&g) < 1e-12;
            class_mismatch += (plus_fixed != g.general_coefficients().is_plus_real(&map.r, 1e-12)) as usize;
        }
        class_mismatch += (fixed != (map.plus(&map.pushforward(&f)).max_abs_diff(&map.pushforward(&f)) < 1e-12)) as usize;
    }
    outcome(
        worst <= EXACT_TOL && exact && class_mismatch == 0,
        format!(
            "max |Q - expected| = {worst:.1e} (<= {EXACT_TOL:.0e}); correspondence exact on generator and (H_B, xi) pairs: {exact}; involution class mismatches = {class_mismatch} over {} grid elements ({star_fixed} star-real)",
            3usize.pow(8)
        ),
    )
}

fn spin_valve_condition() -> Outcome {
    let mut reduces = true;
    for (bz, w, a) in [(1.0, 2.0, 0.5), (0.3, 1.7, -0.2), (2.5, 2.1, 1.3)] {
        reduces &= spin_valve_radicand(bz, w, a, 0.0) == suppression_radicand(bz, w, a);
    }
    let b = solve_suppression_spin_valve(1.0, 2.0, 0.5, 0.1).unwrap();
    let b2_err = (b * b - 1.86).abs();
    let p = RabiParameters::new(b, 1.0, 2.0, 0.5).with_spin_torque(0.1);
    let shifted = shifted_condition_residual(&p).abs();
    let pr = PseudoHermitianRabi::new(p, 1e-10).unwrap();
    let pair = pr.metric_pair().unwrap();
    let psi0 = pair.map_state(&Spinor::down());
    let n0 = eta_norm(&psi0, &pair.metric);
    let drift = max_over(linspace(0.0, 50.0, 501).map(|t| {
        let psi = evolve_operator(&pr.hamiltonian(), t).unwrap().apply(&psi0);
        (eta_norm(&psi, &pair.metric) - n0).abs()
    }));
    let same_at_zero = solve_suppression_spin_valve(1.0, 2.0, 0.5, 0.0) == solve_suppression_b(1.0, 2.0, 0.5);
    outcome(
        reduces && same_at_zero && b2_err < 1e-12 && shifted < 1e-10 && drift < 1e-9,
        format!(
            "a=0 reduction exact: {}; |B^2 - 1.86| = {b2_err:.1e}; shifted residual = {shifted:.1e} (< 1e-10); eta-norm drift = {drift:.1e}",
            reduces && same_at_zero
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("damped two-level eta amplitude", Duration::from_secs(1), damped_two_level_amplitude),
        ("Rabi oscillations closed form vs RK4", Duration::from_secs(5), rabi_oscillations),
        ("pseudo-Hermitian Rabi amplitude", Duration::from_secs(60), pseudo_hermitian_rabi),
        ("unitarity under eta only", Duration::from_secs(60), unitarity_split),
        ("canonical limit eta -> I", Duration::from_secs(60), canonical_limit),
        ("LLG identification", Duration::from_secs(60), llg_identification),
        ("classical correspondence O(h^2)", Duration::from_secs(60), correspondence_order),
        ("damping suppression", Duration::from_secs(60), damping_suppression),
        ("rotation R properties", Duration::from_secs(60), rotation_properties),
        ("Grassmann suite", Duration::from_secs(10), grassmann_suite),
        ("spin-valve condition", Duration::from_secs(60), spin_valve_condition),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed < *limit;
        failed += !pass as usize;
        println!(
            "acceptance {:>2} {} {name}: {} [{:.3} s, limit {} s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
