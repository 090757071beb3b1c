//! Acceptance criteria, one line per criterion.

use std::time::Instant;

use curvebody::dynamics::{
    coeff_h, coeff_s, coeff_s_split, integrate, radial_period_quadrature, ApocenterObserver, CasimirMonitor,
    EnergyMonitor, IntegrateOptions, Mode, Model, Space, SystemParams,
};
use curvebody::liepoisson::{
    casimir_check, casimir_i1, casimir_i2, orbit_quadratics_p, symplectic_form_residual, verify_invariant_table, LieAlgebraSpec, TableKind,
};
use curvebody::potential::PotentialSpec;
use curvebody::repkit::{
    build_operator_set, verify_commutators, verify_eigen_series, verify_series_completeness, IrrepPair, SpinLabel,
};
use curvebody::spectral::{
    case_coefficients, compare, grid_eigensolve, levels_coulomb_twobody, levels_onebody, levels_oscillator_twobody,
    OneBodyPotential, RadialProblem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn fmax(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn commutators() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    let pairs = IrrepPair::all_up_to(5);
    for &p in &pairs {
        let r = verify_commutators(&build_operator_set(p));
        ok &= r.pass;
        worst = worst.max(fmax(r.records.iter().map(|c| c.residual)));
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: ok && worst < 1e-12 && secs < 10.0,
        detail: format!("{} pairs, max residual {worst:.2e} (tol 1e-12), {secs:.2} s (limit 10 s)", pairs.len()),
    }
}

fn eigen_series() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut applicable = 0;
    let mut ok = true;
    for p in IrrepPair::all_up_to(8) {
        let r = verify_eigen_series(p);
        if r.applicable {
            applicable += 1;
            ok &= r.pass;
            worst = worst.max(fmax(r.records.iter().map(|c| c.residual)));
        }
    }
    let mut complete = 0;
    let mut incomplete = Vec::new();
    for p in IrrepPair::all_up_to(4) {
        let c = verify_series_completeness(p);
        complete += 1;
        if !c.pass {
            incomplete.push(c.pair);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: ok && worst < 1e-12 && incomplete.is_empty() && secs < 30.0,
        detail: format!(
            "{applicable} applicable pairs, max residual {worst:.2e} (tol 1e-12); completeness on {complete} pairs, \
             failures {incomplete:?}; {secs:.2} s (limit 30 s)"
        ),
    }
}

fn poisson_tables() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    for (alg, kind) in [(LieAlgebraSpec::so4(), TableKind::Spherical), (LieAlgebraSpec::so13(), TableKind::Hyperbolic)] {
        match verify_invariant_table(&alg, kind) {
            Ok(t) => {
                ok &= t.pass;
                worst = worst.max(fmax(t.records.iter().map(|r| r.residual)));
            }
            Err(_) => ok = false,
        }
    }
    let [q1, q2] = orbit_quadratics_p();
    for (alg, c) in [
        (LieAlgebraSpec::so13(), casimir_i1()),
        (LieAlgebraSpec::so13(), casimir_i2()),
        (LieAlgebraSpec::so4(), q1),
        (LieAlgebraSpec::so4(), q2),
    ] {
        match casimir_check(&alg, &c) {
            Ok(r) => worst = worst.max(fmax(r.residuals)),
            Err(_) => ok = false,
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: ok && worst == 0.0 && secs < 1.0,
        detail: format!("2 tables, 4 Casimirs, max coefficient residual {worst:e} (must be 0), {secs:.3} s (limit 1 s)"),
    }
}

fn coefficient_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = rng.random_range(0.01..50.0);
        let m1 = rng.random_range(0.1..10.0);
        let m2 = rng.random_range(0.1..10.0);
        let big_r = rng.random_range(0.1..10.0);
        let p = SystemParams::new(m1, m2, big_r, Space::Sphere, PotentialSpec::Zero).unwrap();
        let c = coeff_s(r, &p).unwrap();
        let (a, b, cc) = coeff_s_split(r, &p);
        for (x, y) in [(c.a, a), (c.b, b), (c.c, cc)] {
            worst = worst.max((x - y).abs() / x.abs().max(1.0));
        }
    }
    let mut cross = 0.0f64;
    for _ in 0..1000 {
        let r = rng.random_range(0.01..0.99);
        let m = rng.random_range(0.1..10.0);
        let big_r = rng.random_range(0.1..10.0);
        let s = SystemParams::new(m, m, big_r, Space::Sphere, PotentialSpec::Zero).unwrap();
        let h = SystemParams::new(m, m, big_r, Space::Hyperbolic, PotentialSpec::Zero).unwrap();
        cross = cross.max(coeff_s(r, &s).unwrap().b.abs()).max(coeff_h(r, &h).unwrap().b.abs());
    }
    Outcome {
        pass: worst < 1e-12 && cross < 1e-12,
        detail: format!("1000 points, max rel diff {worst:.2e}; equal-mass |B| max {cross:.2e} (tol 1e-12)"),
    }
}

fn spectral() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut runs = 0;
    let mut errors = Vec::new();
    for case in [1u8, 2, 7, 8] {
        for ell in 0..=2u32 {
            if case >= 7 && ell == 0 {
                continue;
            }
            let coeffs = case_coefficients(case, SpinLabel::integer(ell)).unwrap();
            for pot in [PotentialSpec::Coulomb { gamma: 1.0 }, PotentialSpec::Oscillator { omega: 1.0 }] {
                let closed = match pot {
                    PotentialSpec::Coulomb { gamma } => levels_coulomb_twobody(&coeffs, gamma, 1.0, 1.0, 5),
                    PotentialSpec::Oscillator { omega } => levels_oscillator_twobody(&coeffs, omega, 1.0, 1.0, 5),
                    _ => unreachable!(),
                }
                .unwrap();
                let problem = RadialProblem::new(coeffs.clone(), pot, 1.0, 1.0).unwrap();
                match grid_eigensolve(&problem, 5, 8000) {
                    Ok(grid) => {
                        let rep = compare(&closed, &grid, 1e-6, 0.5);
                        worst = worst.max(rep.max_rel);
                    }
                    Err(e) => errors.push(format!("case {case} ell {ell}: {e}")),
                }
                runs += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: errors.is_empty() && worst < 1e-6 && secs < 60.0,
        detail: format!("{runs} runs x 5 levels, max rel {worst:.2e} (tol 1e-6), errors {errors:?}, {secs:.2} s (limit 60 s)"),
    }
}

fn degenerate() -> Outcome {
    let (m, gamma) = (1.0, 1.0);
    let coeffs = case_coefficients(1, SpinLabel::integer(0)).unwrap();
    let two = levels_coulomb_twobody(&coeffs, gamma, m, 1.0, 10).unwrap();
    let one = levels_onebody(OneBodyPotential::Coulomb { gamma }, 0, m, 1.0, 10).unwrap();
    let e1 = two.levels[0].energy;
    let ground = (e1 + m * gamma * gamma / 2.0).abs();
    let worst = fmax(two.levels.iter().zip(&one.levels).map(|(a, b)| (a.energy - b.energy).abs() / b.energy.abs().max(1.0)));
    Outcome {
        pass: ground < 1e-12 && worst < 1e-12 && two.levels.len() == 10,
        detail: format!("E1 = {e1:.15} (want -0.5), max diff vs one-particle k<=10 {worst:.2e} (tol 1e-12)"),
    }
}

fn model(m1: f64, m2: f64, space: Space, pot: PotentialSpec, mode: Mode) -> Model {
    Model::new(SystemParams::new(m1, m2, 5.0, space, pot).unwrap(), mode).unwrap()
}

fn drifts(m: &Model, x0: &[f64], dt: f64) -> (f64, f64, bool) {
    let mut e = EnergyMonitor::default();
    let mut c = CasimirMonitor::default();
    let t = integrate(m, x0, 100.0, dt, IntegrateOptions { stride: 1000 }, &mut [&mut e, &mut c]).unwrap();
    (e.max_drift, c.worst(), t.halted)
}

fn conservation() -> Outcome {
    let start = Instant::now();
    let coulomb = PotentialSpec::Coulomb { gamma: 1.0 };
    let osc = PotentialSpec::Oscillator { omega: 1.0 };
    let variants: Vec<(&str, Model, Vec<f64>)> = vec![
        ("s-generic", model(1.0, 2.0, Space::Sphere, coulomb.clone(), Mode::Generic { mu: 1.0, nu: 0.6 }), vec![0.33285, 0.0, 0.3, 0.2]),
        ("s-equal", model(1.0, 2.0, Space::Sphere, coulomb.clone(), Mode::EqualCasimir), vec![0.0567, 0.0, 0.6, 0.2, 0.5]),
        ("s-integrable", model(1.0, 1.0, Space::Sphere, coulomb.clone(), Mode::Integrable { nu: 1.0 }), vec![0.20265, 0.0, 0.0, 1.0]),
        (
            "s-geodesic",
            model(1.0, 1.0, Space::Sphere, PotentialSpec::InvSquarePlusSquare { alpha: 0.1, beta: 1.0 }, Mode::Geodesic),
            vec![0.5901, 0.0, 0.0, 0.0],
        ),
        ("h-generic", model(1.0, 2.0, Space::Hyperbolic, osc.clone(), Mode::Generic { mu: 1.0, nu: 0.6 }), vec![0.124, 0.0, 0.3, 0.2]),
        ("h-nuzero", model(1.0, 2.0, Space::Hyperbolic, osc.clone(), Mode::NuZero), vec![0.0819, 0.0, 0.5, 0.2, 0.1]),
    ];
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = variants
            .iter()
            .map(|(name, m, x0)| s.spawn(move || (*name, drifts(m, x0, 1e-3), drifts(m, x0, 5e-4))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, a, b) in results {
        let ratio = a.0 / b.0;
        let ok = !a.2 && !b.2 && a.0 < 1e-8 && a.1 < 1e-8 && ratio >= 3.5;
        pass &= ok;
        parts.push(format!("{name} dE {:.1e} dC {:.1e} ratio {ratio:.2}{}", a.0, a.1, if ok { "" } else { " FAIL" }));
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: pass && secs < 60.0,
        detail: format!("{}; {secs:.1} s (limit 60 s)", parts.join(", ")),
    }
}

fn integrable_period() -> Outcome {
    // m1 = m2 = 2 gives unit reduced mass
    let params = SystemParams::new(2.0, 2.0, 1.0, Space::Sphere, PotentialSpec::Coulomb { gamma: 1.0 }).unwrap();
    let m = Model::new(params, Mode::Integrable { nu: 1.0 }).unwrap();
    let x0 = [0.8, 0.1, 0.0, 1.0];
    let quad = radial_period_quadrature(&m, &x0).unwrap();
    let mut apo = ApocenterObserver::default();
    integrate(&m, &x0, 60.0 * quad, 1e-3, IntegrateOptions { stride: 1000 }, &mut [&mut apo]).unwrap();
    let sim = apo.period().unwrap_or(f64::NAN);
    let rel = (sim - quad).abs() / quad;
    Outcome {
        pass: rel < 1e-5,
        detail: format!("simulated {sim:.10}, quadrature {quad:.10}, rel {rel:.2e} (tol 1e-5), {} apocenters", apo.times.len()),
    }
}

fn symplectic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut failed = 0;
    for _ in 0..100 {
        let mu: f64 = rng.random_range(0.5..3.0);
        let nu = mu + rng.random_range(0.1..2.0);
        let u = rng.random_range(-0.95..0.95) * mu;
        let psi = rng.random_range(0.0..std::f64::consts::TAU);
        let chi = rng.random_range(0.0..std::f64::consts::TAU);
        match symplectic_form_residual(mu, nu, u, psi, chi) {
            Ok(r) => worst = worst.max(r),
            Err(_) => failed += 1,
        }
    }
    Outcome {
        pass: failed == 0 && worst < 1e-10,
        detail: format!("100 points, max residual {worst:.2e} (tol 1e-10), {failed} chart failures"),
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, commutators),
        (2, eigen_series),
        (3, poisson_tables),
        (4, coefficient_forms),
        (5, spectral),
        (6, degenerate),
        (7, conservation),
        (8, integrable_period),
        (9, symplectic),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {n}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of 9 passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
