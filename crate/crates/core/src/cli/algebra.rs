use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::CliError;
use crate::liepoisson::{
    casimir_check, casimir_i1, casimir_i2, casimir_so12, casimir_so3, orbit_quadratics_p, orbit_quadratics_split,
    symplectic_form_residual, verify_invariant_table, LieAlgebraSpec, TableKind,
};
use crate::repkit::{
    build_operator_set, verify_commutators, verify_eigen_series_with, verify_series_completeness, IrrepPair,
};

pub const SYMPLECTIC_POINTS: usize = 100;
pub const SYMPLECTIC_TOL: f64 = 1e-10;

fn pair_checks(pair: IrrepPair, flip_d3: bool) -> Vec<Value> {
    let mut set = build_operator_set(pair);
    if flip_d3 {
        set.negate_d3();
    }
    let mut lines = Vec::new();
    for r in verify_commutators(&set).records {
        lines.push(json!({"suite": "commutators", "pair": r.pair, "relation": r.id, "residual": r.residual, "pass": r.pass}));
    }
    let series = verify_eigen_series_with(&set);
    if series.applicable {
        for r in series.records {
            lines.push(json!({"suite": "eigen_series", "pair": r.pair, "relation": r.id, "residual": r.residual, "pass": r.pass}));
        }
    }
    let c = verify_series_completeness(pair);
    lines.push(json!({
        "suite": "completeness", "pair": c.pair, "relation": "no common eigenvector outside the series",
        "found": c.found, "expected": c.expected, "unexpected": c.unexpected, "missing": c.missing, "pass": c.pass
    }));
    lines
}

fn poisson_checks(seed: u64) -> Vec<Value> {
    let mut lines = Vec::new();
    for (alg, kind) in [
        (LieAlgebraSpec::so4(), TableKind::Spherical),
        (LieAlgebraSpec::so13(), TableKind::Hyperbolic),
    ] {
        match verify_invariant_table(&alg, kind) {
            Ok(t) => {
                for r in t.records {
                    lines.push(json!({"suite": "poisson_table", "algebra": t.algebra, "relation": r.relation,
                        "residual": r.residual, "off_slice": r.off_slice, "pass": r.pass}));
                }
            }
            Err(e) => lines.push(json!({"suite": "poisson_table", "algebra": alg.name, "relation": e.to_string(), "pass": false})),
        }
    }
    let [q1, q2] = orbit_quadratics_p();
    let [s1, s2] = orbit_quadratics_split();
    let checks = [
        (LieAlgebraSpec::so13(), casimir_i1()),
        (LieAlgebraSpec::so13(), casimir_i2()),
        (LieAlgebraSpec::so4(), q1),
        (LieAlgebraSpec::so4(), q2),
        (LieAlgebraSpec::so4_split(), s1),
        (LieAlgebraSpec::so4_split(), s2),
        (LieAlgebraSpec::so3(), casimir_so3()),
        (LieAlgebraSpec::so12(), casimir_so12()),
    ];
    for (alg, c) in &checks {
        match casimir_check(alg, c) {
            Ok(r) => {
                let worst = r.residuals.iter().fold(0.0f64, |a, b| a.max(*b));
                lines.push(json!({"suite": "casimir", "algebra": r.algebra, "relation": r.casimir, "residual": worst, "pass": r.pass}));
            }
            Err(e) => lines.push(json!({"suite": "casimir", "algebra": alg.name, "relation": e.to_string(), "pass": false})),
        }
    }
    let (worst, failed) = symplectic_sample(seed);
    lines.push(json!({"suite": "symplectic_form", "relation": "chart pullback = du^d(psi-chi)", "points": SYMPLECTIC_POINTS,
        "residual": worst, "errors": failed, "pass": failed == 0 && worst < SYMPLECTIC_TOL}));
    lines
}

/// Largest symplectic-form residual over random chart points, and the number of points that failed to evaluate.
pub fn symplectic_sample(seed: u64) -> (f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut failed = 0;
    for _ in 0..SYMPLECTIC_POINTS {
        let mu: f64 = rng.random_range(0.5..3.0);
        let mut nu = rng.random_range(0.5..3.0);
        if (mu - nu).abs() < 0.1 {
            nu += 0.5;
        }
        let bound = f64::min(mu, nu);
        let u = rng.random_range(-0.95..0.95) * bound;
        let psi = rng.random_range(0.0..std::f64::consts::TAU);
        let chi = rng.random_range(0.0..std::f64::consts::TAU);
        match symplectic_form_residual(mu, nu, u, psi, chi) {
            Ok(r) => worst = worst.max(r),
            Err(_) => failed += 1,
        }
    }
    (worst, failed)
}

pub fn verify(max_two_ell: u32, flip_d3: bool, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let pairs = IrrepPair::all_up_to(max_two_ell);
    let per_pair: Vec<Vec<Value>> = pairs.par_iter().map(|&p| pair_checks(p, flip_d3)).collect();
    let mut failed = Vec::new();
    let mut checked = 0usize;
    for line in per_pair.into_iter().flatten().chain(poisson_checks(seed)) {
        checked += 1;
        if line["pass"] != Value::Bool(true) {
            let pair = line.get("pair").or_else(|| line.get("algebra")).cloned().unwrap_or(Value::Null);
            failed.push(format!(
                "{} {} {}",
                line["suite"].as_str().unwrap_or(""),
                pair.as_str().unwrap_or(""),
                line["relation"].as_str().unwrap_or("")
            ));
        }
        writeln!(out, "{line}")?;
    }
    writeln!(
        out,
        "{}",
        json!({"suite": "summary", "max_two_ell": max_two_ell, "checked": checked, "failed": failed.len(), "pass": failed.is_empty()})
    )?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join("; ")))
    }
}
