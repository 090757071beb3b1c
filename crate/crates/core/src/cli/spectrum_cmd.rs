use std::io::Write;
use std::path::Path;

use serde_json::json;

use super::{potential_from_config, CliError, Format, RunConfig, POTENTIAL_KEYS};
use crate::potential::PotentialSpec;
use crate::repkit::SpinLabel;
use crate::spectral::{
    case_coefficients, compare, grid_eigensolve, levels_coulomb_twobody, levels_inv_square, levels_onebody,
    levels_oscillator_twobody, CaseCoefficients, OneBodyPotential, RadialProblem, SpectralError, SpectrumResult,
};

const KEYS: [&str; 9] = ["case", "ell", "particles", "m", "R", "count", "method", "n_points", "tol"];

fn config_error(e: SpectralError) -> CliError {
    CliError::Config(e.to_string())
}

fn closed_form(
    coeffs: &CaseCoefficients,
    pot: &PotentialSpec,
    onebody: bool,
    m: f64,
    big_r: f64,
    count: usize,
) -> Result<SpectrumResult, CliError> {
    let res = if onebody {
        let l = coeffs.ell.twice() / 2;
        let p = match *pot {
            PotentialSpec::Coulomb { gamma } => OneBodyPotential::Coulomb { gamma },
            PotentialSpec::Oscillator { omega } => OneBodyPotential::Oscillator { omega },
            _ => return Err(CliError::Config("one-particle closed form exists for coulomb and oscillator only".into())),
        };
        levels_onebody(p, l, m, big_r, count)
    } else {
        match *pot {
            PotentialSpec::Coulomb { gamma } => levels_coulomb_twobody(coeffs, gamma, m, big_r, count),
            PotentialSpec::Oscillator { omega } => levels_oscillator_twobody(coeffs, omega, m, big_r, count),
            PotentialSpec::InvSquarePlusSquare { alpha, beta } => levels_inv_square(coeffs, alpha, beta, m, big_r, count),
            PotentialSpec::Zero => levels_inv_square(coeffs, 0.0, 0.0, m, big_r, count),
            PotentialSpec::Tabulated(_) => {
                return Err(CliError::Config("no closed form for a tabulated potential; use method = grid".into()))
            }
        }
    };
    res.map_err(|e| match e {
        SpectralError::NotSymmetric { .. } => {
            CliError::Config(format!("{e}; exact Coulomb and oscillator series exist only in cases 1, 2, 7, 8"))
        }
        e => config_error(e),
    })
}

pub fn run(cfg: &RunConfig, dir: &Path, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let allowed: Vec<&str> = KEYS.iter().chain(POTENTIAL_KEYS.iter()).copied().collect();
    cfg.check_keys(&allowed)?;
    let onebody = match cfg.get_str("particles").unwrap_or("two") {
        "two" => false,
        "one" => true,
        other => return Err(CliError::Config(format!("particles must be one or two, got {other:?}"))),
    };
    let case_id: u8 = cfg.or("case", 1)?;
    let ell = SpinLabel::parse(cfg.get_str("ell").unwrap_or("0")).map_err(|e| CliError::Config(e.to_string()))?;
    if onebody && (case_id != 1 || !ell.is_integer()) {
        return Err(CliError::Config("particles = one takes case = 1 and an integer ell (= l)".into()));
    }
    let coeffs = case_coefficients(case_id, ell).map_err(config_error)?;
    let pot = potential_from_config(cfg)?;
    let m = if cfg.get_str("m").is_some() { cfg.positive("m")? } else { 1.0 };
    let big_r = if cfg.get_str("R").is_some() { cfg.positive("R")? } else { 1.0 };
    let count: usize = cfg.or("count", 5)?;
    let n_points: usize = cfg.or("n_points", 8000)?;
    let tol: f64 = cfg.or("tol", 1e-6)?;
    let method = cfg.get_str("method").unwrap_or("both");
    let (want_closed, want_grid) = match method {
        "closed_form" => (true, false),
        "grid" => (false, true),
        "both" => (true, true),
        other => return Err(CliError::Config(format!("method must be closed_form, grid or both, got {other:?}"))),
    };
    if count == 0 {
        return Err(CliError::Config("count must be >= 1".into()));
    }

    let closed = want_closed
        .then(|| closed_form(&coeffs, &pot, onebody, m, big_r, count))
        .transpose()?;
    let grid = if want_grid {
        let problem = RadialProblem::new(coeffs, pot.clone(), m, big_r).map_err(config_error)?;
        Some(grid_eigensolve(&problem, count, n_points).map_err(|e| match e {
            SpectralError::NotConverged { .. } => CliError::Failed(e.to_string()),
            e => config_error(e),
        })?)
    } else {
        None
    };
    let report = match (&closed, &grid) {
        (Some(c), Some(g)) => Some(compare(c, g, tol, 1.0 / (2.0 * m * big_r * big_r))),
        _ => None,
    };

    std::fs::create_dir_all(dir)?;
    match format {
        Format::Csv => {
            if let Some(c) = &closed {
                std::fs::write(dir.join("closed_form.csv"), c.to_csv())?;
            }
            if let Some(g) = &grid {
                std::fs::write(dir.join("grid.csv"), g.to_csv())?;
            }
            if let Some(r) = &report {
                std::fs::write(dir.join("comparison.csv"), r.to_csv())?;
            }
        }
        Format::Json => {
            let doc = json!({"closed_form": closed, "grid": grid, "comparison": report});
            std::fs::write(dir.join("spectrum.json"), serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
    }
    for w in closed.iter().flat_map(|c| &c.warnings) {
        writeln!(out, "warning: {w}")?;
    }
    let show = closed.as_ref().or(grid.as_ref()).expect("at least one method");
    writeln!(out, "case {case_id}, ell = {ell}, potential {}", pot.name())?;
    for (i, l) in show.levels.iter().enumerate() {
        match (&grid, &report) {
            (Some(g), Some(r)) => writeln!(
                out,
                "k = {:>3}  E = {:.16e}  grid = {:.16e}  rel = {:.3e}",
                l.k, l.energy, g.levels[i].energy, r.rows[i].rel
            )?,
            _ => writeln!(out, "k = {:>3}  E = {:.16e}", l.k, l.energy)?,
        }
    }
    if let Some(r) = report {
        if !r.pass {
            return Err(CliError::Failed(format!(
                "closed form and grid differ by relative {:.3e} > {:.1e}",
                r.max_rel, r.tol
            )));
        }
    }
    Ok(())
}
