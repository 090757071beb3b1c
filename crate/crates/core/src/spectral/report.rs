use serde::Serialize;

use super::SpectrumResult;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub k: u32,
    pub closed_form: f64,
    pub grid: f64,
    pub abs: f64,
    pub rel: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub max_rel: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Pairs levels by position: the j-th closed-form level against the j-th grid eigenvalue.
///
/// Relative errors are taken against max(|E|, `floor`), so a zero level does not divide by zero.
pub fn compare(closed: &SpectrumResult, grid: &SpectrumResult, tol: f64, floor: f64) -> ComparisonReport {
    let rows: Vec<ComparisonRow> = closed
        .levels
        .iter()
        .zip(&grid.levels)
        .map(|(c, g)| {
            let abs = (c.energy - g.energy).abs();
            ComparisonRow {
                k: c.k,
                closed_form: c.energy,
                grid: g.energy,
                abs,
                rel: abs / c.energy.abs().max(floor).max(f64::MIN_POSITIVE),
            }
        })
        .collect();
    let max_rel = rows.iter().fold(0.0f64, |m, r| m.max(r.rel));
    ComparisonReport {
        pass: !rows.is_empty() && max_rel < tol,
        rows,
        max_rel,
        tol,
    }
}

impl ComparisonReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,closed_form,grid,abs,rel\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.k, r.closed_form, r.grid, r.abs, r.rel
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Level, Method};

    fn result(e: &[f64], method: Method) -> SpectrumResult {
        SpectrumResult {
            case_id: Some(1),
            ell: None,
            potential: "zero".into(),
            method,
            levels: e.iter().enumerate().map(|(k, &energy)| Level { k: k as u32, energy }).collect(),
            warnings: vec![],
        }
    }

    #[test]
    fn zero_level_uses_floor() {
        let c = result(&[0.0, 1.5], Method::ClosedForm);
        let g = result(&[1e-10, 1.5 + 1e-9], Method::Grid { n_points: 10 });
        let r = compare(&c, &g, 1e-6, 0.5);
        assert!(r.pass);
        assert!((r.rows[0].rel - 2e-10).abs() < 1e-20);
        assert!(!compare(&c, &g, 1e-12, 0.5).pass);
    }
}
