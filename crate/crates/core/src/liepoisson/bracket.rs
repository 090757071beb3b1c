use super::algebra::LieAlgebraSpec;
use super::poly::PolyFunction;
use super::LieError;

/// [f,g](x) = Σ c^k_ij x_k ∂_i f ∂_j g.
pub fn lie_poisson_bracket(f: &PolyFunction, g: &PolyFunction, alg: &LieAlgebraSpec) -> Result<PolyFunction, LieError> {
    for p in [f, g] {
        if p.nvars() != alg.dim {
            return Err(LieError::DimensionMismatch {
                expected: alg.dim,
                got: p.nvars(),
            });
        }
    }
    let n = alg.dim;
    let df: Vec<_> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<_> = (0..n).map(|i| g.derivative(i)).collect();
    let mut out = PolyFunction::zero(n);
    for (i, j, k, c) in alg.entries() {
        if df[i].is_empty() || dg[j].is_empty() {
            continue;
        }
        let term = &(&df[i] * &dg[j]) * &PolyFunction::var(n, k);
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// Central-difference gradient with step `h`.
pub fn numeric_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            y[i] = x[i] + h;
            let fp = f(&y);
            y[i] = x[i] - h;
            let fm = f(&y);
            y[i] = x[i];
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

/// The bracket formula evaluated at a point from central-difference gradients of arbitrary functions.
pub fn numeric_bracket(
    f: &dyn Fn(&[f64]) -> f64,
    g: &dyn Fn(&[f64]) -> f64,
    alg: &LieAlgebraSpec,
    x: &[f64],
    h: f64,
) -> f64 {
    let gf = numeric_gradient(f, x, h);
    let gg = numeric_gradient(g, x, h);
    alg.entries().map(|(i, j, k, c)| c * x[k] * gf[i] * gg[j]).sum()
}

/// ẋ_i = [x_i, H] = Σ c^k_ij x_k ∂_j H, given ∇H at x.
pub fn lie_poisson_vector_field(alg: &LieAlgebraSpec, x: &[f64], grad_h: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; alg.dim];
    for (i, j, k, c) in alg.entries() {
        out[i] += c * x[k] * grad_h[j];
    }
    out
}
