use serde::Serialize;

/// A real Lie algebra given by structure constants [x_i, x_j] = Σ_k c^k_ij x_k.
///
/// Only the nonzero c^k_ij with i < j are stored; antisymmetry supplies the rest.
#[derive(Debug, Clone, Serialize)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub coordinate_names: Vec<String>,
    upper: Vec<(usize, usize, usize, f64)>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

// (i, j, k) with ε_ijk = +1, zero-based.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

impl LieAlgebraSpec {
    /// Builds from (i, j, k, c) meaning c^k_ij = c. Either ordering of i, j may be given.
    pub fn new(name: &str, coordinate_names: Vec<String>, constants: &[(usize, usize, usize, f64)]) -> Self {
        let dim = coordinate_names.len();
        let mut upper = Vec::new();
        for &(i, j, k, c) in constants {
            assert!(i < dim && j < dim && k < dim && i != j);
            if i < j {
                upper.push((i, j, k, c));
            } else {
                upper.push((j, i, k, -c));
            }
        }
        upper.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        Self {
            name: name.to_string(),
            dim,
            coordinate_names,
            upper,
        }
    }

    /// Dense c^k_ij, indexed [i][j][k].
    pub fn dense(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim;
        let mut c = vec![vec![vec![0.0; n]; n]; n];
        for &(i, j, k, v) in &self.upper {
            c[i][j][k] += v;
            c[j][i][k] -= v;
        }
        c
    }

    /// Nonzero (i, j, k, c^k_ij) over all ordered pairs i ≠ j.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        self.upper
            .iter()
            .flat_map(|&(i, j, k, c)| [(i, j, k, c), (j, i, k, -c)])
    }

    /// max |c^k_ij + c^k_ji|.
    pub fn antisymmetry_residual(&self) -> f64 {
        let c = self.dense();
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((c[i][j][k] + c[j][i][k]).abs());
                }
            }
        }
        worst
    }

    /// Brute-force max over (i, j, k, l) of Σ_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj).
    pub fn jacobi_residual(&self) -> f64 {
        let c = self.dense();
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s: f64 = (0..n)
                            .map(|m| c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l])
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// so(4) on (p₁,…,p₆) = (X₂₃, X₃₁, X₁₂, Y₁, Y₂, Y₃):
    /// [X_i,X_j] = ε X_k, [Y_i,Y_j] = ε X_k, [X_i,Y_j] = ε Y_k.
    pub fn so4() -> Self {
        Self::six_dim("so(4)", 1.0)
    }

    /// so(1,3) on the same coordinates, with [Y_i,Y_j] = −ε X_k.
    pub fn so13() -> Self {
        Self::six_dim("so(1,3)", -1.0)
    }

    fn six_dim(name: &str, yy: f64) -> Self {
        let mut c = Vec::new();
        for (i, j, k) in CYCLIC {
            c.push((i, j, k, 1.0));
            c.push((3 + i, 3 + j, k, yy));
            c.push((i, 3 + j, 3 + k, 1.0));
            c.push((3 + i, j, 3 + k, 1.0));
        }
        Self::new(name, names(&["p1", "p2", "p3", "p4", "p5", "p6"]), &c)
    }

    /// so(4) = so(3) ⊕ so(3) on (u₁,u₂,u₃,v₁,v₂,v₃), with p_i = u_i + v_i and p_{3+i} = u_i − v_i.
    pub fn so4_split() -> Self {
        let mut c = Vec::new();
        for (i, j, k) in CYCLIC {
            c.push((i, j, k, 1.0));
            c.push((3 + i, 3 + j, 3 + k, 1.0));
        }
        Self::new("so(4) split", names(&["u1", "u2", "u3", "v1", "v2", "v3"]), &c)
    }

    /// so(3) on (p₃,p₄,p₅): [p₃,p₄] = p₅, [p₄,p₅] = p₃, [p₅,p₃] = p₄.
    pub fn so3() -> Self {
        Self::new(
            "so(3)",
            names(&["p3", "p4", "p5"]),
            &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)],
        )
    }

    /// so(1,2) on (p₃,p₄,p₅): [p₃,p₄] = p₅, [p₄,p₅] = −p₃, [p₅,p₃] = p₄.
    pub fn so12() -> Self {
        Self::new(
            "so(1,2)",
            names(&["p3", "p4", "p5"]),
            &[(0, 1, 2, 1.0), (1, 2, 0, -1.0), (2, 0, 1, 1.0)],
        )
    }

    pub fn builtin() -> Vec<Self> {
        vec![Self::so4(), Self::so13(), Self::so4_split(), Self::so3(), Self::so12()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_satisfy_jacobi() {
        for alg in LieAlgebraSpec::builtin() {
            assert_eq!(alg.antisymmetry_residual(), 0.0, "{}", alg.name);
            assert!(alg.jacobi_residual() < 1e-13, "{}", alg.name);
        }
    }

    #[test]
    fn broken_constants_fail_jacobi() {
        let bad = LieAlgebraSpec::new(
            "bad",
            names(&["a", "b", "c"]),
            &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 2.0), (0, 1, 0, 1.0)],
        );
        assert!(bad.jacobi_residual() > 0.1);
    }

    #[test]
    fn reversed_pair_is_stored_antisymmetric() {
        let a = LieAlgebraSpec::new("t", names(&["a", "b", "c"]), &[(1, 0, 2, 1.0)]);
        assert_eq!(a.dense()[0][1][2], -1.0);
    }
}
