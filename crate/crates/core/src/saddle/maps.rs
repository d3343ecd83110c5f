//! Linear coordinate changes attached to a mutation `μ_k` with sign `ε`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::{pos, ExchangeMatrix};

/// Integer matrices `M` with `x'' = M x'` for the `u`-type and `x`-type
/// (`w`, `p`, `D`) coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformSpec {
    pub k: usize,
    pub eps: i8,
    /// `u''_k = -u'_k + Σ_j [-ε b'_jk]_+ u'_j`, other coordinates fixed.
    pub u: Vec<Vec<i64>>,
    /// `x''_k = -x'_k`, `x''_i = x'_i + [ε b'_ki]_+ x'_k`; shared by `w`, `p`, `D`.
    pub x: Vec<Vec<i64>>,
}

impl TransformSpec {
    pub fn apply_u(&self, v: &[f64]) -> Vec<f64> {
        apply(&self.u, v)
    }

    pub fn apply_x(&self, v: &[f64]) -> Vec<f64> {
        apply(&self.x, v)
    }

    /// `Σ u''_i w''_i - Σ u'_i w'_i`.
    pub fn pairing_defect(&self, u: &[f64], w: &[f64]) -> f64 {
        let before: f64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
        let after: f64 = self.apply_u(u).iter().zip(self.apply_x(w)).map(|(a, b)| a * b).sum();
        after - before
    }

    /// `M_uᵀ M_x`, the identity when the two maps are dual.
    pub fn duality_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.u.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|r| self.u[r][i] * self.x[r][j]).sum()).collect())
            .collect()
    }
}

fn apply(m: &[Vec<i64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(&a, b)| a as f64 * b).sum()).collect()
}

pub fn coordinate_maps(b: &ExchangeMatrix, k: usize, eps: i8) -> Result<TransformSpec> {
    b.check_index(k)?;
    if eps != 1 && eps != -1 {
        return Err(Error::Domain(format!("sign must be +1 or -1, got {eps}")));
    }
    let n = b.rank();
    let e = i64::from(eps);
    let mut u = identity(n);
    let mut x = identity(n);
    for j in 0..n {
        u[k][j] = if j == k { -1 } else { pos(-e * b.get(j, k)) };
    }
    for (i, row) in x.iter_mut().enumerate() {
        row[k] = if i == k { -1 } else { pos(e * b.get(k, i)) };
    }
    Ok(TransformSpec { k, eps, u, x })
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saddle::solution::path;
    use crate::seedspec::Builtin;

    #[test]
    fn a2_table() {
        let (b, s) = Builtin::A2.resolve();
        let p = path(&b, &s).unwrap();
        // Rows: images of u₁, u₂ (u-map) and w₁, w₂ (x-map), as coefficient rows.
        let expected_u = [
            [[-1, 0], [0, 1]],
            [[1, 0], [0, -1]],
            [[-1, 1], [0, 1]],
            [[1, 0], [1, -1]],
            [[-1, 1], [0, 1]],
        ];
        let expected_w = [
            [[-1, 0], [0, 1]],
            [[1, 0], [0, -1]],
            [[-1, 0], [1, 1]],
            [[1, 1], [0, -1]],
            [[-1, 0], [1, 1]],
        ];
        for t in 0..5 {
            let m = coordinate_maps(&p.matrices[t], s.sequence[t], p.signs[t]).unwrap();
            let u: Vec<Vec<i64>> = expected_u[t].iter().map(|r| r.to_vec()).collect();
            let w: Vec<Vec<i64>> = expected_w[t].iter().map(|r| r.to_vec()).collect();
            assert_eq!(m.u, u, "t = {}", t + 1);
            assert_eq!(m.x, w, "t = {}", t + 1);
        }
    }

    #[test]
    fn isolated_index_is_a_sign_flip() {
        let b = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]).unwrap();
        let m = coordinate_maps(&b, 2, 1).unwrap();
        assert_eq!(m.u, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]);
        assert_eq!(m.x, m.u);
    }

    #[test]
    fn dual_pairing_is_preserved() {
        let b = ExchangeMatrix::new(vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]]).unwrap();
        for k in 0..3 {
            for eps in [1, -1] {
                let m = coordinate_maps(&b, k, eps).unwrap();
                let id: Vec<Vec<i64>> = identity(3);
                assert_eq!(m.duality_matrix(), id);
                assert!(m.pairing_defect(&[0.3, -1.7, 2.2], &[1.1, 0.4, -0.9]).abs() < 1e-14);
            }
        }
    }
}
