//! Small dense decompositions: cyclic Jacobi for Hermitian matrices,
//! one-sided Jacobi SVD for real matrices, and Gram–Schmidt completion.

use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix.
///
/// Eigenvalues come back sorted descending (stable, so ties keep the order
/// in which Jacobi left them). Each eigenvector has its first significant
/// component rotated onto the positive real axis.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);

    let frob: f64 = m.data().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));

    let mut vecs = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.col_vec(src);
        let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let phase = col
            .iter()
            .find(|z| z.norm() > 1e-12 * scale)
            .map_or(ONE, |z| z.conj() / z.norm());
        for (i, z) in col.iter().enumerate() {
            vecs[(i, dst)] = z * phase;
        }
    }
    (order.iter().map(|&i| vals[i]).collect(), vecs)
}

/// One Jacobi step on the `(p, q)` plane: phase-align the off-diagonal entry,
/// then apply a real rotation that annihilates it.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m[(p, q)];
    let bn = b.norm();
    if bn < f64::MIN_POSITIVE {
        return;
    }
    let a = m[(p, p)].re;
    let d = m[(q, q)].re;
    let t = if (a - d).abs() < f64::MIN_POSITIVE {
        std::f64::consts::FRAC_PI_4
    } else {
        0.5 * (2.0 * bn / (a - d)).atan()
    };
    let (s, cs) = t.sin_cos();
    // column q picks up the phase e^{-iφ}
    let e = (b / bn).conj();
    let n = m.rows();

    let apply_cols = |x: &mut ComplexMatrix| {
        for k in 0..x.rows() {
            let xp = x[(k, p)];
            let xq = x[(k, q)];
            x[(k, p)] = xp * cs + xq * e * s;
            x[(k, q)] = -xp * s + xq * e * cs;
        }
    };
    apply_cols(m);
    apply_cols(v);
    let ec = e.conj();
    for k in 0..n {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = mp * cs + mq * ec * s;
        m[(q, k)] = -mp * s + mq * ec * cs;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
}

/// Real singular value decomposition `A = U · diag(σ) · Vᵀ` of a square
/// matrix given as rows, via one-sided (Hestenes) Jacobi.
///
/// Singular values are non-negative and sorted descending; `U` and `V` are
/// orthogonal. Columns of `U` for (near-)null singular values are completed
/// by Gram–Schmidt over canonical basis vectors.
pub fn real_svd(a: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut w: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    // w and v are kept row-major; we rotate their columns.
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for row in &w {
                    alpha += row[p] * row[p];
                    beta += row[q] * row[q];
                    gamma += row[p] * row[q];
                }
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut w, &mut v] {
                    for row in mat.iter_mut() {
                        let (xp, xq) = (row[p], row[q]);
                        row[p] = cs * xp - sn * xq;
                        row[q] = sn * xp + cs * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = (0..n).map(|j| w.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let smax = sigma.iter().cloned().fold(0.0, f64::max);

    let mut ucols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for &j in &order {
        let col: Vec<f64> = if sigma[j] > 1e-13 * smax && sigma[j] > 0.0 {
            w.iter().map(|r| r[j] / sigma[j]).collect()
        } else {
            vec![0.0; n]
        };
        ucols.push(col);
    }
    complete_real_basis(&mut ucols);

    let u = (0..n).map(|i| (0..n).map(|k| ucols[k][i]).collect()).collect();
    let vs = (0..n).map(|i| order.iter().map(|&j| v[i][j]).collect()).collect();
    (u, order.iter().map(|&j| sigma[j]).collect(), vs)
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Re-orthonormalizes the columns in order; any column that collapses under
/// Gram–Schmidt is replaced by the first canonical vector that does not.
fn complete_real_basis(cols: &mut [Vec<f64>]) {
    let n = cols.len();
    for k in 0..n {
        let mut x = cols[k].clone();
        let mut ok = orthonormalize_against(&mut x, &cols[..k]);
        let mut e = 0;
        while !ok {
            x = unit(n, e);
            ok = orthonormalize_against(&mut x, &cols[..k]);
            e += 1;
        }
        cols[k] = x;
    }
}

fn orthonormalize_against(x: &mut [f64], basis: &[Vec<f64>]) -> bool {
    let before = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if before == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for b in basis {
            let dot: f64 = x.iter().zip(b).map(|(a, c)| a * c).sum();
            x.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
        }
    }
    let after = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if after < 1e-8 * before {
        return false;
    }
    x.iter_mut().for_each(|a| *a /= after);
    true
}

/// Extends orthonormal complex columns to a full orthonormal basis of ℂⁿ,
/// drawing candidates from the canonical basis in index order.
pub fn complete_unitary_columns(cols: &[Vec<C64>], n: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = cols.to_vec();
    for e in 0..n {
        if basis.len() == n {
            break;
        }
        let mut x = vec![ZERO; n];
        x[e] = ONE;
        for _ in 0..2 {
            for b in &basis {
                let dot: C64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= dot * bi);
            }
        }
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            x.iter_mut().for_each(|z| *z /= norm);
            basis.push(x);
        }
    }
    basis
}

pub fn det3(m: &[Vec<f64>]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    fn reconstruct(vals: &[f64], vecs: &ComplexMatrix) -> ComplexMatrix {
        let d = ComplexMatrix::diag(&vals.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        &(vecs * &d) * &vecs.adjoint()
    }

    #[test]
    fn eigen_of_diagonal_keeps_basis() {
        let m = ComplexMatrix::diag(&[c(0.25, 0.0), c(0.75, 0.0)]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert_eq!(vals, vec![0.75, 0.25]);
        assert!(vecs.max_abs_diff(&ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])) < 1e-15);
    }

    #[test]
    fn eigen_of_complex_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            [c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            [c(1.0, 1.0), c(-1.0, 0.0), c(0.3, 0.0)],
            [c(0.0, -0.5), c(0.3, 0.0), c(0.5, 0.0)],
        ]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        assert!(reconstruct(&vals, &vecs).max_abs_diff(&m) < 1e-13);
        assert!(vecs.unitarity_defect() < 1e-13);
        let tr: f64 = vals.iter().sum();
        assert!((tr - 1.5).abs() < 1e-13);
    }

    #[test]
    fn eigen_phase_convention() {
        let m = ComplexMatrix::from_rows(&[[c(0.5, 0.0), c(0.0, 0.5)], [c(0.0, -0.5), c(0.5, 0.0)]]);
        let (_, vecs) = hermitian_eigen(&m);
        for j in 0..2 {
            let first = vecs[(0, j)];
            assert!(first.im.abs() < 1e-15 && first.re > 0.0);
        }
    }

    #[test]
    fn svd_reconstructs_and_is_orthogonal() {
        let a = vec![vec![0.3, -1.2, 0.5], vec![0.0, 0.7, 2.0], vec![1.1, 0.4, -0.6]];
        let (u, s, v) = real_svd(&a);
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
        for i in 0..3 {
            for j in 0..3 {
                let rec: f64 = (0..3).map(|k| u[i][k] * s[k] * v[j][k]).sum();
                assert!((rec - a[i][j]).abs() < 1e-13);
                let uu: f64 = (0..3).map(|k| u[k][i] * u[k][j]).sum();
                let vv: f64 = (0..3).map(|k| v[k][i] * v[k][j]).sum();
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((uu - id).abs() < 1e-13 && (vv - id).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn svd_rank_deficient() {
        let a = vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
        let (u, s, _) = real_svd(&a);
        assert_eq!(s, vec![1.0, 0.0, 0.0]);
        assert!((det3(&u).abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn completion_yields_unitary() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let cols = vec![vec![c(h, 0.0), ZERO, c(0.0, h), ZERO]];
        let basis = complete_unitary_columns(&cols, 4);
        let mut u = ComplexMatrix::zeros(4, 4);
        for (j, col) in basis.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                u[(i, j)] = *z;
            }
        }
        assert!(u.unitarity_defect() < 1e-14);
        assert_eq!(u.col_vec(0), cols[0]);
    }
}
