//! Eigendecomposition of complex Hermitian matrices by cyclic Jacobi
//! rotations.
//!
//! Dimensions in this crate never exceed 16, so a dense Jacobi sweep is both
//! simple and accurate: each rotation annihilates one off-diagonal pair and
//! the off-diagonal Frobenius norm decreases monotonically.

use num_complex::Complex64;

/// Eigenvalues (ascending) and eigenvectors (column-major: entry `i` of
/// eigenvector `j` is at `i*n + j`) of a Hermitian matrix given row-major.
/// The input's strict upper triangle and real diagonal are trusted; tiny
/// anti-Hermitian noise is symmetrized away.
pub(crate) fn eigh(matrix: &[Complex64], n: usize) -> (Vec<f64>, Vec<Complex64>) {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    // Symmetrize: H <- (M + M^dag)/2 guards against rounding noise.
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] = (matrix[i * n + j] + matrix[j * n + i].conj()) * 0.5;
        }
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let tol = 1e-14 * scale;

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[p * n + q];
                if hpq.norm() < tol / (n as f64) {
                    continue;
                }
                let alpha = h[p * n + p].re;
                let beta = h[q * n + q].re;
                let phase = hpq / hpq.norm();
                let angle = 0.5 * (2.0 * hpq.norm()).atan2(alpha - beta);
                let c = angle.cos();
                let sigma = phase * angle.sin();

                // H <- U^dag H U with U the identity except
                // U[p][p]=c, U[p][q]=-sigma, U[q][p]=conj(sigma), U[q][q]=c.
                for i in 0..n {
                    let hip = h[i * n + p];
                    let hiq = h[i * n + q];
                    h[i * n + p] = hip * c + hiq * sigma.conj();
                    h[i * n + q] = -hip * sigma + hiq * c;
                }
                for j in 0..n {
                    let hpj = h[p * n + j];
                    let hqj = h[q * n + j];
                    h[p * n + j] = hpj * c + hqj * sigma;
                    h[q * n + j] = -hpj * sigma.conj() + hqj * c;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * c + viq * sigma.conj();
                    v[i * n + q] = -vip * sigma + viq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        h[a * n + a]
            .re
            .partial_cmp(&h[b * n + b].re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| h[i * n + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_col] = v[i * n + old_col];
        }
    }
    (values, vectors)
}

/// Eigenvalues only, ascending.
pub(crate) fn eigvalsh(matrix: &[Complex64], n: usize) -> Vec<f64> {
    eigh(matrix, n).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let m = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let vals = eigvalsh(&m, 2);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn known_complex_two_by_two() {
        // [[2, 1-i], [1+i, 3]] has eigenvalues (5 +- sqrt(1+8))/2 = 1 and 4.
        let m = vec![c(2.0, 0.0), c(1.0, -1.0), c(1.0, 1.0), c(3.0, 0.0)];
        let vals = eigvalsh(&m, 2);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 4.0).abs() < 1e-12);
    }

    fn fixed_hermitian(n: usize) -> Vec<Complex64> {
        // Deterministic non-trivial Hermitian matrix: H = (M + M^dag)/2 from a
        // quadratic integer pattern.
        let mut m = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let re = ((i * 7 + j * 3) % 11) as f64 - 5.0;
                let im = ((i * 5 + j * 2 + 1) % 7) as f64 - 3.0;
                m[i * n + j] = c(re, im);
            }
        }
        let mut h = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                h[i * n + j] = (m[i * n + j] + m[j * n + i].conj()) * 0.5;
            }
        }
        h
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        for n in [2usize, 4, 8, 16] {
            let h = fixed_hermitian(n);
            let (vals, vecs) = eigh(&h, n);
            // Orthonormality of columns.
            for a in 0..n {
                for b in 0..n {
                    let mut ip = c(0.0, 0.0);
                    for i in 0..n {
                        ip += vecs[i * n + a].conj() * vecs[i * n + b];
                    }
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((ip - expect).norm() < 1e-10, "n={n} ({a},{b})");
                }
            }
            // Reconstruction V diag(vals) V^dag == H.
            for i in 0..n {
                for j in 0..n {
                    let mut entry = c(0.0, 0.0);
                    for k in 0..n {
                        entry += vecs[i * n + k] * vals[k] * vecs[j * n + k].conj();
                    }
                    assert!((entry - h[i * n + j]).norm() < 1e-9, "n={n} ({i},{j})");
                }
            }
            // Ascending order.
            for w in vals.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalue_equation_holds() {
        let n = 4;
        let h = fixed_hermitian(n);
        let (vals, vecs) = eigh(&h, n);
        for k in 0..n {
            for i in 0..n {
                let mut hv = c(0.0, 0.0);
                for j in 0..n {
                    hv += h[i * n + j] * vecs[j * n + k];
                }
                let lv = vecs[i * n + k] * vals[k];
                assert!((hv - lv).norm() < 1e-9);
            }
        }
    }
}
