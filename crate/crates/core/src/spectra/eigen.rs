//! Eigenvalues of dense real symmetric matrices.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Matrices above this order are refused by the eigensolvers.
pub const DEFAULT_CAP: usize = 1200;

pub const DEFAULT_TOL: f64 = 1e-10;

pub const MAX_SWEEPS: usize = 50;

/// Largest `|M_ij - M_ji|` relative to the largest `|M_ij|`.
pub fn asymmetry(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let scale = m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    worst / scale
}

fn check_input(m: &Array2<f64>, cap: usize) -> Result<usize> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "matrix is {}x{}, not square",
            n,
            m.ncols()
        )));
    }
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let a = asymmetry(m);
    if a > 1e-10 {
        return Err(Error::NotSymmetric { asymmetry: a });
    }
    Ok(n)
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues by cyclic Jacobi rotations, ascending.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `tol · ‖M‖_F`,
/// giving up with [`Error::NoConvergence`] after [`MAX_SWEEPS`].
pub fn eigenvalues_symmetric(m: &Array2<f64>, tol: f64) -> Result<Vec<f64>> {
    eigenvalues_jacobi_capped(m, tol, DEFAULT_CAP)
}

pub fn eigenvalues_jacobi_capped(m: &Array2<f64>, tol: f64, cap: usize) -> Result<Vec<f64>> {
    let n = check_input(m, cap)?;
    let mut a: Vec<f64> = m.iter().copied().collect();
    let frob = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = tol * frob;
    let mut residual = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while residual > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rows p and q, then mirror into the columns
                let (head, tail) = a.split_at_mut(q * n);
                let row_p = &mut head[p * n..p * n + n];
                let row_q = &mut tail[..n];
                for k in 0..n {
                    let x = row_p[k];
                    let y = row_q[k];
                    row_p[k] = c * x - s * y;
                    row_q[k] = s * x + c * y;
                }
                row_p[p] = app - t * apq;
                row_q[q] = aqq + t * apq;
                row_p[q] = 0.0;
                row_q[p] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        a[k * n + p] = a[p * n + k];
                        a[k * n + q] = a[q * n + k];
                    }
                }
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a, n);
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Eigenvalues by Householder reduction to tridiagonal form followed by
/// implicit QL, ascending. Much faster than Jacobi for large orders.
pub fn eigenvalues_tridiagonal(m: &Array2<f64>, cap: usize) -> Result<Vec<f64>> {
    let n = check_input(m, cap)?;
    let mut a: Vec<f64> = m.iter().copied().collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let norm = (lo..n).map(|i| a[i * n + k].powi(2)).sum::<f64>().sqrt();
        d[k] = a[k * n + k];
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[lo * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        e[k] = alpha;
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= alpha;
        let vnorm = (lo..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v[lo..n] {
            *x /= vnorm;
        }
        // B ← H B H with H = I - 2 v vᵀ, as B - 2 (v wᵀ + w vᵀ), w = B v - (vᵀ B v) v
        for i in lo..n {
            let row = &a[i * n + lo..i * n + n];
            w[i] = row.iter().zip(&v[lo..n]).map(|(x, y)| x * y).sum();
        }
        let kappa: f64 = (lo..n).map(|i| v[i] * w[i]).sum();
        for i in lo..n {
            w[i] -= kappa * v[i];
        }
        for i in lo..n {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a[i * n + lo..i * n + n];
            for (j, x) in row.iter_mut().enumerate() {
                *x -= 2.0 * (vi * w[lo + j] + wi * v[lo + j]);
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2];
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        d[n - 1] = a[n * n - 1];
        e[n - 1] = 0.0;
    }
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Implicit QL with Wilkinson-type shifts on the tridiagonal matrix with
/// diagonal `d` and off-diagonal `e[i] = T[i, i+1]`. Overwrites `d` with the
/// eigenvalues.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence {
                    sweeps: iter,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn small_examples() {
        let id = Array2::<f64>::eye(3);
        assert_eq!(eigenvalues_symmetric(&id, DEFAULT_TOL).unwrap(), vec![1.0, 1.0, 1.0]);
        let swap = array![[0.0, 1.0], [1.0, 0.0]];
        let e = eigenvalues_symmetric(&swap, DEFAULT_TOL).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
        let t = eigenvalues_tridiagonal(&swap, DEFAULT_CAP).unwrap();
        assert!((t[0] + 1.0).abs() < 1e-12 && (t[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn refuses_bad_input() {
        let skew = array![[0.0, 1.0], [-1.0, 0.0]];
        assert!(matches!(
            eigenvalues_symmetric(&skew, DEFAULT_TOL),
            Err(Error::NotSymmetric { .. })
        ));
        let big = Array2::<f64>::eye(5);
        assert!(matches!(
            eigenvalues_jacobi_capped(&big, DEFAULT_TOL, 4),
            Err(Error::TooLarge { n: 5, cap: 4 })
        ));
        let rect = Array2::<f64>::zeros((2, 3));
        assert!(eigenvalues_tridiagonal(&rect, DEFAULT_CAP).is_err());
    }

    #[test]
    fn degenerate_sizes() {
        assert!(eigenvalues_tridiagonal(&Array2::zeros((0, 0)), DEFAULT_CAP)
            .unwrap()
            .is_empty());
        assert_eq!(eigenvalues_tridiagonal(&array![[3.0]], DEFAULT_CAP).unwrap(), vec![3.0]);
        assert_eq!(eigenvalues_symmetric(&array![[3.0]], DEFAULT_TOL).unwrap(), vec![3.0]);
    }

    #[test]
    fn solvers_agree_on_a_path_graph() {
        // adjacency of the path on 6 vertices: eigenvalues 2 cos(kπ/7)
        let n = 6;
        let m = Array2::from_shape_fn((n, n), |(i, j)| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let mut want: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 7.0).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for got in [
            eigenvalues_symmetric(&m, DEFAULT_TOL).unwrap(),
            eigenvalues_tridiagonal(&m, DEFAULT_CAP).unwrap(),
        ] {
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-10, "{got:?}");
            }
        }
    }
}
