//! Symmetric tridiagonal eigenvalues by the implicit-shift QL algorithm.
//!
//! Eigenvalues only (no eigenvector accumulation), O(n²) total work and O(n)
//! storage — sufficient for the matrix dimensions used by the spectral
//! generators (n ≲ 5000). Translation of the classic EISPACK `tql1` routine
//! (Bowdler, Martin, Reinsch & Wilkinson, Num. Math. 11, 1968).

use crate::error::{Error, Result};

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `offdiag` (length `diag.len() - 1`), sorted ascending.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Err(crate::error::domain("empty matrix"));
    }
    if offdiag.len() != n - 1 {
        return Err(crate::error::domain(format!(
            "off-diagonal length {} does not match dimension {n}",
            offdiag.len()
        )));
    }
    let mut d = diag.to_vec();
    if n == 1 {
        return Ok(d);
    }
    // e is padded so e[l] is the subdiagonal below d[l]; e[n-1] is scratch
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(offdiag);

    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible subdiagonal element
            let mut m = l;
            while m < n - 1 {
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
            if iter > 50 {
                return Err(Error::Computation(format!(
                    "tridiagonal QL failed to converge for eigenvalue index {l}"
                )));
            }
            // implicit shift from the trailing 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // underflow: deflate and restart this eigenvalue
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }

    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::stream_rng;
    use rand::Rng;

    #[test]
    fn three_by_three_analytic_roots() {
        // Toeplitz tridiag(1, 2, 1): eigenvalues 2 + 2cos(k*pi/4), k = 1..3
        let ev = symmetric_tridiagonal_eigenvalues(&[2.0, 2.0, 2.0], &[1.0, 1.0]).unwrap();
        let want = [2.0 - 2.0_f64.sqrt(), 2.0, 2.0 + 2.0_f64.sqrt()];
        for (got, w) in ev.iter().zip(want) {
            assert!((got - w).abs() < 1e-10, "{got} vs {w}");
        }
    }

    #[test]
    fn diagonal_matrix_is_identity_case() {
        let ev = symmetric_tridiagonal_eigenvalues(&[3.0, -1.0, 5.0, 0.5], &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(ev, vec![-1.0, 0.5, 3.0, 5.0]);
    }

    #[test]
    fn trace_is_preserved() {
        let mut rng = stream_rng(11, 0);
        for trial in 0..10 {
            let n = 50 + 37 * trial;
            let d: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let e: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let trace: f64 = d.iter().sum();
            let ev = symmetric_tridiagonal_eigenvalues(&d, &e).unwrap();
            let sum: f64 = ev.iter().sum();
            let scale = trace.abs().max(1.0);
            assert!((sum - trace).abs() / scale < 1e-8, "n={n}: {sum} vs {trace}");
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b], [b, c]]: eigenvalues (a+c)/2 ± sqrt(((a-c)/2)² + b²)
        let (a, b, c) = (1.0, 0.7, -2.0);
        let ev = symmetric_tridiagonal_eigenvalues(&[a, c], &[b]).unwrap();
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((ev[0] - (mid - rad)).abs() < 1e-12);
        assert!((ev[1] - (mid + rad)).abs() < 1e-12);
    }

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(symmetric_tridiagonal_eigenvalues(&[1.0, 2.0], &[]).is_err());
        assert!(symmetric_tridiagonal_eigenvalues(&[], &[]).is_err());
    }
}
