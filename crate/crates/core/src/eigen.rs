//! Floating-point symmetric eigenvalues: cyclic Jacobi rotations, and a
//! LAPACK divide-and-conquer path for large blocks.

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before reporting non-convergence.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the symmetric `n × n` row-major matrix `a` by cyclic Jacobi
/// rotations, sweeping rows in order until the largest off-diagonal
/// magnitude drops below `tol`. `a` is overwritten.
pub fn jacobi_eigenvalues(a: &mut [f64], n: usize, tol: f64) -> Result<Vec<f64>> {
    check_input(a, n, tol)?;
    let mut sweeps = 0;
    loop {
        let off = max_off_diagonal(a, n);
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge: max off-diagonal {off:e} after {sweeps} sweeps (n = {n}, tol = {tol:e})"
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < tol * 1e-3 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

fn check_input(a: &[f64], n: usize, tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Argument(format!("tolerance must be positive and finite, got {tol}")));
    }
    if a.len() != n * n {
        return Err(Error::Argument(format!("expected {} entries, got {}", n * n, a.len())));
    }
    Ok(())
}

fn max_off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut m = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            m = m.max(a[i * n + j].abs());
        }
    }
    m
}

/// Eigenvalues by LAPACK `dsyevd` (values only). `a` is overwritten.
#[cfg(feature = "lapack")]
pub fn lapack_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(Error::Argument(format!("expected {} entries, got {}", n * n, a.len())));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let ni = i32::try_from(n).map_err(|_| Error::Argument("matrix too large for LAPACK".into()))?;
    let mut w = vec![0.0; n];
    let mut info = 0;
    let mut work = vec![0.0; 1];
    let mut iwork = vec![0i32; 1];
    // SAFETY: buffers match the sizes declared to LAPACK; the first call is a workspace query.
    unsafe {
        lapack::dsyevd(b'N', b'U', ni, a, ni, &mut w, &mut work, -1, &mut iwork, -1, &mut info);
    }
    if info != 0 {
        return Err(Error::Numeric(format!("dsyevd workspace query failed, info = {info}")));
    }
    let lwork = work[0] as i32;
    let liwork = iwork[0];
    let mut work = vec![0.0; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    // SAFETY: as above, with the workspace sizes LAPACK requested.
    unsafe {
        lapack::dsyevd(b'N', b'U', ni, a, ni, &mut w, &mut work, lwork, &mut iwork, liwork, &mut info);
    }
    if info != 0 {
        return Err(Error::Numeric(format!("dsyevd failed to converge, info = {info}")));
    }
    Ok(w)
}

/// Blocks at or below this size use Jacobi; larger ones use LAPACK when available.
pub const JACOBI_MAX_BLOCK: usize = 512;

/// Eigenvalues of a symmetric block, choosing the solver by size.
pub fn symmetric_eigenvalues(a: &mut [f64], n: usize, tol: f64) -> Result<Vec<f64>> {
    check_input(a, n, tol)?;
    #[cfg(feature = "lapack")]
    if n > JACOBI_MAX_BLOCK {
        return lapack_eigenvalues(a, n);
    }
    jacobi_eigenvalues(a, n, tol)
}
