//! Eigenvalues of small dense Hermitian matrices.
//!
//! Banded inputs (diagonal or tridiagonal) go through an implicit QL sweep on
//! the equivalent real symmetric tridiagonal matrix; everything else is handed
//! to nalgebra's Hermitian eigensolver.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::Tolerances;

/// Total sweep budget per matrix dimension.
const QL_SWEEPS_PER_DIM: usize = 30;

/// Off-diagonals below this (on the unit-norm matrix) are dropped; far under
/// the `eps ||A||` absolute accuracy of any symmetric eigensolver, and it
/// keeps the rotations out of subnormal arithmetic.
const DEFLATION_FLOOR: f64 = f64::EPSILON * f64::EPSILON;

/// Max `|A_ij - conj(A_ji)|`.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Largest `|i - j|` with `A_ij != 0`.
pub fn bandwidth(m: &DMatrix<Complex64>) -> usize {
    let mut bw = 0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                bw = bw.max(i.abs_diff(j));
            }
        }
    }
    bw
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigenvalues_hermitian(m: &DMatrix<Complex64>, tol: &Tolerances) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Contract(format!(
            "eigenvalues of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermitian_deviation(m);
    if dev > tol.elementwise {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian (max deviation {dev:e})"
        )));
    }
    let mut values = if bandwidth(m) <= 1 {
        let n = m.nrows();
        let mut diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        // A diagonal unitary similarity maps the complex sub-diagonal onto its moduli.
        let mut off: Vec<f64> = (0..n)
            .map(|i| if i + 1 < n { m[(i + 1, i)].norm() } else { 0.0 })
            .collect();
        tridiagonal_ql(&mut diag, &mut off)?;
        diag
    } else {
        let sym = (m + m.adjoint()).map(|z| z * 0.5);
        sym.symmetric_eigenvalues().iter().copied().collect()
    };
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i + 1`; the last entry is
/// ignored). Eigenvalues overwrite `d`, unsorted; `e` is destroyed.
pub fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if e.len() != n {
        return Err(Error::Contract(
            "tridiagonal off-diagonal must have the same length as the diagonal".into(),
        ));
    }
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let scale = d.iter().chain(e.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(());
    }
    d.iter_mut().chain(e.iter_mut()).for_each(|v| *v /= scale);
    let budget = QL_SWEEPS_PER_DIM * n;
    let mut sweeps = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= DEFLATION_FLOOR {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > budget {
                return Err(Error::Contract(format!(
                    "tridiagonal QL did not converge for eigenvalue {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
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
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.iter_mut().for_each(|v| *v *= scale);
    Ok(())
}
