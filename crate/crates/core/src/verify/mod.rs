//! Independent oracles and randomized property suites.
//!
//! Everything in this module is deliberately written without reusing the
//! kernels it checks: the DFT here is the O(n^2) textbook sum, the reference
//! matrix-vector product is a pair of plain loops, and gradients come from
//! finite differences. The [`suites`] submodule drives the randomized
//! theorem-level checks and renders a machine-readable report.


use num_complex::Complex64;

use crate::error::{Error, Result};

/// Finite-difference scheme selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// `(f(x+h) - f(x-h)) / 2h`
    Central,
    /// Second-order forward difference `(-3f(x) + 4f(x+h) - f(x+2h)) / 2h`,
    /// for points sitting on the lower edge of their domain.
    OneSided,
}

/// Step size, scheme and tolerance for finite-difference gradient checks.
#[derive(Debug, Clone, Copy)]
pub struct FdConfig {
    pub step: f64,
    pub scheme: Scheme,
    pub rel_tol: f64,
}

impl FdConfig {
    pub fn central(step: f64) -> Self {
        FdConfig {
            step,
            scheme: Scheme::Central,
            rel_tol: 1e-4,
        }
    }

    pub fn one_sided(step: f64) -> Self {
        FdConfig {
            step,
            scheme: Scheme::OneSided,
            rel_tol: 1e-4,
        }
    }
}

/// Direct O(n^2) DFT: `X[k] = sum_j x[j] e^{-2 pi i jk/n}`.
pub fn brute_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, value) in x.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
            acc += value * Complex64::from_polar(1.0, angle);
        }
        out.push(acc);
    }
    out
}

/// Finite-difference gradient of a scalar function, one coordinate at a time.
///
/// Reports an error if any probe evaluates to NaN.
pub fn fd_gradient<F>(f: F, point: &[f64], cfg: &FdConfig) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    let h = cfg.step;
    let mut probe = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        let x = point[i];
        let estimate = match cfg.scheme {
            Scheme::Central => {
                probe[i] = x + h;
                let plus = f(&probe);
                probe[i] = x - h;
                let minus = f(&probe);
                (plus - minus) / (2.0 * h)
            }
            Scheme::OneSided => {
                probe[i] = x;
                let base = f(&probe);
                probe[i] = x + h;
                let plus = f(&probe);
                probe[i] = x + 2.0 * h;
                let plus2 = f(&probe);
                (-3.0 * base + 4.0 * plus - plus2) / (2.0 * h)
            }
        };
        probe[i] = x;
        if estimate.is_nan() {
            return Err(Error::NonFinite(format!(
                "finite-difference probe at coordinate {i} produced NaN"
            )));
        }
        grad.push(estimate);
    }
    Ok(grad)
}

/// Finite-difference gradient that switches to one-sided stencils near the
/// domain boundary `[lo, hi]` of each coordinate.
pub fn fd_gradient_bounded<F>(f: F, point: &[f64], lo: f64, hi: f64, h: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    let mut probe = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        let x = point[i];
        let estimate = if x - h < lo {
            probe[i] = x;
            let base = f(&probe);
            probe[i] = x + h;
            let plus = f(&probe);
            probe[i] = x + 2.0 * h;
            let plus2 = f(&probe);
            (-3.0 * base + 4.0 * plus - plus2) / (2.0 * h)
        } else if x + h > hi {
            probe[i] = x;
            let base = f(&probe);
            probe[i] = x - h;
            let minus = f(&probe);
            probe[i] = x - 2.0 * h;
            let minus2 = f(&probe);
            (3.0 * base - 4.0 * minus + minus2) / (2.0 * h)
        } else {
            probe[i] = x + h;
            let plus = f(&probe);
            probe[i] = x - h;
            let minus = f(&probe);
            (plus - minus) / (2.0 * h)
        };
        probe[i] = x;
        if estimate.is_nan() {
            return Err(Error::NonFinite(format!(
                "finite-difference probe at coordinate {i} produced NaN"
            )));
        }
        grad.push(estimate);
    }
    Ok(grad)
}

/// Plain-loop reference matrix-vector product over a row-major dense matrix.
pub fn reference_mvp(dense: &nalgebra::DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; dense.nrows()];
    for i in 0..dense.nrows() {
        let mut acc = 0.0;
        for j in 0..dense.ncols() {
            acc += dense[(i, j)] * x[j];
        }
        y[i] = acc;
    }
    y
}

/// Cyclically shifts the rows of a matrix downward by `shift`.
pub fn roll_rows(dense: &nalgebra::DMatrix<f64>, shift: usize) -> nalgebra::DMatrix<f64> {
    let m = dense.nrows();
    let mut out = nalgebra::DMatrix::zeros(m, dense.ncols());
    for i in 0..m {
        for j in 0..dense.ncols() {
            out[((i + shift) % m, j)] = dense[(i, j)];
        }
    }
    out
}

/// Cyclically shifts the columns of a matrix rightward by `shift`.
pub fn roll_cols(dense: &nalgebra::DMatrix<f64>, shift: usize) -> nalgebra::DMatrix<f64> {
    let n = dense.ncols();
    let mut out = nalgebra::DMatrix::zeros(dense.nrows(), n);
    for i in 0..dense.nrows() {
        for j in 0..n {
            out[(i, (j + shift) % n)] = dense[(i, j)];
        }
    }
    out
}
