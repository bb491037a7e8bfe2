//! Boxcar and Gaudi masks built in the frequency domain.
//!
//! A boxcar mask is a binary vector with `w` consecutive ones starting at
//! position `l`, wrapping cyclically. Its discrete Fourier transform has the
//! closed form `d_w[k] = w sinc(wk/n)/sinc(k/n) e^{i pi k (1-w)/n}` (the
//! Dirichlet kernel), which stays meaningful for *real-valued* `w` and `l`.
//! Multiplying the kernel by a Gaussian attenuation `exp(-k^2 / 2 sigma^2)`
//! and transforming back yields the Gaudi mask: a smooth, differentiable
//! surrogate that converges to the boxcar as `sigma -> inf`.
//!
//! Every operation here is a pure function of its arguments; mask values and
//! both analytic derivatives come from inverse DFTs of closed-form spectra.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Normalized sinc: `sin(pi x) / (pi x)`, with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Width/location pair for a mask of length `n`.
///
/// Both parameters live on the closed interval `[0, n]`; integer values
/// reproduce exact boxcars while fractional values are meaningful only
/// through the Gaudi parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskParams {
    width: f64,
    location: f64,
    len: usize,
}

impl MaskParams {
    /// Validates `0 <= w <= n`, `0 <= l <= n` and `n >= 1`.
    pub fn new(width: f64, location: f64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Domain("mask length must be at least 1".into()));
        }
        let n = len as f64;
        if !width.is_finite() || !(0.0..=n).contains(&width) {
            return Err(Error::Domain(format!(
                "width {width} outside [0, {len}]"
            )));
        }
        if !location.is_finite() || !(0.0..=n).contains(&location) {
            return Err(Error::Domain(format!(
                "location {location} outside [0, {len}]"
            )));
        }
        Ok(MaskParams {
            width,
            location,
            len,
        })
    }

    /// Builds parameters with `w` and `l` clamped into `[0, n]`.
    pub fn clamped(width: f64, location: f64, len: usize) -> Result<Self> {
        let n = len as f64;
        MaskParams::new(width.clamp(0.0, n), location.clamp(0.0, n), len)
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Gaussian smoothing strength. `Smoothing::INFINITE` disables the Gaussian
/// factor entirely, so the Gaudi spectrum degenerates to the bare Dirichlet
/// kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smoothing(f64);

impl Smoothing {
    pub const INFINITE: Smoothing = Smoothing(f64::INFINITY);

    /// Requires `sigma > 0` (infinity allowed).
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(Error::Domain(format!("sigma {sigma} must be positive")));
        }
        Ok(Smoothing(sigma))
    }

    pub fn sigma(&self) -> f64 {
        self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    /// Gaussian factor `exp(-k^2 / (2 sigma^2))`; exactly 1 when infinite.
    pub fn attenuation(&self, k: f64) -> f64 {
        if self.0.is_infinite() {
            1.0
        } else {
            (-(k * k) / (2.0 * self.0 * self.0)).exp()
        }
    }
}

/// Length-`n` complex spectrum over frequency bins `k = 0..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Binary boxcar mask: entry `j` is 1 iff `l <= j + a*n < l + w` for some
/// `a` in `{0, 1}` (cyclic wrap).
///
/// Requires integer `w` in `{0..n}` and integer `l` in `{0..n-1}`.
pub fn boxcar(params: &MaskParams) -> Result<Vec<f64>> {
    let n = params.len;
    if params.width.fract() != 0.0 || params.location.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "boxcar requires integer parameters, got w={} l={}",
            params.width, params.location
        )));
    }
    if params.location >= n as f64 {
        return Err(Error::Domain(format!(
            "boxcar location {} outside {{0..{}}}",
            params.location,
            n - 1
        )));
    }
    let w = params.width as usize;
    let l = params.location as usize;
    let mut mask = vec![0.0; n];
    for t in 0..w {
        mask[(l + t) % n] = 1.0;
    }
    Ok(mask)
}

/// Dirichlet kernel of order `n`: the closed-form DFT of a width-`w` boxcar
/// at location 0, `d_w[k] = w sinc(wk/n)/sinc(k/n) e^{i pi k (1-w)/n}`.
pub fn dirichlet_kernel(width: f64, len: usize) -> Result<Spectrum> {
    if len == 0 {
        return Err(Error::Domain("kernel length must be at least 1".into()));
    }
    if !width.is_finite() || !(0.0..=len as f64).contains(&width) {
        return Err(Error::Domain(format!(
            "width {width} outside [0, {len}]"
        )));
    }
    Ok(Spectrum {
        values: (0..len).map(|k| dirichlet_entry(width, k, len)).collect(),
    })
}

fn dirichlet_entry(width: f64, k: usize, len: usize) -> Complex64 {
    let n = len as f64;
    let kf = k as f64;
    let magnitude = width * sinc(width * kf / n) / sinc(kf / n);
    let phase = PI * kf * (1.0 - width) / n;
    Complex64::from_polar(magnitude, phase)
}

/// Gaudi spectrum: Gaussian-attenuated Dirichlet kernel with the location
/// phase applied, `g_sigma(k) d_w[k] e^{-2 pi i (k/n) l}`.
pub fn gaudi_spectrum(params: &MaskParams, smoothing: Smoothing) -> Spectrum {
    let n = params.len as f64;
    let values = (0..params.len)
        .map(|k| {
            let kf = k as f64;
            let kernel = dirichlet_entry(params.width, k, params.len);
            let shift = Complex64::from_polar(1.0, -2.0 * PI * kf * params.location / n);
            smoothing.attenuation(kf) * kernel * shift
        })
        .collect();
    Spectrum { values }
}

/// Gaudi mask: real part of the inverse DFT of [`gaudi_spectrum`].
///
/// For integer `w`, `l` and infinite smoothing this reproduces the boxcar to
/// numerical round-off. The inverse transform is generally complex for
/// fractional parameters; only the real part is kept.
pub fn gaudi_mask(params: &MaskParams, smoothing: Smoothing) -> Vec<f64> {
    idft_real(&gaudi_spectrum(params, smoothing))
}

/// Analytic derivative of the Gaudi mask with respect to the width.
///
/// The spectrum of the derivative is
/// `e^{-2 pi i (k/n)(w+l)} e^{i pi k/n} g_sigma(k) / sinc(k/n)`, which is
/// nonzero for every `k`; in particular the derivative does not vanish at
/// `w = 0`, so zero-width blocks can be revived by gradient descent.
pub fn mask_grad_w(params: &MaskParams, smoothing: Smoothing) -> Vec<f64> {
    let n = params.len as f64;
    let values = (0..params.len)
        .map(|k| {
            let kf = k as f64;
            let phase = PI * kf / n - 2.0 * PI * kf * (params.width + params.location) / n;
            Complex64::from_polar(smoothing.attenuation(kf) / sinc(kf / n), phase)
        })
        .collect();
    idft_real(&Spectrum { values })
}

/// Analytic derivative of the Gaudi mask with respect to the location:
/// each spectral coefficient is scaled by `-2 pi i k / n`.
pub fn mask_grad_l(params: &MaskParams, smoothing: Smoothing) -> Vec<f64> {
    let n = params.len as f64;
    let mut spectrum = gaudi_spectrum(params, smoothing);
    for (k, value) in spectrum.values.iter_mut().enumerate() {
        *value *= Complex64::new(0.0, -2.0 * PI * k as f64 / n);
    }
    idft_real(&spectrum)
}

/// Closed-form bound on the relative L2 gap between a boxcar and its Gaudi
/// mask: `1 - exp(-(1 - 1/n)^2 / (2 sigma^2))`.
pub fn boxcar_error_bound(len: usize, smoothing: Smoothing) -> f64 {
    if len == 0 {
        return 0.0;
    }
    1.0 - smoothing.attenuation(1.0 - 1.0 / len as f64)
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn inverse_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|planner| planner.borrow_mut().plan_fft_inverse(n))
}

/// Inverse DFT with the `1/n` normalization, `x[j] = (1/n) sum_k X[k] e^{2 pi i jk/n}`.
pub(crate) fn idft(spectrum: &Spectrum) -> Vec<Complex64> {
    let n = spectrum.len();
    let mut buffer = spectrum.values.clone();
    inverse_plan(n).process(&mut buffer);
    let scale = 1.0 / n as f64;
    for value in &mut buffer {
        *value *= scale;
    }
    buffer
}

fn idft_real(spectrum: &Spectrum) -> Vec<f64> {
    idft(spectrum).into_iter().map(|c| c.re).collect()
}
