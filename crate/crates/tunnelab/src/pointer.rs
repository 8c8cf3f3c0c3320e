//! Post-selected von Neumann pointer measurements.
//!
//! A pointer prepared in a Gaussian ready state G0 couples to a quantity A
//! and is read out after post-selection. The final pointer state is the
//! convolution Psi(x) = integral G0(x - A) eta(A) dA with the amplitude
//! distribution eta determined by the selected transition. This is the same
//! superposition-of-shifted-envelopes structure as the delay models; it goes
//! through the shared convolution kernel routine.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::envelope::{EnvelopeForm, SampledEnvelope};
use crate::numerics::fourier::convolve_kernel;
use crate::numerics::grid::Grid1D;
use crate::numerics::scaled::ScaledAmplitude;

/// One lobe of the amplitude distribution: coef * normalised Gaussian of
/// unit integral centered on `center`.
#[derive(Debug, Clone, Copy)]
pub struct AmplitudeLobe {
    pub center: f64,
    pub width: f64,
    pub coef: Complex64,
}

impl AmplitudeLobe {
    pub fn value(&self, a: f64) -> Complex64 {
        let u = (a - self.center) / self.width;
        self.coef * (-u * u).exp() / (self.width * std::f64::consts::PI.sqrt())
    }
}

/// The amplitude distribution eta(A) of a pre- and post-selected transition,
/// modelled as a sum of narrow lobes at the eigenvalues of the measured
/// quantity.
#[derive(Debug, Clone)]
pub struct SelectionPair {
    lobes: Vec<AmplitudeLobe>,
}

/// Weak value with its qualitative classification.
#[derive(Debug, Clone, Copy)]
pub struct WeakValueReport {
    pub value: Complex64,
    /// Re(value) lies outside the interval spanned by the lobe centers.
    pub anomalous: bool,
    /// Re(value) is further than `sigma` from that interval: a pointer of
    /// width sigma reads a value its own resolution cannot explain away.
    pub sharp: bool,
}

/// Moments of the final pointer reading.
#[derive(Debug, Clone, Copy)]
pub struct PointerStats {
    pub norm: f64,
    pub mean: f64,
    pub variance: f64,
    pub mean_momentum: f64,
}

impl SelectionPair {
    pub fn new(lobes: Vec<AmplitudeLobe>) -> Result<Self> {
        if lobes.is_empty() {
            return Err(Error::InvalidParameter {
                name: "lobes",
                reason: "at least one lobe required".into(),
            });
        }
        if lobes.iter().any(|l| !(l.width > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "width",
                reason: "lobe widths must be > 0".into(),
            });
        }
        Ok(Self { lobes })
    }

    pub fn lobes(&self) -> &[AmplitudeLobe] {
        &self.lobes
    }

    pub fn value(&self, a: f64) -> Complex64 {
        self.lobes.iter().map(|l| l.value(a)).sum()
    }

    /// Total transition amplitude, integral of eta.
    pub fn overlap(&self) -> Complex64 {
        self.lobes.iter().map(|l| l.coef).sum()
    }

    /// Interval spanned by the lobe centers.
    pub fn support(&self) -> (f64, f64) {
        let lo = self.lobes.iter().map(|l| l.center).fold(f64::INFINITY, f64::min);
        let hi = self
            .lobes
            .iter()
            .map(|l| l.center)
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Sample eta on a grid.
    pub fn kernel(&self, grid: &Grid1D) -> Result<SampledEnvelope> {
        let values: Vec<Complex64> = grid.points().map(|a| self.value(a)).collect();
        SampledEnvelope::from_samples(*grid, values, ScaledAmplitude::one())
    }

    /// Weak value: integral of A eta(A) over integral of eta. Errs when the
    /// post-selection overlap vanishes and the ratio is undefined.
    pub fn weak_value(&self, sigma: f64) -> Result<WeakValueReport> {
        let den = self.overlap();
        let mag: f64 = self.lobes.iter().map(|l| l.coef.norm()).sum();
        if den.norm() < 1e-12 * mag.max(f64::MIN_POSITIVE) {
            return Err(Error::EmptyOverlap(den.norm()));
        }
        let num: Complex64 = self.lobes.iter().map(|l| l.coef * l.center).sum();
        let value = num / den;
        let (lo, hi) = self.support();
        let anomalous = value.re < lo || value.re > hi;
        let dist = (lo - value.re).max(value.re - hi).max(0.0);
        Ok(WeakValueReport {
            value,
            anomalous,
            sharp: dist > sigma,
        })
    }

    /// Mean of A over |eta|^2: what an ideally sharp (strong) pointer reads
    /// on average. Integrated numerically so overlapping lobes interfere.
    pub fn strong_mean(&self, grid: &Grid1D) -> Result<f64> {
        let mut num = 0.0;
        let mut den = 0.0;
        for a in grid.points() {
            let p = self.value(a).norm_sqr();
            num += a * p;
            den += p;
        }
        if den == 0.0 {
            return Err(Error::NonFinite("strong-limit distribution vanishes"));
        }
        Ok(num / den)
    }
}

/// Final pointer state for a ready state of width sigma centered at zero.
/// `kernel_grid` must resolve the lobes; `out` is the readout grid.
pub fn pointer_amplitude(
    pair: &SelectionPair,
    sigma: f64,
    kernel_grid: &Grid1D,
    out: &Grid1D,
) -> Result<SampledEnvelope> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be > 0, got {sigma}"),
        });
    }
    let ready = SampledEnvelope::from_form(
        EnvelopeForm::gaussian(0.0, sigma),
        Grid1D::span(-6.0 * sigma, 6.0 * sigma, 64)?,
    )?;
    let kernel = pair.kernel(kernel_grid)?;
    convolve_kernel(&ready, &kernel, *out)
}

/// Position and momentum moments of the readout distribution |Psi|^2.
pub fn pointer_statistics(psi: &SampledEnvelope) -> Result<PointerStats> {
    let grid = psi.grid();
    let dx = grid.step();
    let mut norm = 0.0;
    let mut mean = 0.0;
    for (x, v) in grid.points().zip(psi.values()) {
        let p = v.norm_sqr();
        norm += p * dx;
        mean += x * p * dx;
    }
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::NonFinite("pointer readout norm"));
    }
    mean /= norm;
    let mut var = 0.0;
    for (x, v) in grid.points().zip(psi.values()) {
        var += (x - mean).powi(2) * v.norm_sqr() * dx;
    }
    var /= norm;
    // <p> = Im integral Psi* dPsi/dx / norm, central differences inside
    let vals = psi.values();
    let mut mom = 0.0;
    for i in 1..vals.len() - 1 {
        let dpsi = (vals[i + 1] - vals[i - 1]) / (2.0 * dx);
        mom += (vals[i].conj() * dpsi).im * dx;
    }
    Ok(PointerStats {
        norm,
        mean,
        variance: var,
        mean_momentum: mom / norm,
    })
}
