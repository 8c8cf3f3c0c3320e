//! Sampled complex envelopes and the analytic forms behind them.
//!
//! An envelope holds O(1) complex samples on a uniform grid plus a global
//! `ScaledAmplitude` prefactor, so magnitudes like exp(-kappa*d) never touch
//! the sample array. Envelopes built from Gaussians remember their analytic
//! form; consumers that need tail values far below f64 resolution (the
//! delay-comb convolution) re-evaluate the form in higher precision instead
//! of interpolating samples.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::grid::Grid1D;
use super::scaled::ScaledAmplitude;
use crate::error::{Error, Result};

/// Which side of a cut survives chopping. The pulse propagates toward +x,
/// so `Front` is the larger-x side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Front,
    Rear,
}

/// One normalised Gaussian hump: coef * (2/(pi sigma^2))^{1/4} * exp(-(x-center)^2/sigma^2).
#[derive(Debug, Clone, Copy)]
pub struct GaussianHump {
    pub center: f64,
    pub sigma: f64,
    pub coef: Complex64,
}

impl GaussianHump {
    pub fn norm_prefactor(&self) -> f64 {
        (2.0 / (PI * self.sigma * self.sigma)).powf(0.25)
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let u = (x - self.center) / self.sigma;
        self.coef * self.norm_prefactor() * (-u * u).exp()
    }
}

/// A raised-cosine chop window. Unity on the kept side, zero on the other,
/// with a half-cosine ramp of width `ramp` centered on the cut (sharp step
/// when ramp = 0).
#[derive(Debug, Clone, Copy)]
pub struct ChopWindow {
    pub cut: f64,
    pub keep: Side,
    pub ramp: f64,
}

impl ChopWindow {
    pub fn factor(&self, x: f64) -> f64 {
        // signed coordinate: positive on the kept side
        let s = match self.keep {
            Side::Front => x - self.cut,
            Side::Rear => self.cut - x,
        };
        if self.ramp == 0.0 {
            return if s > 0.0 {
                1.0
            } else if s < 0.0 {
                0.0
            } else {
                0.5
            };
        }
        let h = 0.5 * self.ramp;
        if s >= h {
            1.0
        } else if s <= -h {
            0.0
        } else {
            0.5 * (1.0 + (PI * s / self.ramp).sin())
        }
    }
}

/// Analytic description of an envelope, when one exists.
#[derive(Debug, Clone)]
pub enum EnvelopeForm {
    /// Sum of Gaussian humps times zero or more chop windows.
    Analytic {
        humps: Vec<GaussianHump>,
        windows: Vec<ChopWindow>,
    },
    /// Samples only; no analytic evaluation available.
    Samples,
}

impl EnvelopeForm {
    pub fn gaussian(center: f64, sigma: f64) -> Self {
        EnvelopeForm::Analytic {
            humps: vec![GaussianHump {
                center,
                sigma,
                coef: Complex64::new(1.0, 0.0),
            }],
            windows: Vec::new(),
        }
    }

    pub fn value(&self, x: f64) -> Option<Complex64> {
        match self {
            EnvelopeForm::Analytic { humps, windows } => {
                let mut v = Complex64::new(0.0, 0.0);
                for h in humps {
                    v += h.value(x);
                }
                for w in windows {
                    v *= w.factor(x);
                }
                Some(v)
            }
            EnvelopeForm::Samples => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SampledEnvelope {
    grid: Grid1D,
    values: Vec<Complex64>,
    scale: ScaledAmplitude,
    form: EnvelopeForm,
}

impl SampledEnvelope {
    pub fn from_samples(grid: Grid1D, values: Vec<Complex64>, scale: ScaledAmplitude) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match grid count {}",
                values.len(),
                grid.count()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("envelope samples"));
        }
        Ok(Self {
            grid,
            values,
            scale,
            form: EnvelopeForm::Samples,
        })
    }

    pub fn from_form(form: EnvelopeForm, grid: Grid1D) -> Result<Self> {
        let values: Vec<Complex64> = grid
            .points()
            .map(|x| form.value(x).unwrap_or(Complex64::new(0.0, 0.0)))
            .collect();
        let mut env = Self::from_samples(grid, values, ScaledAmplitude::one())?;
        env.form = form;
        Ok(env)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn scale(&self) -> ScaledAmplitude {
        self.scale
    }

    pub fn set_scale(&mut self, scale: ScaledAmplitude) {
        self.scale = scale;
    }

    pub fn form(&self) -> &EnvelopeForm {
        &self.form
    }

    pub fn set_form(&mut self, form: EnvelopeForm) {
        self.form = form;
    }

    /// Modulus of the i-th sample relative to the global scale.
    pub fn abs_rel(&self, i: usize) -> f64 {
        self.values[i].norm()
    }

    pub fn max_abs_rel(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// L2 norm of |values|^2 * step, relative to the scale.
    pub fn l2_norm_sq_rel(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.step()
    }

    /// Evaluate at an arbitrary point: the analytic form when available,
    /// otherwise linear interpolation of the samples (zero outside the grid).
    pub fn eval(&self, x: f64) -> Complex64 {
        if let Some(v) = self.form.value(x) {
            return v;
        }
        let t = (x - self.grid.start()) / self.grid.step();
        if t < 0.0 || t > (self.grid.count() - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let i = (t.floor() as usize).min(self.grid.count() - 2);
        let f = t - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }
}
