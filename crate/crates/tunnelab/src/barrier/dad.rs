//! Delay-amplitude distribution of the barrier: the kernel eta(x) whose
//! convolution with the free envelope gives the transmitted one.
//!
//! eta splits into a delta at zero delay plus a smooth remainder obtained by
//! inverse Fourier transform of T(p) - 1. Because T(p) - 1 decays only like
//! 1/p, a model tail s(p) = -i mu W d / (p + i b), b = mu W d / 2, whose
//! transform is known in closed form is subtracted before the FFT and its
//! contribution restored analytically. That turns an O(1/P) window
//! truncation error into O(1/P^2) and removes the step discontinuity from
//! the gridded data, which is what makes the high moments computable.

use num_complex::Complex64;

use super::{log_transmission, BarrierSpec};
use crate::error::{Error, Result};
use crate::numerics::envelope::SampledEnvelope;
use crate::numerics::fourier::{fourier_pair, Direction};
use crate::numerics::grid::Grid1D;
use crate::numerics::scaled::ScaledAmplitude;

#[derive(Debug, Clone, Copy)]
pub struct DadConfig {
    /// Number of momentum samples (a power of two keeps the FFT fast).
    pub n: usize,
    /// Half width of the momentum window around zero.
    pub p_half_width: f64,
    /// Largest tolerated |T - 1 - s| at the window edge.
    pub edge_tol: f64,
}

impl Default for DadConfig {
    fn default() -> Self {
        Self {
            n: 1 << 20,
            p_half_width: 500.0,
            edge_tol: 1e-6,
        }
    }
}

/// Sampled delay-amplitude distribution eta(x) = delta_weight * delta(x) +
/// smooth(x), normalised so that its integral over all delays is one.
#[derive(Debug, Clone)]
pub struct DadProfile {
    grid: Grid1D,
    smooth: Vec<Complex64>,
    /// smooth minus the causal model tail: the part that came out of the FFT
    ift_part: Vec<Complex64>,
    delta_weight: Complex64,
    /// model tail amplitude -mu W d / T(p0)
    tail_coef: Complex64,
    /// model tail decay rate in x: smooth tail ~ tail_coef e^{(b - i p0) x}, x < 0
    tail_rate: Complex64,
    p0: f64,
}

/// The causal model tail in momentum space.
fn tail_p(b: &BarrierSpec, p: f64) -> Complex64 {
    let mwd = b.mu() * b.w() * b.d();
    if mwd == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    -Complex64::new(0.0, mwd) / Complex64::new(p, 0.5 * mwd)
}

/// Its position-space transform, supported on x <= 0.
fn tail_x(b: &BarrierSpec, x: f64) -> f64 {
    let mwd = b.mu() * b.w() * b.d();
    if x > 0.0 || mwd == 0.0 {
        0.0
    } else {
        let v = -mwd * (0.5 * mwd * x).exp();
        if x == 0.0 {
            0.5 * v
        } else {
            v
        }
    }
}

/// Build the delay-amplitude distribution for incidence momentum p0.
pub fn delay_distribution(b: &BarrierSpec, p0: f64, cfg: &DadConfig) -> Result<DadProfile> {
    if !(p0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "p0",
            reason: format!("must be > 0, got {p0}"),
        });
    }
    if cfg.n < 16 {
        return Err(Error::InvalidGrid(format!(
            "momentum sample count {} too small",
            cfg.n
        )));
    }
    // snap the momentum step so p0 is exactly a grid point; the overall
    // normalisation identity relies on it
    let dp_target = 2.0 * cfg.p_half_width / cfg.n as f64;
    let m = (p0 / dp_target).round().max(1.0);
    let dp = p0 / m;
    let half = cfg.n / 2;
    if m as usize >= half {
        return Err(Error::InvalidGrid(format!(
            "momentum window half width {} does not reach p0 = {p0}",
            cfg.p_half_width
        )));
    }
    let p_grid = Grid1D::new(-(half as f64) * dp, dp, cfg.n)?;

    let residual = |p: f64| -> Result<Complex64> {
        let t = if p == 0.0 {
            // the p -> 0 limit: any barrier blocks zero momentum
            if b.w() > 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        } else {
            log_transmission(b, p)?.exp()
        };
        Ok(t - Complex64::new(1.0, 0.0) - tail_p(b, p))
    };

    let edge = residual(p_grid.start())?
        .norm()
        .max(residual(p_grid.end())?.norm());
    if edge > cfg.edge_tol {
        return Err(Error::WindowTooSmall {
            edge_value: edge,
            required: cfg.edge_tol,
        });
    }

    let values: Result<Vec<Complex64>> = p_grid.points().map(&residual).collect();
    let env = SampledEnvelope::from_samples(p_grid, values?, ScaledAmplitude::one())?;
    let ift = fourier_pair(&env, Direction::Inverse)?;
    let x_grid = *ift.grid();

    let t0 = log_transmission(b, p0)?.exp();
    let inv_t0 = 1.0 / t0;
    let mut ift_part = Vec::with_capacity(cfg.n);
    let mut smooth = Vec::with_capacity(cfg.n);
    for (j, v) in ift.values().iter().enumerate() {
        let x = x_grid.point(j);
        let carrier = Complex64::new(0.0, -p0 * x).exp() * inv_t0;
        let base = carrier * v;
        ift_part.push(base);
        smooth.push(base + carrier * tail_x(b, x));
    }

    let mwd = b.mu() * b.w() * b.d();
    Ok(DadProfile {
        grid: x_grid,
        smooth,
        ift_part,
        delta_weight: inv_t0,
        tail_coef: -mwd * inv_t0,
        tail_rate: Complex64::new(0.5 * mwd, -p0),
        p0,
    })
}

impl DadProfile {
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// Smooth part of eta on the delay grid (the delta sits on top at x = 0).
    pub fn smooth(&self) -> &[Complex64] {
        &self.smooth
    }

    pub fn delta_weight(&self) -> Complex64 {
        self.delta_weight
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Integral of eta over all delays; equals one up to window truncation.
    /// Uses the analytic tail integral rather than the gridded tail samples:
    /// the discretised step at x = 0 carries an O(dx) error that the 1/T(p0)
    /// normalisation would amplify enormously.
    pub fn integral(&self) -> Complex64 {
        self.moment(0, f64::INFINITY)
    }

    /// Largest |smooth| at delays x > dead_zone, relative to the overall
    /// maximum. Causality demands the distribution lives on x <= 0, so this
    /// measures numerical leakage only.
    pub fn causality_sup(&self, dead_zone: f64) -> f64 {
        let max = self.smooth.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        self.grid
            .points()
            .zip(&self.smooth)
            .filter(|(x, _)| *x > dead_zone)
            .map(|(_, v)| v.norm())
            .fold(0.0f64, f64::max)
            / max
    }

    /// n-th delay moment, integral of x^n eta(x) dx, with the gridded part
    /// restricted to |x| <= window (beyond it the samples are FFT noise that
    /// high powers of x would amplify) and the model tail added in closed
    /// form. n = 0 includes the delta term.
    pub fn moment(&self, n: usize, window: f64) -> Complex64 {
        let dx = self.grid.step();
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, v) in self.grid.points().zip(&self.ift_part) {
            if x.abs() > window {
                continue;
            }
            acc += x.powi(n as i32) * v;
        }
        acc *= dx;
        // integral of x^n e^{-(b - i p0)(-x)} over x < 0: (-1)^n n! / c^{n+1}
        let mut fact = 1.0;
        for k in 2..=n {
            fact *= k as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let tail = self.tail_coef * sign * fact / self.tail_rate.powi(n as i32 + 1);
        let delta = if n == 0 {
            self.delta_weight
        } else {
            Complex64::new(0.0, 0.0)
        };
        acc + tail + delta
    }
}
