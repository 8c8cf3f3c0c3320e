//! Larmor traversal-time amplitude: the Fourier transform of the
//! transmission amplitude with respect to the barrier height.
//!
//! phi(p0, tau) = (2 pi)^{-1} integral dV T(p0, W + V) w(V) exp(i V tau),
//! where w is a window confining the height perturbation V to [-W, W]. A
//! raised-cosine (Hann) window keeps the probed barrier height nonnegative,
//! vanishes smoothly at the edges so the transform does not ring, and leaves
//! w(0) = 1 so the sum rule integral of phi d tau = T(p0, W) holds exactly.

use num_complex::Complex64;

use crate::barrier::{log_transmission, BarrierSpec};
use crate::error::{Error, Result};
use crate::numerics::envelope::SampledEnvelope;
use crate::numerics::fourier::{fourier_pair, Direction};
use crate::numerics::grid::Grid1D;
use crate::numerics::scaled::ScaledAmplitude;

#[derive(Debug, Clone, Copy)]
pub struct LarmorConfig {
    /// Number of height samples across the window.
    pub n_v: usize,
    /// Half width of the height window; must not exceed the barrier height
    /// so the probed barrier never becomes a well.
    pub v_half: f64,
}

impl Default for LarmorConfig {
    fn default() -> Self {
        Self {
            n_v: 4096,
            v_half: 1.0,
        }
    }
}

/// Windowed height response f(V) = T(p0, W + V) w(V) and its transform.
#[derive(Debug, Clone)]
pub struct TraversalAmplitude {
    v_grid: Grid1D,
    f_values: Vec<Complex64>,
    tau_grid: Grid1D,
    phi: Vec<Complex64>,
    p0: f64,
}

/// Second-moment widths of the conjugate distributions |phi(tau)|^2 and
/// |f(V)|^2. Their product obeys the Fourier uncertainty bound 1/2.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub sigma_tau: f64,
    pub sigma_v: f64,
    pub product: f64,
}

fn hann(v: f64, v_half: f64) -> f64 {
    0.5 * (1.0 + (std::f64::consts::PI * v / v_half).cos())
}

/// Build the traversal amplitude for momentum p0 through barrier `b`.
pub fn traversal_amplitude(b: &BarrierSpec, p0: f64, cfg: &LarmorConfig) -> Result<TraversalAmplitude> {
    if !(p0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "p0",
            reason: format!("must be > 0, got {p0}"),
        });
    }
    if !(cfg.v_half > 0.0) || cfg.v_half > b.w() {
        return Err(Error::InvalidParameter {
            name: "v_half",
            reason: format!(
                "height window half width must lie in (0, W = {}], got {}",
                b.w(),
                cfg.v_half
            ),
        });
    }
    if cfg.n_v < 16 {
        return Err(Error::InvalidGrid(format!(
            "height sample count {} too small",
            cfg.n_v
        )));
    }
    let dv = 2.0 * cfg.v_half / cfg.n_v as f64;
    let half = cfg.n_v / 2;
    // V = 0 sits exactly on the grid; the sum rule depends on it
    let v_grid = Grid1D::new(-(half as f64) * dv, dv, cfg.n_v)?;
    let f_values: Result<Vec<Complex64>> = v_grid
        .points()
        .map(|v| {
            let w = hann(v, cfg.v_half);
            if w == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let probed = BarrierSpec::new(b.w() + v, b.d(), b.mu())?;
            Ok(log_transmission(&probed, p0)?.exp() * w)
        })
        .collect();
    let f_values = f_values?;
    let env = SampledEnvelope::from_samples(v_grid, f_values.clone(), ScaledAmplitude::one())?;
    let phi_env = fourier_pair(&env, Direction::Inverse)?;
    Ok(TraversalAmplitude {
        v_grid,
        f_values,
        tau_grid: *phi_env.grid(),
        phi: phi_env.values().to_vec(),
        p0,
    })
}

impl TraversalAmplitude {
    pub fn v_grid(&self) -> &Grid1D {
        &self.v_grid
    }

    /// Windowed transmission samples T(p0, W + V) w(V).
    pub fn windowed_response(&self) -> &[Complex64] {
        &self.f_values
    }

    /// Conjugate tau grid of the FFT-computed amplitude.
    pub fn tau_grid(&self) -> &Grid1D {
        &self.tau_grid
    }

    pub fn phi(&self) -> &[Complex64] {
        &self.phi
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Sum of phi over the conjugate grid times its step. Equals the
    /// windowed response at V = 0, i.e. T(p0, W), exactly by the discrete
    /// orthogonality of the transform.
    pub fn sum_rule(&self) -> Complex64 {
        let sum: Complex64 = self.phi.iter().sum();
        sum * self.tau_grid.step()
    }

    /// Evaluate phi at an arbitrary traversal time by direct summation.
    pub fn eval_tau(&self, tau: f64) -> Complex64 {
        let dv = self.v_grid.step();
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, f) in self.v_grid.points().zip(&self.f_values) {
            acc += f * Complex64::new(0.0, v * tau).exp();
        }
        acc * dv / (2.0 * std::f64::consts::PI)
    }

    /// Sample phi on a caller-supplied tau grid. The grid must resolve the
    /// full height window: step * span <= 2 pi.
    pub fn sample(&self, tau_grid: &Grid1D) -> Result<SampledEnvelope> {
        let span = self.v_grid.count() as f64 * self.v_grid.step();
        let prod = tau_grid.step() * span;
        if prod > 2.0 * std::f64::consts::PI {
            return Err(Error::NyquistViolation(prod));
        }
        let values: Vec<Complex64> = tau_grid.points().map(|t| self.eval_tau(t)).collect();
        SampledEnvelope::from_samples(*tau_grid, values, ScaledAmplitude::one())
    }

    /// Transform phi back onto the height grid; the result should reproduce
    /// the windowed response. A failed roundtrip flags aliasing.
    pub fn roundtrip(&self) -> Result<Vec<Complex64>> {
        let env = SampledEnvelope::from_samples(self.tau_grid, self.phi.clone(), ScaledAmplitude::one())?;
        let back = crate::numerics::fourier::fourier_pair_to(&env, Direction::Forward, self.v_grid)?;
        Ok(back.values().to_vec())
    }

    /// Widths of |phi|^2 and |f|^2. The tau distribution is integrated on
    /// `tau_grid` (it must cover the slowly decaying tails of phi).
    pub fn uncertainty(&self, tau_grid: &Grid1D) -> Result<UncertaintyReport> {
        let phi = self.sample(tau_grid)?;
        let dt = tau_grid.step();
        let mut norm = 0.0;
        let mut mean = 0.0;
        for (t, v) in tau_grid.points().zip(phi.values()) {
            let p = v.norm_sqr();
            norm += p * dt;
            mean += t * p * dt;
        }
        if norm == 0.0 {
            return Err(Error::NonFinite("traversal amplitude vanishes"));
        }
        mean /= norm;
        let mut var_t = 0.0;
        for (t, v) in tau_grid.points().zip(phi.values()) {
            var_t += (t - mean).powi(2) * v.norm_sqr() * dt;
        }
        var_t /= norm;

        let dv = self.v_grid.step();
        let mut norm_v = 0.0;
        let mut mean_v = 0.0;
        for (v, f) in self.v_grid.points().zip(&self.f_values) {
            let p = f.norm_sqr();
            norm_v += p * dv;
            mean_v += v * p * dv;
        }
        mean_v /= norm_v;
        let mut var_v = 0.0;
        for (v, f) in self.v_grid.points().zip(&self.f_values) {
            var_v += (v - mean_v).powi(2) * f.norm_sqr() * dv;
        }
        var_v /= norm_v;

        let sigma_tau = var_t.sqrt();
        let sigma_v = var_v.sqrt();
        Ok(UncertaintyReport {
            sigma_tau,
            sigma_v,
            product: sigma_tau * sigma_v,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp() -> (BarrierSpec, TraversalAmplitude) {
        let b = BarrierSpec::new(1.0, 5.0, 1.0).unwrap();
        let cfg = LarmorConfig {
            n_v: 1024,
            v_half: 1.0,
        };
        (b, traversal_amplitude(&b, 5.0, &cfg).unwrap())
    }

    #[test]
    fn sum_rule_recovers_transmission() {
        let (b, a) = amp();
        let t = log_transmission(&b, 5.0).unwrap().exp();
        let s = a.sum_rule();
        assert!((s - t).norm() < 1e-10, "sum rule {s} vs T {t}");
    }

    #[test]
    fn roundtrip_reproduces_windowed_response() {
        let (_, a) = amp();
        let back = a.roundtrip().unwrap();
        let mut worst = 0.0f64;
        for (x, y) in back.iter().zip(a.windowed_response()) {
            worst = worst.max((x - y).norm());
        }
        assert!(worst < 1e-10, "roundtrip L-inf error {worst:.3e}");
    }

    #[test]
    fn peak_sits_near_classical_crossing_time() {
        // fast packet over a low barrier: the traversal time concentrates
        // at mu d / k0, the classical time spent over the barrier
        let (b, a) = amp();
        let k0 = (5.0f64 * 5.0 - 2.0 * b.w() * b.mu()).sqrt();
        let expect = b.mu() * b.d() / k0;
        let taus = Grid1D::span(-5.0, 8.0, 2601).unwrap();
        let phi = a.sample(&taus).unwrap();
        let i = phi
            .values()
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .unwrap()
            .0;
        let peak = taus.point(i);
        let rel = (peak - expect).abs() / expect;
        assert!(rel < 0.05, "peak {peak} vs classical {expect}, rel {rel}");
    }

    #[test]
    fn uncertainty_product_above_bound() {
        let (_, a) = amp();
        let taus = Grid1D::span(-40.0, 40.0, 8001).unwrap();
        let u = a.uncertainty(&taus).unwrap();
        assert!(u.product >= 0.5, "product {}", u.product);
        assert!(u.product < 0.6, "product far from prototype value: {}", u.product);
    }

    #[test]
    fn window_wider_than_barrier_rejected() {
        let b = BarrierSpec::new(1.0, 5.0, 1.0).unwrap();
        let cfg = LarmorConfig {
            n_v: 256,
            v_half: 1.5,
        };
        assert!(traversal_amplitude(&b, 5.0, &cfg).is_err());
    }

    #[test]
    fn coarse_tau_grid_violates_nyquist() {
        let (_, a) = amp();
        let coarse = Grid1D::new(-10.0, 4.0, 6).unwrap();
        match a.sample(&coarse) {
            Err(Error::NyquistViolation(_)) => {}
            other => panic!("expected NyquistViolation, got {other:?}"),
        }
    }
}
