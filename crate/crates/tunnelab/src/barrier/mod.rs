//! Rectangular-barrier scattering: stable transmission and reflection
//! amplitudes, delay-amplitude distribution, wave-packet propagation,
//! complex shift, momentum filtering, phase time and Hartman diagnostics.

pub mod dad;
pub mod propagate;

pub use dad::{delay_distribution, DadConfig, DadProfile};
pub use propagate::{free_envelope, propagate, time_trace, PropagationKind, TimeTrace};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::finite_diff::finite_diff;
use crate::numerics::scaled::ScaledAmplitude;

/// Rectangular barrier V(x) = W on [0, d], zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    w: f64,
    d: f64,
    mu: f64,
}

impl BarrierSpec {
    pub fn new(w: f64, d: f64, mu: f64) -> Result<Self> {
        if !(w >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "w",
                reason: format!("barrier height must be >= 0 (wells host bound states), got {w}"),
            });
        }
        if !(d > 0.0) {
            return Err(Error::InvalidParameter {
                name: "d",
                reason: format!("barrier width must be > 0, got {d}"),
            });
        }
        if !(mu > 0.0) {
            return Err(Error::InvalidParameter {
                name: "mu",
                reason: format!("mass must be > 0, got {mu}"),
            });
        }
        Ok(Self { w, d, mu })
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Threshold momentum sqrt(2 mu W) separating tunnelling from
    /// over-barrier propagation.
    pub fn p_threshold(&self) -> f64 {
        (2.0 * self.mu * self.w).sqrt()
    }

    /// Evanescent decay rate kappa = sqrt(2 mu W - p^2) for |p| below
    /// threshold.
    pub fn kappa(&self, p: f64) -> f64 {
        (2.0 * self.mu * self.w - p * p).max(0.0).sqrt()
    }
}

/// Incident Gaussian packet: mean momentum p0, coordinate width sigma,
/// initial center x0 (left of the barrier).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    pub p0: f64,
    pub sigma: f64,
    pub x0: f64,
}

impl PacketSpec {
    pub fn new(p0: f64, sigma: f64, x0: f64) -> Result<Self> {
        if !(p0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "p0",
                reason: format!("mean momentum must be > 0, got {p0}"),
            });
        }
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                reason: format!("width must be > 0, got {sigma}"),
            });
        }
        Ok(Self { p0, sigma, x0 })
    }

    /// True when the packet initially straddles the barrier at x = 0
    /// (|x0| < 3 sigma); propagation results are then contaminated by the
    /// initial overlap.
    pub fn straddles_barrier(&self) -> bool {
        self.x0.abs() < 3.0 * self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransmissionMode {
    ClosedForm,
    /// Partial sum of the multiple-bounce geometric progression.
    Series { n_terms: usize },
}

/// log T(p) with an analytically continuous phase (no wrapping), valid for
/// p != 0. Real part is ln |T|, imaginary part the phase.
///
/// Branches:
///  - propagating (p^2 > 2 mu W): direct evaluation of the denominator;
///  - evanescent: k = +i kappa and the growing exponential exp(kappa d) is
///    factored out, so kappa d of order 1e5 costs no range;
///  - near threshold: the removable 0/0 in sin(kd)/k is handled by series.
pub fn log_transmission(b: &BarrierSpec, p: f64) -> Result<Complex64> {
    if p == 0.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: "transmission amplitude undefined at p = 0".into(),
        });
    }
    if p < 0.0 {
        // real-axis symmetry T(-p) = conj T(p)
        let l = log_transmission(b, -p)?;
        return Ok(l.conj());
    }
    if b.w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let k2 = p * p - 2.0 * b.mu * b.w;
    let d = b.d;
    let z = k2 * d * d;
    if z.abs() < 1e-4 {
        // threshold series: cos(kd) and d*sinc(kd) to second order in z
        let cosv = 1.0 - z / 2.0 + z * z / 24.0;
        let dsinc = d * (1.0 - z / 6.0 + z * z / 120.0);
        let den = Complex64::new(cosv, -0.5 * (k2 + p * p) / p * dsinc);
        let log_den = Complex64::new(den.norm().ln(), den.arg());
        return Ok(Complex64::new(0.0, -p * d) - log_den);
    }
    if k2 > 0.0 {
        let k = k2.sqrt();
        let kd = k * d;
        let den = Complex64::new(kd.cos(), -0.5 * (k / p + p / k) * kd.sin());
        let log_den = Complex64::new(den.norm().ln(), den.arg());
        Ok(Complex64::new(0.0, -p * d) - log_den)
    } else {
        let kappa = (-k2).sqrt();
        let e2 = (-2.0 * kappa * d).exp();
        // D = (exp(kappa d)/2) * Dt,  Dt = (1+e2) - (i/2)((p^2-kappa^2)/(p kappa))(1-e2)
        let a = (p * p - kappa * kappa) / (p * kappa);
        let dt = Complex64::new(1.0 + e2, -0.5 * a * (1.0 - e2));
        // Re Dt >= 1, so arg(Dt) in (-pi/2, pi/2): no winding
        Ok(Complex64::new(
            -kappa * d + 2.0f64.ln() - dt.norm().ln(),
            -p * d - dt.arg(),
        ))
    }
}

/// Transmission amplitude as a scaled complex number.
pub fn rect_transmission(b: &BarrierSpec, p: f64, mode: TransmissionMode) -> Result<ScaledAmplitude> {
    match mode {
        TransmissionMode::ClosedForm => {
            let l = log_transmission(b, p)?;
            Ok(ScaledAmplitude::new(l.re, l.im))
        }
        TransmissionMode::Series { n_terms } => rect_transmission_series(b, p, n_terms),
    }
}

/// Partial sum of the multiple-bounce expansion:
/// T = [4 p k / (p+k)^2] e^{-i(p-k)d} sum_n r^n,  r = ((p-k)/(p+k))^2 e^{2ikd}.
fn rect_transmission_series(b: &BarrierSpec, p: f64, n_terms: usize) -> Result<ScaledAmplitude> {
    if p == 0.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: "transmission amplitude undefined at p = 0".into(),
        });
    }
    if p < 0.0 {
        return Ok(rect_transmission_series(b, -p, n_terms)?.conj());
    }
    if b.w == 0.0 {
        return Ok(ScaledAmplitude::one());
    }
    let k2 = Complex64::new(p * p - 2.0 * b.mu * b.w, 0.0);
    let k = k2.sqrt(); // principal branch: +i kappa below threshold
    let pc = Complex64::new(p, 0.0);
    let d = b.d;
    let r1 = (pc - k) / (pc + k);
    let bounce = r1 * r1 * (Complex64::new(0.0, 2.0 * d) * k).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for _ in 0..n_terms.max(1) {
        sum += term;
        term *= bounce;
    }
    // prefactor 4 p k e^{-i(p-k)d}/(p+k)^2 in log form: e^{ikd} may be tiny
    let pref = 4.0 * pc * k / ((pc + k) * (pc + k));
    let log_pref = Complex64::new(pref.norm().ln(), pref.arg())
        + Complex64::new(0.0, -p * d)
        + Complex64::new(0.0, d) * k;
    let log_sum = Complex64::new(sum.norm().ln(), sum.arg());
    let total = log_pref + log_sum;
    Ok(ScaledAmplitude::new(total.re, total.im))
}

/// Reflection amplitude, via the same denominator as the transmission.
pub fn rect_reflection(b: &BarrierSpec, p: f64) -> Result<ScaledAmplitude> {
    if p == 0.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: "reflection amplitude undefined at p = 0".into(),
        });
    }
    if p < 0.0 {
        return Ok(rect_reflection(b, -p)?.conj());
    }
    if b.w == 0.0 {
        return Ok(ScaledAmplitude::zero());
    }
    let k2 = p * p - 2.0 * b.mu * b.w;
    let d = b.d;
    if k2 > 0.0 {
        let k = k2.sqrt();
        let kd = k * d;
        let den = Complex64::new(kd.cos(), -0.5 * (k / p + p / k) * kd.sin());
        let num = Complex64::new(0.0, 0.5 * (k / p - p / k) * kd.sin());
        Ok(ScaledAmplitude::from_complex(num / den))
    } else {
        let kappa = (-k2).sqrt();
        let e2 = (-2.0 * kappa * d).exp();
        let a = (p * p - kappa * kappa) / (p * kappa);
        let dt = Complex64::new(1.0 + e2, -0.5 * a * (1.0 - e2));
        // R = -(i/2)((kappa^2+p^2)/(p kappa)) sinh(kappa d) / D
        //   = -(i/2)((kappa^2+p^2)/(p kappa)) (1 - e2) / Dt
        let num = Complex64::new(0.0, -0.5 * (kappa * kappa + p * p) / (p * kappa) * (1.0 - e2));
        Ok(ScaledAmplitude::from_complex(num / dt))
    }
}

/// log T(p0 + q) - log T(p0) with both the reference decay exp(-kappa0 d)
/// and the carrier phase exp(-i p0 d) removed: the O(1) integrand used by
/// every deep-tunnelling pipeline.
pub fn log_transmission_rel(b: &BarrierSpec, p0: f64, q: f64) -> Result<Complex64> {
    let l = log_transmission(b, p0 + q)?;
    let l0 = log_transmission(b, p0)?;
    Ok(l - l0)
}

/// Complex shift alpha = d (1 + i p0 / kappa0) of the broad-barrier regime.
pub fn complex_shift(b: &BarrierSpec, p0: f64) -> Result<Complex64> {
    let thr = b.p_threshold();
    if !(p0 > 0.0) || p0 >= thr {
        return Err(Error::InvalidParameter {
            name: "p0",
            reason: format!(
                "complex shift defined in the tunnelling regime 0 < p0 < {thr}, got {p0}"
            ),
        });
    }
    let kappa0 = b.kappa(p0);
    Ok(Complex64::new(b.d, b.d * p0 / kappa0))
}

/// Momentum filtering boost of the transmitted packet, 2 Im alpha / sigma^2.
pub fn momentum_filter_shift(alpha: Complex64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be > 0, got {sigma}"),
        });
    }
    Ok(2.0 * alpha.im / (sigma * sigma))
}

/// n-th moment of the delay-amplitude distribution from derivatives of T:
/// x^n = i^n (d/dp)^n T / T at p0.
pub fn barrier_moment(b: &BarrierSpec, p0: f64, n: usize, h: f64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // differentiate the rescaled amplitude T(p0+q)/T(p0); its values are
    // O(1) even when |T| underflows
    let g = |q: f64| {
        log_transmission_rel(b, p0, q)
            .map(|l| l.exp())
            .unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let d = finite_diff(g, 0.0, n, h)?;
    Ok(Complex64::new(0.0, 1.0).powi(n as i32) * d)
}

/// Phase time (mu/p0) [d + d(phase)/dp]; the phase derivative comes from
/// Im(T'/T), which needs no unwrapping.
pub fn phase_time_barrier(b: &BarrierSpec, p0: f64, h: f64) -> Result<f64> {
    let x1 = barrier_moment(b, p0, 1, h)?;
    // d(phase)/dp = Im(T'/T) = -Re x1
    Ok(b.mu / p0 * (b.d - x1.re))
}

/// Packet width sigma = c d^{(1+eps)/2} of the sharp weak-measurement
/// regime.
pub fn hartman_packet_width(d: f64, eps: f64, c: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: format!("exponent must satisfy 0 < eps <= 1, got {eps}"),
        });
    }
    if !(c > 0.0) || !(d > 0.0) {
        return Err(Error::InvalidParameter {
            name: "c",
            reason: "c and d must be > 0".into(),
        });
    }
    Ok(c * d.powf((1.0 + eps) / 2.0))
}

/// Linearised transmission T_app(p) = T(p0) exp(-i alpha (p - p0)), returned
/// as the log of the ratio T_app(p)/T(p): zero means the approximation is
/// exact at p.
pub fn approx_transmission_log_ratio(b: &BarrierSpec, p0: f64, p: f64) -> Result<Complex64> {
    let alpha = complex_shift(b, p0)?;
    let rel = log_transmission_rel(b, p0, p - p0)?;
    let log_app = Complex64::new(0.0, -1.0) * alpha * (p - p0);
    Ok(log_app - rel)
}
