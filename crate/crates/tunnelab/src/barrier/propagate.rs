//! Wave-packet propagation through the barrier by momentum-space quadrature.
//!
//! The transmitted packet is assembled as an integral over the detuning
//! q = p - p0. The integrand carries T(p0+q)/T(p0), so the exponentially
//! small overall transmission factor lives in the envelope's log scale and
//! the numbers under the integral stay O(1) even at kappa d ~ 1e5. The
//! carrier exp(i p0 x - i p0^2 t / 2 mu) is factored out: the returned
//! envelope varies on the packet scale, not the de Broglie wavelength.

use num_complex::Complex64;

use super::{log_transmission, log_transmission_rel, BarrierSpec, PacketSpec};
use crate::error::{Error, Result};
use crate::numerics::envelope::SampledEnvelope;
use crate::numerics::grid::Grid1D;
use crate::numerics::quadrature::gauss_legendre;
use crate::numerics::scaled::ScaledAmplitude;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationKind {
    /// No barrier: the analytic spreading Gaussian.
    Free,
    /// Through the barrier, weighting each momentum by T(p).
    Transmitted,
}

/// Detector record |G(x_det, t)| on a time grid, sharing the envelope
/// conventions of [`propagate`].
#[derive(Debug, Clone)]
pub struct TimeTrace {
    pub times: Grid1D,
    pub values: Vec<Complex64>,
    /// factored-out prefactor (T(p0) for transmitted runs, one otherwise)
    pub scale: ScaledAmplitude,
}

/// Momentum profile A(q) of the incident Gaussian packet, q = p - p0.
fn momentum_profile(pk: &PacketSpec, q: f64) -> Complex64 {
    let s = pk.sigma;
    let pref = s / (2.0 * std::f64::consts::PI.sqrt())
        * (2.0 / (std::f64::consts::PI * s * s)).powf(0.25);
    pref * (-q * q * s * s / 4.0).exp() * Complex64::new(0.0, -q * pk.x0).exp()
}

/// Closed-form free envelope G0(x, t): a Gaussian drifting at p0/mu whose
/// complex width sigma_t^2 = sigma^2 + 2 i t / mu encodes the spreading.
pub fn free_envelope(pk: &PacketSpec, mu: f64, x: f64, t: f64) -> Complex64 {
    let s2t = Complex64::new(pk.sigma * pk.sigma, 2.0 * t / mu);
    let st = s2t.sqrt();
    let xc = x - pk.x0 - pk.p0 * t / mu;
    let pref = (2.0 / (std::f64::consts::PI * pk.sigma * pk.sigma)).powf(0.25);
    pref * (pk.sigma / st) * (-xc * xc / s2t).exp()
}

/// Quadrature nodes and weights for the q integral, with the window chosen
/// adaptively: the barrier filter shifts and narrows the momentum content,
/// so the window follows the actual integrand magnitude rather than A(q).
fn q_nodes(
    b: &BarrierSpec,
    pk: &PacketSpec,
    kind: PropagationKind,
    t: f64,
    x_extent: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let log_mag = |q: f64| -> f64 {
        let gauss = -q * q * pk.sigma * pk.sigma / 4.0;
        match kind {
            PropagationKind::Free => gauss,
            PropagationKind::Transmitted => match log_transmission_rel(b, pk.p0, q) {
                Ok(l) => l.re + gauss,
                Err(_) => f64::NEG_INFINITY,
            },
        }
    };
    // bracket: +-half widths in units of 1/sigma, widened until the kept
    // region detaches from the edges
    let mut half = 30.0 / pk.sigma;
    let (qlo, qhi) = loop {
        let lo = -half;
        let hi = half;
        let n_scan = 512;
        let step = (hi - lo) / n_scan as f64;
        let vals: Vec<f64> = (0..=n_scan).map(|i| log_mag(lo + i as f64 * step)).collect();
        let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::NonFinite("momentum-window scan"));
        }
        let keep = max - 45.0;
        let first = vals.iter().position(|&v| v > keep).unwrap();
        let last = vals.iter().rposition(|&v| v > keep).unwrap();
        if last == n_scan || first == 0 {
            half *= 2.0;
            if half > 1e6 / pk.sigma {
                return Err(Error::InvalidParameter {
                    name: "sigma",
                    reason: "momentum window kept growing without bound".into(),
                });
            }
            continue;
        }
        break (
            lo + first.saturating_sub(4) as f64 * step,
            lo + (last + 4).min(n_scan) as f64 * step,
        );
    };
    // resolution: a few nodes per radian of the fastest phase across the window
    let qmax = qlo.abs().max(qhi.abs());
    let phase_budget = (qhi - qlo)
        * (x_extent + pk.x0.abs() + pk.p0 * t.abs() / b.mu() + qmax * t.abs() / (2.0 * b.mu()));
    let nodes_needed = ((3.0 * phase_budget).ceil() as usize).max(512);
    let order = 16;
    let panels = nodes_needed.div_ceil(order);
    let rule = gauss_legendre(order);
    let mut qs = Vec::with_capacity(panels * order);
    let mut ws = Vec::with_capacity(panels * order);
    let hpan = (qhi - qlo) / panels as f64;
    for p in 0..panels {
        let mid = qlo + p as f64 * hpan + hpan / 2.0;
        for &(xi, wi) in &rule {
            qs.push(mid + xi * hpan / 2.0);
            ws.push(wi * hpan / 2.0);
        }
    }
    Ok((qs, ws))
}

/// Propagate the packet to time t and sample the envelope on `grid`.
///
/// The returned envelope G satisfies
/// Psi(x, t) = scale * exp(i p0 x - i p0^2 t / 2 mu) * G(x, t),
/// with scale = T(p0) for transmitted runs and one for free runs.
pub fn propagate(
    b: &BarrierSpec,
    pk: &PacketSpec,
    kind: PropagationKind,
    t: f64,
    grid: &Grid1D,
) -> Result<SampledEnvelope> {
    if kind == PropagationKind::Free {
        let vals: Vec<Complex64> = grid
            .points()
            .map(|x| free_envelope(pk, b.mu(), x, t))
            .collect();
        return SampledEnvelope::from_samples(grid.clone(), vals, ScaledAmplitude::one());
    }
    let x_extent = grid.start().abs().max(grid.end().abs());
    let (qs, ws) = q_nodes(b, pk, kind, t, x_extent)?;
    let l0 = log_transmission(b, pk.p0)?;
    // per-node factor: weight * A(q) * [T(p0+q)/T(p0)] * time phase
    let mut f = Vec::with_capacity(qs.len());
    for (&q, &w) in qs.iter().zip(&ws) {
        let rel = log_transmission_rel(b, pk.p0, q)?;
        let tphase = -(2.0 * pk.p0 * q + q * q) * t / (2.0 * b.mu());
        f.push(w * momentum_profile(pk, q) * (rel + Complex64::new(0.0, tphase)).exp());
    }
    let vals: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&q, &fj) in qs.iter().zip(&f) {
                acc += fj * Complex64::new(0.0, q * x).exp();
            }
            acc
        })
        .collect();
    SampledEnvelope::from_samples(grid.clone(), vals, ScaledAmplitude::new(l0.re, l0.im))
}

/// Record the envelope at a fixed detector position over a time grid.
pub fn time_trace(
    b: &BarrierSpec,
    pk: &PacketSpec,
    kind: PropagationKind,
    x_det: f64,
    times: &Grid1D,
) -> Result<TimeTrace> {
    let mut values = Vec::with_capacity(times.count());
    let mut scale = ScaledAmplitude::one();
    for t in times.points() {
        let g = Grid1D::new(x_det, 1.0, 2)?;
        let env = propagate(b, pk, kind, t, &g)?;
        scale = env.scale();
        values.push(env.values()[0]);
    }
    Ok(TimeTrace {
        times: times.clone(),
        values,
        scale,
    })
}
