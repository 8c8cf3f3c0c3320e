//! Discrete Fourier transforms between a uniform grid and its conjugate.
//!
//! Conventions: forward maps f(u) to F(v) = integral of f(u) exp(-iuv) du,
//! inverse maps F(v) to (2 pi)^{-1} integral of F(v) exp(+iuv) dv. The
//! half-sample phase bookkeeping for off-centered grids is handled exactly,
//! so a forward/inverse pair on matching grids is an identity up to FFT
//! rounding.

use num_complex::Complex64;
use rustfft::{num_complex::Complex as FftComplex, FftDirection, FftPlanner};

use super::envelope::SampledEnvelope;
use super::grid::Grid1D;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Transform onto the conjugate grid centered at zero.
pub fn fourier_pair(f: &SampledEnvelope, dir: Direction) -> Result<SampledEnvelope> {
    let target = f.grid().conjugate();
    fourier_pair_to(f, dir, target)
}

/// Transform onto an explicit target grid with the conjugate step. Use this
/// to restore the original grid start on the return leg of a roundtrip.
pub fn fourier_pair_to(f: &SampledEnvelope, dir: Direction, target: Grid1D) -> Result<SampledEnvelope> {
    let n = f.grid().count();
    if target.count() != n {
        return Err(Error::InvalidGrid(format!(
            "target count {} does not match source count {}",
            target.count(),
            n
        )));
    }
    let dv_expected = 2.0 * std::f64::consts::PI / (n as f64 * f.grid().step());
    if ((target.step() - dv_expected) / dv_expected).abs() > 1e-9 {
        return Err(Error::InvalidGrid(format!(
            "target step {} is not conjugate to source step {}",
            target.step(),
            f.grid().step()
        )));
    }

    let (sign, pref) = match dir {
        Direction::Forward => (-1.0, f.grid().step()),
        Direction::Inverse => (1.0, f.grid().step() / (2.0 * std::f64::consts::PI)),
    };

    let s1 = f.grid().start();
    let s2 = target.start();
    let h = f.grid().step();

    let mut buf: Vec<FftComplex<f64>> = f
        .values()
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let ph = sign * (k as f64) * h * s2;
            let w = Complex64::new(0.0, ph).exp();
            let y = z * w;
            FftComplex::new(y.re, y.im)
        })
        .collect();

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(
        n,
        if sign < 0.0 {
            FftDirection::Forward
        } else {
            FftDirection::Inverse
        },
    );
    fft.process(&mut buf);

    let values: Vec<Complex64> = buf
        .iter()
        .enumerate()
        .map(|(j, z)| {
            let vj = target.point(j);
            let w = Complex64::new(0.0, sign * s1 * vj).exp();
            Complex64::new(z.re, z.im) * w * pref
        })
        .collect();

    let mut out = SampledEnvelope::from_samples(target, values, f.scale())?;
    out.set_form(super::envelope::EnvelopeForm::Samples);
    Ok(out)
}

/// Check that the envelope modulus has decayed at the grid edges relative to
/// its maximum; transforms of non-decayed data alias.
pub fn check_edge_decay(f: &SampledEnvelope, rel_tol: f64) -> Result<()> {
    let m = f.max_abs_rel();
    if m == 0.0 {
        return Ok(());
    }
    let edge = f.abs_rel(0).max(f.abs_rel(f.grid().count() - 1));
    if edge > rel_tol * m {
        return Err(Error::WindowTooSmall {
            edge_value: edge / m,
            required: rel_tol,
        });
    }
    Ok(())
}

/// Convolution (g * kernel)(x) = integral of g(x - a) kernel(a) da evaluated
/// on `out`. One kernel-weighted superposition serves the delay comb, the
/// barrier convolution and the pointer measurement alike.
pub fn convolve_kernel(g: &SampledEnvelope, kernel: &SampledEnvelope, out: Grid1D) -> Result<SampledEnvelope> {
    let da = kernel.grid().step();
    let values: Vec<Complex64> = out
        .points()
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, k) in kernel.values().iter().enumerate() {
                if *k == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let a = kernel.grid().point(i);
                acc += g.eval(x - a) * k;
            }
            acc * da
        })
        .collect();
    SampledEnvelope::from_samples(out, values, g.scale().mul(&kernel.scale()))
}
