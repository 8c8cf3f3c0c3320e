//! Complex amplitudes stored as (log magnitude, phase).
//!
//! Deep-tunnelling transmission amplitudes behave like exp(-kappa*d) with
//! kappa*d reaching 1e5 and beyond, far outside the range of f64. Carrying
//! the natural log of the modulus instead of the modulus itself makes
//! products, quotients and ratios of such numbers exact operations on
//! ordinary floats. Exact zero is encoded as log_mag = -inf.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledAmplitude {
    log_mag: f64,
    phase: f64,
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_phase(phi: f64) -> f64 {
    if phi.is_infinite() || phi.is_nan() {
        return f64::NAN;
    }
    let mut p = phi % (2.0 * PI);
    if p <= -PI {
        p += 2.0 * PI;
    } else if p > PI {
        p -= 2.0 * PI;
    }
    p
}

impl ScaledAmplitude {
    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::zero();
        }
        Self {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    pub fn zero() -> Self {
        Self {
            log_mag: f64::NEG_INFINITY,
            phase: 0.0,
        }
    }

    pub fn one() -> Self {
        Self {
            log_mag: 0.0,
            phase: 0.0,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            Self::zero()
        } else {
            Self::new(z.norm().ln(), z.arg())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn log10_mag(&self) -> f64 {
        self.log_mag / std::f64::consts::LN_10
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    pub fn powi(&self, n: i32) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::one() } else { Self::zero() };
        }
        Self::new(self.log_mag * n as f64, self.phase * n as f64)
    }

    /// Convert to a plain complex number; errs when the modulus overflows f64.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.log_mag > 709.0 {
            return Err(Error::ScaleOverflow(self.log_mag));
        }
        let r = self.log_mag.exp();
        Ok(Complex64::new(r * self.phase.cos(), r * self.phase.sin()))
    }

    /// Like `to_complex`, but the caller supplies a reference log magnitude
    /// that is divided out first. Useful for forming O(1) ratios of two
    /// enormous or tiny amplitudes.
    pub fn to_complex_rescaled(&self, ref_log_mag: f64) -> Result<Complex64> {
        Self::new(self.log_mag - ref_log_mag, self.phase).to_complex()
    }
}
