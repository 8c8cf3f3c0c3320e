//! Thin multiprecision layer over astro-float.
//!
//! The delay-comb amplitudes eta_m reach 1e39 and cancel down to O(1), which
//! is far beyond what compensated f64 summation can rescue. The hot paths of
//! the spin model therefore run in arbitrary precision; this module wraps the
//! handful of BigFloat operations they need behind a context that carries the
//! working precision and the constants cache.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

pub struct MpCtx {
    prec: usize,
    cc: Consts,
}

impl MpCtx {
    /// A context computing with `prec` bits of mantissa.
    pub fn new(prec: usize) -> Self {
        Self {
            prec,
            cc: Consts::new().expect("constants cache"),
        }
    }

    /// Precision in bits required to resolve O(1) results out of sums whose
    /// terms reach exp(log_spread) in magnitude, with `guard` extra bits.
    pub fn for_log_spread(log_spread: f64, guard: usize) -> Self {
        let bits = (log_spread.max(0.0) / std::f64::consts::LN_2).ceil() as usize + guard;
        Self::new(bits.max(128))
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn big(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn from_i64(&self, n: i64) -> BigFloat {
        // i64 -> f64 is exact only to 2^53; go through two halves
        let hi = (n >> 32) as f64;
        let lo = (n & 0xffff_ffff) as f64;
        let two32 = self.big(4294967296.0);
        self.add(&self.mul(&self.big(hi), &two32), &self.big(lo))
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    /// Exact factorial as a BigFloat (n kept small enough that the product
    /// of word-sized integers is representable at the context precision).
    pub fn factorial(&self, n: usize) -> BigFloat {
        let mut acc = self.big(1.0);
        for k in 2..=n {
            acc = self.mul(&acc, &self.big(k as f64));
        }
        acc
    }

    /// Round to the nearest f64 (truncating guard bits).
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if x.is_nan() {
            return f64::NAN;
        }
        let (words, _n, sign, exp, _) = x.as_raw_parts().expect("finite number has parts");
        let len = words.len();
        // words are little-endian; the mantissa is a binary fraction in [0.5, 1)
        let mut frac = words[len - 1] as f64 / 18446744073709551616.0; // 2^64
        if len > 1 {
            frac += words[len - 2] as f64 / 3.402823669209385e38; // 2^128
        }
        let mag = if exp > 1024 {
            f64::INFINITY
        } else if exp < -1060 {
            0.0
        } else {
            frac * (2.0f64).powi(exp)
        };
        if sign == astro_float::Sign::Neg {
            -mag
        } else {
            mag
        }
    }
}

/// Complex number with BigFloat components.
#[derive(Debug, Clone)]
pub struct MpC {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpC {
    pub fn from_c64(ctx: &MpCtx, z: Complex64) -> Self {
        Self {
            re: ctx.big(z.re),
            im: ctx.big(z.im),
        }
    }

    pub fn zero(ctx: &MpCtx) -> Self {
        Self {
            re: ctx.big(0.0),
            im: ctx.big(0.0),
        }
    }

    pub fn add(&self, ctx: &MpCtx, rhs: &Self) -> Self {
        Self {
            re: ctx.add(&self.re, &rhs.re),
            im: ctx.add(&self.im, &rhs.im),
        }
    }

    pub fn sub(&self, ctx: &MpCtx, rhs: &Self) -> Self {
        Self {
            re: ctx.sub(&self.re, &rhs.re),
            im: ctx.sub(&self.im, &rhs.im),
        }
    }

    pub fn mul(&self, ctx: &MpCtx, rhs: &Self) -> Self {
        Self {
            re: ctx.sub(&ctx.mul(&self.re, &rhs.re), &ctx.mul(&self.im, &rhs.im)),
            im: ctx.add(&ctx.mul(&self.re, &rhs.im), &ctx.mul(&self.im, &rhs.re)),
        }
    }

    pub fn mul_big(&self, ctx: &MpCtx, rhs: &BigFloat) -> Self {
        Self {
            re: ctx.mul(&self.re, rhs),
            im: ctx.mul(&self.im, rhs),
        }
    }

    pub fn div_big(&self, ctx: &MpCtx, rhs: &BigFloat) -> Self {
        Self {
            re: ctx.div(&self.re, rhs),
            im: ctx.div(&self.im, rhs),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn abs(&self, ctx: &MpCtx) -> BigFloat {
        let s = ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im));
        ctx.sqrt(&s)
    }

    /// exp(i * theta) for a real BigFloat angle.
    pub fn cis(ctx: &mut MpCtx, theta: &BigFloat) -> Self {
        Self {
            re: ctx.cos(theta),
            im: ctx.sin(theta),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(MpCtx::to_f64(&self.re), MpCtx::to_f64(&self.im))
    }
}
