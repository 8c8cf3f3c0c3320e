//! Uniform one-dimensional grids for position, momentum, time and
//! barrier-height axes.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    start: f64,
    step: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidGrid(format!("step must be > 0, got {step}")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("count must be >= 2, got {count}")));
        }
        if !start.is_finite() {
            return Err(Error::InvalidGrid(format!("start must be finite, got {start}")));
        }
        Ok(Self { start, step, count })
    }

    /// Grid covering [a, b] with `count` points (step = (b-a)/(count-1)).
    pub fn span(a: f64, b: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid(format!("count must be >= 2, got {count}")));
        }
        Self::new(a, (b - a) / (count - 1) as f64, count)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn end(&self) -> f64 {
        self.point(self.count - 1)
    }

    /// i-th point, computed directly from start and step so no rounding
    /// accumulates along the grid.
    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// Index of the grid point nearest to x.
    pub fn nearest_index(&self, x: f64) -> usize {
        let i = ((x - self.start) / self.step).round();
        (i.max(0.0) as usize).min(self.count - 1)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.start - 0.5 * self.step && x <= self.end() + 0.5 * self.step
    }

    /// Conjugate grid for the discrete Fourier transform: count preserved,
    /// step 2*pi/(count*step), centered on zero.
    pub fn conjugate(&self) -> Grid1D {
        let dv = 2.0 * std::f64::consts::PI / (self.count as f64 * self.step);
        Grid1D {
            start: -(self.count as f64 / 2.0).floor() * dv,
            step: dv,
            count: self.count,
        }
    }
}
