//! Numerical laboratory for apparent "superluminal" wave-packet propagation.
//!
//! The crate implements two families of models that share one mechanism: a
//! spin-based beamsplitter that recombines delayed copies of an incident
//! pulse, and a rectangular potential barrier whose transmitted packet is
//! assembled from spatially retarded envelopes. On top of those sit the
//! superoscillation band analysis, the Hartman regime, the Larmor traversal
//! time amplitude, post-selected von Neumann pointer measurements, and a
//! scenario runner that emits deterministic CSV data files.

pub mod analysis;
pub mod barrier;
pub mod error;
pub mod larmor;
pub mod numerics;
pub mod pointer;
pub mod scenario;
pub mod spin;

pub use error::{Error, Result};
