//! Reproduction layer: named scenarios, configuration parsing, CSV output
//! and run manifests. Each scenario computes its full dataset in memory
//! first and only then writes files, so a failing run never leaves partial
//! CSVs behind; the manifest is written last and atomically.

pub mod config;
pub mod csv;
pub mod manifest;
mod run;

pub use config::{parse_config, Preset, ScenarioConfig, ScenarioId};
pub use manifest::{OutputRecord, RunManifest};
pub use run::{catalog, run};
