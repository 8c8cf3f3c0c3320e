//! Scenario configuration: a small sectioned key-value format.
//!
//! Grammar: `[section]` headers, `key = value` pairs, `#` comments, blank
//! lines ignored. Keys are checked against a fixed schema so typos fail
//! loudly with the offending line number. Values are either numbers or one
//! of a short list of enumerated words; physical validation beyond simple
//! range checks happens in the owning module's constructors when the
//! scenario runs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioId {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Chop,
    Larmor,
    Pointer,
    Custom,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 12] = [
        ScenarioId::Fig3,
        ScenarioId::Fig4,
        ScenarioId::Fig5,
        ScenarioId::Fig6,
        ScenarioId::Fig7,
        ScenarioId::Fig8,
        ScenarioId::Fig9,
        ScenarioId::Fig10,
        ScenarioId::Chop,
        ScenarioId::Larmor,
        ScenarioId::Pointer,
        ScenarioId::Custom,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "fig3" => ScenarioId::Fig3,
            "fig4" => ScenarioId::Fig4,
            "fig5" => ScenarioId::Fig5,
            "fig6" => ScenarioId::Fig6,
            "fig7" => ScenarioId::Fig7,
            "fig8" => ScenarioId::Fig8,
            "fig9" => ScenarioId::Fig9,
            "fig10" => ScenarioId::Fig10,
            "chop" => ScenarioId::Chop,
            "larmor" => ScenarioId::Larmor,
            "pointer" => ScenarioId::Pointer,
            "custom" => ScenarioId::Custom,
            _ => return None,
        })
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScenarioId::Fig3 => "fig3",
            ScenarioId::Fig4 => "fig4",
            ScenarioId::Fig5 => "fig5",
            ScenarioId::Fig6 => "fig6",
            ScenarioId::Fig7 => "fig7",
            ScenarioId::Fig8 => "fig8",
            ScenarioId::Fig9 => "fig9",
            ScenarioId::Fig10 => "fig10",
            ScenarioId::Chop => "chop",
            ScenarioId::Larmor => "larmor",
            ScenarioId::Pointer => "pointer",
            ScenarioId::Custom => "custom",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Desk,
    Paper,
}

impl Preset {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "desk" => Some(Preset::Desk),
            "paper" => Some(Preset::Paper),
            _ => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Desk => "desk",
            Preset::Paper => "paper",
        })
    }
}

/// (section, key, numeric?) schema of every accepted field.
const SCHEMA: &[(&str, &str, bool)] = &[
    ("scenario", "id", false),
    ("scenario", "preset", false),
    ("output", "dir", false),
    ("spin", "k", true),
    ("spin", "alpha_re", true),
    ("spin", "alpha_im", true),
    ("spin", "dx", true),
    ("spin", "sigma", true),
    ("barrier", "w", true),
    ("barrier", "d", true),
    ("barrier", "mu", true),
    ("packet", "p0", true),
    ("packet", "sigma", true),
    ("packet", "x0", true),
    ("packet", "t", true),
    ("numerics", "n", true),
    ("numerics", "p_half_width", true),
    ("numerics", "edge_tol", true),
    ("numerics", "points", true),
    ("numerics", "alpha_tilde_max", true),
    ("numerics", "eps", true),
    ("numerics", "n_v", true),
    ("numerics", "v_half", true),
    ("chop", "cut", true),
    ("chop", "keep", false),
    ("chop", "ramp", true),
    ("pointer", "sigma_min", true),
    ("pointer", "sigma_max", true),
    ("pointer", "sigma_steps", true),
    ("pointer", "pairs", true),
];

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub id: ScenarioId,
    pub preset: Preset,
    pub out_dir: PathBuf,
    numbers: BTreeMap<String, f64>,
    words: BTreeMap<String, String>,
    /// the raw text, echoed into the manifest
    pub echo: String,
}

impl ScenarioConfig {
    /// Numeric field "section.key", falling back to the given default.
    pub fn num(&self, key: &str, default: f64) -> f64 {
        self.numbers.get(key).copied().unwrap_or(default)
    }

    pub fn num_opt(&self, key: &str) -> Option<f64> {
        self.numbers.get(key).copied()
    }

    pub fn word(&self, key: &str, default: &str) -> String {
        self.words
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }
}

/// Parse configuration text. `preset_override` and `out_override` come from
/// the command line and win over the file.
pub fn parse_config(
    text: &str,
    preset_override: Option<Preset>,
    out_override: Option<PathBuf>,
) -> Result<ScenarioConfig> {
    let mut section = String::new();
    let mut numbers = BTreeMap::new();
    let mut words = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(Error::ConfigParse {
                line: line_no,
                reason: "unterminated section header".into(),
            })?;
            let name = name.trim();
            if !SCHEMA.iter().any(|(s, _, _)| *s == name) {
                return Err(Error::UnknownKey {
                    key: String::new(),
                    section: name.to_string(),
                    line: line_no,
                });
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::ConfigParse {
            line: line_no,
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if section.is_empty() {
            return Err(Error::ConfigParse {
                line: line_no,
                reason: "key before any [section] header".into(),
            });
        }
        let entry = SCHEMA
            .iter()
            .find(|(s, k, _)| *s == section && *k == key)
            .ok_or(Error::UnknownKey {
                key: key.to_string(),
                section: section.clone(),
                line: line_no,
            })?;
        let full = format!("{section}.{key}");
        if entry.2 {
            let v: f64 = value.parse().map_err(|_| Error::ConfigInvalid {
                field: full.clone(),
                reason: format!("`{value}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::ConfigInvalid {
                    field: full,
                    reason: "value must be finite".into(),
                });
            }
            numbers.insert(full, v);
        } else {
            words.insert(full, value.to_string());
        }
    }

    let id_word = words.get("scenario.id").ok_or(Error::ConfigInvalid {
        field: "scenario.id".into(),
        reason: "missing; one of fig3..fig10, chop, larmor, pointer, custom".into(),
    })?;
    let id = ScenarioId::parse(id_word).ok_or(Error::ConfigInvalid {
        field: "scenario.id".into(),
        reason: format!("unknown scenario `{id_word}`"),
    })?;
    let preset = match preset_override {
        Some(p) => p,
        None => {
            let w = words
                .get("scenario.preset")
                .cloned()
                .unwrap_or_else(|| "desk".into());
            Preset::parse(&w).ok_or(Error::ConfigInvalid {
                field: "scenario.preset".into(),
                reason: format!("`{w}` is not `desk` or `paper`"),
            })?
        }
    };
    let out_dir = out_override.unwrap_or_else(|| {
        PathBuf::from(
            words
                .get("output.dir")
                .cloned()
                .unwrap_or_else(|| "out".into()),
        )
    });

    if let Some(&eps) = numbers.get("numerics.eps") {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::ConfigInvalid {
                field: "numerics.eps".into(),
                reason: format!("sharp-regime exponent must satisfy 0 < eps <= 1, got {eps}"),
            });
        }
    }
    if let Some(keep) = words.get("chop.keep") {
        if keep != "front" && keep != "rear" {
            return Err(Error::ConfigInvalid {
                field: "chop.keep".into(),
                reason: format!("`{keep}` is not `front` or `rear`"),
            });
        }
    }

    Ok(ScenarioConfig {
        id,
        preset,
        out_dir,
        numbers,
        words,
        echo: text.to_string(),
    })
}
