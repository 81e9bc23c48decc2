//! JSON distribution files.
//!
//! ```json
//! {"schema_version": 1, "mode": "circle2d",
//!  "atoms": [{"num": 1, "den": 4, "label": 1, "mass_num": 1, "mass_den": 2}, ...]}
//! ```
//!
//! Structured files use `"mode": "structured"`, carry `d` and `k`, and give
//! each atom an `index` into the support instead of `num`/`den`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::dist::{make_dist, make_structured_dist, DistMode, LabeledAtom, LabeledDist, Location};
use crate::error::{Error, Result};
use crate::geometry::{angle_from_turns, Label, StructuredSupport};
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistFile {
    pub schema_version: u32,
    pub mode: FileMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub atoms: Vec<AtomRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileMode {
    Circle2d,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num: Option<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub label: Label,
    pub mass_num: i128,
    pub mass_den: i128,
}

impl DistFile {
    pub fn from_dist(dist: &LabeledDist) -> Self {
        let (mode, d, k) = match dist.mode() {
            DistMode::Circle2D => (FileMode::Circle2d, None, None),
            DistMode::Structured { d, k } => (FileMode::Structured, Some(d), Some(k)),
        };
        let atoms = dist
            .atoms()
            .into_iter()
            .map(|a| {
                let (num, den, index) = match a.location {
                    Location::Angle(t) => (Some(t.num() as i128), Some(t.den() as i128), None),
                    Location::Point(i) => (None, None, Some(i)),
                };
                AtomRecord {
                    num,
                    den,
                    index,
                    label: a.label,
                    mass_num: *a.mass.numer(),
                    mass_den: *a.mass.denom(),
                }
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            mode,
            d,
            k,
            atoms,
        }
    }

    pub fn into_dist(self) -> Result<LabeledDist> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let bad = |msg: &str| Error::InvalidInput(msg.to_string());
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for r in &self.atoms {
            if r.mass_den == 0 {
                return Err(bad("mass_den must be nonzero"));
            }
            let mass = Rational::new(r.mass_num, r.mass_den);
            let location = match self.mode {
                FileMode::Circle2d => {
                    let (num, den) = r
                        .num
                        .zip(r.den)
                        .ok_or_else(|| bad("circle2d atoms need num and den"))?;
                    Location::Angle(angle_from_turns(num, den)?)
                }
                FileMode::Structured => Location::Point(
                    r.index
                        .ok_or_else(|| bad("structured atoms need an index"))?,
                ),
            };
            atoms.push(LabeledAtom::new(location, r.label, mass));
        }
        match self.mode {
            FileMode::Circle2d => make_dist(atoms),
            FileMode::Structured => {
                let (d, k) = self
                    .d
                    .zip(self.k)
                    .ok_or_else(|| bad("structured files need d and k"))?;
                make_structured_dist(Arc::new(StructuredSupport::new(d, k)?), atoms)
            }
        }
    }
}

pub fn load_dist(path: impl AsRef<Path>) -> Result<LabeledDist> {
    let text = fs::read_to_string(path)?;
    let file: DistFile = serde_json::from_str(&text)?;
    file.into_dist()
}

pub fn save_dist(dist: &LabeledDist, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&DistFile::from_dist(dist))?;
    fs::write(path, text)?;
    Ok(())
}
