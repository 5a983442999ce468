use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

const DEFAULT_REGISTRY: &str = include_str!("../../data/standard_model.json");

pub const FAMILIES: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Handedness {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Quark,
    Lepton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Su2 {
    Singlet,
    /// Member slot `0` (upper) or `1` (lower) of a doublet.
    Doublet(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Singlet,
    Triplet,
}

mod rational_text {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = if v.denom() == &1.into() {
            v.numer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        };
        s.serialize_str(&text)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        Rational::from_text_parts(&text, None).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticleSpec {
    pub name: String,
    pub family: u8,
    pub chirality: Handedness,
    pub sector: Sector,
    pub su2: Su2,
    #[serde(with = "rational_text")]
    pub hypercharge: Rational,
    pub color: Color,
}

impl ParticleSpec {
    /// Complex dimension of `ℂ² ⊗ ℂ^{color} ⊗ ℂ^{su2} ⊗ ℂ`: one Weyl
    /// spinor, the color multiplet, the weak multiplet and the `U(1)` line.
    pub fn representation_dimension(&self) -> u32 {
        let weyl = 2;
        let color = match self.color {
            Color::Singlet => 1,
            Color::Triplet => 3,
        };
        let weak = match self.su2 {
            Su2::Singlet => 1,
            Su2::Doublet(_) => 2,
        };
        weyl * color * weak
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    #[serde(default)]
    pub note: String,
    pub particles: Vec<ParticleSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub family: u8,
    pub sector: Sector,
    #[serde(with = "rational_text")]
    pub left_sum: Rational,
    #[serde(with = "rational_text")]
    pub right_sum: Rational,
    pub balanced: bool,
}

impl Registry {
    /// The registry shipped with the crate.
    pub fn standard_model() -> Self {
        Self::from_json_str(DEFAULT_REGISTRY).expect("bundled registry parses")
    }

    pub fn empty() -> Self {
        Self {
            version: 1,
            note: String::new(),
            particles: Vec::new(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let reg: Self = serde_json::from_str(text)?;
        reg.validate_entries()?;
        Ok(reg)
    }

    fn validate_entries(&self) -> Result<()> {
        for p in &self.particles {
            let color_ok = match p.sector {
                Sector::Quark => p.color == Color::Triplet,
                Sector::Lepton => p.color == Color::Singlet,
            };
            let slot_ok = match p.su2 {
                Su2::Doublet(s) => s < 2 && p.chirality == Handedness::L,
                Su2::Singlet => p.chirality == Handedness::R,
            };
            if !color_ok || !slot_ok || p.family == 0 || p.family > FAMILIES {
                return Err(Error::Parse(format!("inconsistent particle entry {}", p.name)));
            }
        }
        Ok(())
    }

    /// Every family and sector must have both doublet slots and two right
    /// singlets; returns the list of missing places otherwise.
    pub fn check_complete(&self) -> Result<()> {
        let mut missing = Vec::new();
        for family in 1..=FAMILIES {
            for sector in [Sector::Quark, Sector::Lepton] {
                let members: Vec<&ParticleSpec> = self
                    .particles
                    .iter()
                    .filter(|p| p.family == family && p.sector == sector)
                    .collect();
                for slot in 0..2u8 {
                    let n = members.iter().filter(|p| p.su2 == Su2::Doublet(slot)).count();
                    if n != 1 {
                        missing.push(format!("family {family} {sector:?} left doublet slot {slot}"));
                    }
                }
                let right = members.iter().filter(|p| p.chirality == Handedness::R).count();
                if right != 2 {
                    missing.push(format!(
                        "family {family} {sector:?} right singlets ({right} of 2)"
                    ));
                }
            }
        }
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::RegistryIncomplete(missing))
        }
    }

    pub fn count(&self, sector: Sector, chirality: Handedness) -> usize {
        self.particles
            .iter()
            .filter(|p| p.sector == sector && p.chirality == chirality)
            .count()
    }

    pub fn get(&self, name: &str) -> Option<&ParticleSpec> {
        self.particles.iter().find(|p| p.name == name)
    }
}

/// Sum of left-handed hypercharges against right-handed ones, per family
/// and sector, in exact arithmetic.
pub fn hypercharge_audit(registry: &Registry) -> Result<Vec<AuditEntry>> {
    registry.check_complete()?;
    let mut sums: BTreeMap<(u8, Sector), (Rational, Rational)> = BTreeMap::new();
    for p in &registry.particles {
        let entry = sums
            .entry((p.family, p.sector))
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        match p.chirality {
            Handedness::L => entry.0 += &p.hypercharge,
            Handedness::R => entry.1 += &p.hypercharge,
        }
    }
    Ok(sums
        .into_iter()
        .map(|((family, sector), (left, right))| AuditEntry {
            family,
            sector,
            balanced: left == right,
            left_sum: left,
            right_sum: right,
        })
        .collect())
}
