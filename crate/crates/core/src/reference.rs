//! Embedded reference data: published wall shear per regime and source, and
//! velocity tables for five regimes.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optim::Algorithm;
use crate::problem::WedgeParams;

const EMBEDDED: &str = include_str!("../data/reference.toml");

#[derive(Debug, Error)]
pub enum ReferenceError {
    #[error("reference data does not parse: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("reference data is inconsistent: {0}")]
    Invalid(String),
}

/// `alpha = f''(0)` as reported by each source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaColumns {
    pub jaya: f64,
    pub zhang: f64,
    pub asaithambi: f64,
    pub pso: f64,
    pub hyperband: f64,
    pub ga: f64,
}

impl AlphaColumns {
    pub fn for_algorithm(&self, alg: Algorithm) -> f64 {
        match alg {
            Algorithm::Jaya => self.jaya,
            Algorithm::Pso => self.pso,
            Algorithm::Ga => self.ga,
            Algorithm::Hyperband => self.hyperband,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 6]", into = "[f64; 6]")]
pub struct VelocityRow {
    pub xi: f64,
    pub fp_ref: f64,
    pub jaya: f64,
    pub pso: f64,
    pub hyperband: f64,
    pub ga: f64,
}

impl From<[f64; 6]> for VelocityRow {
    fn from(v: [f64; 6]) -> Self {
        Self {
            xi: v[0],
            fp_ref: v[1],
            jaya: v[2],
            pso: v[3],
            hyperband: v[4],
            ga: v[5],
        }
    }
}

impl From<VelocityRow> for [f64; 6] {
    fn from(r: VelocityRow) -> Self {
        [r.xi, r.fp_ref, r.jaya, r.pso, r.hyperband, r.ga]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityTable {
    pub rows: Vec<VelocityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRecord {
    pub name: String,
    pub beta0: f64,
    pub beta: f64,
    pub eta_inf: Option<f64>,
    pub residual: Option<f64>,
    pub alpha: AlphaColumns,
    pub velocity: Option<VelocityTable>,
}

impl ReferenceRecord {
    pub fn params(&self) -> WedgeParams {
        WedgeParams::new(self.beta0, self.beta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSet {
    pub version: u32,
    #[serde(rename = "record")]
    pub records: Vec<ReferenceRecord>,
}

impl ReferenceSet {
    pub fn parse(text: &str) -> Result<Self, ReferenceError> {
        let set: ReferenceSet = toml::from_str(text)?;
        set.validate()?;
        Ok(set)
    }

    /// Records keyed by unique `(beta0, beta)`; velocity tables strictly
    /// increasing in `xi` within `(0, 1]`; velocity tables need `eta_inf`.
    pub fn validate(&self) -> Result<(), ReferenceError> {
        let invalid = |m: String| Err(ReferenceError::Invalid(m));
        for (i, a) in self.records.iter().enumerate() {
            if self.records[..i].iter().any(|b| b.beta0 == a.beta0 && b.beta == a.beta) {
                return invalid(format!("duplicate regime beta0={} beta={}", a.beta0, a.beta));
            }
            if let Some(table) = &a.velocity {
                if a.eta_inf.is_none() {
                    return invalid(format!("{}: velocity table without eta_inf", a.name));
                }
                let mut prev = 0.0;
                for row in &table.rows {
                    if !(row.xi > prev && row.xi <= 1.0) {
                        return invalid(format!("{}: xi values must increase within (0, 1]", a.name));
                    }
                    prev = row.xi;
                }
            }
        }
        Ok(())
    }

    pub fn find(&self, p: &WedgeParams) -> Option<&ReferenceRecord> {
        self.records.iter().find(|r| r.beta0 == p.beta0 && r.beta == p.beta)
    }

    pub fn regimes(&self) -> Vec<WedgeParams> {
        self.records.iter().map(ReferenceRecord::params).collect()
    }
}

/// The reference set compiled into the library.
pub fn embedded() -> &'static ReferenceSet {
    static SET: OnceLock<ReferenceSet> = OnceLock::new();
    SET.get_or_init(|| ReferenceSet::parse(EMBEDDED).expect("embedded reference data is valid"))
}
