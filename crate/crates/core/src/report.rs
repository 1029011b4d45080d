//! JSON analysis reports. Every number is rounded to 12 significant digits
//! before serialization, so identical inputs give byte-identical documents.

use serde::{Deserialize, Serialize};

use crate::csv_format::ORIENTATION_COMMENT;
use crate::error::{Error, Result};
use crate::impact::{ImpactKind, ImpactResult};
use crate::matrix::{Matrix, Vector};
use crate::requirements::{Frame, Kind, LegacyVariant};
use crate::series::SeriesReport;
use crate::system::{viability, IoSystem, ViabilityReport};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses")
}

fn rounded_vec(v: &Vector) -> Vec<f64> {
    v.as_slice().iter().copied().map(round_sig).collect()
}

fn rounded_rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(round_sig).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub n: usize,
    pub sector_names: Vec<String>,
    pub final_demand: Vec<f64>,
    pub gross_output: Vec<f64>,
    pub spectral_radius: f64,
    pub viability: ViabilityReport,
}

/// One named matrix. Requirements and transactions carry kind and frame
/// tags; the classical indirect-effects matrices carry their variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Frame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legacy: Option<LegacyVariant>,
    pub values: Vec<Vec<f64>>,
}

impl MatrixEntry {
    pub fn plain(name: &str, m: &Matrix) -> Self {
        Self {
            name: name.to_owned(),
            kind: None,
            frame: None,
            legacy: None,
            values: rounded_rows(m),
        }
    }

    pub fn tagged(name: &str, kind: Kind, frame: Frame, m: &Matrix) -> Self {
        Self {
            kind: Some(kind),
            frame: Some(frame),
            ..Self::plain(name, m)
        }
    }

    pub fn legacy(variant: LegacyVariant, m: &Matrix) -> Self {
        Self {
            legacy: Some(variant),
            ..Self::plain(variant.as_str(), m)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactEntry {
    pub kind: ImpactKind,
    pub frame: Frame,
    pub segment: Vec<f64>,
    pub delta_t: Vec<Vec<f64>>,
    pub delta_x: Vec<f64>,
}

impl ImpactEntry {
    pub fn new(segment: &Vector, result: &ImpactResult) -> Self {
        Self {
            kind: result.kind,
            frame: result.frame,
            segment: rounded_vec(segment),
            delta_t: rounded_rows(&result.delta_t),
            delta_x: rounded_vec(&result.delta_x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub orientation: String,
    pub system: SystemSummary,
    #[serde(default)]
    pub matrices: Vec<MatrixEntry>,
    #[serde(default)]
    pub impacts: Vec<ImpactEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<SeriesReport>,
}

impl AnalysisReport {
    pub fn for_system(sys: &IoSystem) -> Result<Self> {
        Ok(Self {
            orientation: ORIENTATION_COMMENT.to_owned(),
            system: SystemSummary {
                n: sys.n(),
                sector_names: sys.sector_names().to_vec(),
                final_demand: rounded_vec(sys.final_demand()),
                gross_output: rounded_vec(sys.gross_output()),
                spectral_radius: round_sig(sys.spectral_radius()),
                viability: {
                    let mut v = viability(sys.coefficients())?;
                    v.spectral_radius = round_sig(v.spectral_radius);
                    v
                },
            },
            matrices: Vec::new(),
            impacts: Vec::new(),
            oracle: None,
        })
    }

    pub fn find(&self, name: &str, kind: Option<Kind>, frame: Option<Frame>) -> Option<&MatrixEntry> {
        self.matrices
            .iter()
            .find(|m| m.name == name && m.kind == kind && m.frame == frame)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
