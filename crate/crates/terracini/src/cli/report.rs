//! Machine-readable run reports: one JSON document per run, embedding full
//! provenance (family, parameters, primes, seeds, trials, artifact version)
//! so a report alone suffices to reproduce its run byte for byte.

use serde::Serialize;

use crate::bounds::{BoundReport, FatPointReport, FrobergReport, PartitionBounds, SecantBounds};
use crate::certify::{CertificateReport, DefectEvidence, RSummary};
use crate::sequences::{DiagonalCheck, SequenceTrace};

use super::figures::{FatPointsFigure, FigureRow, Fraction, FrobergFigure};
use super::scenario::{Mode, Scenario};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ArtifactInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ArtifactInfo {
    pub fn current() -> Self {
        ArtifactInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum BoundsOutcome {
    Froberg {
        report: FrobergReport,
        secant: SecantBounds,
    },
    Fatpoints {
        report: FatPointReport,
        secant: SecantBounds,
    },
    Partition {
        bounds: PartitionBounds,
        #[serde(skip_serializing_if = "Option::is_none")]
        criterion: Option<BoundReport>,
        secant: SecantBounds,
    },
    Moments {
        identifiable: bool,
        criterion: BoundReport,
        secant: SecantBounds,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Outcome {
    Bounds(BoundsOutcome),
    Certify(CertificateReport),
    CertifyR(RSummary),
    Scan(DefectEvidence),
    Trace(SequenceTrace),
    DiagonalCheck(DiagonalCheck),
    FigureFroberg {
        config: FrobergFigure,
        fraction: Fraction,
        csv: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        svg: Option<String>,
        rows: Vec<FigureRow>,
    },
    FigureFatpoints {
        config: FatPointsFigure,
        fraction: Fraction,
        csv: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        svg: Option<String>,
        rows: Vec<FigureRow>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub artifact: ArtifactInfo,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub provenance: Provenance,
    pub outcome: Outcome,
    /// 0 for certified or guaranteed outcomes, 3 when the criterion or the
    /// certificate stayed silent.
    pub exit_status: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}
