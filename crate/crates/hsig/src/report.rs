//! JSON form of a Bedrosian report.

use hsig_core::bedrosian::BedrosianReport;
use serde::Serialize;

use crate::literal::OperatorLiteral;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridEcho {
    pub dim: usize,
    pub samples_per_axis: Vec<usize>,
    pub half_extent: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub residual_l2_rel: f64,
    pub residual_max: f64,
    pub characterization_max: Option<f64>,
    pub verdict: &'static str,
    pub tolerance: f64,
    pub grid: GridEcho,
    pub operator: OperatorLiteral,
}

impl From<&BedrosianReport> for ReportJson {
    fn from(r: &BedrosianReport) -> Self {
        ReportJson {
            residual_l2_rel: r.residual_l2_rel,
            residual_max: r.residual_max,
            characterization_max: r.characterization_max,
            verdict: if r.verdict.holds() { "holds" } else { "fails" },
            tolerance: r.tolerance,
            grid: GridEcho {
                dim: r.grid.dim(),
                samples_per_axis: r.grid.samples_per_axis().to_vec(),
                half_extent: r.grid.half_extent().to_vec(),
            },
            operator: OperatorLiteral::of(&r.operator),
        }
    }
}

/// Blaschke certification summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateJson {
    pub real_residual: f64,
    pub complex_residual: f64,
    pub tolerance: f64,
    pub verdict: &'static str,
}
