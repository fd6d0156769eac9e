//! Documents printed on stdout, one type per subcommand.

use serde::{Deserialize, Serialize};

use realav_core::search::{CertifyReport, DensityWitness, SampleRow, SampleSummary, SampleTable};
use realav_core::subvariety::SubvarietyCertificate;

use crate::wire::{finite, matrix_to_json, AnyMatrixJson, MatrixJson, ModeJson, PointJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidateOut {
    pub valid: bool,
    pub g: usize,
    pub mode: ModeJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JmatOut {
    pub g: usize,
    pub mode: ModeJson,
    #[serde(rename = "J")]
    pub j: AnyMatrixJson,
    pub riemann_holds: bool,
    pub j_squared: f64,
    pub symplectic: f64,
    pub min_positivity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixOut {
    pub in_fixed_locus: bool,
    pub nearest: PointJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianTypeOut {
    pub alpha: u8,
    pub lambda: usize,
    #[serde(rename = "M")]
    pub m: MatrixJson,
    #[serde(rename = "T")]
    pub t: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianOut {
    pub g: usize,
    pub count: usize,
    pub types: Vec<AbelianTypeOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveTypeOut {
    pub epsilon: u8,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvesOut {
    pub g: usize,
    pub count: usize,
    pub types: Vec<CurveTypeOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOut {
    pub g: usize,
    pub alpha: u8,
    pub lambda: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateOut {
    pub plane: MatrixJson,
    pub k: usize,
    pub j_stable: bool,
    pub j_residual: Option<f64>,
    pub t_stable: Option<bool>,
    pub symplectic_rank: usize,
    pub certified: bool,
}

impl From<&SubvarietyCertificate> for CertificateOut {
    fn from(c: &SubvarietyCertificate) -> Self {
        CertificateOut {
            plane: matrix_to_json(c.plane.basis()),
            k: c.k(),
            j_stable: c.j_stable,
            j_residual: finite(c.j_residual),
            t_stable: c.t_stable,
            symplectic_rank: c.symplectic_rank,
            certified: c.certified(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubSearchOut {
    pub g: usize,
    pub k: usize,
    pub height: u32,
    pub count: usize,
    pub certificates: Vec<CertificateOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionOut {
    pub g: usize,
    pub k: usize,
    pub m: usize,
    pub condition1: bool,
    pub ek: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermatOut {
    pub d: u32,
    pub g: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub witness: Option<MatrixJson>,
    pub rank: usize,
    pub passes: bool,
    pub tried: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxOut {
    pub plane: MatrixJson,
    pub dim: usize,
    pub denom_bound: u64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyOut {
    pub valid_point: bool,
    pub fixed_locus: bool,
    pub t_stable: bool,
    pub symplectic_rank: usize,
    pub symplectic_ok: bool,
    pub j_residual: Option<f64>,
    pub j_residual_ok: bool,
    pub all_pass: bool,
}

impl From<&CertifyReport> for CertifyOut {
    fn from(r: &CertifyReport) -> Self {
        CertifyOut {
            valid_point: r.valid_point,
            fixed_locus: r.fixed_locus,
            t_stable: r.t_stable,
            symplectic_rank: r.symplectic_rank,
            symplectic_ok: r.symplectic_ok,
            j_residual: finite(r.j_residual),
            j_residual_ok: r.j_residual_ok,
            all_pass: r.all_pass(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub alpha: u8,
    pub lambda: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: MatrixJson,
    pub z_start: PointJson,
    pub z_found: PointJson,
    pub plane: MatrixJson,
    pub j_residual: f64,
    pub displacement: f64,
    pub denom_bound: u64,
    pub iterations: usize,
    pub certify: CertifyOut,
}

impl WitnessOut {
    pub fn new(w: &DensityWitness, report: &CertifyReport) -> Self {
        WitnessOut {
            alpha: w.alpha,
            lambda: w.lambda,
            k: w.k,
            m: matrix_to_json(&w.m),
            z_start: PointJson::from_point(&w.z_start),
            z_found: PointJson::from_point(&w.z_found),
            plane: matrix_to_json(w.plane.basis()),
            j_residual: w.j_residual,
            displacement: w.displacement,
            denom_bound: w.denom_bound,
            iterations: w.iterations,
            certify: report.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRowOut {
    pub sample: usize,
    pub eps: f64,
    pub success: bool,
    pub j_residual: Option<f64>,
    pub displacement: Option<f64>,
    pub iterations: usize,
    pub error: Option<String>,
}

impl From<&SampleRow> for SampleRowOut {
    fn from(r: &SampleRow) -> Self {
        SampleRowOut {
            sample: r.sample,
            eps: r.eps,
            success: r.success,
            j_residual: finite(r.j_residual),
            displacement: finite(r.displacement),
            iterations: r.iterations,
            error: r.error.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummaryOut {
    pub eps: f64,
    pub n: usize,
    pub success_rate: f64,
    pub median_residual: Option<f64>,
    pub median_displacement: Option<f64>,
}

impl From<&SampleSummary> for SampleSummaryOut {
    fn from(s: &SampleSummary) -> Self {
        SampleSummaryOut {
            eps: s.eps,
            n: s.n,
            success_rate: s.success_rate,
            median_residual: finite(s.median_residual),
            median_displacement: finite(s.median_displacement),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleTableOut {
    pub alpha: u8,
    pub lambda: usize,
    pub g: usize,
    pub k: usize,
    pub seed: u64,
    pub rows: Vec<SampleRowOut>,
    pub summary: Vec<SampleSummaryOut>,
}

impl From<&SampleTable> for SampleTableOut {
    fn from(t: &SampleTable) -> Self {
        SampleTableOut {
            alpha: t.alpha,
            lambda: t.lambda,
            g: t.g,
            k: t.k,
            seed: t.seed,
            rows: t.rows.iter().map(Into::into).collect(),
            summary: t.summary.iter().map(Into::into).collect(),
        }
    }
}
