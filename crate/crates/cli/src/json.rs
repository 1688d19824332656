//! JSON data-transfer types for configurations, polygons, verdicts,
//! search reports, cells, censuses and classification results.

use ahg_core::classifier::{
    AlgebraicClass, ClassificationResult, EmptinessEvidence, InterlacingCell, Outcome,
    ReductionCertificate, SearchReport,
};
use ahg_core::exact_math::{parse_rational, Rational};
use ahg_core::hypergeo::{FamilyVerdict, ParamVector, Verdict};
use ahg_core::polytope::Triangulation;
use ahg_core::{LatticePolygon, PointConfig};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigDto {
    pub r: usize,
    pub points: Vec<Vec<i64>>,
}

pub fn config_from_json(text: &str) -> Result<PointConfig> {
    let dto: ConfigDto = serde_json::from_str(text).context("parsing configuration JSON")?;
    PointConfig::new(dto.r, dto.points).map_err(|e| anyhow!("invalid configuration: {e}"))
}

pub fn config_to_dto(cfg: &PointConfig) -> ConfigDto {
    ConfigDto {
        r: cfg.dim(),
        points: cfg.points().to_vec(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolygonDto {
    pub vertices: Vec<[i64; 2]>,
}

pub fn polygon_to_dto(p: &LatticePolygon) -> PolygonDto {
    PolygonDto {
        vertices: p.vertices().to_vec(),
    }
}

/// "1/3,2/3,1/2" -> rational coordinates.
pub fn parse_beta(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|part| parse_rational(part).map_err(|e| anyhow!("{e}")))
        .collect()
}

pub fn beta_strings(beta: &ParamVector) -> Vec<String> {
    beta.coords().iter().map(|c| c.to_string()).collect()
}

#[derive(Debug, Serialize)]
pub struct VerdictDto {
    pub status: String,
    pub volume: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signatures: Option<std::collections::BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_sigma: Option<usize>,
}

pub fn verdict_to_dto(v: &Verdict) -> VerdictDto {
    match v {
        Verdict::Resonant => VerdictDto {
            status: "resonant".into(),
            volume: 0,
            signatures: None,
            witness_k: None,
            witness_sigma: None,
        },
        Verdict::Transcendental {
            witness_k,
            witness_sigma,
            volume,
        } => VerdictDto {
            status: "transcendental".into(),
            volume: *volume,
            signatures: None,
            witness_k: Some(*witness_k),
            witness_sigma: Some(*witness_sigma),
        },
        Verdict::Algebraic { signatures, volume } => VerdictDto {
            status: "algebraic".into(),
            volume: *volume,
            signatures: Some(
                signatures
                    .iter()
                    .map(|(k, s)| (k.to_string(), *s))
                    .collect(),
            ),
            witness_k: None,
            witness_sigma: None,
        },
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyDto {
    pub base: Vec<String>,
    pub dir: Vec<i64>,
    pub excluded: Vec<String>,
    pub sigma: usize,
    pub algebraic: bool,
}

pub fn family_to_dto(f: &FamilyVerdict) -> FamilyDto {
    FamilyDto {
        base: beta_strings(f.pattern.base()),
        dir: f.pattern.dir().to_vec(),
        excluded: f.excluded.iter().map(|x| x.to_string()).collect(),
        sigma: f
            .lines
            .first()
            .and_then(|l| l.arcs.first())
            .map_or(0, |a| a.sigma),
        algebraic: f.algebraic,
    }
}

#[derive(Debug, Serialize)]
pub struct IsolatedDto {
    pub beta: Vec<String>,
    pub signatures: Vec<(i64, usize)>,
}

fn isolated_to_dto(c: &AlgebraicClass) -> IsolatedDto {
    IsolatedDto {
        beta: beta_strings(&c.rep),
        signatures: c.signatures.clone(),
    }
}

#[derive(Debug, Serialize)]
pub struct SearchReportDto {
    pub dmax: i64,
    pub volume: i64,
    pub families: Vec<FamilyDto>,
    pub isolated: Vec<IsolatedDto>,
    pub eliminated: EliminatedDto,
    pub classes_checked: u64,
    pub all_nonresonant_algebraic: bool,
}

#[derive(Debug, Serialize)]
pub struct EliminatedDto {
    pub resonant: u64,
    pub signature_deficit: u64,
}

pub fn report_to_dto(r: &SearchReport) -> SearchReportDto {
    SearchReportDto {
        dmax: r.dmax,
        volume: r.volume,
        families: r.families.iter().map(family_to_dto).collect(),
        isolated: r.isolated.iter().map(isolated_to_dto).collect(),
        eliminated: EliminatedDto {
            resonant: r.resonant_classes,
            signature_deficit: r.transcendental_classes,
        },
        classes_checked: r.classes_checked,
        all_nonresonant_algebraic: r.all_nonresonant_algebraic,
    }
}

pub fn report_to_csv(r: &SearchReport) -> String {
    let mut out = String::from("kind,beta_or_base,dir,excluded,sigma\n");
    for f in &r.families {
        out.push_str(&format!(
            "family,\"{}\",\"{:?}\",\"{}\",{}\n",
            beta_strings(f.pattern.base()).join(","),
            f.pattern.dir(),
            f.excluded
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            f.lines.first().and_then(|l| l.arcs.first()).map_or(0, |a| a.sigma),
        ));
    }
    for c in &r.isolated {
        out.push_str(&format!(
            "isolated,\"{}\",,,{}\n",
            beta_strings(&c.rep).join(","),
            c.signatures.first().map_or(0, |s| s.1),
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ApexDto {
    pub beta: Vec<String>,
    pub apex_points: Vec<Vec<String>>,
    pub signature: usize,
    pub volume: i64,
    /// Full conjugacy-orbit verdict (absent for pyramidal input, where the
    /// algebraicity test does not apply).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDto>,
}

#[derive(Debug, Serialize)]
pub struct CellDto {
    pub floors: Vec<i64>,
    pub sample: Vec<String>,
    pub sigma: usize,
}

pub fn cell_to_dto(c: &InterlacingCell) -> CellDto {
    CellDto {
        floors: c.floors.clone(),
        sample: beta_strings(&c.sample),
        sigma: c.sigma,
    }
}

#[derive(Debug, Serialize)]
pub struct TriangulationDto {
    pub cells: Vec<Vec<usize>>,
}

pub fn triangulation_to_dto(t: &Triangulation) -> TriangulationDto {
    TriangulationDto {
        cells: t.cells.clone(),
    }
}

#[derive(Debug, Serialize)]
pub struct ReductionDto {
    pub library_name: String,
    pub sub_points: Vec<usize>,
    pub witness_linear: [[i64; 2]; 2],
    pub witness_translation: [i64; 2],
    pub sub_triangulation: TriangulationDto,
    pub extended_triangulation: TriangulationDto,
}

fn reduction_to_dto(c: &ReductionCertificate) -> ReductionDto {
    ReductionDto {
        library_name: c.library_name.clone(),
        sub_points: c.sub_points.clone(),
        witness_linear: c.witness.lin,
        witness_translation: c.witness.t,
        sub_triangulation: triangulation_to_dto(&c.sub_triangulation),
        extended_triangulation: triangulation_to_dto(&c.extended_triangulation),
    }
}

#[derive(Debug, Serialize)]
pub struct ClassificationDto {
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon_type: Option<(usize, usize)>,
    pub volume: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<EvidenceDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SearchReportDto>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceDto {
    CellCensus { cells: usize, max_sigma: usize },
    Reduction(ReductionDto),
    BoundedSearch { dmax: i64 },
}

pub fn classification_to_dto(r: &ClassificationResult) -> ClassificationDto {
    let (outcome, family, isolated) = match &r.outcome {
        Outcome::Pyramid => ("pyramid".to_string(), None, None),
        Outcome::NoAlgebraicBeta => ("no_algebraic_beta".to_string(), None, None),
        Outcome::AlgebraicViaFamily(f) => {
            ("algebraic_via_family".to_string(), Some(f.clone()), None)
        }
        Outcome::AlgebraicIsolated(sols) => (
            "algebraic_isolated".to_string(),
            None,
            Some(sols.iter().map(beta_strings).collect()),
        ),
    };
    ClassificationDto {
        outcome,
        family,
        isolated,
        matched_name: r.matched_name.clone(),
        polygon_type: r.polygon_type,
        volume: r.volume,
        evidence: r.emptiness.as_ref().map(|e| match e {
            EmptinessEvidence::CellCensus { cells, max_sigma } => EvidenceDto::CellCensus {
                cells: *cells,
                max_sigma: *max_sigma,
            },
            EmptinessEvidence::Reduction(c) => EvidenceDto::Reduction(reduction_to_dto(c)),
            EmptinessEvidence::BoundedSearch { dmax } => {
                EvidenceDto::BoundedSearch { dmax: *dmax }
            }
        }),
        report: r.report.as_ref().map(report_to_dto),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CensusDto {
    #[serde(rename = "type")]
    pub polygon_type: [usize; 2],
    pub count: usize,
    pub classes: Vec<PolygonDto>,
}

pub fn census_to_dto(i: usize, b: usize, classes: &[LatticePolygon]) -> CensusDto {
    CensusDto {
        polygon_type: [i, b],
        count: classes.len(),
        classes: classes.iter().map(polygon_to_dto).collect(),
    }
}

/// Parse a parameter vector of the configured dimension.
pub fn parse_param(s: &str, dim: usize) -> Result<ParamVector> {
    let coords = parse_beta(s)?;
    if coords.len() != dim {
        bail!("expected {dim} coordinates, got {}", coords.len());
    }
    ParamVector::new(&coords).map_err(|e| anyhow!("{e}"))
}
