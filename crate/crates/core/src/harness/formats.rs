//! JSON file formats. Every number that feeds back into a computation is
//! written as an exact rational string (`"p/q"` or an integer).

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Complex, Rational, Scalar, ScalarMode};
use crate::error::{Error, Result};
use crate::geometry::{Halfspace, Polytope};
use crate::matching::{DirectionFrame, ReconstructionReport};
use crate::moments::{Direction, MomentRecord};
use crate::recovery::{Method, RecoveryDiagnostics, VertexCount};

const POLYTOPE_FORMAT: &str = "polyrecon-polytope/1";
const MOMENTS_FORMAT: &str = "polyrecon-moments/1";
const REPORT_FORMAT: &str = "polyrecon-report/1";

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn check_format(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "expected format {want:?}, found {found:?}"
        )))
    }
}

#[derive(Serialize, Deserialize)]
struct FacetEntry {
    normal: Vec<String>,
    offset: String,
}

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    format: String,
    dim: usize,
    vertices: Vec<Vec<String>>,
    #[serde(default)]
    facets: Vec<FacetEntry>,
}

pub fn polytope_to_json(p: &Polytope) -> String {
    let file = PolytopeFile {
        format: POLYTOPE_FORMAT.into(),
        dim: p.dim(),
        vertices: p.vertices().iter().map(|v| strings(v)).collect(),
        facets: p
            .facets()
            .iter()
            .map(|h| FacetEntry {
                normal: strings(&h.normal),
                offset: format_rational(&h.offset),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Facets are optional; without them the hull of the vertices is used.
pub fn polytope_from_json(s: &str) -> Result<Polytope> {
    let file: PolytopeFile = serde_json::from_str(s)?;
    check_format(&file.format, POLYTOPE_FORMAT)?;
    let vertices = file
        .vertices
        .iter()
        .map(|v| parse_all(v))
        .collect::<Result<Vec<_>>>()?;
    if file.facets.is_empty() {
        return Polytope::from_vertices(file.dim, vertices);
    }
    let facets = file
        .facets
        .iter()
        .map(|f| Halfspace::new(parse_all(&f.normal)?, parse_rational(&f.offset)?))
        .collect::<Result<Vec<_>>>()?;
    Polytope::from_vertices_and_facets(file.dim, vertices, facets)
}

#[derive(Serialize, Deserialize)]
struct RecordEntry {
    z_re: Vec<String>,
    z_im: Option<Vec<String>>,
    mode: ScalarMode,
    /// `[re, im]` per moment.
    values: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct MomentsFile {
    format: String,
    dim: usize,
    records: Vec<RecordEntry>,
}

pub fn moments_to_json(records: &[MomentRecord]) -> String {
    let file = MomentsFile {
        format: MOMENTS_FORMAT.into(),
        dim: records.first().map_or(0, |r| r.direction.dim()),
        records: records
            .iter()
            .map(|r| RecordEntry {
                z_re: strings(r.direction.re()),
                z_im: r.direction.im().map(strings),
                mode: r.mode,
                values: r
                    .values
                    .iter()
                    .map(|c| [format_rational(&c.re), format_rational(&c.im)])
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

pub fn moments_from_json(s: &str) -> Result<Vec<MomentRecord>> {
    let file: MomentsFile = serde_json::from_str(s)?;
    check_format(&file.format, MOMENTS_FORMAT)?;
    file.records
        .into_iter()
        .map(|r| {
            let re = parse_all(&r.z_re)?;
            let direction = match r.z_im {
                Some(im) => Direction::complex(re, parse_all(&im)?)?,
                None => Direction::real(re)?,
            };
            if direction.dim() != file.dim {
                return Err(Error::SizeMismatch(file.dim, direction.dim()));
            }
            let values = r
                .values
                .iter()
                .map(|[a, b]| Ok(Complex::new(parse_rational(a)?, parse_rational(b)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(MomentRecord {
                direction,
                mode: r.mode,
                values,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneEntry {
    pub z_re: Vec<String>,
    pub z_j: Vec<String>,
    pub diagnostics: RecoveryDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttemptEntry {
    pub z_re: Vec<String>,
    pub z_others: Vec<Vec<String>>,
    pub error: Option<String>,
}

/// On-disk reconstruction report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub mode: ScalarMode,
    pub method: Method,
    pub count: VertexCount,
    pub seed: u64,
    pub estimated_n: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    /// Decimal approximations of `vertices`, for reading only.
    pub vertices_approx: Vec<Vec<f64>>,
    pub moments_per_plane: usize,
    pub planes: Vec<PlaneEntry>,
    pub attempts: Vec<AttemptEntry>,
    /// Vertex-set distance to a ground truth, when one was given.
    pub distance: Option<f64>,
}

impl ReportFile {
    pub fn new(r: &ReconstructionReport, distance: Option<f64>) -> Self {
        let frame_entry = |f: &DirectionFrame, error: Option<String>| AttemptEntry {
            z_re: strings(&f.z_re),
            z_others: f.z_others.iter().map(|z| strings(z)).collect(),
            error,
        };
        ReportFile {
            format: REPORT_FORMAT.into(),
            mode: r.mode,
            method: r.method,
            count: r.count,
            seed: r.seed,
            estimated_n: r.estimated_n,
            dim: r.frame().dim(),
            vertices: r.vertices.iter().map(|v| strings(v)).collect(),
            vertices_approx: r
                .vertices
                .iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect(),
            moments_per_plane: r.moments_per_plane,
            planes: r
                .planes
                .iter()
                .map(|p| PlaneEntry {
                    z_re: strings(&p.z_re),
                    z_j: strings(&p.z_j),
                    diagnostics: p.diagnostics.clone(),
                })
                .collect(),
            attempts: r
                .attempts
                .iter()
                .map(|a| frame_entry(&a.frame, a.error.clone()))
                .collect(),
            distance,
        }
    }

    pub fn vertices(&self) -> Result<Vec<Vec<Rational>>> {
        self.vertices.iter().map(|v| parse_all(v)).collect()
    }
}

pub fn report_to_json(r: &ReportFile) -> String {
    serde_json::to_string_pretty(r).expect("plain data serializes")
}

pub fn report_from_json(s: &str) -> Result<ReportFile> {
    let r: ReportFile = serde_json::from_str(s)?;
    check_format(&r.format, REPORT_FORMAT)?;
    Ok(r)
}
