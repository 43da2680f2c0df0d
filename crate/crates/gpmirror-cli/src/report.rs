//! JSON report shapes, one per subcommand. Field order is fixed by the
//! struct declarations and all rationals are `"num/den"` strings, so a
//! report is byte-deterministic given the same inputs and version.

use gpmirror::formats::rat_to_string;
use gpmirror::gkz::GkzReport;
use gpmirror::linalg::{Int, Rat};
use gpmirror::mirrormap::IntegralityReport;
use gpmirror::subdivision::{
    McVerdict, RegularSubdivision, SmoothVerdict, TropicalVerdict, VolumeReport,
};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct PolytopeReport {
    pub command: String,
    pub version: String,
    pub vertices: Vec<Vec<i64>>,
    pub dual_vertices: Vec<Vec<i64>>,
    pub degrees: Vec<i64>,
    pub total_degree: i64,
    pub weights: Vec<i64>,
    pub num_boundary_points: usize,
    pub boundary_points: Vec<Vec<i64>>,
    pub relation_rank: usize,
    pub greene_plesser_invariant_factors: Vec<u64>,
    pub greene_plesser_order: u64,
}

#[derive(Debug, Serialize)]
pub struct MonoidReport {
    pub command: String,
    pub version: String,
    pub selector: String,
    pub order: String,
    pub lambda: Vec<String>,
    /// Per-point certified minimum of the grading over the unit section of
    /// `cone(K_p)`; strictly positive entries certify strong convexity.
    pub certificate: Vec<CertificateEntry>,
    pub count: usize,
    pub members: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct CertificateEntry {
    pub point: usize,
    pub section_minimum: String,
}

#[derive(Debug, Serialize)]
pub struct MirrorMapReport {
    pub command: String,
    pub version: String,
    pub order: String,
    pub gamma_sign: String,
    pub num_boundary_points: usize,
    pub relation_rank: usize,
    pub entries: Vec<IntegralityEntryJson>,
    pub all_integral: bool,
    pub integral: bool,
}

#[derive(Debug, Serialize)]
pub struct IntegralityEntryJson {
    pub u: Vec<i64>,
    pub integral: bool,
    pub offenders: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub exponent: Vec<i64>,
    pub coefficient: String,
}

#[derive(Debug, Serialize)]
pub struct HypersurfaceReport {
    pub command: String,
    pub version: String,
    pub n: usize,
    pub order: i64,
    pub power: i64,
    /// `F_i = (ni)!/(i!)^n` for `i = 0..=order`.
    pub f: Vec<String>,
    /// Coefficient of `T^i` of `phi`, indexed by `i`.
    pub phi_coefficients: Vec<String>,
    /// Coefficient of `T^i` of `q(T) = T * phi(T)^power`, indexed by `i`.
    pub q_coefficients: Vec<String>,
    pub integral: bool,
}

#[derive(Debug, Serialize)]
pub struct GkzReportJson {
    pub command: String,
    pub version: String,
    pub order: String,
    pub gamma_sign_selected: String,
    pub euler_convention: String,
    pub checks: Vec<GkzCheckJson>,
    pub all_pass: bool,
}

#[derive(Debug, Serialize)]
pub struct GkzCheckJson {
    pub name: String,
    pub pass: bool,
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SubdivisionReport {
    pub command: String,
    pub version: String,
    pub dim: usize,
    pub cells: Vec<CellJson>,
    pub total_volume: String,
    pub tropical: TropicalJson,
    /// Present only when a polytope file accompanies the heights.
    pub refinement: Option<RefinementJson>,
}

#[derive(Debug, Serialize)]
pub struct CellJson {
    pub tight: Vec<usize>,
    pub vertices: Vec<usize>,
    pub non_vertex_points: Vec<usize>,
    pub volume: String,
}

#[derive(Debug, Serialize)]
pub struct TropicalJson {
    pub verdict: String,
    pub reasons: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RefinementJson {
    pub verdict: String,
    pub witness: Option<String>,
    pub lcm: Option<LcmJson>,
}

#[derive(Debug, Serialize)]
pub struct LcmJson {
    pub normalization: String,
    pub cells: Vec<Vec<usize>>,
    pub raw_volumes: Vec<String>,
    pub normalized_volumes: Vec<String>,
    pub lcm_raw: String,
    pub lcm_normalized: String,
    pub lcm_prime_factors: Vec<PrimePower>,
}

#[derive(Debug, Serialize)]
pub struct PrimePower {
    pub prime: String,
    pub exponent: u32,
}

#[derive(Debug, Serialize)]
pub struct SmoothCheckReport {
    pub command: String,
    pub version: String,
    pub characteristic: u64,
    pub extension_degree: u32,
    pub field_size: u64,
    pub nvars: usize,
    pub verdict: String,
    pub witness: Option<Vec<u64>>,
}

pub fn int_to_string(n: &Int) -> String {
    n.to_string()
}

pub fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn integrality_entries(r: &IntegralityReport) -> Vec<IntegralityEntryJson> {
    r.entries
        .iter()
        .map(|e| IntegralityEntryJson {
            u: e.u.clone(),
            integral: e.integral,
            offenders: e
                .offenders
                .iter()
                .map(|(u, c)| TermJson {
                    exponent: u.clone(),
                    coefficient: rat_to_string(c),
                })
                .collect(),
        })
        .collect()
}

pub fn gkz_checks(r: &GkzReport) -> Vec<GkzCheckJson> {
    r.checks
        .iter()
        .map(|c| GkzCheckJson {
            name: c.name.clone(),
            pass: c.pass,
            first_failure: c.first_failure.clone(),
        })
        .collect()
}

pub fn cells_json(sub: &RegularSubdivision) -> Vec<CellJson> {
    sub.cells
        .iter()
        .map(|c| CellJson {
            tight: c.tight.clone(),
            vertices: c.vertices.clone(),
            non_vertex_points: c.non_vertex_points.clone(),
            volume: c.volume.to_string(),
        })
        .collect()
}

pub fn tropical_json(v: &TropicalVerdict) -> TropicalJson {
    match v {
        TropicalVerdict::Smooth => TropicalJson {
            verdict: "smooth".to_string(),
            reasons: Vec::new(),
        },
        TropicalVerdict::Inconclusive(reasons) => TropicalJson {
            verdict: "inconclusive".to_string(),
            reasons: reasons.clone(),
        },
    }
}

pub fn refinement_verdict(v: &McVerdict) -> (String, Option<String>) {
    match v {
        McVerdict::Mpcs => ("mpcs".to_string(), None),
        McVerdict::MpcpOnly { witness } => ("mpcp-only".to_string(), Some(witness.clone())),
        McVerdict::Neither { witness } => ("neither".to_string(), Some(witness.clone())),
    }
}

pub fn lcm_json(r: &VolumeReport, normalization: &str) -> LcmJson {
    LcmJson {
        normalization: normalization.to_string(),
        cells: r.cells.clone(),
        raw_volumes: r.raw_volumes.iter().map(int_to_string).collect(),
        normalized_volumes: r.normalized_volumes.iter().map(int_to_string).collect(),
        lcm_raw: r.lcm_raw.to_string(),
        lcm_normalized: r.lcm_normalized.to_string(),
        lcm_prime_factors: r
            .lcm_prime_factors
            .iter()
            .map(|(p, e)| PrimePower {
                prime: p.to_string(),
                exponent: *e,
            })
            .collect(),
    }
}

pub fn smooth_verdict(v: &SmoothVerdict) -> (String, Option<Vec<u64>>) {
    match v {
        SmoothVerdict::Smooth => ("smooth".to_string(), None),
        SmoothVerdict::Singular { witness } => ("singular".to_string(), Some(witness.clone())),
    }
}
