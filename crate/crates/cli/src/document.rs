//! JSON documents written by the commands. Field order is fixed by the
//! struct layouts and every coefficient is an exact fraction string, so equal
//! results serialize to identical bytes.

use equipart_core::engine::{Certificate, EquipartitionRecord, SearchStats};
use equipart_core::exact::rational::fraction_string;
use equipart_core::exact::{OrientedPlane, Point3, QuadExt};
use equipart_core::experiments::{ExperimentReport, TrialConfig};
use equipart_core::moment::{MomentParams, TailSurvey};
use serde::Serialize;

use crate::pointfile::points_digest;

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: "equipart",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub points: usize,
    pub n: usize,
    pub sha256: String,
}

impl InputEcho {
    pub fn new(points: &[Point3]) -> Self {
        InputEcho {
            points: points.len(),
            n: points.len() / 8,
            sha256: points_digest(points),
        }
    }
}

/// `[rational part, coefficient of √q]`.
pub type QuadPair = [String; 2];

fn quad_pair(e: &QuadExt) -> QuadPair {
    [fraction_string(e.rat_part()), fraction_string(e.rad_part())]
}

#[derive(Debug, Serialize)]
pub struct PlaneDoc {
    pub normal: [QuadPair; 3],
    pub offset: QuadPair,
}

impl PlaneDoc {
    fn new(h: &OrientedPlane) -> Self {
        let n = h.normal();
        PlaneDoc {
            normal: [quad_pair(&n.x), quad_pair(&n.y), quad_pair(&n.z)],
            offset: quad_pair(h.offset()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateDoc {
    pub case: &'static str,
    /// Point indices on `H1`, `H2`, `H3`.
    pub support: [Vec<usize>; 3],
    pub radicand: String,
    pub planes: [PlaneDoc; 3],
    /// Sign pattern (`+`/`-` per plane) of the closed region holding each part.
    pub regions: [String; 8],
}

pub fn region_string(label: u8) -> String {
    (0..3).map(|k| if label >> k & 1 == 1 { '-' } else { '+' }).collect()
}

impl CertificateDoc {
    fn new(c: &Certificate) -> Self {
        let planes = c.planes.planes();
        CertificateDoc {
            case: c.support.case().tag(),
            support: c.support.sets().clone(),
            radicand: fraction_string(c.planes.radicand()),
            planes: [
                PlaneDoc::new(&planes[0]),
                PlaneDoc::new(&planes[1]),
                PlaneDoc::new(&planes[2]),
            ],
            regions: c.regions.map(region_string),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EquipartitionDoc {
    pub parts: Vec<Vec<usize>>,
    pub certificates: Vec<CertificateDoc>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub wall_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub tool: Tool,
    pub input: InputEcho,
    pub mode: &'static str,
    pub equipartitions: Vec<EquipartitionDoc>,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ResultDocument {
    pub fn new(points: &[Point3], first_only: bool, records: &[EquipartitionRecord], stats: SearchStats) -> Self {
        ResultDocument {
            tool: TOOL,
            input: InputEcho::new(points),
            mode: if first_only { "first" } else { "all" },
            equipartitions: records
                .iter()
                .map(|r| EquipartitionDoc {
                    parts: r.partition.parts().to_vec(),
                    certificates: r.certificates.iter().map(CertificateDoc::new).collect(),
                })
                .collect(),
            stats,
            timing: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExperimentDocument {
    pub tool: Tool,
    pub config: TrialConfig,
    pub trials_run: u64,
    pub failures: u64,
    pub successes: u64,
    pub degeneracies: u64,
    /// Exact `failures/trials_run`.
    pub failure_rate: String,
    pub failure_rate_decimal: f64,
    pub wilson_95: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ExperimentDocument {
    pub fn new(r: &ExperimentReport, timing: bool) -> Self {
        let (lo, hi) = r.wilson_interval();
        ExperimentDocument {
            tool: TOOL,
            config: r.config,
            trials_run: r.trials_run,
            failures: r.failures,
            successes: r.successes(),
            degeneracies: r.degeneracies,
            failure_rate: format!("{}/{}", r.failures, r.trials_run),
            failure_rate_decimal: r.failure_rate(),
            wilson_95: [lo, hi],
            timing: timing.then_some(Timing {
                wall_ms: r.wall_time.as_millis(),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MomentDocument {
    pub tool: Tool,
    pub params: MomentParams,
    pub input: InputEcho,
    pub equipartitions: usize,
    pub tail: TailSurvey,
    pub verified: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_strings() {
        assert_eq!(region_string(0), "+++");
        assert_eq!(region_string(1), "-++");
        assert_eq!(region_string(6), "+--");
    }
}
