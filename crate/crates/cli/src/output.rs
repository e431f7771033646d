//! Serialized records. Every number is rounded to 12 significant digits
//! just before printing.

use std::io::Write;

use ctregion::{ConvexPiece, HalfPlane, Point};
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                if let Some(r) = serde_json::Number::from_f64(sig12(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

pub fn print_json<S: Serialize>(record: &S) -> std::io::Result<()> {
    let mut v = serde_json::to_value(record)?;
    round_numbers(&mut v);
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &v)?;
    writeln!(out)
}

pub fn print_csv<S: Serialize>(rows: impl IntoIterator<Item = S>) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct HalfPlaneOut {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct VertexOut {
    pub label: String,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct PieceOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_region: Option<usize>,
    pub halfplanes: Vec<HalfPlaneOut>,
    pub vertices: Vec<VertexOut>,
}

impl PieceOut {
    pub fn new(sub_region: Option<usize>, piece: &ConvexPiece<f64>) -> Self {
        PieceOut {
            sub_region,
            halfplanes: piece
                .halfplanes
                .iter()
                .map(|&HalfPlane { a, b, c }| HalfPlaneOut { a, b, c })
                .collect(),
            vertices: piece
                .vertices
                .iter()
                .map(|v| VertexOut {
                    label: v.label.clone(),
                    d1: v.point.x,
                    d2: v.point.y,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct PairOut {
    pub d1: f64,
    pub d2: f64,
}

impl From<Point<f64>> for PairOut {
    fn from(p: Point<f64>) -> Self {
        PairOut { d1: p.x, d2: p.y }
    }
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct MinimaxOut {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct BboxOut {
    pub d1_max: f64,
    pub d2_max: f64,
}

#[derive(Serialize, Debug)]
pub struct RegionOut {
    pub schema_version: u32,
    pub case: &'static str,
    pub pieces: Vec<PieceOut>,
    pub outer_bound: PieceOut,
    pub minimax: MinimaxOut,
    pub bbox: BboxOut,
    /// Lower-left boundary of the region, clipped to `bbox`.
    pub boundary: Vec<PairOut>,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct SlacksOut {
    pub user1: f64,
    pub user2: f64,
    pub sum: f64,
}

#[derive(Serialize, Debug)]
pub struct CheckOut {
    pub schema_version: u32,
    pub d1: f64,
    pub d2: f64,
    pub member: bool,
    pub sub_region: usize,
    pub binding: &'static str,
    pub slacks: SlacksOut,
}

#[derive(Serialize, Debug)]
pub struct CheckRow {
    pub d1: f64,
    pub d2: f64,
    pub member: bool,
    pub binding: &'static str,
    pub slack_user1: f64,
    pub slack_user2: f64,
    pub slack_sum: f64,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct VerificationOut {
    pub oracle_value: f64,
    pub oracle_d1: f64,
    pub oracle_d2: f64,
    pub gap_bound: f64,
    pub grid: usize,
    pub bracketed: bool,
}

#[derive(Serialize, Debug)]
pub struct MinimizeOut {
    pub schema_version: u32,
    pub objective: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub case: &'static str,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub cell: String,
    pub tie: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationOut>,
}

#[derive(Serialize, Debug)]
pub struct MinimizeRow {
    pub objective: &'static str,
    pub weight: Option<f64>,
    pub case: &'static str,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub cell: String,
    pub tie: bool,
    pub oracle_value: Option<f64>,
    pub gap_bound: Option<f64>,
    pub bracketed: Option<bool>,
}

impl From<&MinimizeOut> for MinimizeRow {
    fn from(m: &MinimizeOut) -> Self {
        MinimizeRow {
            objective: m.objective,
            weight: m.weight,
            case: m.case,
            value: m.value,
            d1: m.d1,
            d2: m.d2,
            cell: m.cell.clone(),
            tie: m.tie,
            oracle_value: m.verification.map(|v| v.oracle_value),
            gap_bound: m.verification.map(|v| v.gap_bound),
            bracketed: m.verification.map(|v| v.bracketed),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct PhaseOut {
    pub duration: f64,
    pub r1: f64,
    pub r2: f64,
    pub active: Vec<usize>,
}

#[derive(Serialize, Debug)]
pub struct ScheduleOut {
    pub schema_version: u32,
    pub phases: Vec<PhaseOut>,
    pub achieved: PairOut,
    pub validation: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct PhaseRow {
    pub duration: f64,
    pub r1: f64,
    pub r2: f64,
    pub active: String,
}

impl From<&PhaseOut> for PhaseRow {
    fn from(p: &PhaseOut) -> Self {
        let active: Vec<String> = p.active.iter().map(|u| u.to_string()).collect();
        PhaseRow {
            duration: sig12(p.duration),
            r1: sig12(p.r1),
            r2: sig12(p.r2),
            active: active.join("+"),
        }
    }
}
