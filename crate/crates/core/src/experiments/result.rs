use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FrameTag, Integrator};
use crate::plan::FrequencyPlan;

/// Value of one grid coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValue {
    Int(i64),
    Real(f64),
}

impl AxisValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Self::Int(v) => v as f64,
            Self::Real(v) => v,
        }
    }
}

impl fmt::Display for AxisValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(v) => write!(f, "{v}"),
            Self::Real(v) => f.write_str(&format_real(*v)),
        }
    }
}

/// 17 significant digits, `.` decimal separator.
pub fn format_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub coords: Vec<AxisValue>,
    /// Infidelity per qubit, ordered as [`SweepResult::qubits`]; `None` where the point failed.
    pub per_qubit: Vec<Option<f64>>,
    pub mean_infidelity: Option<f64>,
    pub max_unitarity_error: f64,
    pub error: Option<String>,
}

/// Settings shared by every row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub experiment: String,
    pub base_plan: FrequencyPlan,
    pub phi: f64,
    pub frame: FrameTag,
    pub integrator: Integrator,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub axes: Vec<String>,
    pub qubits: Vec<i64>,
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn axis_index(&self, axis: &str) -> Option<usize> {
        self.axes.iter().position(|a| a == axis)
    }

    pub fn qubit_column(k_q: i64) -> String {
        format!("k_q={k_q}")
    }

    pub fn to_table(&self) -> Table {
        let mut header = self.axes.clone();
        header.extend(self.qubits.iter().map(|&k| Self::qubit_column(k)));
        header.extend(["mean_infidelity", "max_unitarity_error", "errors"].map(String::from));
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut cells: Vec<Cell> = r.coords.iter().map(|&c| Cell::Axis(c)).collect();
                cells.extend(r.per_qubit.iter().map(|v| Cell::from(*v)));
                cells.push(Cell::from(r.mean_infidelity));
                cells.push(Cell::Real(r.max_unitarity_error));
                cells.push(r.error.clone().map_or(Cell::Empty, Cell::Text));
                cells
            })
            .collect();
        Table {
            name: self.name.clone(),
            header,
            rows,
        }
    }
}

/// A CSV-ready table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Axis(AxisValue),
    Real(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Real)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Axis(a) => a.fmt(f),
            Self::Real(v) => f.write_str(&format_real(*v)),
            Self::Int(v) => write!(f, "{v}"),
            Self::Text(s) => f.write_str(s),
            Self::Empty => Ok(()),
        }
    }
}
