//! Chart documents.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "u_grid": [..], "v_grid": [..],
//!   "F": [[..], ..], "H": [[..], ..],        // row index = v, column index = u
//!   "u0_index": 0, "v0_index": 0, "eps1": 1, "eps2": -1,
//!   "L": .., "M": .., "N": .., "K": ..,      // optional
//!   "canonical": false, "metadata": {..}     // optional
//! }
//! ```
//!
//! Numbers are written in shortest round-trip form and parsed exactly, so a
//! write-then-read cycle reproduces every value bit for bit.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid, Sign};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    pub schema_version: u32,
    pub u_grid: Vec<f64>,
    pub v_grid: Vec<f64>,
    pub F: Vec<Vec<f64>>,
    pub H: Vec<Vec<f64>>,
    pub u0_index: usize,
    pub v0_index: usize,
    pub eps1: i32,
    pub eps2: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub L: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub M: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub N: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub K: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub canonical: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl ChartFile {
    pub fn from_chart(chart: &Chart, metadata: BTreeMap<String, serde_json::Value>) -> Self {
        let rows = |f: &Field| f.rows();
        Self {
            schema_version: SCHEMA_VERSION,
            u_grid: chart.grid.u.clone(),
            v_grid: chart.grid.v.clone(),
            F: rows(&chart.f),
            H: rows(&chart.h),
            u0_index: chart.u0_index,
            v0_index: chart.v0_index,
            eps1: chart.eps1.into(),
            eps2: chart.eps2.into(),
            L: chart.l.as_ref().map(rows),
            M: chart.m.as_ref().map(rows),
            N: chart.n.as_ref().map(rows),
            K: chart.k.as_ref().map(rows),
            canonical: chart.canonical,
            metadata,
        }
    }

    pub fn into_chart(self) -> Result<Chart> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema_version {}", self.schema_version)));
        }
        let grid = Grid::new(self.u_grid, self.v_grid).map_err(|e| Error::Format(e.to_string()))?;
        let shape = (grid.nv(), grid.nu());
        let field = |name: &str, rows: Vec<Vec<f64>>| -> Result<Field> {
            if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
                return Err(Error::Format(format!(
                    "{name} must be {} rows of {} values (|v_grid| x |u_grid|)",
                    shape.0, shape.1
                )));
            }
            Field::from_rows(&rows)
        };
        let sign = |name: &str, e: i32| {
            Sign::try_from(e).map_err(|_| Error::Format(format!("{name} must be 1 or -1, got {e}")))
        };
        let f = field("F", self.F)?;
        let h = field("H", self.H)?;
        let eps = (sign("eps1", self.eps1)?, sign("eps2", self.eps2)?);
        if self.u0_index >= grid.nu() || self.v0_index >= grid.nv() {
            return Err(Error::Format(format!(
                "base indices ({}, {}) outside the {} x {} grid",
                self.u0_index,
                self.v0_index,
                grid.nu(),
                grid.nv()
            )));
        }
        let mut chart = Chart::new(grid, f, h, (self.u0_index, self.v0_index), eps)?;
        chart.l = self.L.map(|r| field("L", r)).transpose()?;
        chart.m = self.M.map(|r| field("M", r)).transpose()?;
        chart.n = self.N.map(|r| field("N", r)).transpose()?;
        chart.k = self.K.map(|r| field("K", r)).transpose()?;
        chart.canonical = self.canonical;
        chart.validate()?;
        Ok(chart)
    }
}

pub fn chart_to_string(chart: &Chart, metadata: BTreeMap<String, serde_json::Value>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ChartFile::from_chart(chart, metadata))?)
}

pub fn chart_from_str(text: &str) -> Result<Chart> {
    let file: ChartFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_chart()
}

pub fn read_chart(path: &Path) -> Result<Chart> {
    chart_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_chart(path: &Path, chart: &Chart, metadata: BTreeMap<String, serde_json::Value>) -> Result<()> {
    let mut text = chart_to_string(chart, metadata)?;
    text.push('\n');
    super::write_atomic(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::numerics::linspace;

    #[test]
    fn round_trip_is_bit_exact() {
        let c = corpus::reference_chart("hyperbolic_cone", linspace(-1.0, 1.0, 7), linspace(-1.0, 1.0, 9), 0.0, 0.0)
            .unwrap();
        let back = chart_from_str(&chart_to_string(&c, BTreeMap::new()).unwrap()).unwrap();
        assert_eq!(back, c);
        for (a, b) in back.f.values().iter().zip(c.f.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let c = corpus::reference_chart("cylinder", linspace(0.0, 1.0, 3), linspace(0.0, 1.0, 3), 0.0, 0.0).unwrap();
        let mut doc = ChartFile::from_chart(&c, BTreeMap::new());
        doc.eps1 = 0;
        assert!(matches!(doc.clone().into_chart(), Err(Error::Format(_))));
        doc.eps1 = 1;
        doc.F[1][2] = -1.0;
        let err = doc.clone().into_chart().unwrap_err();
        assert!(err.to_string().contains("node (2, 1)"), "{err}");
        doc.F[1].pop();
        assert!(matches!(doc.into_chart(), Err(Error::Format(_))));
        assert!(matches!(chart_from_str("{\"schema_version\": 1}"), Err(Error::Format(_))));
    }
}
