//! Text emission shared by the CLI: `%g`-style number formatting, CSV
//! documents with a `#` metadata preamble, and sampled grid fields.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, VERSION};

/// C-style `%.{sig}g`: `sig` significant digits, trailing zeros removed,
/// exponent form outside `1e-4 ≤ |v| < 10^sig`.
pub fn format_g(v: f64, sig: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Round-trip-safe 17-digit rendering used in every emitted file.
pub fn fmt17(v: f64) -> String {
    format_g(v, 17)
}

/// A CSV document: `#` preamble (library version first), one header row,
/// numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvDoc {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvDoc {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            meta: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::Index(format!(
                "row has {} fields, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = format!("# gzernike {VERSION}\n");
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt17(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Complex samples on a Cartesian product of axes, row-major (last axis
/// fastest), with free-form provenance metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub version: String,
    pub axes: Vec<Vec<f64>>,
    pub values: Vec<Complex64>,
    pub metadata: serde_json::Value,
}

impl GridField {
    pub fn new(
        axes: Vec<Vec<f64>>,
        values: Vec<Complex64>,
        metadata: serde_json::Value,
    ) -> Result<Self> {
        let count: usize = axes.iter().map(Vec::len).product();
        if axes.is_empty() || count != values.len() {
            return Err(Error::Index(format!(
                "grid of {} points holds {} values",
                count,
                values.len()
            )));
        }
        Ok(Self {
            version: VERSION.to_string(),
            axes,
            values,
            metadata,
        })
    }

    /// Coordinates of every grid point in storage order.
    pub fn points(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let mut pts = vec![Vec::new()];
        for axis in axes {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        pts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid field serializes")
    }

    /// One row per point: coordinates, real part, imaginary part.
    pub fn to_csv(&self) -> String {
        let names = ["x", "y", "z"];
        let mut header: Vec<String> = (0..self.axes.len())
            .map(|i| names.get(i).map_or(format!("x{i}"), |s| s.to_string()))
            .collect();
        header.push("re".into());
        header.push("im".into());
        let mut doc = CsvDoc::new(header);
        doc.meta("metadata", self.metadata.to_string());
        for (p, v) in Self::points(&self.axes).into_iter().zip(&self.values) {
            let mut row = p;
            row.push(v.re);
            row.push(v.im);
            doc.rows.push(row);
        }
        doc.render()
    }
}
