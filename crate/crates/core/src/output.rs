//! Tables of center classes rendered as markdown, CSV, or JSON.
//!
//! Every cell is exact: CSV and markdown print polynomials such as
//! `a/2 - a^3/2`, and JSON stores each coordinate as its list of `num/den`
//! coefficient strings, so [`OutputDocument::from_json`] recovers the classes
//! bit for bit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::CenterClass;
use crate::param_poly::ParamPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = OutputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(OutputError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Markdown => "markdown",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("unknown format {0:?} (expected markdown, csv or json)")]
    UnknownFormat(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `omega0, omega1, ...`
pub fn basis_symbol(i: usize) -> String {
    format!("omega{i}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRow {
    pub label: String,
    pub class: CenterClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputDocument {
    pub title: String,
    pub dimension: usize,
    pub rows: Vec<OutputRow>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    label: String,
    coords: BTreeMap<String, ParamPoly>,
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    title: String,
    basis: Vec<String>,
    rows: Vec<JsonRow>,
}

impl OutputDocument {
    pub fn new(title: impl Into<String>, dimension: usize) -> Self {
        Self {
            title: title.into(),
            dimension,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, class: CenterClass) {
        assert_eq!(class.dimension(), self.dimension, "row dimension");
        self.rows.push(OutputRow {
            label: label.into(),
            class,
        });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n|  |", self.title);
        for i in 0..self.dimension {
            out.push_str(&format!(" ω{i} |"));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(self.dimension));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("| {} |", row.label));
            for c in row.class.coords() {
                out.push_str(&format!(" {c} |"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header =
            std::iter::once("label".to_string()).chain((0..self.dimension).map(basis_symbol));
        w.write_record(header).expect("in-memory write");
        for row in &self.rows {
            let cells = std::iter::once(row.label.clone())
                .chain(row.class.coords().iter().map(|c| c.to_string()));
            w.write_record(cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDocument {
            title: self.title.clone(),
            basis: (0..self.dimension).map(basis_symbol).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    label: r.label.clone(),
                    coords: r
                        .class
                        .coords()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| (basis_symbol(i), c.clone()))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, OutputError> {
        let doc: JsonDocument = serde_json::from_str(s)?;
        let dimension = doc.basis.len();
        let rows = doc
            .rows
            .into_iter()
            .map(|mut r| {
                let coords = doc
                    .basis
                    .iter()
                    .map(|sym| {
                        r.coords.remove(sym).ok_or_else(|| {
                            OutputError::Malformed(format!("row {:?} lacks {sym}", r.label))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(extra) = r.coords.keys().next() {
                    return Err(OutputError::Malformed(format!("unknown basis symbol {extra}")));
                }
                Ok(OutputRow {
                    label: r.label,
                    class: CenterClass::from_coords(coords),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            title: doc.title,
            dimension,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::Center;
    use crate::cocycle::{psi_basis, DerivationBasisElement as B};

    fn sample() -> OutputDocument {
        let q = Center::quadratic();
        let mut doc = OutputDocument::new("psi(e_r, f_s)", 3);
        for (r, s) in [(1, 1), (2, -2), (1, -1)] {
            doc.push(format!("e{r}, f{s}"), psi_basis(&q, B::e(r), B::f(s)));
        }
        doc
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        assert_eq!(OutputDocument::from_json(&doc.to_json()).unwrap(), doc);
        assert!(doc.to_json().contains("\"-1/2\""));
    }

    #[test]
    fn markdown_and_csv_cells() {
        let doc = sample();
        let md = doc.to_markdown();
        assert!(md.contains("| e1, f1 | 0 | 0 | a/2 - a^3/2 |"), "{md}");
        let csv = doc.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("label,omega0,omega1,omega2"));
        assert_eq!(lines.next(), Some("\"e1, f1\",0,0,a/2 - a^3/2"));
        assert_eq!(lines.next(), Some("\"e2, f-2\",0,8 + 6*a^2,-14*a"));
    }

    #[test]
    fn malformed_json() {
        let bad = r#"{"title":"t","basis":["omega0"],"rows":[{"label":"r","coords":{}}]}"#;
        assert!(matches!(OutputDocument::from_json(bad), Err(OutputError::Malformed(_))));
        assert!(OutputDocument::from_json("nope").is_err());
        assert!("yaml".parse::<Format>().is_err());
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
    }
}
