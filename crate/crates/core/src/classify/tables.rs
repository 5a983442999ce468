use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::reduction::{classify_complex, classify_even, classify_real, ReductionChain};
use super::types::MatrixAlgebraType;
use crate::clifford::{orientation_square_sign, Signature};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Columns `C(n,0)`, `C(0,n)`, `C₀(n,0)`.
    Euclidean,
    /// Columns `C(n−1,1)`, `C(1,n−1)`, `C₀(n−1,1)`.
    Hyperbolic,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Family::Euclidean),
            "hyperbolic" => Ok(Family::Hyperbolic),
            _ => Err(Error::Parse(format!("unknown table family {s:?}"))),
        }
    }
}

impl Family {
    fn signatures(self, n: u32) -> Result<(Signature, Signature)> {
        match self {
            Family::Euclidean => Ok((Signature::new(n, 0)?, Signature::new(0, n)?)),
            Family::Hyperbolic => {
                if n == 0 {
                    return Err(Error::Undefined("the hyperbolic family needs n ≥ 1".into()));
                }
                Ok((Signature::new(n - 1, 1)?, Signature::new(1, n - 1)?))
            }
        }
    }

    fn headers(self) -> [&'static str; 6] {
        match self {
            Family::Euclidean => ["n", "C^ℂ", "C(n,0)", "C(0,n)", "C₀(n,0)", "θ"],
            Family::Hyperbolic => ["n", "C^ℂ", "C(n−1,1)", "C(1,n−1)", "C₀(n−1,1)", "θ"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

/// A classified signature in the external JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub p: u32,
    pub q: u32,
    #[serde(rename = "type")]
    pub ty: MatrixAlgebraType,
    pub chain: ReductionChain,
}

impl ClassificationJson {
    pub fn new(sig: Signature) -> Self {
        let (ty, chain) = classify_real(sig);
        Self {
            p: sig.p(),
            q: sig.q(),
            ty,
            chain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub complex: MatrixAlgebraType,
    pub first: ClassificationJson,
    pub second: ClassificationJson,
    /// Even part of the first column's algebra.
    pub even: MatrixAlgebraType,
    /// `"ε"` or `"iε"` for even `n`.
    pub theta: Option<String>,
}

impl TableRow {
    fn cells(&self) -> [String; 6] {
        [
            self.n.to_string(),
            self.complex.cell(),
            self.first.ty.cell(),
            self.second.ty.cell(),
            self.even.cell(),
            self.theta.clone().unwrap_or_default(),
        ]
    }
}

pub fn build_table(family: Family, min: u32, max: u32) -> Result<Vec<TableRow>> {
    if min < 1 || min > max {
        return Err(Error::Undefined(format!(
            "table range {min}..={max} must satisfy 1 ≤ min ≤ max"
        )));
    }
    (min..=max)
        .map(|n| {
            let (a, b) = family.signatures(n)?;
            let theta = (n % 2 == 0).then(|| {
                if orientation_square_sign(a) > 0 { "ε" } else { "iε" }.to_string()
            });
            Ok(TableRow {
                n,
                complex: classify_complex(n)?,
                first: ClassificationJson::new(a),
                second: ClassificationJson::new(b),
                even: classify_even(a)?,
                theta,
            })
        })
        .collect()
}

pub fn render_table(family: Family, rows: &[TableRow], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Markdown => {
            let mut out = String::new();
            let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
            let headers: Vec<String> = family.headers().iter().map(|s| s.to_string()).collect();
            out.push_str(&line(&headers));
            writeln!(out, "|{}", "---|".repeat(headers.len())).expect("string write");
            for row in rows {
                out.push_str(&line(&row.cells()));
            }
            Ok(out)
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(family.headers()).map_err(csv_error)?;
            for row in rows {
                w.write_record(row.cells()).map_err(csv_error)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
        }
        TableFormat::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}
