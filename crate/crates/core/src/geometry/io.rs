use serde::{Deserialize, Serialize};

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Complex64;

use super::fields::{ConnectionField, FrameField, Grid, SpinorField};

fn rows(m: &Matrix<f64>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn matrix(rows: &[Vec<f64>]) -> Result<Matrix<f64>> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Shape("ragged matrix rows".into()));
    }
    Ok(Matrix::from_rows(rows.to_vec()))
}

/// Site-major vielbein: `vielbein[site][a][μ] = e_a^μ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub signature: Signature,
    pub grid: Grid,
    pub vielbein: Vec<Vec<Vec<f64>>>,
}

impl From<&FrameField> for FrameJson {
    fn from(frame: &FrameField) -> Self {
        Self {
            signature: frame.signature,
            grid: frame.grid.clone(),
            vielbein: frame.vielbein.iter().map(rows).collect(),
        }
    }
}

impl FrameJson {
    pub fn into_field(self) -> Result<FrameField> {
        let grid = Grid::new(self.grid.shape, self.grid.spacing)?;
        let vielbein = self
            .vielbein
            .iter()
            .map(|m| matrix(m))
            .collect::<Result<_>>()?;
        FrameField::new(self.signature, grid, vielbein)
    }
}

/// Site-major connection: `coefficients[site][μ][a][b] = Γ^a_{bμ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub signature: Signature,
    pub grid: Grid,
    pub coefficients: Vec<Vec<Vec<Vec<f64>>>>,
}

impl From<&ConnectionField> for ConnectionJson {
    fn from(conn: &ConnectionField) -> Self {
        Self {
            signature: conn.signature,
            grid: conn.grid.clone(),
            coefficients: conn
                .coefficients
                .iter()
                .map(|site| site.iter().map(rows).collect())
                .collect(),
        }
    }
}

impl ConnectionJson {
    pub fn into_field(self) -> Result<ConnectionField> {
        let grid = Grid::new(self.grid.shape, self.grid.spacing)?;
        let coefficients = self
            .coefficients
            .iter()
            .map(|site| site.iter().map(|m| matrix(m)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        ConnectionField::new(self.signature, grid, coefficients)
    }
}

/// Site-major spinor values as `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorFieldJson {
    pub signature: Signature,
    pub grid: Grid,
    pub values: Vec<Vec<[f64; 2]>>,
}

impl From<&SpinorField> for SpinorFieldJson {
    fn from(psi: &SpinorField) -> Self {
        Self {
            signature: psi.signature,
            grid: psi.grid.clone(),
            values: psi
                .values
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl SpinorFieldJson {
    pub fn into_field(self) -> Result<SpinorField> {
        let grid = Grid::new(self.grid.shape, self.grid.spacing)?;
        let values = self
            .values
            .iter()
            .map(|v| v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
            .collect();
        SpinorField::new(self.signature, grid, values)
    }
}

/// One row per site: lattice coordinates, then `re_k, im_k` per component.
/// Only 1-d and 2-d grids are supported.
pub fn spinor_field_to_csv(psi: &SpinorField) -> Result<String> {
    let axes = psi.grid.axes();
    if axes > 2 {
        return Err(Error::Shape(format!(
            "CSV output covers 1-d and 2-d grids; this grid has {axes} axes"
        )));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..axes).map(|a| format!("x{a}")).collect();
    for k in 0..psi.f {
        header.push(format!("re{k}"));
        header.push(format!("im{k}"));
    }
    let err = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(&header).map_err(err)?;
    for (site, v) in psi.values.iter().enumerate() {
        let mut record: Vec<String> = psi.grid.coords(site).iter().map(|c| c.to_string()).collect();
        for z in v {
            record.push(z.re.to_string());
            record.push(z.im.to_string());
        }
        w.write_record(&record).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips() {
        let sig = Signature::new(1, 1).unwrap();
        let grid = Grid::cube(2, 3).unwrap();
        let frame = FrameField::flat(sig, grid.clone()).unwrap();
        let back = serde_json::from_str::<FrameJson>(&serde_json::to_string(&FrameJson::from(&frame)).unwrap())
            .unwrap()
            .into_field()
            .unwrap();
        assert_eq!(back, frame);

        let boost = Matrix::from_rows(vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        let conn = ConnectionField::constant(sig, grid.clone(), vec![boost, Matrix::zeros(2, 2)]).unwrap();
        let text = serde_json::to_string(&ConnectionJson::from(&conn)).unwrap();
        assert_eq!(serde_json::from_str::<ConnectionJson>(&text).unwrap().into_field().unwrap(), conn);

        let psi = SpinorField::plane_wave(
            sig,
            grid,
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)],
            &[1.0, 2.0],
        )
        .unwrap();
        let text = serde_json::to_string(&SpinorFieldJson::from(&psi)).unwrap();
        assert_eq!(serde_json::from_str::<SpinorFieldJson>(&text).unwrap().into_field().unwrap(), psi);
    }

    #[test]
    fn csv_layout() {
        let sig = Signature::new(1, 0).unwrap();
        let grid = Grid::new(vec![3], vec![1.0]).unwrap();
        let psi = SpinorField::plane_wave(sig, grid, &[Complex64::new(2.0, 0.0)], &[0.0]).unwrap();
        let csv = spinor_field_to_csv(&psi).unwrap();
        assert_eq!(csv, "x0,re0,im0\n0,2,0\n1,2,0\n2,2,0\n");
        let big = SpinorField::zero(Signature::new(3, 0).unwrap(), Grid::cube(3, 3).unwrap());
        assert!(spinor_field_to_csv(&big).is_err());
    }
}
