use serde::{Deserialize, Serialize};

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Complex64;

use super::conjugation::Conjugation;
use super::representation::GammaRepresentation;

/// Rows of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugationJson {
    pub matrix: MatrixJson,
    pub eta: i8,
    pub c_squared: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub signature: Signature,
    pub f: usize,
    pub gammas: Vec<MatrixJson>,
    pub theta: Option<MatrixJson>,
    pub conjugation: Option<ConjugationJson>,
}

pub fn matrix_to_json(m: &Matrix<Complex64>) -> MatrixJson {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<Matrix<Complex64>> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Shape("ragged matrix rows".into()));
    }
    Ok(Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
            .collect(),
    ))
}

impl From<&GammaRepresentation<Complex64>> for RepresentationJson {
    fn from(rep: &GammaRepresentation<Complex64>) -> Self {
        Self {
            signature: rep.signature,
            f: rep.f,
            gammas: rep.gammas.iter().map(matrix_to_json).collect(),
            theta: rep.theta.as_ref().map(matrix_to_json),
            conjugation: rep.conjugation.as_ref().map(|c| ConjugationJson {
                matrix: matrix_to_json(&c.matrix),
                eta: c.eta,
                c_squared: c.c_squared,
            }),
        }
    }
}

impl RepresentationJson {
    /// Rebuilds the representation; `ε` is recomputed from the generators.
    pub fn into_representation(self) -> Result<GammaRepresentation<Complex64>> {
        let gammas = self
            .gammas
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        if gammas.len() != self.signature.n() as usize
            || gammas.iter().any(|g| g.rows() != self.f || g.cols() != self.f)
        {
            return Err(Error::Shape(format!(
                "expected {} matrices of size {}",
                self.signature.n(),
                self.f
            )));
        }
        let epsilon = gammas
            .iter()
            .fold(Matrix::identity(self.f), |acc, g| &acc * g);
        Ok(GammaRepresentation {
            signature: self.signature,
            f: self.f,
            gammas,
            epsilon,
            theta: self.theta.as_ref().map(matrix_from_json).transpose()?,
            conjugation: self
                .conjugation
                .map(|c| {
                    Ok::<_, Error>(Conjugation {
                        matrix: matrix_from_json(&c.matrix)?,
                        eta: c.eta,
                        c_squared: c.c_squared,
                    })
                })
                .transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::build_representation;

    #[test]
    fn round_trip() {
        let rep: GammaRepresentation<Complex64> =
            build_representation(Signature::new(3, 1).unwrap()).unwrap();
        let json = RepresentationJson::from(&rep);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with(r#"{"signature":[3,1],"f":4,"gammas":[[[[0.0,0.0],"#));
        let back: RepresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_representation().unwrap(), rep);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let rep: GammaRepresentation<Complex64> =
            build_representation(Signature::new(2, 0).unwrap()).unwrap();
        let mut json = RepresentationJson::from(&rep);
        json.gammas.pop();
        assert!(json.into_representation().is_err());
    }
}
