//! JSON form of a multivector:
//! `{"signature":[p,q], "terms":[{"blade":[…], "re":"num/den", "im":"num/den"}, …]}`.

use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, Multivector, Signature};
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub blade: Vec<usize>,
    pub re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub signature: Signature,
    pub terms: Vec<TermJson>,
}

impl<T: Scalar> From<&Multivector<T>> for MultivectorJson {
    fn from(mv: &Multivector<T>) -> Self {
        let terms = mv
            .terms()
            .map(|(blade, v)| {
                let (re, im) = v.to_text_parts();
                TermJson {
                    blade: blade.indices(),
                    re,
                    im,
                }
            })
            .collect();
        Self {
            signature: mv.signature(),
            terms,
        }
    }
}

impl MultivectorJson {
    pub fn into_multivector<T: Scalar>(self) -> Result<Multivector<T>> {
        let terms = self
            .terms
            .into_iter()
            .map(|t| {
                let blade = Blade::from_indices(&t.blade)?;
                let value = T::from_text_parts(&t.re, t.im.as_deref())?;
                Ok((blade, value))
            })
            .collect::<Result<Vec<_>>>()?;
        Multivector::from_terms(self.signature, terms)
    }
}

impl<T: Scalar> Multivector<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MultivectorJson::from(self)).expect("serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MultivectorJson::from(self)).expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let parsed: MultivectorJson = serde_json::from_str(text)?;
        parsed.into_multivector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussianRational, Rational};
    use num_traits::One;

    #[test]
    fn real_format() {
        let s = Signature::new(2, 0).unwrap();
        let mv = Multivector::from_blade(s, Blade(0b11), Rational::new((-1).into(), 2.into()));
        let text = mv.to_json_string();
        assert_eq!(
            text,
            r#"{"signature":[2,0],"terms":[{"blade":[0,1],"re":"-1/2"}]}"#
        );
        assert_eq!(Multivector::<Rational>::from_json_str(&text).unwrap(), mv);
    }

    #[test]
    fn complex_format() {
        let s = Signature::new(1, 1).unwrap();
        let i = <GaussianRational as crate::scalar::ComplexScalar>::i();
        let mv = &Multivector::one(s) + &Multivector::from_blade(s, Blade(0b10), i.clone());
        let v = mv.to_json();
        assert_eq!(v["terms"][1]["im"], "1/1");
        assert_eq!(v["terms"][0]["im"], "0/1");
        let back = Multivector::<GaussianRational>::from_json_str(&v.to_string()).unwrap();
        assert_eq!(back, mv);
        assert!(GaussianRational::one() != GaussianRational::one() + i);
    }

    #[test]
    fn rejects_bad_input() {
        let unsorted = r#"{"signature":[2,0],"terms":[{"blade":[1,0],"re":"1"}]}"#;
        assert!(Multivector::<Rational>::from_json_str(unsorted).is_err());
        let out_of_range = r#"{"signature":[2,0],"terms":[{"blade":[2],"re":"1"}]}"#;
        assert!(Multivector::<Rational>::from_json_str(out_of_range).is_err());
        let imaginary = r#"{"signature":[2,0],"terms":[{"blade":[0],"re":"1","im":"2"}]}"#;
        assert!(Multivector::<Rational>::from_json_str(imaginary).is_err());
    }
}
