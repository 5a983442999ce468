use std::fmt;

use serde::{Deserialize, Serialize};

use super::types::{tensor_type, DivisionRing, MatrixAlgebraType};
use crate::clifford::Signature;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    Start,
    BaseCase,
    /// `C(E ⊕ E⊥) = C(E) ⊗ C(E⊥, ε_E² g)` with `E` of signature `factor`.
    DimensionalReduction { factor: [u32; 2] },
    ModEight,
    TensorSimplification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    #[serde(flatten)]
    pub rule: Rule,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionChain {
    pub steps: Vec<ReductionStep>,
}

impl ReductionChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_expression(&self) -> &str {
        self.steps.last().map(|s| s.expression.as_str()).unwrap_or("")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Clifford(u32, u32),
    Algebra(MatrixAlgebraType),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Clifford(p, q) => write!(f, "C({p},{q})"),
            Factor::Algebra(t) => write!(f, "{t}"),
        }
    }
}

fn render(factors: &[Factor]) -> String {
    factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}

fn real(d: u64) -> MatrixAlgebraType {
    MatrixAlgebraType::simple(d, DivisionRing::Real)
}

/// The six algebras with n ≤ 2 that every reduction ends in.
pub fn base_case(p: u32, q: u32) -> Option<MatrixAlgebraType> {
    use DivisionRing::*;
    Some(match (p, q) {
        (0, 0) => real(1),
        (1, 0) => MatrixAlgebraType::new(1, Real, true),
        (0, 1) => MatrixAlgebraType::simple(1, Complex),
        (2, 0) | (1, 1) => real(2),
        (0, 2) => MatrixAlgebraType::simple(1, Quaternion),
        _ => return None,
    })
}

/// Type read off from `p − q mod 8`, with the block size fixed by `2ⁿ`.
pub fn periodicity_type(sig: Signature) -> MatrixAlgebraType {
    use DivisionRing::*;
    let n = sig.n();
    let pow = |e: u32| 1u64 << e;
    match sig.p_minus_q_mod(8) {
        0 | 2 => MatrixAlgebraType::simple(pow(n / 2), Real),
        1 => MatrixAlgebraType::new(pow((n - 1) / 2), Real, true),
        3 | 7 => MatrixAlgebraType::simple(pow((n - 1) / 2), Complex),
        4 | 6 => MatrixAlgebraType::simple(pow(n / 2 - 1), Quaternion),
        _ => MatrixAlgebraType::new(pow((n - 3) / 2), Quaternion, true),
    }
}

/// Rewrites `C(p,q)` into a tensor product of base algebras and folds it.
/// Returns the folded type along with the recorded steps.
pub fn reduction_chain(sig: Signature) -> Result<(MatrixAlgebraType, ReductionChain)> {
    let mut steps = Vec::new();
    let mut factors = vec![Factor::Clifford(sig.p(), sig.q())];
    steps.push(ReductionStep {
        rule: Rule::Start,
        expression: render(&factors),
    });

    loop {
        let Some(Factor::Clifford(a, b)) = factors.last().copied() else {
            break;
        };
        factors.pop();
        let rule = if let Some(t) = base_case(a, b) {
            factors.push(Factor::Algebra(t));
            Rule::BaseCase
        } else if a >= 1 && b >= 1 {
            factors.push(Factor::Algebra(real(2)));
            factors.push(Factor::Clifford(a - 1, b - 1));
            Rule::DimensionalReduction { factor: [1, 1] }
        } else if a >= 8 {
            factors.push(Factor::Algebra(real(16)));
            factors.push(Factor::Clifford(a - 8, 0));
            Rule::ModEight
        } else if b >= 8 {
            factors.push(Factor::Algebra(real(16)));
            factors.push(Factor::Clifford(0, b - 8));
            Rule::ModEight
        } else if b == 0 {
            factors.push(Factor::Algebra(real(2)));
            factors.push(Factor::Clifford(0, a - 2));
            Rule::DimensionalReduction { factor: [2, 0] }
        } else {
            factors.push(Factor::Algebra(MatrixAlgebraType::simple(
                1,
                DivisionRing::Quaternion,
            )));
            factors.push(Factor::Clifford(b - 2, 0));
            Rule::DimensionalReduction { factor: [0, 2] }
        };
        steps.push(ReductionStep {
            rule,
            expression: render(&factors),
        });
    }

    let algebra = |f: &Factor| match f {
        Factor::Algebra(t) => Ok(*t),
        Factor::Clifford(..) => Err(Error::Internal("unreduced factor".into())),
    };
    let mut acc = algebra(&factors[0])?;
    let mut rest: Vec<Factor> = factors[1..].to_vec();
    while !rest.is_empty() {
        let next = algebra(&rest.remove(0))?;
        acc = tensor_type(&acc, &next)?;
        let mut shown = vec![Factor::Algebra(acc)];
        shown.extend(rest.iter().copied());
        steps.push(ReductionStep {
            rule: Rule::TensorSimplification,
            expression: render(&shown),
        });
    }
    Ok((acc, ReductionChain { steps }))
}

/// Isomorphism type of `C(p,q)` with its derivation.
///
/// Purely symbolic, so it accepts any `n ≤ 30`.
pub fn classify_real(sig: Signature) -> (MatrixAlgebraType, ReductionChain) {
    let ty = periodicity_type(sig);
    let chain = match reduction_chain(sig) {
        Ok((folded, chain)) if folded == ty => chain,
        // The fold is total on valid signatures; a mismatch is a bug.
        Ok((folded, _)) => panic!("reduction of {sig} gave {folded}, expected {ty}"),
        Err(e) => panic!("reduction of {sig} failed: {e}"),
    };
    (ty, chain)
}

pub fn classify_complex(n: u32) -> Result<MatrixAlgebraType> {
    if n > Signature::MAX_SYMBOLIC_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            limit: Signature::MAX_SYMBOLIC_DIM,
            what: "complex classification",
        });
    }
    Ok(if n % 2 == 0 {
        MatrixAlgebraType::simple(1 << (n / 2), DivisionRing::Complex)
    } else {
        MatrixAlgebraType::new(1 << ((n - 1) / 2), DivisionRing::Complex, true)
    })
}

/// `C₀(p,q) ≅ C(p,q−1) ≅ C(q,p−1)`; both routes are evaluated when defined.
pub fn classify_even(sig: Signature) -> Result<MatrixAlgebraType> {
    let (p, q) = (sig.p(), sig.q());
    if sig.n() == 0 {
        return Err(Error::Undefined(
            "the even part of C(0,0) has no lower-dimensional model".into(),
        ));
    }
    let via_q = (q >= 1).then(|| periodicity_type(Signature::new(p, q - 1).expect("smaller n")));
    let via_p = (p >= 1).then(|| periodicity_type(Signature::new(q, p - 1).expect("smaller n")));
    match (via_q, via_p) {
        (Some(a), Some(b)) if a != b => Err(Error::Internal(format!(
            "even part of {sig}: C({p},{}) = {a} but C({q},{}) = {b}",
            q - 1,
            p - 1
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => unreachable!("n ≥ 1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DivisionRing::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(classify_real(sig(0, 2)).0, MatrixAlgebraType::simple(1, Quaternion));
        assert_eq!(classify_real(sig(3, 1)).0, MatrixAlgebraType::simple(4, Real));
        assert_eq!(classify_real(sig(1, 3)).0, MatrixAlgebraType::simple(2, Quaternion));
        assert_eq!(classify_real(sig(9, 0)).0, MatrixAlgebraType::new(16, Real, true));
        assert_eq!(classify_real(sig(1, 0)).0, MatrixAlgebraType::new(1, Real, true));
        assert_eq!(classify_real(sig(0, 1)).0, MatrixAlgebraType::simple(1, Complex));
        assert_eq!(classify_real(sig(0, 0)).0, MatrixAlgebraType::simple(1, Real));
    }

    #[test]
    fn fold_agrees_with_periodicity_up_to_thirty() {
        for n in 0..=30 {
            for p in 0..=n {
                let s = sig(p, n - p);
                let (folded, chain) = reduction_chain(s).unwrap();
                assert_eq!(folded, periodicity_type(s), "{s}");
                assert_eq!(folded.real_dimension(), 1u64 << n, "{s}");
                assert_eq!(chain.steps[0].expression, format!("C({},{})", p, n - p));
                assert_eq!(chain.last_expression(), folded.to_string());
            }
        }
    }

    #[test]
    fn chain_for_three_one() {
        let (_, chain) = classify_real(sig(3, 1));
        let exprs: Vec<_> = chain.steps.iter().map(|s| s.expression.as_str()).collect();
        assert_eq!(
            exprs,
            [
                "C(3,1)",
                "M(2,ℝ) ⊗ C(2,0)",
                "M(2,ℝ) ⊗ M(2,ℝ)",
                "M(4,ℝ)"
            ]
        );
        assert_eq!(chain.steps[1].rule, Rule::DimensionalReduction { factor: [1, 1] });
    }

    #[test]
    fn mirror_chain_uses_quaternion_factor() {
        let (_, chain) = classify_real(sig(0, 5));
        assert_eq!(chain.steps[1].rule, Rule::DimensionalReduction { factor: [0, 2] });
        assert_eq!(chain.steps[1].expression, "ℍ ⊗ C(3,0)");
        let (_, chain) = classify_real(sig(10, 0));
        assert_eq!(chain.steps[1].rule, Rule::ModEight);
    }

    #[test]
    fn chain_json() {
        let (_, chain) = classify_real(sig(1, 1));
        assert_eq!(
            serde_json::to_string(&chain).unwrap(),
            r#"[{"rule":"start","expression":"C(1,1)"},{"rule":"base_case","expression":"M(2,ℝ)"}]"#
        );
        let (_, chain) = classify_real(sig(2, 1));
        let text = serde_json::to_string(&chain).unwrap();
        assert!(text.contains(r#"{"rule":"dimensional_reduction","factor":[1,1],"#));
        let back: ReductionChain = serde_json::from_str(&text).unwrap();
        assert_eq!(back, chain);
    }

    #[test]
    fn even_and_complex() {
        assert_eq!(classify_even(sig(4, 0)).unwrap(), MatrixAlgebraType::new(1, Quaternion, true));
        assert_eq!(classify_even(sig(3, 1)).unwrap(), MatrixAlgebraType::simple(2, Complex));
        assert_eq!(classify_even(sig(1, 3)).unwrap(), MatrixAlgebraType::simple(2, Complex));
        assert!(classify_even(sig(0, 0)).is_err());
        assert_eq!(classify_complex(4).unwrap(), MatrixAlgebraType::simple(4, Complex));
        assert_eq!(classify_complex(5).unwrap(), MatrixAlgebraType::new(4, Complex, true));
        assert_eq!(classify_complex(0).unwrap(), MatrixAlgebraType::simple(1, Complex));
        assert!(classify_complex(31).is_err());
    }
}
