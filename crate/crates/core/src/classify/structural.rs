//! Classification read off the concrete algebra, independent of the
//! periodicity arithmetic.

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::types::{DivisionRing, MatrixAlgebraType};
use crate::clifford::{blade_product, center, Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalar::{Field, RealScalar, Scalar};
use crate::Rational;

pub const DEFAULT_TRIALS: usize = 32;
pub const DEFAULT_SEED: u64 = 0x0C11_FF0D;
/// How often the smallest rank must recur before it is accepted.
pub const REQUIRED_REPEATS: usize = 5;
pub const MAX_ORACLE_DIM: u32 = 10;

/// Dimension of the left ideal `C·a`.
pub fn left_ideal_rank<T: Field>(a: &Multivector<T>) -> usize {
    let sig = a.signature();
    let dim = sig.algebra_dim();
    let mut ech = SparseEchelon::<T>::new(dim, 1e-12);
    for x in 0..dim as u32 {
        let row = a.terms().map(|(b, v)| {
            let (s, c) = blade_product(&sig, Blade(x), b);
            let v = if s < 0 { -v.clone() } else { v.clone() };
            (c.0 as usize, v)
        });
        ech.insert(row);
    }
    ech.rank()
}

fn commute(sig: &Signature, a: Blade, b: Blade) -> bool {
    blade_product(sig, a, b).0 == blade_product(sig, b, a).0
}

/// XOR basis over GF(2) of blade masks.
#[derive(Default)]
struct MaskBasis(Vec<u32>);

impl MaskBasis {
    fn reduce(&self, mut m: u32) -> u32 {
        for &b in &self.0 {
            m = m.min(m ^ b);
        }
        m
    }

    fn insert(&mut self, m: u32) -> bool {
        let r = self.reduce(m);
        if r == 0 {
            return false;
        }
        self.0.push(r);
        self.0.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

/// A random primitive-idempotent candidate: `e · Π (1 + B_i)` over a greedy
/// set of mutually commuting blades with `B_i² = +1` whose masks are
/// independent. Scalar normalization is dropped; it does not change ranks.
fn random_idempotent(
    sig: Signature,
    forced: Option<&(Multivector<Rational>, Option<Blade>)>,
    rng: &mut ChaCha8Rng,
) -> Multivector<Rational> {
    let mut candidates: Vec<Blade> = (1..sig.algebra_dim() as u32)
        .map(Blade)
        .filter(|&b| blade_product(&sig, b, b).0 > 0)
        .collect();
    candidates.shuffle(rng);

    let mut basis = MaskBasis::default();
    let mut element = Multivector::one(sig);
    if let Some((e, blade)) = forced {
        element = e.clone();
        if let Some(b) = blade {
            basis.insert(b.0);
        }
    }
    let mut chosen: Vec<Blade> = Vec::new();
    for b in candidates {
        if chosen.iter().all(|&c| commute(&sig, b, c)) && basis.insert(b.0) {
            chosen.push(b);
            let factor = &Multivector::one(sig) + &Multivector::from_blade(sig, b, Rational::one());
            element = &element * &factor;
        }
    }
    element
}

/// Smallest left-ideal dimension found, accepted once it recurs
/// `REQUIRED_REPEATS` times.
fn minimal_ideal(
    sig: Signature,
    forced: Option<&(Multivector<Rational>, Option<Blade>)>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    let mut best = usize::MAX;
    let mut hits = 0;
    for _ in 0..trials {
        let a = random_idempotent(sig, forced, rng);
        let r = left_ideal_rank(&a);
        if r == 0 {
            continue;
        }
        match r.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = r;
                hits = 1;
            }
            std::cmp::Ordering::Equal => hits += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    if hits < REQUIRED_REPEATS {
        return Err(Error::OracleUnstable { sig, trials });
    }
    Ok(best)
}

fn isqrt(v: u64) -> Option<u64> {
    let r = (v as f64).sqrt().round() as u64;
    (r * r == v).then_some(r)
}

/// Simple algebra of real dimension `dim` with minimal left ideal `m`.
fn simple_type(sig: Signature, dim: u64, m: usize) -> Result<MatrixAlgebraType> {
    let m = m as u64;
    if m * m == dim {
        return Ok(MatrixAlgebraType::simple(m, DivisionRing::Real));
    }
    if m * m == 4 * dim && m % 4 == 0 {
        return Ok(MatrixAlgebraType::simple(m / 4, DivisionRing::Quaternion));
    }
    Err(Error::OracleInconsistent {
        sig,
        reason: format!("minimal left ideal of dimension {m} in a simple algebra of dimension {dim}"),
    })
}

fn single_blade(x: &Multivector<Rational>) -> Option<Blade> {
    let mut terms = x.terms();
    match (terms.next(), terms.next()) {
        (Some((b, _)), None) => Some(b),
        _ => None,
    }
}

/// Isomorphism type of `C(p,q)` from its center and minimal left ideals.
///
/// A center of dimension 1 means a simple algebra over ℝ; the minimal left
/// ideal then separates `M(d,ℝ)` (ideal `√dim`) from `M(d,ℍ)` (ideal
/// `2√dim`). A two-dimensional center spanned by `1` and a central `u` is
/// ℂ when `u² < 0`, and otherwise splits along `(1 ± u)/2`, each block being
/// classified the same way.
pub fn classify_structural(sig: Signature, trials: usize, seed: u64) -> Result<MatrixAlgebraType> {
    sig.ensure_concrete(MAX_ORACLE_DIM, "the structural oracle")?;
    let dim = sig.algebra_dim() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = center::<Rational>(sig, false)?;
    let inconsistent = |reason: String| Error::OracleInconsistent { sig, reason };

    match report.dimension {
        1 => {
            let m = minimal_ideal(sig, None, trials, &mut rng)?;
            simple_type(sig, dim, m)
        }
        2 => {
            let w = report
                .basis
                .iter()
                .find(|b| b.terms().any(|(blade, _)| blade != Blade::SCALAR))
                .ok_or_else(|| inconsistent("center has no non-scalar element".into()))?;
            let u = w - &Multivector::scalar(sig, w.scalar_part());
            let sq = &u * &u;
            if sq.terms().any(|(b, _)| b != Blade::SCALAR) {
                return Err(inconsistent("central element does not square to a scalar".into()));
            }
            let lambda = sq.scalar_part();
            if lambda.is_negative() {
                let d = isqrt(dim / 2)
                    .ok_or_else(|| inconsistent(format!("{dim}/2 is not a square")))?;
                return Ok(MatrixAlgebraType::simple(d, DivisionRing::Complex));
            }
            let root = lambda
                .try_sqrt()
                .ok_or_else(|| inconsistent(format!("u² = {lambda} has no rational root")))?;
            let u = u.scale(&(Rational::one() / root));
            let blade = single_blade(&u);
            let mut blocks = Vec::new();
            for sign in [1i64, -1] {
                let e = &Multivector::one(sig) + &u.scale(&Rational::from_i64(sign));
                let forced = (e, blade);
                let block_dim = left_ideal_rank(&forced.0) as u64;
                let m = minimal_ideal(sig, Some(&forced), trials, &mut rng)?;
                blocks.push(simple_type(sig, block_dim, m)?);
            }
            if blocks[0] != blocks[1] {
                return Err(inconsistent(format!(
                    "central blocks differ: {} and {}",
                    blocks[0], blocks[1]
                )));
            }
            let b = blocks[0];
            Ok(MatrixAlgebraType::new(b.d, b.ring, true))
        }
        z => Err(inconsistent(format!("center of dimension {z}"))),
    }
}
