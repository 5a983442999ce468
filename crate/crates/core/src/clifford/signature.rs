use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadratic-form signature `(p, q)`.
///
/// Generators are indexed `0..n` with the `p` generators squaring to `+1`
/// first, followed by the `q` generators squaring to `-1`. So `(3,1)` means
/// `γ⁰, γ¹, γ²` square to `+1` and `γ³` squares to `-1`. Physics texts
/// usually put the time-like generator first; see [`Signature::time_first_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct Signature {
    p: u32,
    q: u32,
}

impl Signature {
    /// Ceiling for purely symbolic work (classification arithmetic).
    pub const MAX_SYMBOLIC_DIM: u32 = 30;
    /// Ceiling for anything that materializes the 2ⁿ-dimensional algebra.
    pub const MAX_ALGEBRA_DIM: u32 = 12;

    pub fn new(p: u32, q: u32) -> Result<Self> {
        let n = p.checked_add(q).ok_or_else(|| {
            Error::InvalidSignature(format!("({p},{q}) overflows"))
        })?;
        if n > Self::MAX_SYMBOLIC_DIM {
            return Err(Error::DimensionTooLarge {
                n,
                limit: Self::MAX_SYMBOLIC_DIM,
                what: "signatures",
            });
        }
        Ok(Self { p, q })
    }

    pub fn euclidean(n: u32) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.p + self.q
    }

    /// `(q, p)`: the same quadratic form with its sign flipped.
    pub fn opposite(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// `p - q` reduced into `0..m`.
    pub fn p_minus_q_mod(&self, m: i64) -> i64 {
        (self.p as i64 - self.q as i64).rem_euclid(m)
    }

    pub fn is_euclidean(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    /// Dimension of the Clifford algebra, `2ⁿ`.
    pub fn algebra_dim(&self) -> usize {
        1usize << self.n()
    }

    /// Fails if the concrete algebra would exceed `limit` generators.
    pub fn ensure_concrete(&self, limit: u32, what: &'static str) -> Result<()> {
        if self.n() > limit {
            Err(Error::DimensionTooLarge {
                n: self.n(),
                limit,
                what,
            })
        } else {
            Ok(())
        }
    }

    /// `+1` for `μ < p`, `-1` for `p ≤ μ < n`.
    pub fn metric_sign(&self, mu: usize) -> i8 {
        debug_assert!(mu < self.n() as usize);
        if (mu as u32) < self.p {
            1
        } else {
            -1
        }
    }

    /// Bitmask of the generators that square to `-1`.
    pub fn negative_mask(&self) -> u32 {
        ((1u64 << self.n()) - 1) as u32 & !(((1u64 << self.p) - 1) as u32)
    }

    /// Diagonal of the metric as floats.
    pub fn metric_diagonal(&self) -> Vec<f64> {
        (0..self.n() as usize)
            .map(|mu| self.metric_sign(mu) as f64)
            .collect()
    }

    /// Generators treated as time-like: the smaller of the two sign blocks,
    /// the negative block on ties. Euclidean signatures have none.
    pub fn time_like(&self) -> Vec<usize> {
        let (p, n) = (self.p as usize, self.n() as usize);
        if self.q <= self.p {
            (p..n).collect()
        } else {
            (0..p).collect()
        }
    }

    /// Relabeling for the physics convention: entry `i` is the canonical
    /// index of physics generator `i`, with the time-like generators first
    /// and the remaining ones after them in ascending order.
    pub fn time_first_order(&self) -> Vec<usize> {
        let time = self.time_like();
        let rest = (0..self.n() as usize).filter(|mu| !time.contains(mu));
        time.iter().copied().chain(rest).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl TryFrom<[u32; 2]> for Signature {
    type Error = Error;
    fn try_from([p, q]: [u32; 2]) -> Result<Self> {
        Self::new(p, q)
    }
}

impl From<Signature> for [u32; 2] {
    fn from(sig: Signature) -> Self {
        [sig.p, sig.q]
    }
}
