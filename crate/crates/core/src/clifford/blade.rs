use std::fmt;

use crate::clifford::Signature;
use crate::error::{Error, Result};

/// Basis blade of `C(p,q)`: bit `μ` set means `γ^μ` is a factor, factors in
/// ascending index order. Mask `0` is the scalar blade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(mu: usize) -> Self {
        Blade(1 << mu)
    }

    /// Builds a blade from strictly ascending generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last: Option<usize> = None;
        for &mu in indices {
            if mu >= 32 || last.is_some_and(|l| l >= mu) {
                return Err(Error::InvalidBlade(format!(
                    "indices must be strictly ascending and < 32, got {indices:?}"
                )));
            }
            mask |= 1 << mu;
            last = Some(mu);
        }
        Ok(Blade(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_even(self) -> bool {
        self.grade() % 2 == 0
    }

    pub fn contains(self, mu: usize) -> bool {
        self.0 >> mu & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&mu| self.contains(mu)).collect()
    }

    /// Whether every index is below `n`.
    pub fn fits(self, n: u32) -> bool {
        n >= 32 || self.0 >> n == 0
    }

    /// Sign picked up by reversing the factor order: `(-1)^{k(k-1)/2}`.
    pub fn reversion_sign(self) -> i8 {
        let k = self.grade();
        if (k * k.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|mu| format!("γ{mu}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Parity of the number of transpositions needed to merge the ascending
/// factor lists of `a` and `b`: counts pairs `i ∈ a, j ∈ b` with `i > j`.
fn reorder_is_odd(a: u32, b: u32) -> bool {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps % 2 == 1
}

/// Product of two basis blades: `(sign, a XOR b)`.
pub fn blade_product(sig: &Signature, a: Blade, b: Blade) -> (i8, Blade) {
    let mut negative = reorder_is_odd(a.0, b.0);
    if (a.0 & b.0 & sig.negative_mask()).count_ones() % 2 == 1 {
        negative = !negative;
    }
    (if negative { -1 } else { 1 }, Blade(a.0 ^ b.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sign(sig: &Signature, a: Blade, b: Blade) -> i8 {
        // Bubble-sort the concatenated factor list, contracting equal
        // neighbours with their metric sign.
        let mut factors: Vec<usize> = a.indices();
        factors.extend(b.indices());
        let mut sign = 1i8;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < factors.len() {
                if factors[i] > factors[i + 1] {
                    factors.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if factors[i] == factors[i + 1] {
                    sign *= sig.metric_sign(factors[i]);
                    factors.drain(i..i + 2);
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        sign
    }

    #[test]
    fn product_sign_matches_bubble_sort() {
        for (p, q) in [(2, 0), (3, 1), (1, 3), (2, 3), (0, 4)] {
            let sig = Signature::new(p, q).unwrap();
            let dim = sig.algebra_dim() as u32;
            for a in 0..dim {
                for b in 0..dim {
                    let (s, c) = blade_product(&sig, Blade(a), Blade(b));
                    assert_eq!(c, Blade(a ^ b));
                    assert_eq!(s, brute_sign(&sig, Blade(a), Blade(b)), "{sig} {a:b} {b:b}");
                }
            }
        }
    }

    #[test]
    fn indices_round_trip() {
        let b = Blade::from_indices(&[0, 2, 3]).unwrap();
        assert_eq!(b.mask(), 0b1101);
        assert_eq!(b.indices(), vec![0, 2, 3]);
        assert_eq!(b.grade(), 3);
        assert_eq!(b.reversion_sign(), -1);
        assert!(Blade::from_indices(&[2, 1]).is_err());
        assert!(Blade::from_indices(&[1, 1]).is_err());
        assert_eq!(b.to_string(), "γ0γ2γ3");
    }
}
