use crate::clifford::blade::{blade_product, Blade};
use crate::clifford::{Multivector, Signature};
use crate::error::Result;
use crate::linalg::SparseEchelon;
use crate::scalar::Field;

/// Basis of the center of `C` (or of `C₀` when `even_only`).
#[derive(Clone, Debug, PartialEq)]
pub struct CenterReport<T> {
    pub dimension: usize,
    pub basis: Vec<Multivector<T>>,
}

/// Solves `[x, γ^μ] = 0` for all generators over the full coefficient space,
/// restricted to even-grade unknowns when `even_only`.
///
/// For the even part the conditions `[x, γ^μγ^ν] = 0` and `[x, γ^μ] = 0` on
/// even `x` differ; the center of `C₀` is cut out by the even bivectors, so
/// those are used as test elements in that case.
pub fn center<T: Field>(signature: Signature, even_only: bool) -> Result<CenterReport<T>> {
    signature.ensure_concrete(Signature::MAX_ALGEBRA_DIM, "center computation")?;
    let n = signature.n() as usize;
    let dim = signature.algebra_dim();

    let unknowns: Vec<Blade> = (0..dim as u32)
        .map(Blade)
        .filter(|b| !even_only || b.is_even())
        .collect();
    let column: std::collections::HashMap<Blade, usize> =
        unknowns.iter().enumerate().map(|(i, b)| (*b, i)).collect();

    let tests: Vec<Blade> = if even_only {
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| Blade((1 << a) | (1 << b))))
            .collect()
    } else {
        (0..n).map(Blade::generator).collect()
    };

    // Row for output blade c of [x, t]: Σ_b x_b (s(b,t) - s(t,b)) δ(b⊕t, c).
    let mut rows: std::collections::BTreeMap<(usize, u32), Vec<(usize, T)>> = Default::default();
    for (ti, &t) in tests.iter().enumerate() {
        for &b in &unknowns {
            let (s1, c) = blade_product(&signature, b, t);
            let (s2, _) = blade_product(&signature, t, b);
            let coeff = (s1 - s2) as i64;
            if coeff != 0 {
                rows.entry((ti, c.0))
                    .or_default()
                    .push((column[&b], T::from_i64(coeff)));
            }
        }
    }
    let mut ech = SparseEchelon::new(unknowns.len(), 0.0);
    for row in rows.into_values() {
        ech.insert(row);
    }
    let basis: Vec<Multivector<T>> = ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut mv = Multivector::zero(signature);
            for (col, x) in v {
                mv.add_term(unknowns[col], x);
            }
            mv
        })
        .collect();
    Ok(CenterReport {
        dimension: basis.len(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::orientation_operator;
    use crate::Rational;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn dirac_algebra_centers() {
        let s = sig(3, 1);
        let full = center::<Rational>(s, false).unwrap();
        assert_eq!(full.dimension, 1);
        assert_eq!(full.basis[0], Multivector::one(s));

        let even = center::<Rational>(s, true).unwrap();
        assert_eq!(even.dimension, 2);
        let eps: Multivector<Rational> = orientation_operator(s).unwrap();
        assert!(even.basis.contains(&Multivector::one(s)));
        assert!(even.basis.contains(&eps));
    }

    #[test]
    fn odd_dimension_center_contains_orientation() {
        let s = sig(3, 0);
        let full = center::<Rational>(s, false).unwrap();
        assert_eq!(full.dimension, 2);
        let eps: Multivector<Rational> = orientation_operator(s).unwrap();
        assert!(full.basis.contains(&eps));
        let even = center::<Rational>(s, true).unwrap();
        assert_eq!(even.dimension, 1);
    }

    #[test]
    fn center_dimension_by_parity() {
        for n in 0..=8u32 {
            for p in 0..=n {
                let s = sig(p, n - p);
                let full = center::<Rational>(s, false).unwrap();
                assert_eq!(full.dimension, if n % 2 == 0 { 1 } else { 2 }, "{s}");
                for z in &full.basis {
                    for mu in 0..n as usize {
                        let g = Multivector::generator(s, mu).unwrap();
                        assert!(z.commutator(&g).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn too_large() {
        assert!(center::<Rational>(sig(13, 0), false).is_err());
    }
}
