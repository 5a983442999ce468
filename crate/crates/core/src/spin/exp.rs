use crate::clifford::{Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::scalar::FloatScalar;

use super::group::{Parity, SpinElement};

const SERIES_TERMS: usize = 30;
const SCALAR_SQUARE_TOL: f64 = 1e-12;

fn exp_series<T: FloatScalar>(b: &Multivector<T>) -> Multivector<T> {
    let sig = b.signature();
    let mut term = Multivector::one(sig);
    let mut sum = Multivector::one(sig);
    for k in 1..SERIES_TERMS {
        term = (&term * b).scale(&(T::one() / T::from_f64(k as f64)));
        sum = &sum + &term;
    }
    sum
}

/// `exp(b)` for a bivector `b`.
///
/// When `b²` is a scalar the closed forms `cos + sin`, `cosh + sinh` or
/// `1 + b` apply. Otherwise `b` is scaled down until its largest coefficient
/// is below `1/2`, the truncated series is summed, and the result squared
/// back up.
pub fn exp_bivector<T: FloatScalar>(b: &Multivector<T>) -> Result<SpinElement<T>> {
    let sig = b.signature();
    let scale = b.max_abs().max(1.0);
    if b.terms().any(|(blade, v)| blade.grade() != 2 && v.as_f64().abs() > SCALAR_SQUARE_TOL * scale) {
        return Err(Error::NotBivector(format!("{}", b.map(|v| v.as_f64()))));
    }
    let b = b.grade_part(2);
    let sq = &b * &b;
    let rest = sq
        .terms()
        .filter(|(blade, _)| *blade != Blade::SCALAR)
        .map(|(_, v)| v.as_f64().abs())
        .fold(0.0, f64::max);

    let value = if rest < SCALAR_SQUARE_TOL {
        let c = sq.scalar_part();
        let one = Multivector::one(sig);
        if c.as_f64().abs() < SCALAR_SQUARE_TOL {
            &one + &b
        } else if c < T::zero() {
            let a = (-c).sqrt();
            &one.scale(&a.cos()) + &b.scale(&(a.sin() / a))
        } else {
            let a = c.sqrt();
            &one.scale(&a.cosh()) + &b.scale(&(a.sinh() / a))
        }
    } else {
        let mut halvings = 0u32;
        let mut norm = b.max_abs();
        while norm > 0.5 {
            norm /= 2.0;
            halvings += 1;
        }
        let small = b.scale(&T::from_f64(0.5f64.powi(halvings as i32)));
        let mut value = exp_series(&small);
        for _ in 0..halvings {
            value = &value * &value;
        }
        value
    };
    Ok(SpinElement {
        value,
        factor_parity: Some(Parity::Even),
    })
}

/// The bivectors `γ^μγ^ν`, `μ < ν`.
pub fn lie_algebra_basis<T: FloatScalar>(sig: Signature) -> Result<Vec<Multivector<T>>> {
    let n = sig.n() as usize;
    if n < 2 {
        return Err(Error::Undefined(format!(
            "the Lie algebra of Spin{sig} is trivial; n ≥ 2 is required"
        )));
    }
    Ok((0..n)
        .flat_map(|mu| (mu + 1..n).map(move |nu| (mu, nu)))
        .map(|(mu, nu)| {
            Multivector::from_blade(sig, Blade((1 << mu) | (1 << nu)), T::one())
        })
        .collect())
}

fn generator_product<T: FloatScalar>(sig: Signature, mu: usize, nu: usize) -> Result<Multivector<T>> {
    if mu == nu || mu >= sig.n() as usize || nu >= sig.n() as usize {
        return Err(Error::InvalidBlade(format!(
            "γ^{mu}γ^{nu} is not a bivector of C{sig}"
        )));
    }
    Multivector::generator(sig, mu)?.geometric_product(&Multivector::generator(sig, nu)?)
}

/// `exp((β/2) γ^t γ^a)` for the canonical generators `t` (time-like) and
/// `a`. In signature `(3,1)` with `t = 3` this maps `γ^t` to
/// `γ^t cosh β + γ^a sinh β`.
pub fn boost<T: FloatScalar>(sig: Signature, time: usize, axis: usize, beta: T) -> Result<SpinElement<T>> {
    let b = generator_product::<T>(sig, time, axis)?;
    exp_bivector(&b.scale(&(beta / T::from_f64(2.0))))
}

/// `exp((θ/2) γ^μ γ^ν)`.
pub fn rotation<T: FloatScalar>(sig: Signature, mu: usize, nu: usize, theta: T) -> Result<SpinElement<T>> {
    let b = generator_product::<T>(sig, mu, nu)?;
    exp_bivector(&b.scale(&(theta / T::from_f64(2.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::chi;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn boost_closed_form() {
        let s = sig(3, 1);
        let boost = boost::<f64>(s, 3, 0, 1.0).unwrap();
        let expected = &Multivector::scalar(s, 0.5f64.cosh())
            + &generator_product::<f64>(s, 3, 0).unwrap().scale(&0.5f64.sinh());
        assert!(boost.value.approx_eq(&expected, 1e-15));
        let m = chi(&boost, 1e-10).unwrap();
        assert!((m.entries[(3, 3)] - 1f64.cosh()).abs() < 1e-12);
        assert!((m.entries[(0, 3)] - 1f64.sinh()).abs() < 1e-12);
    }

    #[test]
    fn zero_and_double_cover() {
        let s = sig(3, 0);
        let zero = exp_bivector(&Multivector::<f64>::zero(s)).unwrap();
        assert_eq!(zero.value, Multivector::one(s));

        let half_turn = rotation::<f64>(s, 1, 2, std::f64::consts::PI).unwrap();
        assert!(half_turn
            .value
            .approx_eq(&generator_product(s, 1, 2).unwrap(), 1e-15));
        let full = rotation::<f64>(s, 1, 2, 2.0 * std::f64::consts::PI).unwrap();
        assert!(full.value.approx_eq(&Multivector::scalar(s, -1.0), 1e-15));
        let m = chi(&full, 1e-10).unwrap();
        assert!(m.entries.approx_eq(&crate::linalg::Matrix::identity(3), 1e-15));
    }

    #[test]
    fn general_bivector_uses_series() {
        let s = sig(4, 0);
        let b = &generator_product::<f64>(s, 0, 1).unwrap().scale(&1.3)
            + &generator_product::<f64>(s, 2, 3).unwrap().scale(&-0.7);
        // The planes commute, so the exponential factorizes.
        let expected = rotation::<f64>(s, 0, 1, 2.6)
            .unwrap()
            .product(&rotation::<f64>(s, 2, 3, -1.4).unwrap())
            .unwrap();
        let got = exp_bivector(&b).unwrap();
        assert!(got.value.approx_eq(&expected.value, 1e-12));
        assert!((got.norm_scalar(1e-10).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_bivectors() {
        let s = sig(3, 0);
        let v = Multivector::<f64>::generator(s, 0).unwrap();
        assert!(matches!(exp_bivector(&v), Err(Error::NotBivector(_))));
    }

    #[test]
    fn lie_basis_dimensions_and_closure() {
        assert_eq!(lie_algebra_basis::<f64>(sig(3, 1)).unwrap().len(), 6);
        assert_eq!(lie_algebra_basis::<f64>(sig(2, 0)).unwrap().len(), 1);
        let basis = lie_algebra_basis::<f64>(sig(3, 0)).unwrap();
        assert_eq!(basis.len(), 3);
        // [γ⁰γ¹, γ¹γ²] = 2 γ⁰γ² in (3,0).
        let c = basis[0].commutator(&basis[2]).unwrap();
        assert_eq!(c, basis[1].scale(&2.0));
        for a in &basis {
            for b in &basis {
                let c = a.commutator(b).unwrap();
                assert!(c.terms().all(|(blade, _)| blade.grade() == 2));
            }
        }
        assert!(lie_algebra_basis::<f64>(sig(1, 0)).is_err());
    }
}
