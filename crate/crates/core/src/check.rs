//! Cross-validation suites behind the `check` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_real, classify_structural, reduction_chain, MatrixAlgebraType};
use crate::clifford::Signature;
use crate::error::Result;
use crate::spin::{chi, SpinElement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Largest `n` handed to the structural oracle.
    pub max_n: u32,
    /// Largest `n` for the symbolic periodicity identities.
    pub symbolic_max_n: u32,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub chi_samples: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            max_n: 6,
            symbolic_max_n: 20,
            trials: crate::classify::DEFAULT_TRIALS,
            seed: crate::classify::DEFAULT_SEED,
            tolerance: 1e-10,
            chi_samples: 100,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.failures.push(msg);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn passed(&self) -> usize {
        self.suites.iter().map(|s| s.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

/// All signatures with `lo ≤ n ≤ hi`.
pub fn signatures_up_to(lo: u32, hi: u32) -> Vec<Signature> {
    (lo..=hi)
        .flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).expect("n within limits")))
        .collect()
}

pub fn table_vs_oracle(opts: &CheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("table-vs-oracle");
    let outcomes: Vec<_> = signatures_up_to(0, opts.max_n)
        .into_par_iter()
        .map(|sig| {
            let expected = classify_real(sig).0;
            match classify_structural(sig, opts.trials, opts.seed) {
                Ok(found) if found == expected => Ok(()),
                Ok(found) => Err(format!("{sig}: table {expected}, oracle {found}")),
                Err(e) => Err(format!("{sig}: {e}")),
            }
        })
        .collect();
    outcomes.into_iter().for_each(|o| report.record(o));
    report
}

fn chain_type(p: u32, q: u32) -> std::result::Result<MatrixAlgebraType, String> {
    let sig = Signature::new(p, q).map_err(|e| e.to_string())?;
    reduction_chain(sig).map(|(t, _)| t).map_err(|e| e.to_string())
}

fn expect_eq(what: String, a: MatrixAlgebraType, b: MatrixAlgebraType) -> std::result::Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} ≠ {b}"))
    }
}

/// Identities between reduction-chain results, with every side derived from
/// its own chain rather than from the closed-form table.
pub fn periodicity_identities(opts: &CheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("periodicity");
    let max = opts.symbolic_max_n;
    for sig in signatures_up_to(0, max) {
        let (p, q) = (sig.p(), sig.q());
        let this = match chain_type(p, q) {
            Ok(t) => t,
            Err(e) => {
                report.record(Err(format!("{sig}: {e}")));
                continue;
            }
        };
        if sig.n() + 8 <= max {
            report.record(chain_type(p + 8, q).and_then(|t| {
                let mut scaled = this;
                scaled.d *= 16;
                expect_eq(format!("C({},{q}) vs 16·C({p},{q})", p + 8), t, scaled)
            }));
        }
        if p >= 1 && q >= 1 {
            report.record(chain_type(p, q - 1).and_then(|a| {
                chain_type(q, p - 1).and_then(|b| expect_eq(format!("even part of {sig}"), a, b))
            }));
        }
        if q == 0 && p >= 1 {
            report.record(chain_type(1, p - 1).and_then(|t| expect_eq(format!("C({p},0) vs C(1,{})", p - 1), this, t)));
        }
    }
    report
}

fn random_vector(rng: &mut ChaCha8Rng, sig: Signature) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..sig.n() as usize).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = v
            .iter()
            .enumerate()
            .map(|(mu, x)| sig.metric_sign(mu) as f64 * x * x)
            .sum();
        // keeping |u²| comparable to |u|² bounds the rapidity of each factor
        let euclid: f64 = v.iter().map(|x| x * x).sum();
        if norm.abs() > 0.3 * euclid && euclid > 0.1 {
            return v;
        }
    }
}

/// A product of one to four random, well-conditioned non-null vectors.
pub fn random_pin_element(rng: &mut ChaCha8Rng, sig: Signature) -> Result<SpinElement<f64>> {
    let k = rng.gen_range(1..=4);
    let vectors: Vec<_> = (0..k).map(|_| random_vector(rng, sig)).collect();
    SpinElement::from_vectors(sig, &vectors)
}

/// Metric preservation, the homomorphism property and `χ(s) = χ(−s)` on
/// random products of vectors for every signature with `1 ≤ n ≤ 6`. The
/// homomorphism residual is relative to the largest entry of `χ(st)`.
pub fn chi_properties(opts: &CheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("chi");
    let sigs = signatures_up_to(1, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tol = opts.tolerance;
    for i in 0..opts.chi_samples {
        let sig = sigs[i % sigs.len()];
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let s = random_pin_element(&mut rng, sig)?;
            let t = random_pin_element(&mut rng, sig)?;
            let (cs, ct) = (chi(&s, tol)?, chi(&t, tol)?);
            let cst = chi(&s.product(&t)?, tol)?;
            let metric = cs.metric_residual(sig);
            let size = cst.entries.data().iter().fold(1.0f64, |a, b| a.max(b.abs()));
            let hom = cst.entries.max_abs_diff(&(&cs.entries * &ct.entries)) / size;
            let neg = chi(&s.negate(), tol)?;
            Ok(if metric > tol {
                Err(format!("{sig}: metric residual {metric:e}"))
            } else if hom > tol {
                Err(format!("{sig}: homomorphism residual {hom:e}"))
            } else if neg.entries != cs.entries {
                Err(format!("{sig}: χ(s) ≠ χ(−s)"))
            } else {
                Ok(())
            })
        })();
        report.record(outcome.unwrap_or_else(|e| Err(format!("{sig}: {e}"))));
    }
    report
}

pub fn run_checks(opts: &CheckOptions) -> CheckReport {
    let (oracle, (periodicity, chi)) = rayon::join(
        || table_vs_oracle(opts),
        || rayon::join(|| periodicity_identities(opts), || chi_properties(opts)),
    );
    CheckReport {
        suites: vec![oracle, periodicity, chi],
    }
}
