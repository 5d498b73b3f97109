//! Random comparison models: Rademacher polynomials `sum X_n e(n theta)` with
//! independent signs, and `sum f(n) e(n theta)` for a random completely
//! multiplicative `f`.
//!
//! Every random draw is a pure function of `(seed, trial, index)`: the trial
//! selects a ChaCha stream and the index a block position within it.

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charcore::e;
use crate::error::{Error, Result};
use crate::maxsearch::{certified_max, DEFAULT_EPS};
use crate::sums::CoefficientVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultiplicativeKind {
    /// `f(q) = +-1` with equal probability.
    Rademacher,
    /// `f(q)` uniform on the unit circle.
    Steinhaus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomModel {
    /// Independent signs for every `n`.
    RademacherIid,
    Multiplicative(MultiplicativeKind),
}

impl RandomModel {
    pub fn name(&self) -> &'static str {
        match self {
            RandomModel::RademacherIid => "rademacher-iid",
            RandomModel::Multiplicative(MultiplicativeKind::Rademacher) => "rmf-rademacher",
            RandomModel::Multiplicative(MultiplicativeKind::Steinhaus) => "rmf-steinhaus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rademacher-iid" | "iid" => Some(RandomModel::RademacherIid),
            "rmf" | "rmf-rademacher" => {
                Some(RandomModel::Multiplicative(MultiplicativeKind::Rademacher))
            }
            "rmf-steinhaus" => Some(RandomModel::Multiplicative(MultiplicativeKind::Steinhaus)),
            _ => None,
        }
    }
}

/// Stream of 64-bit words addressed by `(seed, trial, index)`.
struct KeyedSource {
    rng: ChaCha8Rng,
}

impl KeyedSource {
    fn new(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { rng }
    }

    fn word(&mut self, index: u64) -> u64 {
        // two 32-bit words per index
        self.rng.set_word_pos(2 * index as u128);
        self.rng.next_u64()
    }

    fn sign(&mut self, index: u64) -> f64 {
        if self.word(index) >> 63 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    fn unit_interval(&mut self, index: u64) -> f64 {
        (self.word(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Smallest prime factor of each `n <= n_max` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Values `f(1), ..., f(N)` of a completely multiplicative function.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomMultiplicativeFn {
    kind: MultiplicativeKind,
    values: Vec<Complex64>,
}

impl RandomMultiplicativeFn {
    pub fn kind(&self) -> MultiplicativeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `f(n)` for `1 <= n <= N`.
    pub fn value(&self, n: usize) -> Complex64 {
        assert!(n >= 1 && n < self.values.len(), "n={n} out of range");
        self.values[n]
    }

    /// `f(1..=N)`.
    pub fn values(&self) -> &[Complex64] {
        &self.values[1..]
    }
}

pub fn sample_rmf(kind: MultiplicativeKind, n: usize, seed: u64) -> Result<RandomMultiplicativeFn> {
    sample_rmf_trial(kind, n, seed, 0)
}

/// `f` for trial `trial`; draws at prime `q` are keyed by `q`.
pub fn sample_rmf_trial(
    kind: MultiplicativeKind,
    n: usize,
    seed: u64,
    trial: u64,
) -> Result<RandomMultiplicativeFn> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let spf = smallest_prime_factors(n);
    let mut src = KeyedSource::new(seed, trial);
    let mut values = vec![Complex64::new(0.0, 0.0); n + 1];
    values[1] = Complex64::new(1.0, 0.0);
    for m in 2..=n {
        let q = spf[m] as usize;
        values[m] = if q == m {
            match kind {
                MultiplicativeKind::Rademacher => Complex64::new(src.sign(m as u64), 0.0),
                MultiplicativeKind::Steinhaus => e(src.unit_interval(m as u64)),
            }
        } else {
            values[q] * values[m / q]
        };
    }
    Ok(RandomMultiplicativeFn { kind, values })
}

/// Coefficients of `sum_{n=1}^N a_n e(n theta)` for one trial.
pub fn sample_poly(model: RandomModel, n: usize, seed: u64, trial: u64) -> Result<CoefficientVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let coeffs = match model {
        RandomModel::RademacherIid => {
            let mut src = KeyedSource::new(seed, trial);
            (1..=n as u64).map(|i| Complex64::new(src.sign(i), 0.0)).collect()
        }
        RandomModel::Multiplicative(kind) => sample_rmf_trial(kind, n, seed, trial)?.values().to_vec(),
    };
    Ok(CoefficientVector::new(1, coeffs))
}

/// `sqrt(N max(ln N, 1))`; equals `sqrt(N ln N)` for `N >= 3` and `1` at `N = 1`.
pub fn normalizer(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf.ln().max(1.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialMax {
    pub trial: u64,
    pub lo: f64,
    pub hi: f64,
    /// `lo / normalizer(N)`.
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomMaxStats {
    pub model: RandomModel,
    pub n: usize,
    pub trials: Vec<TrialMax>,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

/// Certified maximum of each trial polynomial, normalized by `normalizer(N)`.
pub fn random_poly_max(model: RandomModel, n: usize, trials: usize, seed: u64) -> Result<RandomMaxStats> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter(format!(
            "need N >= 1 and trials >= 1, got N={n}, trials={trials}"
        )));
    }
    let norm = normalizer(n);
    let rows: Vec<TrialMax> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let cv = sample_poly(model, n, seed, trial)?;
            let cm = certified_max(&cv, DEFAULT_EPS)?;
            Ok(TrialMax {
                trial,
                lo: cm.lo,
                hi: cm.hi,
                normalized: cm.lo / norm,
            })
        })
        .collect::<Result<_>>()?;
    let mut sorted: Vec<f64> = rows.iter().map(|r| r.normalized).collect();
    sorted.sort_by(f64::total_cmp);
    Ok(RandomMaxStats {
        model,
        n,
        min: sorted[0],
        median: median(&sorted),
        max: sorted[sorted.len() - 1],
        trials: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::Kernel;

    #[test]
    fn spf_sieve() {
        let spf = smallest_prime_factors(30);
        assert_eq!(spf[2], 2);
        assert_eq!(spf[9], 3);
        assert_eq!(spf[29], 29);
        assert_eq!(spf[30], 2);
        assert_eq!(spf[25], 5);
    }

    #[test]
    fn multiplicative_identities() {
        for seed in 0..20 {
            for kind in [MultiplicativeKind::Rademacher, MultiplicativeKind::Steinhaus] {
                let f = sample_rmf(kind, 200, seed).unwrap();
                assert_eq!(f.value(1), Complex64::new(1.0, 0.0));
                assert_eq!(f.value(6), f.value(2) * f.value(3));
                for m in 1..=14usize {
                    for n in 1..=14usize {
                        assert!((f.value(m * n) - f.value(m) * f.value(n)).norm() < 1e-12);
                    }
                }
                assert!(f.values().iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
            }
            let f = sample_rmf(MultiplicativeKind::Rademacher, 10, seed).unwrap();
            assert_eq!(f.value(4), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn rademacher_signs_vary_with_seed() {
        let signs: Vec<f64> = (0..64)
            .map(|s| sample_rmf(MultiplicativeKind::Rademacher, 2, s).unwrap().value(2).re)
            .collect();
        assert!(signs.contains(&1.0) && signs.contains(&-1.0));
    }

    #[test]
    fn draws_are_keyed_not_sequential() {
        // the prefix of a longer sample equals the shorter sample
        let a = sample_poly(RandomModel::RademacherIid, 50, 9, 3).unwrap();
        let b = sample_poly(RandomModel::RademacherIid, 80, 9, 3).unwrap();
        assert_eq!(a.coeffs(), &b.coeffs()[..50]);
        let c = sample_poly(RandomModel::RademacherIid, 50, 9, 4).unwrap();
        assert_ne!(a.coeffs(), c.coeffs());
    }

    #[test]
    fn parseval_on_samples() {
        for model in [
            RandomModel::RademacherIid,
            RandomModel::Multiplicative(MultiplicativeKind::Steinhaus),
        ] {
            let cv = sample_poly(model, 300, 1, 0).unwrap();
            let g = cv.grid(0.0, 1024, Kernel::Radix2).unwrap();
            assert!((g.mean_square() - 300.0).abs() <= 1e-6 * 300.0);
        }
    }

    #[test]
    fn single_coefficient_max_is_one() {
        for model in [
            RandomModel::RademacherIid,
            RandomModel::Multiplicative(MultiplicativeKind::Rademacher),
        ] {
            let st = random_poly_max(model, 1, 5, 0).unwrap();
            for r in &st.trials {
                assert!((r.lo - 1.0).abs() < 1e-12);
                assert!((r.normalized - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stats_deterministic() {
        let model = RandomModel::Multiplicative(MultiplicativeKind::Rademacher);
        let a = random_poly_max(model, 256, 8, 17).unwrap();
        let b = random_poly_max(model, 256, 8, 17).unwrap();
        assert_eq!(a, b);
        assert!(a.min <= a.median && a.median <= a.max);
    }

    #[test]
    fn model_names_round_trip() {
        for m in [
            RandomModel::RademacherIid,
            RandomModel::Multiplicative(MultiplicativeKind::Rademacher),
            RandomModel::Multiplicative(MultiplicativeKind::Steinhaus),
        ] {
            assert_eq!(RandomModel::parse(m.name()), Some(m));
        }
    }
}
