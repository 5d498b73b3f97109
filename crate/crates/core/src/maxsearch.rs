//! Certified maximization of `|F(theta)|` over `[0, 1)`, plus `L^q` norms
//! and the Mahler measure, all from equispaced grid values.
//!
//! The bracket rests on Bernstein's inequality. After multiplying by a
//! unimodular `e(-c theta)` that centres the frequency band, a sum with
//! frequencies spread over `D = max - min` is of exponential type `pi D`,
//! so `sup |F'| <= pi D sup |F|`. Every `theta` lies within `1/(2M)` of a
//! grid point, hence
//!
//! ```text
//! sup |F| <= max_j |F(j/M)| / (1 - pi D / (2M)).
//! ```
//!
//! The bound is evaluated on every dyadic sub-grid of the final grid and
//! the smallest one is kept, which makes refinement monotone.

use rayon::prelude::*;

use crate::accum::Neumaier;
use crate::error::{Error, Result};
use crate::fft::{check_len, next_pow2};
use crate::sums::{kt_grid, CoefficientVector, Kernel, SumSpec};

/// Relative gap target used when none is given (`hi/lo <= 16/15`).
pub const DEFAULT_EPS: f64 = 1.0 / 16.0;

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedMax {
    /// Largest grid value, a lower bound for the supremum.
    pub lo: f64,
    /// Certified upper bound for the supremum.
    pub hi: f64,
    /// Grid index of `lo` (smallest index on ties).
    pub argmax: usize,
    /// Grid size.
    pub m: usize,
    /// Frequency spread `D` of the polynomial.
    pub spread: u64,
}

impl CertifiedMax {
    pub fn theta(&self) -> f64 {
        self.argmax as f64 / self.m as f64
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn gap(&self) -> f64 {
        if self.hi == 0.0 {
            0.0
        } else {
            1.0 - self.lo / self.hi
        }
    }
}

/// `(value, index)` of the maximum, smallest index on ties; deterministic
/// under any chunk scheduling since the reduction is exact.
pub fn argmax(values: &[f64]) -> (f64, usize) {
    values
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut best = (f64::NEG_INFINITY, 0usize);
            for (i, &v) in chunk.iter().enumerate() {
                if v > best.0 {
                    best = (v, c * CHUNK + i);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Grid size `M` (a power of two) with `pi D / (2M) <= eps`.
pub fn grid_size_for(spread: u64, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidParameter(format!("eps={eps} must lie in (0, 1/2)")));
    }
    let need = (std::f64::consts::PI * spread as f64 / (2.0 * eps)).ceil();
    if need > crate::fft::MAX_GRID_LEN as f64 {
        return Err(Error::GridTooLarge {
            requested: need as usize,
            cap: crate::fft::MAX_GRID_LEN,
        });
    }
    let m = next_pow2(need as usize);
    check_len(m)?;
    Ok(m)
}

fn loss_factor(spread: u64, m: usize) -> f64 {
    1.0 - std::f64::consts::PI * spread as f64 / (2.0 * m as f64)
}

/// Bracket from the moduli `|F(j/M)|`, `j < M`.
pub fn bracket_from_moduli(moduli: &[f64], spread: u64) -> Result<CertifiedMax> {
    let m = moduli.len();
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    if loss_factor(spread, m) <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "grid of size {m} is too coarse for frequency spread {spread}"
        )));
    }
    let (lo, idx) = argmax(moduli);
    let mut hi = f64::INFINITY;
    let mut stride = 1;
    while stride <= m {
        let level = m / stride;
        let factor = loss_factor(spread, level);
        if factor <= 0.0 {
            break;
        }
        let level_max = moduli.iter().step_by(stride).fold(0.0f64, |a, &b| a.max(b));
        hi = hi.min(level_max / factor);
        stride *= 2;
    }
    Ok(CertifiedMax {
        lo,
        hi,
        argmax: idx,
        m,
        spread,
    })
}

/// Certified bracket on a caller-chosen power-of-two grid.
pub fn certified_max_on_grid(cv: &CoefficientVector, m: usize) -> Result<CertifiedMax> {
    let grid = cv.grid(0.0, m, Kernel::Radix2)?;
    let moduli: Vec<f64> = grid.values.par_iter().map(|v| v.norm()).collect();
    bracket_from_moduli(&moduli, cv.spread())
}

/// Bracket `[lo, hi]` around `sup |F|` with `hi/lo <= 1/(1 - eps)`.
pub fn certified_max(cv: &CoefficientVector, eps: f64) -> Result<CertifiedMax> {
    let m = grid_size_for(cv.spread(), eps)?;
    certified_max_on_grid(cv, m)
}

pub fn certified_max_sum(s: &SumSpec, eps: f64) -> Result<CertifiedMax> {
    certified_max(&s.coefficients(), eps)
}

/// Maximum of `|F((k + t)/p)|` over `k`, a lower bound for the global maximum.
pub fn max_decomposed(s: &SumSpec, t: f64) -> Result<(u64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t={t} must lie in (0, 1)")));
    }
    let values = kt_grid(s, t)?;
    let moduli: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let (v, k) = argmax(&moduli);
    Ok((k as u64, v))
}

fn norm_grid(cv: &CoefficientVector, m: usize) -> Result<Vec<f64>> {
    if !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    if (m as u64) <= 2 * cv.spread() {
        return Err(Error::InvalidParameter(format!(
            "grid size {m} must exceed twice the frequency spread {}",
            cv.spread()
        )));
    }
    let grid = cv.grid(0.0, m, Kernel::Radix2)?;
    Ok(grid.values.iter().map(|v| v.norm()).collect())
}

/// `( (1/M) sum_j |F(j/M)|^q )^(1/q)`.
pub fn lq_norm(cv: &CoefficientVector, q: f64, m: usize) -> Result<f64> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "q={q} must be positive and finite (use mahler_measure for q -> 0)"
        )));
    }
    let moduli = norm_grid(cv, m)?;
    let top = moduli.iter().fold(0.0f64, |a, &b| a.max(b));
    if top == 0.0 {
        return Ok(0.0);
    }
    let mut acc = Neumaier::new();
    for v in &moduli {
        acc.add((v / top).powf(q));
    }
    Ok(top * (acc.value() / m as f64).powf(1.0 / q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MahlerMeasure {
    pub value: f64,
    /// Grid points with `|F| < 1e-300`, left out of the average.
    pub excluded: usize,
    pub m: usize,
}

/// `exp( mean_j log |F(j/M)| )`, the `q -> 0` limit of the `L^q` norms.
pub fn mahler_measure(cv: &CoefficientVector, m: usize) -> Result<MahlerMeasure> {
    let moduli = norm_grid(cv, m)?;
    let mut acc = Neumaier::new();
    let mut excluded = 0;
    for &v in &moduli {
        if v < 1e-300 {
            excluded += 1;
        } else {
            acc.add(v.ln());
        }
    }
    if excluded * 100 > m {
        return Err(Error::TooManyZeros { excluded, total: m });
    }
    Ok(MahlerMeasure {
        value: (acc.value() / (m - excluded) as f64).exp(),
        excluded,
        m,
    })
}
