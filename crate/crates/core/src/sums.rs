//! Incomplete mixed character sums
//! `F(theta) = sum_{alpha p < n <= beta p} chi(n) e(n theta)`:
//! direct evaluation, grid evaluation by FFT, and the truncated
//! Gauss-sum approximation at the points `theta = (k + t)/p`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::accum::ComplexSum;
use crate::charcore::{e, gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::fft::{check_len, Chirp, Plan, Radix2, Sign};

/// Fractional part of `a * b`, using an error-free product so that large
/// integer `a` does not destroy the low bits of the phase.
#[inline]
pub(crate) fn frac_product(a: f64, b: f64) -> f64 {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi - hi.floor()) + lo
}

/// `e(a * b)`.
#[inline]
pub(crate) fn e_product(a: f64, b: f64) -> Complex64 {
    e(frac_product(a, b))
}

/// A trigonometric polynomial `sum_i coeffs[i] e((offset + i) theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    offset: u64,
    coeffs: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(offset: u64, coeffs: Vec<Complex64>) -> Self {
        Self { offset, coeffs }
    }

    /// Lowest frequency present.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest frequency present.
    pub fn degree_bound(&self) -> u64 {
        self.offset + self.coeffs.len().saturating_sub(1) as u64
    }

    /// Width of the frequency band, `max - min`.
    pub fn spread(&self) -> u64 {
        self.coeffs.len().saturating_sub(1) as u64
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * e_product((self.offset + i as u64) as f64, theta))
            .collect::<ComplexSum>()
            .value()
    }

    /// Values `v_j = F(j/m + shift)` for `j < m`.
    ///
    /// Coefficients are folded modulo `m` (exact for any band), twisted by
    /// `e(n shift)`, and transformed with the selected kernel.
    pub fn grid(&self, shift: f64, m: usize, kernel: Kernel) -> Result<GridEvaluation> {
        if m == 0 {
            return Err(Error::InvalidParameter("grid size must be positive".into()));
        }
        check_len(m)?;
        let plan = match kernel {
            Kernel::Radix2 => Plan::Radix2(Radix2::new(m)?),
            Kernel::Chirp => Plan::Chirp(Chirp::new(m)?),
        };
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let mm = m as u64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let n = self.offset + i as u64;
            let tw = if shift == 0.0 { c } else { c * e_product(n as f64, shift) };
            buf[(n % mm) as usize] += tw;
        }
        plan.process(&mut buf, Sign::Positive);
        Ok(GridEvaluation {
            m,
            shift,
            values: buf,
            degree_bound: self.degree_bound(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Power-of-two lengths only.
    #[default]
    Radix2,
    /// Any length, via the chirp transform.
    Chirp,
}

#[derive(Debug, Clone)]
pub struct GridEvaluation {
    pub m: usize,
    pub shift: f64,
    pub values: Vec<Complex64>,
    pub degree_bound: u64,
}

impl GridEvaluation {
    pub fn theta(&self, j: usize) -> f64 {
        j as f64 / self.m as f64 + self.shift
    }

    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.m as f64
    }
}

/// The data `(chi, alpha, beta)` defining `F_chi(alpha, beta; .)`.
#[derive(Debug, Clone)]
pub struct SumSpec {
    character: DirichletCharacter,
    alpha: f64,
    beta: f64,
    first: u64,
    last: u64,
    tau: Complex64,
}

impl SumSpec {
    pub fn new(character: DirichletCharacter, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta > alpha) {
            return Err(Error::InvalidInterval { alpha, beta });
        }
        let p = character.p();
        let first = (alpha * p as f64).floor() as u64 + 1;
        let last = (beta * p as f64).floor() as u64;
        if last < first {
            return Err(Error::EmptyRange { alpha, beta, p });
        }
        let tau = gauss_sum(&character)?;
        Ok(Self {
            character,
            alpha,
            beta,
            first,
            last,
            tau,
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.character
    }

    pub fn p(&self) -> u64 {
        self.character.p()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Summation range `first..=last`.
    pub fn range(&self) -> (u64, u64) {
        (self.first, self.last)
    }

    pub fn gauss_sum(&self) -> Complex64 {
        self.tau
    }

    pub fn coefficients(&self) -> CoefficientVector {
        let table = self.character.value_table();
        let p = self.p();
        let coeffs = (self.first..=self.last)
            .map(|n| table[(n % p) as usize])
            .collect();
        CoefficientVector::new(self.first, coeffs)
    }

    /// Number of `n` in the range coprime to `p`.
    pub fn support_size(&self) -> u64 {
        let p = self.p();
        let multiples = self.last / p - (self.first - 1) / p;
        self.last - self.first + 1 - multiples
    }
}

/// `F(theta)` straight from the definition.
pub fn direct_sum(s: &SumSpec, theta: f64) -> Complex64 {
    let chi = s.character();
    let d = chi.order() as f64;
    let p = s.p();
    let mut acc = ComplexSum::new();
    for n in s.first..=s.last {
        if let Some(a) = chi.exponent_reduced(n % p) {
            acc.add(e(a as f64 / d + frac_product(n as f64, theta)));
        }
    }
    acc.value()
}

/// `F((k + t)/p)` with the integer part of the phase reduced exactly.
pub fn direct_sum_kt(s: &SumSpec, k: u64, t: f64) -> Complex64 {
    let chi = s.character();
    let p = s.p();
    let d = chi.order();
    let den = d * p;
    let shift = t / p as f64;
    let k = k % p;
    let mut acc = ComplexSum::new();
    for n in s.first..=s.last {
        if let Some(a) = chi.exponent_reduced(n % p) {
            let nk = ((n % p) * k) % p;
            let exact = ((a * p + nk * d) % den) as f64 / den as f64;
            acc.add(e(exact + n as f64 * shift));
        }
    }
    acc.value()
}

/// `F((j + t)/p * p/m) = F(j/m + t/p)` for `j < m`; `m` must be a power of two.
pub fn grid_evaluate(s: &SumSpec, t: f64, m: usize) -> Result<GridEvaluation> {
    grid_evaluate_with(s, t, m, Kernel::Radix2)
}

pub fn grid_evaluate_with(s: &SumSpec, t: f64, m: usize, kernel: Kernel) -> Result<GridEvaluation> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("twist t={t} must lie in [0, 1)")));
    }
    s.coefficients().grid(t / s.p() as f64, m, kernel)
}

/// Values `F((k + t)/p)` for every `k` in `0..p`, as one length-`p` chirp transform.
pub fn kt_grid(s: &SumSpec, t: f64) -> Result<Vec<Complex64>> {
    Ok(grid_evaluate_with(s, t, s.p() as usize, Kernel::Chirp)?.values)
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t={t} must lie in (0, 1)")));
    }
    Ok(())
}

/// `(e(beta (l+t)) - e(alpha (l+t))) / (l+t)` for `l = -K..=K`, indexed by `l + K`.
pub fn approx_weights(s: &SumSpec, t: f64, big_k: u64) -> Vec<Complex64> {
    let kk = big_k as i64;
    (-kk..=kk)
        .map(|l| {
            let x = l as f64 + t;
            (e_product(s.beta, x) - e_product(s.alpha, x)) / x
        })
        .collect()
}

/// `tau(chi) / (2 pi i)`.
///
/// No `e(alpha k)` phase appears here: summing the geometric series over
/// `(alpha p, beta p]` puts both endpoint phases into the weights already,
/// and a separate `e(alpha k)` factor makes `|F - F~|` grow like `sqrt(p)`
/// whenever `alpha` is not an integer.
fn prefactor(s: &SumSpec) -> Complex64 {
    s.tau / Complex64::new(0.0, 2.0 * PI)
}

/// The `K`-truncated main term
/// `tau(chi)/(2 pi i) sum_{|l| <= K} w_l(t) conj(chi)(k - l)`.
pub fn truncated_approx(s: &SumSpec, k: u64, t: f64, big_k: u64) -> Result<Complex64> {
    check_t(t)?;
    if big_k == 0 {
        return Err(Error::InvalidParameter("truncation radius K must be >= 1".into()));
    }
    let chi = s.character();
    let kk = big_k as i64;
    let weights = approx_weights(s, t, big_k);
    let inner = (-kk..=kk)
        .map(|l| weights[(l + kk) as usize] * chi.eval_conj(k as i64 - l))
        .collect::<ComplexSum>()
        .value();
    Ok(prefactor(s) * inner)
}

/// `truncated_approx` for every `k` in `0..p`.
///
/// Small radii are summed directly; larger ones go through a cyclic
/// convolution of the folded weights with `conj(chi)`.
pub fn truncated_profile(s: &SumSpec, t: f64, big_k: u64) -> Result<Vec<Complex64>> {
    check_t(t)?;
    if big_k == 0 {
        return Err(Error::InvalidParameter("truncation radius K must be >= 1".into()));
    }
    let p = s.p() as usize;
    let weights = approx_weights(s, t, big_k);
    let conj_table: Vec<Complex64> = s.character().value_table().iter().map(|z| z.conj()).collect();
    let kk = big_k as i64;
    let inner: Vec<Complex64> = if 2 * big_k < 64 {
        (0..p as i64)
            .map(|k| {
                (-kk..=kk)
                    .map(|l| {
                        weights[(l + kk) as usize] * conj_table[(k - l).rem_euclid(p as i64) as usize]
                    })
                    .collect::<ComplexSum>()
                    .value()
            })
            .collect()
    } else {
        let plan = Chirp::new(p)?;
        let mut folded = vec![Complex64::new(0.0, 0.0); p];
        for l in -kk..=kk {
            folded[l.rem_euclid(p as i64) as usize] += weights[(l + kk) as usize];
        }
        let mut x = conj_table;
        plan.process(&mut folded, Sign::Negative);
        plan.process(&mut x, Sign::Negative);
        let mut prod: Vec<Complex64> = folded.iter().zip(&x).map(|(a, b)| a * b).collect();
        plan.process(&mut prod, Sign::Positive);
        let scale = 1.0 / p as f64;
        prod.into_iter().map(|z| z * scale).collect()
    };
    let pref = prefactor(s);
    Ok(inner.into_iter().map(|z| pref * z).collect())
}

/// `|F((k+t)/p) - F~_K(k)|` for every `k` in `0..p`.
pub fn residual_profile(s: &SumSpec, t: f64, big_k: u64) -> Result<Vec<f64>> {
    let approx = truncated_profile(s, t, big_k)?;
    let exact = kt_grid(s, t)?;
    Ok(exact.iter().zip(&approx).map(|(a, b)| (a - b).norm()).collect())
}
