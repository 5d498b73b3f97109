//! Constructive lower bound for `max |F|`: pick `t`, prescribe the
//! targets `xi_l` to align the main-term weights, find a `k` in the
//! prescription set where the truncated approximation is accurate, and
//! compare `|F~|` with its analytic minorant.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::charcore::DirichletCharacter;
use crate::error::{Error, Result};
use crate::prescribe::{default_k0, is_member, select_k, PrescriptionTarget};
use crate::sums::{approx_weights, direct_sum_kt, truncated_approx, SumSpec};

/// `cos(pi/3 + 2 pi/20)`: worst alignment left after rounding to `mu_d`
/// with `d >= 3` and the `|a| <= d/20` window.
pub const ALIGNMENT_COS: f64 = 0.207_911_690_817_759_4;

/// Distance from `u` to the nearest point of `(1/2) Z`.
pub fn dist_half_integers(u: f64) -> f64 {
    (u - (2.0 * u).round() / 2.0).abs()
}

/// Scans `t = 0.10, 0.11, ..., 0.90` and returns the value maximizing
/// `min(dist((alpha+beta) t, Z/2), dist((beta-alpha) t, Z/2))`,
/// smallest `t` on ties.
pub fn choose_t(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha >= 0.0 && beta > alpha) {
        return Err(Error::InvalidInterval { alpha, beta });
    }
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 10..=90 {
        let t = i as f64 / 100.0;
        let score = dist_half_integers((alpha + beta) * t).min(dist_half_integers((beta - alpha) * t));
        if score > best.0 + 1e-12 {
            best = (score, t);
        }
    }
    if best.0 <= 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "no admissible t in [0.1, 0.9] for alpha={alpha}, beta={beta}"
        )));
    }
    Ok(best.1)
}

const ZERO_WEIGHT: f64 = 1e-14;

/// Exponent `a` of the element `e(a/d)` nearest in angle to `w`; zero
/// for a vanishing `w`.
pub fn nearest_root_exponent(w: Complex64, d: u64) -> u64 {
    if w.norm() <= ZERO_WEIGHT {
        return 0;
    }
    let turns = w.arg() / (2.0 * PI);
    ((turns * d as f64).round() as i64).rem_euclid(d as i64) as u64
}

/// Targets aligning each weight `w_l` with `conj(xi_l)`.
///
/// For `d >= 3`, `xi_l` is the element of `mu_d` nearest in angle to `w_l`
/// (`arg 0 = 0`). For real characters `xi_l` is the sign of
/// `(cos 2 pi beta (l+t) - cos 2 pi alpha (l+t)) / (l+t)` with `sgn 0 = 1`.
pub fn choose_xi(s: &SumSpec, t: f64, k0: u64) -> Result<PrescriptionTarget> {
    let chi = s.character();
    let d = chi.order();
    if d < 2 {
        return Err(Error::PrincipalCharacter);
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t={t} must lie in (0, 1)")));
    }
    let kk = k0 as i64;
    let xi = if d == 2 {
        (-kk..=kk)
            .map(|l| {
                let x = l as f64 + t;
                let v = ((2.0 * PI * s.beta() * x).cos() - (2.0 * PI * s.alpha() * x).cos()) / x;
                if v < -ZERO_WEIGHT {
                    1
                } else {
                    0
                }
            })
            .collect()
    } else {
        approx_weights(s, t, k0)
            .iter()
            .map(|&w| nearest_root_exponent(w, d))
            .collect()
    };
    PrescriptionTarget::new(d, k0, xi)
}

/// Residual angle of `w_l conj(xi_l)`, in radians.
pub fn alignment_angles(s: &SumSpec, t: f64, target: &PrescriptionTarget) -> Vec<f64> {
    let k0 = target.k0() as i64;
    approx_weights(s, t, target.k0())
        .iter()
        .zip(-k0..=k0)
        .map(|(w, l)| {
            if w.norm() <= ZERO_WEIGHT {
                0.0
            } else {
                (w * target.xi(l).conj().to_complex()).arg()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeLower {
    pub value: Complex64,
    pub minorant: f64,
}

/// Analytic lower bound for `|F~_k|` valid for every `k` in the set.
///
/// For `d >= 3`: `(sqrt p / 2 pi) cos(pi/3 + pi/10) sum |w_l|`. For real
/// characters the aligned sum has real part `sum |Re w_l|`, giving
/// `(sqrt p / 2 pi) sum |cos 2 pi beta (l+t) - cos 2 pi alpha (l+t)| / |l+t|`.
pub fn minorant(s: &SumSpec, t: f64, k0: u64) -> f64 {
    let weights = approx_weights(s, t, k0);
    let scale = (s.p() as f64).sqrt() / (2.0 * PI);
    if s.character().order() == 2 {
        scale * weights.iter().map(|w| w.re.abs()).sum::<f64>()
    } else {
        scale * ALIGNMENT_COS * weights.iter().map(|w| w.norm()).sum::<f64>()
    }
}

pub fn tilde_lower(s: &SumSpec, t: f64, target: &PrescriptionTarget, k: u64) -> Result<TildeLower> {
    if !is_member(s.character(), target, k) {
        return Err(Error::NotInPrescription { k });
    }
    let value = truncated_approx(s, k, t, target.k0())?;
    let bound = minorant(s, t, target.k0());
    if value.norm() < bound * (1.0 - 1e-9) {
        return Err(Error::MinorantViolated {
            value: value.norm(),
            minorant: bound,
        });
    }
    Ok(TildeLower {
        value,
        minorant: bound,
    })
}

/// `sum_{l=1}^{K} |sin(pi (u1 l + c1)) sin(pi (u2 l + c2))| / l`.
pub fn sumcos(u1: f64, u2: f64, c1: f64, c2: f64, big_k: u64) -> Result<f64> {
    for c in [c1, c2] {
        if dist_half_integers(c) < 1e-12 {
            return Err(Error::InvalidParameter(format!("c={c} lies in (1/2)Z")));
        }
    }
    if big_k < 2 {
        return Err(Error::InvalidParameter("K must be >= 2".into()));
    }
    let mut acc = crate::accum::Neumaier::new();
    for l in 1..=big_k {
        let lf = l as f64;
        let a = (PI * (u1 * lf + c1).rem_euclid(2.0)).sin();
        let b = (PI * (u2 * lf + c2).rem_euclid(2.0)).sin();
        acc.add((a * b).abs() / lf);
    }
    Ok(acc.value())
}

/// Normaliser `ln(K0 + 1)` standing in for `log K0`, which vanishes at the
/// `K0 = 1` reached by every prime below about `10^6`.
pub fn log_k0(k0: u64) -> f64 {
    ((k0 + 1) as f64).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundWitness {
    pub t: f64,
    pub targets: PrescriptionTarget,
    pub k: u64,
    pub set_size: usize,
    pub predicted_set_size: f64,
    /// `|F - F~|` at the chosen `k`.
    pub residual: f64,
    pub tilde_value: Complex64,
    pub minorant: f64,
    /// `|F~| / (sqrt p ln(K0 + 1))`.
    pub lower_ratio: f64,
    /// `F((k + t)/p)`.
    pub value: Complex64,
    /// `|F((k+t)/p)| / (sqrt p ln ln p)`.
    pub final_ratio: f64,
}

impl LowerBoundWitness {
    pub fn theta(&self, p: u64) -> f64 {
        (self.k as f64 + self.t) / p as f64
    }
}

pub fn lower_bound_witness(s: &SumSpec) -> Result<LowerBoundWitness> {
    let t = choose_t(s.alpha(), s.beta())?;
    lower_bound_witness_at(s, t, default_k0(s.p())?)
}

pub fn lower_bound_witness_at(s: &SumSpec, t: f64, k0: u64) -> Result<LowerBoundWitness> {
    let p = s.p();
    let targets = choose_xi(s, t, k0)?;
    let selection = select_k(s, &targets, t)?;
    let k = selection.k;
    let tl = tilde_lower(s, t, &targets, k)?;
    let value = direct_sum_kt(s, k, t);
    let sqrt_p = (p as f64).sqrt();
    Ok(LowerBoundWitness {
        t,
        k,
        set_size: selection.set.len(),
        predicted_set_size: selection.set.predicted,
        residual: selection.residual,
        tilde_value: tl.value,
        minorant: tl.minorant,
        lower_ratio: tl.value.norm() / (sqrt_p * log_k0(k0)),
        value,
        final_ratio: value.norm() / (sqrt_p * (p as f64).ln().ln()),
        targets,
    })
}

/// One character of each requested order, the smallest index of that order.
pub fn representative(
    modulus: &std::sync::Arc<crate::charcore::PrimeModulus>,
    d: u64,
) -> Option<DirichletCharacter> {
    if (modulus.p() - 1) % d != 0 {
        return None;
    }
    let phi = modulus.p() - 1;
    (1..phi)
        .find(|&c| phi / crate::charcore::gcd(c, phi) == d)
        .map(|c| DirichletCharacter::new(modulus.clone(), c).expect("index in range"))
}
