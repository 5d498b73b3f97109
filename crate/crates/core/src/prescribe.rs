//! Sets of `k` at which the character values `chi(k - l)`, `|l| <= K0`, are
//! prescribed up to a small angular window, together with the weight
//! `W(k)` that detects them and the diagnostics around it.
//!
//! Membership is decided by a direct predicate on exponents. `W(k)` is
//! computed separately from its defining product of geometric sums so that
//! the identity `W(k) = d^(2 K0 + 1) 1_S(k)` on interior `k` is a genuine
//! check rather than a restatement.

use num_complex::Complex64;

use crate::accum::ComplexSum;
use crate::charcore::{e_ratio, DirichletCharacter, RootOfUnity};
use crate::error::{Error, Result};
use crate::sums::{residual_profile, SumSpec};

/// Builds refuse configurations whose predicted set size falls below this.
pub const MIN_PREDICTED_SIZE: f64 = 8.0;

/// `max(1, floor(ln p / (ln ln p)^2))`.
pub fn default_k0(p: u64) -> Result<u64> {
    if p < 17 {
        return Err(Error::InvalidParameter(format!(
            "default K0 needs p >= 17, got {p}"
        )));
    }
    let lp = (p as f64).ln();
    let llp = lp.ln();
    Ok(((lp / (llp * llp)).floor() as u64).max(1))
}

/// Targets `xi_l in mu_d` for `|l| <= K0`, stored as exponents mod `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrescriptionTarget {
    k0: u64,
    d: u64,
    xi: Vec<u64>,
}

impl PrescriptionTarget {
    /// `xi[i]` is the exponent of `xi_l` for `l = i - K0`.
    pub fn new(d: u64, k0: u64, xi: Vec<u64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("order d={d} must be >= 2")));
        }
        if xi.len() as u64 != 2 * k0 + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} targets, got {}",
                2 * k0 + 1,
                xi.len()
            )));
        }
        let xi = xi.into_iter().map(|a| a % d).collect();
        Ok(Self { k0, d, xi })
    }

    /// All targets equal to 1.
    pub fn trivial(d: u64, k0: u64) -> Self {
        Self::new(d, k0, vec![0; (2 * k0 + 1) as usize]).expect("valid shape")
    }

    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    /// Half-width of the admissible window, `floor(d / 20)`.
    pub fn window(&self) -> u64 {
        self.d / 20
    }

    pub fn exponents(&self) -> &[u64] {
        &self.xi
    }

    pub fn xi(&self, l: i64) -> RootOfUnity {
        RootOfUnity::new(self.xi[(l + self.k0 as i64) as usize] as i64, self.d)
    }

    /// `p ((2 floor(d/20) + 1) / d)^(2 K0 + 1)`.
    pub fn predicted_size(&self, p: u64) -> f64 {
        let ratio = (2 * self.window() + 1) as f64 / self.d as f64;
        p as f64 * ratio.powi((2 * self.k0 + 1) as i32)
    }

    fn ls(&self) -> impl Iterator<Item = i64> {
        let k0 = self.k0 as i64;
        -k0..=k0
    }
}

fn check_compatible(chi: &DirichletCharacter, target: &PrescriptionTarget) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    if chi.order() != target.d {
        return Err(Error::InvalidParameter(format!(
            "targets live in mu_{} but the character has order {}",
            target.d,
            chi.order()
        )));
    }
    Ok(())
}

/// Signed distance between exponents `a` and `b` in `Z/d`, in `(-d/2, d/2]`.
fn exponent_offset(a: u64, b: u64, d: u64) -> i64 {
    let diff = (a + d - b) % d;
    if 2 * diff > d {
        diff as i64 - d as i64
    } else {
        diff as i64
    }
}

/// `chi(k - l) = xi_l e(a/d)` for some `|a| <= floor(d/20)`, for every `|l| <= K0`.
pub fn is_member(chi: &DirichletCharacter, target: &PrescriptionTarget, k: u64) -> bool {
    let w = target.window() as i64;
    target.ls().all(|l| match chi.exponent(k as i64 - l) {
        Some(a) => exponent_offset(a, target.xi(l).numerator(), target.d).abs() <= w,
        None => false,
    })
}

/// `W(k) = prod_{|l|<=K0} sum_{|a|<=d/20} sum_{j<d} (conj(chi)(k-l) xi_l e(a/d))^j`,
/// evaluated term by term and rounded to the integer it must equal.
pub fn weight_w(chi: &DirichletCharacter, target: &PrescriptionTarget, k: u64) -> Result<u128> {
    check_compatible(chi, target)?;
    let d = target.d;
    let w = target.window() as i64;
    let mut product: u128 = 1;
    for l in target.ls() {
        let factor = match chi.exponent(k as i64 - l) {
            // only the j = 0 term survives when chi vanishes
            None => (2 * w + 1) as f64,
            Some(c) => {
                let xi = target.xi(l).numerator();
                let mut acc = ComplexSum::new();
                for a in -w..=w {
                    let z = (d - c + xi + a.rem_euclid(d as i64) as u64) % d;
                    for j in 0..d {
                        acc.add(e_ratio(j * z, d));
                    }
                }
                let v = acc.value();
                let r = v.re.round();
                if (v.re - r).abs() > 1e-6 || v.im.abs() > 1e-6 {
                    return Err(Error::InvalidParameter(format!(
                        "weight factor {v} is not an integer"
                    )));
                }
                r
            }
        };
        product = product
            .checked_mul(factor as u128)
            .ok_or(Error::Overflow("W(k)"))?;
    }
    Ok(product)
}

/// `d^(2 K0 + 1)`.
pub fn full_weight(target: &PrescriptionTarget) -> Result<u128> {
    (target.d as u128)
        .checked_pow((2 * target.k0 + 1) as u32)
        .ok_or(Error::Overflow("d^(2K0+1)"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrescriptionSet {
    pub members: Vec<u64>,
    pub predicted: f64,
}

impl PrescriptionSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    /// Measured over predicted size.
    pub fn size_ratio(&self) -> f64 {
        self.members.len() as f64 / self.predicted
    }
}

/// Exhaustive scan of `k = 0..p` with the membership predicate.
pub fn build_s(chi: &DirichletCharacter, target: &PrescriptionTarget) -> Result<PrescriptionSet> {
    build_s_with_minimum(chi, target, MIN_PREDICTED_SIZE)
}

pub fn build_s_with_minimum(
    chi: &DirichletCharacter,
    target: &PrescriptionTarget,
    minimum: f64,
) -> Result<PrescriptionSet> {
    check_compatible(chi, target)?;
    let predicted = target.predicted_size(chi.p());
    if predicted < minimum {
        return Err(Error::PrescriptionTooSmall { predicted, minimum });
    }
    let members: Vec<u64> = (0..chi.p()).filter(|&k| is_member(chi, target, k)).collect();
    if members.is_empty() {
        return Err(Error::EmptyPrescription { predicted });
    }
    Ok(PrescriptionSet { members, predicted })
}

/// `(sum_k W(k), p (2 floor(d/20) + 1)^(2 K0 + 1))`.
pub fn sum_w_diagnostic(chi: &DirichletCharacter, target: &PrescriptionTarget) -> Result<(u128, f64)> {
    check_compatible(chi, target)?;
    let mut total: u128 = 0;
    for k in 0..chi.p() {
        total = total
            .checked_add(weight_w(chi, target, k)?)
            .ok_or(Error::Overflow("sum of W(k)"))?;
    }
    let predicted =
        chi.p() as f64 * ((2 * target.window() + 1) as f64).powi((2 * target.k0 + 1) as i32);
    Ok((total, predicted))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSelection {
    pub k: u64,
    /// `|F((k+t)/p) - F~_{K0}(k)|` at the chosen `k`.
    pub residual: f64,
    /// Mean residual over the prescription set.
    pub mean_residual_in_s: f64,
    /// Median residual over all `k`.
    pub median_residual: f64,
    pub set: PrescriptionSet,
}

/// The member of `S` where the `K0`-truncated approximation is closest.
pub fn select_k(s: &SumSpec, target: &PrescriptionTarget, t: f64) -> Result<KSelection> {
    let set = build_s(s.character(), target)?;
    let residuals = residual_profile(s, t, target.k0.max(1))?;
    let mut best = (f64::INFINITY, 0u64);
    let mut sum = 0.0;
    for &k in &set.members {
        let r = residuals[k as usize];
        sum += r;
        if r < best.0 {
            best = (r, k);
        }
    }
    let mut sorted = residuals.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    Ok(KSelection {
        k: best.1,
        residual: best.0,
        mean_residual_in_s: sum / set.len() as f64,
        median_residual: median,
        set,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffDiagonal {
    /// `sum_{K0 < k < p - K0} W(k) conj(chi)(k - l1) chi(k - l2)`.
    pub sum: Complex64,
    pub lhs: f64,
    /// `K0 sqrt(p) (d ln d)^(2 K0 + 1)`.
    pub rhs_scale: f64,
}

impl OffDiagonal {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs_scale
    }
}

pub fn offdiag_diagnostic(
    chi: &DirichletCharacter,
    target: &PrescriptionTarget,
    l1: i64,
    l2: i64,
) -> Result<OffDiagonal> {
    check_compatible(chi, target)?;
    let p = chi.p() as i64;
    let k0 = target.k0 as i64;
    let admissible = |l: i64| k0 < l.abs() && l.abs() < p - k0;
    if l1 == l2 || !admissible(l1) || !admissible(l2) {
        return Err(Error::InvalidParameter(format!(
            "need l1 != l2 with K0 < |l| < p - K0, got l1={l1}, l2={l2}"
        )));
    }
    let mut acc = ComplexSum::new();
    for k in (k0 + 1)..(p - k0) {
        let w = weight_w(chi, target, k as u64)?;
        if w == 0 {
            continue;
        }
        acc.add(chi.eval_conj(k - l1) * chi.eval(k - l2) * w as f64);
    }
    let sum = acc.value();
    let d = target.d as f64;
    let rhs_scale =
        target.k0.max(1) as f64 * (p as f64).sqrt() * (d * d.ln()).powi((2 * k0 + 1) as i32);
    Ok(OffDiagonal {
        sum,
        lhs: sum.norm(),
        rhs_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charcore::{build_modulus, characters_of_order};

    #[test]
    fn default_k0_values() {
        assert_eq!(default_k0(10007).unwrap(), 1);
        assert_eq!(default_k0(1_000_003).unwrap(), 2);
        // ln 17 / (ln ln 17)^2 = 2.61
        assert_eq!(default_k0(17).unwrap(), 2);
        assert_eq!(default_k0(499).unwrap(), 1);
        assert!(default_k0(13).is_err());
    }

    #[test]
    fn k0_zero_legendre_is_residues() {
        let p = 101;
        let chi = build_modulus(p).unwrap().legendre();
        let target = PrescriptionTarget::trivial(2, 0);
        let set = build_s(&chi, &target).unwrap();
        assert_eq!(set.len() as u64, (p - 1) / 2);
        for &k in &set.members {
            assert_eq!(chi.exponent(k as i64), Some(0));
        }
    }

    #[test]
    fn legendre_three_consecutive_residues() {
        let p = 10007;
        let chi = build_modulus(p).unwrap().legendre();
        let target = PrescriptionTarget::trivial(2, 1);
        let set = build_s(&chi, &target).unwrap();
        let frac = set.len() as f64 / p as f64;
        assert!((1.0 / 32.0..=0.5).contains(&frac), "{frac}");
        for &k in set.members.iter().step_by(97) {
            assert_eq!(weight_w(&chi, &target, k).unwrap(), 8);
        }
    }

    #[test]
    fn weight_identity_and_boundary() {
        let p = 211;
        let m = build_modulus(p).unwrap();
        for d in [2u64, 3, 5, 7] {
            let chi = characters_of_order(&m, d).remove(0);
            let k0 = 1;
            let target = PrescriptionTarget::new(d, k0, vec![1 % d, 0, d - 1]).unwrap();
            let full = full_weight(&target).unwrap();
            for k in 0..p {
                let w = weight_w(&chi, &target, k).unwrap();
                if k > k0 && k < p - k0 {
                    let expected = if is_member(&chi, &target, k) { full } else { 0 };
                    assert_eq!(w, expected, "d={d} k={k}");
                } else {
                    assert!(w <= full);
                    assert!(!is_member(&chi, &target, k));
                }
            }
        }
    }

    #[test]
    fn window_opens_at_order_twenty() {
        let p = 461; // 460 = 4 * 5 * 23, has characters of order 20
        let m = build_modulus(p).unwrap();
        let chi = characters_of_order(&m, 20).remove(0);
        let target = PrescriptionTarget::trivial(20, 0);
        assert_eq!(target.window(), 1);
        let set = build_s(&chi, &target).unwrap();
        // exponents 19, 0, 1 admitted: three of the twenty classes
        assert_eq!(set.len() as u64, 3 * (p - 1) / 20);
        let full = full_weight(&target).unwrap();
        for k in 1..p {
            let w = weight_w(&chi, &target, k).unwrap();
            assert_eq!(w, if set.contains(k) { full } else { 0 });
        }
    }

    #[test]
    fn sum_w_for_k0_zero() {
        let p = 1009;
        let chi = build_modulus(p).unwrap().legendre();
        let target = PrescriptionTarget::trivial(2, 0);
        let (measured, predicted) = sum_w_diagnostic(&chi, &target).unwrap();
        // 2 |{k : chi(k) = 1}| plus the k = 0 boundary term
        assert_eq!(measured, (p - 1) as u128 + 1);
        assert_eq!(predicted, p as f64);
    }

    #[test]
    fn rejects_mismatched_or_tiny() {
        let m = build_modulus(101).unwrap();
        let chi = m.legendre();
        let wrong = PrescriptionTarget::trivial(5, 1);
        assert!(build_s(&chi, &wrong).is_err());
        let tiny = PrescriptionTarget::trivial(2, 3);
        assert!(matches!(
            build_s(&chi, &tiny),
            Err(Error::PrescriptionTooSmall { .. })
        ));
        assert!(PrescriptionTarget::new(2, 1, vec![0, 0]).is_err());
        assert!(PrescriptionTarget::new(1, 0, vec![0]).is_err());
    }

    #[test]
    fn offdiag_preconditions_and_reality() {
        let p = 1009;
        let chi = build_modulus(p).unwrap().legendre();
        let target = PrescriptionTarget::trivial(2, 1);
        assert!(offdiag_diagnostic(&chi, &target, 5, 5).is_err());
        assert!(offdiag_diagnostic(&chi, &target, 1, 5).is_err());
        assert!(offdiag_diagnostic(&chi, &target, 5, 1008).is_err());
        let od = offdiag_diagnostic(&chi, &target, 5, -17).unwrap();
        assert!(od.sum.im.abs() < 1e-9);
        assert!(od.rhs_scale > 0.0);
    }
}
