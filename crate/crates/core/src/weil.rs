//! Complete character sums `sum_{k mod p} chi(P(k))` over polynomials given
//! by their linear factors, and checks of the bound
//! `|sum| <= (m - 1) sqrt(p)` for `P` with `m` distinct roots that is not a
//! `d`-th power.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::accum::ComplexSum;
use crate::charcore::{build_modulus, e_ratio, DirichletCharacter};
use crate::error::{Error, Result};

/// `P(x) = prod_i (x - root_i)^mult_i` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    factors: Vec<(u64, u64)>,
}

impl FactoredPoly {
    /// Roots are reduced mod `p` and must be distinct; multiplicities must be positive.
    pub fn new(p: u64, factors: &[(i64, u64)]) -> Result<Self> {
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(factors.len());
        for &(r, j) in factors {
            if j == 0 {
                return Err(Error::InvalidParameter(format!(
                    "root {r} has multiplicity zero"
                )));
            }
            let r = r.rem_euclid(p as i64) as u64;
            if out.iter().any(|&(s, _)| s == r) {
                return Err(Error::RepeatedRoot(r));
            }
            out.push((r, j));
        }
        Ok(Self { factors: out })
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    /// Number of distinct roots.
    pub fn distinct_roots(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(_, j)| j).sum()
    }

    /// `P(x + c)`.
    pub fn translate(&self, p: u64, c: i64) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|&(r, j)| ((r as i64 - c).rem_euclid(p as i64) as u64, j))
            .collect();
        Self { factors }
    }
}

/// Exponent of `chi(P(k))` in `[0, d)`, or `None` if `P(k) = 0`.
fn exponent_at(chi: &DirichletCharacter, poly: &FactoredPoly, k: u64) -> Option<u64> {
    let p = chi.p();
    let d = chi.order();
    let mut acc = 0u64;
    for &(r, j) in &poly.factors {
        let a = chi.exponent_reduced((k + p - r) % p)?;
        acc = (acc + a * (j % d)) % d;
    }
    Some(acc)
}

/// Number of `k mod p` with `chi(P(k)) = e(a/d)`, for each `a < d`.
pub fn value_counts(chi: &DirichletCharacter, poly: &FactoredPoly) -> Vec<u64> {
    let mut counts = vec![0u64; chi.order() as usize];
    for k in 0..chi.p() {
        if let Some(a) = exponent_at(chi, poly, k) {
            counts[a as usize] += 1;
        }
    }
    counts
}

fn counts_to_sum(counts: &[u64]) -> Complex64 {
    let d = counts.len() as u64;
    counts
        .iter()
        .enumerate()
        .map(|(a, &c)| e_ratio(a as u64, d) * c as f64)
        .collect::<ComplexSum>()
        .value()
}

/// `sum_{k=0}^{p-1} chi(P(k))`.
pub fn poly_char_sum(chi: &DirichletCharacter, poly: &FactoredPoly) -> Complex64 {
    counts_to_sum(&value_counts(chi, poly))
}

/// True iff every multiplicity is divisible by `d`.
pub fn is_dth_power(poly: &FactoredPoly, d: u64) -> bool {
    assert!(d >= 1, "d must be positive");
    poly.factors.iter().all(|&(_, j)| j % d == 0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

const SLACK: f64 = 1e-6;

pub fn weil_check(chi: &DirichletCharacter, poly: &FactoredPoly) -> Result<WeilCheck> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    if is_dth_power(poly, chi.order()) {
        return Err(Error::DthPower { d: chi.order() });
    }
    let lhs = poly_char_sum(chi, poly).norm();
    let rhs = (poly.distinct_roots() as f64 - 1.0) * (chi.p() as f64).sqrt();
    Ok(WeilCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WeilSweep {
    pub p: u64,
    pub sums_checked: u64,
    pub violations: u64,
    /// Largest `lhs / ((m-1) sqrt p)` seen with `m >= 2`.
    pub worst_ratio: f64,
}

/// Checks the bound for every non-principal `chi` mod `p` and every `P`
/// with at most `max_roots <= 3` distinct roots and multiplicities below
/// the order of `chi`.
///
/// Two reductions keep this exhaustive at modest cost. Translating and
/// dilating `k` permutes `F_p` and multiplies the sum by a unimodular
/// constant, so the roots may be normalised to `{0}`, `{0, 1}` or
/// `{0, 1, r}`. And `chi(P(k))` only depends on the residues
/// `c j_i mod (p-1)`, which range over every triple of nonzero residues as
/// `chi` and the multiplicities vary.
pub fn weil_sweep(p: u64, max_roots: usize) -> Result<WeilSweep> {
    assert!((1..=3).contains(&max_roots), "max_roots must be 1, 2 or 3");
    let modulus = build_modulus(p)?;
    let phi = p - 1;
    let sqrt_p = (p as f64).sqrt();
    let units: Vec<Complex64> = (0..phi).map(|a| e_ratio(a, phi)).collect();
    let log = |n: u64| modulus.dlog(n as i64);

    let mut total = WeilSweep {
        p,
        ..Default::default()
    };
    let mut merge = |s: WeilSweep| {
        total.sums_checked += s.sums_checked;
        total.violations += s.violations;
        total.worst_ratio = total.worst_ratio.max(s.worst_ratio);
    };

    // one root: sum over k of e(a log(k) / phi) vanishes for every a != 0
    {
        let logs: Vec<u64> = (1..p).map(|k| log(k).unwrap()).collect();
        let mut s = WeilSweep::default();
        for a in 1..phi {
            let sum: Complex64 = logs.iter().map(|&l| units[((a * l) % phi) as usize]).sum();
            s.sums_checked += 1;
            if sum.norm() > SLACK {
                s.violations += 1;
            }
        }
        merge(s);
    }

    // roots {0, 1} and {0, 1, r}
    let third_roots: Vec<Option<u64>> = if max_roots >= 3 {
        (2..p).map(Some).collect()
    } else {
        Vec::new()
    };
    let mut root_sets: Vec<Option<u64>> = Vec::new();
    if max_roots >= 2 {
        root_sets.push(None);
    }
    root_sets.extend(third_roots);

    let parts: Vec<WeilSweep> = root_sets
        .par_iter()
        .map(|&third| {
            let mut s = WeilSweep::default();
            // rows (L(k), L(k-1), L(k-r)) for k avoiding every root
            let rows: Vec<(u64, u64, u64)> = (0..p)
                .filter_map(|k| {
                    let l0 = log(k)?;
                    let l1 = log((k + p - 1) % p)?;
                    let l2 = match third {
                        Some(r) => log((k + p - r) % p)?,
                        None => 0,
                    };
                    Some((l0, l1, l2))
                })
                .collect();
            let m = if third.is_some() { 3.0 } else { 2.0 };
            let rhs = (m - 1.0) * sqrt_p;
            let a3_range: Vec<u64> = if third.is_some() { (1..phi).collect() } else { vec![0] };
            let mut partial = vec![0u64; rows.len()];
            let mut running = vec![0u64; rows.len()];
            for &a3 in &a3_range {
                for a2 in 1..phi {
                    for (slot, &(_, l1, l2)) in partial.iter_mut().zip(&rows) {
                        *slot = (a2 * l1 + a3 * l2) % phi;
                    }
                    running.iter_mut().for_each(|x| *x = 0);
                    for _a1 in 1..phi {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for ((run, &(l0, _, _)), &part) in
                            running.iter_mut().zip(&rows).zip(&partial)
                        {
                            *run += l0;
                            if *run >= phi {
                                *run -= phi;
                            }
                            let mut idx = *run + part;
                            if idx >= phi {
                                idx -= phi;
                            }
                            acc += units[idx as usize];
                        }
                        let lhs = acc.norm();
                        s.sums_checked += 1;
                        if lhs > rhs + SLACK {
                            s.violations += 1;
                        }
                        s.worst_ratio = s.worst_ratio.max(lhs / rhs);
                    }
                }
            }
            s
        })
        .collect();
    for part in parts {
        merge(part);
    }
    Ok(total)
}
