//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's character or transform code.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn small_primes(limit: u64) -> Vec<u64> {
    (3..=limit)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn order_mod(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
    }
    k
}

/// Smallest primitive root, found by computing multiplicative orders.
pub fn primitive_root(p: u64) -> u64 {
    (2..p).find(|&g| order_mod(g, p) == p - 1).expect("prime modulus")
}

/// `log[n]` with `g^log[n] = n`, `log[0]` unused.
pub fn dlog_table(p: u64) -> Vec<u64> {
    let g = primitive_root(p);
    let mut log = vec![u64::MAX; p as usize];
    let mut x = 1u64;
    for j in 0..p - 1 {
        log[x as usize] = j;
        x = x * g % p;
    }
    log
}

/// Values of `chi_c(n)`, `n < p`, with `chi_c(g^j) = e(c j / (p-1))`.
pub fn char_table(p: u64, c: u64) -> Vec<Complex64> {
    let log = dlog_table(p);
    (0..p)
        .map(|n| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                let x = (c * log[n as usize] % (p - 1)) as f64 / (p - 1) as f64;
                Complex64::from_polar(1.0, 2.0 * PI * x)
            }
        })
        .collect()
}

pub fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// `sum_{n in (lo, hi]} table[n mod p] e(n theta)`, phase reduced per term.
pub fn naive_sum(table: &[Complex64], lo: u64, hi: u64, theta: f64) -> Complex64 {
    let p = table.len() as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in lo + 1..=hi {
        let c = table[(n % p) as usize];
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let x = (n as f64 * theta).rem_euclid(1.0);
        acc += c * cis(x);
    }
    acc
}

/// `(floor(alpha p), floor(beta p))`, the bounds of `alpha p < n <= beta p`.
pub fn range(alpha: f64, beta: f64, p: u64) -> (u64, u64) {
    ((alpha * p as f64).floor() as u64, (beta * p as f64).floor() as u64)
}

/// `|sum_i c_i e(n_i theta)|` for a sparse polynomial.
pub fn sparse_abs(terms: &[(u64, Complex64)], theta: f64) -> f64 {
    terms
        .iter()
        .map(|&(n, c)| c * cis((n as f64 * theta).rem_euclid(1.0)))
        .sum::<Complex64>()
        .norm()
}

/// Golden-section refinement of a local maximum of `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.max(f2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}
