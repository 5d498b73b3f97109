//! Exact arithmetic modulo a prime: primality, primitive roots, discrete
//! logarithms, Dirichlet characters and Gauss sums.
//!
//! Character values are carried as exponents `a` of `e(a/d)`, so every
//! algebraic identity between characters holds exactly. Conversion to
//! floating complex numbers happens only when a value enters a sum.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::accum::ComplexSum;
use crate::error::{Error, Result};

/// `e(x) = exp(2 pi i x)`, with `x` first reduced to `[-1/2, 1/2]`.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// `e(num/den)` evaluated from the exact residue `num mod den`; quarter
/// turns are returned exactly.
#[inline]
pub fn e_ratio(num: u64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let r = num % den;
    if (4 * r as u128) % den as u128 == 0 {
        return match (4 * r as u128 / den as u128) as u8 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // map to (-den/2, den/2] before dividing to keep the angle small
    let signed = if 2 * r > den { r as f64 - den as f64 } else { r as f64 };
    let (s, c) = (TAU * (signed / den as f64)).sin_cos();
    Complex64::new(c, s)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
///
/// On failure returns the witness that proved compositeness (or the
/// reason the number is excluded outright).
pub fn primality_witness(n: u64) -> std::result::Result<(), String> {
    if n < 2 {
        return Err(format!("{n} < 2 is not prime"));
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return Ok(());
        }
        if n % q == 0 {
            return Err(format!("divisible by {q}"));
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Err(format!("Miller-Rabin witness {a}"));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    primality_witness(n).is_ok()
}

/// Distinct prime factors by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime modulus together with its smallest primitive root and a full
/// discrete-logarithm table.
pub struct PrimeModulus {
    p: u64,
    generator: u64,
    // dlog[n] for 1 <= n < p; dlog[0] is unused
    dlog: Vec<u32>,
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeModulus")
            .field("p", &self.p)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PrimeModulus {
    /// Default cap on `p`; the dlog table costs 4 bytes per residue.
    pub const DEFAULT_LIMIT: u64 = 1 << 24;

    pub fn new(p: u64) -> Result<Arc<Self>> {
        Self::with_limit(p, Self::DEFAULT_LIMIT)
    }

    pub fn with_limit(p: u64, limit: u64) -> Result<Arc<Self>> {
        if p < 3 {
            return Err(Error::InvalidModulus {
                p,
                reason: "need an odd prime p >= 3".into(),
            });
        }
        if let Err(reason) = primality_witness(p) {
            return Err(Error::InvalidModulus {
                p,
                reason: format!("composite ({reason})"),
            });
        }
        if p > limit.min(u32::MAX as u64) {
            return Err(Error::ModulusTooLarge { p, limit });
        }
        let generator = smallest_primitive_root(p);
        let mut dlog = vec![u32::MAX; p as usize];
        let mut x = 1u64;
        for j in 0..(p - 1) {
            dlog[x as usize] = j as u32;
            x = mul_mod(x, generator, p);
        }
        debug_assert_eq!(x, 1);
        Ok(Arc::new(Self { p, generator, dlog }))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn generator(&self) -> u64 {
        self.generator
    }

    #[inline]
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Discrete log of `n` to base `generator`; `None` when `p | n`.
    #[inline]
    pub fn dlog(&self, n: i64) -> Option<u64> {
        let r = self.reduce(n);
        (r != 0).then(|| self.dlog[r as usize] as u64)
    }

    /// Table lookup for an already reduced residue in `1..p`.
    #[inline]
    pub(crate) fn dlog_reduced(&self, r: u64) -> u64 {
        self.dlog[r as usize] as u64
    }

    pub fn legendre(self: &Arc<Self>) -> DirichletCharacter {
        DirichletCharacter::new(self.clone(), (self.p - 1) / 2).expect("index in range")
    }
}

pub fn build_modulus(p: u64) -> Result<Arc<PrimeModulus>> {
    PrimeModulus::new(p)
}

fn smallest_primitive_root(p: u64) -> u64 {
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every odd prime has a primitive root")
}

/// `e(num/den)` stored exactly by its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        Self {
            num: num.rem_euclid(den as i64) as u64,
            den,
        }
    }

    pub fn one(den: u64) -> Self {
        Self::new(0, den)
    }

    #[inline]
    pub fn numerator(&self) -> u64 {
        self.num
    }

    #[inline]
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn conj(self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, k: u64) -> Self {
        Self {
            num: mul_mod(self.num, k, self.den),
            den: self.den,
        }
    }

    /// Product, expressed over the lcm of the two denominators.
    pub fn mul(self, other: Self) -> Self {
        if self.den == other.den {
            return Self {
                num: (self.num + other.num) % self.den,
                den: self.den,
            };
        }
        let l = self.den / gcd(self.den, other.den) * other.den;
        let a = self.num * (l / self.den) + other.num * (l / other.den);
        Self { num: a % l, den: l }
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn to_complex(self) -> Complex64 {
        e_ratio(self.num, self.den)
    }
}

/// A Dirichlet character modulo a prime, `chi(g^j) = e(c j / (p-1))`.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: Arc<PrimeModulus>,
    index: u64,
    order: u64,
    // chi(g^j) = e(step * j / order)
    step: u64,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter(p={}, c={}, d={})",
            self.modulus.p, self.index, self.order
        )
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.p == other.modulus.p && self.index == other.index
    }
}

impl DirichletCharacter {
    pub fn new(modulus: Arc<PrimeModulus>, index: u64) -> Result<Self> {
        let phi = modulus.p - 1;
        if index >= phi {
            return Err(Error::InvalidCharacterIndex {
                index,
                p: modulus.p,
            });
        }
        let g = gcd(index, phi);
        let order = phi / g;
        let step = if index == 0 { 0 } else { index / g };
        Ok(Self {
            modulus,
            index,
            order,
            step,
        })
    }

    pub fn modulus(&self) -> &Arc<PrimeModulus> {
        &self.modulus
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.modulus.p
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Order `d`; every nonzero value lies in `mu_d`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn conj(&self) -> Self {
        let phi = self.modulus.p - 1;
        Self::new(self.modulus.clone(), (phi - self.index) % phi).expect("index in range")
    }

    /// Exponent `a` in `[0, d)` with `chi(n) = e(a/d)`, or `None` when `p | n`.
    #[inline]
    pub fn exponent(&self, n: i64) -> Option<u64> {
        self.modulus
            .dlog(n)
            .map(|j| mul_mod(self.step, j, self.order))
    }

    #[inline]
    pub(crate) fn exponent_reduced(&self, r: u64) -> Option<u64> {
        (r != 0).then(|| mul_mod(self.step, self.modulus.dlog_reduced(r), self.order))
    }

    /// Exact value: `None` stands for zero.
    pub fn value(&self, n: i64) -> Option<RootOfUnity> {
        self.exponent(n)
            .map(|a| RootOfUnity::new(a as i64, self.order))
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            Some(a) => e_ratio(a, self.order),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `conj(chi(n))`.
    pub fn eval_conj(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            Some(a) => e_ratio(self.order - a, self.order),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Table of values `chi(n)` for `n = 0..p`.
    pub fn value_table(&self) -> Vec<Complex64> {
        let units: Vec<Complex64> = (0..self.order).map(|a| e_ratio(a, self.order)).collect();
        (0..self.modulus.p)
            .map(|r| match self.exponent_reduced(r) {
                Some(a) => units[a as usize],
                None => Complex64::new(0.0, 0.0),
            })
            .collect()
    }

    /// `chi(-1)` as +1 or -1.
    pub fn parity(&self) -> i64 {
        match self.exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }
}

pub fn char_eval(chi: &DirichletCharacter, n: i64) -> Complex64 {
    chi.eval(n)
}

/// `tau(chi) = sum_{n=1}^{p-1} chi(n) e(n/p)`.
///
/// Each term's phase `a/d + n/p` is combined over the common denominator
/// `d p` before a single trigonometric evaluation.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let p = chi.p();
    let d = chi.order();
    let den = d * p;
    let mut acc = ComplexSum::new();
    for n in 1..p {
        let a = chi.exponent_reduced(n).expect("unit");
        acc.add(e_ratio(a * p + n * d, den));
    }
    Ok(acc.value())
}

pub fn enumerate_characters(
    modulus: &Arc<PrimeModulus>,
    non_principal_only: bool,
) -> Vec<DirichletCharacter> {
    let start = u64::from(non_principal_only);
    (start..modulus.p - 1)
        .map(|c| DirichletCharacter::new(modulus.clone(), c).expect("index in range"))
        .collect()
}

/// Characters of exactly order `d`, ordered by index.
pub fn characters_of_order(modulus: &Arc<PrimeModulus>, d: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(modulus, false)
        .into_iter()
        .filter(|chi| chi.order() == d)
        .collect()
}
