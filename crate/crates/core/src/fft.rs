//! Iterative radix-2 FFT and a chirp (Bluestein) transform for arbitrary
//! lengths.
//!
//! Transforms are unnormalized. `Sign::Positive` computes
//! `X_j = sum_r x_r e(r j / n)`, which is what evaluating a trigonometric
//! polynomial on a grid needs; `Sign::Negative` is the usual forward DFT.

use num_complex::Complex64;

use crate::charcore::e_ratio;
use crate::error::{Error, Result};

/// Largest transform length accepted anywhere in the crate.
pub const MAX_GRID_LEN: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

pub fn check_len(n: usize) -> Result<()> {
    if n > MAX_GRID_LEN {
        return Err(Error::GridTooLarge {
            requested: n,
            cap: MAX_GRID_LEN,
        });
    }
    Ok(())
}

pub fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

#[derive(Debug, Clone)]
pub struct Radix2 {
    n: usize,
    // e(-j/n) for j < n/2
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        check_len(n)?;
        let twiddles = (0..n / 2)
            .map(|j| e_ratio((n - j) as u64, n as u64))
            .collect();
        Ok(Self { n, twiddles })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn process(&self, buf: &mut [Complex64], sign: Sign) {
        let n = self.n;
        assert_eq!(buf.len(), n, "buffer length must match the plan");
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if sign == Sign::Positive {
                        w = w.conj();
                    }
                    let u = buf[start + k];
                    let v = buf[start + k + half] * w;
                    buf[start + k] = u + v;
                    buf[start + k + half] = u - v;
                }
            }
            len <<= 1;
        }
    }
}

/// Arbitrary-length DFT via the chirp identity `r j = (r^2 + j^2 - (j-r)^2)/2`
/// and a power-of-two convolution.
#[derive(Debug, Clone)]
pub struct Chirp {
    n: usize,
    inner: Radix2,
    // e(r^2 / 2n) for r < n
    chirp: Vec<Complex64>,
    // transformed conjugate chirp, for Sign::Positive
    kernel_hat: Vec<Complex64>,
}

impl Chirp {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("transform length must be positive".into()));
        }
        check_len(n)?;
        let len = next_pow2(2 * n - 1);
        check_len(len)?;
        let inner = Radix2::new(len)?;
        let two_n = 2 * n as u64;
        let chirp: Vec<Complex64> = (0..n as u64)
            .map(|r| e_ratio(((r as u128 * r as u128) % two_n as u128) as u64, two_n))
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        for m in 0..n {
            kernel[m] = chirp[m].conj();
            if m > 0 {
                kernel[len - m] = chirp[m].conj();
            }
        }
        inner.process(&mut kernel, Sign::Negative);
        Ok(Self {
            n,
            inner,
            chirp,
            kernel_hat: kernel,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn process(&self, buf: &mut [Complex64], sign: Sign) {
        let n = self.n;
        assert_eq!(buf.len(), n, "buffer length must match the plan");
        let len = self.inner.len();
        // a negative-sign transform is the conjugate of a positive one on conj input
        let flip = sign == Sign::Negative;
        let mut work = vec![Complex64::new(0.0, 0.0); len];
        for r in 0..n {
            let x = if flip { buf[r].conj() } else { buf[r] };
            work[r] = x * self.chirp[r];
        }
        self.inner.process(&mut work, Sign::Negative);
        for (w, k) in work.iter_mut().zip(&self.kernel_hat) {
            *w *= k;
        }
        self.inner.process(&mut work, Sign::Positive);
        let scale = 1.0 / len as f64;
        for j in 0..n {
            let y = work[j] * self.chirp[j] * scale;
            buf[j] = if flip { y.conj() } else { y };
        }
    }
}

/// Either kernel behind one interface.
#[derive(Debug, Clone)]
pub enum Plan {
    Radix2(Radix2),
    Chirp(Chirp),
}

impl Plan {
    pub fn process(&self, buf: &mut [Complex64], sign: Sign) {
        match self {
            Plan::Radix2(p) => p.process(buf, sign),
            Plan::Chirp(p) => p.process(buf, sign),
        }
    }
}
