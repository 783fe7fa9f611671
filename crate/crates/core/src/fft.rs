//! Exact-length complex FFT.
//!
//! Power-of-two lengths use an iterative radix-2 transform; every other length
//! goes through Bluestein's chirp-z algorithm on a power-of-two convolution.
//! Twiddle factors are evaluated directly with `sin`/`cos` rather than by
//! recurrence, so a forward/inverse round trip stays within a few ulps times
//! `log n`. Transforms are unnormalized in both directions.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;


#[allow(unused_imports)]
use num_traits::Float;

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `X_k = Σ x_n e^{-2πi kn/N}`
    Forward,
    /// `x_n = Σ X_k e^{+2πi kn/N}` (no `1/N`)
    Inverse,
}

#[derive(Debug, Clone)]
pub struct Fft {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Trivial,
    Radix2(Radix2),
    Bluestein(Bluestein),
}

impl Fft {
    pub fn new(len: usize) -> Self {
        let kind = if len <= 1 {
            Kind::Trivial
        } else if len.is_power_of_two() {
            Kind::Radix2(Radix2::new(len))
        } else {
            Kind::Bluestein(Bluestein::new(len))
        };
        Fft { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Transforms `buf` in place. Panics if `buf.len()` differs from the plan.
    pub fn process(&self, buf: &mut [C64], direction: Direction) {
        assert_eq!(buf.len(), self.len, "buffer length does not match the FFT plan");
        match &self.kind {
            Kind::Trivial => {}
            Kind::Radix2(plan) => plan.process(buf, direction),
            Kind::Bluestein(plan) => plan.process(buf, direction),
        }
    }
}

/// `e^{-2πi k / n}` evaluated without accumulated rounding.
fn root_of_unity(k: usize, n: usize) -> C64 {
    let angle = -2.0 * PI * (k as f64) / (n as f64);
    C64::new(angle.cos(), angle.sin())
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    twiddles: Vec<C64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        let twiddles = (0..len / 2).map(|k| root_of_unity(k, len)).collect();
        Radix2 { len, twiddles }
    }

    fn process(&self, buf: &mut [C64], direction: Direction) {
        let n = self.len;
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let step = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let mut w = self.twiddles[k * step];
                    if direction == Direction::Inverse {
                        w = w.conj();
                    }
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    /// `e^{-iπ k²/n}`
    chirp: Vec<C64>,
    inner: Radix2,
    /// Forward transform of the conjugate chirp, padded to `inner.len`.
    kernel: Vec<C64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let m = (2 * len - 1).next_power_of_two();
        let two_n = 2 * len as u128;
        let chirp: Vec<C64> = (0..len)
            .map(|k| {
                // reduce k² mod 2n before scaling so large k keep full accuracy
                let r = ((k as u128 * k as u128) % two_n) as usize;
                root_of_unity(r, 2 * len)
            })
            .collect();
        let inner = Radix2::new(m);
        let mut kernel = vec![C64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            kernel[k] = chirp[k].conj();
            kernel[m - k] = chirp[k].conj();
        }
        inner.process(&mut kernel, Direction::Forward);
        Bluestein { len, chirp, inner, kernel }
    }

    fn process(&self, buf: &mut [C64], direction: Direction) {
        let m = self.inner.len;
        let inverse = direction == Direction::Inverse;
        let mut work = vec![C64::new(0.0, 0.0); m];
        for k in 0..self.len {
            let x = if inverse { buf[k].conj() } else { buf[k] };
            work[k] = x * self.chirp[k];
        }
        self.inner.process(&mut work, Direction::Forward);
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w *= k;
        }
        self.inner.process(&mut work, Direction::Inverse);
        let scale = 1.0 / m as f64;
        for k in 0..self.len {
            let y = work[k] * self.chirp[k] * scale;
            buf[k] = if inverse { y.conj() } else { y };
        }
    }
}

/// Multidimensional transform of row-major `data` with the given `shape`.
pub fn fft_nd(data: &mut [C64], shape: &[usize], direction: Direction) {
    let total: usize = shape.iter().product();
    assert_eq!(data.len(), total, "data length does not match the shape");
    let mut stride = total;
    for &n in shape {
        stride /= n;
        if n <= 1 {
            continue;
        }
        let plan = Fft::new(n);
        let mut line = vec![C64::new(0.0, 0.0); n];
        let block = n * stride;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                if stride == 1 {
                    plan.process(&mut data[base..base + n], direction);
                    continue;
                }
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + k * stride];
                }
                plan.process(&mut line, direction);
                for (k, v) in line.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
    }
}
