//! Discrete Fourier pair between the space and frequency domains of a grid.
//!
//! Conventions, fixed once for the whole crate:
//!
//! ```text
//! dft:  F(ξ_k) = Σ_n s(x_n) e^{-i(x_n, ξ_k)} · ∏ h_j            (h_j = 2L_j/N_j)
//! idft: s(x_n) = (2π)^{-d} Σ_k F(ξ_k) e^{+i(x_n, ξ_k)} · ∏ π/L_j
//! ```
//!
//! so `dft` approximates `f̂(ξ) = ∫ f(x) e^{-i(x,ξ)} dx` and the pair is an
//! exact inverse. Because `x_0 = -L`, the discrete phases differ from a plain
//! FFT by the factor `(-1)^{k_1 + … + k_d}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::fft::{fft_nd, Direction};
use crate::lattice::{Domain, Grid, Signal};
use crate::{Result, C64};

/// Forward transform of a space-domain signal.
pub fn dft(s: &Signal) -> Result<Signal> {
    s.expect_domain(Domain::Space)?;
    let grid = s.grid();
    let mut values = s.values().to_vec();
    fft_nd(&mut values, grid.samples_per_axis(), Direction::Forward);
    let w = grid.space_weight();
    apply_phase(grid, &mut values, w);
    Signal::new(grid.clone(), values, Domain::Frequency)
}

/// Inverse of [`dft`].
pub fn idft(s: &Signal) -> Result<Signal> {
    s.expect_domain(Domain::Frequency)?;
    let grid = s.grid();
    let mut values = s.values().to_vec();
    let extent: f64 = grid.half_extent().iter().map(|l| 2.0 * l).product();
    apply_phase(grid, &mut values, 1.0 / extent);
    fft_nd(&mut values, grid.samples_per_axis(), Direction::Inverse);
    Signal::new(grid.clone(), values, Domain::Space)
}

/// Multiplies by `scale · (-1)^{Σ k_j}`.
fn apply_phase(grid: &Grid, values: &mut [C64], scale: f64) {
    grid.for_each_index(|flat, index| {
        let odd = index.iter().sum::<usize>() % 2 == 1;
        values[flat] *= if odd { -scale } else { scale };
    });
}

/// `idft(m(ξ) · dft(s))` with `m` evaluated at the exact bin frequencies.
pub fn apply_multiplier(s: &Signal, m: impl Fn(&[f64]) -> C64) -> Result<Signal> {
    s.expect_domain(Domain::Space)?;
    let grid = s.grid().clone();
    let mut xi = vec![0.0; grid.dim()];
    apply_bin_multiplier(s, |index| {
        for (j, &k) in index.iter().enumerate() {
            xi[j] = grid.axis_frequency(j, k);
        }
        m(&xi)
    })
}

/// Like [`apply_multiplier`], with the multiplier given per bin (storage
/// indices), so callers can apply their own rules at DC and Nyquist.
pub fn apply_bin_multiplier(s: &Signal, mut m: impl FnMut(&[usize]) -> C64) -> Result<Signal> {
    let mut spectrum = dft(s)?.into_values();
    s.grid().for_each_index(|flat, index| spectrum[flat] *= m(index));
    idft(&Signal::new(s.grid().clone(), spectrum, Domain::Frequency)?)
}

/// Bin frequencies of every grid point, flattened row-major (`dim` values per bin).
pub fn frequencies(grid: &Grid) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len() * grid.dim());
    grid.for_each_index(|_, index| {
        for (j, &k) in index.iter().enumerate() {
            out.push(grid.axis_frequency(j, k));
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_grid, sample};
    use core::f64::consts::PI;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn constant_has_all_mass_at_dc() {
        let g = make_grid(1, &[8], &[PI]).unwrap();
        let f = dft(&sample(&g, |_| re(1.0))).unwrap();
        assert!((f.values()[0] - re(2.0 * PI)).norm() < 1e-14);
        assert!(f.values()[1..].iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn cosine_has_two_peaks() {
        let g = make_grid(1, &[64], &[8.0 * PI]).unwrap();
        let f = dft(&sample(&g, |x| re(x[0].cos()))).unwrap();
        let peak = f.max_abs();
        for (k, v) in f.values().iter().enumerate() {
            let xi = g.axis_frequency(0, k);
            if (xi.abs() - 1.0).abs() < 1e-12 {
                assert!((v.norm() - peak).abs() < 1e-12 * peak);
            } else {
                assert!(v.norm() < 1e-12 * peak);
            }
        }
        // ∫ cos(t) e^{-iξt} over [-L, L) at ξ = 1 is L
        assert!((peak - 8.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn gaussian_fourier_pair() {
        let g = make_grid(1, &[256], &[20.0]).unwrap();
        let f = dft(&sample(&g, |x| re((-x[0] * x[0] / 2.0).exp()))).unwrap();
        for (k, v) in f.values().iter().enumerate() {
            let xi = g.axis_frequency(0, k);
            let exact = (2.0 * PI).sqrt() * (-xi * xi / 2.0).exp();
            assert!((v - re(exact)).norm() < 1e-8, "xi={xi}");
        }
    }

    #[test]
    fn zero_spectrum_and_unit_bin() {
        let g = make_grid(1, &[16], &[PI]).unwrap();
        let z = idft(&Signal::zeros(g.clone(), Domain::Frequency)).unwrap();
        assert!(z.values().iter().all(|v| v.norm() == 0.0));

        let mut bins = vec![re(0.0); 16];
        bins[g.storage_index(0, 1).unwrap()] = re(1.0);
        let s = idft(&Signal::new(g.clone(), bins, Domain::Frequency).unwrap()).unwrap();
        let mass = g.frequency_spacing(0);
        for k in 0..16 {
            let t = g.coordinate(0, k);
            let expected = C64::new(t.cos(), t.sin()) * mass / (2.0 * PI);
            assert!((s.values()[k] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn wrong_domain_rejected() {
        let g = make_grid(1, &[8], &[1.0]).unwrap();
        let s = Signal::zeros(g, Domain::Frequency);
        assert!(dft(&s).is_err());
        assert!(idft(&s.clone().map(|v| v)).is_ok());
        assert!(apply_multiplier(&s, |_| re(1.0)).is_err());
    }

    #[test]
    fn hilbert_multiplier_on_cosine() {
        let g = make_grid(1, &[64], &[4.0 * PI]).unwrap();
        let s = sample(&g, |x| re(x[0].cos()));
        let h = apply_multiplier(&s, |xi| C64::new(0.0, -xi[0].signum()) * if xi[0] == 0.0 { 0.0 } else { 1.0 })
            .unwrap();
        for k in 0..64 {
            let t = g.coordinate(0, k);
            assert!((h.values()[k] - re(t.sin())).norm() < 1e-10);
        }
    }

    #[test]
    fn identity_and_zero_multipliers() {
        let g = make_grid(2, &[8, 12], &[1.0, 2.0]).unwrap();
        let s = sample(&g, |x| C64::new((x[0] * 3.0).sin(), x[1] * x[0]));
        let id = apply_multiplier(&s, |_| re(1.0)).unwrap();
        for (a, b) in id.values().iter().zip(s.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        let z = apply_multiplier(&s, |_| re(0.0)).unwrap();
        assert!(z.values().iter().all(|v| v.norm() == 0.0));
    }
}
