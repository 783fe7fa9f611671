//! Uniform sampling lattices and the complex sample container shared by every
//! other module.
//!
//! Axis `j` of a [`Grid`] covers `[-L_j, L_j)` with `N_j` samples and spacing
//! `2 L_j / N_j`. Samples are stored row-major with the first axis varying
//! slowest, which is also the layout of the FFT and of the on-disk format.
//! Signals are implicitly periodized over the box, so `L` has to be large
//! enough for the sampled function to have decayed at the boundary.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;


#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Smallest admissible number of samples per axis.
pub const MIN_SAMPLES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    samples: Vec<usize>,
    half_extent: Vec<f64>,
}

/// Builds a grid after checking `dim` against the per-axis lists.
pub fn make_grid(dim: usize, samples_per_axis: &[usize], half_extent: &[f64]) -> Result<Grid> {
    if dim == 0 {
        return Err(Error::InvalidGrid("dimension must be at least 1".into()));
    }
    if samples_per_axis.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: samples_per_axis.len() });
    }
    if half_extent.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: half_extent.len() });
    }
    Grid::new(samples_per_axis, half_extent)
}

impl Grid {
    pub fn new(samples_per_axis: &[usize], half_extent: &[f64]) -> Result<Self> {
        if samples_per_axis.is_empty() {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if samples_per_axis.len() != half_extent.len() {
            return Err(Error::DimensionMismatch {
                expected: samples_per_axis.len(),
                found: half_extent.len(),
            });
        }
        for (axis, &n) in samples_per_axis.iter().enumerate() {
            if n < MIN_SAMPLES || n % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "axis {} has {n} samples; an even count of at least {MIN_SAMPLES} is required",
                    axis + 1
                )));
            }
        }
        for (axis, &l) in half_extent.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!(
                    "axis {} has half extent {l}; a finite positive value is required",
                    axis + 1
                )));
            }
        }
        let total = samples_per_axis
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGrid("sample count overflows".into()))?;
        debug_assert!(total > 0);
        Ok(Grid { samples: samples_per_axis.to_vec(), half_extent: half_extent.to_vec() })
    }

    /// One-dimensional convenience constructor.
    pub fn line(samples: usize, half_extent: f64) -> Result<Self> {
        Grid::new(&[samples], &[half_extent])
    }

    pub fn dim(&self) -> usize {
        self.samples.len()
    }

    pub fn samples_per_axis(&self) -> &[usize] {
        &self.samples
    }

    pub fn half_extent(&self) -> &[f64] {
        &self.half_extent
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        self.samples.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half_extent[axis] / self.samples[axis] as f64
    }

    /// Distance between neighbouring frequency bins on `axis`, `π / L`.
    pub fn frequency_spacing(&self, axis: usize) -> f64 {
        PI / self.half_extent[axis]
    }

    /// Quadrature weight of one space sample, `∏ spacing_j`.
    pub fn space_weight(&self) -> f64 {
        (0..self.dim()).map(|j| self.spacing(j)).product()
    }

    /// Quadrature weight of one frequency bin, `∏ π / L_j`.
    pub fn frequency_weight(&self) -> f64 {
        (0..self.dim()).map(|j| self.frequency_spacing(j)).product()
    }

    pub fn coordinate(&self, axis: usize, k: usize) -> f64 {
        -self.half_extent[axis] + k as f64 * self.spacing(axis)
    }

    /// Signed DFT index in `[-N/2, N/2)` of storage index `k`.
    pub fn signed_index(&self, axis: usize, k: usize) -> isize {
        let n = self.samples[axis];
        if k < n / 2 {
            k as isize
        } else {
            k as isize - n as isize
        }
    }

    /// Storage index of the signed DFT index `k'`, if it is on the grid.
    pub fn storage_index(&self, axis: usize, signed: isize) -> Option<usize> {
        let n = self.samples[axis] as isize;
        if signed < -n / 2 || signed >= n / 2 {
            return None;
        }
        Some(if signed >= 0 { signed as usize } else { (signed + n) as usize })
    }

    pub fn is_nyquist(&self, axis: usize, k: usize) -> bool {
        k == self.samples[axis] / 2
    }

    pub fn axis_frequency(&self, axis: usize, k: usize) -> f64 {
        self.signed_index(axis, k) as f64 * self.frequency_spacing(axis)
    }

    /// Frequency `ξ_j = π k'_j / L_j` of a bin given by storage indices.
    pub fn frequency_of_bin(&self, bin: &[usize]) -> Result<Vec<f64>> {
        self.check_index(bin)?;
        Ok(bin.iter().enumerate().map(|(j, &k)| self.axis_frequency(j, k)).collect())
    }

    /// Frequency of a bin given by signed indices in `[-N/2, N/2)`.
    pub fn frequency_of_signed_bin(&self, bin: &[isize]) -> Result<Vec<f64>> {
        if bin.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: bin.len() });
        }
        bin.iter()
            .enumerate()
            .map(|(j, &k)| {
                self.storage_index(j, k)
                    .map(|_| k as f64 * self.frequency_spacing(j))
                    .ok_or(Error::BinOutOfRange)
            })
            .collect()
    }

    pub fn point(&self, index: &[usize]) -> Result<Vec<f64>> {
        self.check_index(index)?;
        Ok(index.iter().enumerate().map(|(j, &k)| self.coordinate(j, k)).collect())
    }

    /// Row-major flat offset of a multi-index.
    pub fn ravel(&self, index: &[usize]) -> Result<usize> {
        self.check_index(index)?;
        Ok(index.iter().zip(&self.samples).fold(0, |acc, (&k, &n)| acc * n + k))
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.dim()];
        for j in (0..self.dim()).rev() {
            index[j] = flat % self.samples[j];
            flat /= self.samples[j];
        }
        index
    }

    /// Visits every multi-index in storage order.
    pub fn for_each_index(&self, mut visit: impl FnMut(usize, &[usize])) {
        let mut index = vec![0usize; self.dim()];
        for flat in 0..self.len() {
            visit(flat, &index);
            for j in (0..self.dim()).rev() {
                index[j] += 1;
                if index[j] < self.samples[j] {
                    break;
                }
                index[j] = 0;
            }
        }
    }

    fn check_index(&self, index: &[usize]) -> Result<()> {
        if index.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: index.len() });
        }
        if index.iter().zip(&self.samples).any(|(&k, &n)| k >= n) {
            return Err(Error::BinOutOfRange);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Space,
    Frequency,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Space => "space",
            Domain::Frequency => "frequency",
        })
    }
}

/// Complex samples on a [`Grid`], tagged with the domain they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: Grid,
    values: Vec<C64>,
    domain: Domain,
}

impl Signal {
    pub fn new(grid: Grid, values: Vec<C64>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(Signal { grid, values, domain })
    }

    pub fn zeros(grid: Grid, domain: Domain) -> Self {
        let values = vec![C64::new(0.0, 0.0); grid.len()];
        Signal { grid, values, domain }
    }

    pub fn from_real(grid: Grid, values: &[f64], domain: Domain) -> Result<Self> {
        Signal::new(grid, values.iter().map(|&v| C64::new(v, 0.0)).collect(), domain)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: &[usize]) -> Result<C64> {
        Ok(self.values[self.grid.ravel(index)?])
    }

    pub fn expect_domain(&self, expected: Domain) -> Result<()> {
        if self.domain != expected {
            return Err(Error::WrongDomain { expected, found: self.domain });
        }
        Ok(())
    }

    /// Same grid and same domain.
    pub fn expect_compatible(&self, other: &Signal) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.domain != other.domain {
            return Err(Error::WrongDomain { expected: self.domain, found: other.domain });
        }
        Ok(())
    }

    /// True when every imaginary part is below `tol · max(1, max|s|)`.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        self.values.iter().all(|v| v.im.abs() <= tol * scale)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Discrete `L²` norm with the domain's quadrature weight.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum * self.weight()).sqrt()
    }

    /// Discrete `L¹` norm with the domain's quadrature weight.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.weight()
    }

    fn weight(&self) -> f64 {
        match self.domain {
            Domain::Space => self.grid.space_weight(),
            Domain::Frequency => self.grid.frequency_weight(),
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Signal {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(&self, other: &Signal, f: impl Fn(C64, C64) -> C64) -> Result<Signal> {
        self.expect_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(self.with_values(values))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> Signal {
        self.map(|v| v * factor)
    }

    pub fn conj(&self) -> Signal {
        self.map(|v| v.conj())
    }

    /// Real part, as a signal with zero imaginary part.
    pub fn re(&self) -> Signal {
        self.map(|v| C64::new(v.re, 0.0))
    }

    /// A signal on the same grid and domain with new values.
    pub(crate) fn with_values(&self, values: Vec<C64>) -> Signal {
        debug_assert_eq!(values.len(), self.values.len());
        Signal { grid: self.grid.clone(), values, domain: self.domain }
    }
}

/// Samples `f` at every grid point, giving a space-domain signal.
pub fn sample(grid: &Grid, f: impl Fn(&[f64]) -> C64) -> Signal {
    let mut values = Vec::with_capacity(grid.len());
    let mut x = vec![0.0; grid.dim()];
    grid.for_each_index(|_, index| {
        for (j, &k) in index.iter().enumerate() {
            x[j] = grid.coordinate(j, k);
        }
        values.push(f(&x));
    });
    Signal { grid: grid.clone(), values, domain: Domain::Space }
}

/// Like [`sample`], stopping at the first evaluation error.
pub fn try_sample<E>(
    grid: &Grid,
    f: impl Fn(&[f64]) -> core::result::Result<C64, E>,
) -> core::result::Result<Signal, E> {
    let mut values = Vec::with_capacity(grid.len());
    let mut x = vec![0.0; grid.dim()];
    let mut index = vec![0usize; grid.dim()];
    for flat in 0..grid.len() {
        if flat > 0 {
            for j in (0..grid.dim()).rev() {
                index[j] += 1;
                if index[j] < grid.samples[j] {
                    break;
                }
                index[j] = 0;
            }
        }
        for (j, &k) in index.iter().enumerate() {
            x[j] = grid.coordinate(j, k);
        }
        values.push(f(&x)?);
    }
    Ok(Signal { grid: grid.clone(), values, domain: Domain::Space })
}
