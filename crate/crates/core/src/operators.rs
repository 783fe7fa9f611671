//! Operators whose Fourier multiplier is constant on each open hyperoctant.
//!
//! Every such operator is a linear combination of compositions of partial
//! Hilbert transforms `H_j`, `(H_j f)^(ξ) = -i sgn(ξ_j) f̂(ξ)`. Because
//! `H_j H_j = -I`, each composition reduces to a product over a *subset* `S`
//! of the axes, and an operator is stored twice:
//!
//! * composition coefficients `c_S` of `∏_{j∈S} H_j`, and
//! * quadrant values `m_k`, the multiplier on the open hyperoctant of sign
//!   pattern `ν^k`,
//!
//! related by `m_k = Σ_S c_S ∏_{j∈S} (-i ν^k_j)`, a Walsh–Hadamard transform.
//!
//! Quadrants are indexed by bitmask: bit `j` set means `ν_j = -1`, so index 0
//! is the all-plus pattern and axis 1 is the least significant bit.
//!
//! Off the open hyperoctants the multiplier follows `sgn(0) = 0`: terms that
//! contain a zero sign vanish. On the grid, both the DC bin and the Nyquist
//! bin of an axis count as zero-sign bins, which keeps real inputs real under
//! `iH`-type operators and makes each `H_j` skew-adjoint.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{Domain, Signal};
use crate::spectral::apply_bin_multiplier;
use crate::{Error, Result, C64};

/// Largest supported dimension (1024 quadrants).
pub const MAX_DIM: usize = 10;

/// Tolerance of the dual-representation consistency check.
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// An extreme point `ν` of `[-1, 1]^d`, naming the closed hyperoctant
/// `Q = {ξ : ν_j ξ_j ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    dim: u8,
    mask: u16,
}

impl SignPattern {
    pub fn new(dim: usize, mask: usize) -> Result<Self> {
        check_dim(dim)?;
        if mask >= 1 << dim {
            return Err(Error::InvalidArgument(alloc::format!(
                "pattern index {mask} out of range for dimension {dim}"
            )));
        }
        Ok(SignPattern { dim: dim as u8, mask: mask as u16 })
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        check_dim(signs.len())?;
        let mut mask = 0;
        for (j, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => mask |= 1 << j,
                _ => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "sign {s} on axis {} is not ±1",
                        j + 1
                    )))
                }
            }
        }
        SignPattern::new(signs.len(), mask)
    }

    /// Parses strings such as `"++"`, `"+-"` or `"+,-"`.
    pub fn parse(text: &str) -> Result<Self> {
        let signs: Vec<i8> = text
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::InvalidArgument(alloc::format!(
                    "unexpected character {other:?} in sign pattern"
                ))),
            })
            .collect::<Result<_>>()?;
        SignPattern::from_signs(&signs)
    }

    /// `ν¹`, every component `+1`.
    pub fn all_positive(dim: usize) -> Result<Self> {
        SignPattern::new(dim, 0)
    }

    /// `ν²`, every component `-1`.
    pub fn all_negative(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        SignPattern::new(dim, (1 << dim) - 1)
    }

    /// Every pattern of the given dimension in index order.
    pub fn all(dim: usize) -> impl Iterator<Item = SignPattern> {
        let dim = dim.min(MAX_DIM);
        (0..1usize << dim).map(move |mask| SignPattern { dim: dim as u8, mask: mask as u16 })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn index(&self) -> usize {
        self.mask as usize
    }

    pub fn sign(&self, axis: usize) -> i8 {
        if self.mask >> axis & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.dim()).map(|j| self.sign(j)).collect()
    }

    pub fn negate(&self) -> Self {
        SignPattern { dim: self.dim, mask: !self.mask & ((1u16 << self.dim) - 1) }
    }

    /// Closed-hyperoctant membership, `ν_j ξ_j ≥ 0` for every axis.
    pub fn contains(&self, xi: &[f64]) -> bool {
        xi.len() == self.dim() && xi.iter().enumerate().all(|(j, &x)| f64::from(self.sign(j)) * x >= 0.0)
    }

    /// Open-hyperoctant membership.
    pub fn contains_strictly(&self, xi: &[f64]) -> bool {
        xi.len() == self.dim() && xi.iter().enumerate().all(|(j, &x)| f64::from(self.sign(j)) * x > 0.0)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim() {
            f.write_str(if self.sign(j) > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if dim > MAX_DIM {
        return Err(Error::TooManyDimensions(dim));
    }
    Ok(())
}

/// A hyperoctant-constant Fourier multiplier operator.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierOp {
    dim: usize,
    coeffs: Vec<C64>,
    values: Vec<C64>,
}

impl MultiplierOp {
    /// Builds the operator from its `2^d` quadrant values.
    pub fn from_quadrant_values(values: Vec<C64>) -> Result<Self> {
        let n = values.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::LengthMismatch { expected: n.next_power_of_two().max(2), found: n });
        }
        let dim = n.trailing_zeros() as usize;
        check_dim(dim)?;
        let coeffs = coefficients_from_values(&values);
        Ok(MultiplierOp { dim, coeffs, values })
    }

    /// Like [`from_quadrant_values`](Self::from_quadrant_values) with the
    /// dimension stated explicitly.
    pub fn from_quadrant_values_dim(dim: usize, values: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != 1 << dim {
            return Err(Error::LengthMismatch { expected: 1 << dim, found: values.len() });
        }
        MultiplierOp::from_quadrant_values(values)
    }

    /// Builds the operator from subset coefficients `c_S`, indexed by the
    /// bitmask of `S`.
    pub fn from_coefficients(dim: usize, coeffs: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::LengthMismatch { expected: 1 << dim, found: coeffs.len() });
        }
        let values = values_from_coefficients(&coeffs);
        Ok(MultiplierOp { dim, coeffs, values })
    }

    /// Accepts both representations and verifies that they agree.
    pub fn from_parts(dim: usize, coeffs: Vec<C64>, values: Vec<C64>) -> Result<Self> {
        let op = MultiplierOp::from_coefficients(dim, coeffs)?;
        if values.len() != op.values.len() {
            return Err(Error::LengthMismatch { expected: op.values.len(), found: values.len() });
        }
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.norm()));
        if op.values.iter().zip(&values).any(|(a, b)| (a - b).norm() > CONSISTENCY_TOL * scale) {
            return Err(Error::InconsistentOperator);
        }
        Ok(op)
    }

    /// Linear combination `Σ w · ∏_{l ∈ term} H_l` where each term lists
    /// axis numbers `1..=d`, with `0` standing for the identity. A term may
    /// repeat axes (as in a multi-index `α ∈ Z_{d+1}^d`); repetitions are
    /// reduced with `H_l H_l = -I`.
    pub fn from_compositions(dim: usize, terms: &[(C64, &[usize])]) -> Result<Self> {
        check_dim(dim)?;
        let mut coeffs = vec![C64::new(0.0, 0.0); 1 << dim];
        for (weight, axes) in terms {
            let mut counts = [0usize; MAX_DIM];
            for &axis in axes.iter() {
                match axis {
                    0 => {}
                    a if a <= dim => counts[a - 1] += 1,
                    a => return Err(Error::AxisOutOfRange { axis: a, dim }),
                }
            }
            let mut subset = 0usize;
            let mut pairs = 0usize;
            for (j, &c) in counts[..dim].iter().enumerate() {
                pairs += c / 2;
                if c % 2 == 1 {
                    subset |= 1 << j;
                }
            }
            let sign = if pairs % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[subset] += *weight * sign;
        }
        MultiplierOp::from_coefficients(dim, coeffs)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        MultiplierOp::scalar(dim, C64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, value: C64) -> Result<Self> {
        check_dim(dim)?;
        MultiplierOp::from_quadrant_values(vec![value; 1 << dim])
    }

    /// The total Hilbert transform `H_1 H_2 ⋯ H_d`.
    pub fn total_hilbert(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut coeffs = vec![C64::new(0.0, 0.0); 1 << dim];
        coeffs[(1 << dim) - 1] = C64::new(1.0, 0.0);
        MultiplierOp::from_coefficients(dim, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn quadrant_values(&self) -> &[C64] {
        &self.values
    }

    /// Coefficients `c_S`, indexed by the bitmask of `S`.
    pub fn coefficients(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn value(&self, pattern: SignPattern) -> Result<C64> {
        self.expect_dim(pattern.dim())?;
        Ok(self.values[pattern.index()])
    }

    /// Multiplier at sign vector `σ ∈ {-1, 0, 1}^d`:
    /// `Σ_S c_S ∏_{j∈S} (-i σ_j)`.
    pub fn value_at_signs(&self, signs: &[i8]) -> Result<C64> {
        self.expect_dim(signs.len())?;
        let zero_mask = signs.iter().enumerate().fold(0usize, |m, (j, &s)| if s == 0 { m | 1 << j } else { m });
        let mut total = C64::new(0.0, 0.0);
        for (subset, &c) in self.coeffs.iter().enumerate() {
            if subset & zero_mask != 0 || c == C64::new(0.0, 0.0) {
                continue;
            }
            let mut term = c;
            for (j, &s) in signs.iter().enumerate() {
                if subset >> j & 1 == 1 {
                    term *= C64::new(0.0, -f64::from(s));
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Multiplier at frequency `ξ`, with `sgn(0) = 0`.
    pub fn value_at(&self, xi: &[f64]) -> Result<C64> {
        let signs: Vec<i8> = xi.iter().map(|&x| sign_of(x)).collect();
        self.value_at_signs(&signs)
    }

    /// Multiplier on every one of the `3^d` sign cells. Cell digits are
    /// `0 → +`, `1 → −`, `2 → 0` with axis 1 least significant; a zero-sign
    /// axis takes the mean of its two neighbouring cells.
    pub fn cell_table(&self) -> Vec<C64> {
        let cells = 3usize.pow(self.dim as u32);
        let mut table = vec![C64::new(0.0, 0.0); cells];
        for cell in 0..cells {
            let mut rest = cell;
            let mut pow = 1;
            let mut mask = 0;
            let mut zero_axis = None;
            for j in 0..self.dim {
                match rest % 3 {
                    0 => {}
                    1 => mask |= 1 << j,
                    _ => {
                        zero_axis = Some(pow);
                        break;
                    }
                }
                rest /= 3;
                pow *= 3;
            }
            table[cell] = match zero_axis {
                None => self.values[mask],
                Some(p) => (table[cell - 2 * p] + table[cell - p]) * 0.5,
            };
        }
        table
    }

    /// True when every quadrant value is the same number.
    pub fn is_scalar(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    /// True when the values differ by at most `tol · max(1, max|m_k|)`.
    pub fn is_scalar_within(&self, tol: f64) -> bool {
        let scale = self.values.iter().fold(1.0f64, |m, v| m.max(v.norm()));
        self.values.iter().all(|v| (v - self.values[0]).norm() <= tol * scale)
    }

    /// Whether the multiplier takes a single value on the given hyperoctants.
    pub fn is_constant_on(&self, patterns: &[SignPattern]) -> bool {
        match patterns.first() {
            None => true,
            Some(first) => patterns
                .iter()
                .all(|p| p.dim() == self.dim && self.values[p.index()] == self.values[first.index()]),
        }
    }

    /// Composition, the pointwise product of the multipliers.
    pub fn compose(&self, other: &MultiplierOp) -> Result<MultiplierOp> {
        self.expect_dim(other.dim)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        MultiplierOp::from_quadrant_values(values)
    }

    pub fn add(&self, other: &MultiplierOp) -> Result<MultiplierOp> {
        self.expect_dim(other.dim)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        MultiplierOp::from_quadrant_values(values)
    }

    pub fn scale(&self, factor: C64) -> MultiplierOp {
        MultiplierOp {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// The adjoint operator, with multiplier `conj(m)`.
    pub fn adjoint(&self) -> MultiplierOp {
        MultiplierOp::from_quadrant_values(self.values.iter().map(|v| v.conj()).collect())
            .expect("same shape as a valid operator")
    }

    fn expect_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: dim });
        }
        Ok(())
    }

    /// Short human-readable description (`"c_∅ I + c_{1} H1 + …"`).
    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (subset, c) in self.coeffs.iter().enumerate() {
            if c.norm() < CONSISTENCY_TOL {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "({:.6}{:+.6}i)", c.re, c.im);
            if subset == 0 {
                out.push_str("·I");
            }
            for j in 0..self.dim {
                if subset >> j & 1 == 1 {
                    let _ = write!(out, "·H{}", j + 1);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `H_j`, the partial Hilbert transform along axis `j` (1-based).
pub fn partial_hilbert(axis: usize, dim: usize) -> Result<MultiplierOp> {
    check_dim(dim)?;
    if axis == 0 || axis > dim {
        return Err(Error::AxisOutOfRange { axis, dim });
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); 1 << dim];
    coeffs[1 << (axis - 1)] = C64::new(1.0, 0.0);
    MultiplierOp::from_coefficients(dim, coeffs)
}

pub fn compose(a: &MultiplierOp, b: &MultiplierOp) -> Result<MultiplierOp> {
    a.compose(b)
}

pub fn from_quadrant_values(values: Vec<C64>) -> Result<MultiplierOp> {
    MultiplierOp::from_quadrant_values(values)
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Unnormalized Walsh–Hadamard transform, `v'_k = Σ_S v_S (-1)^{|S ∩ k|}`.
fn walsh_hadamard(v: &mut [C64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `(∓i)^p` for `p = |S|`.
fn power_of_i(p: u32, negative: bool) -> C64 {
    let r = match p % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    if negative {
        r.conj()
    } else {
        r
    }
}

fn values_from_coefficients(coeffs: &[C64]) -> Vec<C64> {
    let mut v: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .map(|(s, &c)| c * power_of_i((s as u32).count_ones(), true))
        .collect();
    walsh_hadamard(&mut v);
    v
}

fn coefficients_from_values(values: &[C64]) -> Vec<C64> {
    let mut v = values.to_vec();
    walsh_hadamard(&mut v);
    let norm = 1.0 / values.len() as f64;
    v.iter()
        .enumerate()
        .map(|(s, &w)| w * power_of_i((s as u32).count_ones(), false) * norm)
        .collect()
}

/// Applies the operator to a space-domain signal. DC and Nyquist bins are
/// zero-sign bins.
pub fn apply(op: &MultiplierOp, s: &Signal) -> Result<Signal> {
    s.expect_domain(Domain::Space)?;
    let grid = s.grid();
    if grid.dim() != op.dim {
        return Err(Error::DimensionMismatch { expected: op.dim, found: grid.dim() });
    }
    if op.is_scalar() {
        let mu = op.values[0];
        return Ok(s.scale(mu));
    }
    let table = op.cell_table();
    let digits = cell_digits(grid);
    apply_bin_multiplier(s, |index| {
        let cell: usize = index.iter().zip(&digits).map(|(&k, axis)| axis[k]).sum();
        table[cell]
    })
}

/// Per-axis contribution of each storage index to the `3^d` cell number.
pub(crate) fn cell_digits(grid: &crate::Grid) -> Vec<Vec<usize>> {
    let mut pow = 1;
    (0..grid.dim())
        .map(|j| {
            let n = grid.samples_per_axis()[j];
            let digits = (0..n)
                .map(|k| {
                    let digit = if k == 0 || k == n / 2 {
                        2
                    } else if k < n / 2 {
                        0
                    } else {
                        1
                    };
                    digit * pow
                })
                .collect();
            pow *= 3;
            digits
        })
        .collect()
}

/// Sign of storage index `k` under the zero-sign rule (DC and Nyquist → 0).
pub fn bin_sign(grid: &crate::Grid, axis: usize, k: usize) -> i8 {
    let n = grid.samples_per_axis()[axis];
    if k == 0 || k == n / 2 {
        0
    } else if k < n / 2 {
        1
    } else {
        -1
    }
}
