//! Finite Blaschke products and signals `f` with `H(f cos θ) = f sin θ`.
//!
//! For zeros `a_1, …, a_n` in the unit disk, `B(z) = ∏ (z − a_j)/(1 − ā_j z)`
//! and the phase `θ` is the continuous branch of `arg B(e^{it})`. Writing
//! `w_j = 1 − a_j e^{−it}`, each factor equals `e^{i(t + 2 arg w_j)}` and
//! `Re w_j > 0`, so
//!
//! ```text
//! θ(t) = Σ_j (t + 2 arg w_j(t)) + const,    θ'(t) = Σ_j (1 − |a_j|²) / |e^{it} − a_j|².
//! ```
//!
//! Synthesis follows the closed form
//! `f(x) = Re Σ_{j,l} c_{jl}(x) / (1 − λ_j e^{−ix})^l` with `supp ĉ_{jl} ⊆ [−1, 0]`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;


#[allow(unused_imports)]
use num_traits::Float;

use crate::lattice::{Domain, Grid, Signal};
use crate::operators::{apply, partial_hilbert};
use crate::spectral::idft;
use crate::{Error, Result, C64};

/// Zeros with a larger modulus are rejected.
pub const MAX_ZERO_MODULUS: f64 = 1.0 - 1e-6;
/// Zeros closer than this are merged into one distinct zero.
pub const ZERO_MERGE_TOL: f64 = 1e-12;
/// Points with `|z|` above `1 + DISK_TOL` are outside the closed disk.
pub const DISK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<C64>,
    distinct: Vec<(C64, usize)>,
    offset: f64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<C64>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidArgument("a Blaschke product needs at least one zero".into()));
        }
        let mut distinct: Vec<(C64, usize)> = Vec::new();
        for (index, &a) in zeros.iter().enumerate() {
            if !(a.norm() <= MAX_ZERO_MODULUS) {
                return Err(Error::ZeroOutsideDisk { index });
            }
            match distinct.iter_mut().find(|(l, _)| (l - a).norm() <= ZERO_MERGE_TOL) {
                Some((_, n)) => *n += 1,
                None => distinct.push((a, 1)),
            }
        }
        let mut bp = BlaschkeProduct { zeros, distinct, offset: 0.0 };
        let b1 = bp.eval(C64::new(1.0, 0.0))?;
        let raw = bp.raw_phase(0.0);
        bp.offset = b1.im.atan2(b1.re) - raw;
        Ok(bp)
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    /// Distinct zeros `λ_j` with multiplicities `n_j`, in order of first appearance.
    pub fn distinct(&self) -> &[(C64, usize)] {
        &self.distinct
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.norm() > 1.0 + DISK_TOL {
            return Err(Error::PointOutsideDisk);
        }
        Ok(self.zeros.iter().map(|&a| (z - a) / (C64::new(1.0, 0.0) - a.conj() * z)).product())
    }

    /// `B(e^{it})`.
    pub fn on_circle(&self, t: f64) -> C64 {
        let z = C64::new(t.cos(), t.sin());
        self.zeros.iter().map(|&a| (z - a) / (C64::new(1.0, 0.0) - a.conj() * z)).product()
    }

    fn raw_phase(&self, t: f64) -> f64 {
        let e = C64::new(t.cos(), -t.sin());
        self.zeros
            .iter()
            .map(|&a| {
                let w = C64::new(1.0, 0.0) - a * e;
                t + 2.0 * w.im.atan2(w.re)
            })
            .sum()
    }

    /// Continuous phase with `θ(0) = Arg B(1)`.
    pub fn phase(&self, t: f64) -> f64 {
        self.raw_phase(t) + self.offset
    }

    pub fn phase_derivative(&self, t: f64) -> f64 {
        let z = C64::new(t.cos(), t.sin());
        self.zeros.iter().map(|&a| (1.0 - a.norm_sqr()) / (z - a).norm_sqr()).sum()
    }
}

/// A coefficient spectrum on `[−1, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    /// `2π` on `[−1, 0]`.
    Flat,
    /// `2π (1 − cos 2π(ξ + 1))`.
    RaisedCosine,
    /// `e^{−ξ²/(2·0.3²)}` on `[−1, 0]`, scaled to integrate to `2π`.
    HalfGaussian,
    /// Linear interpolation of samples; zero outside the sampled range.
    Sampled { xi: Vec<f64>, values: Vec<C64> },
}

const HALF_GAUSSIAN_WIDTH: f64 = 0.3;

impl Spectrum {
    pub fn named(name: &str) -> Option<Spectrum> {
        match name {
            "flat" => Some(Spectrum::Flat),
            "raised-cosine" | "raised_cosine" | "raisedcosine" => Some(Spectrum::RaisedCosine),
            "half-gaussian" | "half_gaussian" | "halfgaussian" => Some(Spectrum::HalfGaussian),
            _ => None,
        }
    }

    pub fn sampled(xi: Vec<f64>, values: Vec<C64>) -> Result<Spectrum> {
        if xi.len() != values.len() {
            return Err(Error::EnvelopeStructure(alloc::format!(
                "{} frequencies but {} values",
                xi.len(),
                values.len()
            )));
        }
        if xi.len() < 2 {
            return Err(Error::EnvelopeStructure("a sampled spectrum needs at least two points".into()));
        }
        if let Some(x) = xi.iter().find(|x| !(**x >= -1.0 && **x <= 0.0)) {
            return Err(Error::EnvelopeSupport(alloc::format!("sample at {x}")));
        }
        if xi.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::EnvelopeStructure("frequencies must increase strictly".into()));
        }
        Ok(Spectrum::Sampled { xi, values })
    }

    /// Value at `ξ`; zero off `[−1, 0]`.
    pub fn value(&self, xi: f64) -> C64 {
        if !(-1.0..=0.0).contains(&xi) {
            return C64::new(0.0, 0.0);
        }
        match self {
            Spectrum::Flat => C64::new(2.0 * PI, 0.0),
            Spectrum::RaisedCosine => C64::new(2.0 * PI * (1.0 - (2.0 * PI * (xi + 1.0)).cos()), 0.0),
            Spectrum::HalfGaussian => {
                let s = HALF_GAUSSIAN_WIDTH;
                // ∫_{-1}^0 e^{-ξ²/2s²} dξ = s √(π/2) erf(1/(s√2))
                let mass = s * (PI / 2.0).sqrt() * libm::erf(1.0 / (s * 2f64.sqrt()));
                C64::new(2.0 * PI * (-xi * xi / (2.0 * s * s)).exp() / mass, 0.0)
            }
            Spectrum::Sampled { xi: xs, values } => {
                if xi < xs[0] || xi > xs[xs.len() - 1] {
                    return C64::new(0.0, 0.0);
                }
                let k = xs.partition_point(|&x| x <= xi).clamp(1, xs.len() - 1);
                let (x0, x1) = (xs[k - 1], xs[k]);
                let w = (xi - x0) / (x1 - x0);
                values[k - 1] * (1.0 - w) + values[k] * w
            }
        }
    }
}

/// One coefficient `c_{jl}`: a spectrum on `[−1, 0]` times a complex weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub spectrum: Spectrum,
    pub weight: C64,
}

impl Envelope {
    pub fn new(spectrum: Spectrum, weight: C64) -> Self {
        Envelope { spectrum, weight }
    }

    pub fn value(&self, xi: f64) -> C64 {
        self.spectrum.value(xi) * self.weight
    }
}

/// Coefficients `c_{jl}`, indexed `[j][l − 1]` over the distinct zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSpec {
    pub terms: Vec<Vec<Envelope>>,
}

impl EnvelopeSpec {
    pub fn new(terms: Vec<Vec<Envelope>>) -> Self {
        EnvelopeSpec { terms }
    }

    /// The same spectrum, with weight 1, for every `(j, l)` of `bp`.
    pub fn uniform(bp: &BlaschkeProduct, spectrum: Spectrum) -> Self {
        let terms = bp
            .distinct()
            .iter()
            .map(|&(_, n)| vec![Envelope::new(spectrum.clone(), C64::new(1.0, 0.0)); n])
            .collect();
        EnvelopeSpec { terms }
    }

    /// All coefficients zero.
    pub fn zero(bp: &BlaschkeProduct) -> Self {
        let terms = bp
            .distinct()
            .iter()
            .map(|&(_, n)| vec![Envelope::new(Spectrum::Flat, C64::new(0.0, 0.0)); n])
            .collect();
        EnvelopeSpec { terms }
    }

    fn check(&self, bp: &BlaschkeProduct) -> Result<()> {
        let distinct = bp.distinct();
        if self.terms.len() != distinct.len() {
            return Err(Error::EnvelopeStructure(alloc::format!(
                "{} distinct zeros but {} coefficient groups",
                distinct.len(),
                self.terms.len()
            )));
        }
        for (j, (group, &(_, n))) in self.terms.iter().zip(distinct).enumerate() {
            if group.len() != n {
                return Err(Error::EnvelopeStructure(alloc::format!(
                    "zero #{j} has multiplicity {n} but {} coefficients",
                    group.len()
                )));
            }
        }
        Ok(())
    }
}

fn check_line(grid: &Grid) -> Result<()> {
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    Ok(())
}

/// `c_{jl}` on the grid: the inverse transform of `ĉ_{jl}` restricted to
/// the bins strictly inside `(−1, 0)`.
pub fn coefficient_signal(envelope: &Envelope, grid: &Grid) -> Result<Signal> {
    check_line(grid)?;
    let values = (0..grid.len())
        .map(|k| {
            let xi = grid.axis_frequency(0, k);
            if xi > -1.0 && xi < 0.0 {
                envelope.value(xi)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    idft(&Signal::new(grid.clone(), values, Domain::Frequency)?)
}

/// `f(x) = Re Σ_{j,l} c_{jl}(x) / (1 − λ_j e^{−ix})^l` sampled on a 1-D grid.
pub fn synthesize(bp: &BlaschkeProduct, env: &EnvelopeSpec, grid: &Grid) -> Result<Signal> {
    check_line(grid)?;
    env.check(bp)?;
    let mut total = vec![C64::new(0.0, 0.0); grid.len()];
    for (group, &(lambda, _)) in env.terms.iter().zip(bp.distinct()) {
        for (l, envelope) in group.iter().enumerate() {
            if envelope.weight == C64::new(0.0, 0.0) {
                continue;
            }
            let c = coefficient_signal(envelope, grid)?;
            for (k, out) in total.iter_mut().enumerate() {
                let x = grid.coordinate(0, k);
                let denom = C64::new(1.0, 0.0) - lambda * C64::new(x.cos(), -x.sin());
                *out += c.values()[k] / denom.powi(l as i32 + 1);
            }
        }
    }
    let real = total.into_iter().map(|v| C64::new(v.re, 0.0)).collect();
    Signal::new(grid.clone(), real, Domain::Space)
}

/// `ê_{jl}(ξ) = ĉ_{jl}(ξ) / (2 (l−1)!)`: the coefficients of the general
/// solution `f̂(ξ − m) = Σ e_{jl}(ξ) λ_j^m ∏_{q=1}^{l−1} (m + q)`.
pub fn general_solution(bp: &BlaschkeProduct, env: &EnvelopeSpec, xi: f64, m: usize) -> Result<C64> {
    env.check(bp)?;
    let mut total = C64::new(0.0, 0.0);
    for (group, &(lambda, _)) in env.terms.iter().zip(bp.distinct()) {
        let mut factorial = 1.0;
        for (l_minus_1, envelope) in group.iter().enumerate() {
            if l_minus_1 > 0 {
                factorial *= l_minus_1 as f64;
            }
            let e = envelope.value(xi) / (2.0 * factorial);
            let rising: f64 = (1..=l_minus_1).map(|q| (m + q) as f64).product();
            total += e * lambda.powu(m as u32) * rising;
        }
    }
    Ok(total)
}

/// Outcome of [`certify_membership`].
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// `‖H(f cos θ) − f sin θ‖₂ / ‖f‖₂`.
    pub real_residual: f64,
    /// `‖H(f e^{iθ}) + i f e^{iθ}‖₂ / ‖f‖₂`.
    pub complex_residual: f64,
    pub tolerance: f64,
}

impl Certificate {
    pub fn real_holds(&self) -> bool {
        self.real_residual < self.tolerance
    }

    pub fn complex_holds(&self) -> bool {
        self.complex_residual < self.tolerance
    }

    /// Both forms give the same verdict.
    pub fn agree(&self) -> bool {
        self.real_holds() == self.complex_holds()
    }

    pub fn holds(&self) -> bool {
        self.real_holds() && self.complex_holds()
    }
}

/// Checks `H(f cos θ) = f sin θ` and `H(f e^{iθ}) = −i f e^{iθ}` on the grid.
pub fn certify_membership(f: &Signal, bp: &BlaschkeProduct, tolerance: f64) -> Result<Certificate> {
    check_line(f.grid())?;
    f.expect_domain(Domain::Space)?;
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!("tolerance must be positive, got {tolerance}")));
    }
    if !f.is_real(crate::analytic::REAL_TOL) {
        return Err(Error::ComplexInput);
    }
    let grid = f.grid();
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Ok(Certificate { real_residual: 0.0, complex_residual: 0.0, tolerance });
    }
    let rotation: Vec<C64> = (0..grid.len()).map(|k| bp.on_circle(grid.coordinate(0, k))).collect();
    let h = partial_hilbert(1, 1)?;

    let modulate = |g: fn(f64, C64) -> C64| {
        let values = f.values().iter().zip(&rotation).map(|(v, &b)| g(v.re, b)).collect();
        Signal::new(grid.clone(), values, Domain::Space)
    };
    let f_cos = modulate(|v, b| C64::new(v * b.re, 0.0))?;
    let f_sin = modulate(|v, b| C64::new(v * b.im, 0.0))?;
    let real_residual = apply(&h, &f_cos)?.sub(&f_sin)?.l2_norm() / norm;

    let f_rot = modulate(|v, b| b * v)?;
    let complex_residual = apply(&h, &f_rot)?.add(&f_rot.scale(C64::new(0.0, 1.0)))?.l2_norm() / norm;
    Ok(Certificate { real_residual, complex_residual, tolerance })
}

/// Values of the spectral difference operators.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceCheck {
    /// `max_{ξ ≤ 0} |(τ_a f̂)(ξ)|`.
    pub tau_max: f64,
    /// `max_{ξ ≥ 0} |(ι_ā f̂)(ξ)|`.
    pub iota_max: f64,
    /// `max |f̂|`.
    pub scale: f64,
    pub tolerance: f64,
}

impl DifferenceCheck {
    pub fn passes(&self) -> bool {
        self.tau_max <= self.tolerance * self.scale && self.iota_max <= self.tolerance * self.scale
    }
}

/// Number of bins in one unit of frequency, if `L / π` is an integer.
pub fn unit_shift(grid: &Grid) -> Result<usize> {
    let spacing = grid.frequency_spacing(0);
    let bins = 1.0 / spacing;
    let rounded = bins.round();
    if rounded < 1.0 || (bins - rounded).abs() > 1e-9 * bins {
        return Err(Error::IncommensurateSpacing { spacing });
    }
    Ok(rounded as usize)
}

/// Applies `∏ (τ − a_j)` with `(τF)(ξ) = F(ξ − 1)` and `∏ (ι − ā_j)` with
/// `(ιF)(ξ) = F(ξ + 1)` to a 1-D spectrum. Bins shifted in from outside the
/// grid count as zero.
pub fn difference_operator_check(
    f_spectrum: &Signal,
    bp: &BlaschkeProduct,
    tolerance: f64,
) -> Result<DifferenceCheck> {
    let grid = f_spectrum.grid();
    check_line(grid)?;
    f_spectrum.expect_domain(Domain::Frequency)?;
    let s = unit_shift(grid)? as isize;
    let n = grid.len() as isize;
    // values by signed index, position k' + N/2
    let mut ordered = vec![C64::new(0.0, 0.0); grid.len()];
    for k in 0..grid.len() {
        ordered[(grid.signed_index(0, k) + n / 2) as usize] = f_spectrum.values()[k];
    }
    let shifted = |v: &[C64], offset: isize| -> Vec<C64> {
        (0..n)
            .map(|p| {
                let q = p + offset;
                if (0..n).contains(&q) {
                    v[q as usize]
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect()
    };
    let mut tau = ordered.clone();
    let mut iota = ordered.clone();
    for &a in bp.zeros() {
        tau = shifted(&tau, -s).iter().zip(&tau).map(|(x, y)| x - a * y).collect();
        iota = shifted(&iota, s).iter().zip(&iota).map(|(x, y)| x - a.conj() * y).collect();
    }
    let mut tau_max = 0.0f64;
    let mut iota_max = 0.0f64;
    for p in 0..n {
        let signed = p - n / 2;
        if signed <= 0 {
            tau_max = tau_max.max(tau[p as usize].norm());
        }
        if signed >= 0 {
            iota_max = iota_max.max(iota[p as usize].norm());
        }
    }
    Ok(DifferenceCheck { tau_max, iota_max, scale: f_spectrum.max_abs(), tolerance })
}

/// `F(x) = ∏ f_j(x_j)` for 1-D signals `f_j`, on the product grid.
pub fn tensor_product(factors: &[Signal]) -> Result<Signal> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("tensor product of no factors".into()));
    }
    let mut samples = Vec::new();
    let mut extents = Vec::new();
    for f in factors {
        check_line(f.grid())?;
        f.expect_domain(Domain::Space)?;
        samples.push(f.grid().samples_per_axis()[0]);
        extents.push(f.grid().half_extent()[0]);
    }
    let grid = Grid::new(&samples, &extents)?;
    let mut values = vec![C64::new(0.0, 0.0); grid.len()];
    grid.for_each_index(|flat, index| {
        values[flat] = index.iter().zip(factors).map(|(&k, f)| f.values()[k]).product();
    });
    Signal::new(grid, values, Domain::Space)
}
