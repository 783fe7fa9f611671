//! Test-signal constructions: spectral bumps, the smooth counterexample pair
//! and the type-two geometry.

use alloc::vec;
use alloc::vec::Vec;


#[allow(unused_imports)]
use num_traits::Float;

use super::region::SupportRegion;
use super::{residual, BedrosianReport};
use crate::lattice::{Domain, Grid, Signal};
use crate::operators::{MultiplierOp, SignPattern};
use crate::spectral::{dft, idft};
use crate::{sample, Error, Result, C64};

/// Bumps are cut off at this many standard deviations.
pub const BUMP_CUTOFF: f64 = 8.0;

/// Frequency-domain Gaussian `e^{−|ξ−c|²/(2σ²)}` on `|ξ − c| ≤ 8σ`, zero
/// elsewhere and, when `clip` is given, zero outside that region.
pub fn gaussian_bump(grid: &Grid, center: &[f64], sigma: f64, clip: Option<&SupportRegion>) -> Result<Signal> {
    if center.len() != grid.dim() {
        return Err(Error::DimensionMismatch { expected: grid.dim(), found: center.len() });
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidArgument(alloc::format!("bump width must be positive, got {sigma}")));
    }
    if let Some(region) = clip {
        if region.dim() != grid.dim() {
            return Err(Error::DimensionMismatch { expected: grid.dim(), found: region.dim() });
        }
    }
    let cutoff = (BUMP_CUTOFF * sigma).powi(2);
    let mut values = vec![C64::new(0.0, 0.0); grid.len()];
    let mut xi = vec![0.0; grid.dim()];
    grid.for_each_index(|flat, index| {
        let mut r2 = 0.0;
        for (j, &k) in index.iter().enumerate() {
            xi[j] = grid.axis_frequency(j, k);
            r2 += (xi[j] - center[j]).powi(2);
        }
        if r2 > cutoff || clip.is_some_and(|r| !r.contains(&xi)) {
            return;
        }
        values[flat] = C64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0);
    });
    Signal::new(grid.clone(), values, Domain::Frequency)
}

/// Space-domain signal whose spectrum is [`gaussian_bump`].
pub fn bump_signal(grid: &Grid, center: &[f64], sigma: f64, clip: Option<&SupportRegion>) -> Result<Signal> {
    idft(&gaussian_bump(grid, center, sigma, clip)?)
}

/// `f(t) = 1/(1+t²)`.
pub fn poisson(t: f64) -> f64 {
    1.0 / (1.0 + t * t)
}

/// `g(t) = (1−2t²)/(4+5t²+t⁴)`.
pub fn counterexample_g(t: f64) -> f64 {
    let t2 = t * t;
    (1.0 - 2.0 * t2) / (4.0 + 5.0 * t2 + t2 * t2)
}

/// `H g(t) = t/(1+t²) − 3t/(2(4+t²))`.
pub fn counterexample_hg(t: f64) -> f64 {
    t / (1.0 + t * t) - 3.0 * t / (2.0 * (4.0 + t * t))
}

/// Samples `F(x) = ∏ f(x_j)` and `G(x) = ∏ g(x_j)`. Both spectra cover all of
/// frequency space, yet `T(FG) = F·TG` for every hyperoctant-constant `T`.
pub fn counterexample_pair(dim: usize, grid: &Grid) -> Result<(Signal, Signal)> {
    if grid.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: grid.dim() });
    }
    let f = sample(grid, |x| C64::new(x.iter().map(|&t| poisson(t)).product(), 0.0));
    let g = sample(grid, |x| C64::new(x.iter().map(|&t| counterexample_g(t)).product(), 0.0));
    Ok((f, g))
}

/// Output of [`type_two_demo`].
#[derive(Debug, Clone)]
pub struct TypeTwoDemo {
    pub f: Signal,
    pub g: Signal,
    pub report: BedrosianReport,
    /// The two hyperoctants with different multiplier values.
    pub patterns: (SignPattern, SignPattern),
    /// Point where the characterization integrand is evaluated (inside `B(0,1)`).
    pub xi1: Vec<f64>,
    /// Centre of `supp ĝ` (outside `B(0,1)`).
    pub xi2: Vec<f64>,
    pub radius: f64,
    /// `max |ξ|` over the non-zero bins of `f̂`.
    pub f_support_max_norm: f64,
    /// `min |ξ|` over the non-zero bins of `ĝ`.
    pub g_support_min_norm: f64,
}

/// Geometry in the frame where the first pattern is all-plus and the shared
/// sign sits on the first coordinate.
const EPSILON: f64 = 0.3;
const R1: f64 = 0.02;
const R2: f64 = 0.86;
const RADIUS: f64 = 0.08;

/// Grid of the demo: `Δξ = 1/200`, Nyquist `2.56`.
pub fn type_two_grid() -> Grid {
    Grid::new(&[1024, 1024], &[200.0 * core::f64::consts::PI; 2]).expect("valid grid")
}

/// Builds `f`, `g` with `supp f̂ ⊆ B(0,1)` and `supp ĝ` outside the open unit
/// ball for which `T(fg) ≠ f·Tg`.
pub fn type_two_demo(op: &MultiplierOp) -> Result<TypeTwoDemo> {
    type_two_demo_on(op, &type_two_grid())
}

/// [`type_two_demo`] on a caller-supplied 2-D grid.
pub fn type_two_demo_on(op: &MultiplierOp, grid: &Grid) -> Result<TypeTwoDemo> {
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: op.dim() });
    }
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    if op.is_scalar_within(1e-12) {
        return Err(Error::TrivialOperator);
    }
    let values = op.quadrant_values();
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    // patterns differing on exactly one axis share the sign of the other
    let (l1, l2, shared) = (0..4usize)
        .flat_map(|p| [(p, p ^ 1, 1usize), (p, p ^ 2, 0usize)])
        .find(|&(p, q, _)| (values[p] - values[q]).norm() > 1e-12 * scale)
        .ok_or(Error::TrivialOperator)?;
    let other = 1 - shared;
    let p1 = SignPattern::new(2, l1)?;
    let p2 = SignPattern::new(2, l2)?;

    // canonical frame: c = (shared coordinate, other coordinate)
    let to_actual = |c: [f64; 2]| {
        let mut x = vec![0.0; 2];
        x[shared] = f64::from(p1.sign(shared)) * c[0];
        x[other] = f64::from(p1.sign(other)) * c[1];
        x
    };
    let xi1 = to_actual([1.0 - EPSILON / 2.0, R1]);
    let xi2 = to_actual([1.0 - EPSILON, -R2]);
    let f_center: Vec<f64> = xi1.iter().zip(&xi2).map(|(a, b)| a - b).collect();

    let sigma = RADIUS / BUMP_CUTOFF;
    let f_hat = gaussian_bump(grid, &f_center, sigma, None)?;
    let g_hat = gaussian_bump(grid, &xi2, sigma, None)?;
    let f_support_max_norm = support_norms(&f_hat).1;
    let g_support_min_norm = support_norms(&g_hat).0;
    let f = idft(&f_hat)?;
    let g = idft(&g_hat)?;
    let report = residual(op, &f, &g, 1e-3)?;
    Ok(TypeTwoDemo {
        f,
        g,
        report,
        patterns: (p1, p2),
        xi1,
        xi2,
        radius: RADIUS,
        f_support_max_norm,
        g_support_min_norm,
    })
}

/// `(min |ξ|, max |ξ|)` over the non-zero bins of a spectrum.
pub fn support_norms(spectrum: &Signal) -> (f64, f64) {
    let grid = spectrum.grid();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    grid.for_each_index(|flat, index| {
        if spectrum.values()[flat] == C64::new(0.0, 0.0) {
            return;
        }
        let r = index
            .iter()
            .enumerate()
            .map(|(j, &k)| grid.axis_frequency(j, k).powi(2))
            .sum::<f64>()
            .sqrt();
        lo = lo.min(r);
        hi = hi.max(r);
    });
    (lo, hi)
}

/// Numerical spectral support: bins with `|ŝ| > threshold · max|ŝ|`.
pub fn numerical_support(s: &Signal, threshold: f64) -> Result<Vec<Vec<f64>>> {
    let spectrum = match s.domain() {
        Domain::Space => dft(s)?,
        Domain::Frequency => s.clone(),
    };
    let cut = threshold * spectrum.max_abs();
    let grid = spectrum.grid();
    let mut out = Vec::new();
    grid.for_each_index(|flat, index| {
        let v = spectrum.values()[flat].norm();
        if v > cut && v > 0.0 {
            out.push(index.iter().enumerate().map(|(j, &k)| grid.axis_frequency(j, k)).collect());
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_grid;
    use crate::operators::partial_hilbert;
    use core::f64::consts::PI;

    #[test]
    fn counterexample_values() {
        assert!((counterexample_g(1.0) + 0.1).abs() < 1e-15);
        assert!((counterexample_hg(1.0) - 0.2).abs() < 1e-15);
        let grid = make_grid(2, &[4, 4], &[2.0, 2.0]).unwrap();
        let (f, g) = counterexample_pair(2, &grid).unwrap();
        // x = (−2, −1)
        let k = grid.ravel(&[0, 1]).unwrap();
        assert!((f.values()[k].re - poisson(-2.0) * poisson(-1.0)).abs() < 1e-15);
        assert!((g.values()[k].re - counterexample_g(-2.0) * counterexample_g(-1.0)).abs() < 1e-15);
        assert!(counterexample_pair(1, &grid).is_err());
    }

    #[test]
    fn one_dimensional_counterexample_holds() {
        let grid = make_grid(1, &[8192], &[50.0]).unwrap();
        let (f, g) = counterexample_pair(1, &grid).unwrap();
        let r = residual(&partial_hilbert(1, 1).unwrap(), &f, &g, 1e-3).unwrap();
        assert!(r.verdict.holds(), "{}", r.residual_l2_rel);
    }

    #[test]
    fn bump_is_truncated_and_clipped() {
        let grid = make_grid(2, &[64, 64], &[8.0 * PI, 8.0 * PI]).unwrap();
        let b = gaussian_bump(&grid, &[1.0, 1.0], 0.05, None).unwrap();
        let (lo, hi) = support_norms(&b);
        assert!(lo >= 2f64.sqrt() - 0.4 - 1e-12 && hi <= 2f64.sqrt() + 0.4 + 1e-12);
        assert_eq!(b.max_abs(), 1.0);
        let quarter = SupportRegion::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let c = gaussian_bump(&grid, &[1.0, 1.0], 0.05, Some(&quarter)).unwrap();
        for xi in numerical_support(&c, 0.0).unwrap() {
            assert!(quarter.contains(&xi));
        }
        assert!(gaussian_bump(&grid, &[1.0], 0.05, None).is_err());
        assert!(gaussian_bump(&grid, &[1.0, 1.0], 0.0, None).is_err());
    }

    #[test]
    fn type_two_rejects_trivial_operators() {
        let grid = make_grid(2, &[64, 64], &[8.0 * PI, 8.0 * PI]).unwrap();
        assert_eq!(
            type_two_demo_on(&MultiplierOp::identity(2).unwrap(), &grid).unwrap_err(),
            Error::TrivialOperator
        );
        let two = MultiplierOp::scalar(2, C64::new(2.0, 0.0)).unwrap();
        assert_eq!(type_two_demo_on(&two, &grid).unwrap_err(), Error::TrivialOperator);
        assert!(type_two_demo_on(&partial_hilbert(1, 1).unwrap(), &grid).is_err());
    }

    #[test]
    fn type_two_geometry_for_h1() {
        let grid = make_grid(2, &[256, 256], &[50.0 * PI, 50.0 * PI]).unwrap();
        let demo = type_two_demo_on(&partial_hilbert(1, 2).unwrap(), &grid).unwrap();
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(norm(&demo.xi1) < 1.0);
        assert!(norm(&demo.xi2) > 1.0);
        let diff: Vec<f64> = demo.xi1.iter().zip(&demo.xi2).map(|(a, b)| a - b).collect();
        assert!(norm(&diff) < 1.0);
        assert!(demo.f_support_max_norm < 1.0);
        assert!(demo.g_support_min_norm > 1.0);
        let (p, q) = demo.patterns;
        let h = partial_hilbert(1, 2).unwrap();
        assert_ne!(h.value(p).unwrap(), h.value(q).unwrap());
        assert_eq!(p.sign(1), q.sign(1));
        assert!(demo.report.residual_l2_rel > 1e-3);
    }
}
