//! Necessity statements checked against numerical spectral supports.
//!
//! Both checks first test their hypotheses on `f`. When a hypothesis fails
//! the verdict is [`NecessityVerdict::Inapplicable`]; otherwise the predicted
//! outcome (support containment of `ĝ`) is compared with the residual.

use alloc::string::String;
use alloc::vec::Vec;


use super::construct::numerical_support;
use super::region::{necessity_region, SupportRegion};
use super::{residual, BedrosianReport};
use crate::lattice::{Domain, Grid, Signal};
use crate::operators::{partial_hilbert, MultiplierOp, SignPattern};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NecessityConfig {
    /// Bins with `|ŝ| > support_threshold · max|ŝ|` form the support.
    pub support_threshold: f64,
    /// Residual tolerance for the identity verdict.
    pub tolerance: f64,
}

impl Default for NecessityConfig {
    fn default() -> Self {
        NecessityConfig { support_threshold: 1e-8, tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NecessityVerdict {
    Inapplicable {
        reason: String,
    },
    Evaluated {
        /// Whether `supp ĝ` lies in the predicted region.
        predicted_holds: bool,
        /// One report per operator tested.
        reports: Vec<BedrosianReport>,
        /// Prediction and residual verdicts agree.
        consistent: bool,
    },
}

impl NecessityVerdict {
    pub fn is_applicable(&self) -> bool {
        matches!(self, NecessityVerdict::Evaluated { .. })
    }
}

/// Slack for closed-set tests on bin frequencies.
fn slack(grid: &Grid) -> f64 {
    1e-9 * (0..grid.dim()).map(|j| grid.frequency_spacing(j)).fold(0.0, f64::max)
}

fn bin_near(grid: &Grid, support: &[Vec<f64>], target: &[f64]) -> bool {
    support.iter().any(|xi| {
        xi.iter()
            .zip(target)
            .enumerate()
            .all(|(j, (x, t))| (x - t).abs() <= 0.5 * grid.frequency_spacing(j) + slack(grid))
    })
}

fn check_inputs(f: &Signal, g: &Signal, dim: usize, config: &NecessityConfig) -> Result<()> {
    f.expect_domain(Domain::Space)?;
    f.expect_compatible(g)?;
    if f.grid().dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: f.grid().dim() });
    }
    if !(config.support_threshold >= 0.0 && config.support_threshold < 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "support threshold must lie in [0, 1), got {}",
            config.support_threshold
        )));
    }
    Ok(())
}

fn inapplicable(reason: impl Into<String>) -> Result<NecessityVerdict> {
    Ok(NecessityVerdict::Inapplicable { reason: reason.into() })
}

/// Tests the simplex necessity statement for one operator with
/// `m|_Q ≠ m|_{−Q}`: under the hypotheses on `f`, the identity holds iff
/// `supp ĝ ⊆ necessity_region(pattern, a, b)`.
pub fn check_necessity(
    op: &MultiplierOp,
    f: &Signal,
    g: &Signal,
    pattern: SignPattern,
    a: &[f64],
    b: &[f64],
    config: &NecessityConfig,
) -> Result<NecessityVerdict> {
    let region = necessity_region(pattern, a, b)?;
    let d = pattern.dim();
    if op.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: op.dim() });
    }
    check_inputs(f, g, d, config)?;
    let grid = f.grid();
    let eps = slack(grid);

    let q = op.value(pattern)?;
    let q_neg = op.value(pattern.negate())?;
    if q == q_neg {
        return inapplicable("the operator takes the same value on Q and -Q");
    }

    let nu = |j: usize| f64::from(pattern.sign(j));
    let f_support = numerical_support(f, config.support_threshold)?;
    if f_support.is_empty() {
        return inapplicable("f has an empty spectrum");
    }
    let in_f_region = |xi: &[f64]| {
        let upper = (0..d).all(|j| nu(j) * xi[j] >= -eps && nu(j) * xi[j] <= a[j] + eps);
        let lower = (0..d).all(|j| -nu(j) * xi[j] >= -eps && -nu(j) * xi[j] <= b[j] + eps);
        upper || lower
    };
    if let Some(xi) = f_support.iter().find(|xi| !in_f_region(xi)) {
        return inapplicable(alloc::format!("supp f-hat leaves the corner boxes at {xi:?}"));
    }
    let corner_a: Vec<f64> = (0..d).map(|j| a[j] * nu(j)).collect();
    let corner_b: Vec<f64> = (0..d).map(|j| -b[j] * nu(j)).collect();
    for corner in [&corner_a, &corner_b] {
        if !bin_near(grid, &f_support, corner) {
            return inapplicable(alloc::format!("corner {corner:?} is not in supp f-hat"));
        }
    }

    let g_support = numerical_support(g, config.support_threshold)?;
    let in_cones = |xi: &[f64]| {
        (0..d).all(|j| nu(j) * xi[j] >= -eps) || (0..d).all(|j| nu(j) * xi[j] <= eps)
    };
    if let Some(xi) = g_support.iter().find(|xi| !in_cones(xi)) {
        return inapplicable(alloc::format!("supp g-hat leaves Q and -Q at {xi:?}"));
    }

    let predicted_holds = g_support.iter().all(|xi| contains_with_slack(&region, xi, eps));
    let report = residual(op, f, g, config.tolerance)?;
    let consistent = report.verdict.holds() == predicted_holds;
    Ok(NecessityVerdict::Evaluated { predicted_holds, reports: alloc::vec![report], consistent })
}

fn contains_with_slack(region: &SupportRegion, xi: &[f64], eps: f64) -> bool {
    if region.contains(xi) {
        return true;
    }
    // retry with the point nudged outwards by the slack
    let nudged: Vec<f64> = xi.iter().map(|&x| x + eps * x.signum()).collect();
    region.contains(&nudged)
}

/// Tests the per-axis necessity statement: if `supp f̂ ⊆ ∏[−a_j, b_j]` and
/// contains every extreme point of that box, the identity holds for every
/// generator `H_j` iff `supp ĝ ⊆ ∏ ℝ∖(−b_j, a_j)`.
pub fn check_axis_necessity(
    f: &Signal,
    g: &Signal,
    a: &[f64],
    b: &[f64],
    config: &NecessityConfig,
) -> Result<NecessityVerdict> {
    let d = f.grid().dim();
    let bounds_ok = a.len() == d && b.len() == d;
    if !bounds_ok {
        return Err(Error::DimensionMismatch { expected: d, found: a.len().max(b.len()) });
    }
    SupportRegion::axis_box(a, b)?;
    SupportRegion::box_complement_product(a, b)?;
    check_inputs(f, g, d, config)?;
    let grid = f.grid();
    let eps = slack(grid);

    let f_support = numerical_support(f, config.support_threshold)?;
    if f_support.is_empty() {
        return inapplicable("f has an empty spectrum");
    }
    let widened = SupportRegion::AxisBox {
        a: a.iter().map(|v| v + eps).collect(),
        b: b.iter().map(|v| v + eps).collect(),
    };
    if let Some(xi) = f_support.iter().find(|xi| !widened.contains(xi)) {
        return inapplicable(alloc::format!("supp f-hat leaves the box at {xi:?}"));
    }
    for corner in 0..1usize << d {
        let point: Vec<f64> = (0..d).map(|j| if corner >> j & 1 == 1 { -a[j] } else { b[j] }).collect();
        if !bin_near(grid, &f_support, &point) {
            return inapplicable(alloc::format!("extreme point {point:?} is not in supp f-hat"));
        }
    }

    let g_support = numerical_support(g, config.support_threshold)?;
    let narrowed = SupportRegion::BoxComplementProduct {
        a: a.iter().map(|v| v - eps).collect(),
        b: b.iter().map(|v| v - eps).collect(),
    };
    let predicted_holds = g_support.iter().all(|xi| narrowed.contains(xi));
    let reports = (1..=d)
        .map(|j| residual(&partial_hilbert(j, d)?, f, g, config.tolerance))
        .collect::<Result<Vec<_>>>()?;
    let holds = reports.iter().all(|r| r.verdict.holds());
    Ok(NecessityVerdict::Evaluated { predicted_holds, consistent: holds == predicted_holds, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bedrosian::construct::gaussian_bump;
    use crate::lattice::make_grid;
    use crate::spectral::idft;
    use core::f64::consts::PI;

    fn pat(s: &str) -> SignPattern {
        SignPattern::parse(s).unwrap()
    }

    fn grid() -> Grid {
        make_grid(2, &[128, 128], &[16.0 * PI, 16.0 * PI]).unwrap()
    }

    /// Quarter bumps at `(1,1)` and `(−1,−1)`, clipped to the corner boxes.
    fn corner_f(grid: &Grid) -> Signal {
        let upper = SupportRegion::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let lower = SupportRegion::axis_box(&[1.0, 1.0], &[0.0, 0.0]).unwrap();
        let a = gaussian_bump(grid, &[1.0, 1.0], 0.05, Some(&upper)).unwrap();
        let b = gaussian_bump(grid, &[-1.0, -1.0], 0.05, Some(&lower)).unwrap();
        idft(&a.add(&b).unwrap()).unwrap()
    }

    #[test]
    fn outside_configuration_predicts_failure() {
        let g = grid();
        let f = corner_f(&g);
        let gg = idft(&gaussian_bump(&g, &[0.3, 0.3], 0.1 / 8.0, None).unwrap()).unwrap();
        let v = check_necessity(
            &partial_hilbert(1, 2).unwrap(),
            &f,
            &gg,
            pat("++"),
            &[1.0, 1.0],
            &[1.0, 1.0],
            &NecessityConfig::default(),
        )
        .unwrap();
        match v {
            NecessityVerdict::Evaluated { predicted_holds, reports, consistent } => {
                assert!(!predicted_holds);
                assert!(reports[0].residual_l2_rel > 1e-3);
                assert!(consistent);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inside_configuration_is_reported_inconsistent() {
        // mass of f̂ near (−1,−1) plus ĝ near (0.8,0.8) lands inside −Q,
        // where m differs from its value on Q
        let g = grid();
        let f = corner_f(&g);
        let gg = idft(&gaussian_bump(&g, &[0.8, 0.8], 0.1 / 8.0, None).unwrap()).unwrap();
        let v = check_necessity(
            &partial_hilbert(1, 2).unwrap(),
            &f,
            &gg,
            pat("++"),
            &[1.0, 1.0],
            &[1.0, 1.0],
            &NecessityConfig::default(),
        )
        .unwrap();
        match v {
            NecessityVerdict::Evaluated { predicted_holds, reports, consistent } => {
                assert!(predicted_holds);
                assert!(reports[0].residual_l2_rel > 1.0);
                assert!(!consistent);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inapplicable_cases() {
        let g = grid();
        let gg = idft(&gaussian_bump(&g, &[0.8, 0.8], 0.0125, None).unwrap()).unwrap();
        let center = idft(&gaussian_bump(&g, &[0.5, 0.5], 0.0125, None).unwrap()).unwrap();
        let h = partial_hilbert(1, 2).unwrap();
        let cfg = NecessityConfig::default();
        let v = check_necessity(&h, &center, &gg, pat("++"), &[1.0, 1.0], &[1.0, 1.0], &cfg).unwrap();
        assert!(!v.is_applicable());
        let id = MultiplierOp::identity(2).unwrap();
        let v = check_necessity(&id, &corner_f(&g), &gg, pat("++"), &[1.0, 1.0], &[1.0, 1.0], &cfg).unwrap();
        assert!(!v.is_applicable());
        assert!(check_necessity(&h, &center, &gg, pat("++"), &[0.0, 1.0], &[1.0, 1.0], &cfg).is_err());
    }

    #[test]
    fn axis_necessity_both_ways() {
        let g = grid();
        let cfg = NecessityConfig::default();
        // f̂ covering the corners of [−1, 1]²
        let square = SupportRegion::axis_box(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        let mut spectrum = Signal::zeros(g.clone(), Domain::Frequency);
        for c in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            spectrum = spectrum.add(&gaussian_bump(&g, &c, 0.05, Some(&square)).unwrap()).unwrap();
        }
        let f = idft(&spectrum).unwrap();

        let far = idft(&gaussian_bump(&g, &[2.0, -2.0], 0.05, None).unwrap()).unwrap();
        match check_axis_necessity(&f, &far, &[1.0, 1.0], &[1.0, 1.0], &cfg).unwrap() {
            NecessityVerdict::Evaluated { predicted_holds, reports, consistent } => {
                assert!(predicted_holds && consistent);
                assert!(reports.iter().all(|r| r.residual_l2_rel < 1e-10));
            }
            other => panic!("{other:?}"),
        }
        let near = idft(&gaussian_bump(&g, &[2.0, 0.5], 0.05, None).unwrap()).unwrap();
        match check_axis_necessity(&f, &near, &[1.0, 1.0], &[1.0, 1.0], &cfg).unwrap() {
            NecessityVerdict::Evaluated { predicted_holds, consistent, .. } => {
                assert!(!predicted_holds && consistent);
            }
            other => panic!("{other:?}"),
        }
        let one_corner = idft(&gaussian_bump(&g, &[1.0, 1.0], 0.05, Some(&square)).unwrap()).unwrap();
        assert!(!check_axis_necessity(&one_corner, &far, &[1.0, 1.0], &[1.0, 1.0], &cfg).unwrap().is_applicable());
    }
}
