//! The Bedrosian identity `T(fg) = f·Tg` for hyperoctant-constant `T`.
//!
//! [`residual`] measures both sides on the grid, [`characterization_residual`]
//! evaluates the equivalent spectral condition
//!
//! ```text
//! Σ_{j ≠ k} (m_k − m_j) ∫_{Q_j} f̂(ξ − η) ĝ(η) dη = 0,   ξ ∈ Q_k,
//! ```
//!
//! and the submodules decide support conditions symbolically ([`region`]),
//! test necessity statements against numerical supports ([`necessity`]) and
//! build the standard test signals ([`construct`]).

pub mod construct;
pub mod necessity;
pub mod region;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


use crate::fft::{fft_nd, Direction};
use crate::lattice::{Domain, Grid, Signal};
use crate::operators::{apply, MultiplierOp};
use crate::spectral::dft;
use crate::{Error, Result, C64};

pub use construct::{counterexample_pair, gaussian_bump, type_two_demo, TypeTwoDemo};
pub use necessity::{check_axis_necessity, check_necessity, NecessityConfig, NecessityVerdict};
pub use region::{check_support_condition, closed_under_addition, necessity_region, Condition, Sufficiency, SupportRegion};

/// Below `ABSOLUTE_FLOOR · ‖fg‖` the residual is reported unnormalized.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BedrosianReport {
    /// `‖T(fg) − f·Tg‖₂ / ‖T(fg)‖₂`.
    pub residual_l2_rel: f64,
    /// `max |T(fg) − f·Tg|`.
    pub residual_max: f64,
    /// Normalized characterization integral, when computed.
    pub characterization_max: Option<f64>,
    /// `Holds` iff `residual_l2_rel < tolerance`.
    pub verdict: Verdict,
    pub tolerance: f64,
    pub grid: Grid,
    pub operator: MultiplierOp,
}

/// Compares `T(fg)` with `f·Tg` on the grid.
pub fn residual(op: &MultiplierOp, f: &Signal, g: &Signal, tolerance: f64) -> Result<BedrosianReport> {
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(Error::InvalidArgument(alloc::format!("tolerance must be positive, got {tolerance}")));
    }
    f.expect_domain(Domain::Space)?;
    f.expect_compatible(g)?;
    let fg = f.mul(g)?;
    let lhs = apply(op, &fg)?;
    let rhs = f.mul(&apply(op, g)?)?;
    let diff = lhs.sub(&rhs)?;
    let scale = lhs.l2_norm();
    let absolute = diff.l2_norm();
    let residual_l2_rel = if scale < ABSOLUTE_FLOOR * fg.l2_norm() || scale == 0.0 {
        absolute
    } else {
        absolute / scale
    };
    let verdict = if residual_l2_rel < tolerance { Verdict::Holds } else { Verdict::Fails };
    Ok(BedrosianReport {
        residual_l2_rel,
        residual_max: diff.max_abs(),
        characterization_max: None,
        verdict,
        tolerance,
        grid: f.grid().clone(),
        operator: op.clone(),
    })
}

/// [`residual`] with the characterization integral filled in.
pub fn residual_with_characterization(
    op: &MultiplierOp,
    f: &Signal,
    g: &Signal,
    tolerance: f64,
) -> Result<BedrosianReport> {
    let mut report = residual(op, f, g, tolerance)?;
    report.characterization_max = Some(characterization_residual(op, f, g)?);
    Ok(report)
}

/// `max_ξ |Σ_j (m(ξ) − m_j) ∫_{Q_j} f̂(ξ−η) ĝ(η) dη| / (‖f̂‖₁ ‖ĝ‖₁)`.
///
/// `ĝ` is split into one masked copy per hyperoctant; a bin with `z` zero-sign
/// axes goes to each of its `2^z` adjacent hyperoctants with weight `2^{-z}`.
/// Each masked copy is convolved with `f̂` on a grid padded to `2N` per axis,
/// so the convolutions are linear rather than circular.
pub fn characterization_residual(op: &MultiplierOp, f: &Signal, g: &Signal) -> Result<f64> {
    f.expect_domain(Domain::Space)?;
    f.expect_compatible(g)?;
    let grid = f.grid();
    let d = grid.dim();
    if op.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: op.dim() });
    }
    let big_f = dft(f)?;
    let big_g = dft(g)?;
    let norm = big_f.l1_norm() * big_g.l1_norm();
    if norm == 0.0 {
        return Ok(0.0);
    }

    let shape: Vec<usize> = grid.samples_per_axis().iter().map(|n| 2 * n).collect();
    let padded_len: usize = shape.iter().product();
    let place = |index: &[usize]| -> usize {
        index.iter().enumerate().fold(0, |acc, (j, &k)| {
            let m = shape[j] as isize;
            let s = grid.signed_index(j, k).rem_euclid(m) as usize;
            acc * shape[j] + s
        })
    };

    let mut f_hat = vec![C64::new(0.0, 0.0); padded_len];
    grid.for_each_index(|flat, index| f_hat[place(index)] = big_f.values()[flat]);
    fft_nd(&mut f_hat, &shape, Direction::Forward);

    let quadrants = 1usize << d;
    let scale = grid.frequency_weight() / padded_len as f64;
    let mut convolutions = Vec::with_capacity(quadrants);
    for quadrant in 0..quadrants {
        let mut masked = vec![C64::new(0.0, 0.0); padded_len];
        let mut any = false;
        grid.for_each_index(|flat, index| {
            let v = big_g.values()[flat];
            if v == C64::new(0.0, 0.0) {
                return;
            }
            let mut w = 1.0;
            for (j, &k) in index.iter().enumerate() {
                let negative = quadrant >> j & 1 == 1;
                match crate::operators::bin_sign(grid, j, k) {
                    0 => w *= 0.5,
                    1 if negative => w = 0.0,
                    -1 if !negative => w = 0.0,
                    _ => {}
                }
            }
            if w != 0.0 {
                masked[place(index)] = v * w;
                any = true;
            }
        });
        if !any {
            convolutions.push(None);
            continue;
        }
        fft_nd(&mut masked, &shape, Direction::Forward);
        for (m, h) in masked.iter_mut().zip(&f_hat) {
            *m *= h;
        }
        fft_nd(&mut masked, &shape, Direction::Inverse);
        convolutions.push(Some(masked));
    }

    // multiplier on the padded grid, zero-sign at DC and at the padded Nyquist
    let table = op.cell_table();
    let mut pow = 1;
    let digits: Vec<Vec<usize>> = shape
        .iter()
        .map(|&n| {
            let axis = (0..n)
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
            axis
        })
        .collect();

    let values = op.quadrant_values();
    let mut worst = 0.0f64;
    let mut index = vec![0usize; d];
    for flat in 0..padded_len {
        let cell: usize = index.iter().zip(&digits).map(|(&k, axis)| axis[k]).sum();
        let m = table[cell];
        let mut total = C64::new(0.0, 0.0);
        for (quadrant, conv) in convolutions.iter().enumerate() {
            if let Some(c) = conv {
                let diff = m - values[quadrant];
                if diff != C64::new(0.0, 0.0) {
                    total += diff * c[flat];
                }
            }
        }
        worst = worst.max(total.norm() * scale);
        for j in (0..d).rev() {
            index[j] += 1;
            if index[j] < shape[j] {
                break;
            }
            index[j] = 0;
        }
    }
    Ok(worst / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_grid, sample};
    use crate::operators::{bin_sign, partial_hilbert};
    use crate::spectral::idft;
    use core::f64::consts::PI;

    fn gaussian(grid: &Grid) -> Signal {
        sample(grid, |x| C64::new((-x.iter().map(|t| t * t).sum::<f64>()).exp(), 0.0))
    }

    #[test]
    fn identity_operator_gives_zero() {
        let g = make_grid(1, &[256], &[20.0]).unwrap();
        let one = sample(&g, |_| C64::new(1.0, 0.0));
        let other = sample(&g, |x| C64::new((x[0] * 0.7).sin() / (1.0 + x[0] * x[0]), 0.0));
        let r = residual(&MultiplierOp::identity(1).unwrap(), &one, &other, 1e-12).unwrap();
        assert_eq!(r.residual_l2_rel, 0.0);
        assert_eq!(r.residual_max, 0.0);
        assert!(r.verdict.holds());
    }

    #[test]
    fn gaussians_fail() {
        let g = make_grid(1, &[1024], &[20.0]).unwrap();
        let f = gaussian(&g);
        let h = partial_hilbert(1, 1).unwrap();
        let r = residual_with_characterization(&h, &f, &f, 1e-3).unwrap();
        assert!(r.residual_l2_rel > 0.1, "{}", r.residual_l2_rel);
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.characterization_max.unwrap() > 1e-2);
    }

    #[test]
    fn rejects_bad_input() {
        let g1 = make_grid(1, &[16], &[1.0]).unwrap();
        let g2 = make_grid(1, &[32], &[1.0]).unwrap();
        let h = partial_hilbert(1, 1).unwrap();
        let a = Signal::zeros(g1.clone(), Domain::Space);
        let b = Signal::zeros(g2, Domain::Space);
        assert_eq!(residual(&h, &a, &b, 1e-3), Err(Error::GridMismatch));
        assert!(residual(&h, &a, &a, 0.0).is_err());
        assert!(characterization_residual(&h, &a, &b).is_err());
        assert_eq!(residual(&h, &a, &a, 1e-3).unwrap().residual_l2_rel, 0.0);
    }

    #[test]
    fn characterization_matches_direct_sum() {
        // a small 2-D case against the defining double sum
        let g = make_grid(2, &[8, 8], &[PI, PI]).unwrap();
        let f = sample(&g, |x| C64::new((-(x[0] * x[0] + 2.0 * x[1] * x[1]) / 4.0).exp(), x[0] * 0.01));
        let gg = sample(&g, |x| C64::new((x[0] - x[1]).cos() * (-(x[0] * x[0] + x[1] * x[1]) / 6.0).exp(), 0.0));
        let op = MultiplierOp::from_quadrant_values(vec![
            C64::new(1.0, 0.5),
            C64::new(-0.3, 0.0),
            C64::new(0.0, 2.0),
            C64::new(0.7, -0.1),
        ])
        .unwrap();
        let fast = characterization_residual(&op, &f, &gg).unwrap();

        let ff = dft(&f).unwrap();
        let gh = dft(&gg).unwrap();
        let dxi = g.frequency_weight();
        let mut worst = 0.0f64;
        for s0 in -8isize..8 {
            for s1 in -8isize..8 {
                let sign = |s: isize| if s == 0 || s == -8 { 0 } else { s.signum() as i8 };
                let m = op.value_at_signs(&[sign(s0), sign(s1)]).unwrap();
                let mut total = C64::new(0.0, 0.0);
                g.for_each_index(|flat, idx| {
                    let e0 = s0 - g.signed_index(0, idx[0]);
                    let e1 = s1 - g.signed_index(1, idx[1]);
                    let (Some(k0), Some(k1)) = (g.storage_index(0, e0), g.storage_index(1, e1)) else {
                        return;
                    };
                    let m_eta = op
                        .value_at_signs(&[bin_sign(&g, 0, idx[0]), bin_sign(&g, 1, idx[1])])
                        .unwrap();
                    total += (m - m_eta) * ff.values()[k0 * 8 + k1] * gh.values()[flat] * dxi;
                });
                worst = worst.max(total.norm());
            }
        }
        let slow = worst / (ff.l1_norm() * gh.l1_norm());
        assert!((fast - slow).abs() < 1e-12 * slow.max(1e-3), "{fast} vs {slow}");
    }

    #[test]
    fn band_separated_pair_has_zero_characterization() {
        let g = make_grid(1, &[256], &[32.0 * PI]).unwrap();
        let low = gaussian_bump(&g, &[0.0], 0.05, None).unwrap();
        let high = gaussian_bump(&g, &[2.0], 0.05, None).unwrap();
        let f = idft(&low).unwrap();
        let h = idft(&high).unwrap();
        let op = partial_hilbert(1, 1).unwrap();
        assert!(characterization_residual(&op, &f, &h).unwrap() < 1e-14);
        assert!(residual(&op, &f, &h, 1e-8).unwrap().verdict.holds());
    }
}
