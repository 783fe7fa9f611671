//! Multidimensional analytic signals `𝒜f = f + Tf` concentrated on one
//! hyperoctant, and their polar form.

use alloc::vec::Vec;
use core::f64::consts::PI;


#[allow(unused_imports)]
use num_traits::Float;

use crate::lattice::{Domain, Signal};
use crate::operators::{apply, MultiplierOp, SignPattern};
use crate::{Error, Result, C64};

/// Imaginary parts below `REAL_TOL · max(1, max|s|)` count as zero.
pub const REAL_TOL: f64 = 1e-12;

/// `T = ∏_j (I + iν_j H_j) − I`: `2^d − 1` on the open hyperoctant of
/// `pattern` and `−1` on every other one.
pub fn concentration_operator(pattern: SignPattern) -> MultiplierOp {
    let d = pattern.dim();
    let n = 1usize << d;
    let mut values = alloc::vec![C64::new(-1.0, 0.0); n];
    values[pattern.index()] = C64::new((n - 1) as f64, 0.0);
    MultiplierOp::from_quadrant_values(values).expect("2^d values for a valid pattern")
}

/// `s + Ts` with `T` the concentration operator of `pattern`.
pub fn analytic_signal(s: &Signal, pattern: SignPattern) -> Result<Signal> {
    s.expect_domain(Domain::Space)?;
    if s.grid().dim() != pattern.dim() {
        return Err(Error::DimensionMismatch { expected: s.grid().dim(), found: pattern.dim() });
    }
    if !s.is_real(REAL_TOL) {
        return Err(Error::ComplexInput);
    }
    let t = apply(&concentration_operator(pattern), s)?;
    s.add(&t)
}

/// Pointwise `|s|` and principal argument in `(−π, π]`, both stored as
/// real-valued signals. The phase is `0` where the amplitude vanishes.
pub fn amplitude_phase(s: &Signal) -> (Signal, Signal) {
    let amplitude = s.map(|v| C64::new(v.norm(), 0.0));
    let phase = s.map(|v| C64::new(principal_arg(v), 0.0));
    (amplitude, phase)
}

fn principal_arg(v: C64) -> f64 {
    if v.re == 0.0 && v.im == 0.0 {
        return 0.0;
    }
    let a = v.im.atan2(v.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Removes `2π` jumps from a 1-D wrapped phase, keeping the first sample.
pub fn unwrap_phase(phase: &Signal) -> Result<Signal> {
    if phase.grid().dim() != 1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "phase unwrapping is only defined for 1-D signals, got dimension {}",
            phase.grid().dim()
        )));
    }
    let wrapped: Vec<f64> = phase.values().iter().map(|v| v.re).collect();
    let mut out = Vec::with_capacity(wrapped.len());
    let mut offset = 0.0;
    for (k, &p) in wrapped.iter().enumerate() {
        if k > 0 {
            let step = p - wrapped[k - 1];
            if step > PI {
                offset -= 2.0 * PI;
            } else if step < -PI {
                offset += 2.0 * PI;
            }
        }
        out.push(C64::new(p + offset, 0.0));
    }
    Signal::new(phase.grid().clone(), out, phase.domain())
}

/// Centered finite difference of an unwrapped 1-D phase; one-sided at the ends.
pub fn instantaneous_frequency(unwrapped: &Signal) -> Result<Signal> {
    let grid = unwrapped.grid();
    if grid.dim() != 1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "instantaneous frequency needs a 1-D phase, got dimension {}",
            grid.dim()
        )));
    }
    let h = grid.spacing(0);
    let p: Vec<f64> = unwrapped.values().iter().map(|v| v.re).collect();
    let n = p.len();
    let out = (0..n)
        .map(|k| {
            let d = if k == 0 {
                (p[1] - p[0]) / h
            } else if k == n - 1 {
                (p[n - 1] - p[n - 2]) / h
            } else {
                (p[k + 1] - p[k - 1]) / (2.0 * h)
            };
            C64::new(d, 0.0)
        })
        .collect();
    Signal::new(grid.clone(), out, unwrapped.domain())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_grid, sample};

    fn pat(s: &str) -> SignPattern {
        SignPattern::parse(s).unwrap()
    }

    #[test]
    fn concentration_values() {
        let t = concentration_operator(pat("+"));
        assert_eq!(t.quadrant_values(), &[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let t = concentration_operator(pat("++"));
        for p in SignPattern::all(2) {
            let expected = if p == pat("++") { 3.0 } else { -1.0 };
            assert_eq!(t.value(p).unwrap(), C64::new(expected, 0.0));
        }
        let t = concentration_operator(pat("--"));
        assert_eq!(t.value(SignPattern::all_negative(2).unwrap()).unwrap(), C64::new(3.0, 0.0));
        assert_eq!(t.value(pat("+-")).unwrap(), C64::new(-1.0, 0.0));
    }

    #[test]
    fn concentration_matches_product_formula() {
        // ∏ (I + iν_j H_j) − I expanded through compositions
        let p = pat("+-+");
        let mut prod = MultiplierOp::identity(3).unwrap();
        for j in 0..3 {
            let term = MultiplierOp::from_compositions(
                3,
                &[(C64::new(1.0, 0.0), &[0][..]), (C64::new(0.0, f64::from(p.sign(j))), &[j + 1][..])],
            )
            .unwrap();
            prod = prod.compose(&term).unwrap();
        }
        let t = prod.add(&MultiplierOp::scalar(3, C64::new(-1.0, 0.0)).unwrap()).unwrap();
        for (a, b) in t.quadrant_values().iter().zip(concentration_operator(p).quadrant_values()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn cosine_becomes_exponential() {
        let g = make_grid(1, &[64], &[4.0 * PI]).unwrap();
        let s = sample(&g, |x| C64::new(x[0].cos(), 0.0));
        let a = analytic_signal(&s, pat("+")).unwrap();
        for k in 0..64 {
            let t = g.coordinate(0, k);
            assert!((a.values()[k] - C64::new(t.cos(), t.sin())).norm() < 1e-10);
        }
    }

    #[test]
    fn product_of_cosines_in_two_dimensions() {
        let g = make_grid(2, &[32, 32], &[2.0 * PI, 2.0 * PI]).unwrap();
        let s = sample(&g, |x| C64::new(x[0].cos() * x[1].cos(), 0.0));
        let a = analytic_signal(&s, pat("++")).unwrap();
        g.for_each_index(|flat, idx| {
            let x = g.point(idx).unwrap();
            let e = C64::new(0.0, x[0] + x[1]).exp();
            assert!((a.values()[flat] - e).norm() < 1e-9);
        });
    }

    #[test]
    fn zero_and_complex_inputs() {
        let g = make_grid(1, &[16], &[1.0]).unwrap();
        let z = Signal::zeros(g.clone(), Domain::Space);
        assert!(analytic_signal(&z, pat("+")).unwrap().values().iter().all(|v| v.norm() == 0.0));
        let c = sample(&g, |x| C64::new(x[0], 1e-3));
        assert_eq!(analytic_signal(&c, pat("+")), Err(Error::ComplexInput));
        assert!(matches!(analytic_signal(&z, pat("++")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn polar_form() {
        let g = make_grid(1, &[64], &[4.0 * PI]).unwrap();
        let s = sample(&g, |x| C64::new(0.0, x[0]).exp());
        let (rho, theta) = amplitude_phase(&s);
        assert!(rho.values().iter().all(|v| (v.re - 1.0).abs() < 1e-14));
        let unwrapped = unwrap_phase(&theta).unwrap();
        let offset = unwrapped.values()[0].re - g.coordinate(0, 0);
        for k in 0..64 {
            let expected = g.coordinate(0, k) + offset;
            assert!((unwrapped.values()[k].re - expected).abs() < 1e-12);
        }
        let freq = instantaneous_frequency(&unwrapped).unwrap();
        assert!(freq.values().iter().all(|v| (v.re - 1.0).abs() < 1e-12));

        let c = sample(&g, |_| C64::new(3.0, 0.0));
        let (rho, theta) = amplitude_phase(&c);
        assert!(rho.values().iter().all(|v| v.re == 3.0));
        assert!(theta.values().iter().all(|v| v.re == 0.0));

        let c = sample(&g, |_| C64::from_polar(2.0, PI / 2.0));
        let (rho, theta) = amplitude_phase(&c);
        assert!(rho.values().iter().all(|v| (v.re - 2.0).abs() < 1e-15));
        assert!(theta.values().iter().all(|v| (v.re - PI / 2.0).abs() < 1e-15));
    }

    #[test]
    fn phase_conventions() {
        assert_eq!(principal_arg(C64::new(0.0, 0.0)), 0.0);
        assert_eq!(principal_arg(C64::new(-1.0, -0.0)), PI);
        assert_eq!(principal_arg(C64::new(-1.0, 0.0)), PI);
        let g2 = make_grid(2, &[4, 4], &[1.0, 1.0]).unwrap();
        assert!(unwrap_phase(&Signal::zeros(g2, Domain::Space)).is_err());
    }
}
