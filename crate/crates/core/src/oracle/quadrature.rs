use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;


use crate::{Error, Result};

/// Evaluation budget of one adaptive integration.
pub const MAX_EVALUATIONS: usize = 1_000_000;

/// Kronrod abscissae on `[0, 1]`; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// `(Kronrod, |Kronrod − Gauss|)` on `[a, b]`.
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = h * XGK[k];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive GK15 on `[a, b]`, bisecting the piece with the largest error
/// until the summed error is below `tolerance`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tolerance: f64) -> Result<Quadrature> {
    integrate_with_budget(f, a, b, tolerance, MAX_EVALUATIONS)
}

fn integrate_with_budget(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tolerance: f64,
    budget: usize,
) -> Result<Quadrature> {
    if !(tolerance > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument("integration needs finite bounds and a positive tolerance".into()));
    }
    let (value, error) = gk15(f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_error = error;
    while total_error > tolerance {
        if evaluations + 30 > budget {
            return Err(Error::NonConvergence { evaluations });
        }
        let piece = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (piece.a + piece.b);
        if mid <= piece.a || mid >= piece.b {
            // interval exhausted at machine precision
            return Err(Error::NonConvergence { evaluations });
        }
        let (v1, e1) = gk15(f, piece.a, mid);
        let (v2, e2) = gk15(f, mid, piece.b);
        evaluations += 30;
        total += v1 + v2 - piece.value;
        total_error += e1 + e2 - piece.error;
        heap.push(Piece { a: piece.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: piece.b, value: v2, error: e2 });
        if total_error <= tolerance {
            // recompute from scratch to shed accumulated cancellation
            total = heap.iter().map(|p| p.value).sum();
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }
    Ok(Quadrature { value: total, error: total_error, evaluations })
}

fn symmetrized(f: &dyn Fn(f64) -> f64, x: f64) -> impl Fn(f64) -> f64 + '_ {
    move |u: f64| (f(x - u) - f(x + u)) / (PI * u)
}

/// `p.v. (1/π) ∫ f(y)/(x − y) dy ≈ ∫_0^cutoff (f(x−u) − f(x+u)) / (πu) du`.
pub fn pv_hilbert(f: &dyn Fn(f64) -> f64, x: f64, cutoff: f64, tolerance: f64) -> Result<f64> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!("cutoff must be positive, got {cutoff}")));
    }
    let g = symmetrized(f, x);
    Ok(integrate(&g, 0.0, cutoff, tolerance)?.value)
}

/// Principal value for `f` oscillating with the given period: the
/// symmetrized integral is split into half-period panels and the partial
/// sums are accelerated by iterated averaging.
pub fn pv_hilbert_oscillatory(f: &dyn Fn(f64) -> f64, x: f64, period: f64, tolerance: f64) -> Result<f64> {
    if !(period > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!("period must be positive, got {period}")));
    }
    let g = symmetrized(f, x);
    let panel = 0.5 * period;
    let mut sums: Vec<f64> = Vec::new();
    let mut running = 0.0;
    let mut evaluations = 0;
    let mut previous: Option<f64> = None;
    const WINDOW: usize = 16;
    const MAX_PANELS: usize = 4096;
    for k in 0..MAX_PANELS {
        let q = integrate_with_budget(
            &g,
            k as f64 * panel,
            (k + 1) as f64 * panel,
            0.01 * tolerance,
            MAX_EVALUATIONS - evaluations,
        )?;
        evaluations += q.evaluations;
        running += q.value;
        sums.push(running);
        if sums.len() >= WINDOW && sums.len() % 8 == 0 {
            let estimate = average_repeatedly(&sums[sums.len() - WINDOW..]);
            if let Some(p) = previous {
                if (estimate - p).abs() < tolerance {
                    return Ok(estimate);
                }
            }
            previous = Some(estimate);
        }
    }
    Err(Error::NonConvergence { evaluations })
}

/// Replaces the sequence by neighbour means until one value remains.
fn average_repeatedly(sums: &[f64]) -> f64 {
    let mut v = sums.to_vec();
    while v.len() > 1 {
        v = v.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    v[0]
}
