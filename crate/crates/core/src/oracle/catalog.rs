use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;


#[allow(unused_imports)]
use num_traits::Float;

use super::quadrature::{pv_hilbert, pv_hilbert_oscillatory};
use crate::Result;

/// How the principal-value integral is truncated for an entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Integrable decay: integrate up to the cutoff.
    Cutoff(f64),
    /// Oscillation with this period: half-period panels with acceleration.
    Oscillatory { period: f64 },
}

/// A function together with its Hilbert transform in closed form.
pub struct ClosedForm {
    pub name: String,
    pub f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub hf: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub tail: Tail,
    /// Whether `f` is periodic (so a commensurate grid reproduces it exactly).
    pub periodic: bool,
}

impl core::fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ClosedForm").field("name", &self.name).field("tail", &self.tail).finish()
    }
}

/// Points used by [`ClosedForm::self_test`].
pub const SELF_TEST_POINTS: [f64; 10] = [-4.5, -3.0, -1.7, -0.6, 0.0, 0.4, 1.0, 2.2, 3.3, 5.0];

const CUTOFF: f64 = 1e5;
const PV_TOL: f64 = 1e-9;

impl ClosedForm {
    /// Principal-value quadrature of this entry at `x`.
    pub fn quadrature(&self, x: f64) -> Result<f64> {
        match self.tail {
            Tail::Cutoff(c) => pv_hilbert(&*self.f, x, c, PV_TOL),
            Tail::Oscillatory { period } => pv_hilbert_oscillatory(&*self.f, x, period, PV_TOL),
        }
    }

    /// Largest `|quadrature − closed form|` over [`SELF_TEST_POINTS`].
    pub fn self_test(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for &x in &SELF_TEST_POINTS {
            worst = worst.max((self.quadrature(x)? - (self.hf)(x)).abs());
        }
        Ok(worst)
    }
}

fn entry(
    name: String,
    f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    hf: impl Fn(f64) -> f64 + Send + Sync + 'static,
    tail: Tail,
    periodic: bool,
) -> ClosedForm {
    ClosedForm { name, f: Box::new(f), hf: Box::new(hf), tail, periodic }
}

/// The catalog: Poisson kernels, sinusoids, sinc and the smooth
/// counterexample factor `g`.
pub fn closed_forms() -> Vec<ClosedForm> {
    use core::f64::consts::PI;
    let mut out = Vec::new();
    for alpha in [1.0f64, 2.0] {
        out.push(entry(
            alloc::format!("poisson(alpha={alpha})"),
            move |t| 1.0 / (alpha * alpha + t * t),
            move |t| t / (alpha * (alpha * alpha + t * t)),
            Tail::Cutoff(CUTOFF),
            false,
        ));
    }
    for omega in [1.0f64, 2.5] {
        let period = 2.0 * PI / omega;
        out.push(entry(
            alloc::format!("cos(omega={omega})"),
            move |t| (omega * t).cos(),
            move |t| (omega * t).sin(),
            Tail::Oscillatory { period },
            true,
        ));
        out.push(entry(
            alloc::format!("sin(omega={omega})"),
            move |t| (omega * t).sin(),
            move |t| -(omega * t).cos(),
            Tail::Oscillatory { period },
            true,
        ));
    }
    out.push(entry(
        "sinc".into(),
        |t| if t == 0.0 { 1.0 } else { t.sin() / t },
        |t| if t == 0.0 { 0.0 } else { (1.0 - t.cos()) / t },
        Tail::Oscillatory { period: 2.0 * PI },
        false,
    ));
    out.push(entry(
        "counterexample-g".into(),
        crate::bedrosian::construct::counterexample_g,
        crate::bedrosian::construct::counterexample_hg,
        Tail::Cutoff(CUTOFF),
        false,
    ));
    out
}
