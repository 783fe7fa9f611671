//! Hyperoctant Fourier multipliers and the multidimensional Bedrosian identity.
//!
//! `hsig-core` works on uniform `d`-dimensional sampling lattices and provides
//!
//! * a discrete Fourier pair that approximates the continuous transform
//!   `f̂(ξ) = ∫ f(x) e^{-i(x,ξ)} dx` ([`spectral`]);
//! * the algebra of operators that are constant on each open hyperoctant of
//!   frequency space, i.e. linear combinations of compositions of partial
//!   Hilbert transforms ([`operators`]);
//! * multidimensional analytic signals concentrated on one hyperoctant
//!   ([`analytic`]);
//! * residuals, spectral characterization integrals and support-condition
//!   checkers for the identity `T(fg) = f·Tg` ([`bedrosian`]);
//! * finite Blaschke products and closed-form synthesis of signals with
//!   `H(f cos θ) = f sin θ` ([`blaschke`]);
//! * a slow principal-value quadrature oracle that shares no code with the
//!   FFT path ([`oracle`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line front end live in the `hsig` crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod bedrosian;
pub mod blaschke;
mod error;
pub mod fft;
pub mod lattice;
pub mod operators;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
pub use lattice::{make_grid, sample, Domain, Grid, Signal};
pub use num_complex::Complex64 as C64;
pub use operators::{MultiplierOp, SignPattern};

/// `i`, the imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
