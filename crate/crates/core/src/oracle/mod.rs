//! Slow reference values for the 1-D Hilbert transform.
//!
//! [`pv_hilbert`] evaluates the principal value by adaptive Gauss–Kronrod
//! quadrature of the symmetrized integrand; [`closed_forms`] lists transform
//! pairs known in closed form. Nothing here touches the FFT code.

mod catalog;
mod quadrature;

pub use catalog::{closed_forms, ClosedForm, Tail};
pub use quadrature::{integrate, pv_hilbert, pv_hilbert_oscillatory, Quadrature, MAX_EVALUATIONS};
