//! Hilbert transforms on the line and the circle, their Hardy projections,
//! the group actions they intertwine, and numerical symmetry analysis of
//! candidate operators.
//!
//! Line signals are samples on a uniform [`Grid1D`]; circle signals are
//! truncated Fourier series ([`CircleSignal`]) or equispaced samples
//! ([`CircleSamples`]). Every operator is a pure function of its inputs.

pub mod circle;
pub mod error;
pub mod line;
pub mod signal;
pub mod symmetry;

pub use error::{Error, GuardDomain, Result};
pub use num_complex::Complex64;
pub use signal::format::SignalFile;
pub use signal::probes::{make_probes, ProbeKind, ProbeSet};
pub use signal::{
    dft, idft, inner_product, CircleSamples, CircleSignal, Grid1D, InnerProductSpace, LineSignal, LineSpectrum,
};
