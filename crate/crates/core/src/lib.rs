//! Exact-arithmetic toolkit for convolution functionals on the real line.
//!
//! The crate computes the trilinear pairing `<1_A * 1_B, 1_C>` for finite
//! unions of rational intervals in exact rational arithmetic, and builds on
//! it: rearrangement (Riesz–Sobolev) deficits, superlevel-set geometry and
//! its additive structure, small-doubling and small-sumset covering checks,
//! grid discretization, and seeded generators for experiment sweeps. Since
//! deficits of near-extremal configurations can be arbitrarily small,
//! nothing here ever rounds; inequalities involving square roots are
//! compared in squared form.
//!
//! All types are immutable values and all operations are pure functions,
//! safe to share and to parallelize over independent inputs.

pub mod additive;
pub mod error;
pub mod gen;
pub mod interval;
pub mod intset;
pub mod pl;
pub mod report;
pub mod riesz;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use interval::{centered_interval, BoolOp, Interval, IntervalSet};
pub use intset::IntegerSet;
pub use pl::{convolve_indicators, pairing, Distribution, PiecewiseLinear};
pub use riesz::{
    alternating_inclusion_check, best_interval, burchard_admissible, containment_check,
    rs_deficit, stability_probe, superlevel_gaps, superlevel_transfer, theta,
    theta_closed_form, DeficitReport, ProbeReport,
};
pub use scalar::{approx, fmt_scalar, parse_scalar, Scalar};
