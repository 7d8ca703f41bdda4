//! Energy profiling and prediction for ConvNet inference.
//!
//! - [`netmodel`]: analytical MAC and storage costs from a network description.
//! - [`tracelab`]: energy from timestamped power traces and annotation markers.
//! - [`predictor`]: through-origin regressions from MACs to SIMD, bus accesses and energy.
//! - [`paperdata`]: the published measurement tables and their reproduction.
//! - [`cli`]: the `conv-energy` command-line front end.

// Guards like `!(x > 0.0)` are written that way so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod netmodel;
pub mod paperdata;
pub mod predictor;
pub mod tracelab;
