//! IO layer for the cross-diffusion analysis tool: model-spec files, report
//! serialization, CSV time series, and the three subcommands.
//!
//! Everything numerical lives in `crossdiff-core`; this crate only parses,
//! orchestrates, and writes. All randomness is seeded through explicit
//! flags, so identical inputs produce byte-identical reports apart from the
//! `generated_at_unix` stamp.

// Negated comparisons like `!(x > 0.0)` are deliberate NaN guards.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod csv_out;
pub mod report;
pub mod spec_file;

/// Process exit codes shared by the subcommands.
pub mod exit_code {
    /// Success; for `analyze`, an entropy structure was established.
    pub const OK: i32 = 0;
    /// Input could not be parsed or validated.
    pub const PARSE: i32 = 1;
    /// Definitive negative: ellipticity fails (`analyze`) or the requested
    /// factorization does not exist (`factorize`).
    pub const ABSENT: i32 = 2;
    /// No verdict either way: construction infeasible or margins inside the
    /// tolerance band.
    pub const INDETERMINATE: i32 = 3;
    /// Simulation completed but the entropy series was not monotone.
    pub const MONOTONICITY: i32 = 4;
    /// Simulation stalled or diverged.
    pub const SIM_FAILED: i32 = 5;
}
