//! Sweeps, proofs, benchmarks and ad-hoc determinants behind the `kplab`
//! command line, with table, JSON and CSV renderings.
//!
//! Every report is deterministic given its inputs. Wall-clock timings live in
//! dedicated fields (`timing`, `wall_seconds`) that are left out of the
//! rendering when timings are disabled, so two runs render byte-identically.

mod bench;
mod render;
mod sweep;

pub use bench::{bench, random_matrix, BenchFamily, BenchRecord, BenchReport};
pub use render::{OutputFormat, Render};
pub use sweep::{
    verify_main, verify_rabbit, verify_recurrence, Outcome, SweepOptions, SweepPoint, SweepReport, Totals,
};

use crate::det::{DetResult, DetStats, Engine};
use crate::error::{DetError, MatrixError, SymError};
use crate::matrix::ExactMatrix;
use crate::symcheck::{self, ProofMode, ProofReport, ProofStatus};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit status conventions for the command line.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const STALL: i32 = 3;
}

pub fn prove(mode: ProofMode) -> Result<ProofReport, SymError> {
    match mode {
        ProofMode::Base => Ok(symcheck::prove_base_cases()),
        other => symcheck::prove_recurrence(other),
    }
}

pub fn proof_exit_code(report: &ProofReport) -> i32 {
    match report.status {
        ProofStatus::Proven => exit::OK,
        ProofStatus::Stalled => exit::STALL,
        ProofStatus::Refuted => exit::VIOLATION,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DetCommandError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Det(#[from] DetError),
}

/// Parse a matrix in either text encoding and evaluate it with `engine`.
pub fn det_text(text: &str, engine: Engine) -> Result<DetResult, DetCommandError> {
    let matrix = ExactMatrix::parse_auto(text)?;
    Ok(engine.run(&matrix, &mut DetStats::default())?)
}
