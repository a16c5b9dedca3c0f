//! Exact-arithmetic laboratory for a binomial determinant family
//! and its two-parameter generalization.

pub mod arith;
pub mod closed_form;
pub mod det;
pub mod error;
pub mod harness;
pub mod kp;
pub mod matrix;
pub mod rng;
pub mod symcheck;
