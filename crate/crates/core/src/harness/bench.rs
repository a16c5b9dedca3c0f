use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::SCHEMA_VERSION;
use crate::arith::{format_rat, ApInt, ApRat};
use crate::det::{DetStats, Engine, COFACTOR_MAX_ORDER};
use crate::kp::{build_matrix, KpParams};
use crate::matrix::ExactMatrix;
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchFamily {
    /// The main-identity matrix `(n, n, 0, 0)` of the requested order.
    Kp,
    /// Entries uniform in `[-9, 9]` from SplitMix64 seeded with
    /// `seed + order` (wrapping).
    Random,
}

impl BenchFamily {
    pub fn matrix(&self, order: usize, seed: u64) -> ExactMatrix {
        match self {
            BenchFamily::Kp => build_matrix(&KpParams::main(order as i64 - 1)).expect("main family"),
            BenchFamily::Random => random_matrix(order, seed.wrapping_add(order as u64), -9, 9),
        }
    }
}

impl fmt::Display for BenchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchFamily::Kp => "kp",
            BenchFamily::Random => "random",
        })
    }
}

impl FromStr for BenchFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kp" => Ok(BenchFamily::Kp),
            "random" => Ok(BenchFamily::Random),
            _ => Err(format!("unknown family {s:?} (expected kp or random)")),
        }
    }
}

/// Row-major random integer matrix drawn from one SplitMix64 stream.
pub fn random_matrix(order: usize, seed: u64, lo: i64, hi: i64) -> ExactMatrix {
    let mut rng = SplitMix64::new(seed);
    ExactMatrix::from_fn(order, |_, _| ApRat::from_integer(ApInt::from(rng.range(lo, hi))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub engine: Engine,
    pub order: usize,
    /// Exact determinant, absent when the engine refused the order.
    pub determinant: Option<String>,
    pub fallback_used: bool,
    /// Largest intermediate numerator/denominator, in bits.
    pub peak_bits: u64,
    pub refused: Option<String>,
    /// Not part of the determinism contract.
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub family: BenchFamily,
    pub seed: u64,
    pub records: Vec<BenchRecord>,
}

impl BenchReport {
    /// Engines that ran on the same order must report the same value.
    pub fn engines_agree(&self) -> bool {
        self.records.iter().all(|r| {
            self.records
                .iter()
                .filter(|o| o.order == r.order && o.determinant.is_some())
                .all(|o| r.determinant.is_none() || o.determinant == r.determinant)
        })
    }
}

pub fn bench(orders: &[usize], engines: &[Engine], family: BenchFamily, seed: u64) -> BenchReport {
    let mut records = Vec::new();
    for &order in orders {
        let matrix = family.matrix(order, seed);
        for &engine in engines {
            if engine == Engine::Cofactor && order > COFACTOR_MAX_ORDER {
                records.push(BenchRecord {
                    engine,
                    order,
                    determinant: None,
                    fallback_used: false,
                    peak_bits: 0,
                    refused: Some(format!("order {order} exceeds cofactor limit {COFACTOR_MAX_ORDER}")),
                    wall_seconds: 0.0,
                });
                continue;
            }
            let mut stats = DetStats::default();
            let start = Instant::now();
            let result = engine.run(&matrix, &mut stats).expect("order guard checked above");
            let wall_seconds = start.elapsed().as_secs_f64();
            records.push(BenchRecord {
                engine,
                order,
                determinant: Some(format_rat(&result.value)),
                fallback_used: result.fallback_used,
                peak_bits: stats.peak_bits,
                refused: None,
                wall_seconds,
            });
        }
    }
    BenchReport { schema_version: SCHEMA_VERSION, family, seed, records }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kp_agreement() {
        let r = bench(&[4], &[Engine::Bareiss, Engine::Condense], BenchFamily::Kp, 0);
        assert_eq!(r.records.len(), 2);
        assert_eq!(r.records[0].determinant, r.records[1].determinant);
        assert_eq!(r.records[0].determinant.as_deref(), Some("5145"));
        assert!(r.engines_agree());
    }

    #[test]
    fn cofactor_guard() {
        let r = bench(&[9], &[Engine::Cofactor], BenchFamily::Random, 3);
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].refused.is_some());
        assert!(r.records[0].determinant.is_none());
    }

    #[test]
    fn order_one_is_the_entry() {
        for family in [BenchFamily::Kp, BenchFamily::Random] {
            let m = family.matrix(1, 11);
            let r = bench(&[1], &Engine::ALL, family, 11);
            for rec in &r.records {
                assert_eq!(rec.determinant.as_deref(), Some(format_rat(m.get(0, 0)).as_str()));
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let strip = |r: BenchReport| r.records.into_iter().map(|x| (x.determinant, x.peak_bits)).collect::<Vec<_>>();
        let a = bench(&[3, 5, 7], &Engine::ALL, BenchFamily::Random, 42);
        let b = bench(&[3, 5, 7], &Engine::ALL, BenchFamily::Random, 42);
        assert!(a.engines_agree());
        assert_eq!(strip(a), strip(b));
    }
}
