use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::SCHEMA_VERSION;
use crate::arith::{format_rat, ApRat};
use crate::closed_form::{rabbit_rhs, special_rhs};
use crate::det::{det_bareiss, det_condense};
use crate::kp::{build_matrix, build_matrix_lenient, KpParams};
use crate::symcheck::{recurrence_points, RecurrenceCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    OutOfDomain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepPoint {
    pub params: KpParams,
    pub outcome: Outcome,
    /// Exact values computed at the point, keyed by what produced them.
    pub values: BTreeMap<&'static str, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub out_of_domain: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub command: &'static str,
    /// Parameter ranges swept, as `name -> "lo..=hi"` (ranges of `m, a, b`
    /// may depend on `n`).
    pub ranges: BTreeMap<&'static str, String>,
    pub totals: Totals,
    pub points: Vec<SweepPoint>,
    pub counterexamples: Vec<SweepPoint>,
    /// Wall-clock seconds by engine. Not part of the determinism contract.
    pub timing: BTreeMap<&'static str, f64>,
}

impl SweepReport {
    fn assemble(
        command: &'static str,
        ranges: BTreeMap<&'static str, String>,
        mut evaluated: Vec<(SweepPoint, Vec<(&'static str, Duration)>)>,
    ) -> Self {
        evaluated.sort_by_key(|(p, _)| p.params);
        let mut totals = Totals::default();
        let mut timing: BTreeMap<&'static str, f64> = BTreeMap::new();
        let mut points = Vec::with_capacity(evaluated.len());
        for (point, times) in evaluated {
            totals.total += 1;
            match point.outcome {
                Outcome::Pass => totals.pass += 1,
                Outcome::Fail => totals.fail += 1,
                Outcome::OutOfDomain => totals.out_of_domain += 1,
            }
            for (engine, t) in times {
                *timing.entry(engine).or_default() += t.as_secs_f64();
            }
            points.push(point);
        }
        let counterexamples = points.iter().filter(|p| p.outcome == Outcome::Fail).cloned().collect();
        SweepReport { schema_version: SCHEMA_VERSION, command, ranges, totals, points, counterexamples, timing }
    }

    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            super::exit::OK
        } else {
            super::exit::VIOLATION
        }
    }

    pub fn value(&self, params: KpParams, key: &str) -> Option<&str> {
        self.points.iter().find(|p| p.params == params)?.values.get(key).map(String::as_str)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; 0 or 1 runs serially.
    pub jobs: usize,
    /// Evaluate both sides at points outside the validated domain and
    /// record what happens, without asserting anything.
    pub probe_outside: bool,
}

fn run_points<T, F>(inputs: Vec<T>, jobs: usize, f: F) -> Vec<(SweepPoint, Vec<(&'static str, Duration)>)>
where
    T: Send,
    F: Fn(T) -> (SweepPoint, Vec<(&'static str, Duration)>) + Sync + Send,
{
    if jobs <= 1 {
        return inputs.into_iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| inputs.into_par_iter().map(&f).collect())
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

/// The main identity: det of the `(n, n, 0, 0)` matrix against
/// `(2n+1)!^(n+1) / sf(2n+1)` for `0 <= n <= n_max`, by condensation and
/// Bareiss.
pub fn verify_main(n_max: i64, options: SweepOptions) -> SweepReport {
    let ranges = BTreeMap::from([("n", format!("0..={n_max}")), ("m", "n".into()), ("a", "0".into()), ("b", "0".into())]);
    let evaluated = run_points((0..=n_max).collect(), options.jobs, |n| {
        let p = KpParams::main(n);
        let matrix = build_matrix(&p).expect("main family is in the domain");
        let (condensed, t_condense) = timed(|| det_condense(&matrix));
        let (bareiss, t_bareiss) = timed(|| det_bareiss(&matrix));
        let (rhs, t_rhs) = timed(|| special_rhs(n).map(ApRat::from_integer));
        let mut values = BTreeMap::from([
            ("condense", format_rat(&condensed.value)),
            ("bareiss", format_rat(&bareiss)),
            ("fallback", condensed.fallback_used.to_string()),
        ]);
        let outcome = match &rhs {
            Ok(r) if *r == condensed.value && *r == bareiss => Outcome::Pass,
            _ => Outcome::Fail,
        };
        values.insert("rhs", rhs.map_or_else(|e| e.to_string(), |r| format_rat(&r)));
        let point = SweepPoint { params: p, outcome, values };
        (point, vec![("condense", t_condense), ("bareiss", t_bareiss), ("closed_form", t_rhs)])
    });
    SweepReport::assemble("verify-main", ranges, evaluated)
}

/// The two-parameter identity over `n <= n_max`, `m, a, b` in `0..=n`.
/// Points outside the validated domain are counted as out of domain.
pub fn verify_rabbit(n_max: i64, options: SweepOptions) -> SweepReport {
    let ranges = BTreeMap::from([
        ("n", format!("0..={n_max}")),
        ("m", "0..=n".into()),
        ("a", "0..=n".into()),
        ("b", "0..=n".into()),
    ]);
    let mut grid = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            for a in 0..=n {
                for b in 0..=n {
                    grid.push(KpParams::new(n, m, a, b));
                }
            }
        }
    }
    let probe = options.probe_outside;
    let evaluated = run_points(grid, options.jobs, move |p| {
        if !p.in_domain() {
            let mut values = BTreeMap::new();
            if probe {
                probe_point(&p, &mut values);
            }
            return (SweepPoint { params: p, outcome: Outcome::OutOfDomain, values }, Vec::new());
        }
        let matrix = build_matrix(&p).expect("validated point");
        let (condensed, t_condense) = timed(|| det_condense(&matrix));
        let (bareiss, t_bareiss) = timed(|| det_bareiss(&matrix));
        let (rhs, t_rhs) = timed(|| rabbit_rhs(&p));
        let mut values = BTreeMap::from([
            ("condense", format_rat(&condensed.value)),
            ("bareiss", format_rat(&bareiss)),
            ("fallback", condensed.fallback_used.to_string()),
        ]);
        let outcome = match &rhs {
            Ok(r) if r.integral && r.value > ApRat::zero() && r.value == condensed.value && r.value == bareiss => {
                Outcome::Pass
            }
            _ => Outcome::Fail,
        };
        match rhs {
            Ok(r) => {
                values.insert("rhs", format_rat(&r.value));
                values.insert("rhs_integral", r.integral.to_string());
            }
            Err(e) => {
                values.insert("rhs", e.to_string());
            }
        }
        let point = SweepPoint { params: p, outcome, values };
        (point, vec![("condense", t_condense), ("bareiss", t_bareiss), ("closed_form", t_rhs)])
    });
    SweepReport::assemble("verify-rabbit", ranges, evaluated)
}

fn probe_point(p: &KpParams, values: &mut BTreeMap<&'static str, String>) {
    let Some(matrix) = build_matrix_lenient(p) else { return };
    let lhs = det_bareiss(&matrix);
    values.insert("probe_lhs", format_rat(&lhs));
    let verdict = match rabbit_rhs(p) {
        Ok(r) => {
            values.insert("probe_rhs", format_rat(&r.value));
            if r.value == lhs { "agree" } else { "disagree" }
        }
        Err(e) => {
            values.insert("probe_rhs", e.to_string());
            "rhs undefined"
        }
    };
    values.insert("probe", verdict.into());
}

/// The condensation recurrence at every eligible point, for `L` and `R`.
pub fn verify_recurrence(n_max: i64, options: SweepOptions) -> SweepReport {
    let ranges = BTreeMap::from([
        ("n", format!("0..={n_max}")),
        ("m", "2..=n".into()),
        ("a", "0..=n-m".into()),
        ("b", "0..=n-m".into()),
    ]);
    let per_n: Vec<(Vec<_>, Duration)> = if options.jobs <= 1 {
        (0..=n_max).map(|n| timed(|| recurrence_points(n))).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build().expect("thread pool");
        pool.install(|| (0..=n_max).into_par_iter().map(|n| timed(|| recurrence_points(n))).collect())
    };
    let elapsed: Duration = per_n.iter().map(|(_, t)| *t).sum();
    let check = RecurrenceCheck::from_points(n_max, per_n.into_iter().flat_map(|(p, _)| p).collect());
    let mut evaluated: Vec<_> = check
        .points
        .into_iter()
        .map(|rp| {
            let values = BTreeMap::from([
                ("l", rp.l_value),
                ("r", rp.r_value),
                ("holds_l", rp.holds_l.to_string()),
                ("holds_r", rp.holds_r.to_string()),
            ]);
            let outcome = if rp.holds_l && rp.holds_r { Outcome::Pass } else { Outcome::Fail };
            (SweepPoint { params: rp.params, outcome, values }, Vec::new())
        })
        .collect();
    if let Some(first) = evaluated.first_mut() {
        first.1.push(("recurrence", elapsed));
    }
    SweepReport::assemble("verify-recurrence", ranges, evaluated)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_values() {
        let r = verify_main(3, SweepOptions::default());
        let values: Vec<&str> = (0..=3).map(|n| r.value(KpParams::main(n), "rhs").unwrap()).collect();
        assert_eq!(values, ["1", "3", "50", "5145"]);
        assert!(r.passed());
        assert_eq!(r.totals, Totals { total: 4, pass: 4, fail: 0, out_of_domain: 0 });
        let r = verify_main(0, SweepOptions::default());
        assert_eq!(r.totals.pass, 1);
    }

    #[test]
    fn rabbit_small() {
        let r = verify_rabbit(2, SweepOptions::default());
        assert_eq!(r.totals.fail, 0);
        assert_eq!(r.value(KpParams::new(2, 1, 1, 0), "condense"), Some("5"));
        assert_eq!(r.value(KpParams::new(2, 1, 1, 0), "rhs"), Some("5"));
        assert_eq!(r.totals.total, r.totals.pass + r.totals.fail + r.totals.out_of_domain);
        let r0 = verify_rabbit(0, SweepOptions::default());
        assert_eq!(r0.totals, Totals { total: 1, pass: 1, fail: 0, out_of_domain: 0 });
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = verify_rabbit(4, SweepOptions { jobs: 1, probe_outside: true });
        let parallel = verify_rabbit(4, SweepOptions { jobs: 4, probe_outside: true });
        assert_eq!(serial.points, parallel.points);
        assert_eq!(serial.totals, parallel.totals);
        let rs = verify_recurrence(5, SweepOptions::default());
        let rp = verify_recurrence(5, SweepOptions { jobs: 3, probe_outside: false });
        assert_eq!(rs.points, rp.points);
    }

    #[test]
    fn probe_reports_without_failing() {
        let r = verify_rabbit(3, SweepOptions { jobs: 1, probe_outside: true });
        assert!(r.passed());
        let outside = r.points.iter().find(|p| p.outcome == Outcome::OutOfDomain).unwrap();
        assert!(outside.values.contains_key("probe"));
    }

    #[test]
    fn recurrence_sweep() {
        let r = verify_recurrence(2, SweepOptions::default());
        assert_eq!(r.totals, Totals { total: 1, pass: 1, fail: 0, out_of_domain: 0 });
        assert_eq!(r.value(KpParams::main(2), "l"), Some("50"));
        assert_eq!(verify_recurrence(1, SweepOptions::default()).totals.total, 0);
    }
}
