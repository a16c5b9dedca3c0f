//! Exact determinant engines.
//!
//! * [`det_condense`]: Dodgson condensation. Layer `k` holds every `k × k`
//!   connected-minor determinant; each new entry is the 2×2 cross of four
//!   neighbours in layer `k-1` divided by the interior entry of layer `k-2`.
//!   A zero divisor sends the whole matrix to Bareiss.
//! * [`det_bareiss`]: fraction-free elimination on the integer matrix
//!   obtained by clearing denominators.
//! * [`det_cofactor`]: first-row Laplace expansion, refused above order 8.
//! * [`det_condense_kp`]: the condensation recurrence run directly on the
//!   matrix parameters, memoized over `(m, a, b)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat_bit_length, ApInt, ApRat};
use crate::error::DetError;
use crate::kp::{entry, KpParams};
use crate::matrix::ExactMatrix;

pub const COFACTOR_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Condense,
    Bareiss,
    Cofactor,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Condense, Engine::Bareiss, Engine::Cofactor];

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Condense => "condense",
            Engine::Bareiss => "bareiss",
            Engine::Cofactor => "cofactor",
        }
    }

    /// Run this engine on `a`, collecting intermediate bit sizes into `stats`.
    pub fn run(&self, a: &ExactMatrix, stats: &mut DetStats) -> Result<DetResult, DetError> {
        let result = match self {
            Engine::Condense => condense_with(a, stats),
            Engine::Bareiss => DetResult {
                value: bareiss_with(a, stats),
                engine: Engine::Bareiss,
                fallback_used: false,
            },
            Engine::Cofactor => DetResult {
                value: cofactor_with(a, stats)?,
                engine: Engine::Cofactor,
                fallback_used: false,
            },
        };
        stats.observe(&result.value);
        Ok(result)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?} (expected condense, bareiss or cofactor)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub value: ApRat,
    pub engine: Engine,
    /// Set only by condensation, when a zero divisor forced the Bareiss path.
    pub fallback_used: bool,
}

/// Largest numerator/denominator bit length seen among intermediates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetStats {
    pub peak_bits: u64,
}

impl DetStats {
    fn observe(&mut self, x: &ApRat) {
        self.peak_bits = self.peak_bits.max(rat_bit_length(x));
    }

    fn observe_int(&mut self, x: &ApInt) {
        self.peak_bits = self.peak_bits.max(x.bits());
    }
}

pub fn det_cofactor(a: &ExactMatrix) -> Result<ApRat, DetError> {
    cofactor_with(a, &mut DetStats::default())
}

fn cofactor_with(a: &ExactMatrix, stats: &mut DetStats) -> Result<ApRat, DetError> {
    if a.order() > COFACTOR_MAX_ORDER {
        return Err(DetError::OrderTooLarge { order: a.order(), limit: COFACTOR_MAX_ORDER });
    }
    let cols: Vec<usize> = (0..a.order()).collect();
    Ok(laplace(a, 0, &cols, stats))
}

// Determinant of rows `row..` restricted to `cols`, expanded along `row`.
fn laplace(a: &ExactMatrix, row: usize, cols: &[usize], stats: &mut DetStats) -> ApRat {
    if cols.len() == 1 {
        return a.get(row, cols[0]).clone();
    }
    let mut total = ApRat::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let pivot = a.get(row, c);
        if pivot.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = pivot * laplace(a, row + 1, &rest, stats);
        if pos % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        stats.observe(&total);
    }
    total
}

pub fn det_bareiss(a: &ExactMatrix) -> ApRat {
    bareiss_with(a, &mut DetStats::default())
}

fn bareiss_with(a: &ExactMatrix, stats: &mut DetStats) -> ApRat {
    let order = a.order();
    let scale = a.rows().flatten().fold(ApInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut work: Vec<Vec<ApInt>> = a
        .rows()
        .map(|row| row.iter().map(|x| (x * ApRat::from_integer(scale.clone())).to_integer()).collect())
        .collect();
    let mut negate = false;
    let mut prev = ApInt::one();
    for k in 0..order.saturating_sub(1) {
        if work[k][k].is_zero() {
            match (k + 1..order).find(|&r| !work[r][k].is_zero()) {
                Some(r) => {
                    work.swap(k, r);
                    negate = !negate;
                }
                None => return ApRat::zero(),
            }
        }
        for i in k + 1..order {
            for j in k + 1..order {
                let cross = &work[i][j] * &work[k][k] - &work[i][k] * &work[k][j];
                debug_assert!((&cross % &prev).is_zero());
                work[i][j] = cross / &prev;
                stats.observe_int(&work[i][j]);
            }
            work[i][k] = ApInt::zero();
        }
        prev = work[k][k].clone();
    }
    let det = work[order - 1][order - 1].clone();
    let det = if negate { -det } else { det };
    ApRat::new(det, num_traits::pow(scale, order))
}

/// Dodgson condensation with whole-matrix Bareiss fallback.
pub fn det_condense(a: &ExactMatrix) -> DetResult {
    condense_with(a, &mut DetStats::default())
}

fn condense_with(a: &ExactMatrix, stats: &mut DetStats) -> DetResult {
    match condense_rolling(a, stats) {
        Some(value) => DetResult { value, engine: Engine::Condense, fallback_used: false },
        None => DetResult { value: bareiss_with(a, stats), engine: Engine::Condense, fallback_used: true },
    }
}

// Two consecutive layers kept at a time. `None` on a zero divisor.
fn condense_rolling(a: &ExactMatrix, stats: &mut DetStats) -> Option<ApRat> {
    let order = a.order();
    let mut older: Option<Vec<ApRat>> = None;
    let mut current: Vec<ApRat> = a.rows().flatten().cloned().collect();
    let mut size = order;
    while size > 1 {
        let next_size = size - 1;
        let mut next = Vec::with_capacity(next_size * next_size);
        for i in 0..next_size {
            for j in 0..next_size {
                let at = |r: usize, c: usize| &current[r * size + c];
                let cross = at(i, j) * at(i + 1, j + 1) - at(i, j + 1) * at(i + 1, j);
                let value = match &older {
                    None => cross,
                    Some(layer) => {
                        let divisor = &layer[(i + 1) * (size + 1) + (j + 1)];
                        if divisor.is_zero() {
                            return None;
                        }
                        cross / divisor
                    }
                };
                stats.observe(&value);
                next.push(value);
            }
        }
        older = Some(std::mem::replace(&mut current, next));
        size = next_size;
    }
    Some(current.pop().expect("order >= 1"))
}

/// Every layer of the condensation, from the input (layer 1) down to the
/// single determinant. Layer `k` has order `order - k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationTableau {
    layers: Vec<ExactMatrix>,
}

impl CondensationTableau {
    /// `None` if some divisor vanishes.
    pub fn build(a: &ExactMatrix) -> Option<Self> {
        let mut layers = vec![a.clone()];
        while layers.last().unwrap().order() > 1 {
            let k = layers.len();
            let last = &layers[k - 1];
            let older = if k >= 2 { Some(&layers[k - 2]) } else { None };
            let size = last.order() - 1;
            let mut zero_divisor = false;
            let next = ExactMatrix::from_fn(size, |i, j| {
                let cross = last.get(i, j) * last.get(i + 1, j + 1) - last.get(i, j + 1) * last.get(i + 1, j);
                match older {
                    None => cross,
                    Some(o) if o.get(i + 1, j + 1).is_zero() => {
                        zero_divisor = true;
                        ApRat::zero()
                    }
                    Some(o) => cross / o.get(i + 1, j + 1),
                }
            });
            if zero_divisor {
                return None;
            }
            layers.push(next);
        }
        Some(Self { layers })
    }

    /// Layer `k`, 1-based.
    pub fn layer(&self, k: usize) -> &ExactMatrix {
        &self.layers[k - 1]
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn determinant(&self) -> &ApRat {
        self.layers.last().unwrap().get(0, 0)
    }
}

/// Memoized evaluation of `L_m(a, b)` for fixed `n` through the condensation
/// recurrence
///
/// ```text
/// L_m(a,b) = (L_{m-1}(a,b) L_{m-1}(a+1,b+1) - L_{m-1}(a+1,b) L_{m-1}(a,b+1)) / L_{m-2}(a+1,b+1)
/// ```
///
/// bottoming out at the explicit 1×1 and 2×2 determinants.
#[derive(Debug)]
pub struct KpRecurrence {
    n: i64,
    memo: HashMap<(i64, i64, i64), ApInt>,
    divisions: usize,
}

impl KpRecurrence {
    pub fn new(n: i64) -> Self {
        Self { n, memo: HashMap::new(), divisions: 0 }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Number of recurrence divisions performed so far.
    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn value(&mut self, m: i64, a: i64, b: i64) -> Result<ApInt, DetError> {
        KpParams::new(self.n, m, a, b).validate()?;
        if let Some(v) = self.memo.get(&(m, a, b)) {
            return Ok(v.clone());
        }
        let p = KpParams::new(self.n, m, a, b);
        let value = match m {
            0 => entry(&p, 0, 0)?,
            1 => entry(&p, 0, 0)? * entry(&p, 1, 1)? - entry(&p, 0, 1)? * entry(&p, 1, 0)?,
            _ => {
                let cross = self.value(m - 1, a, b)? * self.value(m - 1, a + 1, b + 1)?
                    - self.value(m - 1, a + 1, b)? * self.value(m - 1, a, b + 1)?;
                let divisor = self.value(m - 2, a + 1, b + 1)?;
                if divisor.is_zero() {
                    return Err(DetError::ZeroDivisor { m: m - 2, a: a + 1, b: b + 1 });
                }
                self.divisions += 1;
                let (q, r) = cross.div_rem(&divisor);
                if !r.is_zero() {
                    return Err(DetError::InexactDivision { m, a, b });
                }
                q
            }
        };
        self.memo.insert((m, a, b), value.clone());
        Ok(value)
    }
}

pub fn det_condense_kp(p: &KpParams) -> Result<ApInt, DetError> {
    p.validate()?;
    KpRecurrence::new(p.n).value(p.m, p.a, p.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kp::{build_matrix, domain_points};

    fn mat<R: AsRef<[i64]>>(rows: &[R]) -> ExactMatrix {
        ExactMatrix::from_integers(rows).unwrap()
    }

    fn q(v: i64) -> ApRat {
        ApRat::from_integer(ApInt::from(v))
    }

    #[test]
    fn cofactor_examples() {
        assert_eq!(det_cofactor(&mat(&[[1]])).unwrap(), q(1));
        assert_eq!(det_cofactor(&mat(&[[2, 1], [1, 2]])).unwrap(), q(3));
        assert_eq!(det_cofactor(&mat(&[[6, 3, 1], [3, 4, 3], [1, 3, 6]])).unwrap(), q(50));
        let big = ExactMatrix::identity(9);
        assert_eq!(det_cofactor(&big), Err(DetError::OrderTooLarge { order: 9, limit: 8 }));
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(det_bareiss(&ExactMatrix::identity(4)), q(1));
        assert_eq!(det_bareiss(&mat(&[[6, 3, 1], [3, 4, 3], [1, 3, 6]])), q(50));
        assert_eq!(det_bareiss(&mat(&[[1, 2], [2, 4]])), q(0));
        // Needs a row swap in the first column.
        assert_eq!(det_bareiss(&mat(&[[0, 1], [1, 0]])), q(-1));
        let half = ExactMatrix::parse_plain("1/2 1/3\n1/4 1\n").unwrap();
        assert_eq!(det_bareiss(&half), ApRat::new(ApInt::from(5), ApInt::from(12)));
    }

    #[test]
    fn condense_examples() {
        let r = det_condense(&mat(&[[6, 3, 1], [3, 4, 3], [1, 3, 6]]));
        assert_eq!((r.value, r.fallback_used), (q(50), false));
        let r = det_condense(&mat(&[[2, 1], [1, 2]]));
        assert_eq!((r.value, r.fallback_used), (q(3), false));
        let r = det_condense(&mat(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]));
        assert_eq!((r.value, r.fallback_used), (q(2), true));
        assert_eq!(r.engine, Engine::Condense);
    }

    #[test]
    fn tableau_layers() {
        let a = mat(&[[6, 3, 1], [3, 4, 3], [1, 3, 6]]);
        let t = CondensationTableau::build(&a).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.layer(2), &mat(&[[15, 5], [5, 15]]));
        assert_eq!(t.determinant(), &q(50));
        for k in 1..=3 {
            assert_eq!(t.layer(k).order(), 3 - k + 1);
        }
        assert!(CondensationTableau::build(&mat(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]])).is_none());
    }

    #[test]
    fn tableau_layers_are_connected_minor_determinants() {
        let a = mat(&[[3, -1, 4, 1], [5, 9, -2, 6], [5, 3, 5, -8], [9, 7, 9, 3]]);
        let t = CondensationTableau::build(&a).unwrap();
        for k in 1..=4 {
            let layer = t.layer(k);
            for i in 0..layer.order() {
                for j in 0..layer.order() {
                    let minor = a.connected_minor(k, i + 1, j + 1).unwrap();
                    assert_eq!(layer.get(i, j), &det_cofactor(&minor).unwrap());
                }
            }
        }
    }

    #[test]
    fn condense_kp_examples() {
        assert_eq!(det_condense_kp(&KpParams::main(2)).unwrap(), ApInt::from(50));
        assert_eq!(det_condense_kp(&KpParams::new(2, 1, 1, 0)).unwrap(), ApInt::from(3 * 3 - 4 * 1));
        assert_eq!(det_condense_kp(&KpParams::main(0)).unwrap(), ApInt::from(1));
        assert!(det_condense_kp(&KpParams::new(2, 2, 1, 0)).is_err());
    }

    #[test]
    fn condense_kp_matches_bareiss_on_sweep() {
        for p in domain_points(6) {
            let by_recurrence = ApRat::from_integer(det_condense_kp(&p).unwrap());
            let a = build_matrix(&p).unwrap();
            assert_eq!(by_recurrence, det_bareiss(&a), "{p}");
            let c = det_condense(&a);
            assert!(!c.fallback_used, "{p}");
            assert_eq!(c.value, by_recurrence, "{p}");
        }
    }

    #[test]
    fn memo_covers_shift_pattern() {
        let mut rec = KpRecurrence::new(4);
        rec.value(4, 0, 0).unwrap();
        // m = 4 - k is visited at the (k+1)^2 shifts a, b <= k; m = 0 only
        // as divisors L_0(a+1, b+1) of the m = 2 layer.
        assert_eq!(rec.memo_len(), 1 + 4 + 9 + 16 + 9);
        assert_eq!(rec.divisions(), 1 + 4 + 9);
    }

    #[test]
    fn engine_names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
        assert!("gauss".parse::<Engine>().is_err());
    }

    #[test]
    fn stats_record_growth() {
        let a = build_matrix(&KpParams::main(6)).unwrap();
        for e in [Engine::Condense, Engine::Bareiss, Engine::Cofactor] {
            let mut s = DetStats::default();
            let r = e.run(&a, &mut s).unwrap();
            assert!(s.peak_bits >= rat_bit_length(&r.value), "{e}");
        }
    }
}
