//! Products of factorial-type factors of linear forms, and the two
//! cancellation rules
//!
//! ```text
//! sf(L)^e · sf(L-1)^-e  ->  (L!)^e
//! (L!)^e  · ((L-1)!)^-e ->  L^e
//! ```
//!
//! applied to a fixpoint, superfactorials first. Arguments that differ by a
//! constant `d > 1` are handled as a chain through the `d - 1` intermediate
//! arguments, which produces the `d` factors `L, L-1, …, L-d+1` at once.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::linear::{LinearForm, Point};
use super::poly::MultiPoly;
use crate::arith::{factorial, superfactorial, ApInt, ApRat};
use crate::error::SymError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// `sf(L) = 0!·1!·…·L!`
    Superfactorial,
    /// `L!`
    Factorial,
    /// `L` itself
    Linear,
}

impl FactorKind {
    // What a cancelled adjacent pair of this kind turns into.
    fn reduced(self) -> Option<FactorKind> {
        match self {
            FactorKind::Superfactorial => Some(FactorKind::Factorial),
            FactorKind::Factorial => Some(FactorKind::Linear),
            FactorKind::Linear => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacFactor {
    pub kind: FactorKind,
    pub argument: LinearForm,
    pub exponent: LinearForm,
}

impl FacFactor {
    pub fn new(kind: FactorKind, argument: LinearForm, exponent: impl Into<LinearForm>) -> Self {
        Self { kind, argument, exponent: exponent.into() }
    }

    pub fn sf(argument: LinearForm, exponent: impl Into<LinearForm>) -> Self {
        Self::new(FactorKind::Superfactorial, argument, exponent)
    }

    pub fn fact(argument: LinearForm, exponent: impl Into<LinearForm>) -> Self {
        Self::new(FactorKind::Factorial, argument, exponent)
    }

    pub fn linear(argument: LinearForm, exponent: impl Into<LinearForm>) -> Self {
        Self::new(FactorKind::Linear, argument, exponent)
    }
}

impl fmt::Display for FacFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.kind {
            FactorKind::Superfactorial => format!("sf({})", self.argument),
            FactorKind::Factorial => format!("({})!", self.argument),
            FactorKind::Linear => format!("({})", self.argument),
        };
        if self.exponent == LinearForm::constant(1) {
            f.write_str(&base)
        } else {
            write!(f, "{base}^({})", self.exponent)
        }
    }
}

/// Counts of rule applications performed by [`FacProduct::simplify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RewriteStats {
    /// `sf(L)/sf(L-d)` pairs cancelled into factorials.
    pub superfactorial_steps: usize,
    /// `L!/(L-d)!` pairs cancelled into linear factors.
    pub factorial_steps: usize,
    /// Factors with constant argument replaced by their value.
    pub ground_steps: usize,
}

impl RewriteStats {
    pub fn total(&self) -> usize {
        self.superfactorial_steps + self.factorial_steps + self.ground_steps
    }
}

impl std::ops::AddAssign for RewriteStats {
    fn add_assign(&mut self, rhs: Self) {
        self.superfactorial_steps += rhs.superfactorial_steps;
        self.factorial_steps += rhs.factorial_steps;
        self.ground_steps += rhs.ground_steps;
    }
}

/// Canonical product: at most one factor per `(kind, argument)`, no zero
/// exponents, and no linear factor equal to the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacProduct {
    factors: BTreeMap<(FactorKind, LinearForm), LinearForm>,
}

impl FacProduct {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = FacFactor>) -> Self {
        let mut out = Self::empty();
        for f in factors {
            out.push(f);
        }
        out
    }

    pub fn push(&mut self, f: FacFactor) {
        if f.kind == FactorKind::Linear && f.argument == LinearForm::constant(1) {
            return;
        }
        let key = (f.kind, f.argument);
        let slot = self.factors.entry(key).or_insert(LinearForm::ZERO);
        *slot = *slot + f.exponent;
        if slot.is_zero() {
            self.factors.remove(&key);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = FacFactor> + '_ {
        self.factors.iter().map(|(&(kind, argument), &exponent)| FacFactor { kind, argument, exponent })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, kind: FactorKind, argument: LinearForm) -> LinearForm {
        self.factors.get(&(kind, argument)).copied().unwrap_or(LinearForm::ZERO)
    }

    pub fn count(&self, kind: FactorKind) -> usize {
        self.factors.keys().filter(|(k, _)| *k == kind).count()
    }

    pub fn canonicalize(&self) -> Self {
        Self::from_factors(self.factors())
    }

    pub fn mul(&self, other: &FacProduct) -> Self {
        let mut out = self.clone();
        for f in other.factors() {
            out.push(f);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self::from_factors(self.factors().map(|f| FacFactor { exponent: -f.exponent, ..f }))
    }

    /// Map every argument and exponent through `f`.
    pub fn map_forms(&self, mut f: impl FnMut(&LinearForm) -> LinearForm) -> Self {
        Self::from_factors(self.factors().map(|x| FacFactor {
            kind: x.kind,
            argument: f(&x.argument),
            exponent: f(&x.exponent),
        }))
    }

    /// Rewrite to a fixpoint: superfactorial rules until none applies, then
    /// factorial rules, repeated until neither changes anything.
    pub fn simplify(&self) -> (FacProduct, RewriteStats) {
        let mut current = self.canonicalize();
        let mut stats = RewriteStats::default();
        loop {
            let before = stats.total();
            while current.rewrite_once(FactorKind::Superfactorial, &mut stats) {}
            while current.rewrite_once(FactorKind::Factorial, &mut stats) {}
            if stats.total() == before {
                return (current, stats);
            }
        }
    }

    // One application of the pair rule, or failing that the ground rule, to
    // factors of `kind`. Each application removes at least one factor of
    // `kind`, so the loops in `simplify` terminate.
    fn rewrite_once(&mut self, kind: FactorKind, stats: &mut RewriteStats) -> bool {
        if let Some((hi, lo, d, t)) = self.find_pair(kind) {
            let next = kind.reduced().expect("pair rules only for factorial kinds");
            self.push(FacFactor::new(kind, hi, -t));
            self.push(FacFactor::new(kind, lo, t));
            for j in 0..d {
                self.push(FacFactor::new(next, hi - j, t));
            }
            match kind {
                FactorKind::Superfactorial => stats.superfactorial_steps += 1,
                _ => stats.factorial_steps += 1,
            }
            return true;
        }
        if let Some((arg, exponent, value)) = self.find_ground(kind) {
            self.push(FacFactor::new(kind, arg, -exponent));
            if value != 1 {
                self.push(FacFactor::linear(LinearForm::constant(value), exponent));
            }
            stats.ground_steps += 1;
            return true;
        }
        false
    }

    // Closest pair (hi, hi - d) with cancellable exponents; returns
    // (hi, lo, d, t) where t is the exponent moved onto the reduced kind.
    fn find_pair(&self, kind: FactorKind) -> Option<(LinearForm, LinearForm, i64, LinearForm)> {
        let of_kind: Vec<(LinearForm, LinearForm)> =
            self.factors.iter().filter(|((k, _), _)| *k == kind).map(|(&(_, arg), &e)| (arg, e)).collect();
        let mut best: Option<(i64, LinearForm, LinearForm, LinearForm)> = None;
        for &(hi, e_hi) in &of_kind {
            for &(lo, e_lo) in &of_kind {
                let Some(d) = hi.constant_offset(&lo) else { continue };
                if d < 1 || best.as_ref().is_some_and(|b| b.0 <= d) {
                    continue;
                }
                if let Some(t) = transferable(e_hi, e_lo) {
                    best = Some((d, hi, lo, t));
                }
            }
        }
        best.map(|(d, hi, lo, t)| (hi, lo, d, t))
    }

    fn find_ground(&self, kind: FactorKind) -> Option<(LinearForm, LinearForm, i64)> {
        for (&(k, arg), &e) in &self.factors {
            if k != kind {
                continue;
            }
            let Some(c) = arg.as_constant() else { continue };
            let value = match kind {
                FactorKind::Superfactorial => superfactorial(c).ok(),
                FactorKind::Factorial => factorial(c).ok(),
                FactorKind::Linear => None,
            };
            // Values must fit a linear-form constant.
            let Some(value) = value.and_then(|v| v.to_i64()) else { continue };
            // A symbolic exponent can only be dropped when the base is 1.
            if value == 1 || e.is_constant() {
                return Some((arg, e, value));
            }
        }
        None
    }

    /// Exact value at `point`, or an error if some factor is undefined there.
    pub fn evaluate(&self, point: &Point) -> Result<ApRat, SymError> {
        let mut acc = ApRat::one();
        for f in self.factors() {
            let x = f.argument.eval(point);
            let base = match f.kind {
                FactorKind::Superfactorial => superfactorial(x).map_err(|_| SymError::OutOfDomain(f.to_string()))?,
                FactorKind::Factorial => factorial(x).map_err(|_| SymError::OutOfDomain(f.to_string()))?,
                FactorKind::Linear => ApInt::from(x),
            };
            let e = f.exponent.eval(point);
            if base.is_zero() && e < 0 {
                return Err(SymError::ZeroDenominator(f.to_string()));
            }
            let power = ApRat::from_integer(num_traits::pow(base, e.unsigned_abs() as usize));
            acc = if e < 0 { acc / power } else { acc * power };
        }
        Ok(acc)
    }

    /// Expand a fully reduced product into numerator and denominator
    /// polynomials. Anything other than linear factors with constant
    /// exponents means the rewriting did not finish.
    pub fn to_rational_function(&self) -> Result<(MultiPoly, MultiPoly), SymError> {
        let mut num = MultiPoly::one();
        let mut den = MultiPoly::one();
        for f in self.factors() {
            if f.kind != FactorKind::Linear {
                return Err(SymError::Stalled(format!("unreduced factor {f}")));
            }
            let Some(e) = f.exponent.as_constant() else {
                return Err(SymError::Stalled(format!("symbolic exponent on {f}")));
            };
            let base = MultiPoly::from_linear(&f.argument);
            if e > 0 {
                num = &num * &base.pow(e as u32);
            } else {
                if base.is_zero() {
                    return Err(SymError::ZeroDenominator(f.to_string()));
                }
                den = &den * &base.pow(e.unsigned_abs() as u32);
            }
        }
        Ok((num, den))
    }
}

// Exponent t such that (hi^e_hi, lo^e_lo) -> (hi^(e_hi - t), lo^(e_lo + t))
// removes at least one of the two factors.
fn transferable(e_hi: LinearForm, e_lo: LinearForm) -> Option<LinearForm> {
    if (e_hi + e_lo).is_zero() {
        return Some(e_hi);
    }
    let (x, y) = (e_hi.as_constant()?, e_lo.as_constant()?);
    if x.signum() * y.signum() != -1 {
        return None;
    }
    Some(LinearForm::constant(x.signum() * x.abs().min(y.abs())))
}

/// `num / den`, canonicalized.
pub fn ratio(num: &FacProduct, den: &FacProduct) -> FacProduct {
    num.mul(&den.inverse())
}

impl fmt::Display for FacProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" · "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcheck::linear::Symbol::*;
    use proptest::prelude::*;

    fn x() -> LinearForm {
        LinearForm::var(N) + LinearForm::var(A)
    }

    fn single(f: FacFactor) -> FacProduct {
        FacProduct::from_factors([f])
    }

    #[test]
    fn ratio_examples() {
        let p = FacProduct::from_factors([FacFactor::fact(x(), 2), FacFactor::sf(x() - 1, -1)]);
        assert!(ratio(&p, &p).is_empty());
        let two_n_1 = LinearForm::var(N) * 2 + 1;
        let m = LinearForm::var(M);
        let merged = ratio(&single(FacFactor::fact(two_n_1, m + 1)), &single(FacFactor::fact(two_n_1, m - 1)));
        assert_eq!(merged, single(FacFactor::fact(two_n_1, 2)));
        assert!(ratio(&single(FacFactor::sf(x(), 1)), &single(FacFactor::sf(x(), 1))).is_empty());
    }

    #[test]
    fn simplify_examples() {
        let p = FacProduct::from_factors([FacFactor::sf(x(), 1), FacFactor::sf(x() - 1, -1)]);
        assert_eq!(p.simplify().0, single(FacFactor::fact(x(), 1)));

        let p = FacProduct::from_factors([FacFactor::fact(x(), 1), FacFactor::fact(x() - 1, -1)]);
        assert_eq!(p.simplify().0, single(FacFactor::linear(x(), 1)));

        // Only the superfactorial rule runs for the chain; the factorial rule
        // then sees exponents of equal sign and leaves them.
        let p = FacProduct::from_factors([FacFactor::sf(x(), 1), FacFactor::sf(x() - 2, -1)]);
        let (out, stats) = p.simplify();
        assert_eq!(out, FacProduct::from_factors([FacFactor::fact(x(), 1), FacFactor::fact(x() - 1, 1)]));
        assert_eq!(stats.superfactorial_steps, 1);
        assert_eq!(stats.factorial_steps, 0);
    }

    #[test]
    fn symbolic_exponents_cancel_only_when_opposite() {
        let m = LinearForm::var(M);
        let p = FacProduct::from_factors([FacFactor::sf(x(), m + 1), FacFactor::sf(x() - 1, -(m + 1))]);
        assert_eq!(p.simplify().0, single(FacFactor::fact(x(), m + 1)));
        let stuck = FacProduct::from_factors([FacFactor::sf(x(), m + 1), FacFactor::sf(x() - 1, -m)]);
        assert_eq!(stuck.simplify().0, stuck);
    }

    #[test]
    fn partial_cancellation_of_constant_exponents() {
        let p = FacProduct::from_factors([FacFactor::sf(x(), -1), FacFactor::sf(x() - 1, 2), FacFactor::sf(x() - 2, -1)]);
        // sf(x-1)^2 / (sf(x) sf(x-2)) = (x-1)! / x! = 1 / x
        assert_eq!(p.simplify().0, single(FacFactor::linear(x(), -1)));
    }

    #[test]
    fn ground_factors_evaluate() {
        let p = FacProduct::from_factors([FacFactor::sf(LinearForm::constant(3), 1), FacFactor::fact(LinearForm::constant(0), 5)]);
        assert_eq!(p.simplify().0, single(FacFactor::linear(LinearForm::constant(12), 1)));
        let m = LinearForm::var(M);
        assert!(single(FacFactor::sf(LinearForm::constant(0), m)).simplify().0.is_empty());
    }

    #[test]
    fn rational_function_examples() {
        let n1 = LinearForm::var(N) + 1;
        let (num, den) = single(FacFactor::linear(n1, 2)).to_rational_function().unwrap();
        assert_eq!(num.to_string(), "n^2 + 2*n + 1");
        assert_eq!(den, MultiPoly::one());
        let (num, den) = FacProduct::empty().to_rational_function().unwrap();
        assert_eq!((num, den), (MultiPoly::one(), MultiPoly::one()));
        let err = single(FacFactor::fact(LinearForm::var(N), 1)).to_rational_function().unwrap_err();
        assert!(matches!(err, SymError::Stalled(_)));
    }

    #[test]
    fn evaluate_checks_domain() {
        let p = single(FacFactor::sf(LinearForm::var(N) - 1, 1));
        assert_eq!(p.evaluate(&[0, 0, 0, 0]).unwrap(), ApRat::one());
        assert!(p.evaluate(&[-1, 0, 0, 0]).is_err());
        let q = single(FacFactor::linear(LinearForm::var(N), -1));
        assert!(matches!(q.evaluate(&[0, 0, 0, 0]), Err(SymError::ZeroDenominator(_))));
    }

    // Random products over a few argument families so that adjacent and
    // chained pairs occur often.
    fn random_product() -> impl Strategy<Value = FacProduct> {
        let bases = [
            LinearForm::var(N),
            LinearForm::var(N) * 2 - LinearForm::var(M),
            LinearForm::var(A) + LinearForm::var(B),
            LinearForm::constant(0),
        ];
        let factor = (0usize..3, 0usize..4, 0i64..4, -3i64..4, prop::bool::weighted(0.15)).prop_map(
            move |(kind, base, offset, exp, symbolic)| {
                let kind = [FactorKind::Superfactorial, FactorKind::Factorial, FactorKind::Linear][kind];
                // Symbolic exponents come as ±(m + c) so opposite pairs arise.
                let exponent = match (symbolic, exp < 0) {
                    (false, _) => LinearForm::constant(exp),
                    (true, false) => LinearForm::var(M) + exp,
                    (true, true) => -(LinearForm::var(M) - exp),
                };
                FacFactor::new(kind, bases[base] + offset, exponent)
            },
        );
        proptest::collection::vec(factor, 0..10).prop_map(FacProduct::from_factors)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn canonicalization_idempotent(p in random_product()) {
            prop_assert_eq!(p.canonicalize().canonicalize(), p.canonicalize());
        }

        #[test]
        fn simplify_preserves_value(p in random_product(), point in prop::array::uniform4(0i64..9)) {
            let (out, _) = p.simplify();
            if let Ok(before) = p.evaluate(&point) {
                prop_assert_eq!(out.evaluate(&point).unwrap(), before);
            }
        }

        #[test]
        fn simplify_reaches_fixpoint(p in random_product()) {
            let (once, _) = p.simplify();
            let (twice, stats) = once.simplify();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(stats.total(), 0);
            prop_assert!(once.count(FactorKind::Superfactorial) <= p.count(FactorKind::Superfactorial));
        }
    }
}
