//! Exact integer and rational arithmetic with memoized factorial-type primitives.
//!
//! [`ApInt`] and [`ApRat`] are the `num` big-integer and big-rational types;
//! every value in this crate flows through them, so nothing here ever rounds
//! or overflows.
//!
//! The factorial and superfactorial tables are kept per thread. They grow
//! monotonically and are never invalidated, so a lookup after the first
//! computation is a clone out of a `Vec`.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ArithError;

/// Arbitrary-precision signed integer.
pub type ApInt = BigInt;

/// Arbitrary-precision rational, always held in lowest terms with a
/// positive denominator.
pub type ApRat = BigRational;

thread_local! {
    // FACTORIALS[k] = k!
    static FACTORIALS: RefCell<Vec<ApInt>> = RefCell::new(vec![ApInt::one()]);
    // SUPERFACTORIALS[k] = 0!·1!·…·k!
    static SUPERFACTORIALS: RefCell<Vec<ApInt>> = RefCell::new(vec![ApInt::one()]);
}

/// `k!` for `k >= 0`.
pub fn factorial(k: i64) -> Result<ApInt, ArithError> {
    if k < 0 {
        return Err(ArithError::NegativeFactorial(k));
    }
    let k = k as usize;
    Ok(FACTORIALS.with(|cell| {
        let mut table = cell.borrow_mut();
        while table.len() <= k {
            let next = table.len();
            let value = &table[next - 1] * ApInt::from(next);
            table.push(value);
        }
        table[k].clone()
    }))
}

/// The superfactorial `0!·1!·…·k!`, with the empty product `sf(-1) = 1`.
pub fn superfactorial(k: i64) -> Result<ApInt, ArithError> {
    if k < -1 {
        return Err(ArithError::SuperfactorialDomain(k));
    }
    if k == -1 {
        return Ok(ApInt::one());
    }
    let k = k as usize;
    let have = SUPERFACTORIALS.with(|cell| cell.borrow().get(k).cloned());
    if let Some(value) = have {
        return Ok(value);
    }
    // Fill factorials first so the two thread-local borrows never overlap.
    factorial(k as i64)?;
    Ok(SUPERFACTORIALS.with(|cell| {
        let mut table = cell.borrow_mut();
        while table.len() <= k {
            let next = table.len();
            let f = factorial(next as i64).expect("nonnegative");
            let value = &table[next - 1] * f;
            table.push(value);
        }
        table[k].clone()
    }))
}

/// `C(p, q)`, vanishing when `q < 0` or `q > p`.
pub fn binomial(p: i64, q: i64) -> Result<ApInt, ArithError> {
    if p < 0 {
        return Err(ArithError::NegativeBinomialTop(p, q));
    }
    if q < 0 || q > p {
        return Ok(ApInt::zero());
    }
    let num = factorial(p)?;
    let den = factorial(q)? * factorial(p - q)?;
    Ok(num / den)
}

/// Number of bits in the magnitude of `x` (0 for zero).
pub fn bit_length(x: &ApInt) -> u64 {
    x.bits()
}

/// Larger of the numerator and denominator bit lengths.
pub fn rat_bit_length(x: &ApRat) -> u64 {
    bit_length(x.numer()).max(bit_length(x.denom()))
}

/// Parse an integer or `p/q` rational literal.
pub fn parse_rat(text: &str) -> Option<ApRat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: ApInt = p.parse().ok()?;
            let q: ApInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(ApRat::new(p, q))
        }
        None => text.parse::<ApInt>().ok().map(ApRat::from_integer),
    }
}

/// Format an exact rational as a decimal integer or reduced `p/q`.
pub fn format_rat(x: &ApRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
